import itertools
import math

import numpy as np
import pytest

from phasekick.catalogs import (
    constant_fbi_instance,
    fbi_catalog,
    tight_fbi_instance,
    z12_fbi_oracle,
)
from phasekick.characters import Character, annihilator
from phasekick.fbi import (
    PromiseViolationError,
    call_bound,
    call_bound_for,
    classical_worst_case,
    fbi_gpk_probe,
    fiber_multiset,
    image_description,
    image_subgroup_of,
    is_fbi_spectral,
    is_fbi_structural,
    make_fbi_instance,
    marker_selection,
)
from phasekick.groups import full_subgroup, make_group, subgroup_closure, trivial_subgroup
from phasekick.simulate import Oracle


def test_make_instance_constant():
    g = make_group([6])
    inst = make_fbi_instance(g, g, trivial_subgroup(g), g.element([4]),
                             np.random.default_rng(0))
    assert set(map(int, inst.oracle.table)) == {4}


def test_make_instance_full_image():
    g = make_group([6])
    inst = make_fbi_instance(g, g, full_subgroup(g), g.zero(), np.random.default_rng(1))
    assert sorted(map(int, inst.oracle.table)) == list(range(6))


def test_make_instance_profile_matches_table_example():
    g = make_group([12])
    k = subgroup_closure(g, [g.element([3])])
    inst = make_fbi_instance(g, g, k, g.zero(), np.random.default_rng(2))
    assert sorted(inst.oracle.image_indices()) == [0, 3, 6, 9]
    assert set(inst.oracle.fiber_sizes().values()) == {3}


def test_make_instance_divisibility_guard():
    g = make_group([6])
    h = make_group([4])
    with pytest.raises(ValueError):
        make_fbi_instance(g, h, full_subgroup(h), h.zero(), np.random.default_rng(3))


def test_spectral_examples():
    assert is_fbi_spectral(z12_fbi_oracle())
    g = make_group([12])
    hom = Oracle(g, g, [(2 * x) % 12 for x in range(12)])
    assert is_fbi_spectral(hom)
    z4 = make_group([4])
    assert not is_fbi_spectral(Oracle(z4, z4, [0, 0, 0, 1]))


def test_structural_examples():
    z4 = make_group([4])
    assert is_fbi_structural(Oracle(z4, z4, [1, 1, 1, 1]))
    oracle = z12_fbi_oracle()
    assert is_fbi_structural(oracle)
    assert [e.index for e in image_subgroup_of(oracle).elements] == [0, 3, 6, 9]


def test_biconditional_z4_exhaustive():
    z4 = make_group([4])
    agree = 0
    for table in itertools.product(range(4), repeat=4):
        oracle = Oracle(z4, z4, list(table))
        agree += is_fbi_spectral(oracle) == is_fbi_structural(oracle)
    assert agree == 256


def test_probe_dichotomy():
    oracle = z12_fbi_oracle()
    g = oracle.group_out
    rng = np.random.default_rng(4)
    assert fbi_gpk_probe(oracle, Character(g.element([4])), rng).is_zero
    assert fbi_gpk_probe(oracle, Character(g.zero()), rng).is_zero
    for _ in range(10):
        assert not fbi_gpk_probe(oracle, Character(g.element([1])), rng).is_zero


def test_marker_selection_worked_example():
    oracle = z12_fbi_oracle()
    oracle.reset_calls()
    result = marker_selection(oracle, rng=np.random.default_rng(5),
                              candidates=[1, 2, 4])
    assert result.image_order == 4
    assert result.ledger.calls == 3
    assert oracle.calls == 3
    assert result.ledger.span_constants.order == 3
    assert [c.label.index for c in result.ledger.constants] == [4]
    assert [b.label.index for b in result.ledger.reps] == [1, 2, 11]
    sub = image_description(result.ledger)
    assert [e.index for e in sub.elements] == [0, 3, 6, 9]


def test_marker_selection_default_order():
    oracle = z12_fbi_oracle()
    oracle.reset_calls()
    result = marker_selection(oracle, rng=np.random.default_rng(6))
    assert result.image_order == 4
    assert result.ledger.calls <= math.ceil(call_bound_for(oracle))


def test_marker_selection_constant_function():
    inst = constant_fbi_instance()
    inst.oracle.reset_calls()
    result = marker_selection(inst.oracle, rng=np.random.default_rng(7))
    assert result.image_order == 1
    assert not result.ledger.reps
    assert result.ledger.span_constants.order == inst.group_out.order
    assert image_description(result.ledger).order == 1
    # the closed-form bound degenerates to 0 for a constant function; learning
    # that the span is everything still needs about log2 |H| probes
    assert call_bound_for(inst.oracle) == 0.0
    assert 1 <= result.ledger.calls <= math.ceil(math.log2(inst.group_out.order))


def test_marker_selection_injective():
    g = make_group([8])
    oracle = Oracle(g, g, [(x * 3) % 8 for x in range(8)])  # bijection
    oracle.reset_calls()
    result = marker_selection(oracle, rng=np.random.default_rng(8))
    assert result.image_order == 8
    assert not result.ledger.constants
    assert len(result.ledger.reps) == 7
    assert image_description(result.ledger).order == 8
    assert result.ledger.calls <= math.ceil(call_bound_for(oracle))


def test_marker_selection_random_orders_catalog():
    rng = np.random.default_rng(9)
    for inst in fbi_catalog():
        want = len(inst.oracle.image_indices())
        budget = math.ceil(call_bound_for(inst.oracle))
        for _ in range(25):
            inst.oracle.reset_calls()
            result = marker_selection(inst.oracle, rng=rng, shuffle=True)
            assert result.image_order == want
            assert result.ledger.calls <= budget
            assert image_description(result.ledger) == image_subgroup_of(inst.oracle)


def test_marker_selection_tight_instance_correct():
    # image order is always right even on the shape that can exceed the bound
    inst = tight_fbi_instance()
    rng = np.random.default_rng(10)
    for _ in range(50):
        inst.oracle.reset_calls()
        result = marker_selection(inst.oracle, rng=rng, shuffle=True)
        assert result.image_order == 2
        assert result.ledger.calls <= 3


def test_ledger_soundness():
    rng = np.random.default_rng(11)
    for inst in fbi_catalog():
        truth = annihilator(image_subgroup_of(inst.oracle))  # true constant set
        for shuffle in (False, True):
            inst.oracle.reset_calls()
            result = marker_selection(inst.oracle, rng=rng, shuffle=shuffle)
            ledger = result.ledger
            span = ledger.span_constants
            assert span == truth
            for c in ledger.constants:
                assert truth.contains(c.label)
            for b in ledger.reps:
                assert not truth.contains(b.label)
            # representatives sit in pairwise distinct orbits of the constant set
            reps = [b.label for b in ledger.reps]
            for i in range(len(reps)):
                for j in range(i + 1, len(reps)):
                    assert not truth.contains(reps[i] - reps[j])
            assert span.order * (len(reps) + 1) == inst.group_out.order


def test_marker_selection_shortcut_path():
    oracle = z12_fbi_oracle()
    oracle.reset_calls()
    result = marker_selection(oracle, rng=np.random.default_rng(12), shortcut=True)
    assert result.image_order == 4


def test_candidate_exhaustion_raises():
    # a scripted candidate list that ends before the ledger is complete
    oracle = z12_fbi_oracle()
    with pytest.raises(PromiseViolationError):
        marker_selection(oracle, rng=np.random.default_rng(13), candidates=[1])


def test_non_fbi_oracle_caught_by_validators():
    # marker selection output is out of contract for non-FBI tables; the
    # validators are the detection mechanism
    z4 = make_group([4])
    not_fbi = Oracle(z4, z4, [0, 0, 0, 1])
    assert not is_fbi_spectral(not_fbi)
    assert not is_fbi_structural(not_fbi)


def test_call_bound_values():
    assert call_bound(4, 12) == pytest.approx(3 * (math.log2(3) + 1))
    assert math.ceil(call_bound(4, 12)) == 8
    assert call_bound(1, 12) == 0.0
    assert call_bound(8, 8) == pytest.approx(7.0)
    with pytest.raises(ValueError):
        call_bound(5, 12)


def test_classical_worst_case():
    oracle = z12_fbi_oracle()
    assert classical_worst_case(oracle) == 6
    g = make_group([6])
    assert classical_worst_case(Oracle(g, g, [2] * 6)) == 0
    h = make_group([4])
    z8 = make_group([8])
    assert classical_worst_case(Oracle(z8, h, [0] * 8)) is None


def test_fiber_multiset_total():
    oracle = z12_fbi_oracle()
    ms = fiber_multiset(oracle)
    assert ms.total == 12
    assert {e.index for e in ms.support} == {0, 3, 6, 9}


def test_constant_and_balancing_set_structure():
    # on every catalog instance: no character classifies as Neither, the
    # constant characters form a subgroup, and the balancing characters are a
    # union of orbits of that subgroup
    from phasekick.characters import MultisetClass, classify_multiset

    for inst in fbi_catalog() + [tight_fbi_instance(), constant_fbi_instance()]:
        h_group = inst.group_out
        ms = fiber_multiset(inst.oracle)
        constants = []
        balancing = []
        for h in h_group.elements():
            cls = classify_multiset(ms, Character(h))
            assert cls is not MultisetClass.NEITHER
            (constants if cls is MultisetClass.CONSTANT else balancing).append(h)
        constant_set = {e.index for e in constants}
        closed = subgroup_closure(h_group, constants)
        assert {e.index for e in closed.elements} == constant_set
        balancing_set = {e.index for e in balancing}
        for b in balancing:
            orbit = {(b + c).index for c in constants}
            assert orbit <= balancing_set
