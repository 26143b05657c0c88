import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from phasekick.characters import (
    Character,
    CycloSum,
    Multiset,
    MultisetClass,
    all_characters,
    annihilator,
    char_eval,
    char_exponent,
    char_sum_over,
    classify_multiset,
    conjugate_char,
    cyclotomic_polynomial,
    fourier_transform,
    indicator,
    is_fully_balanced,
    is_zero_sum,
)
from phasekick.groups import (
    enumerate_subgroups,
    make_group,
    subgroup_closure,
    trivial_subgroup,
    full_subgroup,
)

TOL = 1e-9


def test_char_exponent_examples():
    z12 = make_group([12])
    assert char_exponent(z12.element([1]), z12.element([3])) == 3
    assert char_eval(z12.element([1]), z12.element([3])) == pytest.approx(1j)
    assert char_exponent(z12.zero(), z12.element([7])) == 0

    z16 = make_group([16])
    # chi_4(x) = i^x, so chi_4(7) = -i (exponent 12 of zeta_16)
    assert char_exponent(z16.element([4]), z16.element([7])) == 12
    assert char_eval(z16.element([4]), z16.element([7])) == pytest.approx(-1j)


def test_char_eval_values():
    z12 = make_group([12])
    assert char_eval(z12.element([1]), z12.element([6])) == pytest.approx(-1.0)
    for g in z12.elements():
        assert char_eval(g, z12.zero()) == pytest.approx(1.0)


def test_char_unimodular_random():
    rng = np.random.default_rng(0)
    g = make_group([4, 3, 2])
    for _ in range(1000):
        a = g.element_at(int(rng.integers(g.order)))
        b = g.element_at(int(rng.integers(g.order)))
        assert abs(abs(char_eval(a, b)) - 1.0) < 1e-12


def test_conjugate_char():
    z12 = make_group([12])
    assert conjugate_char(z12.element([5])).coords == (7,)
    assert conjugate_char(z12.zero()).coords == (0,)
    z8 = make_group([8])
    for g in z8.elements():
        for h in z8.elements():
            prod = char_eval(g, h) * char_eval(conjugate_char(g), h)
            assert prod == pytest.approx(1.0)


def test_char_multiplicative_exhaustive():
    for orders in ([6], [2, 2], [4, 3], [6, 2]):
        g = make_group(orders)
        L = g.lcm_exponent
        for a in g.elements():
            for h1 in g.elements():
                for h2 in g.elements():
                    lhs = char_exponent(a, h1 + h2)
                    rhs = (char_exponent(a, h1) + char_exponent(a, h2)) % L
                    assert lhs == rhs


def test_char_sum_over_subgroup():
    z12 = make_group([12])
    s = subgroup_closure(z12, [z12.element([3])])
    c4 = char_sum_over(s, z12.element([4]))
    assert not c4.is_zero() and c4.approx() == pytest.approx(4.0)
    c1 = char_sum_over(s, z12.element([1]))
    assert c1.is_zero()
    c0 = char_sum_over(s, z12.zero())
    assert c0.approx() == pytest.approx(s.order)


def test_annihilator_examples():
    z12 = make_group([12])
    s = subgroup_closure(z12, [z12.element([3])])
    assert [e.index for e in annihilator(s).elements] == [0, 4, 8]
    assert annihilator(trivial_subgroup(z12)).order == 12
    assert annihilator(full_subgroup(z12)).order == 1


def test_annihilator_duality_sweep():
    for orders in ([4], [12], [2, 2], [6, 2], [2, 2, 2], [16]):
        g = make_group(orders)
        for s in enumerate_subgroups(g):
            perp = annihilator(s)
            assert perp.order * s.order == g.order
            assert annihilator(perp) == s


def test_fourier_indicator_of_subgroup():
    z12 = make_group([12])
    s = subgroup_closure(z12, [z12.element([3])])
    fhat = fourier_transform(z12, indicator(z12, s.elements))
    perp = annihilator(s).index_set
    for z in range(12):
        want = 4.0 if z in perp else 0.0
        assert fhat[z] == pytest.approx(want, abs=TOL)


def test_fourier_constant_function():
    g = make_group([6, 2])
    fhat = fourier_transform(g, np.ones(g.order))
    assert fhat[0] == pytest.approx(g.order)
    assert np.max(np.abs(fhat[1:])) < TOL


def test_fourier_inversion_random():
    rng = np.random.default_rng(1)
    for orders in ([6], [12], [2, 2], [4, 3]):
        g = make_group(orders)
        f = rng.normal(size=g.order) + 1j * rng.normal(size=g.order)
        double = fourier_transform(g, fourier_transform(g, f), dual=True)
        assert np.max(np.abs(double - g.order * f)) < TOL


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(2) == (1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)


def test_is_zero_sum_examples():
    # antipodal pair 1 + zeta^{L/2}
    s = CycloSum.from_exponents(12, [0, 6])
    assert is_zero_sum(s)
    # the Z/16 set under chi(x) = i^x sums to zero without equidistribution
    z16 = make_group([16])
    members = [0, 1, 2, 3, 5, 7, 13, 15]
    exps = [char_exponent(z16.element([4]), z16.element([x])) for x in members]
    assert sorted(exps) == [0, 4, 4, 4, 8, 12, 12, 12]
    assert is_zero_sum(CycloSum.from_exponents(16, exps))
    # a single root is never zero
    assert not is_zero_sum(CycloSum.from_exponents(12, [5]))


@settings(max_examples=300, deadline=None)
@given(st.integers(min_value=1, max_value=24), st.data())
def test_zero_sum_matches_float(order, data):
    k = data.draw(st.integers(min_value=0, max_value=8))
    exps = data.draw(st.lists(st.integers(min_value=0, max_value=order - 1),
                              min_size=k, max_size=k))
    s = CycloSum.from_exponents(order, exps)
    # the exact test is authoritative; float magnitude agrees at these sizes
    assert s.is_zero() == (abs(s.approx()) < TOL)


def test_zero_sum_float_agreement_sweep():
    rng = np.random.default_rng(17)
    zeros = 0
    for _ in range(10_000):
        order = int(rng.integers(1, 25))
        k = int(rng.integers(0, 9))
        exps = rng.integers(0, order, size=k)
        s = CycloSum.from_exponents(order, exps.tolist())
        exact = s.is_zero()
        zeros += exact
        assert exact == (abs(s.approx()) < TOL)
    assert zeros > 0  # the sweep does exercise actual zero sums


def test_classify_multiset_examples():
    # {1, 3} in Z/4 is fully balanced but not a subgroup
    z4 = make_group([4])
    ms = Multiset(z4, {z4.element([1]): 1, z4.element([3]): 1})
    sweep = {chi.label.index: classify_multiset(ms, chi) for chi in all_characters(z4)}
    assert sweep[0] is MultisetClass.CONSTANT
    assert sweep[1] is MultisetClass.BALANCED
    assert sweep[2] is MultisetClass.CONSTANT
    assert sweep[3] is MultisetClass.BALANCED
    assert is_fully_balanced(ms)


def test_classify_trivial_character_always_constant():
    g = make_group([6, 2])
    rng = np.random.default_rng(3)
    for _ in range(20):
        counts = rng.integers(0, 4, size=g.order)
        if counts.sum() == 0:
            counts[0] = 1
        ms = Multiset.from_indices(g, counts.tolist())
        assert classify_multiset(ms, Character(g.zero())) is MultisetClass.CONSTANT


def test_classify_z16_balanced_not_equidistributed():
    z16 = make_group([16])
    members = [0, 1, 2, 3, 5, 7, 13, 15]
    ms = Multiset(z16, {z16.element([x]): 1 for x in members})
    assert classify_multiset(ms, Character(z16.element([4]))) is MultisetClass.BALANCED


def test_not_fully_balanced():
    z4 = make_group([4])
    ms = Multiset(z4, {z4.element([0]): 1, z4.element([1]): 1})
    assert classify_multiset(ms, Character(z4.element([1]))) is MultisetClass.NEITHER
    assert not is_fully_balanced(ms)


def test_subgroups_and_cosets_fully_balanced():
    z4 = make_group([4])
    for s in enumerate_subgroups(z4):
        ms = Multiset(z4, {e: 2 for e in s.elements})
        assert is_fully_balanced(ms)
    coset = [z4.element([1]), z4.element([3])]  # 1 + {0, 2}
    assert is_fully_balanced(Multiset(z4, {e: 1 for e in coset}))


def test_classify_rejects_empty_support():
    z4 = make_group([4])
    with pytest.raises(ValueError):
        classify_multiset(Multiset(z4, {}), Character(z4.zero()))


def test_multiset_json_round_trip():
    g = make_group([6])
    ms = Multiset(g, {g.element([2]): 3, g.element([5]): 1})
    back = Multiset.from_json(ms.to_json())
    assert back.mult == {g.element([2]): 3, g.element([5]): 1}
    assert back.total == 4


def test_transform_csv(tmp_path):
    from phasekick.characters import transform_to_csv

    g = make_group([4])
    vals = fourier_transform(g, indicator(g, [g.zero()]))
    path = tmp_path / "t.csv"
    transform_to_csv(path, vals)
    lines = path.read_text().strip().splitlines()
    assert lines[0] == "index,real,imag"
    assert len(lines) == 5


def test_balanced_count_matches_dichotomy():
    # for a subgroup support with unit weights, balanced for exactly
    # |G| - |S-perp| characters and constant on the rest
    g = make_group([12])
    for s in enumerate_subgroups(g):
        ms = Multiset(g, {e: 1 for e in s.elements})
        classes = [classify_multiset(ms, chi) for chi in all_characters(g)]
        n_constant = sum(c is MultisetClass.CONSTANT for c in classes)
        n_balanced = sum(c is MultisetClass.BALANCED for c in classes)
        assert n_constant == annihilator(s).order
        assert n_balanced == g.order - annihilator(s).order
