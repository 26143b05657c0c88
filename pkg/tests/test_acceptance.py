"""Acceptance suite: ten numbered criteria, one printed pass/fail line each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines.  All tolerances are fixed here: amplitude and probability identities at
1e-9 absolute, counting and set identities exact.
"""

import math

import numpy as np

from phasekick import catalogs
from phasekick.characters import Character, annihilator, fourier_transform
from phasekick.fbi import (
    call_bound_for,
    image_description,
    is_fbi_spectral,
    is_fbi_structural,
    marker_selection,
)
from phasekick.groups import enumerate_subgroups, make_group
from phasekick.hsp import (
    Strategy,
    exact_round_distribution,
    make_hsp_instance,
    theoretical_distribution,
)
from phasekick.simulate import (
    Oracle,
    eigen_check,
    eigenvalue_expected,
    gpk_amplitudes,
    gpk_pre_measurement,
)
from phasekick.verify import check_hsp_support, check_recovery

TOL = 1e-9


def report(criterion: int, ok: bool, detail: str) -> None:
    print(f"criterion {criterion:2d}: {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, f"criterion {criterion} failed: {detail}"


def test_criterion_1_gpk_correctness():
    oracles = catalogs.gpk_triple_catalog()
    assert len(oracles) >= 12
    assert all(o.group_in.order <= 24 and o.group_out.order <= 24 for o in oracles)
    worst = 0.0
    for oracle in oracles:
        for h in oracle.group_out.elements():
            marker = Character(h)
            sim = gpk_pre_measurement(oracle, marker).amps
            closed = gpk_amplitudes(oracle, marker)
            worst = max(worst, float(np.max(np.abs(sim - closed))))
    report(1, worst <= TOL,
           f"{len(oracles)} oracles, all markers, max amplitude deviation {worst:.2e}")


def test_criterion_2_phase_kickback():
    worst = 0.0
    pairs = 0
    for oracle in catalogs.eigen_catalog():
        for g in oracle.group_in.elements():
            for h in oracle.group_out.elements():
                lam = eigen_check(oracle, g, Character(h))
                worst = max(worst, abs(lam - eigenvalue_expected(oracle, g, Character(h))))
                pairs += 1
    report(2, worst <= TOL, f"{pairs} exhaustive (g, h) pairs, max eigenvalue error {worst:.2e}")


def test_criterion_3_hsp_support():
    results = check_hsp_support(seed=0, rounds=10_000)
    ok = all(r.passed for r in results)
    report(3, ok, f"{len(results)} instances x 10^4 sampled rounds, all outcomes in S-perp")


def test_criterion_4_all_marker_average():
    rng = np.random.default_rng(0)
    worst = 0.0
    pairs = 0
    for g, s in catalogs.hsp_group_subgroup_pairs(24):
        inst = make_hsp_instance(g, g, s, rng)
        got = exact_round_distribution(inst, Strategy.GPK_UNIFORM_ALL)
        want = theoretical_distribution(inst, Strategy.GPK_UNIFORM_ALL)
        worst = max(worst, float(np.max(np.abs(got - want))))
        pairs += 1
    report(4, worst <= TOL,
           f"all-marker average = |S|/|G| on S-perp over {pairs} (G, S), max dev {worst:.2e}")


def test_criterion_5_nontrivial_marker_mixture():
    rng = np.random.default_rng(0)
    worst = 0.0
    pairs = 0
    for g, s in catalogs.hsp_group_subgroup_pairs(24):
        inst = make_hsp_instance(g, g, s, rng)
        got = exact_round_distribution(inst, Strategy.GPK_UNIFORM_NONTRIVIAL)
        want = theoretical_distribution(inst, Strategy.GPK_UNIFORM_NONTRIVIAL)
        worst = max(worst, float(np.max(np.abs(got - want))))
        pairs += 1

    # worked values: G = H = Z/6, S = <3>
    z6 = make_group([6])
    s = [sub for sub in enumerate_subgroups(z6) if sub.order == 2][0]
    inst = make_hsp_instance(z6, z6, s, rng)
    pmf = exact_round_distribution(inst, Strategy.GPK_UNIFORM_NONTRIVIAL)
    worked = (abs(pmf[0] - 1 / 5) <= TOL and abs(pmf[2] - 2 / 5) <= TOL
              and abs(pmf[4] - 2 / 5) <= TOL)
    useful_simon = 1 - exact_round_distribution(inst, Strategy.SIMON)[0]
    ratio = (1 - pmf[0]) / useful_simon
    ratio_ok = abs(ratio - 6 / 5) <= TOL
    report(5, worst <= TOL and worked and ratio_ok,
           f"three-case mixture over {pairs} (G, S), max dev {worst:.2e}; "
           f"Z/6 worked values and ratio 6/5 confirmed")


def test_criterion_6_fbi_biconditional():
    import itertools

    total_pairs = 0
    all_ok = True
    details = []
    for g, h in catalogs.biconditional_pairs():
        agree = 0
        n = 0
        for table in itertools.product(range(h.order), repeat=g.order):
            oracle = Oracle(g, h, list(table))
            agree += is_fbi_spectral(oracle) == is_fbi_structural(oracle)
            n += 1
        all_ok &= agree == n
        total_pairs += 1
        details.append(f"{agree}/{n}")
    report(6, all_ok and total_pairs == 6,
           "spectral == structural exhaustively: " + ", ".join(details))


def test_criterion_7_worked_example():
    from pathlib import Path

    table_path = Path(__file__).parent / "data" / "z12_fbi.json"
    oracle = Oracle.load(table_path)
    oracle.reset_calls()
    result = marker_selection(oracle, rng=np.random.default_rng(0), candidates=[1, 2, 4])
    subgroup = image_description(result.ledger)
    ok = (result.image_order == 4
          and [e.index for e in subgroup.elements] == [0, 3, 6, 9]
          and result.ledger.calls == 3
          and oracle.calls == 3)
    report(7, ok,
           f"Z/12 table: image order {result.image_order}, subgroup "
           f"{[e.index for e in subgroup.elements]}, {result.ledger.calls} GPK calls")


def test_criterion_8_call_bound():
    rng = np.random.default_rng(0)
    violations = 0
    runs = 0
    for inst in catalogs.fbi_catalog():
        budget = math.ceil(call_bound_for(inst.oracle))
        want = len(inst.oracle.image_indices())
        for _ in range(100):
            inst.oracle.reset_calls()
            result = marker_selection(inst.oracle, rng=rng, shuffle=True)
            runs += 1
            if result.ledger.calls > budget or result.image_order != want:
                violations += 1
    report(8, violations == 0,
           f"{runs} randomized runs across the catalog, {violations} budget violations")


def test_criterion_9_duality_inversion():
    ann_ok = True
    prod_ok = True
    for g in catalogs.catalog_groups(64):
        for s in enumerate_subgroups(g):
            perp = annihilator(s)
            ann_ok &= annihilator(perp) == s
            prod_ok &= perp.order * s.order == g.order
    rng = np.random.default_rng(1)
    worst = 0.0
    for g in catalogs.catalog_groups(24):
        f = rng.normal(size=g.order) + 1j * rng.normal(size=g.order)
        double = fourier_transform(g, fourier_transform(g, f), dual=True)
        worst = max(worst, float(np.max(np.abs(double - g.order * f))))
    report(9, ann_ok and prod_ok and worst <= TOL,
           f"annihilator involution and order product exact; double transform "
           f"max dev {worst:.2e}")


def test_criterion_10_recovery():
    results = check_recovery(seed=0, runs=1000)
    ok = all(r.passed for r in results)
    detail = "; ".join(f"{r.name}: {r.detail}" for r in results)
    report(10, ok, detail)
