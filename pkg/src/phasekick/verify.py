"""Executable invariant suites: every module's identities as pass/fail checks.

Each check returns a :class:`CheckResult`; the CLI ``verify`` subcommand and the
acceptance tests both run these, so a single implementation defines what
"verified" means.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import catalogs
from .characters import (
    Character,
    annihilator,
    fourier_transform,
)
from .fbi import (
    call_bound_for,
    image_description,
    image_subgroup_of,
    is_fbi_spectral,
    is_fbi_structural,
    marker_selection,
)
from .groups import enumerate_subgroups
from .hsp import (
    Strategy,
    StoppingRule,
    exact_round_distribution,
    gpk_round,
    make_hsp_instance,
    random_marker,
    recover_subgroup,
    simon_round,
    theoretical_distribution,
)
from .simulate import (
    Oracle,
    eigen_check,
    eigenvalue_expected,
    gpk_amplitudes,
    gpk_pre_measurement,
)

AMP_TOL = 1e-9


@dataclass
class CheckResult:
    scope: str
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        tail = f"  ({self.detail})" if self.detail else ""
        return f"[{status}] {self.scope}: {self.name}{tail}"


def check_gpk_correctness(seed: int = 0) -> list[CheckResult]:
    """Simulated pre-measurement amplitudes match the closed form for all markers."""
    worst = 0.0
    count = 0
    for oracle in catalogs.gpk_triple_catalog():
        for h in oracle.group_out.elements():
            marker = Character(h)
            sim = gpk_pre_measurement(oracle, marker).amps
            closed = gpk_amplitudes(oracle, marker)
            worst = max(worst, float(np.max(np.abs(sim - closed))))
            count += 1
    ok = worst <= AMP_TOL
    return [CheckResult("gpk-correctness",
                        f"{count} (oracle, marker) pairs, closed form vs simulation",
                        ok, f"max deviation {worst:.3e}")]


def check_eigenvector(seed: int = 0) -> list[CheckResult]:
    """Exhaustive (g, h) sweeps: U_f eigenvalue equals conj(chi_h(f(g)))."""
    worst = 0.0
    count = 0
    for oracle in catalogs.eigen_catalog():
        for g in oracle.group_in.elements():
            for h in oracle.group_out.elements():
                oracle.reset_calls()
                lam = eigen_check(oracle, g, Character(h))
                expected = eigenvalue_expected(oracle, g, Character(h))
                worst = max(worst, abs(lam - expected))
                count += 1
    ok = worst <= AMP_TOL
    return [CheckResult("eigenvector", f"{count} exhaustive (g, h) pairs", ok,
                        f"max eigenvalue error {worst:.3e}")]


def check_hsp_support(seed: int = 0, rounds: int = 10_000) -> list[CheckResult]:
    """Sampled Simon and GPK rounds never leave the annihilator of S."""
    rng = np.random.default_rng(seed)
    out = []
    for inst in catalogs.hsp_catalog():
        perp = inst.annihilator.index_set
        half = rounds // 2
        violations = 0
        for _ in range(half):
            if simon_round(inst, rng).index not in perp:
                violations += 1
        for _ in range(rounds - half):
            marker = random_marker(inst, rng, nontrivial=True)
            if gpk_round(inst, marker, rng).index not in perp:
                violations += 1
        out.append(CheckResult(
            "hsp-support",
            f"G={inst.group!r} |S|={inst.hidden.order}: {rounds} rounds",
            violations == 0, f"{violations} violations"))
    return out


def check_hsp_identities(seed: int = 0, max_order: int = 24) -> list[CheckResult]:
    """All-marker and nontrivial-marker mixture pmfs match their closed forms."""
    rng = np.random.default_rng(seed)
    worst_eq = 0.0
    worst_ne = 0.0
    pairs = 0
    for g, s in catalogs.hsp_group_subgroup_pairs(max_order):
        inst = make_hsp_instance(g, g, s, rng)
        for strat, ref in ((Strategy.GPK_UNIFORM_ALL, "eq"),
                           (Strategy.GPK_UNIFORM_NONTRIVIAL, "ne"),
                           (Strategy.SIMON, "eq")):
            got = exact_round_distribution(inst, strat)
            want = theoretical_distribution(inst, strat)
            dev = float(np.max(np.abs(got - want)))
            if ref == "eq":
                worst_eq = max(worst_eq, dev)
            else:
                worst_ne = max(worst_ne, dev)
        pairs += 1
    return [
        CheckResult("hsp-identities",
                    f"uniform-marker mixture = |S|/|G| on S-perp over {pairs} (G, S)",
                    worst_eq <= AMP_TOL, f"max deviation {worst_eq:.3e}"),
        CheckResult("hsp-identities",
                    f"nontrivial-marker mixture matches three-case form over {pairs} (G, S)",
                    worst_ne <= AMP_TOL, f"max deviation {worst_ne:.3e}"),
    ]


def check_duality_inversion(seed: int = 0) -> list[CheckResult]:
    """Annihilator involution, order product, and Fourier inversion."""
    rng = np.random.default_rng(seed)
    ann_ok = True
    prod_ok = True
    for g in catalogs.catalog_groups(64):
        for s in enumerate_subgroups(g):
            perp = annihilator(s)
            if annihilator(perp) != s:
                ann_ok = False
            if perp.order * s.order != g.order:
                prod_ok = False
    worst = 0.0
    for g in catalogs.catalog_groups(24):
        f = rng.normal(size=g.order) + 1j * rng.normal(size=g.order)
        double = fourier_transform(g, fourier_transform(g, f), dual=True)
        worst = max(worst, float(np.max(np.abs(double - g.order * f))))
    return [
        CheckResult("duality", "annihilator(annihilator(S)) == S over catalog", ann_ok),
        CheckResult("duality", "|S-perp| * |S| == |G| exactly", prod_ok),
        CheckResult("duality", "forward + dual transform = |G| f on random functions",
                    worst <= AMP_TOL, f"max deviation {worst:.3e}"),
    ]


def check_fbi_biconditional(seed: int = 0) -> list[CheckResult]:
    """Spectral and structural FBI tests agree on every function table."""
    out = []
    for g, h in catalogs.biconditional_pairs():
        total = 0
        agree = 0
        fbi_count = 0
        for table in itertools.product(range(h.order), repeat=g.order):
            oracle = Oracle(g, h, list(table))
            spectral = is_fbi_spectral(oracle)
            structural = is_fbi_structural(oracle)
            total += 1
            agree += spectral == structural
            fbi_count += spectral
        out.append(CheckResult(
            "fbi-biconditional",
            f"G={g!r} H={h!r}: {agree}/{total} tables agree",
            agree == total, f"{fbi_count} FBI functions"))
    return out


def check_fbi_solver(seed: int = 0, orders_per_instance: int = 100) -> list[CheckResult]:
    """Randomized candidate orders: correct image order within the call budget."""
    out = []
    rng = np.random.default_rng(seed)
    for inst in catalogs.fbi_catalog():
        true_order = len(inst.oracle.image_indices())
        budget = math.ceil(call_bound_for(inst.oracle))
        wrong = 0
        over = 0
        max_calls = 0
        for _ in range(orders_per_instance):
            inst.oracle.reset_calls()
            result = marker_selection(inst.oracle, rng=rng, shuffle=True)
            if result.image_order != true_order:
                wrong += 1
            if result.ledger.calls > budget:
                over += 1
            if inst.oracle.calls != result.ledger.calls:
                wrong += 1
            max_calls = max(max_calls, result.ledger.calls)
        subgroup_ok = True
        inst.oracle.reset_calls()
        det = marker_selection(inst.oracle, rng=np.random.default_rng(seed))
        if image_description(det.ledger) != image_subgroup_of(inst.oracle):
            subgroup_ok = False
        out.append(CheckResult(
            "fbi-solver",
            f"G={inst.group!r} H={inst.group_out!r} |img|={true_order}: "
            f"{orders_per_instance} random orders",
            wrong == 0 and over == 0 and subgroup_ok,
            f"max calls {max_calls} <= budget {budget}"))
    return out


def check_recovery(seed: int = 0, runs: int = 1000) -> list[CheckResult]:
    """Known-order stopping recovers S exactly; plateau stopping almost always."""
    rng = np.random.default_rng(seed)
    instances = [i for i in catalogs.hsp_catalog() if i.hidden.order < i.group.order]
    per = max(runs // len(instances), 1)
    exact_fail = 0
    plateau_fail = 0
    plateau_total = 0
    for inst in instances:
        for _ in range(per):
            res = recover_subgroup(inst, Strategy.GPK_UNIFORM_NONTRIVIAL, rng,
                                   StoppingRule("known-order"))
            if not res.converged or res.estimate != inst.hidden:
                exact_fail += 1
            res = recover_subgroup(inst, Strategy.SIMON, rng,
                                   StoppingRule("plateau", plateau_window=8))
            plateau_total += 1
            if res.estimate != inst.hidden:
                plateau_fail += 1
    rate = 1.0 - plateau_fail / plateau_total
    return [
        CheckResult("recovery", f"known-order stopping exact on {per * len(instances)} runs",
                    exact_fail == 0, f"{exact_fail} failures"),
        CheckResult("recovery", f"plateau stopping (window 8) success rate {rate:.4f}",
                    rate >= 0.99, f"{plateau_fail}/{plateau_total} failures"),
    ]


SCOPES = {
    "gpk-correctness": check_gpk_correctness,
    "eigenvector": check_eigenvector,
    "hsp-support": check_hsp_support,
    "hsp-identities": check_hsp_identities,
    "duality": check_duality_inversion,
    "fbi-biconditional": check_fbi_biconditional,
    "fbi-solver": check_fbi_solver,
    "recovery": check_recovery,
}


def run_scope(scope: str, seed: int = 0) -> list[CheckResult]:
    if scope == "all":
        results = []
        for fn in SCOPES.values():
            results.extend(fn(seed))
        return results
    if scope not in SCOPES:
        raise ValueError(f"unknown scope {scope!r}; choose from {sorted(SCOPES)} or 'all'")
    return SCOPES[scope](seed)
