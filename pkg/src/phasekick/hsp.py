"""Hidden subgroup instances and the Simon / GPK-marker round strategies.

An instance hides a subgroup S of G behind an oracle that is constant on each
coset of S and takes distinct values on distinct cosets.  Every round strategy
produces a label z with chi_z in the annihilator of S; the strategies differ
only in the distribution over those labels, which is what the comparison
machinery quantifies.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .characters import Character, annihilator
from .groups import (
    GroupElement,
    GroupSpec,
    Subgroup,
    coset_index_map,
    subgroup_closure,
)
from .simulate import (
    JointState,
    Oracle,
    fourier_gate_joint,
    gpk_amplitudes,
    gpk_run,
    measure,
    measure_register,
    oracle_gate,
)


class Strategy(enum.Enum):
    SIMON = "simon"
    GPK_UNIFORM_ALL = "gpk-uniform-all"
    GPK_UNIFORM_NONTRIVIAL = "gpk-uniform-nontrivial"


@dataclass
class HspInstance:
    group: GroupSpec
    group_out: GroupSpec
    hidden: Subgroup
    oracle: Oracle

    def __post_init__(self):
        if self.hidden.group.orders != self.group.orders:
            raise ValueError("hidden subgroup must live in the input group")

    @property
    def annihilator(self) -> Subgroup:
        if not hasattr(self, "_ann"):
            self._ann = annihilator(self.hidden)
        return self._ann


def make_hsp_instance(group: GroupSpec, group_out: GroupSpec, hidden: Subgroup,
                      rng: np.random.Generator) -> HspInstance:
    """Assign one distinct random output value per coset of the hidden subgroup."""
    n_cosets = group.order // hidden.order
    if group_out.order < n_cosets:
        raise ValueError(
            f"|H|={group_out.order} too small for {n_cosets} distinct coset labels"
        )
    _, owner = coset_index_map(hidden)
    labels = rng.choice(group_out.order, size=n_cosets, replace=False)
    table = labels[owner]
    return HspInstance(group, group_out, hidden, Oracle(group, group_out, table))


def simon_round(inst: HspInstance, rng: np.random.Generator) -> GroupElement:
    """One Simon round: F_G, U_f, F_G, measure second then first register."""
    state = _simon_final_state(inst)
    _, first = measure_register(state, 1, rng)
    return measure(first, rng)


def _simon_final_state(inst: HspInstance) -> JointState:
    state = JointState.basis(inst.group, inst.group_out,
                             inst.group.zero(), inst.group_out.zero())
    state = fourier_gate_joint(state, second=False)
    state = oracle_gate(inst.oracle, state)
    state = fourier_gate_joint(state, second=False)
    return state


def simon_exact_distribution(inst: HspInstance) -> np.ndarray:
    """First-register outcome pmf of the Simon circuit, from the state vector."""
    state = _simon_final_state(inst)
    inst.oracle.calls -= 1  # diagnostic evaluation, not a black-box round
    return (np.abs(state.amps) ** 2).sum(axis=1)


def gpk_round(inst: HspInstance, marker: Character,
              rng: np.random.Generator) -> GroupElement:
    """One GPK round with the given marker; the result label lands in S-perp."""
    return gpk_run(inst.oracle, marker, rng).measured


def random_marker(inst: HspInstance, rng: np.random.Generator, *,
                  nontrivial: bool) -> Character:
    lo = 1 if nontrivial else 0
    idx = int(rng.integers(lo, inst.group_out.order))
    return Character(inst.group_out.element_at(idx))


def exact_round_distribution(inst: HspInstance, strategy: Strategy) -> np.ndarray:
    """Exact per-round outcome pmf over first-register labels for a strategy.

    GPK strategies are mixtures over markers of the closed-form amplitude
    distributions; the Simon pmf comes from its own circuit state.
    """
    if strategy is Strategy.SIMON:
        return simon_exact_distribution(inst)
    n_h = inst.group_out.order
    markers = range(n_h) if strategy is Strategy.GPK_UNIFORM_ALL else range(1, n_h)
    acc = np.zeros(inst.group.order)
    for h in markers:
        amps = gpk_amplitudes(inst.oracle, Character(inst.group_out.element_at(h)))
        acc += np.abs(amps) ** 2
    return acc / len(markers)


def theoretical_distribution(inst: HspInstance, strategy: Strategy) -> np.ndarray:
    """The closed-form pmf each strategy should produce (for identity checks)."""
    n_g, n_h = inst.group.order, inst.group_out.order
    s = inst.hidden.order
    perp = inst.annihilator.index_set
    out = np.zeros(n_g)
    if strategy in (Strategy.SIMON, Strategy.GPK_UNIFORM_ALL):
        for z in perp:
            out[z] = s / n_g
        return out
    for z in perp:
        out[z] = s * n_h / (n_g * (n_h - 1))
    out[0] = (s * n_h - n_g) / (n_g * (n_h - 1))
    return out


@dataclass
class StoppingRule:
    """When to stop collecting annihilator labels.

    ``known-order`` stops once the span reaches |G|/|S| (harness knows S);
    ``plateau`` stops after ``plateau_window`` consecutive rounds without span
    growth.
    """

    kind: str = "known-order"
    plateau_window: int = 8
    max_rounds: int = 10_000

    def __post_init__(self):
        if self.kind not in ("known-order", "plateau"):
            raise ValueError(f"unknown stopping rule {self.kind!r}")


@dataclass
class RecoveryResult:
    estimate: Subgroup
    rounds: int
    converged: bool
    collected: list[GroupElement] = field(default_factory=list)


def recover_subgroup(inst: HspInstance, strategy: Strategy,
                     rng: np.random.Generator,
                     stop: StoppingRule | None = None) -> RecoveryResult:
    """Accumulate round outcomes, close them up, and return the annihilator of the span.

    The span only grows and the estimate (its annihilator) only shrinks toward
    the hidden subgroup; with known-order stopping the result is exact.
    """
    stop = stop or StoppingRule()
    group = inst.group
    target = group.order // inst.hidden.order
    span = subgroup_closure(group, [])
    collected: list[GroupElement] = []
    stagnant = 0
    rounds = 0
    while rounds < stop.max_rounds:
        if stop.kind == "known-order" and span.order == target:
            return RecoveryResult(annihilator(span), rounds, True, collected)
        if stop.kind == "plateau" and stagnant >= stop.plateau_window:
            est = annihilator(span)
            return RecoveryResult(est, rounds, est == inst.hidden, collected)
        if strategy is Strategy.SIMON:
            z = simon_round(inst, rng)
        else:
            marker = random_marker(
                inst, rng, nontrivial=strategy is Strategy.GPK_UNIFORM_NONTRIVIAL)
            z = gpk_round(inst, marker, rng)
        rounds += 1
        collected.append(z)
        if not span.contains(z):
            span = subgroup_closure(group, list(span.generators) + [z])
            stagnant = 0
        else:
            stagnant += 1
    return RecoveryResult(annihilator(span), rounds, False, collected)


def stream_rounds(inst: HspInstance, strategy: Strategy, trials: int,
                  rng: np.random.Generator, fh) -> None:
    """Run rounds and write one JSON line per round: {trial, marker, delta, calls}.

    ``marker`` is null for Simon rounds (no marker register input); ``calls``
    is the cumulative oracle call count.
    """
    import json

    inst.oracle.reset_calls()
    for trial in range(trials):
        if strategy is Strategy.SIMON:
            marker_json = None
            z = simon_round(inst, rng)
        else:
            marker = random_marker(
                inst, rng, nontrivial=strategy is Strategy.GPK_UNIFORM_NONTRIVIAL)
            marker_json = marker.label.to_json()
            z = gpk_round(inst, marker, rng)
        fh.write(json.dumps({
            "trial": trial,
            "marker": marker_json,
            "delta": z.to_json(),
            "calls": inst.oracle.calls,
        }, sort_keys=True) + "\n")


@dataclass
class ComparisonReport:
    """Exact and empirical comparison of round strategies on one instance."""

    group: list[int]
    group_out: list[int]
    hidden_order: int
    degenerate: bool
    exact_pmf: dict[str, list[float]]
    useful_prob: dict[str, float]
    ratio_nontrivial_vs_simon: float | None
    empirical_rounds: dict[str, dict[str, float]]
    trials: int
    seed: int | None

    def to_json(self) -> dict:
        return {
            "instance": {
                "orders_G": self.group,
                "orders_H": self.group_out,
                "hidden_order": self.hidden_order,
            },
            "degenerate": self.degenerate,
            "exact_pmf": self.exact_pmf,
            "useful_prob": self.useful_prob,
            "ratio": self.ratio_nontrivial_vs_simon,
            "empirical_rounds": self.empirical_rounds,
            "trials": self.trials,
            "seed": self.seed,
        }


def _round_stats(rounds: Sequence[int]) -> dict[str, float]:
    arr = np.asarray(rounds, dtype=float)
    return {
        "mean": float(arr.mean()),
        "stddev": float(arr.std()),
        "max": float(arr.max()),
    }


def compare_strategies(inst: HspInstance, trials: int, rng: np.random.Generator,
                       seed: int | None = None) -> ComparisonReport:
    """Per-round useful-character probabilities, their ratio, and empirical rounds.

    The useful probability is 1 - p(0); its nontrivial/simon ratio equals
    |H|/(|H|-1) whenever the instance is not degenerate (S != G).
    """
    degenerate = inst.hidden.order == inst.group.order
    pmf = {s.value: exact_round_distribution(inst, s) for s in Strategy}
    useful = {name: float(1.0 - p[0]) for name, p in pmf.items()}
    ratio = None
    if not degenerate:
        ratio = useful[Strategy.GPK_UNIFORM_NONTRIVIAL.value] / useful[Strategy.SIMON.value]
    empirical = {}
    for s in Strategy:
        counts = [
            recover_subgroup(inst, s, rng).rounds for _ in range(trials)
        ]
        empirical[s.value] = _round_stats(counts)
    return ComparisonReport(
        group=inst.group.to_json(),
        group_out=inst.group_out.to_json(),
        hidden_order=inst.hidden.order,
        degenerate=degenerate,
        exact_pmf={k: [float(x) for x in v] for k, v in pmf.items()},
        useful_prob=useful,
        ratio_nontrivial_vs_simon=ratio,
        empirical_rounds=empirical,
        trials=trials,
        seed=seed,
    )
