"""Exact state-vector simulation of the group Fourier gate, oracle gate, and GPK.

States are complex amplitude vectors indexed by the group's element index.  The
generalised phase kick-back (GPK) routine is simulated literally: prepare
|0>_G (x) |h>_H, apply F_G (x) F_H, apply the oracle gate, apply F_G to the
first register, discard the second register, measure.  The discard step checks
that the joint state really is a product before projecting, so the eigenvector
property the kick-back relies on is verified on every run rather than assumed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .characters import Character, char_eval
from .groups import GroupElement, GroupSpec, SpecMismatchError
from .kernels import oracle_shift, phase_apply, phase_matvec, roots_of_unity

NORM_TOL = 1e-6
PARALLEL_TOL = 1e-9


class SimulationError(RuntimeError):
    """An invariant the simulation relies on failed (non-unit norm, entangled discard)."""


@dataclass
class StateVector:
    """Amplitudes over one register, indexed by element index."""

    group: GroupSpec
    amps: np.ndarray

    def __post_init__(self):
        self.amps = np.asarray(self.amps, dtype=np.complex128)
        if self.amps.shape != (self.group.order,):
            raise ValueError("amplitude vector length must equal |G|")

    @classmethod
    def basis(cls, group: GroupSpec, g: GroupElement) -> "StateVector":
        amps = np.zeros(group.order, dtype=np.complex128)
        amps[g.index] = 1.0
        return cls(group, amps)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amps) ** 2


@dataclass
class JointState:
    """Amplitudes over two registers, stored as a (|G|, |H|) matrix."""

    group_a: GroupSpec
    group_b: GroupSpec
    amps: np.ndarray

    def __post_init__(self):
        self.amps = np.asarray(self.amps, dtype=np.complex128)
        expected = (self.group_a.order, self.group_b.order)
        if self.amps.shape != expected:
            raise ValueError(f"joint amplitudes must have shape {expected}")

    @classmethod
    def product(cls, a: StateVector, b: StateVector) -> "JointState":
        return cls(a.group, b.group, np.outer(a.amps, b.amps))

    @classmethod
    def basis(cls, group_a: GroupSpec, group_b: GroupSpec,
              g: GroupElement, h: GroupElement) -> "JointState":
        amps = np.zeros((group_a.order, group_b.order), dtype=np.complex128)
        amps[g.index, h.index] = 1.0
        return cls(group_a, group_b, amps)

    def flat(self) -> np.ndarray:
        """Row-major vector indexed by index_of(g) * |H| + index_of(h)."""
        return self.amps.reshape(-1)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))


class Oracle:
    """A total function table G -> H behind a counted query interface.

    The counter increments once per oracle-gate application or black-box
    query; diagnostic code that reads ``table`` directly does not count.
    """

    def __init__(self, group_in: GroupSpec, group_out: GroupSpec,
                 table: Sequence[int]):
        self.group_in = group_in
        self.group_out = group_out
        self.table = np.asarray(table, dtype=np.int64)
        if self.table.shape != (group_in.order,):
            raise ValueError("oracle table must list one output per input element")
        if self.table.min() < 0 or self.table.max() >= group_out.order:
            raise ValueError("oracle table entries must be output element indices")
        self.calls = 0

    @classmethod
    def from_function(cls, group_in: GroupSpec, group_out: GroupSpec,
                      fn: Callable[[GroupElement], GroupElement]) -> "Oracle":
        table = [fn(g).index for g in group_in.elements()]
        return cls(group_in, group_out, table)

    @classmethod
    def from_elements(cls, group_in: GroupSpec, group_out: GroupSpec,
                      values: Sequence[GroupElement]) -> "Oracle":
        return cls(group_in, group_out, [v.index for v in values])

    def query(self, g: GroupElement) -> GroupElement:
        """Black-box classical query; counted."""
        self.calls += 1
        return self.group_out.element_at(int(self.table[g.index]))

    def value(self, g: GroupElement) -> GroupElement:
        """Uncounted table read, for harness-side diagnostics only."""
        return self.group_out.element_at(int(self.table[g.index]))

    def image_indices(self) -> list[int]:
        return sorted(set(int(v) for v in self.table))

    def fiber_sizes(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for v in self.table:
            out[int(v)] = out.get(int(v), 0) + 1
        return out

    def reset_calls(self) -> None:
        self.calls = 0

    def to_json(self) -> dict:
        return {
            "orders_G": self.group_in.to_json(),
            "orders_H": self.group_out.to_json(),
            "table": [self.group_out.element_at(int(i)).to_json() for i in self.table],
        }

    @classmethod
    def from_json(cls, data) -> "Oracle":
        group_in = GroupSpec.from_json(data["orders_G"])
        group_out = GroupSpec.from_json(data["orders_H"])
        values = [group_out.element(c) for c in data["table"]]
        if len(values) != group_in.order:
            raise ValueError("table length does not match |G|")
        return cls.from_elements(group_in, group_out, values)

    @classmethod
    def load(cls, path) -> "Oracle":
        with open(path) as fh:
            return cls.from_json(json.load(fh))

    def save(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_json(), fh, sort_keys=True)


@dataclass
class GpkOutcome:
    """Result of one GPK run: the measured element and the pre-measurement state."""

    measured: GroupElement
    amplitudes: StateVector
    marker: Character


def _check_norm(amps: np.ndarray) -> None:
    norm = np.linalg.norm(amps)
    if abs(norm - 1.0) > NORM_TOL:
        raise SimulationError(f"state norm {norm} deviates from 1 beyond {NORM_TOL}")


def fourier_gate(state: StateVector) -> StateVector:
    """F_G: amps'[z] = (1/sqrt|G|) sum_g chi_g(z) amps[g]."""
    group = state.group
    roots = roots_of_unity(group.lcm_exponent)
    out = phase_matvec(group.exponent_table, roots, state.amps,
                       1.0 / np.sqrt(group.order))
    return StateVector(group, out)


def fourier_gate_joint(state: JointState, *, first: bool = True,
                       second: bool = True) -> JointState:
    """Apply the Fourier gate to either or both registers of a joint state."""
    amps = state.amps
    if first:
        ga = state.group_a
        amps = phase_apply(ga.exponent_table, roots_of_unity(ga.lcm_exponent),
                           amps, 1.0 / np.sqrt(ga.order))
    if second:
        gb = state.group_b
        amps = phase_apply(gb.exponent_table, roots_of_unity(gb.lcm_exponent),
                           amps.T, 1.0 / np.sqrt(gb.order)).T
    return JointState(state.group_a, state.group_b, amps)


def oracle_gate(oracle: Oracle, state: JointState) -> JointState:
    """U_f: moves amplitude at (g, h) to (g, h + f(g)); one counted call."""
    if state.group_a.orders != oracle.group_in.orders or \
            state.group_b.orders != oracle.group_out.orders:
        raise SpecMismatchError("joint state registers do not match the oracle groups")
    oracle.calls += 1
    out = oracle_shift(state.amps, oracle.table, oracle.group_out.addition_table)
    return JointState(state.group_a, state.group_b, out)


def character_state(marker: Character) -> StateVector:
    """|chi_h> = F_H |h>, the second-register state the GPK relies on."""
    return fourier_gate(StateVector.basis(marker.group, marker.label))


def eigen_check(oracle: Oracle, g: GroupElement, h: Character) -> complex:
    """Apply U_f to |g> (x) |chi_h> and return the eigenvalue; raises if not parallel.

    The returned scalar must equal conj(chi_h(f(g))).
    """
    pre = JointState.product(StateVector.basis(oracle.group_in, g),
                             character_state(h))
    post = oracle_gate(oracle, pre)
    k = int(np.argmax(np.abs(pre.amps)))
    lam = post.amps.reshape(-1)[k] / pre.amps.reshape(-1)[k]
    residual = np.max(np.abs(post.amps - lam * pre.amps))
    if residual > PARALLEL_TOL:
        raise SimulationError(
            f"oracle gate output not parallel to input (residual {residual:.3e}); "
            "the eigenvector property failed"
        )
    return complex(lam)


def measure(state: StateVector, rng: np.random.Generator) -> GroupElement:
    """Sample an element from |amps|^2 by inverse-CDF with the given generator."""
    probs = state.probabilities()
    total = probs.sum()
    if abs(total - 1.0) > NORM_TOL:
        raise SimulationError(f"cannot measure state with norm^2 {total}")
    cdf = np.cumsum(probs / total)
    idx = int(np.searchsorted(cdf, rng.random(), side="right"))
    return state.group.element_at(min(idx, state.group.order - 1))


def measure_many(state: StateVector, rng: np.random.Generator, n: int) -> np.ndarray:
    """Vectorized repeated measurement; returns element indices."""
    probs = state.probabilities()
    total = probs.sum()
    if abs(total - 1.0) > NORM_TOL:
        raise SimulationError(f"cannot measure state with norm^2 {total}")
    cdf = np.cumsum(probs / total)
    idx = np.searchsorted(cdf, rng.random(n), side="right")
    return np.minimum(idx, state.group.order - 1)


def measure_register(state: JointState, register: int,
                     rng: np.random.Generator) -> tuple[GroupElement, StateVector]:
    """Measure one register; returns the outcome and the collapsed other register."""
    amps = state.amps if register == 0 else state.amps.T
    group = state.group_a if register == 0 else state.group_b
    other = state.group_b if register == 0 else state.group_a
    marginal = (np.abs(amps) ** 2).sum(axis=1)
    total = marginal.sum()
    if abs(total - 1.0) > NORM_TOL:
        raise SimulationError(f"cannot measure joint state with norm^2 {total}")
    cdf = np.cumsum(marginal / total)
    idx = int(np.searchsorted(cdf, rng.random(), side="right"))
    idx = min(idx, group.order - 1)
    collapsed = amps[idx] / np.sqrt(marginal[idx])
    return group.element_at(idx), StateVector(other, collapsed)


def gpk_pre_measurement(oracle: Oracle, marker: Character, *,
                        shortcut: bool = False) -> StateVector:
    """Steps 1-4 of the GPK: returns the first-register state before measurement.

    Counts exactly one oracle call.  With ``shortcut=True`` the |chi_h> second
    register is prepared directly instead of via F_G (x) F_H on basis states;
    the oracle gate and discard are unchanged.
    """
    group_g, group_h = oracle.group_in, oracle.group_out
    if marker.group.orders != group_h.orders:
        raise SpecMismatchError("marker must be a character of the oracle's output group")
    if shortcut:
        uniform = fourier_gate(StateVector.basis(group_g, group_g.zero()))
        phi1 = JointState.product(uniform, character_state(marker))
    else:
        phi0 = JointState.basis(group_g, group_h, group_g.zero(), marker.label)
        phi1 = fourier_gate_joint(phi0)
    phi2 = oracle_gate(oracle, phi1)
    phi3 = fourier_gate_joint(phi2, second=False)

    # Discard the second register.  After the kick-back the joint state must be
    # an exact product with |chi_h>; verify instead of assuming.
    chi_amps = character_state(marker).amps
    first = phi3.amps @ np.conj(chi_amps)
    residual = np.max(np.abs(phi3.amps - np.outer(first, chi_amps)))
    if residual > PARALLEL_TOL:
        raise SimulationError(
            f"second register entangled at discard (residual {residual:.3e})"
        )
    _check_norm(first)
    return StateVector(group_g, first)


def gpk_run(oracle: Oracle, marker: Character, rng: np.random.Generator, *,
            shortcut: bool = False) -> GpkOutcome:
    """Run the GPK once and measure; exactly one oracle call."""
    state = gpk_pre_measurement(oracle, marker, shortcut=shortcut)
    return GpkOutcome(measured=measure(state, rng), amplitudes=state, marker=marker)


def gpk_amplitudes(oracle: Oracle, marker: Character) -> np.ndarray:
    """Closed-form amplitudes alpha_z = (1/|G|) sum_g conj(chi_h(f(g))) chi_g(z).

    Diagnostic: reads the table directly and does not count an oracle call.
    """
    group_g, group_h = oracle.group_in, oracle.group_out
    roots_h = roots_of_unity(group_h.lcm_exponent)
    marker_row = group_h.exponent_table[marker.label.index]
    phases = np.conj(roots_h[marker_row[oracle.table]])
    roots_g = roots_of_unity(group_g.lcm_exponent)
    return phase_matvec(group_g.exponent_table, roots_g, phases, 1.0 / group_g.order)


def gpk_closed_form(oracle: Oracle, marker: Character, z: GroupElement) -> complex:
    """Single closed-form amplitude; see :func:`gpk_amplitudes`."""
    return complex(gpk_amplitudes(oracle, marker)[z.index])


def eigenvalue_expected(oracle: Oracle, g: GroupElement, h: Character) -> complex:
    """conj(chi_h(f(g))), the eigenvalue the kick-back predicts (uncounted read)."""
    return complex(np.conj(char_eval(h.label, oracle.value(g))))
