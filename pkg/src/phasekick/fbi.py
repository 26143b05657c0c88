"""Fully-balanced-image functions: validation and the marker-selection solver.

An FBI function's image is a coset of a subgroup K of H, with all fibers the
same size.  Each character of H is then either constant on the image or sums
to zero over it, which a single GPK run detects: a constant marker always
measures 0, a balancing marker never does.  The marker-selection loop exploits
this to find |img(f)| while probing as few markers as possible, and the ledger
it returns records the constant generators (C), the balancing-orbit
representatives (B), and the call count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .characters import (
    Character,
    Multiset,
    MultisetClass,
    annihilator,
    classify_multiset,
)
from .groups import GroupElement, GroupSpec, Subgroup, subgroup_closure
from .simulate import Oracle, gpk_run


class PromiseViolationError(RuntimeError):
    """The solver ran out of usable markers: the oracle was not an FBI function."""


@dataclass
class FbiInstance:
    group: GroupSpec
    group_out: GroupSpec
    image_subgroup: Subgroup
    shift: GroupElement
    oracle: Oracle


def make_fbi_instance(group: GroupSpec, group_out: GroupSpec, image_subgroup: Subgroup,
                      shift: GroupElement, rng: np.random.Generator) -> FbiInstance:
    """Random FBI function with image shift + K and equal fiber sizes."""
    k_order = image_subgroup.order
    if group.order % k_order != 0:
        raise ValueError(
            f"|K|={k_order} must divide |G|={group.order} for constant fibers"
        )
    fiber = group.order // k_order
    perm = rng.permutation(group.order)
    values = [shift + e for e in image_subgroup.elements]
    rng.shuffle(values)
    table = np.empty(group.order, dtype=np.int64)
    for i, v in enumerate(values):
        table[perm[i * fiber:(i + 1) * fiber]] = v.index
    return FbiInstance(group, group_out, image_subgroup, shift,
                       Oracle(group, group_out, table))


def fiber_multiset(oracle: Oracle) -> Multiset:
    """The multiset h -> |f^-1(h)| on the output group."""
    counts = [0] * oracle.group_out.order
    for v in oracle.table:
        counts[int(v)] += 1
    return Multiset.from_indices(oracle.group_out, counts)


def is_fbi_spectral(oracle: Oracle) -> bool:
    """Character-sweep test: every character is constant or balancing on the fibers."""
    ms = fiber_multiset(oracle)
    return all(
        classify_multiset(ms, Character(h)) is not MultisetClass.NEITHER
        for h in oracle.group_out.elements()
    )


def is_fbi_structural(oracle: Oracle) -> bool:
    """Structural test: the image is a coset of a subgroup and fibers have equal size."""
    group_out = oracle.group_out
    image = [group_out.element_at(i) for i in oracle.image_indices()]
    sizes = set(oracle.fiber_sizes().values())
    if len(sizes) != 1:
        return False
    base = image[0]
    shifted = {(e - base).index for e in image}
    # a finite set containing 0 is a subgroup iff it is closed under addition
    for a in shifted:
        ea = group_out.element_at(a)
        for b in shifted:
            if (ea + group_out.element_at(b)).index not in shifted:
                return False
    return True


def image_subgroup_of(oracle: Oracle) -> Subgroup:
    """The subgroup underlying the image coset (harness-side table read)."""
    group_out = oracle.group_out
    image = [group_out.element_at(i) for i in oracle.image_indices()]
    base = image[0]
    members = [e - base for e in image]
    return Subgroup(group_out, members, members)


@dataclass(frozen=True)
class ProbeOutcome:
    """One GPK probe: zero means the marker is constant on the image."""

    marker: Character
    delta: GroupElement

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.delta.coords)


def fbi_gpk_probe(oracle: Oracle, marker: Character, rng: np.random.Generator, *,
                  shortcut: bool = False) -> ProbeOutcome:
    """Run the GPK once; under the FBI promise, zero iff the marker is constant."""
    outcome = gpk_run(oracle, marker, rng, shortcut=shortcut)
    return ProbeOutcome(marker=marker, delta=outcome.measured)


@dataclass
class ProbeRecord:
    marker_index: int
    result: str            # "constant" | "balanced"
    inferred: bool         # True when no GPK call was spent
    calls_after: int
    constants_after: list[int]
    reps_after: list[int]

    def to_json(self) -> dict:
        return {
            "marker": self.marker_index,
            "result": self.result,
            "inferred": self.inferred,
            "calls": self.calls_after,
            "C": self.constants_after,
            "B": self.reps_after,
        }


@dataclass
class MarkerLedger:
    """Evidence gathered by marker selection.

    ``constants`` generate every character seen to be constant; ``reps`` hold
    one balancing character per discovered orbit.  At termination
    |<C>| * (|B|+1) = |H|.
    """

    group_out: GroupSpec
    constants: list[Character] = field(default_factory=list)
    reps: list[Character] = field(default_factory=list)
    span_constants: Subgroup = None  # type: ignore[assignment]
    calls: int = 0
    terminated: bool = False
    log: list[ProbeRecord] = field(default_factory=list)

    def __post_init__(self):
        if self.span_constants is None:
            self.span_constants = subgroup_closure(self.group_out, [])

    def to_json(self) -> dict:
        return {
            "orders_H": self.group_out.to_json(),
            "C": [c.label.to_json() for c in self.constants],
            "B": [b.label.to_json() for b in self.reps],
            "span_order": self.span_constants.order,
            "calls": self.calls,
            "terminated": self.terminated,
            "log": [r.to_json() for r in self.log],
        }


@dataclass
class MarkerSelectionResult:
    image_order: int
    ledger: MarkerLedger


_CONSTANT = "constant"
_BALANCED = "balanced"


class _SelectionState:
    """Index-level bookkeeping for the marker-selection loop."""

    def __init__(self, oracle: Oracle, rng: np.random.Generator, shortcut: bool):
        self.oracle = oracle
        self.h_group = oracle.group_out
        self.rng = rng
        self.shortcut = shortcut
        self.add = self.h_group.addition_table
        self.neg = np.asarray(
            [self.h_group.index_of(-self.h_group.element_at(i))
             for i in range(self.h_group.order)], dtype=np.int64)
        self.constants: list[int] = []
        self.span: set[int] = {0}
        self.reps: list[int] = []
        self.known_balanced: set[int] = set()
        self.ledger = MarkerLedger(self.h_group)
        self._cyclic_cache: dict[int, frozenset[int]] = {}

    # -- small group helpers (index level) --

    def _cyclic(self, x: int) -> frozenset[int]:
        got = self._cyclic_cache.get(x)
        if got is None:
            members = {0}
            cur = x
            while cur not in members:
                members.add(cur)
                cur = int(self.add[cur, x])
            got = frozenset(members)
            self._cyclic_cache[x] = got
        return got

    def _respan(self) -> None:
        group = self.h_group
        sub = subgroup_closure(group, [group.element_at(i) for i in self.constants])
        self.span = set(sub.index_set)
        self.ledger.span_constants = sub
        self._coalesce_reps()

    def _coalesce_reps(self) -> None:
        """Keep one representative per coset of the constant span.

        Two representatives whose difference lies in the span are certified to
        sit in the same orbit of the true constant set, so the later one is
        dropped.  This keeps |B|+1 an exact count of discovered orbits and is
        what makes the termination condition sound for every candidate order.
        """
        kept: list[int] = []
        for y in self.reps:
            if all(self.diff(y, k) not in self.span for k in kept):
                kept.append(y)
        if len(kept) != len(self.reps):
            self.reps = kept
            self.ledger.reps = [Character(self.h_group.element_at(i)) for i in kept]

    def diff(self, a: int, b: int) -> int:
        return int(self.add[a, self.neg[b]])

    # -- status resolution --

    def inferred_status(self, x: int) -> str | None:
        """Classification forced by what is already known, or None.

        Constant characters form a subgroup, so anything in the span of found
        constants is constant; and if some power of x times a known constant
        is known to balance, x cannot be constant.
        """
        if x in self.span:
            return _CONSTANT
        if x in self.known_balanced:
            return _BALANCED
        for p in self._cyclic(x):
            if p == 0:
                continue
            for c in self.span:
                if int(self.add[p, c]) in self.known_balanced:
                    return _BALANCED
        return None

    def resolve(self, x: int) -> str:
        """Status of marker x, probing the oracle only when it is not inferable."""
        status = self.inferred_status(x)
        inferred = status is not None
        if status is None:
            probe = fbi_gpk_probe(
                self.oracle, Character(self.h_group.element_at(x)), self.rng,
                shortcut=self.shortcut)
            self.ledger.calls += 1
            status = _CONSTANT if probe.is_zero else _BALANCED
        if status == _CONSTANT:
            if x not in self.span:
                self.constants.append(x)
                self.ledger.constants.append(Character(self.h_group.element_at(x)))
                self._respan()
        else:
            self.known_balanced.add(x)
        self.ledger.log.append(ProbeRecord(
            marker_index=x,
            result=status,
            inferred=inferred,
            calls_after=self.ledger.calls,
            constants_after=list(self.constants),
            reps_after=list(self.reps),
        ))
        return status

    def add_rep(self, x: int) -> None:
        """Record x as an orbit representative unless its span-coset already has one."""
        self.known_balanced.add(x)
        if any(self.diff(x, k) in self.span for k in self.reps):
            return
        self.reps.append(x)
        self.ledger.reps.append(Character(self.h_group.element_at(x)))

    def termination_product(self) -> int:
        return len(self.span) * (len(self.reps) + 1)


def marker_selection(oracle: Oracle, *, rng: np.random.Generator | None = None,
                     candidates: Sequence[int] | None = None,
                     shuffle: bool = False,
                     shortcut: bool = False) -> MarkerSelectionResult:
    """Determine |img(f)| for an FBI oracle by adaptive marker probing.

    Candidates are tried in ascending index order by default; pass an explicit
    index sequence for scripted runs, or ``shuffle=True`` for a seeded random
    order.  A candidate whose orbit is already represented is skipped.  Anything
    else is classified, by inference where the ledger already forces the answer
    and by one GPK call otherwise; a balancing candidate is then disambiguated
    against every known orbit representative through difference probes, after
    which it and the balancing differences join the representative list.
    Whenever the constant span grows, representatives are coalesced modulo the
    span, so the stopping condition |<C>| * (|B|+1) = |H| certifies that the
    constant span is complete and |B|+1 = |img(f)| exactly.

    Raises :class:`PromiseViolationError` if candidates run out or the ledger
    overshoots |H|; both can only happen when the FBI promise is broken.
    """
    rng = rng if rng is not None else np.random.default_rng(0)
    h_group = oracle.group_out
    n_h = h_group.order
    if n_h < 2:
        raise ValueError("output group must have at least 2 elements")
    state = _SelectionState(oracle, rng, shortcut)

    if candidates is None:
        order = list(range(1, n_h))
        if shuffle:
            order = [int(i) for i in rng.permutation(np.asarray(order))]
    else:
        order = [int(c) for c in candidates]
        if any(not 0 < c < n_h for c in order):
            raise ValueError("candidate indices must be nontrivial element indices")

    for h in order:
        product = state.termination_product()
        if product == n_h:
            break
        if product > n_h:
            raise PromiseViolationError(
                "ledger overshot |H|; oracle violates the FBI promise")
        # skip candidates whose classification and orbit are already settled
        if h in state.span:
            continue
        if any(state.diff(h, b) in state.span for b in state.reps):
            continue
        status = state.resolve(h)
        if status == _CONSTANT:
            continue
        if not state.reps:
            state.add_rep(h)
            continue
        same_orbit = False
        diffs: list[int] = []
        for y in list(state.reps):
            d = state.diff(y, h)
            if state.resolve(d) == _CONSTANT:
                same_orbit = True
                break
            diffs.append(d)
        if not same_orbit:
            state.add_rep(h)
            for d in diffs:
                state.add_rep(d)

    product = state.termination_product()
    if product != n_h:
        state.ledger.terminated = False
        detail = "overshot" if product > n_h else "was exhausted at"
        raise PromiseViolationError(
            f"marker selection {detail} |<C>|*(|B|+1) = {product} != |H| = {n_h}; "
            "oracle violates the FBI promise")
    state.ledger.terminated = True
    assert n_h % len(state.span) == 0
    image_order = n_h // len(state.span)
    return MarkerSelectionResult(image_order=image_order, ledger=state.ledger)


def call_bound(image_order: int, out_order: int) -> float:
    """Worst-case GPK calls: (|img|-1) * (log2(|H|/|img|) + 1)."""
    if image_order < 1 or out_order % image_order:
        raise ValueError("image order must divide |H|")
    return (image_order - 1) * (math.log2(out_order / image_order) + 1.0)


def call_bound_for(oracle: Oracle) -> float:
    """Bound evaluated from the oracle's table (harness side)."""
    return call_bound(len(oracle.image_indices()), oracle.group_out.order)


def image_description(ledger: MarkerLedger) -> Subgroup:
    """The subgroup underlying img(f): the annihilator of the constant span.

    The coset shift is not recoverable from GPK outcomes (shifting f multiplies
    every amplitude by a unimodular phase), so only the subgroup is returned.
    """
    if not ledger.terminated:
        raise ValueError("marker selection did not terminate; no image description")
    return annihilator(ledger.span_constants)


def classical_worst_case(oracle: Oracle) -> int | None:
    """Deterministic classical calls needed when G = H: |G| / (smallest prime of |img|)."""
    if oracle.group_in.orders != oracle.group_out.orders:
        return None
    img = len(oracle.image_indices())
    if img == 1:
        return 0
    p = next(d for d in range(2, img + 1) if img % d == 0)
    return oracle.group_in.order // p
