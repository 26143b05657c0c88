"""Finite Abelian groups presented as products of cyclic groups.

A group is a fixed list of cyclic orders ``(n_1, ..., n_k)``; elements are
coordinate vectors with ``coords[j]`` reduced modulo ``n_j``.  Elements are
enumerated by a big-endian mixed-radix index (coordinate ``j`` is weighted by
``n_{j+1} * ... * n_k``), so the identity always has index 0.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

# Exhaustive subgroup enumeration is only meant for desk-scale groups.
SUBGROUP_ENUM_GUARD = 256

# Largest order for which the full pairwise pairing-exponent table is cached.
EXPONENT_TABLE_GUARD = 4096


class SpecMismatchError(ValueError):
    """Raised when elements from different groups are combined."""


class SizeGuardError(ValueError):
    """Raised when an exhaustive operation is asked to exceed its guard."""


@dataclass(frozen=True)
class GroupSpec:
    """A finite Abelian group ``Z/n_1 x ... x Z/n_k``."""

    orders: tuple[int, ...]

    def __post_init__(self):
        if not self.orders:
            raise ValueError("group needs at least one cyclic factor")
        if any(n < 2 for n in self.orders):
            raise ValueError(f"cyclic orders must be >= 2, got {self.orders}")

    @cached_property
    def order(self) -> int:
        return math.prod(self.orders)

    @cached_property
    def lcm_exponent(self) -> int:
        """lcm of the cyclic orders; the order of the root of unity used by characters."""
        return math.lcm(*self.orders)

    @cached_property
    def _radix_weights(self) -> tuple[int, ...]:
        w = []
        acc = 1
        for n in reversed(self.orders):
            w.append(acc)
            acc *= n
        return tuple(reversed(w))

    @cached_property
    def coords_matrix(self) -> np.ndarray:
        """int64 array of shape (order, k): row i is the coordinates of element i."""
        k = len(self.orders)
        out = np.empty((self.order, k), dtype=np.int64)
        for j, (n, w) in enumerate(zip(self.orders, self._radix_weights)):
            out[:, j] = (np.arange(self.order) // w) % n
        return out

    @cached_property
    def pairing_weights(self) -> tuple[int, ...]:
        """Per-coordinate weights L/n_j of the fixed duality pairing."""
        L = self.lcm_exponent
        return tuple(L // n for n in self.orders)

    @cached_property
    def exponent_table(self) -> np.ndarray:
        """Pairing exponents E[i, j] = <element i, element j> mod L, cached for small groups."""
        if self.order > EXPONENT_TABLE_GUARD:
            raise SizeGuardError(
                f"exponent table guarded at |G| <= {EXPONENT_TABLE_GUARD}, got {self.order}"
            )
        from .kernels import exponent_table

        c = self.coords_matrix
        return exponent_table(c, c, np.asarray(self.pairing_weights, dtype=np.int64),
                              self.lcm_exponent)

    @cached_property
    def addition_table(self) -> np.ndarray:
        """index_of(e_i + e_j) for all pairs; cached for small groups."""
        if self.order > EXPONENT_TABLE_GUARD:
            raise SizeGuardError(
                f"addition table guarded at |G| <= {EXPONENT_TABLE_GUARD}, got {self.order}"
            )
        c = self.coords_matrix
        w = np.asarray(self._radix_weights, dtype=np.int64)
        n = np.asarray(self.orders, dtype=np.int64)
        summed = (c[:, None, :] + c[None, :, :]) % n
        return (summed * w).sum(axis=2)

    # -- element construction ------------------------------------------------

    def element(self, coords: Sequence[int]) -> "GroupElement":
        if len(coords) != len(self.orders):
            raise ValueError(
                f"expected {len(self.orders)} coordinates, got {len(coords)}"
            )
        reduced = tuple(int(c) % n for c, n in zip(coords, self.orders))
        return GroupElement(reduced, self)

    def zero(self) -> "GroupElement":
        return GroupElement((0,) * len(self.orders), self)

    def element_at(self, index: int) -> "GroupElement":
        if not 0 <= index < self.order:
            raise IndexError(f"element index {index} out of range for |G|={self.order}")
        coords = []
        rem = index
        for w, n in zip(self._radix_weights, self.orders):
            coords.append((rem // w) % n)
        return GroupElement(tuple(coords), self)

    def index_of(self, g: "GroupElement") -> int:
        self._check(g)
        return sum(c * w for c, w in zip(g.coords, self._radix_weights))

    def elements(self) -> Iterator["GroupElement"]:
        for i in range(self.order):
            yield self.element_at(i)

    # -- arithmetic ----------------------------------------------------------

    def add(self, g: "GroupElement", h: "GroupElement") -> "GroupElement":
        self._check(g)
        self._check(h)
        return GroupElement(
            tuple((a + b) % n for a, b, n in zip(g.coords, h.coords, self.orders)),
            self,
        )

    def sub(self, g: "GroupElement", h: "GroupElement") -> "GroupElement":
        return self.add(g, self.neg(h))

    def neg(self, g: "GroupElement") -> "GroupElement":
        self._check(g)
        return GroupElement(tuple((-a) % n for a, n in zip(g.coords, self.orders)), self)

    def pairing_exponent(self, g: "GroupElement", h: "GroupElement") -> int:
        """<g, h> = sum_j (L/n_j) g_j h_j mod L, the fixed dual pairing."""
        self._check(g)
        self._check(h)
        L = self.lcm_exponent
        return sum(w * a * b for w, a, b in zip(self.pairing_weights, g.coords, h.coords)) % L

    def _check(self, g: "GroupElement") -> None:
        if g.group.orders != self.orders:
            raise SpecMismatchError(
                f"element of {g.group.orders} used with group {self.orders}"
            )

    # -- serialization -------------------------------------------------------

    def to_json(self) -> list[int]:
        return list(self.orders)

    @classmethod
    def from_json(cls, data) -> "GroupSpec":
        return make_group(list(data))

    def __repr__(self) -> str:
        return "x".join(f"Z{n}" for n in self.orders)


@dataclass(frozen=True)
class GroupElement:
    """An element of a :class:`GroupSpec`, held as reduced coordinates."""

    coords: tuple[int, ...]
    group: GroupSpec

    def __post_init__(self):
        if len(self.coords) != len(self.group.orders):
            raise ValueError("coordinate count does not match group")
        if any(not 0 <= c < n for c, n in zip(self.coords, self.group.orders)):
            raise ValueError(f"coordinates {self.coords} not reduced for {self.group}")

    @property
    def index(self) -> int:
        return self.group.index_of(self)

    def __add__(self, other: "GroupElement") -> "GroupElement":
        return self.group.add(self, other)

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return self.group.sub(self, other)

    def __neg__(self) -> "GroupElement":
        return self.group.neg(self)

    def to_json(self) -> list[int]:
        return list(self.coords)

    def __repr__(self) -> str:
        if len(self.coords) == 1:
            return str(self.coords[0])
        return str(self.coords)


def make_group(orders: Sequence[int]) -> GroupSpec:
    """Build a group from its list of cyclic orders."""
    if not isinstance(orders, (list, tuple)) or len(orders) == 0:
        raise ValueError("orders must be a nonempty list of integers >= 2")
    return GroupSpec(tuple(int(n) for n in orders))


class Subgroup:
    """A subgroup held as an explicit, index-sorted element list."""

    def __init__(self, group: GroupSpec, generators: Iterable[GroupElement],
                 elements: Iterable[GroupElement]):
        self.group = group
        self.generators = tuple(generators)
        self.elements = tuple(sorted(elements, key=group.index_of))
        self._index_set = frozenset(group.index_of(e) for e in self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def contains(self, g: GroupElement) -> bool:
        return self.group.index_of(g) in self._index_set

    def contains_index(self, i: int) -> bool:
        return i in self._index_set

    @property
    def index_set(self) -> frozenset[int]:
        return self._index_set

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.group.orders == other.group.orders and self._index_set == other._index_set

    def __hash__(self) -> int:
        return hash((self.group.orders, self._index_set))

    def __repr__(self) -> str:
        return f"Subgroup({self.group!r}, order={self.order})"

    def to_json(self) -> dict:
        return {
            "orders": self.group.to_json(),
            "generators": [g.to_json() for g in self.generators],
            "elements": [e.to_json() for e in self.elements],
        }


@dataclass(frozen=True)
class Coset:
    """A coset ``representative + subgroup``."""

    representative: GroupElement
    subgroup: Subgroup

    def elements(self) -> list[GroupElement]:
        return [self.representative + s for s in self.subgroup.elements]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Coset):
            return NotImplemented
        if self.subgroup != other.subgroup:
            return False
        return self.subgroup.contains(self.representative - other.representative)

    def __hash__(self) -> int:
        # canonical: min index over the coset
        return hash((self.subgroup, min(e.index for e in self.elements())))


def subgroup_closure(group: GroupSpec, generators: Sequence[GroupElement]) -> Subgroup:
    """Smallest subgroup of ``group`` containing all ``generators``."""
    for g in generators:
        group._check(g)
    zero = group.zero()
    seen = {group.index_of(zero): zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for e in frontier:
            for g in generators:
                t = e + g
                ti = group.index_of(t)
                if ti not in seen:
                    seen[ti] = t
                    nxt.append(t)
        frontier = nxt
    return Subgroup(group, generators, seen.values())


def trivial_subgroup(group: GroupSpec) -> Subgroup:
    return subgroup_closure(group, [])


def full_subgroup(group: GroupSpec) -> Subgroup:
    gens = []
    k = len(group.orders)
    for j in range(k):
        coords = [0] * k
        coords[j] = 1
        gens.append(group.element(coords))
    return subgroup_closure(group, gens)


def enumerate_subgroups(group: GroupSpec) -> list[Subgroup]:
    """All distinct subgroups, by growing known subgroups one generator at a time.

    Every subgroup is reachable by repeatedly adjoining a single new generator
    to a smaller subgroup, so the fixpoint sweep is exhaustive regardless of
    how many generators a subgroup ultimately needs.
    """
    if group.order > SUBGROUP_ENUM_GUARD:
        raise SizeGuardError(
            f"subgroup enumeration guarded at |G| <= {SUBGROUP_ENUM_GUARD}, got {group.order}"
        )
    all_elements = list(group.elements())
    base = trivial_subgroup(group)
    found = {base: base}
    queue = [base]
    while queue:
        sub = queue.pop()
        for g in all_elements:
            if sub.contains(g):
                continue
            bigger = subgroup_closure(group, list(sub.generators) + [g])
            if bigger not in found:
                found[bigger] = bigger
                queue.append(bigger)
    return sorted(found.values(), key=lambda s: (s.order, [e.index for e in s.elements]))


def cosets_of(sub: Subgroup) -> list[Coset]:
    """Partition of the group into cosets, with minimum-index representatives."""
    group = sub.group
    seen = [False] * group.order
    out = []
    for i in range(group.order):
        if seen[i]:
            continue
        rep = group.element_at(i)
        for s in sub.elements:
            seen[(rep + s).index] = True
        out.append(Coset(rep, sub))
    return out


def coset_index_map(sub: Subgroup) -> tuple[list[Coset], np.ndarray]:
    """Cosets plus an array mapping each element index to its coset's position."""
    cs = cosets_of(sub)
    owner = np.empty(sub.group.order, dtype=np.int64)
    for ci, c in enumerate(cs):
        for e in c.elements():
            owner[e.index] = ci
    return cs, owner


def group_to_json(group: GroupSpec) -> str:
    return json.dumps(group.to_json())
