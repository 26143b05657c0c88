"""Characters of finite Abelian groups, annihilators, and exact character sums.

The dual group is identified with the group itself through the fixed pairing
``<g, h> = sum_j (L/n_j) g_j h_j mod L`` (L = lcm of the cyclic orders), so a
character is carried around as its label element.  Character values are L-th
roots of unity; sums of them are kept exact as integer coefficient vectors
(:class:`CycloSum`) and zero-tested by cyclotomic-polynomial divisibility,
never by a floating-point tolerance.
"""

from __future__ import annotations

import csv
import enum
import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

import numpy as np

from .groups import (
    GroupElement,
    GroupSpec,
    SizeGuardError,
    Subgroup,
)
from .kernels import phase_matvec, roots_of_unity

# Character values are written as exponents t of zeta_L^t; plain ints mod L.
RootExponent = int

ANNIHILATOR_GUARD = 2**20


@dataclass(frozen=True)
class Character:
    """The character chi_g identified with the group element g."""

    label: GroupElement

    @property
    def group(self) -> GroupSpec:
        return self.label.group

    def exponent(self, h: GroupElement) -> RootExponent:
        return char_exponent(self.label, h)

    def __call__(self, h: GroupElement) -> complex:
        return char_eval(self.label, h)

    def conjugate(self) -> "Character":
        return Character(-self.label)

    def __mul__(self, other: "Character") -> "Character":
        return Character(self.label + other.label)

    @property
    def is_trivial(self) -> bool:
        return all(c == 0 for c in self.label.coords)

    def __repr__(self) -> str:
        return f"chi_{self.label!r}"


def char_exponent(g: GroupElement, h: GroupElement) -> RootExponent:
    """Exponent t with chi_g(h) = zeta_L^t."""
    return g.group.pairing_exponent(g, h)


def char_eval(g: GroupElement, h: GroupElement) -> complex:
    L = g.group.lcm_exponent
    return complex(roots_of_unity(L)[char_exponent(g, h)])


def conjugate_char(g: GroupElement) -> GroupElement:
    """Label of the inverse character: chi-bar_g = chi_{-g}."""
    return -g


def all_characters(group: GroupSpec) -> list[Character]:
    return [Character(g) for g in group.elements()]


# -- exact sums of roots of unity ---------------------------------------------


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _poly_trim(p: list[int]) -> list[int]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_div_monic(num: Sequence[int], den: Sequence[int]) -> tuple[list[int], list[int]]:
    """Quotient and remainder of integer polynomials; den must be monic."""
    num = list(num)
    dn = len(den) - 1
    if den[-1] != 1:
        raise ValueError("divisor must be monic")
    q = [0] * max(len(num) - dn, 0)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if c == 0:
            continue
        q[i - dn] = c
        for j, d in enumerate(den):
            num[i - dn + j] -= c * d
    return q, _poly_trim(num)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n(x), constant term first."""
    if n == 1:
        return (-1, 1)
    poly = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in _divisors(n):
        if d == n:
            continue
        poly, rem = _poly_div_monic(poly, cyclotomic_polynomial(d))
        if rem:
            raise AssertionError(f"x^{n}-1 not divisible by Phi_{d}")
    return tuple(poly)


class CycloSum:
    """An exact integer combination sum_t counts[t] * zeta_L^t."""

    __slots__ = ("order", "counts")

    def __init__(self, order: int, counts: Sequence[int]):
        if len(counts) != order:
            raise ValueError("counts must have length equal to the root order")
        self.order = order
        self.counts = tuple(int(c) for c in counts)

    @classmethod
    def from_exponents(cls, order: int, exponents: Iterable[int],
                       weights: Iterable[int] | None = None) -> "CycloSum":
        counts = [0] * order
        if weights is None:
            for e in exponents:
                counts[e % order] += 1
        else:
            for e, w in zip(exponents, weights):
                counts[e % order] += w
        return cls(order, counts)

    def is_zero(self) -> bool:
        """Exact zero test: the counts polynomial is divisible by Phi_L."""
        poly = _poly_trim(list(self.counts))
        if not poly:
            return True
        _, rem = _poly_div_monic(poly, cyclotomic_polynomial(self.order))
        return not rem

    def approx(self) -> complex:
        """Floating-point value, for cross-checks only."""
        return complex(np.dot(self.counts, roots_of_unity(self.order)))

    def __repr__(self) -> str:
        return f"CycloSum(order={self.order}, counts={self.counts})"


def is_zero_sum(s: CycloSum) -> bool:
    return s.is_zero()


def char_sum_over(sub: Subgroup, g: GroupElement) -> CycloSum:
    """Exact sum of chi_g over the subgroup; |S| or 0 by the character dichotomy."""
    L = g.group.lcm_exponent
    return CycloSum.from_exponents(L, (char_exponent(g, s) for s in sub.elements))


# -- annihilators --------------------------------------------------------------


def annihilator(sub: Subgroup) -> Subgroup:
    """Labels z with chi_z trivial on the subgroup; a subgroup of size |G|/|S|."""
    group = sub.group
    if group.order > ANNIHILATOR_GUARD:
        raise SizeGuardError(
            f"annihilator guarded at |G| <= {ANNIHILATOR_GUARD}, got {group.order}"
        )
    probes = sub.generators if sub.generators else sub.elements
    coords = group.coords_matrix
    w = np.asarray(group.pairing_weights, dtype=np.int64)
    L = group.lcm_exponent
    keep = np.ones(group.order, dtype=bool)
    for s in probes:
        sv = np.asarray(s.coords, dtype=np.int64)
        keep &= ((coords * w) @ sv) % L == 0
    members = [group.element_at(int(i)) for i in np.nonzero(keep)[0]]
    return Subgroup(group, members, members)


# -- Fourier transforms ---------------------------------------------------------


def fourier_transform(group: GroupSpec, values: Sequence[complex], *,
                      dual: bool = False) -> np.ndarray:
    """Character-basis transform of a function given as a vector over element indices.

    Forward (``dual=False``): out[z] = sum_g values[g] * conj(chi_z(g)).
    Dual direction (``dual=True``): out[g] = sum_z values[z] * chi_z(g), the
    inverse-direction kernel, so transforming forward and then dual multiplies
    by |G| (Fourier inversion) for any function.
    """
    v = np.asarray(values, dtype=np.complex128)
    if v.shape != (group.order,):
        raise ValueError(f"values must have length |G|={group.order}")
    L = group.lcm_exponent
    roots = roots_of_unity(L)
    kernel_roots = roots if dual else np.conj(roots)
    return phase_matvec(group.exponent_table, kernel_roots, v, 1.0)


def indicator(group: GroupSpec, members: Iterable[GroupElement]) -> np.ndarray:
    out = np.zeros(group.order, dtype=np.complex128)
    for m in members:
        out[m.index] = 1.0
    return out


def transform_to_csv(path, values: Sequence[complex]) -> None:
    """Dump a transform as rows (label index, real, imag)."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["index", "real", "imag"])
        for i, v in enumerate(values):
            w.writerow([i, repr(float(np.real(v))), repr(float(np.imag(v)))])


# -- multisets and balance classification ---------------------------------------


class MultisetClass(enum.Enum):
    CONSTANT = "constant"
    BALANCED = "balanced"
    NEITHER = "neither"


class Multiset:
    """A multiplicity function on a group; supports exact balance classification."""

    def __init__(self, group: GroupSpec, mult: Mapping[GroupElement, int]):
        self.group = group
        self.mult = {e: int(m) for e, m in mult.items() if int(m) != 0}
        if any(m < 0 for m in self.mult.values()):
            raise ValueError("multiplicities must be nonnegative")

    @classmethod
    def from_indices(cls, group: GroupSpec, counts: Sequence[int]) -> "Multiset":
        return cls(group, {group.element_at(i): c for i, c in enumerate(counts) if c})

    @property
    def total(self) -> int:
        return sum(self.mult.values())

    @property
    def support(self) -> list[GroupElement]:
        return sorted(self.mult, key=self.group.index_of)

    def weighted_sum(self, chi: Character) -> CycloSum:
        L = self.group.lcm_exponent
        items = self.mult.items()
        return CycloSum.from_exponents(
            L, (chi.exponent(e) for e, _ in items), (m for _, m in items)
        )

    def to_json(self) -> dict:
        return {
            "orders": self.group.to_json(),
            "entries": [[e.to_json(), m] for e, m in sorted(
                self.mult.items(), key=lambda em: em[0].index)],
        }

    @classmethod
    def from_json(cls, data) -> "Multiset":
        group = GroupSpec.from_json(data["orders"])
        return cls(group, {group.element(c): m for c, m in data["entries"]})


def classify_multiset(ms: Multiset, chi: Character) -> MultisetClass:
    """Constant iff chi takes one value on the support; balanced iff the weighted sum is 0."""
    support = ms.support
    if not support:
        raise ValueError("multiset has empty support")
    exps = {chi.exponent(e) for e in support}
    if len(exps) == 1:
        return MultisetClass.CONSTANT
    if ms.weighted_sum(chi).is_zero():
        return MultisetClass.BALANCED
    return MultisetClass.NEITHER


def is_fully_balanced(ms: Multiset) -> bool:
    """True iff every character classifies the multiset as constant or balanced."""
    return all(
        classify_multiset(ms, chi) is not MultisetClass.NEITHER
        for chi in all_characters(ms.group)
    )


def multiset_to_json(ms: Multiset) -> str:
    return json.dumps(ms.to_json(), sort_keys=True)
