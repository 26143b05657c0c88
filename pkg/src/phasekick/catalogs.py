"""Desk-scale instance corpora shared by the verification suites and the CLI."""

from __future__ import annotations

import numpy as np

from .fbi import FbiInstance, make_fbi_instance
from .groups import GroupSpec, Subgroup, enumerate_subgroups, make_group, subgroup_closure
from .hsp import HspInstance, make_hsp_instance
from .simulate import Oracle

# The Z/12 -> Z/12 fully balanced table used throughout as the worked example:
# image {0,3,6,9}, every fiber of size 3.
Z12_FBI_TABLE = (0, 3, 3, 9, 9, 3, 0, 6, 0, 6, 6, 9)


def z12_fbi_oracle() -> Oracle:
    group = make_group([12])
    return Oracle(group, group, [group.element([v]).index for v in Z12_FBI_TABLE])


def cyclic_subgroup(group: GroupSpec, *gens) -> Subgroup:
    return subgroup_closure(group, [group.element(list(c) if isinstance(c, (tuple, list)) else [c])
                                    for c in gens])


def catalog_groups(max_order: int = 64) -> list[GroupSpec]:
    """Small groups exercised by the exhaustive invariants."""
    specs = [
        [2], [3], [4], [5], [6], [8], [9], [12], [16],
        [2, 2], [2, 4], [3, 3], [2, 2, 2], [4, 3], [6, 2], [2, 2, 3],
    ]
    out = [make_group(s) for s in specs]
    return [g for g in out if g.order <= max_order]


def hsp_group_subgroup_pairs(max_order: int = 24) -> list[tuple[GroupSpec, Subgroup]]:
    """Every (G, S) with G in the catalog and S a subgroup, up to the order cap."""
    pairs = []
    for g in catalog_groups(max_order):
        for s in enumerate_subgroups(g):
            pairs.append((g, s))
    return pairs


def hsp_catalog(seed: int = 20240901) -> list[HspInstance]:
    """A representative set of instances for sampled (as opposed to exact) checks."""
    rng = np.random.default_rng(seed)
    entries = []

    def inst(orders, gens, orders_out=None):
        g = make_group(orders)
        s = subgroup_closure(g, [g.element(c) for c in gens])
        h = make_group(orders_out) if orders_out else g
        entries.append(make_hsp_instance(g, h, s, rng))

    inst([12], [[3]])
    inst([12], [[6]])
    inst([6], [[3]])
    inst([8], [[2]])
    inst([2, 2], [[1, 0]])
    inst([2, 2, 2], [[1, 1, 0]])
    inst([4, 3], [[2, 0]])
    inst([6], [[0]], orders_out=[6])      # trivial hidden subgroup, injective f
    inst([6], [[1]])                      # S = G, constant f
    return entries


def fbi_catalog(seed: int = 20240902) -> list[FbiInstance]:
    """FBI instances for correctness and budget sweeps."""
    rng = np.random.default_rng(seed)
    entries = []

    def inst(orders_g, orders_h, k_gens, t_coords):
        g, h = make_group(orders_g), make_group(orders_h)
        k = subgroup_closure(h, [h.element(c) for c in k_gens])
        entries.append(make_fbi_instance(g, h, k, h.element(t_coords), rng))

    inst([12], [12], [[3]], [0])      # worked-example profile, image {0,3,6,9}
    inst([12], [12], [[3]], [5])      # same subgroup, shifted image
    inst([12], [12], [[6]], [1])      # image of order 2
    inst([12], [12], [[4]], [2])      # image of order 3
    inst([12], [12], [[1]], [0])      # injective profile
    inst([8], [8], [[2]], [1])
    inst([16], [16], [[4]], [3])
    inst([9], [9], [[3]], [2])
    inst([6], [6], [[2]], [0])
    inst([2, 2], [2, 2], [[1, 0], [0, 1]], [0, 0])   # full image
    inst([6, 2], [12], [[4]], [2])    # cross-group instance
    return entries


def tight_fbi_instance(seed: int = 11) -> FbiInstance:
    """(Z/2)^2 with image coset of <(1,1)>: correct but not always within the call bound.

    One third of candidate orders force three calls against a bound of two
    (two balanced probes land in the same orbit before any constant is known),
    so this instance is exercised for correctness only, not in budget sweeps.
    """
    rng = np.random.default_rng(seed)
    g = make_group([2, 2])
    k = subgroup_closure(g, [g.element([1, 1])])
    return make_fbi_instance(g, g, k, g.element([1, 0]), rng)


def constant_fbi_instance(seed: int = 7) -> FbiInstance:
    rng = np.random.default_rng(seed)
    g = make_group([12])
    k = subgroup_closure(g, [])
    return make_fbi_instance(g, g, k, g.element([7]), rng)


def gpk_triple_catalog(seed: int = 20240903) -> list[Oracle]:
    """At least 12 (G, H, f) triples with |G|, |H| <= 24 for the GPK identity sweep."""
    rng = np.random.default_rng(seed)
    oracles = [z12_fbi_oracle()]

    z6 = make_group([6])
    oracles.append(Oracle(z6, z6, list(range(6))))                      # identity
    oracles.append(Oracle(z6, z6, [3] * 6))                             # constant
    z12 = make_group([12])
    oracles.append(Oracle(z12, z12, [(2 * g) % 12 for g in range(12)]))  # homomorphism
    z9 = make_group([9])
    oracles.append(Oracle(z9, z9, [(3 * g) % 9 for g in range(9)]))      # homomorphism

    k22 = make_group([2, 2])
    swap = [k22.element([b, a]).index for a, b in (e.coords for e in k22.elements())]
    oracles.append(Oracle(k22, k22, swap))                               # coordinate swap

    z43 = make_group([4, 3])
    iso = [z12.element([(3 * a + 4 * b) % 12]).index
           for a, b in (e.coords for e in z43.elements())]
    oracles.append(Oracle(z43, z12, iso))                                # isomorphism

    z62 = make_group([6, 2])
    proj = [z6.element([e.coords[0]]).index for e in z62.elements()]
    oracles.append(Oracle(z62, z6, proj))                                # projection

    for inst in hsp_catalog(seed)[:3]:
        oracles.append(inst.oracle)
    for inst in fbi_catalog(seed)[:3]:
        oracles.append(inst.oracle)

    z5 = make_group([5])
    oracles.append(Oracle(z5, z5, rng.integers(0, 5, size=5)))           # random table
    oracles.append(Oracle(z12, z6, rng.integers(0, 6, size=12)))         # random table
    z24 = make_group([24])
    oracles.append(Oracle(z24, z24, [(6 * (g // 6)) % 24 for g in range(24)]))
    return oracles


def eigen_catalog(seed: int = 20240904) -> list[Oracle]:
    """Smaller corpus for exhaustive (g, h) eigenvector sweeps."""
    rng = np.random.default_rng(seed)
    z6 = make_group([6])
    z12 = make_group([12])
    k22 = make_group([2, 2])
    return [
        z12_fbi_oracle(),
        Oracle(z6, z6, list(range(6))),
        Oracle(z6, z6, [2] * 6),
        Oracle(z12, z6, rng.integers(0, 6, size=12)),
        Oracle(k22, k22, [k22.element([b, a]).index
                          for a, b in (e.coords for e in k22.elements())]),
    ]


def biconditional_pairs() -> list[tuple[GroupSpec, GroupSpec]]:
    """The six (G, H) pairs whose full function spaces get the spectral/structural sweep."""
    return [
        (make_group([2]), make_group([2])),
        (make_group([3]), make_group([3])),
        (make_group([4]), make_group([4])),
        (make_group([2]), make_group([4])),
        (make_group([4]), make_group([2])),
        (make_group([2, 2]), make_group([2])),
    ]
