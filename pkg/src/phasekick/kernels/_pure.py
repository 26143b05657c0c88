"""Pure-numpy kernel fallback; mirrors phasekick.kernels._core exactly."""

from __future__ import annotations

import numpy as np


def exponent_table(coords_a, coords_b, weights, modulus):
    return ((coords_a * weights) @ coords_b.T) % modulus


def phase_apply(exponents, roots, mat, scale):
    return (roots[exponents] @ mat) * scale


def oracle_shift(amps, f_idx, add_table):
    n_g = amps.shape[0]
    out = np.empty_like(amps)
    out[np.arange(n_g)[:, None], add_table[f_idx]] = amps
    return out
