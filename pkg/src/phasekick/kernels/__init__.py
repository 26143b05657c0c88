"""Hot numeric kernels with a compiled core and a pure-numpy fallback.

The compiled Cython extension is used when present; set ``PHASEKICK_BACKEND``
to ``pure`` or ``compiled`` to force a choice.  Both backends implement the
same three primitives:

- ``exponent_table(ca, cb, weights, modulus)``: pairing exponents mod L
- ``phase_apply(E, roots, mat, scale)``: out[i, m] = scale * sum_j roots[E[i, j]] mat[j, m]
- ``oracle_shift(amps, f_idx, add_table)``: second-register shift (g, h) -> (g, h + f(g))
"""

from __future__ import annotations

import os
from functools import lru_cache

import numpy as np

from . import _pure

_requested = os.environ.get("PHASEKICK_BACKEND", "").lower()

_compiled = None
if _requested != "pure":
    try:
        from . import _core as _compiled  # type: ignore[attr-defined]
    except ImportError:
        _compiled = None
        if _requested == "compiled":
            raise ImportError(
                "PHASEKICK_BACKEND=compiled but the phasekick.kernels._core "
                "extension is not built"
            )

_impl = _compiled if _compiled is not None else _pure
BACKEND = "compiled" if _compiled is not None else "pure"


def available_backends() -> dict[str, object]:
    out = {"pure": _pure}
    if _compiled is not None:
        out["compiled"] = _compiled
    return out


@lru_cache(maxsize=64)
def roots_of_unity(order: int) -> np.ndarray:
    """exp(2*pi*i*t/order) for t in [0, order); read-only."""
    r = np.exp(2j * np.pi * np.arange(order) / order)
    r.flags.writeable = False
    return r


def exponent_table(coords_a: np.ndarray, coords_b: np.ndarray,
                   weights: np.ndarray, modulus: int) -> np.ndarray:
    ca = np.ascontiguousarray(coords_a, dtype=np.int64)
    cb = np.ascontiguousarray(coords_b, dtype=np.int64)
    w = np.ascontiguousarray(weights, dtype=np.int64)
    return _impl.exponent_table(ca, cb, w, modulus)


def phase_apply(exponents: np.ndarray, roots: np.ndarray,
                mat: np.ndarray, scale: float = 1.0) -> np.ndarray:
    E = np.ascontiguousarray(exponents, dtype=np.int64)
    r = np.ascontiguousarray(roots, dtype=np.complex128)
    m = np.ascontiguousarray(mat, dtype=np.complex128)
    return _impl.phase_apply(E, r, m, float(scale))


def phase_matvec(exponents: np.ndarray, roots: np.ndarray,
                 vec: np.ndarray, scale: float = 1.0) -> np.ndarray:
    v = np.ascontiguousarray(vec, dtype=np.complex128).reshape(-1, 1)
    return phase_apply(exponents, roots, v, scale)[:, 0]


def oracle_shift(amps: np.ndarray, f_idx: np.ndarray, add_table: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(amps, dtype=np.complex128)
    f = np.ascontiguousarray(f_idx, dtype=np.int64)
    t = np.ascontiguousarray(add_table, dtype=np.int64)
    return _impl.oracle_shift(a, f, t)
