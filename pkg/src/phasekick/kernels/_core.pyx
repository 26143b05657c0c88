# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel core; mirrors phasekick.kernels._pure exactly."""

import numpy as np


def exponent_table(const long long[:, ::1] coords_a, const long long[:, ::1] coords_b,
                   const long long[::1] weights, long long modulus):
    cdef Py_ssize_t na = coords_a.shape[0]
    cdef Py_ssize_t nb = coords_b.shape[0]
    cdef Py_ssize_t k = coords_a.shape[1]
    cdef Py_ssize_t i, j, c
    cdef long long acc
    out_arr = np.empty((na, nb), dtype=np.int64)
    cdef long long[:, ::1] out = out_arr
    for i in range(na):
        for j in range(nb):
            acc = 0
            for c in range(k):
                acc += weights[c] * coords_a[i, c] * coords_b[j, c]
            out[i, j] = acc % modulus
    return out_arr


def phase_apply(const long long[:, ::1] exponents, const double complex[::1] roots,
                const double complex[:, ::1] mat, double scale):
    # Gather the phase matrix with a C loop (faster than fancy indexing), then
    # let BLAS do the contraction; a hand-rolled multiply loses to zgemm badly
    # once |G| grows.
    cdef Py_ssize_t na = exponents.shape[0]
    cdef Py_ssize_t nb = exponents.shape[1]
    cdef Py_ssize_t m = mat.shape[1]
    cdef Py_ssize_t i, j
    cdef double complex acc
    cdef double complex[:, ::1] phases
    cdef double complex[:, ::1] out
    phases_arr = np.empty((na, nb), dtype=np.complex128)
    phases = phases_arr
    for i in range(na):
        for j in range(nb):
            phases[i, j] = roots[exponents[i, j]]
    if m == 1:
        # small matvec: the direct loop beats a BLAS dispatch at desk scale
        out_arr = np.empty((na, 1), dtype=np.complex128)
        out = out_arr
        for i in range(na):
            acc = 0
            for j in range(nb):
                acc = acc + phases[i, j] * mat[j, 0]
            out[i, 0] = acc * scale
        return out_arr
    result = phases_arr @ np.asarray(mat)
    if scale != 1.0:
        result *= scale
    return result


def oracle_shift(const double complex[:, ::1] amps, const long long[::1] f_idx,
                 const long long[:, ::1] add_table):
    cdef Py_ssize_t ng = amps.shape[0]
    cdef Py_ssize_t nh = amps.shape[1]
    cdef Py_ssize_t g, h
    cdef long long fg
    out_arr = np.empty((ng, nh), dtype=np.complex128)
    cdef double complex[:, ::1] out = out_arr
    for g in range(ng):
        fg = f_idx[g]
        for h in range(nh):
            out[g, add_table[fg, h]] = amps[g, h]
    return out_arr
