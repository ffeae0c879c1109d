# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for the per-outcome hot loops.

Mirrors the contracts of ``phasetrain._kernels_py``; see that module for
the argument-reduction rationale.  Kept free of the NumPy C API on
purpose (typed memoryviews only) so the build needs no extra includes.
"""

from libc.math cimport M_PI, cos, fabs, rint, sin

import numpy as np

cdef double SINGULARITY_RADIUS = 1e-9


def closed_form_probs(x, int n_qubits):
    """Interference form sin^2(pi x)/(K^2 sin^2(pi x/K)), limit 1 at 0/0."""
    cdef const double[::1] xv = np.ascontiguousarray(x, dtype=np.float64).ravel()
    cdef Py_ssize_t n = xv.shape[0]
    out_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef double k_sites = <double>(1 << n_qubits)
    cdef Py_ssize_t i
    cdef double xi, v, dv, rn, s, sd, den
    for i in range(n):
        xi = xv[i]
        v = xi / k_sites
        dv = v - rint(v)
        if fabs(dv) < SINGULARITY_RADIUS:
            out[i] = 1.0
        else:
            rn = xi - rint(xi)
            s = sin(M_PI * rn)
            sd = k_sites * sin(M_PI * dv)
            den = sd * sd
            out[i] = (s * s) / den
    return out_arr.reshape(np.shape(x))


def product_form_probs(x, int n_qubits):
    """Per-qubit product prod_{n=1..N} cos^2(pi x / 2^n)."""
    cdef const double[::1] xv = np.ascontiguousarray(x, dtype=np.float64).ravel()
    cdef Py_ssize_t n = xv.shape[0]
    out_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i
    cdef int nq
    cdef double y, r, c, p
    for i in range(n):
        p = 1.0
        y = xv[i]
        for nq in range(n_qubits):
            y *= 0.5
            r = y - rint(y)
            c = cos(M_PI * r)
            p *= c * c
        out[i] = p
    return out_arr.reshape(np.shape(x))


def measurement_probs(amplitudes):
    """Born probabilities in the K-outcome basis by direct summation."""
    cdef const double complex[::1] amps = np.ascontiguousarray(
        amplitudes, dtype=np.complex128
    )
    cdef Py_ssize_t k_sites = amps.shape[0]
    tw_arr = np.empty(k_sites, dtype=np.complex128)
    cdef double complex[::1] tw = tw_arr
    out_arr = np.empty(k_sites, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t m, k, idx
    cdef double ang, re, im, tr, ti, ar, ai
    cdef double inv_k = 1.0 / <double>k_sites
    for idx in range(k_sites):
        ang = 2.0 * M_PI * <double>idx / <double>k_sites
        tw[idx] = cos(ang) + 1j * sin(ang)
    # conj(basis_m[k]) carries phase +2 pi k m / K; the index (k*m) % K
    # is tracked incrementally in exact integer arithmetic.
    for m in range(k_sites):
        re = 0.0
        im = 0.0
        idx = 0
        for k in range(k_sites):
            idx += m
            if idx >= k_sites:
                idx -= k_sites
            tr = tw[idx].real
            ti = tw[idx].imag
            ar = amps[k].real
            ai = amps[k].imag
            re += tr * ar - ti * ai
            im += tr * ai + ti * ar
        out[m] = (re * re + im * im) * inv_k
    return out_arr
