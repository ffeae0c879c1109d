"""NumPy implementations of the per-outcome kernels.

These are the fallback used when the compiled extension is unavailable
(see :mod:`phasetrain.backend`).  Both backends share the same argument
reduction strategy so their results agree to roundoff:

* trig arguments are reduced to the nearest integer *before* multiplying
  by pi, so ``sin(pi*x)`` stays accurate for ``|x|`` up to ``2**52``;
* phases of the outcome basis are taken from a length-K twiddle table
  indexed by ``(k*m) % K``, which is exact in integer arithmetic.
"""

from __future__ import annotations

import numpy as np

# Outcomes closer than this (relative to the full period) to an exact
# grid point take the analytic limit value 1 of the interference form.
SINGULARITY_RADIUS = 1e-9

# Row chunk for the O(K^2) probability matrix, bounds peak memory.
_CHUNK_ROWS = 64


def _sinpi_sq(x: np.ndarray) -> np.ndarray:
    """sin(pi*x)**2 with the argument reduced modulo 1 first."""
    r = x - np.rint(x)
    s = np.sin(np.pi * r)
    return s * s


def _cospi_sq(x: np.ndarray) -> np.ndarray:
    """cos(pi*x)**2 with the argument reduced modulo 1 first."""
    r = x - np.rint(x)
    c = np.cos(np.pi * r)
    return c * c


def closed_form_probs(x, n_qubits: int) -> np.ndarray:
    """Interference form of the error probability on a grid of errors.

    ``x`` holds errors in units of the grid spacing (delta_i / alpha).
    Evaluates sin^2(pi x) / (K^2 sin^2(pi x / K)) with K = 2**n_qubits,
    returning the limit value 1 where x/K is within SINGULARITY_RADIUS
    of an integer (the 0/0 point of the ratio).
    """
    x = np.asarray(x, dtype=np.float64)
    k_sites = 1 << n_qubits
    v = x / k_sites
    dv = v - np.rint(v)
    singular = np.abs(dv) < SINGULARITY_RADIUS
    num = _sinpi_sq(x)
    den = np.sin(np.pi * dv)
    den = (k_sites * den) ** 2
    out = np.divide(num, den, out=np.ones_like(num), where=~singular)
    return out


def product_form_probs(x, n_qubits: int) -> np.ndarray:
    """Per-qubit product form of the error probability.

    Evaluates prod_{n=1..N} cos^2(pi x / 2^n) for errors ``x`` in units
    of the grid spacing.
    """
    x = np.asarray(x, dtype=np.float64)
    out = np.ones_like(x)
    y = x
    for _ in range(n_qubits):
        y = y * 0.5
        out *= _cospi_sq(y)
    return out


def measurement_probs(amplitudes: np.ndarray) -> np.ndarray:
    """Born probabilities of a state in the K-outcome measurement basis.

    For each outcome m the inner product with the basis state whose site
    phases are -2*pi*k*m/K is accumulated by direct summation over the K
    sites (no FFT).  Cost is O(K^2) time and O(K) extra memory.
    """
    amps = np.ascontiguousarray(amplitudes, dtype=np.complex128)
    k_sites = amps.shape[0]
    # conj(basis_m[k]) = exp(+2i pi k m / K) / sqrt(K)
    tw = np.exp(2j * np.pi * np.arange(k_sites) / k_sites)
    k = np.arange(1, k_sites + 1, dtype=np.int64)
    out = np.empty(k_sites, dtype=np.float64)
    inv_k = 1.0 / k_sites
    for start in range(0, k_sites, _CHUNK_ROWS):
        m = np.arange(start, min(start + _CHUNK_ROWS, k_sites), dtype=np.int64)
        idx = (m[:, None] * k[None, :]) % k_sites
        z = tw[idx] @ amps
        out[start : start + m.shape[0]] = (z.real**2 + z.imag**2) * inv_k
    return out
