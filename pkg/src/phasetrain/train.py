"""Single-particle protocol: a train of K equal amplitudes rides through
the field, each site k picks up a phase proportional to k times the field
integral, and a measurement in the matched orthogonal basis returns one of
the K grid values alpha*m.

The measurement statistics are computed two independent ways: from inner
products with the outcome basis (``outcome_distribution``) and from the
interference closed form (``closed_form_error_prob``); tests hold the two
routes together to 1e-10.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import backend
from .core import ProtocolParams, wrap_delta

_NORM_TOL = 1e-12
_PROB_SUM_TOL = 1e-10
# Cap on K for materializing the full K x K basis matrix (256 MiB).
_MAX_BASIS_MATRIX_QUBITS = 12


@dataclass(frozen=True)
class StateVector:
    """K complex site amplitudes with unit norm (checked to 1e-12)."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.ascontiguousarray(self.amplitudes, dtype=np.complex128)
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)
        if amps.ndim != 1 or amps.size < 1:
            raise ValueError("amplitudes must be a nonempty 1-d array")
        norm_sq = float(np.sum(amps.real**2 + amps.imag**2))
        if abs(norm_sq - 1.0) > _NORM_TOL:
            raise ValueError(f"state norm^2 = {norm_sq!r} is not 1 within {_NORM_TOL}")

    def __len__(self) -> int:
        return self.amplitudes.shape[0]


@dataclass(frozen=True)
class OutcomeSample:
    """One measurement draw: outcome label m, estimate alpha*m, wrapped error."""

    m: int
    estimate: float
    delta_i: float


@dataclass(frozen=True)
class ErrorDistribution:
    """Probability over the K discrete outcomes with their wrapped errors.

    ``outcomes[i]`` is the label m, ``deltas[i]`` the error alpha*m - I
    wrapped into (-alpha*K/2, alpha*K/2], ``probs[i]`` its probability.
    """

    params: ProtocolParams
    true_integral: float
    outcomes: np.ndarray
    deltas: np.ndarray
    probs: np.ndarray

    def __post_init__(self):
        k_sites = self.params.k_sites
        outcomes = np.ascontiguousarray(self.outcomes, dtype=np.int64)
        deltas = np.ascontiguousarray(self.deltas, dtype=np.float64)
        probs = np.ascontiguousarray(self.probs, dtype=np.float64)
        for arr in (outcomes, deltas, probs):
            arr.setflags(write=False)
            if arr.shape != (k_sites,):
                raise ValueError("entries must cover all K outcomes")
        object.__setattr__(self, "outcomes", outcomes)
        object.__setattr__(self, "deltas", deltas)
        object.__setattr__(self, "probs", probs)
        total = float(probs.sum())
        if abs(total - 1.0) > _PROB_SUM_TOL:
            raise ValueError(f"probabilities sum to {total!r}, not 1 within 1e-10")
        if probs.min() < -1e-12 or probs.max() > 1 + 1e-12:
            raise ValueError("probabilities must lie in [0, 1]")
        half = self.params.range / 2
        slack = 1e-9 * self.params.range
        if deltas.min() <= -half - slack or deltas.max() > half + slack:
            raise ValueError("wrapped errors must lie in (-alpha*K/2, alpha*K/2]")

    @property
    def estimates(self) -> np.ndarray:
        """Grid values alpha*m for each outcome."""
        return self.params.alpha * self.outcomes


@lru_cache(maxsize=8)
def _twiddles(k_sites: int) -> np.ndarray:
    """exp(-2i pi j / K) for j = 0..K-1, cached per K."""
    tw = np.exp(-2j * np.pi * np.arange(k_sites) / k_sites)
    tw.setflags(write=False)
    return tw


def prepare_uniform_state(params: ProtocolParams) -> StateVector:
    """Equal amplitudes 1/sqrt(K) on every site, no relative phases."""
    k_sites = params.k_sites
    amps = np.full(k_sites, 1.0 / np.sqrt(k_sites), dtype=np.complex128)
    return StateVector(amps)


def imprint_phase(state: StateVector, integral: float,
                  params: ProtocolParams) -> StateVector:
    """Multiply site k by exp(-2i pi k I / (K alpha)) for k = 1..K.

    The phase argument k*I/(K alpha) is reduced to the nearest integer
    before multiplying by 2 pi, keeping accuracy for large I.
    """
    k_sites = params.k_sites
    if len(state) != k_sites:
        raise ValueError("state length does not match params")
    v = float(integral) / params.range
    t = np.arange(1, k_sites + 1, dtype=np.float64) * v
    r = t - np.rint(t)
    return StateVector(state.amplitudes * np.exp(-2j * np.pi * r))


def outcome_basis_state(m: int, params: ProtocolParams) -> StateVector:
    """Final state the protocol produces for an integral exactly alpha*m.

    The K states for m = 0..K-1 form an orthonormal basis; measuring in
    it reads the outcome label.  Site phases come from a twiddle table
    indexed with (k*m) mod K, which is exact integer arithmetic.
    """
    k_sites = params.k_sites
    if not 0 <= m < k_sites:
        raise ValueError(f"outcome index must be in 0..{k_sites - 1}, got {m}")
    idx = (np.arange(1, k_sites + 1, dtype=np.int64) * int(m)) % k_sites
    amps = _twiddles(k_sites)[idx] / np.sqrt(k_sites)
    return StateVector(amps)


def outcome_basis_matrix(params: ProtocolParams) -> np.ndarray:
    """All K basis states stacked as rows (K x K, complex).

    Convenience for orthonormality checks and benchmarks; limited to
    N <= 12 to keep the matrix at or below 256 MiB.
    """
    if params.n_qubits > _MAX_BASIS_MATRIX_QUBITS:
        raise ValueError(
            f"basis matrix limited to n_qubits <= {_MAX_BASIS_MATRIX_QUBITS}"
        )
    k_sites = params.k_sites
    m = np.arange(k_sites, dtype=np.int64)
    k = np.arange(1, k_sites + 1, dtype=np.int64)
    idx = (m[:, None] * k[None, :]) % k_sites
    return _twiddles(k_sites)[idx] / np.sqrt(k_sites)


def measurement_distribution(state: StateVector, integral: float,
                             params: ProtocolParams) -> ErrorDistribution:
    """Born distribution of ``state`` in the outcome basis.

    prob(m) is the squared inner product with ``outcome_basis_state(m)``,
    accumulated by direct O(K) summation per outcome (O(K^2) total).
    Errors are wrapped against ``integral``.
    """
    k_sites = params.k_sites
    if len(state) != k_sites:
        raise ValueError("state length does not match params")
    probs = backend.measurement_probs(state.amplitudes)
    outcomes = np.arange(k_sites, dtype=np.int64)
    deltas = wrap_delta(params.alpha * outcomes - float(integral), params.range)
    return ErrorDistribution(params=params, true_integral=float(integral),
                             outcomes=outcomes, deltas=deltas, probs=probs)


def outcome_distribution(integral: float,
                         params: ProtocolParams) -> ErrorDistribution:
    """Measurement statistics of the protocol run on integral value I."""
    state = imprint_phase(prepare_uniform_state(params), integral, params)
    return measurement_distribution(state, integral, params)


def closed_form_error_prob(delta_i, params: ProtocolParams):
    """Probability of a wrapped error delta_i, in closed form.

    Evaluates sin^2(pi d/alpha) / (K^2 sin^2(pi d/(K alpha))) with the
    removable 0/0 at multiples of alpha*K replaced by its limit 1
    (triggered when d/(alpha*K) is within 1e-9 of an integer).  Accepts
    scalars or arrays.
    """
    x = np.asarray(delta_i, dtype=np.float64) / params.alpha
    out = backend.closed_form_probs(x, params.n_qubits)
    if np.ndim(delta_i) == 0:
        return float(out)
    return out


def sample_outcomes(dist: ErrorDistribution, size: int,
                    rng: np.random.Generator) -> np.ndarray:
    """Draw ``size`` outcome labels m from the distribution.

    Inverse-CDF sampling on the cumulative probabilities; deterministic
    for a given generator state.
    """
    if size < 0:
        raise ValueError("size must be nonnegative")
    cum = np.cumsum(dist.probs)
    u = rng.random(size)
    idx = np.searchsorted(cum, u, side="right")
    return np.minimum(idx, dist.params.k_sites - 1).astype(np.int64)


def sample_outcome(dist: ErrorDistribution,
                   rng: np.random.Generator) -> OutcomeSample:
    """Draw one measurement outcome from the distribution."""
    m = int(sample_outcomes(dist, 1, rng)[0])
    params = dist.params
    estimate = params.alpha * m
    return OutcomeSample(
        m=m,
        estimate=estimate,
        delta_i=wrap_delta(estimate - dist.true_integral, params.range),
    )
