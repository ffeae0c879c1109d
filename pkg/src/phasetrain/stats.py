"""Wrapped-error moments, asymptotic uncertainty scales, and the
quantum-versus-classical comparison harness.

All moments are taken over errors wrapped into (-alpha*K/2, alpha*K/2];
the protocols only resolve the integral modulo alpha*K, so that is the
honest error variable.  Generic-integral scales are obtained by averaging
exact distributions over sub-grid offsets, away from the measure-zero
grid points where the error vanishes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from . import train
from .baselines import simulate_counter, counter_analytic_uncertainty
from .core import FieldProfile, ProtocolParams, integrate_field, wrap_delta


@dataclass(frozen=True)
class MomentReport:
    """Error moments of an outcome distribution.

    std_dev is the standard deviation of the wrapped error, mean_abs its
    mean absolute value, bias its mean.
    """

    std_dev: float
    mean_abs: float
    bias: float
    n_outcomes: int
    averaged_over_offsets: bool = False

    def __post_init__(self):
        if self.std_dev < 0 or self.mean_abs < 0:
            raise ValueError("moments must be nonnegative")
        # Jensen: E|d|^2 <= E[d^2] = std^2 + bias^2
        second = self.std_dev**2 + self.bias**2
        if self.mean_abs**2 > second + 1e-9 * max(1.0, second):
            raise ValueError("mean_abs exceeds the second-moment bound")


def wrap_error(estimate: float, integral: float, params: ProtocolParams):
    """(estimate - integral) reduced into (-alpha*K/2, alpha*K/2]."""
    values = np.asarray(estimate, dtype=float) - np.asarray(integral, dtype=float)
    return wrap_delta(values, params.range)


def _moments_from(deltas: np.ndarray, probs: np.ndarray,
                  n_outcomes: int, averaged: bool) -> MomentReport:
    mean = float(np.dot(probs, deltas))
    second = float(np.dot(probs, deltas * deltas))
    var = max(second - mean * mean, 0.0)
    return MomentReport(
        std_dev=math.sqrt(var),
        mean_abs=float(np.dot(probs, np.abs(deltas))),
        bias=mean,
        n_outcomes=n_outcomes,
        averaged_over_offsets=averaged,
    )


def exact_moments(dist: train.ErrorDistribution) -> MomentReport:
    """Discrete moments of the wrapped error over the K outcomes."""
    return _moments_from(dist.deltas, dist.probs, dist.params.k_sites, False)


def _closed_form_entries(integral: float, params: ProtocolParams):
    """Wrapped deltas and closed-form probabilities for all K outcomes."""
    grid = params.alpha * np.arange(params.k_sites)
    deltas = wrap_delta(grid - integral, params.range)
    probs = train.closed_form_error_prob(deltas, params)
    return deltas, probs


def offset_averaged_moments(params: ProtocolParams, base_integral: float,
                            offsets: int) -> MomentReport:
    """Moments averaged over sub-grid offsets of the integral.

    Uses exact distributions at I = base + alpha*(i+0.5)/offsets for
    i = 0..offsets-1 (midpoints, so no integral sits exactly on the
    grid), averaging the raw moments before forming the report.
    """
    if offsets < 1:
        raise ValueError("offsets must be >= 1")
    mean = second = mean_abs = 0.0
    for i in range(offsets):
        integral = float(base_integral) + params.alpha * (i + 0.5) / offsets
        deltas, probs = _closed_form_entries(integral, params)
        mean += float(np.dot(probs, deltas))
        second += float(np.dot(probs, deltas * deltas))
        mean_abs += float(np.dot(probs, np.abs(deltas)))
    mean /= offsets
    second /= offsets
    mean_abs /= offsets
    var = max(second - mean * mean, 0.0)
    return MomentReport(std_dev=math.sqrt(var), mean_abs=mean_abs, bias=mean,
                        n_outcomes=params.k_sites, averaged_over_offsets=True)


def asymptotic_quantum_uncertainty(params: ProtocolParams) -> tuple[float, float]:
    """Large-N uncertainty scales of the quantum protocols.

    Returns (std deviation, mean absolute deviation) as
    alpha * 2**(N/2) / (sqrt(2) pi) and alpha * N * ln(2) / (2 pi^2).
    Both are asymptotic reference values, not exact moments.
    """
    alpha = params.alpha
    n = params.n_qubits
    delta = alpha * 2 ** (n / 2) / (math.sqrt(2.0) * math.pi)
    mean_abs = alpha * n * math.log(2.0) / (2.0 * math.pi**2)
    return delta, mean_abs


@dataclass(frozen=True)
class StrategyMoments:
    """Empirical moments of one strategy plus its reference values."""

    empirical_std_dev: float
    empirical_mean_abs: float
    reference_std_dev: float
    reference_mean_abs: float


@dataclass(frozen=True)
class StrategyComparison:
    """Head-to-head record of the quantum train versus the counter."""

    params: ProtocolParams
    integral: float
    trials: int
    rng_seed: int
    quantum: StrategyMoments
    quantum_exact: MomentReport
    counter: StrategyMoments

    def to_dict(self) -> dict:
        """JSON-ready nested dict (fixed key set, no volatile fields)."""
        return {
            "n_qubits": self.params.n_qubits,
            "alpha": self.params.alpha,
            "integral": self.integral,
            "trials": self.trials,
            "rng_seed": self.rng_seed,
            "quantum": {
                "empirical": {
                    "std_dev": self.quantum.empirical_std_dev,
                    "mean_abs": self.quantum.empirical_mean_abs,
                },
                "exact": {
                    "std_dev": self.quantum_exact.std_dev,
                    "mean_abs": self.quantum_exact.mean_abs,
                },
                "asymptotic": {
                    "std_dev": self.quantum.reference_std_dev,
                    "mean_abs": self.quantum.reference_mean_abs,
                },
            },
            "counter": {
                "empirical": {
                    "std_dev": self.counter.empirical_std_dev,
                    "mean_abs": self.counter.empirical_mean_abs,
                },
                "analytic": {
                    "std_dev": self.counter.reference_std_dev,
                    "mean_abs": self.counter.reference_mean_abs,
                },
            },
        }

    def csv_rows(self) -> Iterator[dict]:
        """Flat rows (strategy, source, std_dev, mean_abs) for tabulation."""
        d = self.to_dict()
        for strategy in ("quantum", "counter"):
            for source, metrics in d[strategy].items():
                yield {
                    "strategy": strategy,
                    "source": source,
                    "std_dev": metrics["std_dev"],
                    "mean_abs": metrics["mean_abs"],
                }


def _empirical(deltas: np.ndarray) -> tuple[float, float]:
    if deltas.size == 0:
        return 0.0, 0.0
    return float(np.std(deltas)), float(np.mean(np.abs(deltas)))


def compare_strategies(field: FieldProfile, params: ProtocolParams, trials: int,
                       rng_seed: int) -> StrategyComparison:
    """Run the quantum train and the counter on the same field.

    Each strategy gets an independent child stream of ``rng_seed``.  For
    both, the wrapped empirical error moments are reported next to their
    analytic references.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    integral = integrate_field(field)
    if not 0 <= integral < params.range:
        raise ValueError(
            f"integral {integral} outside [0, {params.range}); the protocols "
            "only resolve it modulo alpha*K"
        )
    seed_q, seed_c = np.random.SeedSequence(rng_seed).spawn(2)

    dist = train.outcome_distribution(integral, params)
    ms = train.sample_outcomes(dist, trials, np.random.default_rng(seed_q))
    q_deltas = wrap_delta(params.alpha * ms - integral, params.range)
    q_std, q_abs = _empirical(q_deltas)
    ref_std, ref_abs = asymptotic_quantum_uncertainty(params)

    counter_trials = simulate_counter(field, params, trials,
                                      int(seed_c.generate_state(1)[0]))
    c_est = np.array([t.estimate for t in counter_trials])
    c_deltas = wrap_delta(c_est - integral, params.range)
    c_std, c_abs = _empirical(c_deltas)
    c_ref_std, c_ref_abs = counter_analytic_uncertainty(integral, params)

    return StrategyComparison(
        params=params,
        integral=integral,
        trials=trials,
        rng_seed=rng_seed,
        quantum=StrategyMoments(q_std, q_abs, ref_std, ref_abs),
        quantum_exact=exact_moments(dist),
        counter=StrategyMoments(c_std, c_abs, c_ref_std, c_ref_abs),
    )
