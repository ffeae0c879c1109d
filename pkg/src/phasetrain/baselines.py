"""Classical baselines: the N-bit Poisson counter and the marker scheme.

The counter clicks along the path with probability dp = phi(x) dx / alpha,
so the click total is Poisson with mean I/alpha and the estimate
alpha * clicks has standard deviation sqrt(alpha I).  The marker scheme
first drops marks with the same law, then N sequential bits tally them:
a bit in state 0 that meets a mark erases it and flips to 1, a bit in
state 1 leaves the mark and flips to 0.  After all passes the bit states
spell the mark count in binary, least significant bit first.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import FieldProfile, ProtocolParams, integrate_field


@dataclass(frozen=True)
class MarkTape:
    """Marks on the path in order of encounter (positions in [A, B])."""

    marks: tuple[float, ...]
    support: tuple[float, float]

    def __post_init__(self):
        a, b = self.support
        pos = np.asarray(self.marks, dtype=float)
        if pos.size and (pos.min() < a or pos.max() > b):
            raise ValueError("mark positions must lie in the support")
        if pos.size > 1 and np.any(np.diff(pos) < 0):
            raise ValueError("mark positions must be nondecreasing")

    def __len__(self) -> int:
        return len(self.marks)


@dataclass(frozen=True)
class CounterTrial:
    """One counter run: raw clicks, wrapped-or-saturated estimate, overflow."""

    clicks: int
    estimate: float
    overflowed: bool


@dataclass(frozen=True)
class RippleCount:
    """Result of the sequential bit passes over a mark tape.

    ``bits`` is least-significant-first; ``survivors`` holds the marks
    remaining after each pass.
    """

    initial_marks: int
    bits: tuple[int, ...]
    survivors: tuple[int, ...]

    def value(self) -> int:
        return sum(b << i for i, b in enumerate(self.bits))

    def lsb_first(self) -> str:
        return "".join(str(b) for b in self.bits)

    def msb_first(self) -> str:
        return "".join(str(b) for b in reversed(self.bits))


def click_rate(field: FieldProfile, alpha: float) -> Callable[[np.ndarray], np.ndarray]:
    """Click intensity lambda(x) = phi(x) / alpha along the path.

    Integrated over the support this gives the expected click total
    I / alpha.
    """
    if not alpha > 0:
        raise ValueError("alpha must be positive")

    def rate(x):
        return field.evaluate(x) / alpha

    return rate


def simulate_counter(field: FieldProfile, params: ProtocolParams, trials: int,
                     rng_seed: int, overflow: str = "wrap") -> list[CounterTrial]:
    """Monte Carlo of the N-bit counter traversing the field.

    Each trial draws clicks ~ Poisson(I/alpha).  Counts at or above
    K = 2**N overflow the register: ``wrap`` reduces them mod K (the
    counter lives on the same ring as the quantum protocols), ``saturate``
    pins them at K-1.  Deterministic for a fixed seed.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if overflow not in ("wrap", "saturate"):
        raise ValueError("overflow must be 'wrap' or 'saturate'")
    lam = integrate_field(field) / params.alpha
    rng = np.random.default_rng(rng_seed)
    clicks = rng.poisson(lam, size=trials)
    k_sites = params.k_sites
    if overflow == "wrap":
        reduced = clicks % k_sites
    else:
        reduced = np.minimum(clicks, k_sites - 1)
    over = clicks >= k_sites
    alpha = params.alpha
    return [
        CounterTrial(clicks=int(c), estimate=alpha * float(r), overflowed=bool(o))
        for c, r, o in zip(clicks, reduced, over)
    ]


def counter_analytic_uncertainty(integral: float,
                                 params: ProtocolParams) -> tuple[float, float]:
    """Counter error scales (std deviation, mean absolute deviation).

    Returns (sqrt(10 M I / 2**N), sqrt(20 M I / (pi 2**N))); the second
    is sqrt(2/pi) times the first, the Gaussian-regime relation.
    """
    integral = float(integral)
    if not 0 <= integral < params.range:
        raise ValueError("integral must lie in [0, alpha*K)")
    k_sites = params.k_sites
    delta = math.sqrt(10.0 * params.scale_m * integral / k_sites)
    mean_abs = math.sqrt(20.0 * params.scale_m * integral / (math.pi * k_sites))
    return delta, mean_abs


def generate_marks(field: FieldProfile, alpha: float, rng_seed: int) -> MarkTape:
    """Drop marks along the path with intensity phi(x)/alpha.

    Inhomogeneous Poisson sampling: a Poisson total at the bounding rate
    with uniform positions, thinned by phi(x)/phi_max (no thinning needed
    for constant fields).  Positions come back sorted.
    """
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    a, b = field.support
    bound = field.upper_bound() / alpha
    rng = np.random.default_rng(rng_seed)
    n_candidates = rng.poisson(bound * (b - a))
    xs = rng.uniform(a, b, size=n_candidates)
    if field.kind != "constant":
        accept = rng.uniform(0.0, bound, size=n_candidates) < (
            field.evaluate(xs) / alpha
        )
        xs = xs[accept]
    xs.sort()
    return MarkTape(marks=tuple(float(x) for x in xs), support=(a, b))


def ripple_count_marks(tape: MarkTape, n_bits: int) -> RippleCount:
    """Send N bits one after another over the tape and read the count.

    Each pass walks the surviving marks in order, applying the erase/flip
    rules; pass j leaves floor(marks / 2**(j+1)) marks and its bit ends
    as digit j of the count.  The result equals the binary representation
    of len(tape) mod 2**N.  The input tape is not modified.
    """
    if n_bits < 1:
        raise ValueError("n_bits must be >= 1")
    surviving = list(tape.marks)
    bits = []
    survivors = []
    for _ in range(n_bits):
        bit = 0
        kept = []
        for mark in surviving:
            if bit == 0:
                bit = 1  # erase the mark (drop it) and flip
            else:
                kept.append(mark)  # leave the mark, flip back
                bit = 0
        bits.append(bit)
        survivors.append(len(kept))
        surviving = kept
    return RippleCount(initial_marks=len(tape), bits=tuple(bits),
                       survivors=tuple(survivors))
