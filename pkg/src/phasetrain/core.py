"""Shared domain types and numeric conventions.

Site indices k run 1..K while measurement outcomes m run 0..K-1; that
off-by-one is fixed here once and every other module follows it.  All
reals are 64-bit floats and every tolerance is stated where it is
checked.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

# Memory guard: a state vector holds 2**n_qubits complex amplitudes.
MAX_QUBITS = 24

# Composite Simpson panels used for field kinds without a closed form.
DEFAULT_SIMPSON_PANELS = 4096

_FIELD_KINDS = ("constant", "gaussian", "piecewise_linear", "tabulated")


class InvalidFieldError(ValueError):
    """Raised for field profiles that violate the model (negative values,
    empty support, unordered samples)."""


@dataclass(frozen=True)
class ProtocolParams:
    """Protocol sizing: N qubits worth of sites and the grid spacing alpha.

    Attributes
    ----------
    n_qubits : int
        N, number of binary digits of the outcome label.
    k_sites : int
        K = 2**N, number of sites in the superposition.
    alpha : float
        Grid spacing of the measurable values (units of the integral).
    range : float
        alpha * K, the period of the measurement; integrals are resolved
        modulo this value.
    scale_m : float
        range / 10, the conventional magnitude of test integrals (keeps
        wrap-around effects negligible).
    """

    n_qubits: int
    k_sites: int
    alpha: float
    range: float
    scale_m: float

    def __post_init__(self):
        if self.k_sites != 1 << self.n_qubits:
            raise ValueError("k_sites must equal 2**n_qubits")
        if not self.alpha > 0:
            raise ValueError("alpha must be positive")
        if self.range != self.alpha * self.k_sites:
            raise ValueError("range must equal alpha * k_sites")
        if self.scale_m != self.range / 10:
            raise ValueError("scale_m must equal range / 10")


def make_params(n_qubits: int, alpha: float) -> ProtocolParams:
    """Build ProtocolParams from N and alpha, deriving K, alpha*K and M."""
    if not isinstance(n_qubits, (int, np.integer)) or isinstance(n_qubits, bool):
        raise ValueError(f"n_qubits must be an integer, got {n_qubits!r}")
    if not 1 <= n_qubits <= MAX_QUBITS:
        raise ValueError(f"n_qubits must be in 1..{MAX_QUBITS}, got {n_qubits}")
    alpha = float(alpha)
    if not alpha > 0 or not math.isfinite(alpha):
        raise ValueError(f"alpha must be a positive finite real, got {alpha}")
    k_sites = 1 << int(n_qubits)
    rng = alpha * k_sites
    return ProtocolParams(
        n_qubits=int(n_qubits),
        k_sites=k_sites,
        alpha=alpha,
        range=rng,
        scale_m=rng / 10,
    )


@dataclass(frozen=True)
class FieldProfile:
    """Nonnegative classical field phi(x) on a closed interval [A, B].

    Use the factory classmethods; the raw constructor performs only the
    shared validation.  ``samples`` holds the (x, phi) knots for the
    piecewise_linear and tabulated kinds.
    """

    kind: str
    support: tuple[float, float]
    parameters: dict = field(default_factory=dict)
    samples: tuple[tuple[float, float], ...] | None = None

    def __post_init__(self):
        if self.kind not in _FIELD_KINDS:
            raise InvalidFieldError(f"unknown field kind {self.kind!r}")
        a, b = self.support
        if not (math.isfinite(a) and math.isfinite(b)) or not a < b:
            raise InvalidFieldError(f"support must satisfy A < B, got [{a}, {b}]")
        if self.samples is not None:
            xs = np.array([x for x, _ in self.samples], dtype=float)
            ys = np.array([y for _, y in self.samples], dtype=float)
            if xs.size < 2:
                raise InvalidFieldError("need at least two sample points")
            if not np.all(np.diff(xs) > 0):
                raise InvalidFieldError("sample x values must be strictly increasing")
            if np.any(ys < 0):
                raise InvalidFieldError("field samples must be nonnegative")

    @classmethod
    def constant(cls, value: float, a: float, b: float) -> "FieldProfile":
        value = float(value)
        if value < 0:
            raise InvalidFieldError("constant field value must be nonnegative")
        return cls(kind="constant", support=(float(a), float(b)),
                   parameters={"value": value})

    @classmethod
    def gaussian(cls, amplitude: float, center: float, sigma: float,
                 a: float, b: float) -> "FieldProfile":
        amplitude, sigma = float(amplitude), float(sigma)
        if amplitude < 0:
            raise InvalidFieldError("gaussian amplitude must be nonnegative")
        if sigma <= 0:
            raise InvalidFieldError("gaussian sigma must be positive")
        return cls(kind="gaussian", support=(float(a), float(b)),
                   parameters={"amplitude": amplitude, "center": float(center),
                               "sigma": sigma})

    @classmethod
    def piecewise_linear(cls, xs, ys) -> "FieldProfile":
        pts = tuple((float(x), float(y)) for x, y in zip(xs, ys, strict=True))
        if len(pts) < 2:
            raise InvalidFieldError("need at least two knots")
        return cls(kind="piecewise_linear", support=(pts[0][0], pts[-1][0]),
                   samples=pts)

    @classmethod
    def tabulated(cls, xs, ys) -> "FieldProfile":
        pts = tuple((float(x), float(y)) for x, y in zip(xs, ys, strict=True))
        if len(pts) < 2:
            raise InvalidFieldError("need at least two sample points")
        return cls(kind="tabulated", support=(pts[0][0], pts[-1][0]), samples=pts)

    def evaluate(self, x) -> np.ndarray:
        """phi(x), vectorized; sampled kinds clamp x to the nearest knot."""
        x = np.asarray(x, dtype=float)
        if self.kind == "constant":
            return np.full_like(x, self.parameters["value"])
        if self.kind == "gaussian":
            amp = self.parameters["amplitude"]
            mu = self.parameters["center"]
            sig = self.parameters["sigma"]
            z = (x - mu) / sig
            return amp * np.exp(-0.5 * z * z)
        xs = np.array([p[0] for p in self.samples])
        ys = np.array([p[1] for p in self.samples])
        return np.interp(x, xs, ys)

    def upper_bound(self) -> float:
        """A sharp upper bound of phi on the support (used for thinning)."""
        a, b = self.support
        if self.kind == "constant":
            return self.parameters["value"]
        if self.kind == "gaussian":
            mu = self.parameters["center"]
            nearest = min(max(mu, a), b)
            return float(self.evaluate(nearest))
        return max(p[1] for p in self.samples)


def integrate_field(profile: FieldProfile,
                    panels: int = DEFAULT_SIMPSON_PANELS) -> float:
    """Definite integral of the field over its support.

    Constant and piecewise-linear kinds use their closed forms (exact to
    roundoff); gaussian and tabulated kinds use composite Simpson with
    ``panels`` parabolic panels (2*panels+1 evaluation points).
    """
    a, b = profile.support
    if profile.kind == "constant":
        return profile.parameters["value"] * (b - a)
    if profile.kind == "piecewise_linear":
        xs = np.array([p[0] for p in profile.samples])
        ys = np.array([p[1] for p in profile.samples])
        return float(np.trapezoid(ys, xs))
    if panels < 1:
        raise ValueError("panel count must be >= 1")
    xs = np.linspace(a, b, 2 * panels + 1)
    ys = profile.evaluate(xs)
    h = (b - a) / (2 * panels)
    weights = np.ones(2 * panels + 1)
    weights[1:-1:2] = 4.0
    weights[2:-1:2] = 2.0
    return float(h / 3.0 * np.dot(weights, ys))


def field_from_csv(path) -> FieldProfile:
    """Read a tabulated field from two-column CSV (x, phi).

    A single header row is tolerated; x must be strictly increasing and
    phi nonnegative.
    """
    rows = []
    with open(Path(path), newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh)):
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) < 2:
                raise InvalidFieldError(f"line {lineno + 1}: expected two columns")
            try:
                rows.append((float(row[0]), float(row[1])))
            except ValueError:
                if lineno == 0:  # header
                    continue
                raise InvalidFieldError(
                    f"line {lineno + 1}: non-numeric value {row!r}"
                ) from None
    if len(rows) < 2:
        raise InvalidFieldError("CSV field needs at least two data rows")
    return FieldProfile.tabulated([x for x, _ in rows], [y for _, y in rows])


def wrap_delta(values, period: float):
    """Reduce differences into the centered interval (-period/2, period/2].

    The lower boundary maps to the upper one, so a difference of exactly
    -period/2 comes back as +period/2.
    """
    if not period > 0:
        raise ValueError("period must be positive")
    values = np.asarray(values, dtype=float)
    wrapped = values - period * np.ceil(values / period - 0.5)
    # rounding in values/period can overshoot the half-open boundary by
    # an ulp; fold strictly back into the contract interval
    half = period / 2
    wrapped = np.where(wrapped > half, wrapped - period, wrapped)
    wrapped = np.where(wrapped <= -half, wrapped + period, wrapped)
    if wrapped.ndim == 0:
        return float(wrapped)
    return wrapped
