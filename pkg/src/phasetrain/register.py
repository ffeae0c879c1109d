"""N-qubit register protocol, isomorphic to the single-particle train.

Spin j (value 2**j in the binary outcome label) accrues phase
-2 pi 2**j I / (K alpha) when pointing down and none when up, so a basis
label k collects exactly the train's site phase -2 pi k I / (K alpha).
The error law is the N-factor product of per-qubit cos^2 terms, which
coincides with the train's interference closed form.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import backend
from .core import ProtocolParams, wrap_delta
from .train import ErrorDistribution


@dataclass(frozen=True)
class QubitRegister:
    """Relative phases theta_j accrued by each of the N spins.

    Spin j sits in (|up> + exp(i theta_j) |down>) / sqrt(2) up to a
    global phase.
    """

    phases: tuple[float, ...]

    def __len__(self) -> int:
        return len(self.phases)


def spin_phase(j: int, integral: float, params: ProtocolParams) -> float:
    """Phase -2 pi 2**j I / (K alpha) accrued by spin j (0-based)."""
    if not 0 <= j < params.n_qubits:
        raise ValueError(f"spin index must be in 0..{params.n_qubits - 1}, got {j}")
    return -2.0 * np.pi * (1 << j) * float(integral) / params.range


def register_phases(integral: float, params: ProtocolParams) -> QubitRegister:
    """All N spin phases for one pass through the field."""
    return QubitRegister(
        phases=tuple(spin_phase(j, integral, params) for j in range(params.n_qubits))
    )


def register_phase_for_label(label: int, integral: float,
                             params: ProtocolParams) -> float:
    """Total phase of the register component writing ``label`` in binary.

    Sums the per-spin phase over the set bits of ``label``; the result
    equals the train's site phase -2 pi label I / (K alpha).  ``label``
    runs 1..K as the site index does; label K uses bit N, one past the
    top spin index, which contributes a full-period phase.
    """
    if not 1 <= label <= params.k_sites:
        raise ValueError(f"label must be in 1..{params.k_sites}, got {label}")
    total = 0.0
    # Same formula as spin_phase, without its 0..N-1 guard so that the
    # label K = 2**N (bit N set) is representable.
    for j in range(params.n_qubits + 1):
        if label >> j & 1:
            total += -2.0 * np.pi * (1 << j) * float(integral) / params.range
    return total


def product_form_error_prob(delta_i, params: ProtocolParams):
    """Probability of a wrapped error delta_i as the per-qubit product.

    Evaluates prod_{n=1..N} cos^2(pi d / (2**n alpha)).  Accepts scalars
    or arrays.
    """
    x = np.asarray(delta_i, dtype=np.float64) / params.alpha
    out = backend.product_form_probs(x, params.n_qubits)
    if np.ndim(delta_i) == 0:
        return float(out)
    return out


def register_outcome_distribution(integral: float,
                                  params: ProtocolParams) -> ErrorDistribution:
    """Measurement statistics of the register protocol.

    prob(m) is the product form evaluated at the wrapped error of grid
    value alpha*m; entrywise identical (to 1e-10) to the train's
    inner-product distribution.
    """
    outcomes = np.arange(params.k_sites, dtype=np.int64)
    deltas = wrap_delta(params.alpha * outcomes - float(integral), params.range)
    probs = backend.product_form_probs(deltas / params.alpha, params.n_qubits)
    return ErrorDistribution(params=params, true_integral=float(integral),
                             outcomes=outcomes, deltas=deltas, probs=probs)
