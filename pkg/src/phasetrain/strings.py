"""Phase-encoded string reading with a single particle.

A length-K bit string is imprinted on the uniform superposition as a
pi phase per 1-bit, so bit patterns become sign patterns.  For the
special family built here (all zeros, then alternating constant blocks
of length K/2, K/4, ..., 1) the N+1 imprinted states are mutually
orthogonal and one measurement identifies the string with certainty.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .train import StateVector, prepare_uniform_state
from .core import make_params

# In-set states overlap their reference at exactly 1 up to roundoff;
# anything below this is foreign.
DECODE_THRESHOLD = 1.0 - 1e-9


class NotInSetError(ValueError):
    """Raised when a state matches no member of the special string set."""


@dataclass(frozen=True)
class SpecialStringSet:
    """The N+1 mutually decodable strings of length K = 2**N.

    String 1 is all zeros; string n >= 2 alternates 0-blocks and
    1-blocks of length K / 2**(n-1), starting with zeros.  Strings are
    stored as '0'/'1' text, indexed 1..N+1.
    """

    n: int
    strings: tuple[str, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        k = 1 << self.n
        if len(self.strings) != self.n + 1:
            raise ValueError(f"expected {self.n + 1} strings")
        for s in self.strings:
            if len(s) != k or set(s) - {"0", "1"}:
                raise ValueError("strings must be K characters of 0/1")

    @property
    def k_bits(self) -> int:
        return 1 << self.n

    def to_text(self) -> str:
        """One string per line, first row on top."""
        return "\n".join(self.strings) + "\n"


def special_strings(n: int) -> SpecialStringSet:
    """Build the special set for N = n (N+1 strings of length 2**N)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    k = 1 << n
    rows = ["0" * k]
    for row in range(2, n + 2):
        block = k >> (row - 1)
        pattern = ("0" * block + "1" * block) * (k // (2 * block))
        rows.append(pattern)
    return SpecialStringSet(n=n, strings=tuple(rows))


def strings_from_text(text: str) -> SpecialStringSet:
    """Parse a set from its line format (inverse of ``to_text``)."""
    rows = [line.strip() for line in text.splitlines() if line.strip()]
    if len(rows) < 2:
        raise ValueError("expected at least two rows")
    n = len(rows) - 1
    return SpecialStringSet(n=n, strings=tuple(rows))


def _bit_array(bits) -> np.ndarray:
    if isinstance(bits, str):
        arr = np.frombuffer(bits.encode("ascii"), dtype=np.uint8) - ord("0")
    else:
        arr = np.asarray(bits, dtype=np.uint8)
    if arr.ndim != 1 or np.any(arr > 1):
        raise ValueError("bits must be a flat 0/1 sequence")
    return arr


def imprint_string(state: StateVector, bits) -> StateVector:
    """Multiply the amplitude at position k by (-1) ** bit_k.

    Position k of the string meets part k of the superposition, so a
    1-bit contributes a pi phase.  Accepts '0'/'1' text or a 0/1 array
    of the state's length.
    """
    arr = _bit_array(bits)
    if arr.shape[0] != len(state):
        raise ValueError(
            f"bit string length {arr.shape[0]} does not match state length "
            f"{len(state)}"
        )
    signs = 1.0 - 2.0 * arr.astype(np.float64)
    return StateVector(state.amplitudes * signs)


def _reference_states(sset: SpecialStringSet) -> np.ndarray:
    uniform = prepare_uniform_state(make_params(sset.n, 1.0))
    return np.stack([imprint_string(uniform, s).amplitudes for s in sset.strings])


def string_gram_matrix(sset: SpecialStringSet) -> np.ndarray:
    """Pairwise inner products of the imprinted states, (N+1) x (N+1).

    Mutual orthogonality of the special set makes this the identity.
    """
    refs = _reference_states(sset)
    return refs.conj() @ refs.T


def decode_string(state: StateVector, sset: SpecialStringSet) -> int:
    """Identify which set member produced ``state`` (index 1..N+1).

    Takes the squared overlap with each reference state and returns the
    argmax; an in-set state overlaps its own reference at exactly 1, so
    anything below 1 - 1e-9 raises NotInSetError.
    """
    if len(state) != sset.k_bits:
        raise ValueError("state length does not match the string length")
    refs = _reference_states(sset)
    overlaps = np.abs(refs.conj() @ state.amplitudes) ** 2
    best = int(np.argmax(overlaps))
    if overlaps[best] < DECODE_THRESHOLD:
        raise NotInSetError(
            f"best overlap {overlaps[best]:.6g} below {DECODE_THRESHOLD}; "
            "state was not imprinted from this set"
        )
    return best + 1
