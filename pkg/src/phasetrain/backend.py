"""Kernel backend selection.

The hot per-outcome loops exist twice: a compiled Cython extension
(``phasetrain._kernels``) and a NumPy fallback (``phasetrain._kernels_py``).
The compiled one is preferred when importable.  Set the environment
variable ``PHASETRAIN_BACKEND`` to ``python`` or ``cython`` to force a
choice (``cython`` raises if the extension was not built).

``benchmarks/bench_backends.py`` compares the two.
"""

from __future__ import annotations

import os

from . import _kernels_py


def _load():
    choice = os.environ.get("PHASETRAIN_BACKEND", "auto").strip().lower()
    if choice not in ("auto", "cython", "python"):
        raise ValueError(
            f"PHASETRAIN_BACKEND must be auto, cython or python (got {choice!r})"
        )
    if choice == "python":
        return _kernels_py, "python"
    try:
        from . import _kernels  # compiled extension
    except ImportError:
        if choice == "cython":
            raise ImportError(
                "PHASETRAIN_BACKEND=cython but the compiled extension is "
                "missing; build it with `pip install -e . --no-build-isolation`"
            ) from None
        return _kernels_py, "python"
    return _kernels, "cython"


_MODULE, _NAME = _load()

closed_form_probs = _MODULE.closed_form_probs
product_form_probs = _MODULE.product_form_probs
measurement_probs = _MODULE.measurement_probs


def backend_name() -> str:
    """Name of the kernel backend selected at import ('cython' or 'python')."""
    return _NAME
