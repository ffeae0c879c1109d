import os
import subprocess
import sys

import numpy as np
import pytest

from phasetrain import _kernels_py, backend_name

try:
    from phasetrain import _kernels
except ImportError:
    _kernels = None

needs_compiled = pytest.mark.skipif(
    _kernels is None, reason="compiled extension not built"
)

BACKENDS = [("python", _kernels_py)] + (
    [("cython", _kernels)] if _kernels is not None else []
)


def _brute_force_probs(amps: np.ndarray) -> np.ndarray:
    """Independent O(K^2) oracle: explicit basis vectors and np.vdot."""
    k_sites = amps.shape[0]
    k = np.arange(1, k_sites + 1)
    out = np.empty(k_sites)
    for m in range(k_sites):
        basis = np.exp(-2j * np.pi * k * m / k_sites) / np.sqrt(k_sites)
        out[m] = abs(np.vdot(basis, amps)) ** 2
    return out


def test_backend_name_valid():
    assert backend_name() in ("python", "cython")


@pytest.mark.parametrize("name,mod", BACKENDS)
class TestKernelContracts:
    def test_measurement_probs_against_brute_force(self, name, mod):
        rng = np.random.default_rng(0)
        for n in (1, 3, 6):
            k_sites = 1 << n
            amps = rng.normal(size=k_sites) + 1j * rng.normal(size=k_sites)
            amps /= np.linalg.norm(amps)
            got = mod.measurement_probs(amps)
            np.testing.assert_allclose(got, _brute_force_probs(amps), atol=1e-12)

    def test_closed_form_values(self, name, mod):
        # N=1: sin^2(pi x) / (4 sin^2(pi x / 2)) = cos^2(pi x / 2)
        x = np.linspace(-0.95, 0.95, 39)
        got = mod.closed_form_probs(x, 1)
        np.testing.assert_allclose(got, np.cos(np.pi * x / 2) ** 2, atol=1e-13)

    def test_closed_form_singularity_plateau(self, name, mod):
        for n in (1, 8, 16):
            k_sites = 1 << n
            x = np.array([0.0, k_sites * (1 + 0.5e-9), -3.0 * k_sites])
            got = mod.closed_form_probs(x, n)
            np.testing.assert_array_equal(got, [1.0, 1.0, 1.0])

    def test_product_form_values(self, name, mod):
        x = np.array([0.0, 0.5, 1.0, 2.0])
        got = mod.product_form_probs(x, 2)
        expected = (np.cos(np.pi * x / 2) * np.cos(np.pi * x / 4)) ** 2
        np.testing.assert_allclose(got, expected, atol=1e-13)

    def test_large_argument_reduction(self, name, mod):
        # arguments of order K stay accurate thanks to mod-1 reduction
        n = 16
        k_sites = 1 << n
        x = np.array([k_sites / 2 - 0.25, -k_sites / 2 + 0.125])
        a = mod.closed_form_probs(x, n)
        b = mod.product_form_probs(x, n)
        np.testing.assert_allclose(a, b, atol=1e-12)


@needs_compiled
class TestBackendEquivalence:
    def test_closed_and_product_forms(self):
        rng = np.random.default_rng(1)
        for n in (1, 5, 10, 16):
            x = rng.uniform(-(1 << n) / 2, (1 << n) / 2, size=4096)
            a = _kernels.closed_form_probs(x, n)
            b = _kernels_py.closed_form_probs(x, n)
            np.testing.assert_allclose(a, b, atol=1e-12)
            a = _kernels.product_form_probs(x, n)
            b = _kernels_py.product_form_probs(x, n)
            np.testing.assert_allclose(a, b, atol=1e-12)

    def test_measurement_probs(self):
        rng = np.random.default_rng(2)
        for n in (2, 6, 10):
            k_sites = 1 << n
            amps = np.exp(2j * np.pi * rng.random(k_sites)) / np.sqrt(k_sites)
            a = _kernels.measurement_probs(amps)
            b = _kernels_py.measurement_probs(amps)
            np.testing.assert_allclose(a, b, atol=1e-11)

    def test_scalar_shapes_match(self):
        a = _kernels.closed_form_probs(0.5, 3)
        b = _kernels_py.closed_form_probs(0.5, 3)
        assert np.shape(a) == np.shape(b) == ()


class TestBackendSelection:
    def _probe(self, env_value):
        env = dict(os.environ, PHASETRAIN_BACKEND=env_value)
        proc = subprocess.run(
            [sys.executable, "-c",
             "from phasetrain import backend_name; print(backend_name())"],
            capture_output=True, text=True, env=env,
        )
        return proc

    def test_force_python(self):
        proc = self._probe("python")
        assert proc.returncode == 0
        assert proc.stdout.strip() == "python"

    @needs_compiled
    def test_force_cython(self):
        proc = self._probe("cython")
        assert proc.returncode == 0
        assert proc.stdout.strip() == "cython"

    def test_bad_value_rejected(self):
        proc = self._probe("fortran")
        assert proc.returncode != 0
