"""Acceptance suite: one test (or tightly grouped set) per criterion,
each printing a PASS/FAIL line with its measured numbers.

Run with ``pytest tests/test_acceptance.py -v -s`` to see every line.

Criterion 5 is split: the standard-deviation scale (5a) and the linear
growth of the mean absolute error (5c) hold, while the pointwise
factor-of-two match of the mean absolute error against its documented
asymptote (5b) does not hold numerically and is kept as an honest red;
see the assertion message for the measured ratios.
"""

import json
import math
import time

import numpy as np
import pytest

from phasetrain import (
    closed_form_error_prob,
    compare_strategies,
    FieldProfile,
    imprint_phase,
    make_params,
    offset_averaged_moments,
    outcome_basis_matrix,
    outcome_distribution,
    prepare_uniform_state,
    product_form_error_prob,
    ripple_count_marks,
    special_strings,
    string_gram_matrix,
    decode_string,
    imprint_string,
)
from phasetrain.baselines import MarkTape
from phasetrain.cli import main


def _report(criterion: str, ok: bool, detail: str) -> None:
    print(f"[acceptance] criterion {criterion}: {'PASS' if ok else 'FAIL'} "
          f"({detail})")


# ---------------------------------------------------------------------------
# criterion 1: product form == closed form


def test_c1_product_form_equals_closed_form():
    rng = np.random.default_rng(0xC1)
    total = 10_000
    ns = rng.integers(1, 17, size=total)
    alphas = rng.choice([0.5, 1.0, 2.0], size=total)
    fracs = rng.uniform(-0.5, 0.5, size=total)
    t0 = time.perf_counter()
    worst = 0.0
    for n in range(1, 17):
        for alpha in (0.5, 1.0, 2.0):
            mask = (ns == n) & (alphas == alpha)
            if not mask.any():
                continue
            params = make_params(n, alpha)
            deltas = fracs[mask] * params.range
            diff = np.abs(
                product_form_error_prob(deltas, params)
                - closed_form_error_prob(deltas, params)
            )
            worst = max(worst, float(diff.max()))
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-10 and elapsed < 1.0
    _report("1", ok, f"10^4 samples, max |product-closed| = {worst:.3e}, "
                     f"{elapsed:.3f}s")
    assert worst <= 1e-10
    assert elapsed < 1.0


# ---------------------------------------------------------------------------
# criterion 2: Born rule via inner products == closed form


def test_c2_born_rule_cross_check():
    rng = np.random.default_rng(0xC2)
    t0 = time.perf_counter()
    worst_entry = 0.0
    worst_sum = 0.0
    for _ in range(200):
        n = int(rng.integers(1, 11))
        alpha = float(rng.choice([0.5, 1.0, 2.0]))
        params = make_params(n, alpha)
        integral = float(rng.uniform(0.0, params.range))
        dist = outcome_distribution(integral, params)
        reference = closed_form_error_prob(dist.deltas, params)
        worst_entry = max(worst_entry, float(np.abs(dist.probs - reference).max()))
        worst_sum = max(worst_sum, abs(float(dist.probs.sum()) - 1.0))
    elapsed = time.perf_counter() - t0
    ok = worst_entry <= 1e-10 and worst_sum <= 1e-10 and elapsed < 10.0
    _report("2", ok, f"200 cases, max entry diff = {worst_entry:.3e}, "
                     f"max |sum-1| = {worst_sum:.3e}, {elapsed:.1f}s")
    assert worst_entry <= 1e-10
    assert worst_sum <= 1e-10
    assert elapsed < 10.0


# ---------------------------------------------------------------------------
# criterion 3: certainty at grid points, all m, N <= 12


def test_c3_grid_point_certainty():
    rng = np.random.default_rng(0xC3)
    t0 = time.perf_counter()
    worst_prob = 0.0
    worst_gram = 0.0
    for n in range(1, 13):
        params = make_params(n, 1.0)
        k_sites = params.k_sites
        basis = outcome_basis_matrix(params)
        gram = basis.conj() @ basis.T
        gram[np.diag_indices(k_sites)] -= 1.0
        worst_gram = max(worst_gram, float(np.abs(gram).max()))
        del gram
        uniform = prepare_uniform_state(params)
        states = np.stack([
            imprint_phase(uniform, params.alpha * m, params).amplitudes
            for m in range(k_sites)
        ])
        # prob(m) for integral alpha*m: inner product of the imprinted
        # state with its own basis vector
        z = np.einsum("ij,ij->i", states, basis.conj())
        probs = z.real**2 + z.imag**2
        worst_prob = max(worst_prob, float(np.abs(probs - 1.0).max()))
        # library-route spot check with full distributions
        if n <= 7:
            picks = range(k_sites)
        else:
            picks = rng.integers(0, k_sites, size=8)
        for m in picks:
            dist = outcome_distribution(params.alpha * int(m), params)
            worst_prob = max(worst_prob, abs(float(dist.probs[int(m)]) - 1.0))
    elapsed = time.perf_counter() - t0
    ok = worst_prob <= 1e-12 and worst_gram <= 1e-10
    _report("3", ok, f"N<=12 all grid points, max |prob-1| = {worst_prob:.3e}, "
                     f"max basis Gram defect = {worst_gram:.3e}, {elapsed:.1f}s")
    assert worst_prob <= 1e-12
    assert worst_gram <= 1e-10


# ---------------------------------------------------------------------------
# criterion 4: emitted N=7 error curve structure


def _curve_values(tmp_path, lo: float, hi: float, name: str) -> dict:
    out = tmp_path / name
    code = main([
        "figure2", "--n", "7", "--alpha", "1",
        "--delta-min", str(lo), "--delta-max", str(hi),
        "--points", "1025", "--out", str(out),
    ])
    assert code == 0
    values = {}
    lines = out.read_text().splitlines()
    assert lines[0] == "delta_i_over_alpha,probability"
    for line in lines[1:]:
        x, p = line.split(",")
        values[float(x)] = float(p)
    return values


def test_c4_curve_reproduction(tmp_path):
    base = _curve_values(tmp_path, -64.0, 64.0, "base.csv")
    shifted = _curve_values(tmp_path, 64.0, 192.0, "shifted.csv")

    peak = base[0.0]
    worst_zero = max(abs(base[float(j)]) for j in range(1, 64))
    worst_zero = max(
        worst_zero, max(abs(base[float(-j)]) for j in range(1, 64))
    )
    worst_sym = max(
        abs(base[float(x)] - base[float(-x)])
        for x in np.arange(0.125, 64.001, 0.125)
    )
    worst_period = max(
        abs(base[float(x)] - shifted[float(x) + 128.0])
        for x in np.arange(-64.0, 64.001, 0.125)
    )
    ok = (peak == 1.0 and worst_zero <= 1e-12 and worst_sym <= 1e-12
          and worst_period <= 1e-10)
    _report("4", ok, f"p(0) = {peak}, max zero residue = {worst_zero:.2e}, "
                     f"symmetry defect = {worst_sym:.2e}, "
                     f"period defect = {worst_period:.2e}")
    assert peak == 1.0
    assert worst_zero <= 1e-12
    assert worst_sym <= 1e-12
    assert worst_period <= 1e-10


# ---------------------------------------------------------------------------
# criterion 5: scaling of the exact moments with N (8..14)


@pytest.fixture(scope="module")
def scaling_reports():
    t0 = time.perf_counter()
    reports = {}
    for n in range(8, 15):
        params = make_params(n, 1.0)
        reports[n] = offset_averaged_moments(params, params.scale_m, offsets=64)
    return reports, time.perf_counter() - t0


def test_c5a_std_dev_scale(scaling_reports):
    reports, elapsed = scaling_reports
    ratios = {
        n: reports[n].std_dev / (2 ** (n / 2) / (math.sqrt(2.0) * math.pi))
        for n in reports
    }
    ok = all(abs(r - 1) <= 0.25 for r in ratios.values()) and elapsed < 120.0
    detail = ", ".join(f"N={n}: {r:.4f}" for n, r in ratios.items())
    _report("5a", ok, f"std-dev ratio to alpha*2^(N/2)/(sqrt(2) pi) "
                      f"[{detail}], {elapsed:.1f}s")
    for n, r in ratios.items():
        assert abs(r - 1) <= 0.25, f"N={n}: ratio {r}"
    assert elapsed < 120.0


def test_c5b_mean_abs_factor_two(scaling_reports):
    reports, _ = scaling_reports
    target = {n: n * math.log(2.0) / (2.0 * math.pi**2) for n in reports}
    ratios = {n: reports[n].mean_abs / target[n] for n in reports}
    ok = all(0.5 <= r <= 2.0 for r in ratios.values())
    detail = ", ".join(f"N={n}: {r:.3f}" for n, r in ratios.items())
    _report("5b", ok, f"mean-abs ratio to alpha*N*ln2/(2 pi^2) [{detail}]")
    assert ok, (
        "exact offset-averaged mean absolute error versus the asymptote "
        f"alpha*N*ln2/(2 pi^2): ratios {detail} fall outside [0.5, 2.0]. "
        "The exact values grow as alpha*(N-1)*ln2/pi^2 + 0.230*alpha "
        "(confirmed independently by the inner-product route), i.e. the "
        "asymptote's constant is half the measured slope, and the positive "
        "finite-size intercept keeps every pointwise ratio above 2 for "
        "N = 8..14. Documented as a known red check; see README."
    )


def test_c5c_mean_abs_linear_in_n(scaling_reports):
    reports, _ = scaling_reports
    ns = np.array(sorted(reports))
    values = np.array([reports[n].mean_abs for n in ns])
    slope, intercept = np.polyfit(ns, values, 1)
    fitted = slope * ns + intercept
    ss_res = float(np.sum((values - fitted) ** 2))
    ss_tot = float(np.sum((values - values.mean()) ** 2))
    r_squared = 1.0 - ss_res / ss_tot
    ok = r_squared >= 0.98
    _report("5c", ok, f"mean-abs linear fit slope = {slope:.5f}/N, "
                      f"R^2 = {r_squared:.6f}")
    assert r_squared >= 0.98


# ---------------------------------------------------------------------------
# criterion 6/7: counter statistics and the quantum advantage ordering


@pytest.fixture(scope="module")
def counter_comparison():
    params = make_params(10, 1.0)
    integral = 3 * params.scale_m
    field = FieldProfile.constant(integral, 0.0, 1.0)
    t0 = time.perf_counter()
    comp = compare_strategies(field, params, trials=100_000, rng_seed=0xC6)
    return comp, time.perf_counter() - t0


def test_c6_counter_statistics(counter_comparison):
    comp, elapsed = counter_comparison
    std_ratio = comp.counter.empirical_std_dev / comp.counter.reference_std_dev
    shape_ratio = (
        comp.counter.empirical_mean_abs / comp.counter.empirical_std_dev
    ) / math.sqrt(2.0 / math.pi)
    ok = abs(std_ratio - 1) <= 0.05 and abs(shape_ratio - 1) <= 0.05 \
        and elapsed < 30.0
    _report("6", ok, f"10^5 trials, std ratio = {std_ratio:.4f}, "
                     f"mean-abs/std versus sqrt(2/pi) = {shape_ratio:.4f}, "
                     f"{elapsed:.1f}s")
    assert abs(std_ratio - 1) <= 0.05
    assert abs(shape_ratio - 1) <= 0.05
    assert elapsed < 30.0


def test_c7_quantum_beats_counter(counter_comparison):
    comp, _ = counter_comparison
    quantum = comp.quantum_exact.mean_abs
    counter = comp.counter.reference_mean_abs
    ok = quantum < counter
    _report("7", ok, f"quantum exact mean-abs = {quantum:.4f} < "
                     f"counter analytic = {counter:.4f}")
    assert quantum < counter


# ---------------------------------------------------------------------------
# criterion 8: marker tally, exhaustive


def test_c8_marker_counting_exhaustive():
    t0 = time.perf_counter()
    for count in range(32):
        span = float(max(count, 1))
        tape = MarkTape(marks=tuple(i + 0.5 for i in range(count)),
                        support=(0.0, span))
        result = ripple_count_marks(tape, 4)
        assert result.value() == count % 16, f"count={count}"
        assert result.bits == tuple((count >> j) & 1 for j in range(4))
        assert result.survivors == tuple(count >> (p + 1) for p in range(4))
    elapsed = time.perf_counter() - t0
    ok = elapsed < 1.0
    _report("8", ok, f"counts 0..31 exhaustive, {elapsed:.3f}s")
    assert elapsed < 1.0


# ---------------------------------------------------------------------------
# criterion 9: string set, orthogonality, decode round trip


def test_c9_string_reader():
    t0 = time.perf_counter()
    expected_k16 = (
        "0000000000000000",
        "0000000011111111",
        "0000111100001111",
        "0011001100110011",
        "0101010101010101",
    )
    assert special_strings(4).strings == expected_k16
    worst_gram = 0.0
    for n in range(1, 13):
        sset = special_strings(n)
        gram = string_gram_matrix(sset)
        worst_gram = max(
            worst_gram, float(np.abs(gram - np.eye(n + 1)).max())
        )
        uniform = prepare_uniform_state(make_params(n, 1.0))
        for idx, member in enumerate(sset.strings, start=1):
            assert decode_string(imprint_string(uniform, member), sset) == idx
    elapsed = time.perf_counter() - t0
    ok = worst_gram <= 1e-12 and elapsed < 30.0
    _report("9", ok, f"N<=12, max Gram defect = {worst_gram:.3e}, "
                     f"all decode round trips exact, {elapsed:.1f}s")
    assert worst_gram <= 1e-12
    assert elapsed < 30.0


# ---------------------------------------------------------------------------
# criterion 10: byte-identical artifacts under a fixed seed


def test_c10_deterministic_artifacts(tmp_path):
    cases = [
        (["measure", "--n", "6", "--integral", "7.7", "--trials", "64",
          "--seed", "41"], "measure.json"),
        (["compare", "--n", "8", "--integral", "25.6", "--trials", "5000",
          "--seed", "42"], "compare.json"),
        (["compare", "--n", "8", "--integral", "25.6", "--trials", "5000",
          "--seed", "42", "--format", "csv"], "compare.csv"),
        (["marks", "--n", "5", "--field", "gaussian:2:5:2:0:10",
          "--seed", "43"], "marks.txt"),
        (["figure2", "--n", "5", "--integral", "3.21"], "figure2.csv"),
        (["strings", "--n", "6", "--imprint", "4", "--format", "json"],
         "strings.json"),
    ]
    identical = True
    for argv, name in cases:
        first = tmp_path / ("a_" + name)
        second = tmp_path / ("b_" + name)
        assert main(argv + ["--out", str(first)]) == 0
        assert main(argv + ["--out", str(second)]) == 0
        if first.read_bytes() != second.read_bytes():
            identical = False
    # JSON artifacts also round-trip through a parser byte-identically
    from phasetrain.serialize import canonical_json

    doc_path = tmp_path / "a_compare.json"
    text = doc_path.read_text()
    assert canonical_json(json.loads(text)) == text
    _report("10", identical, f"{len(cases)} artifact reruns byte-identical")
    assert identical
