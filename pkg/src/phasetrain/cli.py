"""Command line interface.

Subcommands:

* ``measure``  - run the single-particle protocol, emit the full outcome
  distribution, exact moments, and optional sampled outcomes (JSON).
* ``figure2``  - emit the error-probability curve p(delta) on a grid of
  errors in units of alpha (CSV), optionally with the discrete outcome
  markers of a concrete integral.
* ``compare``  - quantum train versus classical counter on one field
  (JSON or flat CSV).
* ``marks``    - drop marks and tally them with the sequential-bit rules
  (text trace).
* ``strings``  - print the special string set, its Gram matrix, and
  optionally decode an imprinted member (text or JSON).

Exit codes: 0 on success, 2 for invalid arguments, 3 for numeric-domain
errors (out-of-range integral, invalid field data, foreign string).
All randomness is controlled by ``--seed``; reruns with the same seed
produce byte-identical artifacts.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import train
from .baselines import MarkTape, generate_marks, ripple_count_marks
from .core import (
    FieldProfile,
    ProtocolParams,
    field_from_csv,
    integrate_field,
    make_params,
    wrap_delta,
)
from .serialize import canonical_json, csv_text, float_repr
from .stats import compare_strategies, exact_moments
from .strings import (
    decode_string,
    imprint_string,
    special_strings,
    string_gram_matrix,
)

_STOCHASTIC_HINT = "stochastic runs need --seed for reproducible artifacts"


class UsageError(ValueError):
    """Invalid argument combination detected after parsing (exit code 2)."""


@dataclass(frozen=True)
class RunConfig:
    """Normalized request: one command plus its validated inputs."""

    command: str
    n_qubits: int = 0
    alpha: float = 1.0
    integral: float | None = None
    field: FieldProfile | None = None
    trials: int = 0
    seed: int | None = None
    out: str = "-"
    fmt: str = "json"
    delta_min: float | None = None
    delta_max: float | None = None
    points: int = 0
    count: int | None = None
    imprint: int | None = None


def parse_field_spec(spec: str) -> FieldProfile:
    """Parse the field mini-grammar.

    ``constant:<value>:<A>:<B>``, ``gaussian:<amp>:<mu>:<sigma>:<A>:<B>``,
    or ``table:<path>`` (two-column CSV).
    """
    head, _, rest = spec.partition(":")
    if head == "table":
        if not rest:
            raise UsageError("table spec needs a path: table:<path>")
        return field_from_csv(rest)
    try:
        values = [float(v) for v in rest.split(":")] if rest else []
    except ValueError:
        raise UsageError(f"non-numeric value in field spec {spec!r}") from None
    if head == "constant":
        if len(values) != 3:
            raise UsageError("constant spec is constant:<value>:<A>:<B>")
        return FieldProfile.constant(*values)
    if head == "gaussian":
        if len(values) != 5:
            raise UsageError("gaussian spec is gaussian:<amp>:<mu>:<sigma>:<A>:<B>")
        return FieldProfile.gaussian(*values)
    raise UsageError(f"unknown field kind {head!r} (constant, gaussian, table)")


def _make_params_checked(n: int, alpha: float) -> ProtocolParams:
    try:
        return make_params(n, alpha)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _write(text: str, out: str) -> None:
    if out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


# ---------------------------------------------------------------------------
# commands


def _cmd_measure(cfg: RunConfig) -> str:
    params = _make_params_checked(cfg.n_qubits, cfg.alpha)
    integral = cfg.integral if cfg.integral is not None else integrate_field(cfg.field)
    dist = train.outcome_distribution(integral, params)
    moments = exact_moments(dist)
    doc = {
        "n_qubits": params.n_qubits,
        "alpha": params.alpha,
        "integral": float(integral),
        "entries": [
            [int(m), float(d), float(p)]
            for m, d, p in zip(dist.outcomes, dist.deltas, dist.probs)
        ],
        "moments": {
            "std_dev": moments.std_dev,
            "mean_abs": moments.mean_abs,
            "bias": moments.bias,
        },
    }
    if cfg.trials >= 1:
        rng = np.random.default_rng(cfg.seed)
        ms = train.sample_outcomes(dist, cfg.trials, rng)
        estimates = params.alpha * ms
        doc["samples"] = {
            "seed": cfg.seed,
            "m": [int(m) for m in ms],
            "estimate": [float(e) for e in estimates],
            "delta_i": [
                float(d) for d in np.atleast_1d(
                    wrap_delta(estimates - integral, params.range)
                )
            ],
        }
    return canonical_json(doc)


def _cmd_figure2(cfg: RunConfig) -> str:
    params = _make_params_checked(cfg.n_qubits, cfg.alpha)
    half = params.k_sites / 2
    lo = cfg.delta_min if cfg.delta_min is not None else -half
    hi = cfg.delta_max if cfg.delta_max is not None else half
    if not lo < hi:
        raise UsageError("--delta-min must be below --delta-max")
    points = cfg.points if cfg.points else int(round(8 * (hi - lo))) + 1
    if points < 2:
        raise UsageError("--points must be at least 2")
    xs = np.linspace(lo, hi, points)
    probs = train.closed_form_error_prob(xs * params.alpha, params)
    with_markers = cfg.integral is not None
    header = ["delta_i_over_alpha", "probability"]
    if with_markers:
        header.append("kind")
        rows = [[float(x), float(p), "curve"] for x, p in zip(xs, probs)]
        grid = params.alpha * np.arange(params.k_sites)
        deltas = np.sort(wrap_delta(grid - cfg.integral, params.range))
        marker_p = train.closed_form_error_prob(deltas, params)
        rows += [
            [float(d / params.alpha), float(p), "outcome"]
            for d, p in zip(deltas, marker_p)
        ]
    else:
        rows = [[float(x), float(p)] for x, p in zip(xs, probs)]
    return csv_text(header, rows)


def _cmd_compare(cfg: RunConfig) -> str:
    params = _make_params_checked(cfg.n_qubits, cfg.alpha)
    field = cfg.field
    if field is None:
        if cfg.integral < 0:
            raise ValueError(
                f"integral {cfg.integral} outside [0, {params.range}); the "
                "protocols only resolve it modulo alpha*K"
            )
        field = FieldProfile.constant(cfg.integral, 0.0, 1.0)
    comparison = compare_strategies(field, params, cfg.trials, cfg.seed)
    if cfg.fmt == "csv":
        header = ["strategy", "source", "std_dev", "mean_abs"]
        rows = [
            [r["strategy"], r["source"], r["std_dev"], r["mean_abs"]]
            for r in comparison.csv_rows()
        ]
        return csv_text(header, rows)
    return canonical_json(comparison.to_dict())


def _cmd_marks(cfg: RunConfig) -> str:
    if cfg.count is not None:
        # deterministic synthetic tape, one mark per unit of path
        span = float(max(cfg.count, 1))
        tape = MarkTape(
            marks=tuple(i + 0.5 for i in range(cfg.count)), support=(0.0, span)
        )
    else:
        tape = generate_marks(cfg.field, cfg.alpha, cfg.seed)
    result = ripple_count_marks(tape, cfg.n_qubits)
    modulus = 1 << cfg.n_qubits
    lines = [f"marks: {result.initial_marks}"]
    for i, (bit, left) in enumerate(zip(result.bits, result.survivors), start=1):
        lines.append(f"pass {i}: bit={bit} surviving={left}")
    lines.append(f"bits lsb-first: {result.lsb_first()}")
    lines.append(f"bits msb-first: {result.msb_first()}")
    lines.append(f"count mod {modulus}: {result.value()}")
    lines.append(f"wrapped: {'yes' if result.initial_marks >= modulus else 'no'}")
    return "\n".join(lines) + "\n"


def _cmd_strings(cfg: RunConfig) -> str:
    if cfg.n_qubits < 1:
        raise UsageError("--n must be >= 1")
    sset = special_strings(cfg.n_qubits)
    # sign-pattern states are real, so the Gram matrix is too
    gram = string_gram_matrix(sset).real
    decoded = None
    if cfg.imprint is not None:
        if not 1 <= cfg.imprint <= sset.n + 1:
            raise UsageError(f"--imprint must be in 1..{sset.n + 1}")
        params = make_params(sset.n, 1.0)
        state = imprint_string(
            train.prepare_uniform_state(params), sset.strings[cfg.imprint - 1]
        )
        decoded = decode_string(state, sset)
    if cfg.fmt == "json":
        doc = {
            "n": sset.n,
            "k": sset.k_bits,
            "strings": list(sset.strings),
            "gram": [[float(v) for v in row] for row in gram],
            "decoded": decoded,
        }
        return canonical_json(doc)
    lines = [f"strings n={sset.n} k={sset.k_bits}"]
    lines.extend(sset.strings)
    lines.append("gram:")
    for row in gram:
        lines.append(" ".join(float_repr(float(v)) for v in row))
    if decoded is not None:
        lines.append(f"decoded: {decoded}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# argument wiring


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="phasetrain",
        description="Field-integral measurement protocols and baselines.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_alpha=True):
        p.add_argument("--n", type=int, required=True, metavar="N",
                       help="number of outcome bits (K = 2**N sites)")
        if with_alpha:
            p.add_argument("--alpha", type=float, default=1.0,
                           help="grid spacing of measurable values")
        p.add_argument("--out", default="-", metavar="PATH",
                       help="output file, '-' for stdout")

    p = sub.add_parser("measure", help="run the protocol on one integral")
    add_common(p)
    p.add_argument("--integral", type=float, help="true integral value")
    p.add_argument("--field", metavar="SPEC",
                   help="field spec (constant:v:A:B, gaussian:a:mu:s:A:B, table:path)")
    p.add_argument("--trials", type=int, default=0,
                   help="number of sampled outcomes to include")
    p.add_argument("--seed", type=int, help="rng seed (required when sampling)")

    p = sub.add_parser("figure2",
                       help="emit the error-probability curve as CSV")
    add_common(p)
    p.add_argument("--delta-min", type=float, dest="delta_min",
                   help="lower error bound in units of alpha (default -K/2)")
    p.add_argument("--delta-max", type=float, dest="delta_max",
                   help="upper error bound in units of alpha (default K/2)")
    p.add_argument("--points", type=int, default=0,
                   help="grid points (default: 8 per unit of alpha)")
    p.add_argument("--integral", type=float,
                   help="also mark the discrete outcomes of this integral")

    p = sub.add_parser("compare", help="quantum versus counter statistics")
    add_common(p)
    p.add_argument("--integral", type=float, help="true integral value")
    p.add_argument("--field", metavar="SPEC", help="field spec")
    p.add_argument("--trials", type=int, required=True,
                   help="Monte Carlo trials per strategy (>= 1000)")
    p.add_argument("--seed", type=int, help="rng seed (required)")
    p.add_argument("--format", choices=("json", "csv"), default="json",
                   dest="fmt", help="artifact format")

    p = sub.add_parser("marks", help="mark tally with sequential bits")
    add_common(p)
    p.add_argument("--count", type=int, help="deterministic mark count")
    p.add_argument("--field", metavar="SPEC", help="field spec for random marks")
    p.add_argument("--seed", type=int, help="rng seed (required with --field)")

    p = sub.add_parser("strings", help="special string set and decoding")
    add_common(p, with_alpha=False)
    p.add_argument("--imprint", type=int, metavar="IDX",
                   help="imprint member IDX and decode it")
    p.add_argument("--format", choices=("text", "json"), default="text",
                   dest="fmt", help="artifact format")

    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    command = args.command
    field = parse_field_spec(args.field) if getattr(args, "field", None) else None

    if command in ("measure", "compare"):
        if (args.integral is None) == (field is None):
            raise UsageError(f"{command} needs exactly one of --integral / --field")
    if command == "measure" and args.trials:
        if args.trials < 0:
            raise UsageError("--trials must be nonnegative")
        if args.seed is None:
            raise UsageError(_STOCHASTIC_HINT)
    if command == "compare":
        if args.trials < 1000:
            raise UsageError(
                f"--trials {args.trials} is too small for stable moments; "
                "use at least 1000"
            )
        if args.seed is None:
            raise UsageError(_STOCHASTIC_HINT)
    if command == "marks":
        if (args.count is None) == (field is None):
            raise UsageError("marks needs exactly one of --count / --field")
        if args.count is not None and args.count < 0:
            raise UsageError("--count must be nonnegative")
        if field is not None and args.seed is None:
            raise UsageError(_STOCHASTIC_HINT)
        if args.n < 1:
            raise UsageError("--n must be >= 1")

    return RunConfig(
        command=command,
        n_qubits=args.n,
        alpha=getattr(args, "alpha", 1.0),
        integral=getattr(args, "integral", None),
        field=field,
        trials=getattr(args, "trials", 0),
        seed=getattr(args, "seed", None),
        out=args.out,
        fmt=getattr(args, "fmt", "json"),
        delta_min=getattr(args, "delta_min", None),
        delta_max=getattr(args, "delta_max", None),
        points=getattr(args, "points", 0),
        count=getattr(args, "count", None),
        imprint=getattr(args, "imprint", None),
    )


_DISPATCH = {
    "measure": _cmd_measure,
    "figure2": _cmd_figure2,
    "compare": _cmd_compare,
    "marks": _cmd_marks,
    "strings": _cmd_strings,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config_from_args(args)
        text = _DISPATCH[cfg.command](cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        # numeric-domain problems: invalid field data, out-of-range integral
        print(f"error: {exc}", file=sys.stderr)
        return 3
    _write(text, cfg.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
