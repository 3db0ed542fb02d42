"""Command-line front end: bound/exponent curve generation, figure
reproduction, code checks, capacities; everything is emitted as CSV.

Exit codes: 0 success, 2 configuration error, 3 enumeration-size error,
4 numeric failure.
"""
from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .bounds import (
    THETA_LIMIT,
    awgn_bound_closed_form,
    awgn_map_error,
    fano_bounds,
    map_error_exact,
    maximize_over_alpha,
    tilted_error_bound_curve,
    tilted_error_bound_limit,
    _tilted_log_posteriors,
)
from .channels import (
    BlockCode,
    Dmc,
    bsc_capacity,
    builtin_channel,
    dmc_capacity,
    load_channel_file,
    z_capacity,
)
from .codes import code_error_lower_bound, exact_code_error, ml_estimate_unique
from .errors import InvalidParameterError, OptimizerError, SizeCapError
from .prob import JointFiniteModel, Pmf
from .reliability import exponent_lower_bound, sphere_packing

RATE_GRID_POINTS = 64
_FIGURE_NOTE = (
    "figure ids: 1 ternary bound vs alpha (theta 1,20,100 + reference lines); "
    "2 ternary best-alpha bound vs theta on [1,20]; "
    "3 Gaussian-noise bound vs alpha (theta 1,10,100, sigma 0.429858); "
    "4 bsc(0.01) exponent curves F(R,1), F(R,2), sphere packing; "
    "5 z(0.01) exponent curves F(R,theta) for theta 1,3,10,100, sphere packing"
)


class ConfigError(ValueError):
    """Bad command-line configuration."""


def _fmt(value) -> str:
    if value is None or value == "":
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        if value == math.inf:
            return "inf"
        return format(value, ".9g")
    return str(value)


def _write_csv(out_path, metadata: dict, header: list[str], rows: list[list]):
    lines = [f"# {key}: {val}" for key, val in metadata.items()]
    lines.append(",".join(header))
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    text = "\n".join(lines) + "\n"
    if out_path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(out_path).write_text(text, encoding="utf-8")


def parse_grid(spec: str) -> np.ndarray:
    """Parse 'start:stop:step' into an inclusive grid (endpoints within 1e-12)."""
    parts = spec.split(":")
    if len(parts) != 3:
        raise ConfigError(f"grid must look like start:stop:step, got {spec!r}")
    try:
        start, stop, step = (float(t) for t in parts)
    except ValueError as exc:
        raise ConfigError(f"non-numeric grid component in {spec!r}") from exc
    if not (start < stop and step > 0):
        raise ConfigError(f"grid needs start < stop and step > 0, got {spec!r}")
    count = int(math.floor((stop - start) / step + 1e-12))
    values = [start + k * step for k in range(count + 1)]
    if abs(values[-1] - stop) <= 1e-12:
        values[-1] = stop
    return np.array(values)


def parse_theta_list(spec: str) -> list[float]:
    thetas = []
    for token in spec.split(","):
        token = token.strip()
        if token == "limit":
            thetas.append(THETA_LIMIT)
            continue
        try:
            value = float(token)
        except ValueError as exc:
            raise ConfigError(f"bad theta value {token!r}") from exc
        if math.isnan(value) or value < 1:
            raise ConfigError(f"theta must be >= 1 or 'limit', got {token!r}")
        thetas.append(value)
    if not thetas:
        raise ConfigError("empty theta list")
    return thetas


def _resolve_channel(args) -> tuple[str, Dmc | None]:
    """Returns (description, dmc); dmc is None for the Gaussian-noise model."""
    kind = args.channel
    if kind == "awgn":
        if args.sigma is None:
            raise ConfigError("awgn channel needs --sigma")
        return f"awgn(sigma={args.sigma:g})", None
    if kind == "bsc":
        _need(args.eps, "--eps")
        return f"bsc({args.eps:g})", builtin_channel("bsc", eps=args.eps)
    if kind == "bec":
        _need(args.eps, "--eps")
        return f"bec({args.eps:g})", builtin_channel("bec", eps=args.eps)
    if kind == "z":
        _need(args.eps, "--eps")
        return f"z({args.eps:g})", builtin_channel("z", eps=args.eps)
    if kind == "ternary":
        if args.v1 is None or args.v2 is None:
            raise ConfigError("ternary channel needs --v1 and --v2")
        return f"ternary({args.v1:g},{args.v2:g})", builtin_channel(
            "ternary", v1=args.v1, v2=args.v2
        )
    path = Path(kind)
    if not path.exists():
        raise ConfigError(f"unknown channel kind or missing file: {kind!r}")
    return f"file:{path.name}", load_channel_file(path)


def _need(value, flag: str):
    if value is None:
        raise ConfigError(f"this channel needs {flag}")


def _resolve_prior(spec: str, size: int) -> Pmf:
    if spec == "uniform":
        return Pmf.uniform(size)
    try:
        p = float(spec)
    except ValueError:
        path = Path(spec)
        if not path.exists():
            raise ConfigError(f"prior must be 'uniform', a number, or a file: {spec!r}")
        tokens = [
            t
            for ln in path.read_text(encoding="utf-8").splitlines()
            if not ln.strip().startswith("#")
            for t in ln.split()
        ]
        probs = [float(t) for t in tokens]
        if len(probs) != size:
            raise ConfigError(f"prior file has {len(probs)} entries, channel needs {size}")
        return Pmf.from_probs(probs)
    if not 0 < p < 1:
        raise ConfigError(f"scalar prior must be in (0, 1), got {p}")
    if size != 2:
        raise ConfigError("scalar prior only applies to binary-input channels")
    return Pmf.from_probs([1 - p, p])


def _resolve_code(spec: str) -> BlockCode:
    if spec.startswith("repetition:"):
        try:
            n = int(spec.split(":", 1)[1])
        except ValueError as exc:
            raise ConfigError(f"bad repetition length in {spec!r}") from exc
        if n < 1:
            raise ConfigError("repetition length must be >= 1")
        return BlockCode.repetition(n)
    path = Path(spec)
    if not path.exists():
        raise ConfigError(f"unknown code spec or missing file: {spec!r}")
    return BlockCode.from_file(path)


def _breakpoints(model: JointFiniteModel, theta: float) -> np.ndarray:
    tilted = _tilted_log_posteriors(model, theta)
    vals = np.exp(tilted[model.log_joint > -math.inf])
    return np.unique(vals[(vals >= 0.0) & (vals <= 1.0)])


def _alpha_grid_for(model, theta: float, explicit: str | None) -> np.ndarray:
    if explicit is not None:
        return parse_grid(explicit)
    base = np.linspace(0.0, 1.0, 101)
    if model is None or theta == THETA_LIMIT:
        return base
    return np.unique(np.concatenate([base, _breakpoints(model, theta)]))


# ----------------------------------------------------------------------
# subcommands
# ----------------------------------------------------------------------

def run_bound(args) -> None:
    description, dmc = _resolve_channel(args)
    thetas = parse_theta_list(args.theta)
    meta = {
        "artifact": f"tiltbound {__version__}",
        "subcommand": "bound",
        "channel": description,
        "prior": args.prior,
        "theta": args.theta,
        "alpha_grid": args.alpha_grid or "default(101 uniform + breakpoints)",
    }
    rows: list[list] = []
    if dmc is None:  # Gaussian-noise closed form
        if args.prior != "uniform":
            raise ConfigError("the awgn model is defined for the uniform prior")
        for theta in thetas:
            alphas = _alpha_grid_for(None, theta, args.alpha_grid)
            if theta == THETA_LIMIT:
                raise ConfigError("theta=limit is not available for the awgn model")
            for a in alphas:
                rows.append([a, theta, awgn_bound_closed_form(args.sigma, theta, a), "bound"])
        rows.append(["", "", awgn_map_error(args.sigma), "exact_pe"])
    else:
        prior = _resolve_prior(args.prior, dmc.input_size)
        model = JointFiniteModel(prior.log_mass, dmc.log_rows)
        for theta in thetas:
            alphas = _alpha_grid_for(model, theta, args.alpha_grid)
            if theta == THETA_LIMIT:
                values = [
                    tilted_error_bound_limit(model, min(a, 1.0 - 1e-12), with_prefactor=True)
                    if a < 1.0
                    else 0.0
                    for a in alphas
                ]
            else:
                values = tilted_error_bound_curve(model, theta, alphas)
            rows.extend([a, theta, v, "bound"] for a, v in zip(alphas, values))
        rows.append(["", "", map_error_exact(model), "exact_pe"])
        if model.num_inputs >= 2:
            fano, weak = fano_bounds(model)
            rows.append(["", "", fano, "fano"])
            rows.append(["", "", weak, "weakened_fano"])
    _write_csv(args.out, meta, ["alpha", "theta", "bound", "kind"], rows)


def _rate_grid(capacity: float) -> np.ndarray:
    return np.array([k * capacity / (RATE_GRID_POINTS + 1) for k in range(1, RATE_GRID_POINTS + 1)])


def run_figure(args) -> None:
    fig = args.id
    meta = {"artifact": f"tiltbound {__version__}", "subcommand": f"figure {fig}"}
    if fig == 1:
        model = JointFiniteModel(
            Pmf.uniform(3).log_mass, builtin_channel("ternary", v1=0.27, v2=0.33).log_rows
        )
        meta["channel"] = "ternary(0.27,0.33)"
        rows = []
        for theta in (1.0, 20.0, 100.0):
            alphas = _alpha_grid_for(model, theta, None)
            for a, v in zip(alphas, tilted_error_bound_curve(model, theta, alphas)):
                rows.append(["bound", theta, a, v])
        fano, weak = fano_bounds(model)
        rows.append(["exact_pe", "", "", map_error_exact(model)])
        rows.append(["fano", "", "", fano])
        rows.append(["weakened_fano", "", "", weak])
        _write_csv(args.out, meta, ["series", "theta", "alpha", "value"], rows)
    elif fig == 2:
        model = JointFiniteModel(
            Pmf.uniform(3).log_mass, builtin_channel("ternary", v1=0.27, v2=0.33).log_rows
        )
        meta["channel"] = "ternary(0.27,0.33)"
        meta["theta_grid"] = "1:20:0.25"
        rows = []
        base_alpha, base_value = maximize_over_alpha(model, 1.0)
        for theta in parse_grid("1:20:0.25"):
            _, value = maximize_over_alpha(model, float(theta))
            rows.append(["maximized_bound", theta, value])
        rows.append(["theta1_reference", 1.0, base_value])
        rows.append(["theta1_best_alpha", 1.0, base_alpha])
        _write_csv(args.out, meta, ["series", "theta", "value"], rows)
    elif fig == 3:
        sigma = 0.429858
        meta["channel"] = f"awgn(sigma={sigma})"
        rows = []
        alphas = np.linspace(0.0, 1.0, 101)
        for theta in (1.0, 10.0, 100.0):
            for a in alphas:
                rows.append(["bound", theta, a, awgn_bound_closed_form(sigma, theta, a)])
        rows.append(["exact_pe", "", "", awgn_map_error(sigma)])
        _write_csv(args.out, meta, ["series", "theta", "alpha", "value"], rows)
    elif fig in (4, 5):
        kind = "bsc" if fig == 4 else "z"
        eps = 0.01
        capacity = bsc_capacity(eps) if kind == "bsc" else z_capacity(eps)
        thetas = (1.0, 2.0) if fig == 4 else (1.0, 3.0, 10.0, 100.0)
        meta["channel"] = f"{kind}({eps:g})"
        meta["capacity_nats"] = _fmt(capacity)
        rows = []
        grid = _rate_grid(capacity)
        for theta in thetas:
            for r in grid:
                pt = exponent_lower_bound(kind, eps, float(r), theta)
                rows.append(["exponent_lower_bound", theta, r, pt.value])
        for r in grid:
            rows.append(["sphere_packing", "", r, sphere_packing(kind, eps, float(r)).value])
        _write_csv(args.out, meta, ["series", "theta", "rate", "value"], rows)
    else:
        raise ConfigError(f"figure id must be 1..5, got {fig}")


def run_reliability(args) -> None:
    if args.channel not in ("bsc", "z"):
        raise ConfigError("reliability curves need --channel bsc or z")
    _need(args.eps, "--eps")
    capacity = bsc_capacity(args.eps) if args.channel == "bsc" else z_capacity(args.eps)
    thetas = parse_theta_list(args.theta)
    if any(t == THETA_LIMIT for t in thetas):
        raise ConfigError("theta=limit is not defined for exponent curves")
    grid = parse_grid(args.rate_grid) if args.rate_grid else _rate_grid(capacity)
    if np.any(grid <= 0) or np.any(grid >= capacity):
        raise ConfigError(f"rates must lie strictly inside (0, {capacity:.6g})")
    meta = {
        "artifact": f"tiltbound {__version__}",
        "subcommand": "reliability",
        "channel": f"{args.channel}({args.eps:g})",
        "capacity_nats": _fmt(capacity),
        "theta": args.theta,
    }
    rows = []
    for theta in thetas:
        for r in grid:
            pt = exponent_lower_bound(args.channel, args.eps, float(r), theta)
            rows.append(["exponent_lower_bound", theta, r, pt.value])
    for r in grid:
        rows.append(["sphere_packing", "", r, sphere_packing(args.channel, args.eps, float(r)).value])
    _write_csv(args.out, meta, ["series", "theta", "rate", "value"], rows)


def run_code_check(args) -> None:
    description, dmc = _resolve_channel(args)
    if dmc is None:
        raise ConfigError("code checks need a discrete channel")
    code = _resolve_code(args.code)
    thetas = parse_theta_list(args.theta)
    if any(t == THETA_LIMIT for t in thetas):
        raise ConfigError("theta=limit is not supported by code-check")
    alphas = parse_grid(args.alpha_grid) if args.alpha_grid else np.linspace(0.0, 1.0, 21)
    exact = exact_code_error(code, dmc)
    unique = ml_estimate_unique(code, dmc)
    meta = {
        "artifact": f"tiltbound {__version__}",
        "subcommand": "code-check",
        "channel": description,
        "code": args.code,
        "blocklength": code.blocklength,
        "codewords": code.size,
    }
    rows = []
    for theta in thetas:
        for a in alphas:
            bound = code_error_lower_bound(code, dmc, theta, float(a))
            rows.append([a, theta, bound, exact, bound <= exact + 1e-12, unique])
    _write_csv(
        args.out, meta, ["alpha", "theta", "bound", "exact_pe", "sound", "ml_unique"], rows
    )


def run_capacity(args) -> None:
    description, dmc = _resolve_channel(args)
    if dmc is None:
        raise ConfigError("capacity is computed for discrete channels only")
    meta = {
        "artifact": f"tiltbound {__version__}",
        "subcommand": "capacity",
        "channel": description,
    }
    rows = []
    if args.channel == "bsc":
        rows.append(["closed_form", bsc_capacity(args.eps)])
    elif args.channel == "z":
        rows.append(["closed_form", z_capacity(args.eps)])
    rows.append(["iterative", dmc_capacity(dmc)])
    _write_csv(args.out, meta, ["method", "value"], rows)


# ----------------------------------------------------------------------
# argument parsing
# ----------------------------------------------------------------------

def _add_channel_flags(sub):
    sub.add_argument("--channel", required=True, help="bsc|bec|z|ternary|awgn or a matrix file")
    sub.add_argument("--eps", type=float, help="crossover/erasure probability")
    sub.add_argument("--v1", type=float, help="ternary channel parameter v1")
    sub.add_argument("--v2", type=float, help="ternary channel parameter v2")
    sub.add_argument("--sigma", type=float, help="noise standard deviation (awgn)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tiltbound",
        description="Tilted-posterior error bounds and reliability exponent curves (CSV output).",
        epilog=_FIGURE_NOTE,
    )
    parser.add_argument("--version", action="version", version=f"tiltbound {__version__}")
    subs = parser.add_subparsers(dest="subcommand", required=True)

    p = subs.add_parser("bound", help="error-probability bound vs alpha")
    _add_channel_flags(p)
    p.add_argument("--prior", default="uniform", help="uniform, a scalar P(X=1), or a file")
    p.add_argument("--theta", default="1", help="comma list of tilt exponents, or 'limit'")
    p.add_argument("--alpha-grid", help="start:stop:step (default 101 points + breakpoints)")
    p.add_argument("--out", help="output CSV path ('-' or omitted for stdout)")
    p.set_defaults(func=run_bound)

    p = subs.add_parser("figure", help="emit the data of one built-in figure")
    p.add_argument("id", type=int, help="figure id, 1..5")
    p.add_argument("--out", help="output CSV path ('-' or omitted for stdout)")
    p.set_defaults(func=run_figure)

    p = subs.add_parser("reliability", help="exponent lower bound and sphere packing vs rate")
    _add_channel_flags(p)
    p.add_argument("--theta", default="1", help="comma list of tilt exponents")
    p.add_argument("--rate-grid", help="start:stop:step in nats (default 64 points in (0,C))")
    p.add_argument("--out", help="output CSV path ('-' or omitted for stdout)")
    p.set_defaults(func=run_reliability)

    p = subs.add_parser("code-check", help="finite-blocklength bound vs exact code error")
    _add_channel_flags(p)
    p.add_argument("--code", required=True, help="repetition:N or a code file")
    p.add_argument("--theta", default="1", help="comma list of tilt exponents")
    p.add_argument("--alpha-grid", help="start:stop:step (default 21 uniform points)")
    p.add_argument("--seed", type=int, help="seed for Monte-Carlo estimation helpers")
    p.add_argument("--out", help="output CSV path ('-' or omitted for stdout)")
    p.set_defaults(func=run_code_check)

    p = subs.add_parser("capacity", help="channel capacity in nats")
    _add_channel_flags(p)
    p.add_argument("--out", help="output CSV path ('-' or omitted for stdout)")
    p.set_defaults(func=run_capacity)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except (ConfigError, InvalidParameterError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SizeCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except OptimizerError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    return 0


if __name__ == "__main__":
    sys.exit(main())
