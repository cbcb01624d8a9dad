"""Command line: parse f, analyse, solve, synthesise, verify, write artifacts.

Example::

    conewave --dim 2 --f "t*x1^2 + t^2*x2 + x1*x2^2" --convention trig-paper \\
        --out-coeffs coeffs.json --out-residual residual.json
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from .analysis import analyze_exact, analyze_quadrature
from .conebasis import BasisSpec, Q, harmonic_scale
from .expr import ExprError, parse_poly
from .harmonics import CONVENTIONS, ORTHONORMAL
from .polyalg import MultiPoly, _grlex_key
from .wavesolver import residual_report, solve_coefficients, solve_coefficients_recursive, synthesize

__all__ = ["RunConfig", "build_parser", "main", "run"]

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2


@dataclass
class RunConfig:
    f: str
    d: int = 2
    c: Fraction = Fraction(1)
    mode: str = "exact"
    convention: str = ORTHONORMAL
    N: int | None = None
    probes: int = 50
    seed: int = 0
    out_coeffs: Path | None = None
    out_solution: Path | None = None
    out_residual: Path | None = None
    sample_grid: Path | None = None
    grid_t: tuple[float, float, int] = (0.0, 5.0, 11)
    grid_x: int = 11

    def __post_init__(self):
        if self.d not in (1, 2, 3):
            raise ValueError("--dim must be 1, 2 or 3")
        if self.c <= 0:
            raise ValueError("--speed must be positive")
        if self.N is not None and self.N < 0:
            raise ValueError("--degree must be >= 0")
        if self.mode not in ("exact", "float"):
            raise ValueError("--mode must be exact or float")


def _float_expansion(series) -> str:
    """Monomial expansion of a float series, coefficients to 17 significant digits."""
    spec = series.spec
    acc: dict[tuple[int, ...], float] = {}
    for idx, v in series.coeffs.items():
        w = float(v) * float(harmonic_scale(idx, spec))
        for exps, c in Q(idx, spec).items():
            acc[exps] = acc.get(exps, 0.0) + w * float(c)
    names = ["t"] + [f"x{i + 1}" for i in range(spec.d)]
    parts = []
    # same term order and variable order as the exact printer
    for exps in sorted(acc, key=_grlex_key):
        c = acc[exps]
        if c == 0.0:
            continue
        ordered = (exps[-1],) + tuple(exps[:-1])
        mono = "*".join(n if e == 1 else f"{n}^{e}" for n, e in zip(names, ordered) if e)
        parts.append(f"{c:.17g}" + (f"*{mono}" if mono else ""))
    return " + ".join(parts).replace("+ -", "- ") or "0"


def _grid_samples(u, d: int, c: float, grid_t, grid_x: int):
    t0, t1, nt = grid_t
    ts = np.linspace(t0, t1, int(nt))
    xs = np.linspace(-c * t1, c * t1, grid_x)
    axes = np.meshgrid(*([xs] * d), ts, indexing="ij")
    X = np.stack([a.ravel() for a in axes[:-1]], axis=1)
    T = axes[-1].ravel()
    inside = np.linalg.norm(X, axis=1) <= c * T + 1e-12
    X, T = X[inside], T[inside]
    vals = u.evaluate_array(X, T) if isinstance(u, MultiPoly) else u(X, T)
    return X, T, vals


def run(config: RunConfig, out=None) -> int:
    out = sys.stdout if out is None else out
    f = parse_poly(config.f, config.d)
    spec = BasisSpec(config.d, 0, config.c, config.convention)
    N = config.N if config.N is not None else max(f.degree, 0)
    if config.mode == "exact":
        fhat = analyze_exact(f, spec, N)
    else:
        fhat = analyze_quadrature(f, spec, N, max(f.degree, 0))
    series = solve_coefficients(fhat)
    check = solve_coefficients_recursive(fhat)
    if config.mode == "exact":
        recursion_ok = check.coeffs == series.coeffs
    else:
        recursion_ok = check.coeffs.max_abs_difference(series.coeffs) <= 1e-12 * max(
            1.0, max((abs(float(v)) for _, v in series.coeffs.items()), default=0.0)
        )
    report = residual_report(f, series, config.probes, config.seed)
    u = synthesize(series)

    if config.mode == "exact":
        closed = str(u)
    else:
        closed = _float_expansion(series)
    print(f"f = {f}", file=out)
    print(f"u = {closed}", file=out)
    print(f"U = exp(-t)*({closed})", file=out)
    print(f"residual: {report.to_json()}", file=out)
    print(f"closed form equals recursion: {recursion_ok}", file=out)

    if config.out_coeffs:
        Path(config.out_coeffs).write_text(series.to_json(indent=1) + "\n")
    if config.out_solution:
        Path(config.out_solution).write_text(
            json.dumps({"mode": config.mode, "d": config.d, "c": str(config.c), "u": closed}, indent=1) + "\n"
        )
    if config.out_residual:
        Path(config.out_residual).write_text(report.to_json(indent=1) + "\n")
    if config.sample_grid:
        X, T, vals = _grid_samples(u, config.d, float(config.c), config.grid_t, config.grid_x)
        with open(config.sample_grid, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow([f"x{i + 1}" for i in range(config.d)] + ["t", "u", "U"])
            for x, t, v in zip(X, T, vals):
                w.writerow([*(f"{xi:.17g}" for xi in x), f"{t:.17g}", f"{v:.17g}", f"{np.exp(-t) * v:.17g}"])

    ok = report.passed and recursion_ok
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def _grid_t(text: str):
    try:
        a, b, n = text.split(":")
        return float(a), float(b), int(n)
    except ValueError as exc:
        raise argparse.ArgumentTypeError("expected tmin:tmax:count") from exc


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="conewave",
        description="Solve (d_tt - c^2 Lap) U = e^{-t} f on the cone ||x|| <= c t by orthogonal series.",
    )
    p.add_argument("--f", required=True, help='forcing polynomial, e.g. "t*x1^2 + x2"')
    p.add_argument("--dim", type=int, default=2, choices=(1, 2, 3))
    p.add_argument("--speed", type=_rational, default=Fraction(1), help="wave speed c (rational or decimal)")
    p.add_argument("--mode", choices=("exact", "float"), default="exact")
    p.add_argument("--degree", type=int, default=None, help="truncation degree N (default deg f)")
    p.add_argument("--convention", choices=CONVENTIONS, default=ORTHONORMAL)
    p.add_argument("--probes", type=int, default=50, help="finite-difference probe points")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-coeffs", type=Path, help="JSON with f_hat and u coefficient sets")
    p.add_argument("--out-solution", type=Path, help="JSON with the closed form of u")
    p.add_argument("--out-residual", type=Path, help="residual report JSON")
    p.add_argument("--sample-grid", type=Path, help="CSV of x, t, u, U on a grid inside the cone")
    p.add_argument("--grid-t", type=_grid_t, default=(0.0, 5.0, 11), help="tmin:tmax:count (default 0:5:11)")
    p.add_argument("--grid-x", type=int, default=11, help="points per spatial axis (default 11)")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = RunConfig(
            f=args.f,
            d=args.dim,
            c=args.speed,
            mode=args.mode,
            convention=args.convention,
            N=args.degree,
            probes=args.probes,
            seed=args.seed,
            out_coeffs=args.out_coeffs,
            out_solution=args.out_solution,
            out_residual=args.out_residual,
            sample_grid=args.sample_grid,
            grid_t=args.grid_t,
            grid_x=args.grid_x,
        )
        return run(config)
    except ExprError as exc:
        print(f"conewave: parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"conewave: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
