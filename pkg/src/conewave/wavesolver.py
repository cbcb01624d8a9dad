"""Coefficient-transfer solver for (d_tt - c^2 Lap) U = e^{-t} f on the cone.

With U = e^{-t} u the equation becomes L u = f for the conjugated operator
L = d_tt - 2 d_t + 1 - c^2 Lap.  On the mu = -1 basis

    L Q^{n,-1}_{m,j,l} = a_{m,j} (Q^{n,0}_{m,j,l} - b_{m,n} Q^{n,0}_{m-2,j-1,l}),

so matching mu = 0 coefficients gives, for each fixed (n, l, m - 2j), a
triangular system solved in closed form:

    u^n_{m,j,l} = (1/a_{m,j}) sum_i ((n-m)! / (n-m-2i)!) f_hat^n_{m+2i,j+i,l}.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .analysis import CoefficientSet, series_evaluator, series_poly
from .conebasis import BasisSpec, ConeIndex, a_mj, b_mn, is_admissible
from .polyalg import MultiPoly, as_fraction, conjugated_wave

__all__ = [
    "FD_TOLERANCE",
    "ResidualReport",
    "SolutionSeries",
    "amn",
    "amn_bound_check",
    "laplace_apply_basis",
    "rescale_speed",
    "residual_report",
    "sample_probes",
    "solve_coefficients",
    "solve_coefficients_recursive",
    "synthesize",
    "wave_apply_basis",
]

FD_TOLERANCE = 1e-6


def _a_floor(d: int) -> Fraction:
    # a_{m,j} >= 1/2 for d >= 2; in d = 1 the minimum is a_{2,1} = 1/3
    return Fraction(1, 3) if d == 1 else Fraction(1, 2)


def _checked_a(m: int, j: int, d: int) -> Fraction:
    a = a_mj(m, j, d)
    if a < _a_floor(d):
        raise ArithmeticError(f"a_{{{m},{j}}} = {a} below the expected floor for d={d}")
    return a


# -- actions on single basis elements ------------------------------------------------


def wave_apply_basis(idx, d: int) -> list[tuple[ConeIndex, Fraction]]:
    """L Q^{n,-1}_{m,j,l} as (mu = 0 index, coefficient) pairs."""
    n, m, j, ell = ConeIndex(*idx)
    a = a_mj(m, j, d)
    out = [(ConeIndex(n, m, j, ell), a)]
    if m >= 2 and j >= 1:
        out.append((ConeIndex(n, m - 2, j - 1, ell), -a * b_mn(m, n)))
    return out


def laplace_apply_basis(idx, d: int) -> list[tuple[ConeIndex, Fraction]]:
    """Lap_x Q^{n,-1}_{m,j,l} as a single mu = 1 term; empty when j = 0."""
    n, m, j, ell = ConeIndex(*idx)
    if j == 0:
        return []
    coef = 4 * (m - j + Fraction(d - 2, 2)) ** 2
    return [(ConeIndex(n - 2, m - 2, j - 1, ell), coef)]


# -- solver ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SolutionSeries:
    """Coefficients of u on the mu = -1 basis, with the forcing they came from."""

    coeffs: CoefficientSet
    source: CoefficientSet

    @property
    def spec(self) -> BasisSpec:
        return self.coeffs.spec

    def to_json(self, **kwargs) -> str:
        return json.dumps({"f_hat": self.source.to_dict(), "u": self.coeffs.to_dict()}, **kwargs)


def _check_source(fhat: CoefficientSet) -> None:
    if fhat.spec.mu != 0:
        raise ValueError("forcing coefficients must be on the mu = 0 basis")


def solve_coefficients(fhat: CoefficientSet) -> SolutionSeries:
    """Closed-form coefficients of u; each index is independent of the others."""
    _check_source(fhat)
    d, N = fhat.spec.d, fhat.N
    values = {}
    for n, m, j, ell in _targets(fhat):
        acc = 0
        for i in range((n - m) // 2 + 1):
            v = fhat[(n, m + 2 * i, j + i, ell)]
            if v:
                acc = acc + v * (math.factorial(n - m) // math.factorial(n - m - 2 * i))
        if acc:
            values[ConeIndex(n, m, j, ell)] = acc / _checked_a(m, j, d)
    return SolutionSeries(CoefficientSet(fhat.spec.with_mu(-1), N, values), fhat)


def solve_coefficients_recursive(fhat: CoefficientSet) -> SolutionSeries:
    """Back substitution from m = n downwards along each chain.

    a_{m,j} u_{m,j} = f_hat_{m,j} + b_{m+2,n} a_{m+2,j+1} u_{m+2,j+1},
    seeded by u_{n,j} = f_hat_{n,j} / a_{n,j} and u_{n-1,j} = f_hat_{n-1,j} / a_{n-1,j}.
    """
    _check_source(fhat)
    d, N = fhat.spec.d, fhat.N
    scaled = {}  # a_{m,j} u_{m,j}
    values = {}
    for n in range(N + 1):
        for m in range(n, -1, -1):
            for j in range(m // 2 + 1):
                for ell in range(1, 2 * (m - 2 * j) + 2):
                    idx = ConeIndex(n, m, j, ell)
                    if not is_admissible(idx, d):
                        continue
                    v = fhat[idx]
                    if m + 2 <= n:
                        prev = scaled.get(ConeIndex(n, m + 2, j + 1, ell), 0)
                        if prev:
                            v = v + b_mn(m + 2, n) * prev
                    if v:
                        scaled[idx] = v
                        values[idx] = v / _checked_a(m, j, d)
    return SolutionSeries(CoefficientSet(fhat.spec.with_mu(-1), N, values), fhat)


def _targets(fhat: CoefficientSet):
    """Indices of u that can be nonzero: (n, m - 2i, j - i, l) for f_hat keys."""
    seen = set()
    for n, m, j, ell in fhat:
        for i in range(j + 1):
            seen.add(ConeIndex(n, m - 2 * i, j - i, ell))
    return sorted(seen)


def synthesize(series: SolutionSeries):
    """u as an exact MultiPoly when the coefficients are exact, else a float evaluator."""
    if series.coeffs.is_exact:
        return series_poly(series.coeffs)
    return series_evaluator(series.coeffs)


# -- residuals ------------------------------------------------------------------------


@dataclass(frozen=True)
class ResidualReport:
    exact_residual_zero: bool | None
    max_fd_residual: float
    probes: int
    residual: MultiPoly | None = None

    @property
    def passed(self) -> bool:
        if self.exact_residual_zero is False:
            return False
        return self.max_fd_residual <= FD_TOLERANCE

    def to_dict(self) -> dict:
        return {
            "exact_residual_zero": self.exact_residual_zero,
            "max_fd_residual": self.max_fd_residual,
            "probes": self.probes,
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


def sample_probes(d: int, count: int, seed: int = 0, c: float = 1.0):
    """Points with ||x|| <= 0.9 c t and t in [0.5, 10], drawn from a seeded generator."""
    rng = np.random.default_rng(seed)
    T = rng.uniform(0.5, 10.0, count)
    if d == 1:
        X = (rng.uniform(-0.9, 0.9, count) * c * T)[:, None]
    else:
        v = rng.normal(size=(count, d))
        v /= np.linalg.norm(v, axis=1, keepdims=True)
        r = 0.9 * rng.uniform(0.0, 1.0, count) ** (1.0 / d)
        X = v * (c * T * r)[:, None]
    return X, T


def _fd_residual(u, f, X, T, c: float, h: float) -> np.ndarray:
    """(d_tt - c^2 Lap)(e^{-t} u) - e^{-t} f by second-order central differences.

    Stencil values are computed in extended precision when u supports it, so
    the O(eps/h^2) rounding term stays well below the O(h^2) truncation term.
    """
    ld = np.longdouble
    X = np.asarray(X, dtype=ld)
    T = np.asarray(T, dtype=ld)
    h = ld(h)

    def U(XX, TT):
        return np.exp(-TT) * _as_values(u, XX, TT, ld)

    d = X.shape[1]
    centre = U(X, T)
    utt = (U(X, T + h) - 2 * centre + U(X, T - h)) / h**2
    lap = np.zeros_like(T)
    for i in range(d):
        e = np.zeros(d, dtype=ld)
        e[i] = h
        lap += (U(X + e, T) - 2 * centre + U(X - e, T)) / h**2
    res = utt - ld(c) ** 2 * lap - np.exp(-T) * _as_values(f, X, T, ld)
    return res.astype(float)


def _as_values(g, X, T, dtype=float) -> np.ndarray:
    if isinstance(g, MultiPoly):
        return g.evaluate_array(X, T, dtype)
    try:
        return np.asarray(g(X, T, dtype=dtype), dtype=dtype)
    except TypeError:
        return np.asarray(g(np.asarray(X, float), np.asarray(T, float)), dtype=dtype)


def residual_report(f, series: SolutionSeries, probes: int = 50, seed: int = 0, h: float = 1e-4) -> ResidualReport:
    """Exact residual L_c u - f (when both are exact) and the FD residual at probes.

    ``f`` is the forcing in physical coordinates at the series' wave speed.
    """
    spec = series.spec
    u = synthesize(series)
    exact_zero = None
    residual = None
    if isinstance(u, MultiPoly) and isinstance(f, MultiPoly):
        residual = conjugated_wave(u, spec.c) - f
        exact_zero = residual.is_zero()
    X, T = sample_probes(spec.d, probes, seed, float(spec.c))
    fd = float(np.max(np.abs(_fd_residual(u, f, X, T, float(spec.c), h)))) if probes else 0.0
    return ResidualReport(exact_zero, fd, probes, residual)


# -- coefficient bound ----------------------------------------------------------------


def amn(m: int, n: int) -> Fraction:
    """A_{m,n} = sum_i (-(n-m))_{2i} / (n+m)_{2i}, evaluated by nested integer Horner."""
    k = n - m
    if k < 0:
        raise ValueError("need m <= n")
    imax = k // 2
    P, Qd = 1, 1
    for i in range(imax, 0, -1):
        # ratio of term i to term i-1
        a = (-k + 2 * i - 2) * (-k + 2 * i - 1)
        b = (n + m + 2 * i - 2) * (n + m + 2 * i - 1)
        P, Qd = b * Qd + a * P, b * Qd
    return Fraction(P, Qd)


def amn_bound_check(Nmax: int) -> tuple[Fraction, tuple[int, int]]:
    """Largest A_{m,n} over 0 <= m <= n <= Nmax and where it occurs."""
    if Nmax < 1:
        raise ValueError("Nmax must be >= 1")
    best, where = None, None
    for n in range(Nmax + 1):
        for m in range(n + 1):
            v = amn(m, n)
            if best is None or v > best:
                best, where = v, (m, n)
    return best, where


# -- wave speed -----------------------------------------------------------------------


def rescale_speed(obj, c):
    """Apply x -> x / c.

    A MultiPoly p(x, t) becomes p(x/c, t).  A CoefficientSet or SolutionSeries
    keeps its coefficients and has its basis dilated, which is the same map on
    the synthesised functions.
    """
    c = as_fraction(c)
    if c <= 0:
        raise ValueError("wave speed must be positive")
    if isinstance(obj, MultiPoly):
        if c == 1:
            return obj
        return obj.scale_vars([1 / c] * obj.dim + [1])
    if isinstance(obj, CoefficientSet):
        return obj.with_spec(obj.spec.with_c(obj.spec.c * c))
    if isinstance(obj, SolutionSeries):
        return SolutionSeries(rescale_speed(obj.coeffs, c), rescale_speed(obj.source, c))
    raise TypeError(f"cannot rescale {type(obj).__name__}")
