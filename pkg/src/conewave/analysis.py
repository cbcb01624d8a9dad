"""Forward transform: Fourier coefficients of f in the mu = 0 cone basis.

The exact path never expands f * Q.  For a monomial x^alpha t^a and a raw
basis polynomial

    Q = L_{n-m}^{2m+d}(t) * sum_q e_q ||x||^{2q} t^{2j-2q} * Y(x),

every product monomial x^{alpha+gamma} ||x||^{2q} t^b has the same total
t-power-plus-degree a + |alpha| + m + p, so the moment factorises as

    <x^alpha t^a, Q>_0 = sigma(alpha, Y) * T(a + |alpha|) * R(|alpha|)

with a sphere part sigma, a Laguerre part T and a Jacobi part R, each cached.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import harmonics
from .conebasis import (
    BasisSpec,
    ConeIndex,
    Q,
    Q_norm,
    Q_raw_norm,
    enumerate_indices,
    harmonic_scale,
    is_admissible,
)
from .harmonics import ORTHONORMAL
from .orthopoly1d import jacobi_z_coeffs, laguerre_coeffs, poch
from .polyalg import MultiPoly, Surd

__all__ = [
    "CoefficientSet",
    "ExactnessWarning",
    "PRUNE_TOL",
    "analyze_exact",
    "analyze_quadrature",
    "parseval_sum",
    "series_evaluator",
    "series_poly",
    "smoothness_functional",
]

PRUNE_TOL = 1e-13
RECONSTRUCTION_TOL = 1e-9


class ExactnessWarning(UserWarning):
    """The quadrature rule could not resolve f: reconstruction misses on probes."""


# -- value (de)serialisation ----------------------------------------------------


def _value_to_text(v) -> str:
    if isinstance(v, Surd):
        return str(v.simplify())
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(v, int):
        return str(v)
    return repr(float(v))


def _value_from_text(s: str):
    if "sqrt" in s:
        return Surd.parse(s).simplify()
    if any(ch in s for ch in ".eEn"):
        return float(s)
    return Fraction(s)


def _is_exact(v) -> bool:
    return isinstance(v, (int, Fraction, Surd))


def _square(v):
    if isinstance(v, Surd):
        return (v * v).simplify()
    return v * v


@dataclass(frozen=True)
class CoefficientSet:
    """Sparse coefficients on the cone basis fixed by ``spec``, truncated at degree N.

    Absent indices are zero.  Values are Fractions, Surds (orthonormal
    harmonics) or floats.
    """

    spec: BasisSpec
    N: int
    values: dict = field(default_factory=dict)
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        clean = {}
        for idx, v in self.values.items():
            idx = ConeIndex(*idx)
            if not is_admissible(idx, self.spec.d) or idx.n > self.N:
                raise ValueError(f"index {tuple(idx)} not admissible for N={self.N}, d={self.spec.d}")
            if isinstance(v, Surd):
                v = v.simplify()
            if v != 0:
                clean[idx] = v
        object.__setattr__(self, "values", dict(sorted(clean.items())))

    def __getitem__(self, idx):
        return self.values.get(ConeIndex(*idx), 0)

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def items(self):
        return self.values.items()

    @property
    def is_exact(self) -> bool:
        return all(_is_exact(v) for v in self.values.values())

    def as_floats(self) -> dict:
        return {k: float(v) for k, v in self.values.items()}

    def scaled(self, factor) -> "CoefficientSet":
        return CoefficientSet(self.spec, self.N, {k: v * factor for k, v in self.values.items()})

    def with_spec(self, spec: BasisSpec) -> "CoefficientSet":
        return CoefficientSet(spec, self.N, dict(self.values), dict(self.meta))

    def max_abs_difference(self, other: "CoefficientSet") -> float:
        keys = set(self.values) | set(other.values)
        return max((abs(float(self[k]) - float(other[k])) for k in keys), default=0.0)

    # -- JSON ---------------------------------------------------------------
    def to_dict(self) -> dict:
        s = self.spec
        return {
            "spec": {
                "d": s.d,
                "mu": _value_to_text(s.mu),
                "c": _value_to_text(s.c),
                "convention": s.convention,
                "N": self.N,
            },
            "entries": [[*idx, _value_to_text(v)] for idx, v in self.values.items()],
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, data: dict) -> "CoefficientSet":
        h = data["spec"]
        spec = BasisSpec(int(h["d"]), Fraction(h["mu"]), Fraction(h["c"]), h["convention"])
        values = {ConeIndex(*map(int, e[:4])): _value_from_text(e[4]) for e in data["entries"]}
        return cls(spec, int(h["N"]), values)

    @classmethod
    def from_json(cls, text: str) -> "CoefficientSet":
        return cls.from_dict(json.loads(text))


# -- exact path -----------------------------------------------------------------


@lru_cache(maxsize=None)
def _sigma(alpha: tuple[int, ...], d: int, k: int, ell: int) -> Fraction:
    Y = harmonics.basis(d, k, ORTHONORMAL).members[ell - 1]
    total = Fraction(0)
    for exps, c in Y.items():
        total += c * harmonics.sphere_moment(tuple(a + g for a, g in zip(alpha, exps[:-1])))
    return total


@lru_cache(maxsize=None)
def _laguerre_part(nm: int, m: int, d: int, s: int) -> Fraction:
    return sum(
        (l * poch(d + 1, s + p + m) for p, l in enumerate(laguerre_coeffs(nm, Fraction(2 * m + d)))),
        Fraction(0),
    )


@lru_cache(maxsize=None)
def _jacobi_part(j: int, k: int, d: int, g: int) -> Fraction:
    beta = Fraction(2 * k + d - 2, 2)
    return sum(
        (e * Fraction(d, g + 2 * q + k + d) for q, e in enumerate(jacobi_z_coeffs(j, Fraction(0), beta))),
        Fraction(0),
    )


def _raw_moment(f: MultiPoly, idx: ConeIndex, d: int, c: Fraction) -> Fraction:
    """<f(c y, t), Q_raw(y, t)>_0 at unit speed."""
    n, m, j, ell = idx
    k = m - 2 * j
    total = Fraction(0)
    for exps, coef in f.items():
        alpha, a = exps[:-1], exps[-1]
        g = sum(alpha)
        if (g + k) % 2:
            continue
        sig = _sigma(tuple(alpha), d, k, ell)
        if not sig:
            continue
        total += coef * c**g * sig * _laguerre_part(n - m, m, d, a + g) * _jacobi_part(j, k, d, g)
    return total


def analyze_exact(f: MultiPoly, spec: BasisSpec, N: int | None = None) -> CoefficientSet:
    """Exact f_hat = <f, Q>_0 / <Q, Q>_0 for every index with n <= N (default deg f)."""
    if spec.mu != 0:
        raise ValueError("analysis is defined for the mu = 0 basis")
    if f.dim != spec.d:
        raise ValueError(f"f has dim {f.dim}, spec has d={spec.d}")
    if N is None:
        N = max(f.degree, 0)
    unit = spec.with_c(1)
    values = {}
    if not f.is_zero():
        for idx in enumerate_indices(spec, min(N, f.degree)):
            raw = _raw_moment(f, idx, spec.d, spec.c)
            if raw:
                values[idx] = raw / Q_raw_norm(idx, unit) / harmonic_scale(idx, spec)
    return CoefficientSet(spec, N, values)


# -- synthesis --------------------------------------------------------------------


def series_poly(coeffs: CoefficientSet) -> MultiPoly:
    """Exact sum of value * basis element; the result must have rational coefficients."""
    spec = coeffs.spec
    out = MultiPoly(spec.d)
    for idx, v in coeffs.items():
        w = v * harmonic_scale(idx, spec)
        if isinstance(w, Surd):
            w = w.simplify()
        if isinstance(w, Surd) or not _is_exact(w):
            raise ValueError(f"coefficient at {tuple(idx)} is not rational in the raw basis")
        out = out + Q(idx, spec).scale(w)
    return out


def series_evaluator(coeffs: CoefficientSet):
    """Float evaluator (X, T) -> values of the series; X has shape (npts, d)."""
    spec = coeffs.spec
    terms = [(Q(idx, spec), float(v) * float(harmonic_scale(idx, spec))) for idx, v in coeffs.items()]
    # evaluator signature (X, T, dtype=float); dtype=np.longdouble for finite differences

    def evaluate(X, T, dtype=float):
        T = np.asarray(T, dtype=dtype)
        out = np.zeros_like(T)
        for p, w in terms:
            out = out + dtype(w) * p.evaluate_array(X, T, dtype)
        return out

    return evaluate


# -- quadrature path ----------------------------------------------------------------


@lru_cache(maxsize=32)
def _basis_at_nodes(spec: BasisSpec, N: int, degree: int):
    from .quadrature import cone_rule

    rule = cone_rule(spec, degree)
    unit = spec.with_c(1)
    idxs = enumerate_indices(spec, N)
    B = np.stack([Q(i, spec).evaluate_array(rule.X, rule.T) for i in idxs])
    norms = np.array([float(Q_raw_norm(i, unit)) for i in idxs])
    scales = np.array([float(harmonic_scale(i, spec)) for i in idxs])
    X, T = _probe_points(spec.d, float(spec.c))
    P = np.stack([Q(i, spec).evaluate_array(X, T) for i in idxs])
    return rule, idxs, B, norms, scales, (X, T, P)


def _probe_points(d: int, c: float, count: int = 64, seed: int = 12345):
    rng = np.random.default_rng(seed)
    T = rng.uniform(0.1, 6.0, count)
    if d == 1:
        X = (rng.uniform(-1.0, 1.0, count) * c * T)[:, None]
    else:
        v = rng.normal(size=(count, d))
        v /= np.linalg.norm(v, axis=1, keepdims=True)
        r = rng.uniform(0.0, 1.0, count) ** (1.0 / d)
        X = v * (c * T * r)[:, None]
    return X, T


def _evaluate(f, X, T):
    if isinstance(f, MultiPoly):
        return f.evaluate_array(X, T)
    return np.asarray(f(X, T), dtype=float)


def analyze_quadrature(f, spec: BasisSpec, N: int, exact_degree_hint: int | None = None) -> CoefficientSet:
    """Float coefficients by cone quadrature.

    ``f`` is a MultiPoly or a vectorised callable (X, T) -> values.  The rule
    is exact for degree N + hint; the hint defaults to deg f for polynomials
    and to N otherwise.  The result's ``meta`` records the reconstruction
    residual on probe points, and an :class:`ExactnessWarning` is issued when
    it exceeds tolerance.
    """
    if spec.mu != 0:
        raise ValueError("analysis is defined for the mu = 0 basis")
    if exact_degree_hint is None:
        exact_degree_hint = f.degree if isinstance(f, MultiPoly) else N
    degree = N + max(exact_degree_hint, 0)
    rule, idxs, B, norms, scales, (X, T, P) = _basis_at_nodes(spec, N, degree)
    fv = _evaluate(f, rule.X, rule.T)
    raw = (B * rule.weights) @ fv / norms
    conv = raw / scales
    values = {i: float(v) for i, v in zip(idxs, conv) if abs(v) >= PRUNE_TOL}

    target = _evaluate(f, X, T)
    kept = np.where(np.abs(raw) >= PRUNE_TOL, raw, 0.0)
    recon = kept @ P
    # relative to the size of the summed terms, so cancellation is not flagged
    size = np.abs(kept) @ np.abs(P)
    err = float(np.max(np.abs(recon - target) / np.maximum(1.0, size))) if T.size else 0.0
    ok = err <= RECONSTRUCTION_TOL
    if not ok:
        warnings.warn(
            f"reconstruction residual {err:.3e} on probe points exceeds {RECONSTRUCTION_TOL:g}; "
            "raise N or the exactness hint",
            ExactnessWarning,
            stacklevel=2,
        )
    return CoefficientSet(
        spec, N, values, meta={"reconstruction_residual": err, "exactness_ok": ok, "rule_degree": degree}
    )


# -- diagnostics --------------------------------------------------------------------


def parseval_sum(coeffs: CoefficientSet):
    """sum |f_hat|^2 <Q, Q>_0; equals <f, f>_0 when the expansion is complete."""
    spec = coeffs.spec
    exact = coeffs.is_exact
    total = Fraction(0) if exact else 0.0
    for idx, v in coeffs.items():
        nrm = Q_norm(idx, spec)
        total += _square(v) * nrm if exact else float(v) ** 2 * float(nrm)
    return total


def smoothness_functional(coeffs: CoefficientSet) -> float:
    """sum sqrt(m(m+d)) |f_hat|^2 <Q, Q>_0, i.e. <(-D)^{1/2} f, f>_0."""
    spec = coeffs.spec
    total = 0.0
    for idx, v in coeffs.items():
        if idx.m == 0:
            continue
        sq = _square(v) if _is_exact(v) else float(v) ** 2
        total += math.sqrt(idx.m * (idx.m + spec.d)) * float(sq * Q_norm(idx, spec))
    return total
