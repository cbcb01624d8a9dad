"""Orthogonal polynomials on the cone ||x|| <= c t.

Q^{n,mu}_{m,j,l}(x, t) = L_{n-m}^{2m+2mu+d}(t) t^{2j} P_j^{(mu, beta_j)}(2||x||^2/t^2 - 1) Y_l^{m-2j}(x)

with beta_j = m - 2j + (d-2)/2.  The Jacobi factor is expanded in powers of
||x||^2/t^2 (at most j of them), so the product with t^{2j} never divides by t
and the polynomial is well defined at the apex.

Polynomials returned by :func:`Q` use the raw harmonic member; the basis
element under the chosen convention is ``harmonic_scale(index, spec) * Q``.
For the ``trig-paper`` convention the scale is 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import NamedTuple

from . import harmonics
from .harmonics import ORTHONORMAL, dim_H
from .orthopoly1d import jacobi_z_coeffs, laguerre_coeffs, poch
from .polyalg import MultiPoly, as_fraction

__all__ = [
    "BasisSpec",
    "ConeIndex",
    "Q",
    "Q_norm",
    "Q_raw_norm",
    "a_mj",
    "b_mn",
    "c_mn",
    "cone_inner_exact",
    "cone_moment",
    "convert_m1_to_0",
    "d_mn",
    "enumerate_indices",
    "harmonic_scale",
    "is_admissible",
]


class ConeIndex(NamedTuple):
    n: int
    m: int
    j: int
    ell: int

    def beta(self, d: int) -> Fraction:
        return self.m - 2 * self.j + Fraction(d - 2, 2)

    @property
    def k(self) -> int:
        """Degree of the spherical-harmonic factor."""
        return self.m - 2 * self.j


@dataclass(frozen=True)
class BasisSpec:
    d: int
    mu: Fraction = Fraction(0)
    c: Fraction = Fraction(1)
    convention: str = ORTHONORMAL

    def __post_init__(self):
        if self.d not in (1, 2, 3):
            raise ValueError(f"unsupported dimension {self.d}")
        object.__setattr__(self, "mu", as_fraction(self.mu))
        object.__setattr__(self, "c", as_fraction(self.c))
        if self.mu < -1:
            raise ValueError("mu < -1 is not supported")
        if self.c <= 0:
            raise ValueError("wave speed must be positive")
        if self.convention not in harmonics.CONVENTIONS:
            raise ValueError(f"unknown convention {self.convention!r}")

    def with_mu(self, mu) -> "BasisSpec":
        return BasisSpec(self.d, mu, self.c, self.convention)

    def with_c(self, c) -> "BasisSpec":
        return BasisSpec(self.d, self.mu, c, self.convention)


def is_admissible(idx: ConeIndex, d: int) -> bool:
    n, m, j, ell = idx
    return 0 <= m <= n and 0 <= j and 2 * j <= m and 1 <= ell <= dim_H(d, m - 2 * j)


def enumerate_indices(spec: BasisSpec, N: int) -> list[ConeIndex]:
    """All admissible indices with n <= N, ordered by (n, m, j, l)."""
    d = spec.d if isinstance(spec, BasisSpec) else int(spec)
    out = []
    for n in range(N + 1):
        for m in range(n + 1):
            for j in range(m // 2 + 1):
                for ell in range(1, dim_H(d, m - 2 * j) + 1):
                    out.append(ConeIndex(n, m, j, ell))
    return out


# -- rational constants of the wave-operator action ---------------------------


def a_mj(m: int, j: int, d: int) -> Fraction:
    if m == 0 and d == 2:
        return Fraction(1)
    return Fraction(2 * m - 2 * j + d - 2, 2 * m + d - 2)


def b_mn(m: int, n: int) -> int:
    return (n - m + 1) * (n - m + 2)


def c_mn(m: int, n: int, d: int) -> int:
    return (n + m + d - 2) * (n - m + 1)


def d_mn(m: int, n: int, d: int) -> int:
    return (n + m + d - 2) * (n + m + d - 3)


# -- construction ---------------------------------------------------------------


def _harmonic(d: int, k: int, ell: int) -> MultiPoly:
    members = harmonics.basis(d, k, ORTHONORMAL).members
    return members[ell - 1]


def _r2(d: int) -> MultiPoly:
    return sum((MultiPoly.var(d, i) ** 2 for i in range(d)), MultiPoly(d))


def _radial_factor(j: int, alpha: Fraction, beta: Fraction, d: int) -> MultiPoly:
    """t^{2j} P_j^{(alpha,beta)}(2||x||^2/t^2 - 1), expanded."""
    t2 = MultiPoly.var(d, "t") ** 2
    r2 = _r2(d)
    out = MultiPoly(d)
    for q, e in enumerate(jacobi_z_coeffs(j, alpha, beta)):
        out = out + (r2**q * t2 ** (j - q)).scale(e)
    return out


def _laguerre_t(n: int, alpha: Fraction, d: int) -> MultiPoly:
    return MultiPoly(d, {(0,) * d + (k,): c for k, c in enumerate(laguerre_coeffs(n, alpha))})


@lru_cache(maxsize=None)
def _Q_unit_speed(idx: ConeIndex, d: int, mu: Fraction) -> MultiPoly:
    n, m, j, ell = idx
    beta = idx.beta(d)
    lag = _laguerre_t(n - m, 2 * m + 2 * mu + d, d)
    Y = _harmonic(d, m - 2 * j, ell)
    if mu == -1 and j >= 1:
        # P_j^{(-1,b)}(s) = ((j+b)/j) ((s-1)/2) P_{j-1}^{(1,b)}(s); with s = 2r^2/t^2 - 1
        # this is -((j+b)/j) t^{-2} (t^2 - r^2) P_{j-1}^{(1,b)}(s).
        t2 = MultiPoly.var(d, "t") ** 2
        cone = t2 - _r2(d)
        radial = (cone * _radial_factor(j - 1, Fraction(1), beta, d)).scale(-(j + beta) / j)
    else:
        radial = _radial_factor(j, mu, beta, d)
    return lag * radial * Y


def Q(idx, spec: BasisSpec) -> MultiPoly:
    """Cone polynomial Q^{n,mu}_{m,j,l} (raw harmonic member).

    Indices with negative m or j give the zero polynomial by convention.
    """
    idx = ConeIndex(*idx)
    if idx.m < 0 or idx.j < 0:
        return MultiPoly(spec.d)
    if not is_admissible(idx, spec.d):
        raise ValueError(f"inadmissible index {tuple(idx)} for d={spec.d}")
    p = _Q_unit_speed(idx, spec.d, spec.mu)
    if spec.c != 1:
        p = p.scale_vars([1 / spec.c] * spec.d + [1])
    return p


def harmonic_scale(idx, spec: BasisSpec):
    """Factor turning the raw Q into the basis element of ``spec.convention``."""
    idx = ConeIndex(*idx)
    return harmonics.basis(spec.d, idx.k, spec.convention).scales[idx.ell - 1]


def _harmonic_raw_norm(idx: ConeIndex, d: int) -> Fraction:
    return harmonics.basis(d, idx.k, ORTHONORMAL).raw_norms_sq[idx.ell - 1]


def cone_norm_orthonormal(idx, d: int, mu) -> Fraction:
    """Squared <.,.>_mu norm of Q with a unit-norm harmonic factor."""
    n, m, j, _ = idx
    mu = as_fraction(mu)
    if mu <= -1:
        raise ValueError("norm is only defined for mu > -1")
    h = Fraction(d, 2)
    return (
        poch(2 * mu + d + 1, n + m) * poch(mu + 1, j) * poch(h, m - j) * (mu + m - j + h)
    ) / (factorial(n - m) * factorial(j) * poch(mu + h + 1, m - j) * (mu + m + h))


def Q_raw_norm(idx, spec: BasisSpec) -> Fraction:
    """<Q, Q>_mu for the raw polynomial returned by :func:`Q`."""
    idx = ConeIndex(*idx)
    return cone_norm_orthonormal(idx, spec.d, spec.mu) * _harmonic_raw_norm(idx, spec.d)


def Q_norm(idx, spec: BasisSpec) -> Fraction:
    """Squared norm of the basis element under ``spec.convention``."""
    idx = ConeIndex(*idx)
    hb = harmonics.basis(spec.d, idx.k, spec.convention)
    return cone_norm_orthonormal(idx, spec.d, spec.mu) * hb.norms_sq[idx.ell - 1]


def convert_m1_to_0(idx, d: int) -> list[tuple[ConeIndex, Fraction]]:
    """Expand Q^{n,-1}_{m,j,l} in the mu = 0 basis (at most six terms)."""
    n, m, j, ell = ConeIndex(*idx)
    a = a_mj(m, j, d)
    raw = [
        ((n, m, j), 1),
        ((n, m - 2, j - 1), -b_mn(m, n)),
        ((n - 1, m, j), -2),
        ((n - 1, m - 2, j - 1), 2 * c_mn(m, n, d)),
        ((n - 2, m, j), 1),
        ((n - 2, m - 2, j - 1), -d_mn(m, n, d)),
    ]
    out = []
    for (nn, mm, jj), coef in raw:
        target = ConeIndex(nn, mm, jj, ell)
        if mm < 0 or jj < 0 or nn < mm or coef == 0:
            continue
        out.append((target, a * coef))
    return out


# -- exact integration ------------------------------------------------------------


@lru_cache(maxsize=None)
def cone_moment(exps: tuple[int, ...], mu: Fraction) -> Fraction:
    """<x^gamma t^b, 1>_mu at unit speed, normalised so <1,1>_mu = 1."""
    *gamma, b = exps
    gamma = tuple(gamma)
    s = harmonics.sphere_moment(gamma)
    if not s:
        return Fraction(0)
    d = len(gamma)
    g = sum(gamma)
    h = Fraction(d, 2)
    return poch(2 * mu + d + 1, b + g) * poch(h, g // 2) / poch(h + mu + 1, g // 2) * s


def cone_inner_exact(p: MultiPoly, q: MultiPoly, spec: BasisSpec) -> Fraction:
    """Exact <p, q>_mu by monomial moments."""
    if p.dim != spec.d or q.dim != spec.d:
        raise ValueError("dimension mismatch")
    total = Fraction(0)
    c = spec.c
    for exps, coef in (p * q).terms.items():
        m = cone_moment(exps, spec.mu)
        if m:
            total += coef * m * c ** sum(exps[:-1])
    return total
