"""Laguerre, Jacobi and Gegenbauer polynomials.

Exact forms come from the explicit hypergeometric sums and are returned as
univariate :class:`~conewave.polyalg.MultiPoly` objects (``dim == 0``; the
single variable prints as ``t``).  Float evaluation uses the three-term
recurrences, which the tests cross-check against the exact forms.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

import numpy as np

from .polyalg import MultiPoly, as_fraction

__all__ = [
    "JacobiParam",
    "LaguerreParam",
    "gegenbauer",
    "gegenbauer_eval",
    "jacobi",
    "jacobi_eval",
    "jacobi_norm",
    "jacobi_z_coeffs",
    "laguerre",
    "laguerre_coeffs",
    "laguerre_eval",
    "laguerre_identities_check",
    "laguerre_norm",
    "poch",
]


def poch(a, k: int) -> Fraction:
    """Rising factorial (a)_k with (a)_0 = 1."""
    a = as_fraction(a)
    out = Fraction(1)
    for i in range(k):
        out *= a + i
    return out


def _binom(top, k: int) -> Fraction:
    """Generalised binomial coefficient for rational ``top``."""
    if k < 0:
        return Fraction(0)
    top = as_fraction(top)
    out = Fraction(1)
    for i in range(k):
        out *= top - i
    return out / factorial(k)


@dataclass(frozen=True)
class LaguerreParam:
    alpha: Fraction

    def __post_init__(self):
        object.__setattr__(self, "alpha", as_fraction(self.alpha))


@dataclass(frozen=True)
class JacobiParam:
    alpha: Fraction
    beta: Fraction

    def __post_init__(self):
        object.__setattr__(self, "alpha", as_fraction(self.alpha))
        object.__setattr__(self, "beta", as_fraction(self.beta))
        if self.beta <= -1:
            raise ValueError(f"Jacobi beta must exceed -1, got {self.beta}")

    def negative_integer_alpha(self) -> int | None:
        a = self.alpha
        if a.denominator == 1 and a < 0:
            return int(-a)
        return None


def _alpha(param) -> Fraction:
    return param.alpha if isinstance(param, LaguerreParam) else as_fraction(param)


# -- Laguerre ---------------------------------------------------------------


@lru_cache(maxsize=None)
def laguerre_coeffs(n: int, alpha: Fraction) -> tuple[Fraction, ...]:
    """Ascending coefficients of L_n^alpha; empty for n < 0."""
    if n < 0:
        return ()
    alpha = as_fraction(alpha)
    # ((a+1)_n / n!) (-n)_k / (k! (a+1)_k) == (-1)^k binom(n + a, n - k) / k!
    return tuple((-1) ** k * _binom(n + alpha, n - k) / factorial(k) for k in range(n + 1))


def laguerre(n: int, param) -> MultiPoly:
    return MultiPoly(0, {(k,): c for k, c in enumerate(laguerre_coeffs(n, _alpha(param)))})


def laguerre_norm(n: int, param) -> Fraction:
    """(1/Gamma(a+1)) int L_n^a(t)^2 t^a e^{-t} dt = (a+1)_n / n!."""
    a = _alpha(param)
    if a <= -1:
        raise ValueError(f"Laguerre norm needs alpha > -1, got {a}")
    return poch(a + 1, n) / factorial(n)


def laguerre_eval(n: int, alpha: float, t) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    p0 = np.ones_like(t)
    if n == 0:
        return p0
    p1 = 1.0 + alpha - t
    for k in range(1, n):
        p0, p1 = p1, ((2 * k + 1 + alpha - t) * p1 - (k + alpha) * p0) / (k + 1)
    return p1


def laguerre_identities_check(n: int, alpha) -> bool:
    """Exact check of the two Laguerre identities used by the wave-operator proof.

    L_k^a = L_k^{a+1} - L_{k-1}^{a+1} for k <= n, and
    t^2 L_n^{a+2} - 2 a t L_n^{a+1} + a(a-1) L_n^a = (n+1)(n+2) L_{n+2}^{a-2}.
    """
    a = as_fraction(alpha)
    for k in range(n + 1):
        lhs = laguerre(k, a)
        rhs = laguerre(k, a + 1) - laguerre(k - 1, a + 1)
        if lhs != rhs:
            return False
    t = MultiPoly.var(0, "t")
    lhs = (
        t * t * laguerre(n, a + 2)
        - (t * laguerre(n, a + 1)).scale(2 * a)
        + laguerre(n, a).scale(a * (a - 1))
    )
    return lhs == laguerre(n + 2, a - 2).scale((n + 1) * (n + 2))


# -- Jacobi -----------------------------------------------------------------


@lru_cache(maxsize=None)
def jacobi_z_coeffs(n: int, alpha: Fraction, beta: Fraction) -> tuple[Fraction, ...]:
    """Coefficients e_k with P_n^{(a,b)}(s) = sum_k e_k ((1+s)/2)^k.

    Uses the expansion about s = -1, which is polynomial in alpha, so it is
    the analytic continuation for every rational alpha (beta > -1).
    """
    if n < 0:
        return ()
    a, b = as_fraction(alpha), as_fraction(beta)
    lead = (-1) ** n * poch(b + 1, n) / factorial(n)
    return tuple(
        lead * poch(-n, k) * poch(n + a + b + 1, k) / (poch(b + 1, k) * factorial(k))
        for k in range(n + 1)
    )


def _z_to_s(coeffs) -> MultiPoly:
    half = MultiPoly(0, {(0,): Fraction(1, 2), (1,): Fraction(1, 2)})
    out = MultiPoly(0)
    power = MultiPoly.const(0, 1)
    for c in coeffs:
        out = out + power.scale(c)
        power = power * half
    return out


def _jacobi_generic(n: int, a: Fraction, b: Fraction) -> MultiPoly:
    return _z_to_s(jacobi_z_coeffs(n, a, b))


def jacobi(n: int, param: JacobiParam) -> MultiPoly:
    """Exact P_n^{(alpha, beta)}(s) as a univariate polynomial.

    For alpha = -k a negative integer the factored identity
    C(n,k) P_n^{(-k,b)}(s) = C(n+b,k) ((s-1)/2)^k P_{n-k}^{(k,b)}(s)
    is used when n >= k; P_0^{(-1,b)} = 1.
    """
    if n < 0:
        return MultiPoly(0)
    k = param.negative_integer_alpha()
    if k is None or n == 0:
        return _jacobi_generic(n, param.alpha, param.beta)
    if n < k:
        raise ValueError(f"P_{n}^({param.alpha},{param.beta}) is not defined for n < {k}")
    half = MultiPoly(0, {(0,): Fraction(-1, 2), (1,): Fraction(1, 2)})
    factor = _binom(n + param.beta, k) / comb(n, k)
    return (half**k * _jacobi_generic(n - k, Fraction(k), param.beta)).scale(factor)


def jacobi_norm(n: int, param: JacobiParam) -> Fraction:
    """Normalised squared norm c_{a,b} int P_n^2 (1-s)^a (1+s)^b ds."""
    a, b = param.alpha, param.beta
    if a <= -1 or b <= -1:
        raise ValueError("Jacobi norm needs alpha, beta > -1")
    return (
        poch(a + 1, n) * poch(b + 1, n) * (a + b + n + 1)
        / (factorial(n) * poch(a + b + 2, n) * (a + b + 2 * n + 1))
    )


def jacobi_eval(n: int, alpha: float, beta: float, s) -> np.ndarray:
    s = np.asarray(s, dtype=float)
    p0 = np.ones_like(s)
    if n == 0:
        return p0
    a, b = float(alpha), float(beta)
    p1 = 0.5 * (a - b + (a + b + 2.0) * s)
    ab = a + b
    for k in range(2, n + 1):
        c1 = 2.0 * k * (k + ab) * (2.0 * k + ab - 2.0)
        c2 = (2.0 * k + ab - 1.0) * (a * a - b * b)
        c3 = (2.0 * k + ab - 2.0) * (2.0 * k + ab - 1.0) * (2.0 * k + ab)
        c4 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * (2.0 * k + ab)
        p0, p1 = p1, ((c2 + c3 * s) * p1 - c4 * p0) / c1
    return p1


# -- Gegenbauer -------------------------------------------------------------


@lru_cache(maxsize=None)
def _gegenbauer_cached(n: int, lam: Fraction) -> MultiPoly:
    s = MultiPoly.var(0, "t")
    p0 = MultiPoly.const(0, 1)
    if n == 0:
        return p0
    p1 = s.scale(2 * lam)
    for k in range(1, n):
        p0, p1 = p1, ((s * p1).scale(2 * (k + lam)) - p0.scale(k + 2 * lam - 1)).scale(
            Fraction(1, k + 1)
        )
    return p1


def gegenbauer(n: int, lam) -> MultiPoly:
    """C_n^lambda via (k+1) C_{k+1} = 2(k+lambda) s C_k - (k+2 lambda-1) C_{k-1}."""
    return _gegenbauer_cached(n, as_fraction(lam))


def gegenbauer_eval(n: int, lam: float, s) -> np.ndarray:
    s = np.asarray(s, dtype=float)
    p0 = np.ones_like(s)
    if n == 0:
        return p0
    p1 = 2.0 * lam * s
    for k in range(1, n):
        p0, p1 = p1, (2.0 * (k + lam) * s * p1 - (k + 2.0 * lam - 1.0) * p0) / (k + 1)
    return p1
