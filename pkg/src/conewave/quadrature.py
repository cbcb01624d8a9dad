"""Gauss rules and product rules on the cone and on its lateral surface.

One-dimensional rules come from the Golub-Welsch eigenproblem of the Jacobi
matrix of recurrence coefficients.  The cone rule substitutes x = t r xi:
the weight t^{2mu+d} e^{-t} goes to Gauss-Laguerre, the radial factor becomes
a Gauss-Jacobi rule in s = 2 r^2 - 1 with weight (1-s)^mu (1+s)^{(d-2)/2},
and the angular part is a sphere rule.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .conebasis import BasisSpec
from .polyalg import MultiPoly

__all__ = [
    "QuadratureRule",
    "Rule1D",
    "cone_gram",
    "cone_inner",
    "cone_rule",
    "gauss_jacobi",
    "gauss_laguerre",
    "gauss_legendre",
    "integrate",
    "sobolev_gram",
    "sobolev_inner",
    "sphere_area",
    "sphere_rule",
]

SAFETY_MARGIN = 2


@dataclass(frozen=True)
class Rule1D:
    nodes: np.ndarray
    weights: np.ndarray

    def integrate(self, f) -> float:
        return float(np.sum(self.weights * f(self.nodes)))


def _golub_welsch(diag: np.ndarray, off: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    J = np.diag(diag) + np.diag(off, 1) + np.diag(off, -1)
    vals, vecs = np.linalg.eigh(J)
    if not np.all(np.isfinite(vals)):
        raise np.linalg.LinAlgError("Golub-Welsch eigen-solve failed")
    return vals, vecs[0, :] ** 2


def gauss_laguerre(npts: int, alpha: float = 0.0, normalized: bool = True) -> Rule1D:
    """Gauss rule for t^alpha e^{-t} on [0, inf), exact to degree 2 npts - 1.

    With ``normalized`` the weights sum to 1, otherwise to Gamma(alpha + 1).
    """
    if npts < 1:
        raise ValueError("npts must be >= 1")
    if alpha <= -1:
        raise ValueError("alpha must exceed -1")
    k = np.arange(npts, dtype=float)
    diag = 2.0 * k + alpha + 1.0
    kk = np.arange(1, npts, dtype=float)
    off = np.sqrt(kk * (kk + alpha))
    x, w = _golub_welsch(diag, off)
    if not normalized:
        w = w * math.gamma(alpha + 1.0)
    return Rule1D(x, w)


def gauss_jacobi(npts: int, alpha: float, beta: float) -> Rule1D:
    """Gauss rule for the normalised weight c (1-s)^alpha (1+s)^beta on [-1, 1]."""
    if npts < 1:
        raise ValueError("npts must be >= 1")
    if alpha <= -1 or beta <= -1:
        raise ValueError("alpha, beta must exceed -1")
    a, b = float(alpha), float(beta)
    ab = a + b
    k = np.arange(npts, dtype=float)
    denom = (2 * k + ab) * (2 * k + ab + 2)
    with np.errstate(divide="ignore", invalid="ignore"):
        diag = np.where(denom != 0, (b * b - a * a) / np.where(denom != 0, denom, 1), 0.0)
    diag[0] = (b - a) / (ab + 2)
    off = np.empty(max(npts - 1, 0))
    for i, kk in enumerate(range(1, npts)):
        if kk == 1:
            val = 4 * (1 + a) * (1 + b) / ((2 + ab) ** 2 * (3 + ab))
        else:
            val = (
                4 * kk * (kk + a) * (kk + b) * (kk + ab)
                / ((2 * kk + ab) ** 2 * (2 * kk + ab + 1) * (2 * kk + ab - 1))
            )
        off[i] = math.sqrt(val)
    x, w = _golub_welsch(diag, off)
    return Rule1D(x, w)


def gauss_legendre(npts: int) -> Rule1D:
    return gauss_jacobi(npts, 0.0, 0.0)


def sphere_area(d: int) -> float:
    """Surface area omega_d of S^{d-1}."""
    return 2.0 * math.pi ** (d / 2) / math.gamma(d / 2)


def sphere_rule(d: int, degree: int) -> tuple[np.ndarray, np.ndarray]:
    """Points on S^{d-1} with normalised weights, exact for polynomials of ``degree``."""
    if d == 1:
        return np.array([[1.0], [-1.0]]), np.array([0.5, 0.5])
    nphi = degree + 1 + SAFETY_MARGIN
    phi = 2.0 * math.pi * np.arange(nphi) / nphi
    if d == 2:
        return np.stack([np.cos(phi), np.sin(phi)], axis=1), np.full(nphi, 1.0 / nphi)
    if d == 3:
        gl = gauss_legendre(degree // 2 + 1 + SAFETY_MARGIN)
        z = np.repeat(gl.nodes, nphi)
        wz = np.repeat(gl.weights, nphi)
        ph = np.tile(phi, gl.nodes.size)
        rho = np.sqrt(1.0 - z * z)
        pts = np.stack([rho * np.cos(ph), rho * np.sin(ph), z], axis=1)
        return pts, wz / nphi
    raise ValueError(f"unsupported dimension {d}")


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes ``(X[i], T[i])`` and positive weights on the cone or its boundary."""

    X: np.ndarray
    T: np.ndarray
    weights: np.ndarray
    exact_degree: int
    target: str

    @property
    def nodes(self) -> list[tuple[np.ndarray, float]]:
        return [(x, t) for x, t in zip(self.X, self.T)]

    def __len__(self) -> int:
        return self.T.size


def cone_rule(spec: BasisSpec, exact_degree: int) -> QuadratureRule:
    """Product rule for <.,.>_mu, exact for polynomials up to ``exact_degree``."""
    mu = float(spec.mu)
    if mu <= -1:
        raise ValueError("cone rule needs mu > -1")
    d = spec.d
    D = int(exact_degree)
    lag = gauss_laguerre(math.ceil((D + 1) / 2) + SAFETY_MARGIN, 2 * mu + d)
    rad = gauss_jacobi(math.ceil((D // 2 + 1) / 2) + SAFETY_MARGIN, mu, (d - 2) / 2)
    xi, wxi = sphere_rule(d, D)
    r = np.sqrt((1.0 + rad.nodes) / 2.0)
    # index order (t, r, xi) fixes the summation order
    T = np.repeat(lag.nodes, r.size * wxi.size)
    R = np.tile(np.repeat(r, wxi.size), lag.nodes.size)
    XI = np.tile(xi, (lag.nodes.size * r.size, 1))
    W = np.repeat(lag.weights, r.size * wxi.size) * np.tile(
        np.repeat(rad.weights, wxi.size) * np.tile(wxi, r.size), lag.nodes.size
    )
    X = float(spec.c) * (T * R)[:, None] * XI
    return QuadratureRule(X, T, W, D, f"cone mu={spec.mu}")


def _values(f, X, T) -> np.ndarray:
    if isinstance(f, MultiPoly):
        return f.evaluate_array(X, T)
    return np.asarray(f(X, T), dtype=float)


def integrate(rule: QuadratureRule, f) -> float:
    return float(np.sum(rule.weights * _values(f, rule.X, rule.T)))


def cone_inner(f, g, rule: QuadratureRule) -> float:
    """<f, g>_mu by quadrature; f and g are MultiPolys or callables (X, T) -> values."""
    return float(np.sum(rule.weights * _values(f, rule.X, rule.T) * _values(g, rule.X, rule.T)))


def _gradient_dot(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    out = MultiPoly(f.dim)
    for i in range(f.dim):
        out = out + f.partial(i) * g.partial(i)
    return out


def cone_gram(polys, rule: QuadratureRule) -> np.ndarray:
    """Matrix of <p_a, p_b>_mu by quadrature, each polynomial evaluated once."""
    V = np.stack([_values(p, rule.X, rule.T) for p in polys])
    return (V * rule.weights) @ V.T


def _sobolev_parts(d: int, degree: int, c: float):
    vol = cone_rule(BasisSpec(d, 0), max(degree - 2, 0))
    cone_mass = sphere_area(d) / d * math.factorial(d) * c**d
    vX, vT, vW = c * vol.X, vol.T, cone_mass * vol.weights

    xi, wxi = sphere_rule(d, degree)
    if d >= 2:
        lag = gauss_laguerre(math.ceil((degree + 1) / 2) + SAFETY_MARGIN, d - 2, normalized=False)
    else:
        # the integrand carries a factor t that cancels the t^{-1}
        lag = gauss_laguerre(math.ceil(degree / 2) + SAFETY_MARGIN, 0.0, normalized=False)
    bT = np.repeat(lag.nodes, wxi.size)
    bX = c * bT[:, None] * np.tile(xi, (lag.nodes.size, 1))
    bW = np.repeat(lag.weights, wxi.size) * np.tile(wxi, lag.nodes.size)
    bW = bW * math.sqrt(1.0 + c * c) * c ** (d - 1) * sphere_area(d)
    if d == 1:
        bW = bW / bT
    return (vX, vT, vW), (bX, bT, bW)


def sobolev_gram(polys, lam: float = 1.0, c: float = 1.0) -> np.ndarray:
    """Gram matrix under <.,.>_grad.

    In d = 1 an entry is infinite when both polynomials are nonzero at the
    apex (the boundary weight t^{-1} is not integrable there).
    """
    if lam <= 0:
        raise ValueError("lambda must be positive")
    polys = list(polys)
    d = polys[0].dim
    degree = max(max(p.degree for p in polys) * 2, 0)
    (vX, vT, vW), (bX, bT, bW) = _sobolev_parts(d, degree, float(c))
    G = np.zeros((len(polys), len(polys)))
    for i in range(d):
        V = np.stack([p.partial(i).evaluate_array(vX, vT) for p in polys])
        G += (V * vW) @ V.T
    B = np.stack([p.evaluate_array(bX, bT) for p in polys])
    G += lam * (B * bW) @ B.T
    if d == 1:
        apex = np.array([float(p.constant_term()) != 0 for p in polys])
        G[np.outer(apex, apex)] = np.inf
    return G


def sobolev_inner(f: MultiPoly, g: MultiPoly, lam: float = 1.0, c: float = 1.0) -> float:
    """int_V grad_x f . grad_x g e^{-t} dx dt + lam int_{V_0} f g t^{-1} e^{-t} d sigma.

    Both integrals are unnormalised.  The lateral surface ||x|| = c t is
    parametrised by x = c t xi, giving d sigma = sqrt(1 + c^2) (c t)^{d-1} dt d omega.
    """
    if lam <= 0:
        raise ValueError("lambda must be positive")
    d = f.dim
    if d == 1 and (f * g).constant_term() != 0:
        raise ValueError("boundary integral diverges in d = 1 unless f g vanishes at the apex")
    degree = max(f.degree + g.degree, 0)
    (vX, vT, vW), (bX, bT, bW) = _sobolev_parts(d, degree, float(c))
    volume = float(np.sum(vW * _gradient_dot(f, g).evaluate_array(vX, vT)))
    boundary = float(np.sum(bW * (f * g).evaluate_array(bX, bT)))
    return volume + lam * boundary
