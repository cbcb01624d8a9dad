"""Real spherical harmonics for d = 1, 2, 3 as exact homogeneous polynomials.

Every member is stored as a rational polynomial (its *raw* form) together with
an exact scale factor.  Under the ``trig-paper`` convention the scale is 1, so
in d = 2 the members are Re/Im (x1 + i x2)^k.  Under ``orthonormal`` the scale
is 1/sqrt(<raw, raw>) on the normalised sphere, kept as a :class:`Surd` so the
Gram matrix stays exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .polyalg import MultiPoly, Surd, _key_degree, _unpack

__all__ = [
    "CONVENTIONS",
    "HarmonicBasis",
    "basis",
    "dim_H",
    "sphere_inner",
    "sphere_moment",
]

ORTHONORMAL = "orthonormal"
TRIG_PAPER = "trig-paper"
CONVENTIONS = (ORTHONORMAL, TRIG_PAPER)


def dim_H(d: int, k: int) -> int:
    """Dimension of the degree-k harmonics in d variables."""
    if d not in (1, 2, 3):
        raise ValueError(f"unsupported dimension {d}")
    if k < 0:
        return 0
    if d == 1:
        return 1 if k <= 1 else 0
    if d == 2:
        return 1 if k == 0 else 2
    return 2 * k + 1


@lru_cache(maxsize=None)
def sphere_moment(alpha: tuple[int, ...]) -> Fraction:
    """(1/omega_d) int_{S^{d-1}} xi^alpha d sigma, exact.

    Zero unless every exponent is even; otherwise
    prod_i (1/2)_{a_i/2} / (d/2)_{|a|/2}.
    """
    if any(a % 2 for a in alpha):
        return Fraction(0)
    d = len(alpha)
    num = Fraction(1)
    for a in alpha:
        for i in range(a // 2):
            num *= Fraction(1, 2) + i
    den = Fraction(1)
    for i in range(sum(alpha) // 2):
        den *= Fraction(d, 2) + i
    return num / den


def sphere_inner(f: MultiPoly, g: MultiPoly, d: int | None = None) -> Fraction:
    """Normalised sphere inner product of two polynomials in x (t must not appear)."""
    d = f.dim if d is None else d
    if f.dim != d or g.dim != d:
        raise ValueError("dimension mismatch")
    total = Fraction(0)
    for exps, c in (f * g).terms.items():
        if exps[-1]:
            raise ValueError("sphere_inner expects polynomials in x only")
        total += c * sphere_moment(exps[:-1])
    return total


def _complex_power(k: int):
    """Real and imaginary parts of (x1 + i x2)^k as (dim 2 exponent, coeff) maps."""
    re, im = {}, {}
    for i in range(k + 1):
        c = comb(k, i)
        if i % 4 == 0:
            re[(k - i, i)] = c
        elif i % 4 == 1:
            im[(k - i, i)] = c
        elif i % 4 == 2:
            re[(k - i, i)] = -c
        else:
            im[(k - i, i)] = -c
    return re, im


def _raw_d2(k: int) -> list[MultiPoly]:
    if k == 0:
        return [MultiPoly.const(2, 1)]
    re, im = _complex_power(k)
    return [
        MultiPoly(2, {(a, b, 0): c for (a, b), c in re.items()}),
        MultiPoly(2, {(a, b, 0): c for (a, b), c in im.items()}),
    ]


def _raw_d3(k: int) -> list[MultiPoly]:
    x3 = MultiPoly.var(3, "x3")
    r2 = sum((MultiPoly.var(3, i) ** 2 for i in range(3)), MultiPoly(3))
    out = []
    for m in range(k + 1):
        # solid form of d^m/dz^m P_k(z), homogenised with r^2
        legendre = MultiPoly(3)
        for i in range((k - m) // 2 + 1):
            c = Fraction(
                (-1) ** i * factorial(2 * k - 2 * i),
                2**k * factorial(i) * factorial(k - i) * factorial(k - 2 * i - m),
            )
            legendre = legendre + (x3 ** (k - 2 * i - m) * r2**i).scale(c)
        if m == 0:
            out.append(legendre)
            continue
        re, im = _complex_power(m)
        cos_part = MultiPoly(3, {(a, b, 0, 0): c for (a, b), c in re.items()})
        sin_part = MultiPoly(3, {(a, b, 0, 0): c for (a, b), c in im.items()})
        out.append(cos_part * legendre)
        out.append(sin_part * legendre)
    return out


def _raw_d1(k: int) -> list[MultiPoly]:
    if k == 0:
        return [MultiPoly.const(1, 1)]
    if k == 1:
        return [MultiPoly.var(1, "x1")]
    return []


@dataclass(frozen=True)
class HarmonicBasis:
    """Ordered basis of H_k^d.

    ``members[i]`` is the raw rational polynomial; the basis element under the
    chosen convention is ``scales[i] * members[i]``, whose squared sphere norm
    is ``norms_sq[i]``.
    """

    dim: int
    degree: int
    convention: str
    members: tuple[MultiPoly, ...]
    scales: tuple
    raw_norms_sq: tuple[Fraction, ...]

    @property
    def norms_sq(self) -> tuple[Fraction, ...]:
        return tuple(
            n * (s * s).simplify() if isinstance(s, Surd) else n * s * s
            for n, s in zip(self.raw_norms_sq, self.scales)
        )

    def __len__(self) -> int:
        return len(self.members)

    def gram(self) -> list[list]:
        """Exact Gram matrix of the scaled members under sphere_inner."""
        out = []
        for a, sa in zip(self.members, self.scales):
            row = []
            for b, sb in zip(self.members, self.scales):
                v = sa * sb * sphere_inner(a, b, self.dim)
                row.append(v.simplify() if isinstance(v, Surd) else v)
            out.append(row)
        return out


@lru_cache(maxsize=None)
def basis(d: int, k: int, convention: str = ORTHONORMAL) -> HarmonicBasis:
    """Harmonic basis of degree k in d variables.

    Ordering: d = 2 puts the cos-type member before the sin-type one; d = 3
    puts the zonal member first, then (cos, sin) pairs by ascending azimuthal
    order.
    """
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}")
    if d == 1:
        raw = _raw_d1(k)
    elif d == 2:
        raw = _raw_d2(k)
    elif d == 3:
        raw = _raw_d3(k)
    else:
        raise ValueError(f"unsupported dimension {d}")
    norms = tuple(sphere_inner(p, p, d) for p in raw)
    if convention == ORTHONORMAL:
        scales = tuple(Surd.sqrt(1 / n).simplify() for n in norms)
    else:
        scales = tuple(Fraction(1) for _ in raw)
    return HarmonicBasis(d, k, convention, tuple(raw), scales, norms)


def is_homogeneous_of_degree(p: MultiPoly, k: int) -> bool:
    return all(_key_degree(key) == k and _unpack(key, p.nvars)[-1] == 0 for key in p._terms)
