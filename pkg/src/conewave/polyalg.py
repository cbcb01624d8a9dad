"""Exact multivariate polynomials in (x1, ..., xd, t) over the rationals.

This is the symbolic oracle of the package: every identity about cone
polynomials and the wave operator is checked by expanding both sides into
:class:`MultiPoly` objects and subtracting.

Exponent tuples are packed into a single integer (8 bits per variable) so that
monomial multiplication is integer addition.  The degree cap keeps every slot
well below 256.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational as _RationalABC

import numpy as np

__all__ = [
    "DegreeCapError",
    "MultiPoly",
    "Surd",
    "as_fraction",
    "conjugated_wave",
    "eigen_operator",
    "euler",
    "laplace_x",
    "operator_D",
    "partial",
]

DEFAULT_DEGREE_CAP = 64
_BITS = 8
_MASK = (1 << _BITS) - 1


class DegreeCapError(ValueError):
    """Raised when a product would exceed the configured degree cap."""


def as_fraction(value) -> Fraction:
    """Convert ints, Fractions and decimal strings to an exact Fraction.

    Floats are rejected: the symbolic layer never silently rounds.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, _RationalABC)) and not isinstance(value, bool):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def _pack(exps) -> int:
    key = 0
    for i, e in enumerate(exps):
        if e < 0 or e > _MASK:
            raise ValueError(f"exponent out of range: {e}")
        key |= e << (_BITS * i)
    return key


def _unpack(key: int, nvars: int) -> tuple[int, ...]:
    return tuple((key >> (_BITS * i)) & _MASK for i in range(nvars))


@lru_cache(maxsize=None)
def _key_degree(key: int) -> int:
    deg = 0
    while key:
        deg += key & _MASK
        key >>= _BITS
    return deg


class MultiPoly:
    """Immutable polynomial in ``dim`` spatial variables and ``t``.

    ``dim`` may be 0, in which case the polynomial is univariate in the single
    (last) slot; the one-variable families in :mod:`conewave.orthopoly1d` use
    this form.
    """

    __slots__ = ("dim", "_terms", "_degree")

    def __init__(self, dim: int, terms=None, *, _packed=False):
        if dim < 0 or dim > 3:
            raise ValueError(f"unsupported dimension {dim}")
        self.dim = dim
        clean: dict[int, Fraction] = {}
        if terms:
            if _packed:
                for k, c in terms.items():
                    if c:
                        clean[k] = c
            else:
                for exps, c in dict(terms).items():
                    exps = tuple(exps)
                    if len(exps) != dim + 1:
                        raise ValueError(
                            f"exponent tuple {exps} has length {len(exps)}, expected {dim + 1}"
                        )
                    c = as_fraction(c)
                    if c:
                        k = _pack(exps)
                        clean[k] = clean.get(k, Fraction(0)) + c
                        if not clean[k]:
                            del clean[k]
        self._terms = clean
        self._degree = max(map(_key_degree, clean), default=-1)

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero(cls, dim: int) -> "MultiPoly":
        return cls(dim)

    @classmethod
    def const(cls, dim: int, value) -> "MultiPoly":
        c = as_fraction(value)
        return cls(dim, {0: c}, _packed=True)

    @classmethod
    def var(cls, dim: int, name) -> "MultiPoly":
        i = var_index(dim, name)
        return cls(dim, {1 << (_BITS * i): Fraction(1)}, _packed=True)

    @classmethod
    def monomial(cls, dim: int, exps, coeff=1) -> "MultiPoly":
        return cls(dim, {tuple(exps): coeff})

    @classmethod
    def _from_packed(cls, dim: int, terms: dict) -> "MultiPoly":
        obj = cls.__new__(cls)
        obj.dim = dim
        obj._terms = {k: c for k, c in terms.items() if c}
        obj._degree = max(map(_key_degree, obj._terms), default=-1)
        return obj

    # -- inspection ---------------------------------------------------------
    @property
    def nvars(self) -> int:
        return self.dim + 1

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return self._degree

    @property
    def terms(self) -> dict[tuple[int, ...], Fraction]:
        return {_unpack(k, self.nvars): c for k, c in self._terms.items()}

    def items(self):
        """Terms as ``(exponent tuple, coefficient)`` in graded-lex order."""
        return sorted(self.terms.items(), key=lambda kv: _grlex_key(kv[0]))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def coefficient(self, exps) -> Fraction:
        return self._terms.get(_pack(exps), Fraction(0))

    def constant_term(self) -> Fraction:
        return self._terms.get(0, Fraction(0))

    def is_homogeneous(self) -> bool:
        return len({_key_degree(k) for k in self._terms}) <= 1

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self.dim == other.dim and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == MultiPoly.const(self.dim, other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.dim, frozenset(self._terms.items())))

    # -- ring operations ----------------------------------------------------
    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.dim != self.dim:
                raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")
            return other
        return MultiPoly.const(self.dim, other)

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for k, c in other._terms.items():
            v = out.get(k)
            if v is None:
                out[k] = c
            else:
                v += c
                if v:
                    out[k] = v
                else:
                    del out[k]
        return MultiPoly._from_packed(self.dim, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._from_packed(self.dim, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, factor) -> "MultiPoly":
        c = as_fraction(factor)
        if not c:
            return MultiPoly(self.dim)
        return MultiPoly._from_packed(self.dim, {k: v * c for k, v in self._terms.items()})

    def mul(self, other, cap: int = DEFAULT_DEGREE_CAP) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        other = self._coerce(other)
        if not self._terms or not other._terms:
            return MultiPoly(self.dim)
        if self._degree + other._degree > cap:
            raise DegreeCapError(
                f"product degree {self._degree + other._degree} exceeds cap {cap}"
            )
        out: dict[int, Fraction] = {}
        get = out.get
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                k = k1 + k2
                v = get(k)
                out[k] = c1 * c2 if v is None else v + c1 * c2
        return MultiPoly._from_packed(self.dim, out)

    def __mul__(self, other):
        if isinstance(other, MultiPoly):
            return self.mul(other)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers are supported")
        result = MultiPoly.const(self.dim, 1)
        base = self
        while n:
            if n & 1:
                result = result.mul(base)
            n >>= 1
            if n:
                base = base.mul(base)
        return result

    # -- calculus -----------------------------------------------------------
    def partial(self, name) -> "MultiPoly":
        i = var_index(self.dim, name)
        shift = _BITS * i
        unit = 1 << shift
        out = {}
        for k, c in self._terms.items():
            e = (k >> shift) & _MASK
            if e:
                out[k - unit] = c * e
        return MultiPoly._from_packed(self.dim, out)

    def euler(self) -> "MultiPoly":
        """Apply <x, grad_x>: multiplies each term by its x-degree."""
        out = {}
        tshift = _BITS * self.dim
        for k, c in self._terms.items():
            xdeg = _key_degree(k) - ((k >> tshift) & _MASK)
            if xdeg:
                out[k] = c * xdeg
        return MultiPoly._from_packed(self.dim, out)

    # -- substitution / evaluation -----------------------------------------
    def scale_vars(self, factors) -> "MultiPoly":
        """Substitute ``v_i -> factors[i] * v_i`` for every variable."""
        factors = [as_fraction(f) for f in factors]
        if len(factors) != self.nvars:
            raise ValueError("one factor per variable required")
        out = {}
        for k, c in self._terms.items():
            v = c
            for i, f in enumerate(factors):
                e = (k >> (_BITS * i)) & _MASK
                if e:
                    v *= f**e
            out[k] = v
        return MultiPoly._from_packed(self.dim, out)

    def embed(self, dim: int) -> "MultiPoly":
        """Reinterpret a univariate (dim 0) polynomial as a polynomial in t."""
        if self.dim != 0:
            raise ValueError("embed only applies to univariate polynomials")
        shift = _BITS * dim
        return MultiPoly._from_packed(dim, {k << shift: c for k, c in self._terms.items()})

    def __call__(self, *point):
        return self.eval(*point)

    def eval(self, x=(), t=0):
        """Evaluate at ``(x, t)``; exact when the inputs are rational.

        For ``dim == 0`` pass the single value as ``t`` (or positionally).
        """
        if self.dim == 0 and not isinstance(x, (tuple, list, np.ndarray)):
            x, t = (), x
        x = tuple(x)
        if len(x) != self.dim:
            raise ValueError(f"point has {len(x)} spatial coordinates, expected {self.dim}")
        vals = x + (t,)
        exact = all(isinstance(v, (int, Fraction)) for v in vals)
        zero = Fraction(0) if exact else 0.0
        # Horner in t over x-monomial groups
        groups: dict[int, dict[int, Fraction]] = {}
        tshift = _BITS * self.dim
        for k, c in self._terms.items():
            te = (k >> tshift) & _MASK
            groups.setdefault(k & ((1 << tshift) - 1), {})[te] = c
        total = zero
        for xkey, tcoef in groups.items():
            xm = 1
            for i in range(self.dim):
                e = (xkey >> (_BITS * i)) & _MASK
                if e:
                    xm = xm * vals[i] ** e
            acc = zero
            for e in range(max(tcoef), -1, -1):
                c = tcoef.get(e, 0)
                acc = acc * vals[-1] + (c if exact else float(c))
            total = total + xm * acc
        return total

    def evaluate_array(self, X, T, dtype=float) -> np.ndarray:
        """Vectorised evaluation at points ``X`` (N, dim) and ``T`` (N,).

        ``dtype=np.longdouble`` gives extended precision where the platform has it.
        """
        T = np.asarray(T, dtype=dtype)
        X = np.asarray(X, dtype=dtype).reshape(T.shape[0], self.dim) if self.dim else None
        cols = [X[:, i] for i in range(self.dim)] + [T]
        out = np.zeros_like(T)
        for exps, c in self.items():
            coef = dtype(c.numerator) / dtype(c.denominator) if dtype is not float else float(c)
            term = np.full_like(T, coef)
            for col, e in zip(cols, exps):
                if e:
                    term = term * col**e
            out = out + term
        return out

    # -- text forms ---------------------------------------------------------
    def var_names(self) -> list[str]:
        return [f"x{i + 1}" for i in range(self.dim)] + ["t"]

    def __str__(self) -> str:
        return to_text(self)

    def __repr__(self) -> str:
        return f"MultiPoly(dim={self.dim}, {to_text(self)!r})"


def var_index(dim: int, name) -> int:
    if isinstance(name, int):
        if 0 <= name <= dim:
            return name
        raise ValueError(f"variable index {name} out of range for dim {dim}")
    if name == "t":
        return dim
    if isinstance(name, str) and name.startswith("x") and name[1:].isdigit():
        i = int(name[1:])
        if 1 <= i <= dim:
            return i - 1
    raise ValueError(f"unknown variable {name!r} for dim {dim}")


def _grlex_key(exps):
    # higher total degree first, then lexicographic on (t, x1, ..., xd)
    reordered = (exps[-1],) + tuple(exps[:-1])
    return (-sum(exps), tuple(-e for e in reordered))


def _fmt_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def to_text(p: MultiPoly) -> str:
    """Canonical text form, e.g. ``2*t*x1^2 - 1/3*x2``."""
    if p.is_zero():
        return "0"
    names = p.var_names()
    order = [len(names) - 1] + list(range(len(names) - 1))
    pieces = []
    for exps, c in p.items():
        factors = []
        for i in order:
            e = exps[i]
            if e == 1:
                factors.append(names[i])
            elif e > 1:
                factors.append(f"{names[i]}^{e}")
        mag = abs(c)
        if not factors:
            body = _fmt_rational(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = _fmt_rational(mag) + "*" + "*".join(factors)
        sign = "-" if c < 0 else "+"
        pieces.append((sign, body))
    first_sign, first_body = pieces[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


# -- differential operators ---------------------------------------------------


def partial(p: MultiPoly, name) -> MultiPoly:
    return p.partial(name)


def euler(p: MultiPoly) -> MultiPoly:
    return p.euler()


def laplace_x(p: MultiPoly) -> MultiPoly:
    """Spatial Laplacian sum_i d^2 p / dx_i^2."""
    out = MultiPoly(p.dim)
    for i in range(p.dim):
        out = out + p.partial(i).partial(i)
    return out


def conjugated_wave(p: MultiPoly, c=1) -> MultiPoly:
    """e^t (d_tt - c^2 Lap_x) (e^{-t} p) = p_tt - 2 p_t + p - c^2 Lap_x p."""
    pt = p.partial("t")
    return pt.partial("t") - pt.scale(2) + p - laplace_x(p).scale(as_fraction(c) ** 2)


def operator_D(p: MultiPoly) -> MultiPoly:
    """t^2 Lap_x - <x,grad>^2 - d <x,grad>, all derivatives in x."""
    e1 = p.euler()
    t2 = MultiPoly.var(p.dim, "t") ** 2
    return t2 * laplace_x(p) - e1.euler() - e1.scale(p.dim)


def eigen_operator(p: MultiPoly, mu) -> MultiPoly:
    """Second-order cone operator whose eigenvalue on degree-n orthogonal polynomials is -n."""
    mu = as_fraction(mu)
    d = p.dim
    t = MultiPoly.var(d, "t")
    pt = p.partial("t")
    return (
        t * (laplace_x(p) + pt.partial("t"))
        + pt.euler().scale(2)
        - p.euler()
        + (MultiPoly.const(d, 2 * mu + d + 1) - t) * pt
    )


# -- exact surds ----------------------------------------------------------------


def _square_split(n: int) -> tuple[int, int]:
    """Write n = a^2 * b with b squarefree; returns (a, b)."""
    a, b = 1, 1
    p = 2
    while p * p <= n:
        while n % (p * p) == 0:
            n //= p * p
            a *= p
        if n % p == 0:
            n //= p
            b *= p
        p += 1 if p == 2 else 2
    return a, b * n


class Surd:
    """Exact real number ``coef * sqrt(rad)`` with ``rad`` a squarefree integer.

    Only what the orthonormal spherical-harmonic convention needs: sums of
    surds sharing a radicand, rational scaling, and products.
    """

    __slots__ = ("coef", "rad")

    def __init__(self, coef, rad=1):
        coef = as_fraction(coef)
        rad = as_fraction(rad)
        if rad < 0:
            raise ValueError("negative radicand")
        if coef == 0 or rad == 0:
            self.coef, self.rad = Fraction(0), 1
            return
        # sqrt(p/q) = sqrt(p q) / q
        a, b = _square_split(rad.numerator * rad.denominator)
        self.coef = coef * a / rad.denominator
        self.rad = b

    @classmethod
    def sqrt(cls, value) -> "Surd":
        return cls(1, value)

    def simplify(self):
        """Return a Fraction when the radicand is 1."""
        return self.coef if self.rad == 1 else self

    def _other(self, other):
        if isinstance(other, Surd):
            return other
        return Surd(as_fraction(other))

    def __add__(self, other):
        try:
            other = self._other(other)
        except TypeError:
            return NotImplemented
        if self.coef == 0:
            return other
        if other.coef == 0:
            return self
        if self.rad != other.rad:
            raise ValueError(f"cannot add surds with radicands {self.rad} and {other.rad}")
        return Surd(self.coef + other.coef, self.rad)

    __radd__ = __add__

    def __neg__(self):
        return Surd(-self.coef, self.rad)

    def __sub__(self, other):
        return self + (-self._other(other))

    def __rsub__(self, other):
        return self._other(other) - self

    def __mul__(self, other):
        try:
            other = self._other(other)
        except TypeError:
            return NotImplemented
        return Surd(self.coef * other.coef, self.rad * other.rad)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._other(other)
        if other.coef == 0:
            raise ZeroDivisionError("surd division by zero")
        # 1/(c sqrt(r)) = sqrt(r) / (c r)
        return self * Surd(1 / (other.coef * other.rad), other.rad)

    def __rtruediv__(self, other):
        return self._other(other) / self

    def __eq__(self, other):
        if isinstance(other, Surd):
            return self.coef == other.coef and self.rad == other.rad
        if isinstance(other, (int, Fraction)):
            return self.rad == 1 and self.coef == other or (self.coef == 0 and other == 0)
        if isinstance(other, float):
            return float(self) == other
        return NotImplemented

    def __hash__(self):
        return hash((self.coef, self.rad))

    def __bool__(self):
        return self.coef != 0

    def __float__(self):
        return float(self.coef) * math.sqrt(self.rad)

    def __abs__(self):
        return Surd(abs(self.coef), self.rad)

    def __lt__(self, other):
        return float(self) < float(other)

    def __str__(self):
        if self.rad == 1:
            return _fmt_rational(self.coef)
        return f"{_fmt_rational(self.coef)}*sqrt({self.rad})"

    __repr__ = __str__

    @classmethod
    def parse(cls, text: str) -> "Surd":
        text = text.strip()
        if "*sqrt(" in text:
            coef, rest = text.split("*sqrt(")
            return cls(Fraction(coef), int(rest.rstrip(")")))
        return cls(Fraction(text))
