"""Polynomial scalar, vector and tensor fields on R^3 with rational coefficients.

Monomials are exponent triples ``(a1, a2, a3)``; coefficients are
:class:`fractions.Fraction`.  All field objects are immutable and hashable.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import comb
from numbers import Rational
from typing import Callable, Iterable, Iterator, Mapping, Sequence

Monomial = tuple  # (a1, a2, a3)

ZERO_MONO: Monomial = (0, 0, 0)
UNIT_MONOS: tuple = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def grlex_key(mono: Monomial):
    """Sort key for graded-lexicographic order (ascending)."""
    return (sum(mono), mono)


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"exact coefficient required, got {type(c).__name__}")


class PolyScalarField:
    """Polynomial in x1, x2, x3 over Q.

    Stored as a map monomial -> nonzero Fraction.  Build with
    :meth:`const`, :meth:`var`, :meth:`monomial` or from a mapping.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, object] | None = None):
        clean = {}
        if terms:
            for mono, c in terms.items():
                mono = tuple(int(a) for a in mono)
                if len(mono) != 3 or min(mono) < 0:
                    raise ValueError(f"bad monomial {mono!r}")
                c = _as_fraction(c)
                if c:
                    clean[mono] = clean.get(mono, Fraction(0)) + c
                    if not clean[mono]:
                        del clean[mono]
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "PolyScalarField":
        # trusted path: terms already pruned, keys are int triples
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c) -> "PolyScalarField":
        c = _as_fraction(c)
        return cls._raw({ZERO_MONO: c} if c else {})

    @classmethod
    def var(cls, i: int) -> "PolyScalarField":
        return cls._raw({UNIT_MONOS[i]: Fraction(1)})

    @classmethod
    def monomial(cls, exps, coeff=1) -> "PolyScalarField":
        return cls({tuple(exps): coeff})

    @classmethod
    def zero(cls) -> "PolyScalarField":
        return cls._raw({})

    # -- introspection
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coeff(self, mono) -> Fraction:
        return self._terms.get(tuple(mono), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self._terms), default=-1)

    def sorted_terms(self) -> list:
        return sorted(self._terms.items(), key=lambda kv: grlex_key(kv[0]))

    def __call__(self, *point) -> Fraction:
        if len(point) == 1 and isinstance(point[0], (tuple, list)):
            point = tuple(point[0])
        x, y, z = (_as_fraction(p) for p in point)
        return sum(
            (c * x ** a * y ** b * z ** d for (a, b, d), c in self._terms.items()),
            Fraction(0),
        )

    # -- arithmetic
    def __add__(self, other):
        if not isinstance(other, PolyScalarField):
            try:
                other = PolyScalarField.const(other)
            except TypeError:
                return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return PolyScalarField._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return PolyScalarField._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "PolyScalarField":
        c = _as_fraction(c)
        if not c:
            return PolyScalarField._raw({})
        return PolyScalarField._raw({m: c * v for m, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, PolyScalarField):
            out: dict = {}
            for m1, c1 in self._terms.items():
                for m2, c2 in other._terms.items():
                    m = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2])
                    out[m] = out.get(m, 0) + c1 * c2
            return PolyScalarField._raw({m: c for m, c in out.items() if c})
        if isinstance(other, (int, Fraction, Rational)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Rational)):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, Rational)):
            return self.scale(Fraction(1) / _as_fraction(other))
        return NotImplemented

    def __pow__(self, n: int):
        out = PolyScalarField.const(1)
        for _ in range(n):
            out = out * self
        return out

    # -- calculus and substitution
    def diff(self, i: int) -> "PolyScalarField":
        out = {}
        for m, c in self._terms.items():
            a = m[i]
            if a:
                mm = list(m)
                mm[i] -= 1
                out[tuple(mm)] = c * a
        return PolyScalarField._raw(out)

    def degree_scaled(self, weight: Callable[[int], Fraction]) -> "PolyScalarField":
        """Multiply each monomial of total degree d by ``weight(d)``."""
        out = {}
        for m, c in self._terms.items():
            v = c * weight(sum(m))
            if v:
                out[m] = v
        return PolyScalarField._raw(out)

    def shift(self, offset: Sequence) -> "PolyScalarField":
        """Return q with q(x) = p(x + offset)."""
        off = [_as_fraction(o) for o in offset]
        if not any(off):
            return self
        out = PolyScalarField.zero()
        for m, c in self._terms.items():
            factors = []
            for i in range(3):
                # (x_i + o_i)^a = sum_k C(a, k) o_i^(a-k) x_i^k
                f = {}
                for k in range(m[i] + 1):
                    v = comb(m[i], k) * off[i] ** (m[i] - k)
                    if v:
                        e = [0, 0, 0]
                        e[i] = k
                        f[tuple(e)] = Fraction(v)
                factors.append(PolyScalarField._raw(f))
            out = out + (factors[0] * factors[1] * factors[2]).scale(c)
        return out

    # -- equality
    def __eq__(self, other):
        if isinstance(other, PolyScalarField):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction, Rational)):
            return self._terms == PolyScalarField.const(other)._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self):
        if not self._terms:
            return "0"
        parts = []
        for (a, b, d), c in self.sorted_terms():
            mono = "*".join(
                f"x{i + 1}" + (f"^{e}" if e > 1 else "")
                for i, e in enumerate((a, b, d))
                if e
            )
            parts.append(f"{c}" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)


Scalar = PolyScalarField


def _to_scalar(x) -> PolyScalarField:
    return x if isinstance(x, PolyScalarField) else PolyScalarField.const(x)


def coordinates() -> tuple:
    """The coordinate functions (x1, x2, x3)."""
    return tuple(PolyScalarField.var(i) for i in range(3))


class PolyVectorField:
    """Three polynomial components."""

    __slots__ = ("_c",)

    def __init__(self, components: Iterable):
        comps = tuple(_to_scalar(c) for c in components)
        if len(comps) != 3:
            raise ValueError("vector fields have exactly 3 components")
        self._c = comps

    @classmethod
    def zero(cls) -> "PolyVectorField":
        z = PolyScalarField.zero()
        return cls((z, z, z))

    @classmethod
    def unit(cls, i: int) -> "PolyVectorField":
        return cls(1 if j == i else 0 for j in range(3))

    @classmethod
    def position(cls) -> "PolyVectorField":
        return cls(coordinates())

    def __getitem__(self, i) -> PolyScalarField:
        return self._c[i]

    def __iter__(self) -> Iterator[PolyScalarField]:
        return iter(self._c)

    def __len__(self):
        return 3

    def map(self, f) -> "PolyVectorField":
        return PolyVectorField(f(c) for c in self._c)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self._c)

    def degree(self) -> int:
        return max(c.degree() for c in self._c)

    def __call__(self, *point):
        return tuple(c(*point) for c in self._c)

    def __add__(self, other):
        if not isinstance(other, PolyVectorField):
            return NotImplemented
        return PolyVectorField(a + b for a, b in zip(self._c, other._c))

    def __sub__(self, other):
        if not isinstance(other, PolyVectorField):
            return NotImplemented
        return PolyVectorField(a - b for a, b in zip(self._c, other._c))

    def __neg__(self):
        return self.map(lambda c: -c)

    def __mul__(self, s):
        if isinstance(s, (PolyScalarField, int, Fraction, Rational)):
            return PolyVectorField(c * s for c in self._c)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, s):
        return self.map(lambda c: c / s)

    def dot(self, other: "PolyVectorField") -> PolyScalarField:
        return self._c[0] * other[0] + self._c[1] * other[1] + self._c[2] * other[2]

    def cross(self, other: "PolyVectorField") -> "PolyVectorField":
        a, b = self._c, other
        return PolyVectorField((
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ))

    def outer(self, other: "PolyVectorField") -> "PolyTensorField":
        return PolyTensorField([[a * b for b in other] for a in self._c])

    def __eq__(self, other):
        if isinstance(other, PolyVectorField):
            return self._c == other._c
        return NotImplemented

    def __hash__(self):
        return hash(self._c)

    def __repr__(self):
        return f"PolyVectorField({', '.join(map(repr, self._c))})"


Vector = PolyVectorField


class PolyTensorField:
    """3x3 matrix of polynomials; ``entries[i][j]`` is row i, column j."""

    __slots__ = ("_e",)

    def __init__(self, rows: Iterable[Iterable]):
        e = tuple(tuple(_to_scalar(x) for x in row) for row in rows)
        if len(e) != 3 or any(len(r) != 3 for r in e):
            raise ValueError("tensor fields are 3x3")
        self._e = e

    @classmethod
    def zero(cls) -> "PolyTensorField":
        return cls([[0] * 3 for _ in range(3)])

    @classmethod
    def identity(cls) -> "PolyTensorField":
        return cls([[1 if i == j else 0 for j in range(3)] for i in range(3)])

    @classmethod
    def from_rows(cls, rows: Sequence[PolyVectorField]) -> "PolyTensorField":
        return cls([list(r) for r in rows])

    @classmethod
    def basis(cls, i: int, j: int) -> "PolyTensorField":
        """e_i (x) e_j."""
        return cls([[1 if (a, b) == (i, j) else 0 for b in range(3)] for a in range(3)])

    def __getitem__(self, ij):
        if isinstance(ij, tuple):
            return self._e[ij[0]][ij[1]]
        return PolyVectorField(self._e[ij])

    def row(self, i: int) -> PolyVectorField:
        return PolyVectorField(self._e[i])

    def col(self, j: int) -> PolyVectorField:
        return PolyVectorField(self._e[i][j] for i in range(3))

    def rows(self) -> tuple:
        return tuple(PolyVectorField(r) for r in self._e)

    @property
    def entries(self) -> tuple:
        return self._e

    def map(self, f) -> "PolyTensorField":
        return PolyTensorField([[f(x) for x in r] for r in self._e])

    def is_zero(self) -> bool:
        return all(x.is_zero() for r in self._e for x in r)

    def is_symmetric(self) -> bool:
        return all(self._e[i][j] == self._e[j][i] for i in range(3) for j in range(i))

    def is_skew(self) -> bool:
        return all(
            (self._e[i][j] + self._e[j][i]).is_zero()
            for i in range(3) for j in range(i, 3)
        )

    def degree(self) -> int:
        return max(x.degree() for r in self._e for x in r)

    def __call__(self, *point):
        return tuple(tuple(x(*point) for x in r) for r in self._e)

    @property
    def T(self) -> "PolyTensorField":
        return PolyTensorField([[self._e[j][i] for j in range(3)] for i in range(3)])

    def __add__(self, other):
        if not isinstance(other, PolyTensorField):
            return NotImplemented
        return PolyTensorField(
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self._e, other._e)]
        )

    def __sub__(self, other):
        if not isinstance(other, PolyTensorField):
            return NotImplemented
        return PolyTensorField(
            [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self._e, other._e)]
        )

    def __neg__(self):
        return self.map(lambda x: -x)

    def __mul__(self, s):
        if isinstance(s, (PolyScalarField, int, Fraction, Rational)):
            return self.map(lambda x: x * s)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, s):
        return self.map(lambda x: x / s)

    def __matmul__(self, other):
        if isinstance(other, PolyTensorField):
            return PolyTensorField([
                [sum((self._e[i][k] * other._e[k][j] for k in range(3)), PolyScalarField.zero())
                 for j in range(3)]
                for i in range(3)
            ])
        if isinstance(other, PolyVectorField):
            return PolyVectorField(
                sum((self._e[i][k] * other[k] for k in range(3)), PolyScalarField.zero())
                for i in range(3)
            )
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, PolyTensorField):
            return self._e == other._e
        return NotImplemented

    def __hash__(self):
        return hash(self._e)

    def __repr__(self):
        rows = "; ".join("[" + ", ".join(map(repr, r)) + "]" for r in self._e)
        return f"PolyTensorField({rows})"


Tensor = PolyTensorField


def box_integral(p: PolyScalarField, lo: Sequence, hi: Sequence) -> Fraction:
    """Exact integral of ``p`` over the box prod [lo_i, hi_i]."""
    lo = [_as_fraction(v) for v in lo]
    hi = [_as_fraction(v) for v in hi]
    total = Fraction(0)
    for m, c in p.items():
        v = c
        for i in range(3):
            v *= (hi[i] ** (m[i] + 1) - lo[i] ** (m[i] + 1)) / (m[i] + 1)
        total += v
    return total


def monomials_up_to(degree: int) -> list:
    """All exponent triples of total degree <= ``degree`` in grlex order."""
    out = [m for m in product(range(degree + 1), repeat=3) if sum(m) <= degree]
    return sorted(out, key=grlex_key)
