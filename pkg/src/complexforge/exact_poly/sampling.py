"""Seeded pseudo-random polynomial fields for the property suites."""
from __future__ import annotations

import random
from fractions import Fraction

from .calculus import sym
from .fields import PolyScalarField, PolyTensorField, PolyVectorField, monomials_up_to

NUMERATORS = tuple(n for n in range(-9, 10) if n)
DENOMINATORS = (1, 2, 3)


class FieldSampler:
    """Draw random fields with coefficients in {-9..9}\\{0} / {1, 2, 3}.

    Each scalar entry gets ``terms`` monomials (with replacement) of total
    degree at most ``degree``.
    """

    def __init__(self, seed: int = 0, degree: int = 4, terms: int = 4):
        if degree < 0:
            raise ValueError("degree must be non-negative")
        self.rng = random.Random(seed)
        self.degree = degree
        self.terms = terms
        self._monos = monomials_up_to(degree)

    def coefficient(self) -> Fraction:
        return Fraction(self.rng.choice(NUMERATORS), self.rng.choice(DENOMINATORS))

    def scalar(self, degree: int | None = None) -> PolyScalarField:
        monos = self._monos if degree is None else monomials_up_to(degree)
        out = {}
        for _ in range(self.terms):
            m = self.rng.choice(monos)
            out[m] = out.get(m, 0) + self.coefficient()
        return PolyScalarField(out)

    def vector(self, degree: int | None = None) -> PolyVectorField:
        return PolyVectorField(self.scalar(degree) for _ in range(3))

    def tensor(self, degree: int | None = None) -> PolyTensorField:
        return PolyTensorField([[self.scalar(degree) for _ in range(3)] for _ in range(3)])

    def symmetric_tensor(self, degree: int | None = None) -> PolyTensorField:
        return sym(self.tensor(degree))

    def rational(self) -> Fraction:
        return self.coefficient()
