"""Right inverses of grad, rot and div on polynomial fields.

Realised by the Poincare homotopy formulas around a centre ``c``
(origin by default):

    grad potential:  u(x) = int_0^1 (x - c) . v(c + t(x - c)) dt
    rot potential:   A(x) = int_0^1 t w(c + t(x - c)) x (x - c) dt
    div potential:   E(x) = int_0^1 t^2 f(c + t(x - c)) (x - c) dt

On monomials of degree d (in x - c) the t-integrals reduce to the factors
1/(d+1), 1/(d+2), 1/(d+3).  Any centre works because polynomials are
defined on all of R^3.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import NotClosed, NotSolenoidal
from .exact_poly import (
    PolyScalarField, PolyTensorField, PolyVectorField, div, grad, rot,
    tensor_div, tensor_rot,
)

__all__ = [
    "HomotopyCenter", "ORIGIN",
    "poincare_grad_potential", "poincare_curl_potential", "poincare_div_potential",
    "rowwise_lift", "grad_lift", "rot_lift", "div_lift",
]


@dataclass(frozen=True)
class HomotopyCenter:
    center: tuple = (Fraction(0), Fraction(0), Fraction(0))

    def __post_init__(self):
        object.__setattr__(self, "center", tuple(Fraction(c) for c in self.center))
        if len(self.center) != 3:
            raise ValueError("center must be a point in R^3")

    @property
    def is_origin(self) -> bool:
        return not any(self.center)


ORIGIN = HomotopyCenter()


def _center(center) -> tuple:
    if center is None:
        return ORIGIN.center
    if isinstance(center, HomotopyCenter):
        return center.center
    return HomotopyCenter(tuple(center)).center


def _to_local(p: PolyScalarField, c: Sequence) -> PolyScalarField:
    # y = x - c
    return p.shift(c)


def _to_global(p: PolyScalarField, c: Sequence) -> PolyScalarField:
    return p.shift([-ci for ci in c])


def _weight(offset: int):
    return lambda d: Fraction(1, d + offset)


def poincare_grad_potential(v: PolyVectorField, center=None) -> PolyScalarField:
    """Scalar u with grad u = v and u(center) = 0; needs rot v = 0."""
    r = rot(v)
    if not r.is_zero():
        raise NotClosed("field is not curl-free", residual=r)
    c = _center(center)
    y = PolyVectorField.position()
    local = [_to_local(v[i], c).degree_scaled(_weight(1)) for i in range(3)]
    u = sum((y[i] * local[i] for i in range(3)), PolyScalarField.zero())
    return _to_global(u, c)


def poincare_curl_potential(w: PolyVectorField, center=None) -> PolyVectorField:
    """Vector A with rot A = w; needs div w = 0."""
    d = div(w)
    if not d.is_zero():
        raise NotSolenoidal("field is not divergence-free", residual=d)
    c = _center(center)
    scaled = PolyVectorField(_to_local(w[i], c).degree_scaled(_weight(2)) for i in range(3))
    A = scaled.cross(PolyVectorField.position())
    return A.map(lambda p: _to_global(p, c))


def poincare_div_potential(f: PolyScalarField, center=None) -> PolyVectorField:
    """Vector E with div E = f; every polynomial is admissible."""
    c = _center(center)
    scaled = _to_local(f, c).degree_scaled(_weight(3))
    E = PolyVectorField.position() * scaled
    return E.map(lambda p: _to_global(p, c))


def grad_lift(G: PolyTensorField, center=None) -> PolyVectorField:
    """Vector v with jacobian(v) = G, row by row; needs Rot G = 0."""
    comps = []
    for i, row in enumerate(G.rows()):
        try:
            comps.append(poincare_grad_potential(row, center))
        except NotClosed as exc:
            raise NotClosed("tensor rows are not curl-free", residual=tensor_rot(G), row=i) from exc
    return PolyVectorField(comps)


def rot_lift(N: PolyTensorField, center=None) -> PolyTensorField:
    """Tensor E with Rot E = N, row by row; needs Div N = 0."""
    rows = []
    for i, row in enumerate(N.rows()):
        try:
            rows.append(poincare_curl_potential(row, center))
        except NotSolenoidal as exc:
            raise NotSolenoidal("tensor rows are not divergence-free",
                                residual=tensor_div(N), row=i) from exc
    return PolyTensorField.from_rows(rows)


def div_lift(v: PolyVectorField, center=None) -> PolyTensorField:
    """Tensor E with Div E = v, row by row."""
    return PolyTensorField.from_rows([poincare_div_potential(v[i], center) for i in range(3)])


_LIFTS = {"grad": grad_lift, "rot": rot_lift, "div": div_lift}


def rowwise_lift(op: str, field, center=None):
    """Row-wise potential for the vector de Rham complex.

    ``op='grad'`` takes a tensor G and returns v with jacobian(v) = G;
    ``op='rot'`` takes N and returns E with Rot E = N;
    ``op='div'`` takes a vector v and returns E with Div E = v.
    """
    try:
        lift = _LIFTS[op]
    except KeyError:
        raise ValueError(f"unknown lift {op!r}; expected grad, rot or div") from None
    return lift(field, center)
