"""Pointwise matrix algebra and differential operators on polynomial fields.

Conventions: the Jacobian of ``v`` has rows indexed by component,
``jacobian(v)[i, j] = d_j v_i``.  Tensor operators ``tensor_rot`` and
``tensor_div`` act row by row.
"""
from __future__ import annotations

from .fields import PolyScalarField, PolyTensorField, PolyVectorField
from ..errors import NotSkew, SymmetryRequired

__all__ = [
    "sym", "skw", "tr", "transpose", "spn", "spn_inv", "identity",
    "matrix_algebra", "grad", "rot", "div", "jacobian",
    "tensor_rot", "tensor_rot_t", "tensor_div", "rot_rot_t", "sym_grad",
    "require_symmetric",
]


def identity() -> PolyTensorField:
    return PolyTensorField.identity()


def transpose(A: PolyTensorField) -> PolyTensorField:
    return A.T


def sym(A: PolyTensorField) -> PolyTensorField:
    return (A + A.T) / 2


def skw(A: PolyTensorField) -> PolyTensorField:
    return (A - A.T) / 2


def tr(A: PolyTensorField) -> PolyScalarField:
    return A[0, 0] + A[1, 1] + A[2, 2]


def spn(v: PolyVectorField) -> PolyTensorField:
    """Skew matrix with ``spn(v) @ w == v x w``."""
    z = PolyScalarField.zero()
    return PolyTensorField([
        [z, -v[2], v[1]],
        [v[2], z, -v[0]],
        [-v[1], v[0], z],
    ])


def spn_inv(A: PolyTensorField) -> PolyVectorField:
    if not A.is_skew():
        raise NotSkew("spn_inv needs an exactly skew-symmetric tensor", residual=sym(A))
    return PolyVectorField((A[2, 1], A[0, 2], A[1, 0]))


def require_symmetric(M: PolyTensorField, what: str = "input") -> None:
    if not M.is_symmetric():
        raise SymmetryRequired(f"{what} must be symmetric", residual=skw(M))


_ALGEBRA = {
    "sym": sym,
    "skw": skw,
    "tr": tr,
    "transpose": transpose,
    "spn": spn,
    "spn_inv": spn_inv,
}


def matrix_algebra(tag: str, arg=None):
    """Dispatch one of the pointwise algebra operations by name.

    ``tag`` is one of ``sym, skw, tr, transpose, spn, spn_inv, identity``.
    """
    if tag == "identity":
        return identity()
    try:
        op = _ALGEBRA[tag]
    except KeyError:
        raise ValueError(f"unknown algebra op {tag!r}") from None
    return op(arg)


def grad(u: PolyScalarField) -> PolyVectorField:
    return PolyVectorField(u.diff(i) for i in range(3))


def rot(v: PolyVectorField) -> PolyVectorField:
    return PolyVectorField((
        v[2].diff(1) - v[1].diff(2),
        v[0].diff(2) - v[2].diff(0),
        v[1].diff(0) - v[0].diff(1),
    ))


def div(v: PolyVectorField) -> PolyScalarField:
    return v[0].diff(0) + v[1].diff(1) + v[2].diff(2)


def jacobian(v: PolyVectorField) -> PolyTensorField:
    return PolyTensorField([[v[i].diff(j) for j in range(3)] for i in range(3)])


def tensor_rot(M: PolyTensorField) -> PolyTensorField:
    return PolyTensorField.from_rows([rot(r) for r in M.rows()])


def tensor_rot_t(M: PolyTensorField) -> PolyTensorField:
    return tensor_rot(M).T


def tensor_div(M: PolyTensorField) -> PolyVectorField:
    return PolyVectorField(div(r) for r in M.rows())


def rot_rot_t(M: PolyTensorField) -> PolyTensorField:
    """Saint-Venant incompatibility operator Rot((Rot M)^T)."""
    return tensor_rot(tensor_rot_t(M))


def sym_grad(v: PolyVectorField) -> PolyTensorField:
    return sym(jacobian(v))
