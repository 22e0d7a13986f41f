"""Exact residuals of the classical tensor-calculus identities and the
product rules used when multiplying fields by a cut-off function.

Every ``verify_*``/``cutting_*`` function returns left-minus-right, so a
correct identity shows up as an exactly zero field.
"""
from __future__ import annotations

from typing import NamedTuple

from .calculus import (
    div, grad, jacobian, require_symmetric, rot, rot_rot_t, skw, spn, spn_inv,
    sym, tensor_div, tensor_rot, tensor_rot_t, tr,
)
from .fields import PolyScalarField, PolyTensorField, PolyVectorField
from ..errors import ArityMismatch

IDENTITY_IDS = ("i", "ii", "ii'", "iii", "iii'", "iv", "iv'", "v", "v'", "vi", "vi'")

# which argument each identity consumes
IDENTITY_ARITY = {
    "i": "u",
    "ii": "M", "ii'": "M",
    "iii": "v",
    "iii'": "M",
    "iv": "v",
    "iv'": "M",
    "v": "M", "v'": "M",
    "vi": "M", "vi'": "M",
}
SYMMETRIC_ONLY = frozenset({"ii'", "vi'"})


def _skew_vector(M: PolyTensorField) -> PolyVectorField:
    return spn_inv(skw(M))


def _id_i(u):
    return (tensor_rot(PolyTensorField.identity() * u) + spn(grad(u)),)


def _id_ii(M):
    return (tr(tensor_rot(M)) - 2 * div(_skew_vector(M)),)


def _id_ii_sym(M):
    return (tr(tensor_rot(M)),)


def _id_iii(v):
    return (tensor_div(spn(v)) + rot(v),)


def _id_iii_skw(M):
    return (tensor_div(skw(M)) + rot(_skew_vector(M)),)


def _rot_spn_rhs(v):
    return PolyTensorField.identity() * div(v) - jacobian(v).T


def _id_iv(v):
    return (tensor_rot(spn(v)) - _rot_spn_rhs(v),)


def _id_iv_skw(M):
    return (tensor_rot(skw(M)) - _rot_spn_rhs(_skew_vector(M)),)


def _id_v(M):
    v = (tensor_div(M.T) - grad(tr(M))) / 2
    return (skw(tensor_rot(M)) - spn(v),)


def _id_v_prime(M):
    R = tensor_rot(M)
    rhs = rot(tensor_div(M.T))
    return (
        2 * tensor_div(sym(R)) - rhs,
        -2 * tensor_div(skw(R)) - rhs,
    )


def _id_vi(M):
    return (skw(rot_rot_t(M)) - rot_rot_t(skw(M)),)


def _id_vi_sym(M):
    return (sym(rot_rot_t(M)) - rot_rot_t(sym(M)),)


_IDENTITIES = {
    "i": _id_i,
    "ii": _id_ii,
    "ii'": _id_ii_sym,
    "iii": _id_iii,
    "iii'": _id_iii_skw,
    "iv": _id_iv,
    "iv'": _id_iv_skw,
    "v": _id_v,
    "v'": _id_v_prime,
    "vi": _id_vi,
    "vi'": _id_vi_sym,
}

_KINDS = {"u": PolyScalarField, "v": PolyVectorField, "M": PolyTensorField}


def verify_appendix_identity(ident: str, u=None, v=None, M=None) -> tuple:
    """Residual fields (left minus right) of one tensor-calculus identity.

    Returns a tuple with one field per equality; ``v'`` is a chain of two
    equalities and therefore yields two residuals.

    Raises
    ------
    ArityMismatch
        The identity's argument is missing or has the wrong field type.
    SymmetryRequired
        ``ii'`` and ``vi'`` were given a non-symmetric tensor.
    """
    ident = ident.replace("′", "'")
    if ident not in _IDENTITIES:
        raise ArityMismatch(f"unknown identity {ident!r}")
    name = IDENTITY_ARITY[ident]
    arg = {"u": u, "v": v, "M": M}[name]
    if not isinstance(arg, _KINDS[name]):
        raise ArityMismatch(
            f"identity {ident} needs {name} of type {_KINDS[name].__name__}, "
            f"got {type(arg).__name__}"
        )
    if ident in SYMMETRIC_ONLY:
        require_symmetric(arg, f"M for identity {ident}")
    return _IDENTITIES[ident](arg)


def residual_is_zero(residuals) -> bool:
    if not isinstance(residuals, tuple):
        residuals = (residuals,)
    return all(r.is_zero() for r in residuals)


def cutting_div(phi: PolyScalarField, N: PolyTensorField) -> PolyVectorField:
    """Residual of Div(phi N) = phi Div N + N grad(phi)."""
    return tensor_div(N * phi) - tensor_div(N) * phi - N @ grad(phi)


def _grad_cross(P: PolyTensorField, Q: PolyTensorField) -> PolyTensorField:
    # (grad P) x Q: column l is (d_{l+1} P) q_{l+2} - (d_{l+2} P) q_{l+1},
    # q_j the columns of Q, indices cyclic
    dP = [P.map(lambda x, k=k: x.diff(k)) for k in range(3)]
    q = [Q.col(j) for j in range(3)]
    cols = []
    for l in range(3):
        a, b = (l + 1) % 3, (l + 2) % 3
        cols.append(dP[a] @ q[b] - dP[b] @ q[a])
    return PolyTensorField.from_rows(cols).T


def psi_term(phi: PolyScalarField, M: PolyTensorField) -> PolyTensorField:
    """Zeroth-order remainder (grad(spn grad phi)) x M^T of the RotRot^T product rule."""
    return _grad_cross(spn(grad(phi)), M.T)


class CuttingRotRot(NamedTuple):
    result: PolyTensorField
    psi_term: PolyTensorField


def cutting_rotrot(phi: PolyScalarField, M: PolyTensorField) -> CuttingRotRot:
    """RotRot^T(phi M) together with its algebraic remainder term.

    The product rule reads
    ``RotRot^T(phi M) = phi RotRot^T M + 2 sym((spn grad phi) Rot M) + psi``
    for symmetric ``M``; use :func:`cutting_rotrot_residual` to check it.
    """
    require_symmetric(M, "M for the RotRot^T product rule")
    return CuttingRotRot(rot_rot_t(M * phi), psi_term(phi, M))


def cutting_rotrot_residual(phi: PolyScalarField, M: PolyTensorField) -> PolyTensorField:
    result, psi = cutting_rotrot(phi, M)
    first_order = 2 * sym(spn(grad(phi)) @ tensor_rot(M))
    return result - rot_rot_t(M) * phi - first_order - psi


def cutting_rotrot_general(phi: PolyScalarField, M: PolyTensorField) -> PolyTensorField:
    """Residual of the unsymmetrised product rule, valid for any tensor ``M``.

    RotRot^T(phi M) = phi RotRot^T M - Rot^T M spn(grad phi)
                      + spn(grad phi) Rot M^T + psi
    """
    S = spn(grad(phi))
    rhs = (rot_rot_t(M) * phi - tensor_rot_t(M) @ S + S @ tensor_rot(M.T)
           + psi_term(phi, M))
    return rot_rot_t(M * phi) - rhs
