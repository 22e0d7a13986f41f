"""Explicit regular potentials and decompositions for the elasticity complex

    sym grad  ->  RotRot^T  ->  Div

on symmetric polynomial tensor fields, assembled from the row-wise de Rham
homotopy potentials.  No boundary conditions.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Sequence

from .de_rham import div_lift, grad_lift, rot_lift
from .errors import DegenerateBox, NotInKernel, NotSolenoidal
from .exact_poly import (
    PolyTensorField, PolyVectorField, box_integral, field_to_dict,
    require_symmetric, rot_rot_t, skw, spn, spn_inv, sym, sym_grad, tensor_div,
    tensor_rot, tensor_rot_t, tr,
)
from .rational_linalg import solve_exact

__all__ = [
    "potential_sym_grad", "potential_rot_rot_t", "potential_div_sym",
    "rot_rot_t_stages", "div_sym_stages",
    "ElasticityDecomposition", "decompose_rotrot_domain", "decompose_div_domain",
    "rigid_motion_basis", "RM_DIM", "project_rigid_motions", "as_rigid_motion",
    "DEFAULT_BOX",
]

RM_DIM = 6
DEFAULT_BOX = ((-1, -1, -1), (1, 1, 1))


def potential_sym_grad(M: PolyTensorField, center=None) -> PolyVectorField:
    """Displacement v with sym_grad(v) = M for M in the kernel of RotRot^T.

    v = P_grad(M + spn P_grad(Rot^T M)), both potentials row-wise.
    """
    require_symmetric(M)
    inc = rot_rot_t(M)
    if not inc.is_zero():
        raise NotInKernel("RotRot^T M must vanish", residual=inc)
    u = grad_lift(tensor_rot_t(M), center)
    return grad_lift(M + spn(u), center)


class RotRotStages(NamedTuple):
    E: PolyTensorField        # Rot E = N
    E_tilde: PolyTensorField  # E^T - (tr E) I, divergence-free
    M_tilde: PolyTensorField  # Rot M_tilde = E_tilde
    result: PolyTensorField   # sym M_tilde


def rot_rot_t_stages(N: PolyTensorField, center=None) -> RotRotStages:
    require_symmetric(N)
    d = tensor_div(N)
    if not d.is_zero():
        raise NotSolenoidal("Div N must vanish", residual=d)
    E = rot_lift(N, center)
    E_tilde = E.T - PolyTensorField.identity() * tr(E)
    M_tilde = rot_lift(E_tilde, center)
    return RotRotStages(E, E_tilde, M_tilde, sym(M_tilde))


def potential_rot_rot_t(N: PolyTensorField, center=None) -> PolyTensorField:
    """Symmetric M with RotRot^T M = N for symmetric, divergence-free N.

    M = sym P_Rot((P_Rot N)^T - tr(P_Rot N) I).
    """
    return rot_rot_t_stages(N, center).result


class DivSymStages(NamedTuple):
    E: PolyTensorField          # Div E = v
    skew_vector: PolyVectorField  # spn^-1 skw E
    E_tilde: PolyTensorField    # Div E_tilde = skew_vector
    result: PolyTensorField


def div_sym_stages(v: PolyVectorField, center=None) -> DivSymStages:
    E = div_lift(v, center)
    w = spn_inv(skw(E))
    E_tilde = div_lift(w, center)
    # Rot applied to the transpose of E_tilde: Div sym Rot(E_tilde^T) = rot(w) / 2
    return DivSymStages(E, w, E_tilde, sym(E - 2 * tensor_rot(E_tilde.T)))


def potential_div_sym(v: PolyVectorField, center=None) -> PolyTensorField:
    """Symmetric N with Div N = v.

    N = sym(E - 2 Rot(E_tilde^T)) with E = P_Div v and
    E_tilde = P_Div(spn^-1 skw E), all potentials row-wise.
    """
    return div_sym_stages(v, center).result


@dataclass(frozen=True)
class ElasticityDecomposition:
    """``input = smooth_part + A0(potential_part)``."""

    smooth_part: PolyTensorField
    potential_part: PolyVectorField | PolyTensorField
    residual: PolyTensorField
    # operator applied to potential_part, and the range the smooth part lives in
    summands: tuple = field(default=("", ""))

    @property
    def residual_zero(self) -> bool:
        return self.residual.is_zero()

    def to_dict(self) -> dict:
        return {
            "smooth": field_to_dict(self.smooth_part),
            "potential": field_to_dict(self.potential_part),
            "residual_zero": self.residual_zero,
        }


def decompose_rotrot_domain(M: PolyTensorField, center=None) -> ElasticityDecomposition:
    """M = p1 + sym_grad(p0), p1 = P_RotRot(RotRot^T M), p0 = P_symgrad(M - p1)."""
    require_symmetric(M)
    p1 = potential_rot_rot_t(rot_rot_t(M), center)
    p0 = potential_sym_grad(M - p1, center)
    return ElasticityDecomposition(
        smooth_part=p1,
        potential_part=p0,
        residual=M - p1 - sym_grad(p0),
        summands=("range of P_RotRotT", "sym_grad of H+ vector fields"),
    )


def decompose_div_domain(N: PolyTensorField, center=None) -> ElasticityDecomposition:
    """N = p1 + RotRot^T(p0), p1 = P_Div(Div N), p0 = P_RotRot(N - p1)."""
    require_symmetric(N)
    p1 = potential_div_sym(tensor_div(N), center)
    p0 = potential_rot_rot_t(N - p1, center)
    return ElasticityDecomposition(
        smooth_part=p1,
        potential_part=p0,
        residual=N - p1 - rot_rot_t(p0),
        summands=("range of P_Div", "RotRotT of H+ symmetric tensors"),
    )


def rigid_motion_basis() -> tuple:
    """Translations e1, e2, e3 followed by rotations spn(e_i) x."""
    x = PolyVectorField.position()
    translations = tuple(PolyVectorField.unit(i) for i in range(3))
    rotations = tuple(spn(PolyVectorField.unit(i)) @ x for i in range(3))
    return translations + rotations


def as_rigid_motion(v: PolyVectorField):
    """Coefficients of ``v`` in :func:`rigid_motion_basis`, or None if v is not rigid.

    Exact: v must be affine, v = A x + q with A skew; then the
    coefficients are (q, spn^-1 A).
    """
    if v.degree() > 1:
        return None
    q = [v[i].coeff((0, 0, 0)) for i in range(3)]
    A = PolyTensorField([[v[i].coeff(tuple(int(k == j) for k in range(3)))
                          for j in range(3)] for i in range(3)])
    if not A.is_skew():
        return None
    b = spn_inv(A)
    return tuple(q) + tuple(b[i].coeff((0, 0, 0)) for i in range(3))


class RigidProjection(NamedTuple):
    coefficients: tuple
    remainder: PolyVectorField


def project_rigid_motions(v: PolyVectorField, box: Sequence = DEFAULT_BOX) -> RigidProjection:
    """L2(box)-orthogonal projection onto the rigid motions, computed exactly."""
    lo, hi = (tuple(Fraction(c) for c in corner) for corner in box)
    if any(h <= l for l, h in zip(lo, hi)):
        raise DegenerateBox(f"box {lo}..{hi} has zero volume")
    basis = rigid_motion_basis()
    gram = [[box_integral(r.dot(s), lo, hi) for s in basis] for r in basis]
    rhs = [box_integral(v.dot(r), lo, hi) for r in basis]
    coeffs = tuple(solve_exact(gram, rhs))
    fit = PolyVectorField.zero()
    for c, r in zip(coeffs, basis):
        fit = fit + r * c
    return RigidProjection(coeffs, v - fit)
