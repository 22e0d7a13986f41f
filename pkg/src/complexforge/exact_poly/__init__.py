"""Exact polynomial tensor calculus over the rationals."""
from .calculus import (
    div, grad, identity, jacobian, matrix_algebra, require_symmetric, rot,
    rot_rot_t, skw, spn, spn_inv, sym, sym_grad, tensor_div, tensor_rot,
    tensor_rot_t, tr, transpose,
)
from .fields import (
    PolyScalarField, PolyTensorField, PolyVectorField, box_integral,
    coordinates, grlex_key, monomials_up_to,
)
from .identities import (
    IDENTITY_ARITY, IDENTITY_IDS, CuttingRotRot, cutting_div, cutting_rotrot,
    cutting_rotrot_general, cutting_rotrot_residual, psi_term, residual_is_zero,
    verify_appendix_identity,
)
from .sampling import FieldSampler
from .serialize import dumps, field_from_dict, field_to_dict, loads

__all__ = [
    "PolyScalarField", "PolyVectorField", "PolyTensorField", "FieldSampler",
    "box_integral", "coordinates", "grlex_key", "monomials_up_to",
    "sym", "skw", "tr", "transpose", "spn", "spn_inv", "identity", "matrix_algebra",
    "grad", "rot", "div", "jacobian", "tensor_rot", "tensor_rot_t", "tensor_div",
    "rot_rot_t", "sym_grad", "require_symmetric",
    "IDENTITY_IDS", "IDENTITY_ARITY", "verify_appendix_identity", "residual_is_zero",
    "cutting_div", "cutting_rotrot", "cutting_rotrot_residual", "cutting_rotrot_general",
    "psi_term", "CuttingRotRot",
    "dumps", "loads", "field_to_dict", "field_from_dict",
]
