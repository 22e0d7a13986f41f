"""Canonical JSON encoding of polynomial fields.

    {"kind": "scalar|vector|tensor",
     "entries": [{"pos": [...], "monomial": [a1, a2, a3], "coeff": "p/q"}, ...]}

Positions are 0-based; entries are ordered position-major, then by
graded-lex monomial, so equal fields serialize to identical bytes.
"""
from __future__ import annotations

import json
from fractions import Fraction

from .fields import PolyScalarField, PolyTensorField, PolyVectorField
from ..errors import FieldFormatError


def _coeff_str(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


def _scalar_entries(p: PolyScalarField, pos: list) -> list:
    return [
        {"pos": list(pos), "monomial": list(m), "coeff": _coeff_str(c)}
        for m, c in p.sorted_terms()
    ]


def field_to_dict(field) -> dict:
    if isinstance(field, PolyScalarField):
        return {"kind": "scalar", "entries": _scalar_entries(field, [])}
    if isinstance(field, PolyVectorField):
        entries = []
        for i in range(3):
            entries += _scalar_entries(field[i], [i])
        return {"kind": "vector", "entries": entries}
    if isinstance(field, PolyTensorField):
        entries = []
        for i in range(3):
            for j in range(3):
                entries += _scalar_entries(field[i, j], [i, j])
        return {"kind": "tensor", "entries": entries}
    raise TypeError(f"not a polynomial field: {type(field).__name__}")


def dumps(field) -> str:
    """Canonical serialization (compact separators, fixed key order)."""
    return json.dumps(field_to_dict(field), separators=(",", ":"), sort_keys=True)


_POS_LEN = {"scalar": 0, "vector": 1, "tensor": 2}


def field_from_dict(data) -> PolyScalarField | PolyVectorField | PolyTensorField:
    try:
        kind = data["kind"]
        entries = data["entries"]
    except (TypeError, KeyError) as exc:
        raise FieldFormatError(f"field JSON needs 'kind' and 'entries': {exc}") from None
    if kind not in _POS_LEN:
        raise FieldFormatError(f"unknown field kind {kind!r}")
    buckets: dict = {}
    for n, e in enumerate(entries):
        try:
            pos = tuple(int(p) for p in e["pos"])
            mono = tuple(int(a) for a in e["monomial"])
            coeff = Fraction(str(e["coeff"]))
        except (TypeError, KeyError, ValueError, ZeroDivisionError) as exc:
            raise FieldFormatError(f"entry {n}: {exc}") from None
        if len(pos) != _POS_LEN[kind] or any(not 0 <= p < 3 for p in pos):
            raise FieldFormatError(f"entry {n}: bad position {list(pos)} for {kind}")
        if len(mono) != 3 or min(mono) < 0:
            raise FieldFormatError(f"entry {n}: bad monomial {list(mono)}")
        terms = buckets.setdefault(pos, {})
        terms[mono] = terms.get(mono, 0) + coeff
    if kind == "scalar":
        return PolyScalarField(buckets.get((), {}))
    if kind == "vector":
        return PolyVectorField(PolyScalarField(buckets.get((i,), {})) for i in range(3))
    return PolyTensorField(
        [[PolyScalarField(buckets.get((i, j), {})) for j in range(3)] for i in range(3)]
    )


def loads(text: str):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FieldFormatError(f"invalid JSON: {exc}") from None
    return field_from_dict(data)
