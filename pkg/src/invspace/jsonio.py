"""JSON encodings of scalars, expressions, decompositions and solutions.

Rationals are carried as ``"a/b"`` strings so nothing is rounded.
"""
from __future__ import annotations

from fractions import Fraction

from .poly import Poly
from .polyexp import OperatorBase, PolyExp
from .scalar import GaussianRational
from .structure import Decomposition, InvarianceReport

__all__ = [
    "scalar_to_json",
    "scalar_from_json",
    "polyexp_to_json",
    "polyexp_from_json",
    "decomposition_to_json",
    "report_to_json",
    "solution_to_json",
    "SCALAR_SCHEMA",
    "POLYEXP_SCHEMA",
    "DECOMPOSITION_SCHEMA",
    "SOLUTION_SCHEMA",
]


def _frac_text(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def scalar_to_json(z: GaussianRational) -> dict:
    return {"re": _frac_text(z.re), "im": _frac_text(z.im)}


def scalar_from_json(obj: dict) -> GaussianRational:
    return GaussianRational(Fraction(obj["re"]), Fraction(obj["im"]))


def polyexp_to_json(f: PolyExp, base) -> dict:
    base = OperatorBase.parse(base)
    return {
        "base": base.value,
        "terms": [
            {"lambda": scalar_to_json(lam), "coeffs": [scalar_to_json(c) for c in p.coeffs]}
            for lam, p in f.terms
        ],
    }


def polyexp_from_json(obj: dict) -> tuple[PolyExp, OperatorBase]:
    base = OperatorBase.parse(obj["base"])
    terms = [
        (scalar_from_json(t["lambda"]), Poly(scalar_from_json(c) for c in t["coeffs"]))
        for t in obj["terms"]
    ]
    return PolyExp(terms), base


def decomposition_to_json(dec: Decomposition, invariant: bool = True, witness: PolyExp | None = None) -> dict:
    return {
        "invariant": invariant,
        "is_full": dec.is_full,
        "components": [
            {
                "lambda": scalar_to_json(c.lam),
                "multiplicity": c.multiplicity,
                "basis": [polyexp_to_json(b, dec.base) for b in c.basis],
            }
            for c in dec.components
        ],
        "witness": None if witness is None else polyexp_to_json(witness, dec.base),
    }


def report_to_json(report: InvarianceReport) -> dict:
    out = decomposition_to_json(report.decomposition, report.invariant, report.witness)
    base = report.span.base
    out["span_dimension"] = report.span.dim
    if report.closure is not None:
        out["closure"] = [polyexp_to_json(b, base) for b in report.closure.basis]
        out["witness_image"] = polyexp_to_json(report.witness_image, base)
    return out


def solution_to_json(particular: PolyExp, homogeneous, base, solution: PolyExp | None = None) -> dict:
    out = {
        "particular": polyexp_to_json(particular, base),
        "homogeneous": None if homogeneous is None else [polyexp_to_json(h, base) for h in homogeneous],
        "residual_verified": True,
    }
    if solution is not None:
        out["solution"] = polyexp_to_json(solution, base)
    return out


_RAT = {"type": "string", "pattern": r"^-?\d+/\d+$"}

SCALAR_SCHEMA = {
    "type": "object",
    "properties": {"re": _RAT, "im": _RAT},
    "required": ["re", "im"],
    "additionalProperties": False,
}

POLYEXP_SCHEMA = {
    "type": "object",
    "properties": {
        "base": {"enum": ["shift", "derivative"]},
        "terms": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "lambda": SCALAR_SCHEMA,
                    "coeffs": {"type": "array", "items": SCALAR_SCHEMA, "minItems": 1},
                },
                "required": ["lambda", "coeffs"],
                "additionalProperties": False,
            },
        },
    },
    "required": ["base", "terms"],
    "additionalProperties": False,
}

DECOMPOSITION_SCHEMA = {
    "type": "object",
    "properties": {
        "invariant": {"type": "boolean"},
        "components": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "lambda": SCALAR_SCHEMA,
                    "multiplicity": {"type": "integer", "minimum": 1},
                    "basis": {"type": "array", "items": POLYEXP_SCHEMA},
                },
                "required": ["lambda", "multiplicity", "basis"],
            },
        },
        "witness": {"oneOf": [{"type": "null"}, POLYEXP_SCHEMA]},
    },
    "required": ["invariant", "components"],
}

SOLUTION_SCHEMA = {
    "type": "object",
    "properties": {
        "particular": POLYEXP_SCHEMA,
        "homogeneous": {"oneOf": [{"type": "null"}, {"type": "array", "items": POLYEXP_SCHEMA}]},
        "residual_verified": {"const": True},
        "solution": POLYEXP_SCHEMA,
    },
    "required": ["particular", "homogeneous", "residual_verified"],
}
