"""JSON-compatible serialization of every public result object.

Rationals are serialized as {"num": ..., "den": ...} string pairs and
exponents are never emitted as floats; measured slopes and sampling data
are genuine floats and stay floats.  Algebraic coefficients carry their
field data (exact) plus a fixed-precision decimal approximation for human
consumption.
"""

from __future__ import annotations

from fractions import Fraction

import mpmath

from .numfield import AlgNum
from .puiseux import PuiseuxBranch, algnum_to_mpc, characteristic_exponents
from .series import INF


def rat_json(x) -> dict:
    x = Fraction(x)
    return {"num": str(x.numerator), "den": str(x.denominator)}


def exponent_json(x):
    if x == INF or x == INF:
        return "inf"
    return rat_json(x)


def algnum_json(a: AlgNum) -> dict:
    if a.is_rational():
        return {"kind": "rational", "value": rat_json(a.c[0])}
    with mpmath.workprec(64):
        v = algnum_to_mpc(a, 64)
        approx = {"re": mpmath.nstr(v.real, 15), "im": mpmath.nstr(v.imag, 15)}
    return {
        "kind": "algebraic",
        "field_min_poly": [rat_json(c) for c in a.field.min_poly],
        "field_root_index": a.field.root_index,
        "coords": [rat_json(c) for c in a.c],
        "approx": approx,
    }


def branch_json(b: PuiseuxBranch) -> dict:
    try:
        cd = characteristic_exponents(b)
        chardata = {
            "multiplicity": cd.multiplicity,
            "char_exponents": [rat_json(e) for e in cd.char_exponents],
            "ladder": [[m, n] for m, n in cd.ladder],
        }
    except Exception:
        chardata = None
    return {
        "branch_id": b.branch_id,
        "ramification_index": b.ramification_index,
        "terms": [
            {"exponent": rat_json(e), "coeff": algnum_json(c)}
            for e, c in b.sorted_terms()
        ],
        "truncation_order": exponent_json(b.truncation_order),
        "exact": b.exact,
        "characteristic": chardata,
    }


def tangent_json(slope: AlgNum):
    return algnum_json(slope)


def contact_json(t) -> dict:
    return {
        "branch_pair": list(t.branch_pair),
        "class_rep": t.class_rep,
        "m": t.m,
        "mu": t.mu,
        "exponent": rat_json(t.exponent),
        "self_contact": t.self_contact,
    }


def profile_json(p) -> dict:
    return {
        "curve_hash": p.curve_hash,
        "types": [contact_json(t) for t in p.types],
        "distinct_exponents": [rat_json(e) for e in p.distinct_exponents],
        "per_pair_class_count": [
            {"pair": list(k), "classes": v} for k, v in sorted(p.per_pair_class_count.items())
        ],
    }


def lipschitz_json(rep) -> dict:
    return {
        "verdict": rep.verdict,
        "per_type": [
            {
                "contact": contact_json(c.contact),
                "nu": exponent_json(c.nu),
                "pass": c.passed,
            }
            for c in rep.per_type
        ],
        "boundedness": [
            None if o is None else exponent_json(o) for o in rep.boundedness
        ],
    }


def membership_json(m) -> dict:
    return {
        "member": m.member,
        "per_branch_margin": [exponent_json(x) for x in m.per_branch_margin],
        "generator_orders": [
            [exponent_json(o) for o in row] for row in m.generator_orders
        ],
    }


def consistency_json(r) -> dict:
    return {
        "measured_slope": r.measured_slope,
        "predicted_slope": None if r.predicted_slope is None else rat_json(r.predicted_slope),
        "agree": r.agree,
        "degenerate": r.degenerate,
        "verdict": r.verdict,
        "residuals": [[radius, ratio] for radius, ratio in r.residuals],
    }


def equisat_json(rep, names=("x", "t")) -> dict:
    return {
        "discriminant": rep.discriminant.to_string(names),
        "reduced_discriminant": rep.reduced_discriminant.to_string(names),
        "verdict": rep.verdict,
        "witness_t": None if rep.witness_t is None else rat_json(rep.witness_t),
        "origin_section_order": rep.origin_section_order,
        "per_t": [
            {
                "t": rat_json(r.t),
                "distinct_exponents": [rat_json(e) for e in r.distinct_exponents],
                "exponent_multiset": [rat_json(e) for e in r.exponent_multiset],
                "root_multiplicity_pattern": list(r.root_multiplicity_pattern),
            }
            for r in rep.per_t
        ],
    }


def fraction_series_json(fs) -> dict:
    return {
        "terms": [
            {"exponent": rat_json(e), "coeff": algnum_json(c)} for e, c in fs.terms
        ],
        "truncation_order": exponent_json(fs.truncation_order),
        "identically_zero_up_to_truncation": fs.identically_zero_up_to_truncation,
    }
