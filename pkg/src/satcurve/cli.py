"""Command-line front end.

Subcommands wrap the in-process oracles one to one: `branches`,
`profile`, `lipschitz`, `ideal`, `family`.  Output is a single versioned
JSON report on stdout (``--pretty`` renders the same data for humans).
Identical invocations with identical ``--seed`` produce byte-identical
reports; timing is only included when ``--timing`` is passed since it
would break that guarantee.

Exit codes: 0 success, 2 usage or parse error, 3 mathematical
precondition failure, 4 internal precision cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import __version__
from .algebra import make_y_regular, parse_curve, parse_family, shear_is_admissible, squarefree_part
from .errors import (
    DenominatorVanishesOnBranch,
    EmptyIdealError,
    FiberNotReduced,
    InsufficientTruncation,
    NotAGerm,
    NotYRegular,
    PolynomialSyntaxError,
    PrecisionOverflow,
    RadiusTooLarge,
    SatcurveError,
    UnknownVariableError,
)
from .family import FamilyCurve, equisaturation_check
from .mpoly import MPoly
from .puiseux import CurveContext, tangent_slope
from .reports import (
    branch_json,
    consistency_json,
    equisat_json,
    lipschitz_json,
    membership_json,
    profile_json,
    rat_json,
    tangent_json,
)
from .saturation import (
    integral_closure_member,
    is_lipschitz_fraction,
    saturation_profile,
)
from .verify import SamplePlan, crosscheck

SCHEMA_VERSION = "satcurve-report/1"

_USAGE_ERRORS = (PolynomialSyntaxError, UnknownVariableError, NotAGerm, ValueError)
_DOMAIN_ERRORS = (
    NotYRegular,
    DenominatorVanishesOnBranch,
    EmptyIdealError,
    FiberNotReduced,
    InsufficientTruncation,
    RadiusTooLarge,
    ZeroDivisionError,
)


def _rat_arg(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as e:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from e


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="satcurve",
        description="Puiseux branches, contact profiles and Lipschitz saturation "
        "membership for plane curve germs, in exact arithmetic.",
    )
    ap.add_argument("--version", action="version", version=f"satcurve {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, shearable=True):
        sp.add_argument("--seed", type=int, default=0, help="deterministic seed")
        sp.add_argument("--pretty", action="store_true", help="human-readable output")
        sp.add_argument("--timing", action="store_true", help="include timing_ms")
        if shearable:
            sp.add_argument(
                "--no-shear",
                action="store_true",
                help="fail instead of shearing when {x=0} is tangent to the curve",
            )

    sp = sub.add_parser("branches", help="Puiseux branches with invariants")
    sp.add_argument("--curve", required=True, help="polynomial in x, y")
    sp.add_argument("--order", type=_rat_arg, default=None, help="truncation order (default: auto)")
    common(sp)

    sp = sub.add_parser("profile", help="saturation contact profile")
    sp.add_argument("--curve", required=True)
    common(sp)

    sp = sub.add_parser("lipschitz", help="Lipschitz saturation membership of num/den")
    sp.add_argument("--curve", required=True)
    sp.add_argument("--num", required=True, help="numerator polynomial")
    sp.add_argument("--den", default="1", help="denominator polynomial (default 1)")
    sp.add_argument("--verify", action="store_true", help="run the numeric crosscheck")
    sp.add_argument("--precision", type=int, default=128, help="verification float bits")
    common(sp)

    sp = sub.add_parser("ideal", help="integral-closure membership of num/den in an ideal")
    sp.add_argument("--curve", required=True)
    sp.add_argument("--num", required=True)
    sp.add_argument("--den", default="1")
    sp.add_argument("--gen", action="append", required=True, help="ideal generator (repeatable)")
    common(sp)

    sp = sub.add_parser("family", help="equisaturation check of a one-parameter family")
    sp.add_argument("--family", required=True, help="polynomial in x, y, t, monic in y")
    sp.add_argument(
        "--t", action="append", type=_rat_arg, required=True, help="parameter sample (repeatable; must include 0)"
    )
    common(sp, shearable=False)

    return ap


def _prepare_curve(text: str, seed: int, no_shear: bool):
    raw = parse_curve(text)
    reduced = squarefree_part(raw)
    if no_shear:
        if not shear_is_admissible(reduced, Fraction(0)):
            raise NotYRegular("curve is tangent to {x=0}; rerun without --no-shear")
        g = reduced.scale(1 / reduced.coeff((0, reduced.degree_in(1))))
        lam = Fraction(0)
    else:
        g, lam = make_y_regular(reduced, seed)
    echo = {
        "curve": text,
        "parsed": raw.to_string(("x", "y")),
        "reduced": reduced.to_string(("x", "y")),
        "was_reduced": raw == reduced or raw.scale(1 / raw.terms[max(raw.terms)]) == reduced,
        "prepared": g.to_string(("x", "y")),
        "shear": rat_json(lam),
    }
    return g, lam, echo


def _emit(args, report: dict) -> int:
    if args.pretty:
        sys.stdout.write(_render_pretty(report) + "\n")
    else:
        sys.stdout.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
    return 0


def _render_pretty(obj, indent=0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        if set(obj) == {"num", "den"}:
            return obj["num"] if obj["den"] == "1" else f"{obj['num']}/{obj['den']}"
        lines = []
        for k, v in obj.items():
            r = _render_pretty(v, indent + 1)
            if "\n" in r:
                lines.append(f"{pad}{k}:\n{r}")
            else:
                lines.append(f"{pad}{k}: {r.strip()}")
        return "\n".join(lines)
    if isinstance(obj, list):
        if not obj:
            return f"{pad}[]"
        parts = []
        for v in obj:
            r = _render_pretty(v, indent + 1)
            if "\n" in r:
                parts.append(f"{pad}-\n{r}")
            else:
                parts.append(f"{pad}- {r.strip()}")
        return "\n".join(parts)
    return f"{pad}{obj}"


def _envelope(args, input_echo: dict, result: dict, started: float) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": args.command,
        "seed": getattr(args, "seed", 0),
        "input": input_echo,
        "result": result,
        "timing_ms": int((time.monotonic() - started) * 1000) if args.timing else None,
    }


def _cmd_branches(args) -> int:
    started = time.monotonic()
    g, lam, echo = _prepare_curve(args.curve, args.seed, args.no_shear)
    ctx = CurveContext.get(g)
    if args.order is not None:
        ctx.ensure_order(args.order)
    if args.order is not None:
        echo["order"] = rat_json(args.order)
    result = {
        "discriminant_order": ctx.d0,
        "branches": [
            dict(branch_json(b), tangent=tangent_json(tangent_slope(b)))
            for b in ctx.branches
        ],
    }
    return _emit(args, _envelope(args, echo, result, started))


def _cmd_profile(args) -> int:
    started = time.monotonic()
    g, _lam, echo = _prepare_curve(args.curve, args.seed, args.no_shear)
    prof = saturation_profile(g)
    return _emit(args, _envelope(args, echo, profile_json(prof), started))


def _cmd_lipschitz(args) -> int:
    started = time.monotonic()
    g, _lam, echo = _prepare_curve(args.curve, args.seed, args.no_shear)
    p = parse_curve(args.num)
    q = parse_curve(args.den)
    echo["num"] = p.to_string(("x", "y"))
    echo["den"] = q.to_string(("x", "y"))
    rep = is_lipschitz_fraction(p, q, g)
    result = lipschitz_json(rep)
    if args.verify:
        plan = SamplePlan(seed=args.seed, float_precision=args.precision)
        result["crosscheck"] = consistency_json(crosscheck(p, q, g, plan))
    return _emit(args, _envelope(args, echo, result, started))


def _cmd_ideal(args) -> int:
    started = time.monotonic()
    g, _lam, echo = _prepare_curve(args.curve, args.seed, args.no_shear)
    p = parse_curve(args.num)
    q = parse_curve(args.den)
    gens = [parse_curve(t) for t in args.gen]
    echo["num"] = p.to_string(("x", "y"))
    echo["den"] = q.to_string(("x", "y"))
    echo["generators"] = [h.to_string(("x", "y")) for h in gens]
    rep = integral_closure_member(p, q, gens, g)
    return _emit(args, _envelope(args, echo, membership_json(rep), started))


def _cmd_family(args) -> int:
    started = time.monotonic()
    F = parse_family(args.family)
    fam = FamilyCurve(F, tuple(args.t))
    echo = {
        "family": args.family,
        "parsed": F.to_string(("x", "y", "t")),
        "t_values": [rat_json(t) for t in fam.t_values],
    }
    rep = equisaturation_check(fam)
    return _emit(args, _envelope(args, echo, equisat_json(rep), started))


_DISPATCH = {
    "branches": _cmd_branches,
    "profile": _cmd_profile,
    "lipschitz": _cmd_lipschitz,
    "ideal": _cmd_ideal,
    "family": _cmd_family,
}


def _error_report(command, exc, code) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "error": {"type": type(exc).__name__, "message": str(exc)},
        "exit_code": code,
    }


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return _DISPATCH[args.command](args)
    except _USAGE_ERRORS as e:
        sys.stdout.write(json.dumps(_error_report(args.command, e, 2), indent=2) + "\n")
        return 2
    except _DOMAIN_ERRORS as e:
        sys.stdout.write(json.dumps(_error_report(args.command, e, 3), indent=2) + "\n")
        return 3
    except PrecisionOverflow as e:
        sys.stdout.write(json.dumps(_error_report(args.command, e, 4), indent=2) + "\n")
        return 4
    except SatcurveError as e:
        sys.stdout.write(json.dumps(_error_report(args.command, e, 3), indent=2) + "\n")
        return 3


if __name__ == "__main__":
    sys.exit(main())
