"""Command-line front end.

Exit status is 0 on success, 1 for domain errors (non-invariant input,
missing operator roots, ...) and 2 for syntax errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import jsonio
from .errors import InvspaceError, ParseError
from .parser import (
    format_operator,
    format_polyexp,
    parse_equation,
    parse_expression,
    parse_scalar_list,
)
from .polyexp import OperatorBase, kernel_basis
from .scalar import format_scalar
from .solver import general_solution, particular_solution, solve_ivp, verify_residual
from .structure import closure, decompose, invariance_report, make_subspace


def _domain(value: str) -> OperatorBase:
    try:
        return OperatorBase.parse(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"unknown domain {value!r} (use seq or ode)") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="invspace",
        description="Exact polynomial-exponential solutions and invariant subspaces.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")

    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("solve", parents=[common], help="solve a linear recurrence or ODE")
    p.add_argument("equation", nargs="?", help="equation; read from stdin when omitted")
    p.add_argument("--domain", type=_domain)
    p.add_argument("--roots", help="factored operator, e.g. '2^1,3^1'")
    p.add_argument("--initial", help="initial values, e.g. '1,2'")

    p = sub.add_parser("verify", parents=[common], help="check a candidate solution by substitution")
    p.add_argument("equation", nargs="?")
    p.add_argument("--candidate", required=True)
    p.add_argument("--domain", type=_domain)
    p.add_argument("--roots")

    for verb, text in (
        ("decompose", "primary decomposition of an invariant span"),
        ("closure", "smallest invariant subspace containing the expressions"),
        ("check-invariant", "test a span for invariance"),
    ):
        p = sub.add_parser(verb, parents=[common], help=text)
        p.add_argument("expressions", nargs="*", help="generators; one per line on stdin when omitted")
        p.add_argument("--domain", type=_domain, required=True)

    p = sub.add_parser("kernel", parents=[common], help="basis of ker (Op - lambda)^m")
    p.add_argument("--domain", type=_domain, required=True)
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--m", type=int, required=True)
    return parser


def _read_equation(args) -> str:
    if args.equation is not None:
        return args.equation
    return sys.stdin.read().strip()


def _read_expressions(args) -> list[str]:
    if args.expressions:
        return list(args.expressions)
    return [line.strip() for line in sys.stdin.read().splitlines() if line.strip()]


def _equation(args):
    op, rhs = parse_equation(_read_equation(args), roots=args.roots)
    if args.domain is not None and args.domain is not op.base:
        raise ParseError(f"equation is in {op.base.value} form but --domain is {args.domain.value}")
    return op, rhs


def _emit(args, text_lines: Sequence[str], payload: dict, out) -> None:
    if args.format == "json":
        out.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        out.write("\n".join(text_lines) + "\n")


def _fmt(f, base) -> str:
    return format_polyexp(f, base)


def _cmd_solve(args, out) -> int:
    op, rhs = _equation(args)
    base = op.base
    lines = [f"equation: {format_operator(op)} = {_fmt(rhs, base)}"]
    solution = None
    if op.factored is not None:
        gen = general_solution(op, rhs)
        particular, homogeneous = gen.particular, list(gen.homogeneous_basis)
    else:
        particular, homogeneous = particular_solution(op, rhs), None
    lines.append(f"particular: {_fmt(particular, base)}")
    if homogeneous is None:
        lines.append("homogeneous: unavailable (pass --roots to obtain it)")
    else:
        lines.append("homogeneous: " + ", ".join(_fmt(h, base) for h in homogeneous))
        general = _fmt(particular, base) if particular else ""
        for k, h in enumerate(homogeneous, 1):
            general += f" + c{k}*{_fmt(h, base)}" if general else f"c{k}*{_fmt(h, base)}"
        lines.append(f"general: {general or '0'}")
    if args.initial is not None:
        solution = solve_ivp(op, rhs, parse_scalar_list(args.initial))
        lines.append(f"solution: {_fmt(solution, base)}")
    lines.append("residual_verified: true")
    _emit(args, lines, jsonio.solution_to_json(particular, homogeneous, base, solution), out)
    return 0


def _cmd_verify(args, out) -> int:
    op, rhs = _equation(args)
    candidate = parse_expression(args.candidate, op.base)
    ok = verify_residual(op, candidate, rhs)
    lines = [f"candidate: {_fmt(candidate, op.base)}", f"residual_verified: {str(ok).lower()}"]
    _emit(args, lines, {"candidate": jsonio.polyexp_to_json(candidate, op.base),
                        "residual_verified": ok}, out)
    return 0 if ok else 1


def _component_lines(dec, base) -> list[str]:
    lines = []
    for c in dec.components:
        basis = ", ".join(_fmt(b, base) for b in c.basis)
        lines.append(f"  lambda = {format_scalar(c.lam)}, multiplicity {c.multiplicity}: {basis}")
    return lines


def _generators(args):
    return [parse_expression(src, args.domain) for src in _read_expressions(args)]


def _cmd_decompose(args, out) -> int:
    span = make_subspace(_generators(args), args.domain)
    dec = decompose(span)
    lines = [f"dimension: {span.dim}", "components:"] + _component_lines(dec, args.domain)
    lines.append(f"full: {str(dec.is_full).lower()}")
    _emit(args, lines, jsonio.decomposition_to_json(dec), out)
    return 0


def _cmd_closure(args, out) -> int:
    V = closure(_generators(args), args.domain)
    dec = decompose(V)
    lines = [f"closure dimension: {V.dim}", "closure basis:"]
    lines += [f"  {_fmt(b, args.domain)}" for b in V.basis]
    lines.append("decomposition:")
    lines += _component_lines(dec, args.domain)
    lines.append(f"full: {str(dec.is_full).lower()}")
    payload = jsonio.decomposition_to_json(dec)
    payload["closure"] = [jsonio.polyexp_to_json(b, args.domain) for b in V.basis]
    _emit(args, lines, payload, out)
    return 0


def _cmd_check_invariant(args, out) -> int:
    report = invariance_report(_generators(args), args.domain)
    base = args.domain
    lines = [f"span dimension: {report.span.dim}", f"invariant: {str(report.invariant).lower()}"]
    if report.invariant:
        lines.append("decomposition:")
    else:
        lines.append(
            f"witness: {_fmt(report.witness, base)} maps to {_fmt(report.witness_image, base)}, outside the span"
        )
        lines.append(f"closure dimension: {report.closure.dim}")
        lines.append("closure basis:")
        lines += [f"  {_fmt(b, base)}" for b in report.closure.basis]
        lines.append("decomposition of closure:")
    lines += _component_lines(report.decomposition, base)
    lines.append(f"full: {str(report.decomposition.is_full).lower()}")
    _emit(args, lines, jsonio.report_to_json(report), out)
    return 0


def _cmd_kernel(args, out) -> int:
    lams = parse_scalar_list(args.lam)
    if len(lams) != 1:
        raise ParseError("--lambda expects a single constant")
    lam = lams[0]
    basis = kernel_basis(lam, args.m, args.domain)
    symbol = "S" if args.domain is OperatorBase.SHIFT else "D"
    lines = [f"kernel of ({symbol} - {format_scalar(lam)})^{args.m}, dimension {len(basis)}:"]
    lines += [f"  {_fmt(b, args.domain)}" for b in basis]
    payload = {"lambda": jsonio.scalar_to_json(lam), "m": args.m,
               "basis": [jsonio.polyexp_to_json(b, args.domain) for b in basis]}
    _emit(args, lines, payload, out)
    return 0


_COMMANDS = {
    "solve": _cmd_solve,
    "verify": _cmd_verify,
    "decompose": _cmd_decompose,
    "closure": _cmd_closure,
    "check-invariant": _cmd_check_invariant,
    "kernel": _cmd_kernel,
}


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    """Execute one command; returns the exit status."""
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.verb](args, out)
    except ParseError as exc:
        err.write(f"parse error: {exc.describe()}\n")
        return 2
    except InvspaceError as exc:
        name = type(exc).__name__
        line = f"error ({name}): {exc}"
        if exc.hint:
            line += f" (hint: {exc.hint})"
        err.write(line + "\n")
        return 1


def main(argv: Sequence[str] | None = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
