from __future__ import annotations

import argparse
import asyncio
from fractions import Fraction

from pentacrystal.algebra.chordring import CHEB_KINDS, MAX_FACTOR_DEGREE, cheb, cutoff_ratio, cutoff_ratio_function, factor
from pentacrystal.cli import AppContext, CommandResult, UsageError


def setup_cheb_parser(subparsers, parents: list[argparse.ArgumentParser]) -> argparse.ArgumentParser:
    parser = subparsers.add_parser("cheb", parents=parents, help="Chebyshev polynomials, identities and cutoff ratios")
    parser.add_argument("action", choices=("show", "identities", "cutoff"))
    parser.add_argument("--kind", choices=CHEB_KINDS, default="P")
    parser.add_argument("--y", type=Fraction, default=None, help="rational point for `cutoff`")
    parser.set_defaults(handler=handle)
    return parser


def _show(kind: str, n: int) -> CommandResult:
    p = cheb(kind, n)
    payload = {"kind": kind, "n": n, "coeffs": list(p.coeffs), "degree": p.degree}
    lines = [f"{kind}_{n} = {p}"]
    if 1 <= p.degree <= MAX_FACTOR_DEGREE:
        content, factors = factor(p)
        payload["factors"] = [{"coeffs": list(f.coeffs), "multiplicity": k} for f, k in factors]
        payload["irreducible"] = len(factors) == 1 and factors[0][1] == 1
        lines.append("factors: " + " * ".join(f"({f})^{k}" if k > 1 else f"({f})" for f, k in factors))
        if content != 1:
            lines[-1] = f"{content} * " + lines[-1]
    return CommandResult(True, payload, "\n".join(lines))


def _cutoff(n: int, y: Fraction | None) -> CommandResult:
    if n < 3:
        raise UsageError(f"cutoff ratios start at n = 3, got {n}")
    ratio = cutoff_ratio_function(n)
    payload = {"n": n, "numerator": list(ratio.numerator.coeffs), "denominator": list(ratio.denominator.coeffs)}
    text = f"T_{n}(y) = ({ratio.numerator}) / ({ratio.denominator})".replace("x", "y")
    if y is not None:
        value = cutoff_ratio(n, y)
        payload["y"] = str(y)
        payload["value"] = str(value)
        text += f"\nT_{n}({y}) = {value}"
    return CommandResult(True, payload, text)


async def handle(ctx: AppContext, args: argparse.Namespace) -> CommandResult:
    if args.action == "identities":
        report = await asyncio.to_thread(ctx.algebra_service.identities)
        summary = "all identities hold" if report.ok else "failing: " + ", ".join(report.failures)
        return CommandResult(report.ok, report.as_dict(), summary)
    n = 5 if args.n is None else args.n
    if args.action == "cutoff":
        return _cutoff(n, args.y)
    return _show(args.kind, n)
