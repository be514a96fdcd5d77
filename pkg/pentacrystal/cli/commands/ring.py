from __future__ import annotations

import argparse
import asyncio

from pentacrystal.algebra.chordring import IntPoly, QuotientRing, RingElem, bridge_ring, chord_ring, even_ring, ring_arith
from pentacrystal.cli import AppContext, CommandResult, UsageError

BASES = ("chord", "power", "bridge", "alpha", "beta", "single")


def ring_for(m: int, basis: str) -> QuotientRing:
    """The ring of the m-gon on a named basis."""
    if basis == "chord":
        return chord_ring(m)
    if basis == "power":
        ring = chord_ring(m)
        labels = tuple("1" if k == 0 else "x" if k == 1 else f"x^{k}" for k in range(ring.rank))
        return ring.with_basis("power", tuple(IntPoly.monomial(k) for k in range(ring.rank)), labels)
    if basis == "bridge":
        if m % 2 == 0:
            raise UsageError(f"the bridge basis exists for odd m only, got {m}")
        return bridge_ring((m - 1) // 2)
    if m % 2:
        raise UsageError(f"the {basis} basis lives in y = x^2 and needs even m, got {m}")
    return even_ring(m, basis)


def parse_coords(raw: str) -> list[int]:
    try:
        return [int(part) for part in raw.split(",") if part.strip()]
    except ValueError as exc:
        raise UsageError(f"coordinates must be comma separated integers, got {raw!r}") from exc


def elem_json(value: RingElem) -> dict:
    return {
        "ring": value.ring.name,
        "basis_kind": value.ring.basis_kind,
        "basis": list(value.ring.labels),
        "coords": list(value.coords),
        "value": round(float(value), 12) if value.ring.evaluation is not None else None,
    }


def setup_ring_parser(subparsers, parents: list[argparse.ArgumentParser]) -> argparse.ArgumentParser:
    parser = subparsers.add_parser("ring", parents=parents, help="arithmetic in the chord rings")
    parser.add_argument("action", choices=("mul", "add", "change", "laws"))
    parser.add_argument("--basis", choices=BASES, default="chord")
    parser.add_argument("--to", choices=BASES, default="power", help="target basis for `change`")
    parser.add_argument("--a", default="0,1", help="comma separated coordinates")
    parser.add_argument("--b", default="0,1")
    parser.add_argument("--samples", type=int, default=25)
    parser.set_defaults(handler=handle)
    return parser


async def handle(ctx: AppContext, args: argparse.Namespace) -> CommandResult:
    if args.action == "laws":
        report = await asyncio.to_thread(ctx.algebra_service.ring_laws, args.samples)
        summary = "ring laws hold" if report.ok else "failing: " + ", ".join(report.failures)
        return CommandResult(report.ok, report.as_dict(), summary)
    m = 7 if args.m is None else args.m
    ring = ring_for(m, args.basis)
    a = ring.elem(parse_coords(args.a))
    if args.action == "change":
        result = ring_arith(ring_for(m, args.to), "basis_change", a)
    else:
        result = ring_arith(ring, args.action, a, ring.elem(parse_coords(args.b)))
    payload = {"operation": args.action, "a": elem_json(a), "result": elem_json(result)}
    return CommandResult(True, payload, f"{result}  ({payload['result']['value']})")
