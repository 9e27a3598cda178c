"""Command-line front end.

Exit status: 0 on success, 1 on a domain or I/O error, 2 on a usage error.
Output is JSON with sorted keys unless ``--format dot`` is requested.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from . import bitbang, chain, hierarchy
from .algebra import Multivector
from .coex import EventBuffer, Goal, Registry, ingest, load_trace, parse_dual, trickle
from .errors import PhaseWebError
from .parsing import parse_expression


def _sig(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"signature must be +1 or -1, got {text!r}") from None
    if v not in (1, -1):
        raise argparse.ArgumentTypeError(f"signature must be +1 or -1, got {text!r}")
    return v


def _nonneg_float(text: str) -> float:
    v = float(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="phaseweb", description="Discrete Clifford algebra over Z3 and co-exclusion tools.")
    p.add_argument("--out", help="write output here instead of stdout")
    sub = p.add_subparsers(dest="command", required=True)

    alg = sub.add_parser("algebra", help="evaluate an expression")
    alg_sub = alg.add_subparsers(dest="action", required=True)
    ev = alg_sub.add_parser("eval")
    ev.add_argument("expr")
    ev.add_argument("--sig", type=_sig, default=1)
    ev.add_argument("--n", type=int, default=None, help="universe size (default: largest sensor index)")

    bd = sub.add_parser("boundary", help="apply the boundary operator")
    bd.add_argument("expr")
    bd.add_argument("--sig", type=_sig, default=1)
    bd.add_argument("--n", type=int, default=None)

    cb = sub.add_parser("cobound", help="apply the coboundary operator")
    cb.add_argument("expr")
    cb.add_argument("--n", type=int, required=True)
    cb.add_argument("--sig", type=_sig, default=1)

    cx = sub.add_parser("coex", help="co-exclusion discovery")
    cx_sub = cx.add_subparsers(dest="action", required=True)
    disc = cx_sub.add_parser("discover")
    disc.add_argument("--trace", required=True)
    disc.add_argument("--window", type=_nonneg_float, required=True)
    disc.add_argument("--arity", type=int, default=2)
    disc.add_argument("--format", choices=("json", "dot"), default="json")

    tr = sub.add_parser("trickle", help="pursue a goal on a discovered meta-sensor")
    tr.add_argument("--trace", required=True)
    tr.add_argument("--window", type=_nonneg_float, default=0.0)
    tr.add_argument("--arity", type=int, default=2)
    tr.add_argument("--target", required=True, help="action_id:dual_id")
    tr.add_argument("--seed", type=int, default=0)
    tr.add_argument("--budget", type=int, default=16)
    tr.add_argument("--frozen", default="", help="comma-separated sensors that refuse to flip")

    bb = sub.add_parser("bitbang", help="derivation replay and the three-sensor tables")
    bb_sub = bb.add_subparsers(dest="action", required=True)
    dv = bb_sub.add_parser("derive")
    dv.add_argument("--branch", choices=("main", "tilde"), default="main")
    q = bb_sub.add_parser("quaternions")
    q.add_argument("--sig", type=_sig, default=-1)
    q.add_argument("--mapping", default=None, help="three comma-separated bivector expressions")
    for name in ("tetra", "pci"):
        sp = bb_sub.add_parser(name)
        if name == "tetra":
            sp.add_argument("--format", choices=("json", "dot"), default="json")

    te = sub.add_parser("tetra", help="same as 'bitbang tetra'")
    te.add_argument("--format", choices=("json", "dot"), default="json")
    sub.add_parser("pci", help="same as 'bitbang pci'")

    ch = sub.add_parser("ch", help="Combinatorial Hierarchy")
    ch_sub = ch.add_subparsers(dest="action", required=True)
    tb = ch_sub.add_parser("table")
    tb.add_argument("--levels", type=int, default=4)
    dc = ch_sub.add_parser("dcs")
    dc.add_argument("--generators", type=int, required=True)
    ch_sub.add_parser("listing")

    ld = sub.add_parser("ladder", help="ranks and homology of the chain complex")
    ld.add_argument("--sensors", type=int, required=True)
    ld.add_argument("--sig", type=_sig, default=1)
    ld.add_argument("--format", choices=("json", "dot"), default="json")
    return p


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _mv_report(expr: str, value: Multivector, **extra) -> str:
    return _dump({"input": expr, "result": value.to_json(), **extra})


def _registry_from_trace(path, window, arity) -> Registry:
    reg = Registry()
    buf = EventBuffer(window, arity)
    for e in load_trace(path):
        ingest(buf, e, reg)
    return reg


def run(args: argparse.Namespace) -> str:
    cmd = args.command
    if cmd == "algebra":
        value = parse_expression(args.expr, sig=args.sig, n=args.n)
        return _mv_report(args.expr, value, signature=args.sig)
    if cmd == "boundary":
        value = parse_expression(args.expr, sig=args.sig, n=args.n)
        return _mv_report(args.expr, chain.boundary(value))
    if cmd == "cobound":
        value = parse_expression(args.expr, sig=args.sig, n=args.n)
        return _mv_report(args.expr, chain.coboundary(value, args.n), n=args.n)
    if cmd == "coex":
        reg = _registry_from_trace(args.trace, args.window, args.arity)
        return reg.to_dot() if args.format == "dot" else _dump(reg.to_json())
    if cmd == "trickle":
        reg = _registry_from_trace(args.trace, args.window, args.arity)
        aid, _, dual = args.target.partition(":")
        parse_dual(dual)
        node = reg[args.target]
        goal = Goal(args.target, -node.orientation, budget=args.budget)
        frozen = [s for s in args.frozen.split(",") if s]
        return _dump({"target": args.target, **trickle(goal, reg, seed=args.seed, frozen=frozen).to_json()})
    if cmd in ("tetra", "pci"):
        args.action = cmd
        cmd = "bitbang"
    if cmd == "bitbang":
        if args.action == "derive":
            return _dump({"branch": args.branch, "steps": [s.to_json() for s in bitbang.derive(args.branch)]})
        if args.action == "quaternions":
            mapping = None
            if args.mapping:
                parts = [t for t in args.mapping.split(",")]
                if len(parts) != 3:
                    raise PhaseWebError("--mapping needs exactly three expressions")
                n = 3
                vals = [parse_expression(t, sig=args.sig) for t in parts]
                n = max([n] + [v.n for v in vals])
                mapping = [parse_expression(t, sig=args.sig, n=n) for t in parts]
            return _dump(bitbang.quaternion_check(args.sig, mapping).to_json())
        if args.action == "tetra":
            return bitbang.tetrahedra_dot() if args.format == "dot" else _dump(bitbang.tetrahedra_json())
        if args.action == "pci":
            return _dump({"rows": [r.to_json() for r in bitbang.pci_table()]})
    if cmd == "ch":
        if args.action == "table":
            return _dump(hierarchy.ch_table_json(args.levels))
        if args.action == "dcs":
            sets = hierarchy.enumerate_dcs(args.generators)
            return _dump({"generators": args.generators, "count": len(sets), "sets": [s.to_json() for s in sets]})
        if args.action == "listing":
            return _dump({"levels": hierarchy.z3_dcs_listing()})
    if cmd == "ladder":
        report = chain.ladder_report(args.sensors, args.sig)
        return report.to_dot() if args.format == "dot" else _dump(report.to_json())
    raise PhaseWebError(f"unhandled command {cmd}")


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        text = run(args)
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    except (PhaseWebError, OSError) as exc:
        print(f"phaseweb: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
