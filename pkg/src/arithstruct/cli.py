"""Command-line front end.  Output is JSON (or JSON lines) on stdout.

Exit codes: 0 success, 1 invalid input (or an invalid structure for
``verify``), 2 enumeration budget exhausted, 3 internal consistency failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import random
import sys
from fractions import Fraction
from pathlib import Path

from .critgroup import ConsistencyError, critical_group, tree_order_formula
from .enumeration import ENGINES, BudgetExceeded, EnumerationBudget, enumerate_structures
from .extension import extend_path, extend_star
from .gluing import Piece, det_identity, glue, split, wedge_factors
from .graph import GraphError, Multigraph, blocks_and_cut_vertices
from .linalg import format_rational
from .structures import StructureError, structure_from_json, verify_rational

EXIT_OK, EXIT_INVALID, EXIT_BUDGET, EXIT_INTERNAL = 0, 1, 2, 3

log = logging.getLogger("arithstruct")


class InputError(Exception):
    pass


def _load_json(path: str):
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None


def _graph(path: str) -> Multigraph:
    return Multigraph.from_json(_load_json(path))


def _structure(path: str):
    return structure_from_json(_load_json(path))


def _piece(arg: str) -> Piece:
    try:
        gpath, spath, anchor = arg.rsplit(":", 2)
    except ValueError:
        raise InputError(f"expected graph.json:structure.json:vertex, got {arg!r}") from None
    return Piece(_graph(gpath), anchor, _structure(spath))


class _Out:
    def __init__(self, pretty: bool):
        self.pretty = pretty

    def emit(self, payload) -> None:
        if self.pretty:
            text = json.dumps(payload, indent=2)
        else:
            text = json.dumps(payload, separators=(",", ":"))
        sys.stdout.write(text + "\n")


def cmd_verify(args, out: _Out) -> int:
    G = _graph(args.graph)
    s = _structure(args.structure)
    relaxed = set(s.relaxed)
    if args.relaxed:
        relaxed |= {v.strip() for v in args.relaxed.split(",") if v.strip()}
    report = verify_rational(G, relaxed, s.d, s.r)
    out.emit(report.to_json())
    return EXIT_OK if report.valid else EXIT_INVALID


def cmd_enumerate(args, out: _Out) -> int:
    G = _graph(args.graph)
    budget = EnumerationBudget(r_max=args.r_max, node_limit=args.node_limit)
    code = EXIT_OK
    try:
        res = enumerate_structures(G, budget, engine=args.engine, threads=args.threads)
        structures, summary = res.structures, res.summary()
    except BudgetExceeded as exc:
        structures = exc.partial
        summary = {"count": len(structures), "complete": False, "engine": args.engine,
                   "budget": budget.to_json(), "exhausted": True}
        code = EXIT_BUDGET
    for s in structures:
        out.emit(s.to_json(G))
    out.emit({"summary": summary})
    return code


def cmd_glue(args, out: _Out) -> int:
    H, s = glue(_piece(args.left), _piece(args.right), prefix=args.prefix)
    out.emit({"graph": H.to_json(), "structure": s.to_json(H)})
    return EXIT_OK


def cmd_split(args, out: _Out) -> int:
    G = _graph(args.graph)
    pieces = split(G, args.at, _structure(args.structure))
    out.emit([
        {"graph": p.graph.to_json(), "anchor": p.anchor, "structure": p.structure.to_json(p.graph)}
        for p in pieces
    ])
    return EXIT_OK


def cmd_extend(args, out: _Out) -> int:
    G = _graph(args.graph)
    s = _structure(args.structure)
    if args.strategy == "path":
        H, t = extend_path(G, s)
    else:
        H, t = extend_star(G, s, strategy=args.strategy)
    out.emit({"graph": H.to_json(), "structure": t.to_json(H)})
    return EXIT_OK


def cmd_critgroup(args, out: _Out) -> int:
    G = _graph(args.graph)
    s = _structure(args.structure)
    inv = critical_group(G, s)
    payload = inv.to_json()
    if G.is_tree() and len(G) > 1:
        expected = tree_order_formula(G, s)
        payload["tree_formula_order"] = str(expected)
        if expected != inv.order:
            raise ConsistencyError(f"SNF order {inv.order} != tree formula {expected}")
    out.emit(payload)
    return EXIT_OK


def _random_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-9, 9), rng.randint(1, 6))


def cmd_det_check(args, out: _Out) -> int:
    G = _graph(args.graph)
    wedge_factors(G, args.at)  # rejects non-cut vertices up front
    rng = random.Random(args.seed)
    others = [v for v in G if v != args.at]
    for trial in range(args.trials):
        x = {v: _random_rational(rng) for v in others}
        t1, t2 = _random_rational(rng), _random_rational(rng)
        res = det_identity(G, args.at, x, t1, t2)
        if not res.holds:
            out.emit({
                "pass": False, "trials": trial + 1,
                "counterexample": {
                    "x": {v: format_rational(a) for v, a in x.items()},
                    "t1": format_rational(t1), "t2": format_rational(t2),
                    "lhs": format_rational(res.lhs), "rhs": format_rational(res.rhs),
                },
            })
            return EXIT_INTERNAL
    out.emit({"pass": True, "trials": args.trials, "seed": args.seed})
    return EXIT_OK


def cmd_blocks(args, out: _Out) -> int:
    out.emit(blocks_and_cut_vertices(_graph(args.graph)).to_json())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="arithstruct", description="Arithmetical structures on multigraphs.")
    p.add_argument("--pretty", action="store_true", help="indent JSON output")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("verify", help="check a (possibly rational) structure")
    s.add_argument("--graph", required=True)
    s.add_argument("--structure", required=True)
    s.add_argument("--relaxed", help="comma-separated vertices where d may be rational")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("enumerate", help="list all structures (JSON lines + summary)")
    s.add_argument("--graph", required=True)
    s.add_argument("--r-max", type=int, default=100)
    s.add_argument("--node-limit", type=int, default=50_000_000)
    s.add_argument("--engine", choices=ENGINES, default="auto")
    s.add_argument("--threads", type=int, default=1)
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("glue", help="glue two anchored structures at a vertex")
    s.add_argument("--left", required=True, metavar="G.json:S.json:V")
    s.add_argument("--right", required=True, metavar="G.json:S.json:V")
    s.add_argument("--prefix", default=None, help="prefix for the right graph's labels")
    s.set_defaults(func=cmd_glue)

    s = sub.add_parser("split", help="split a structure at a cut vertex")
    s.add_argument("--graph", required=True)
    s.add_argument("--structure", required=True)
    s.add_argument("--at", required=True)
    s.set_defaults(func=cmd_split)

    s = sub.add_parser("extend", help="extend a rational structure to an integral one")
    s.add_argument("--graph", required=True)
    s.add_argument("--structure", required=True)
    s.add_argument("--strategy", choices=("greedy", "repeat", "path"), default="greedy")
    s.set_defaults(func=cmd_extend)

    s = sub.add_parser("critgroup", help="invariant factors of the critical group")
    s.add_argument("--graph", required=True)
    s.add_argument("--structure", required=True)
    s.set_defaults(func=cmd_critgroup)

    s = sub.add_parser("det-check", help="randomized check of the cut-vertex determinant identity")
    s.add_argument("--graph", required=True)
    s.add_argument("--at", required=True)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--trials", type=int, default=100)
    s.set_defaults(func=cmd_det_check)

    s = sub.add_parser("blocks", help="blocks and cut vertices")
    s.add_argument("--graph", required=True)
    s.set_defaults(func=cmd_blocks)
    return p


def run(argv=None) -> int:
    logging.basicConfig(
        level=os.environ.get("ARITH_LOG", "WARNING").upper(),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    out = _Out(args.pretty)
    try:
        return args.func(args, out)
    except ConsistencyError as exc:
        log.error("consistency failure: %s", exc)
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INTERNAL
    except (InputError, GraphError, StructureError, ValueError, KeyError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INVALID


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
