"""Command-line front end.

Exit codes: 0 success, 1 unreadable or malformed input, 2 violated
precondition (e.g. a non-hyperelliptic graph given to ``theta``),
3 internal assertion failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from typing import Optional, Sequence

from . import curve_side, formats, generators
from .errors import GraphFormatError, PreconditionError
from .graph import bridges, canonical_divisor, contract_bridges
from .hyperelliptic import (
    has_g12_by_rank,
    hyperelliptic_structure,
    is_hyperelliptic,
    ramification_divisor,
)
from .reduction import base_point, is_equivalent, rank, reduce
from .theta import enumerate_theta, theta_to_divisor

VERBS = ("info", "canonical", "reduce", "rank", "equivalent", "hyperelliptic",
         "ramification", "theta", "specialize", "gen")


class _ParseError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _ParseError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="thetagraph", description="Divisors and theta characteristics on metric graphs.")
    p.add_argument("verb", choices=VERBS)
    p.add_argument("graph", nargs="?", help="graph JSON file")
    p.add_argument("--graph", dest="graph_opt", metavar="GRAPH", help="same as the positional graph file")
    p.add_argument("--divisor")
    p.add_argument("--divisor2")
    p.add_argument("--base", help='base point: vertex id, "edge@offset" or point JSON')
    p.add_argument("--genus", type=int)
    p.add_argument("--family", choices=sorted(generators.FAMILIES))
    p.add_argument("--seed", type=int)
    p.add_argument("--lengths", help="comma-separated rationals")
    p.add_argument("--output", help="write the generated graph here instead of stdout")
    p.add_argument("--list", action="store_true", help="theta: list every class")
    p.add_argument("--pretty", action="store_true", help="aligned human-readable output")
    return p


def _need(args, name):
    value = getattr(args, name)
    if value is None:
        raise _ParseError(f"{args.verb} needs {'a graph file' if name == 'graph' else '--' + name}")
    return value


def _points(pts):
    return [formats.point_to_json(p) for p in pts]


def _cmd_info(args):
    G = formats.load_graph(_need(args, "graph"))
    return {"genus": G.genus, "vertices": len(G.vertices), "edges": len(G.edges), "bridges": bridges(G)}


def _cmd_canonical(args):
    G = formats.load_graph(_need(args, "graph"))
    K = canonical_divisor(G)
    return {"degree": K.degree, "divisor": formats.divisor_to_json(K)}


def _cmd_reduce(args):
    G = formats.load_graph(_need(args, "graph"))
    D = formats.load_divisor(G, _need(args, "divisor"))
    q = formats.parse_point(G, args.base) if args.base else base_point(G)
    return {"base": formats.point_to_json(q), "divisor": formats.divisor_to_json(reduce(D, q))}


def _cmd_rank(args):
    G = formats.load_graph(_need(args, "graph"))
    D = formats.load_divisor(G, _need(args, "divisor"))
    return {"degree": D.degree, "rank": rank(D)}


def _cmd_equivalent(args):
    G = formats.load_graph(_need(args, "graph"))
    D1 = formats.load_divisor(G, _need(args, "divisor"))
    D2 = formats.load_divisor(G, _need(args, "divisor2"))
    return {"equivalent": is_equivalent(D1, D2)}


def _hyperelliptic_report(G, with_details: bool):
    found = is_hyperelliptic(G)
    H, _ = contract_bridges(G)
    out = {"found": found, "bridges_contracted": H != G, "rank_route": has_g12_by_rank(G),
           "involution": None, "ramification_points": []}
    if found:
        s = hyperelliptic_structure(H)
        out["involution"] = {"model": formats.graph_to_json(s.involution.model), **s.involution.to_json()}
        out["ramification_points"] = _points(s.ramification_points)
        if with_details:
            out["ramification_divisor"] = formats.divisor_to_json(ramification_divisor(s.morphism))
            out["quotient_tree"] = formats.graph_to_json(s.tree)
    return out


def _cmd_hyperelliptic(args):
    return _hyperelliptic_report(formats.load_graph(_need(args, "graph")), False)


def _cmd_ramification(args):
    return _hyperelliptic_report(formats.load_graph(_need(args, "graph")), True)


def _cmd_theta(args):
    G = formats.load_graph(_need(args, "graph"))
    symbols = enumerate_theta(G)
    if not args.list:
        return {"genus": G.genus, "count": len(symbols), "non_effective": sum(1 for t in symbols if t.m < 0)}
    out = []
    for t in symbols:
        D = theta_to_divisor(t, G)
        r = rank(D)
        out.append({"m": t.m, "S": list(t.S), "rank": r, "effective": r >= 0,
                    "divisor": formats.divisor_to_json(D)})
    return out


def _cmd_specialize(args):
    G = formats.load_graph(args.graph) if args.graph else None
    g = args.genus if args.genus is not None else (G.genus if G is not None else None)
    if g is None:
        raise _ParseError("specialize needs --genus or a graph file")
    if G is not None and G.genus != g:
        raise PreconditionError(f"--genus {g} does not match graph genus {G.genus}")
    if g < 2:
        raise PreconditionError(f"genus {g} < 2")
    table = curve_side.specialization_table(g)
    out = {
        "genus": g,
        "targets": [{"theta": t.to_json(), "effective": t.is_effective, "even": e, "odd": o}
                    for t, (e, o) in table.items()],
        "total": sum(e + o for e, o in table.values()),
    }
    if G is not None:
        failures = [th.to_json() for th in curve_side.enumerate_curve_theta(g)
                    if not curve_side.divisor_level_check(th, G)]
        out["divisor_level_check"] = {"checked": 4 ** g, "passed": 4 ** g - len(failures), "failures": failures}
    return out


def _cmd_gen(args):
    family = _need(args, "family")
    g = _need(args, "genus")
    lengths = args.lengths.split(",") if args.lengths else None
    G = generators.FAMILIES[family](g, lengths=lengths, seed=args.seed)
    if args.output:
        formats.dump_graph(G, args.output)
        return {"written": args.output, "genus": G.genus}
    return formats.graph_to_json(G)


_HANDLERS = {v: globals()[f"_cmd_{v}"] for v in VERBS}


def _pretty(obj) -> str:
    if isinstance(obj, list) and obj and all(isinstance(x, dict) for x in obj):
        cols = list(obj[0])
        rows = [[_cell(x.get(c)) for c in cols] for x in obj]
        widths = [max(len(c), *(len(r[i]) for r in rows)) for i, c in enumerate(cols)]
        lines = ["  ".join(c.ljust(w) for c, w in zip(cols, widths))]
        lines += ["  ".join(v.ljust(w) for v, w in zip(r, widths)) for r in rows]
        return "\n".join(lines)
    if isinstance(obj, dict):
        blocks = []
        width = max((len(k) for k in obj), default=0)
        for k, v in obj.items():
            if isinstance(v, list) and v and all(isinstance(x, dict) for x in v) and not _is_cell_list(v):
                blocks.append(f"{k}:\n{_pretty(v)}")
            else:
                blocks.append(f"{k.ljust(width)}  {_cell(v)}")
        return "\n".join(blocks)
    return _cell(obj)


def _is_point(v) -> bool:
    return isinstance(v, dict) and ("vertex" in v or set(v) == {"edge", "offset"})


def _is_cell_list(v) -> bool:
    return all(_is_point(x) or (isinstance(x, dict) and "coeff" in x) for x in v)


def _cell(v) -> str:
    if isinstance(v, list) and v and isinstance(v[0], dict) and "coeff" in v[0]:
        return " + ".join(f"{d['coeff']}*{_point_str(d['point'])}" for d in v)
    if isinstance(v, list) and v and all(_is_point(x) for x in v):
        return ", ".join(_point_str(x) for x in v)
    if _is_point(v):
        return _point_str(v)
    if isinstance(v, dict) and set(v) == {"m", "S"}:
        return f"({v['m']}, {{{', '.join(map(str, v['S']))}}})"
    if isinstance(v, (dict, list)):
        return json.dumps(v)
    return str(v)


def _point_str(p: dict) -> str:
    return p["vertex"] if "vertex" in p else f"{p['edge']}@{p['offset']}"


def _configure_logging() -> None:
    level = os.environ.get("TOOL_LOG") or os.environ.get("THETAGRAPH_LOG")
    if level:
        logging.basicConfig(stream=sys.stderr, level=level.upper(), format="%(name)s: %(message)s")


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    _configure_logging()
    try:
        args = build_parser().parse_args(argv)
        if args.graph_opt is not None:
            if args.graph is not None and args.graph != args.graph_opt:
                raise _ParseError("two different graph files given")
            args.graph = args.graph_opt
        result = _HANDLERS[args.verb](args)
    except (_ParseError, GraphFormatError) as exc:
        print(f"error: {exc}", file=stderr)
        return 1
    except (PreconditionError, ValueError) as exc:
        print(f"precondition violated: {exc}", file=stderr)
        return 2
    except AssertionError as exc:
        print(f"internal assertion failed: {exc}", file=stderr)
        return 3
    text = _pretty(result) if args.pretty else json.dumps(result, indent=2)
    stdout.write(text + "\n")
    stdout.flush()
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
