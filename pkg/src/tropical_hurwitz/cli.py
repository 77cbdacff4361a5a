"""Command-line front end.

Instance files are line oriented.  The first non-comment line is the header
``hurwitz-instance v1``; ``#`` starts a comment.  A graph-form instance uses

    vertex ID [ID ...]
    leaf ID [ID ...]
    edge ID A B
    cut ID EDGE [PROFILE]
    branch LEAF PROFILE
    degree VERTEX N

and a surface-form instance uses

    component ID genus G degree D
    point ID COMPONENT PROFILE
    circle ID COMPONENT COMPONENT [PROFILE]

Profiles are written ``[2,1,1]`` (or ``2,1,1``); a missing profile is empty.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import bridge
from .characters import frobenius_disconnected
from .covers import (
    BudgetExceeded,
    Cover,
    aut_order_by_orbit,
    euler_characteristic_check,
    labeled_count,
    structural_violations,
    tropical_open_hurwitz,
)
from .covers.enumerate import DEFAULT_NODE_BUDGET
from .formulas import hurwitz_one_special
from .partitions import Partition, parse_partition
from .symgroup import DEFAULT_MAX_DEGREE, DegreeBoundExceeded, MonodromyInstance, hurwitz_monodromy
from .tropcurve import Cut, InvalidInstance, MarkedBase, Violation, base_graph

HEADER = "hurwitz-instance v1"
GRAPH_KEYS = {"vertex", "leaf", "edge", "cut", "branch", "degree"}
SURFACE_KEYS = {"component", "point", "circle"}


class InstanceFormatError(ValueError):
    pass


def format_rational(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _tokens(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def parse_instance(text: str) -> MarkedBase | bridge.SurfaceSpec:
    lines = list(_tokens(text))
    if not lines or " ".join(lines[0][1]) != HEADER:
        raise InstanceFormatError(f"missing header {HEADER!r}")
    keys = {toks[0] for _, toks in lines[1:]}
    unknown = keys - GRAPH_KEYS - SURFACE_KEYS
    if unknown:
        raise InstanceFormatError(f"unknown directive(s): {', '.join(sorted(unknown))}")
    if keys & GRAPH_KEYS and keys & SURFACE_KEYS:
        raise InstanceFormatError("graph and surface directives cannot be mixed")
    if keys & SURFACE_KEYS:
        return _parse_surface(lines[1:])
    return _parse_graph(lines[1:])


def _need(lineno, toks, lo, hi=None):
    hi = lo if hi is None else hi
    if not lo <= len(toks) <= hi:
        raise InstanceFormatError(f"line {lineno}: '{' '.join(toks)}' has the wrong number of fields")


def _profile(lineno, toks) -> Partition:
    try:
        return parse_partition(" ".join(toks))
    except ValueError as exc:
        raise InstanceFormatError(f"line {lineno}: bad profile {' '.join(toks)!r}") from exc


def _int(lineno, tok) -> int:
    try:
        return int(tok)
    except ValueError:
        raise InstanceFormatError(f"line {lineno}: expected an integer, got {tok!r}") from None


def _unique(ids, what):
    seen = set()
    for x in ids:
        if x in seen:
            raise InstanceFormatError(f"duplicate {what} id {x}")
        seen.add(x)


def _parse_graph(lines) -> MarkedBase:
    interior, leaves, edges, cuts, branches, degrees = [], [], [], [], {}, {}
    for lineno, (key, *rest) in lines:
        if key == "vertex":
            interior += rest
        elif key == "leaf":
            leaves += rest
        elif key == "edge":
            _need(lineno, rest, 3)
            edges.append(tuple(rest))
        elif key == "cut":
            _need(lineno, rest, 2, 99)
            cuts.append(Cut(rest[0], rest[1], _profile(lineno, rest[2:])))
        elif key == "branch":
            _need(lineno, rest, 2, 99)
            if rest[0] in branches:
                raise InstanceFormatError(f"line {lineno}: second profile for {rest[0]}")
            branches[rest[0]] = _profile(lineno, rest[1:])
        elif key == "degree":
            _need(lineno, rest, 2)
            degrees[rest[0]] = _int(lineno, rest[1])
    _unique(interior + leaves, "vertex")
    _unique([e[0] for e in edges], "edge")
    _unique([c.id for c in cuts], "cut")
    return MarkedBase(base_graph(interior, leaves, edges), tuple(cuts), branches, degrees)


def _parse_surface(lines) -> bridge.SurfaceSpec:
    comps: dict[str, dict] = {}
    points, circles = [], []
    for lineno, (key, *rest) in lines:
        if key == "component":
            _need(lineno, rest, 5)
            if rest[1] != "genus" or rest[3] != "degree":
                raise InstanceFormatError(f"line {lineno}: expected 'component ID genus G degree D'")
            if rest[0] in comps:
                raise InstanceFormatError(f"line {lineno}: duplicate component id {rest[0]}")
            comps[rest[0]] = {"genus": _int(lineno, rest[2]), "degree": _int(lineno, rest[4]), "points": []}
        elif key == "point":
            _need(lineno, rest, 3, 99)
            points.append((lineno, rest[1], bridge.Point(rest[0], _profile(lineno, rest[2:]))))
        elif key == "circle":
            _need(lineno, rest, 3, 99)
            circles.append(bridge.Circle(rest[0], (rest[1], rest[2]), _profile(lineno, rest[3:])))
    for lineno, comp, p in points:
        if comp not in comps:
            raise InstanceFormatError(f"line {lineno}: point {p.id} on unknown component {comp}")
        comps[comp]["points"].append(p)
    components = tuple(
        bridge.Component(cid, c["genus"], c["degree"], tuple(c["points"])) for cid, c in comps.items()
    )
    return bridge.SurfaceSpec(components, tuple(circles))


def dump_instance(mb: MarkedBase) -> str:
    """Graph-form text for ``mb``; parse_instance reads it back."""
    out = [HEADER]
    if mb.base.interior:
        out.append("vertex " + " ".join(mb.base.interior))
    if mb.base.leaves:
        out.append("leaf " + " ".join(mb.base.leaves))
    out += [f"edge {e.id} {e.tail} {e.head}" for e in mb.base.edges]
    out += [f"cut {c.id} {c.edge} {c.profile}" for c in mb.cuts]
    out += [f"branch {q} {nu}" for q, nu in mb.branches.items()]
    out += [f"degree {v} {k}" for v, k in mb.degrees.items()]
    return "\n".join(out) + "\n"


def load_instance(path, shape: str = "trivalent") -> MarkedBase:
    doc = parse_instance(Path(path).read_text())
    if isinstance(doc, bridge.SurfaceSpec):
        return bridge.to_marked_base(doc, shape)
    return doc


def describe_cover(h: Cover, mb: MarkedBase, multiplicity: Fraction, aut: int) -> dict:
    segments: dict[str, list[int]] = {e.id: [] for e in mb.base.edges}
    if h.bare is not None:
        _, eid, w = h.bare
        segments[eid].append(w)
    for (eid, _, _, w), count in h.arcs:
        segments[eid] += [w] * count
    for p in h.pieces:
        for (eid, _), leaf, bnd in zip(mb.base.directions(p.vertex), p.leaves, p.boundary):
            segments[eid] += list(leaf) + list(bnd)
    return {
        "id": h.cover_id,
        "aut_order": aut,
        "multiplicity": format_rational(multiplicity),
        "vertices": [{"over": p.vertex, "degree": p.degree, "genus": p.genus} for p in h.pieces],
        "segments": {eid: sorted(ws, reverse=True) for eid, ws in segments.items() if ws},
        "boundary_points": h.boundary_count(),
        "genus": h.genus(),
    }


def run_checks(mb: MarkedBase, *, max_degree: int, node_budget: int) -> list[tuple[str, bool, str]]:
    """Every invariant that applies to ``mb``, as (name, passed, detail)."""
    results = []
    count = tropical_open_hurwitz(mb, max_degree=max_degree, node_budget=node_budget)
    for t in count.per_cover:
        h = t.cover
        diff = euler_characteristic_check(h, mb)
        results.append((f"euler {h.cover_id}", diff == 0, f"difference {diff}"))
        bad = structural_violations(h, mb)
        results.append((f"structure {h.cover_id}", not bad, "; ".join(bad) or "ok"))
        orbit = aut_order_by_orbit(h)
        results.append((f"automorphisms {h.cover_id}", orbit == t.aut_order, f"{t.aut_order} vs {orbit}"))
    labeled = labeled_count(mb, max_degree=max_degree, node_budget=node_budget).weighted_total
    results.append(
        ("labeled total", labeled == count.total, f"{format_rational(labeled)} vs {format_rational(count.total)}")
    )
    degrees = set(mb.chamber_degree.values())
    if mb.is_closed and len(degrees) == 1:
        (d,) = degrees
        inst = MonodromyInstance(d, mb.base.genus(), tuple(mb.branches.values()))
        oracle = hurwitz_monodromy(inst, max_degree)
        results.append(
            ("correspondence", oracle == count.total, f"{format_rational(count.total)} vs {format_rational(oracle)}")
        )
    return results


def _emit(args, text: str, data) -> None:
    if args.format == "structured":
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print(text)


def _cmd_compute(args) -> int:
    mb = load_instance(args.file, args.shape)
    total = tropical_open_hurwitz(mb, max_degree=args.max_degree, node_budget=args.node_budget).total
    _emit(args, format_rational(total), {"total": format_rational(total)})
    return 0


def _cmd_covers(args) -> int:
    mb = load_instance(args.file, args.shape)
    count = tropical_open_hurwitz(mb, max_degree=args.max_degree, node_budget=args.node_budget)
    rows = [describe_cover(t.cover, mb, t.multiplicity, t.aut_order) for t in count.per_cover]
    lines = []
    for r in rows:
        lines.append(f"cover {r['id']}  aut {r['aut_order']}  multiplicity {r['multiplicity']}  genus {r['genus']}")
        for v in r["vertices"]:
            lines.append(f"  vertex over {v['over']}: degree {v['degree']}, genus {v['genus']}")
        for eid, ws in r["segments"].items():
            lines.append(f"  edge {eid}: weights {','.join(map(str, ws))}")
    lines.append(f"total {format_rational(count.total)} over {len(rows)} cover(s)")
    _emit(args, "\n".join(lines), {"covers": rows, "total": format_rational(count.total)})
    return 0


def _cmd_oracle(args) -> int:
    inst = MonodromyInstance(args.degree, args.genus, tuple(args.profile), connected=not args.disconnected)
    value = hurwitz_monodromy(inst, args.max_degree)
    _emit(args, format_rational(value), {"value": format_rational(value)})
    return 0


def _cmd_frobenius(args) -> int:
    value = frobenius_disconnected(args.degree, args.genus, args.profile)
    _emit(args, format_rational(value), {"value": format_rational(value)})
    return 0


def _cmd_formula(args) -> int:
    value = hurwitz_one_special(args.degree, args.mu)
    _emit(args, format_rational(value), {"value": format_rational(value)})
    return 0


def _cmd_double(args) -> int:
    value = bridge.double_hurwitz(
        args.degree, args.mu0, args.muinf, args.genus, max_degree=args.max_degree, node_budget=args.node_budget
    )
    _emit(args, format_rational(value), {"value": format_rational(value)})
    return 0


def _cmd_check(args) -> int:
    mb = load_instance(args.file, args.shape)
    results = run_checks(mb, max_degree=args.max_degree, node_budget=args.node_budget)
    ok = all(passed for _, passed, _ in results)
    text = "\n".join(f"{'PASS' if p else 'FAIL'} {name}: {detail}" for name, p, detail in results)
    data = {"passed": ok, "checks": [{"name": n, "passed": p, "detail": d} for n, p, d in results]}
    _emit(args, text, data)
    return 0 if ok else 1


def _partition_arg(text: str) -> Partition:
    try:
        return parse_partition(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a partition: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "structured"), default="text")
    common.add_argument("--max-degree", type=int, default=DEFAULT_MAX_DEGREE)
    common.add_argument("--node-budget", type=int, default=DEFAULT_NODE_BUDGET)

    parser = argparse.ArgumentParser(prog="tropical-hurwitz", description="Exact tropical and classical Hurwitz numbers.")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, func, helptext in (
        ("compute", _cmd_compute, "tropical open Hurwitz number of an instance file"),
        ("covers", _cmd_covers, "list the covers of an instance with their multiplicities"),
        ("check", _cmd_check, "run every applicable invariant on an instance"),
    ):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("file")
        p.add_argument("--shape", choices=bridge.SHAPES, default="trivalent", help="base shape for surface-form files")
        p.set_defaults(func=func)

    for name, func, helptext in (
        ("oracle", _cmd_oracle, "count monodromy tuples"),
        ("frobenius", _cmd_frobenius, "Frobenius character formula (disconnected covers)"),
    ):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("-d", "--degree", type=int, required=True)
        p.add_argument("-g", "--genus", type=int, default=0)
        p.add_argument("--profile", type=_partition_arg, action="append", default=[])
        if name == "oracle":
            p.add_argument("--disconnected", action="store_true")
        p.set_defaults(func=func)

    p = sub.add_parser("formula", parents=[common], help="closed formulas")
    p.add_argument("--one-special", action="store_true", required=True)
    p.add_argument("-d", "--degree", type=int, required=True)
    p.add_argument("--mu", type=_partition_arg, required=True)
    p.set_defaults(func=_cmd_formula)

    p = sub.add_parser("double", parents=[common], help="double Hurwitz number")
    p.add_argument("-d", "--degree", type=int, required=True)
    p.add_argument("--mu0", type=_partition_arg, required=True)
    p.add_argument("--muinf", type=_partition_arg, required=True)
    p.add_argument("-g", "--genus", type=int, default=0)
    p.set_defaults(func=_cmd_double)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (BudgetExceeded, DegreeBoundExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InvalidInstance as exc:
        _report(args, exc.violations)
        return 1
    except (ValueError, OSError) as exc:
        _report(args, [Violation("input", str(exc))])
        return 1


def _report(args, violations) -> None:
    if args.format == "structured":
        print(json.dumps({"violations": [{"code": v.code, "message": v.message} for v in violations]}, indent=2))
    else:
        for v in violations:
            print(f"invalid: {v}", file=sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
