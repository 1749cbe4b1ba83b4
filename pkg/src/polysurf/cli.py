"""Command-line front end.

Exit codes: 0 success / valid / isomorphic, 1 semantic failure (invalid
surface, obstruction found, not isomorphic, construction precondition not
met), 2 usage, parse or IO error.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import graphs as gr
from .io import SurfaceFormatError, read_surface, to_obj, to_off, write_surface
from .surface import Mode, Surface, validate

OK, FAIL, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(text: str, out: str | None) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)


def _read_graph(path: str) -> gr.Graph:
    with open(path) as fh:
        return gr.parse_graph(fh.read())


def _ints(params, n: int, what: str) -> list[int]:
    if len(params) != n:
        raise UsageError(f"{what} takes {n} parameter(s)")
    try:
        return [int(x) for x in params]
    except ValueError:
        raise UsageError(f"{what}: integer parameters expected") from None


def cmd_graph(args) -> int:
    kind, p = args.kind, args.params
    if kind == "complete":
        (n,) = _ints(p, 1, kind)
        g = gr.complete(n)
    elif kind == "bipartite":
        a, b = _ints(p, 2, kind)
        g = gr.complete_bipartite(a, b)
    elif kind == "hypercube":
        (d,) = _ints(p, 1, kind)
        g = gr.hypercube(d)
    elif kind in ("subdivision", "subdivide"):
        if len(p) not in (1, 2):
            raise UsageError("subdivision takes a graph file and an optional k")
        k = int(p[1]) if len(p) == 2 else 1
        g = gr.subdivide_graph(_read_graph(p[0]), k)
    elif kind == "three-tree":
        (n,) = _ints(p, 1, kind)
        g = gr.random_three_tree(n, args.seed)
    elif kind == "triple-stacked":
        _ints(p, 0, kind)
        g = gr.triple_stacked_triangle()
    elif kind == "planar":
        (n,) = _ints(p, 1, kind)
        g = gr.random_planar(n, args.seed)
    elif kind == "gnp":
        if len(p) != 2:
            raise UsageError("gnp takes n and p")
        g = gr.gnp(int(p[0]), float(p[1]), args.seed)
    elif kind == "petersen":
        _ints(p, 0, kind)
        g = gr.petersen()
    elif kind == "cycle":
        (n,) = _ints(p, 1, kind)
        g = gr.cycle(n)
    elif kind == "path":
        (n,) = _ints(p, 1, kind)
        g = gr.path(n)
    else:
        raise UsageError(f"unknown graph kind {kind!r}")
    _emit(gr.format_graph(g), args.out)
    return OK


def _realize(method: str, params: list, k: int):
    from . import constructions as c

    if method in ("comb", "planar", "cylinder"):
        if len(params) != 1:
            raise UsageError(f"{method} takes a graph file")
        g = _read_graph(params[0])
        if method == "comb":
            return c.realize_comb(g)
        if method == "planar":
            return c.realize_planar_flat(g)
        return c.realize_subdivision_cylinder(g, k)
    if method == "k44":
        _ints(params, 0, method)
        return c.realize_k44()
    if method == "k35":
        _ints(params, 0, method)
        return c.realize_k35()
    if method == "hypercube":
        (d,) = _ints(params, 1, method)
        return c.realize_hypercube(d)
    if method == "density":
        (ell,) = _ints(params, 1, method)
        return c.density_family(ell)
    raise UsageError(f"unknown method {method!r}")


def cmd_realize(args) -> int:
    from .constructions import ConstructionFailed

    try:
        res = _realize(args.method, args.params, args.k)
    except (UsageError, OSError, gr.GraphFormatError):
        raise
    except ConstructionFailed as e:
        print(f"error: {e}", file=sys.stderr)
        return FAIL
    except ValueError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return FAIL
    if args.out:
        write_surface(res.surface, args.out)
    record = {
        "method": args.method,
        "polygons": res.stats.polygons,
        "max_corners": res.stats.max_corners,
        "max_bits": res.stats.max_bits,
        "edges": res.report.adjacency.m,
        "valid": res.report.valid,
    }
    record.update({k: v for k, v in res.extra.items() if isinstance(v, (int, float, str, list))})
    print(json.dumps(record))
    return OK


def _load(args) -> Surface:
    s = read_surface(args.surface)
    if getattr(args, "mode", None):
        s = Surface(s.polygons, Mode(args.mode))
    return s


def _report_dict(rep) -> dict:
    return {
        "valid": rep.valid,
        "polygons": rep.adjacency.n,
        "edges": rep.adjacency.m,
        "violations": [
            {"items": [repr(x) for x in v.items], "description": v.description, "witness": repr(v.witness)}
            for v in rep.violations
        ],
    }


def cmd_verify(args) -> int:
    s = _load(args)
    rep = validate(s, closed=args.closed)
    if args.report == "json":
        print(json.dumps(_report_dict(rep), indent=2))
    else:
        print("valid" if rep.valid else "invalid", f"({rep.adjacency.n} polygons, {rep.adjacency.m} shared sides)")
        for v in rep.violations:
            print(f"  {v.items}: {v.description}; witness {v.witness!r}")
    return OK if rep.valid else FAIL


def cmd_adjacency(args) -> int:
    rep = validate(_load(args))
    if not rep.valid:
        print("warning: surface is invalid; adjacency of the shared sides only", file=sys.stderr)
    _emit(gr.format_graph(rep.adjacency), args.out)
    return OK


def cmd_iso(args) -> int:
    from .surface import realizes

    s = _load(args)
    g = _read_graph(args.graph)
    rep = validate(s)
    if not rep.valid:
        print("surface is invalid", file=sys.stderr)
        return FAIL
    real = realizes(s, g, rep)
    if real is None:
        print("not isomorphic")
        return FAIL
    print("isomorphic")
    for v in range(g.n):
        print(f"{g.labels[v]} -> {real.vertex_map[v]!r}")
    return OK


def cmd_obstructions(args) -> int:
    g = _read_graph(args.graph)
    found = gr.obstruction_scan(g)
    if not found:
        print("no obstruction found (this does not prove realizability)")
        return OK
    for ob in found:
        if ob.kind == "K5_81":
            five, common = ob.witness
            wit = [g.labels[v] for v in five], [g.labels[v] for v in common]
        else:
            wit = [g.labels[v] for v in ob.witness]
        print(f"{ob.kind}: {wit}")
    return FAIL


def cmd_export(args) -> int:
    s = _load(args)
    text = to_off(s, args.digits) if args.format == "off" else to_obj(s, args.digits)
    _emit(text, args.out)
    return OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="polysurf", description="Polyhedral surfaces realizing graphs.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("graph", help="write a generated graph")
    p.add_argument("kind")
    p.add_argument("params", nargs="*")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("realize", help="run a construction and write the surface")
    p.add_argument("method", choices=["comb", "planar", "cylinder", "k44", "k35", "hypercube", "density"])
    p.add_argument("params", nargs="*")
    p.add_argument("-k", type=int, default=1, help="subdivisions per edge (cylinder)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_realize)

    def surface_cmd(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("surface")
        g = p.add_mutually_exclusive_group()
        g.add_argument("--convex", dest="mode", action="store_const", const="convex")
        g.add_argument("--general", dest="mode", action="store_const", const="general")
        p.set_defaults(func=func)
        return p

    p = surface_cmd("verify", cmd_verify, "check the surface conditions")
    p.add_argument("--report", choices=["text", "json"], default="text")
    p.add_argument("--closed", action="store_true", help="also flag sides that belong to one polygon")
    p = surface_cmd("adjacency", cmd_adjacency, "print the adjacency graph")
    p.add_argument("-o", "--out")
    p = surface_cmd("iso", cmd_iso, "compare the adjacency graph with a graph file")
    p.add_argument("graph")
    p = surface_cmd("export", cmd_export, "write OFF or OBJ (lossy)")
    p.add_argument("--format", choices=["off", "obj"], default="off")
    p.add_argument("--digits", type=int, default=12)
    p.add_argument("-o", "--out")

    p = sub.add_parser("obstructions", help="scan a graph for forbidden subgraphs")
    p.add_argument("graph")
    p.set_defaults(func=cmd_obstructions)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return USAGE if e.code else OK
    try:
        return args.func(args)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
    except (gr.GraphFormatError, SurfaceFormatError) as e:
        print(f"parse error: {e}", file=sys.stderr)
    except OSError as e:
        print(f"io error: {e}", file=sys.stderr)
    return USAGE


if __name__ == "__main__":
    sys.exit(main())
