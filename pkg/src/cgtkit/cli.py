"""Command-line front end: ``cgtkit <area> <command> [flags]``.

Every command builds a plain dict, wrapped in an envelope that also
records the schema version and the seed and budget of the run.  ``--format json`` prints it
with sorted keys, so identical argv and seed give byte-identical output;
``--format text`` prints the same values as indented ``key: value`` lines.

Points on the command line are 1-based, like cycle notation.

Exit codes: 0 success, 1 a claim or verification failed, 2 usage or
input error, 3 a search budget ran out.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .errors import BudgetExceeded, CGTError

SCHEMA_VERSION = 1

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class _Failed(Exception):
    """A command ran but its verdict is negative; the report is still printed."""

    def __init__(self, result: dict):
        super().__init__("failed")
        self.result = result


# ---------------------------------------------------------------------------
# argument helpers


def _parse_named(text: str):
    """``NAME`` or ``NAME:key=value,...`` with integer values where possible."""
    from .atlas import builtin

    name, _, rest = text.partition(":")
    params = {}
    for item in filter(None, rest.split(",")):
        k, _, v = item.partition("=")
        params[k] = int(v) if v.lstrip("-").isdigit() else v
    return builtin(name, **params)


def _group(text: str):
    """A group from a record file path or a built-in name."""
    from .atlas import load_group

    if os.path.exists(text):
        return load_group(text)
    return _parse_named(text)


def _perm(text: str, degree: int):
    from .perm import parse_cycles

    return parse_cycles(text, degree)


def _subgroup(gens: Sequence[str], degree: int, file: Optional[str] = None):
    from .stabchain import PermGroup

    if file:
        g = _group(file)
        if g.degree != degree:
            from .errors import DegreeMismatch

            raise DegreeMismatch(f"{file} has degree {g.degree}, expected {degree}")
        return g
    return PermGroup([_perm(s, degree) for s in gens], degree)


def _point(p: int, degree: int) -> int:
    from .errors import PointOutOfRange

    if not 1 <= p <= degree:
        raise PointOutOfRange(f"point {p} is outside 1..{degree}")
    return p - 1


def _group_summary(g) -> dict:
    return {
        "degree": g.degree,
        "order": str(g.order()),
        "generators": [str(p) for p in g.generators],
    }


# ---------------------------------------------------------------------------
# numth


def cmd_numth(args) -> dict:
    from .numtower import (
        cyclotomic_value,
        lemma_r_check,
        p_part,
        prime_power,
        prime_powers_up_to,
        primitive_part,
        zsigmondy_exception,
    )

    if args.op == "phi":
        rep = primitive_part(args.m, args.q, budget=args.budget or 2_000_000)
        out = rep.to_dict()
        out["phi_value"] = str(cyclotomic_value(args.m, args.q))
        return out
    if args.op == "zsig":
        rows = []
        for m in range(2, args.max_m + 1):
            for q in prime_powers_up_to(args.max_q):
                if primitive_part(m, q).primitive_part == 1:
                    rows.append({"m": m, "q": q, "predicate": zsigmondy_exception(m, q)})
        return {"max_m": args.max_m, "max_q": args.max_q, "exceptions": rows}
    if args.op == "lemma-r":
        if args.q is not None:
            return lemma_r_check(args.q, args.d).to_dict()
        out = []
        for d in range(2, args.max_d + 1):
            for q in prime_powers_up_to(args.max_q):
                v = lemma_r_check(q, d)
                if v.r_is_prime:
                    out.append(v.to_dict())
        return {"max_d": args.max_d, "max_q": args.max_q, "prime_cases": out}
    if args.op == "ppart":
        return {"n": str(args.n), "p": args.p, "p_part": str(p_part(args.n, args.p))}
    if args.op == "prime-power":
        return prime_power(args.q).to_dict()
    raise AssertionError(args.op)


# ---------------------------------------------------------------------------
# table1


def cmd_table1(args) -> dict:
    from .table1 import Table1Bounds, enumerate_table1

    bounds = Table1Bounds.single(args.bound) if args.bound is not None else Table1Bounds()
    if args.p_max is not None or args.order_max is not None:
        bounds = Table1Bounds(
            n_max=bounds.n_max,
            exp_max=bounds.exp_max,
            p_max=args.p_max if args.p_max is not None else bounds.p_max,
            order_max=args.order_max if args.order_max is not None else bounds.order_max,
        )
    line = args.line
    if line != "all" and line.isdigit():
        line = int(line)
    rows = enumerate_table1(line, bounds)
    return {
        "line": args.line,
        "bounds": {"n_max": bounds.n_max, "exp_max": bounds.exp_max, "p_max": bounds.p_max,
                   "order_max": bounds.order_max},
        "count": len(rows),
        "instances": [r.to_dict() for r in rows],
    }


# ---------------------------------------------------------------------------
# group


def cmd_group(args) -> dict:
    from .backtrack import DEFAULT_BUDGET, centralizer, intersection, normalizer

    g = _group(args.file)
    n = g.degree
    budget = args.budget or DEFAULT_BUDGET
    if args.op == "order":
        return {"order": str(g.order()), "degree": n}
    if args.op == "orbit":
        p = _point(args.point, n)
        return {"point": args.point, "orbit": [q + 1 for q in g.orbit(p)]}
    if args.op == "stab":
        p = _point(args.point, n)
        return {"point": args.point, "stabilizer": _group_summary(g.stabilizer(p))}
    if args.op == "normalizer":
        k = _subgroup(args.gen, n, args.sub_file)
        return {"subgroup_order": str(k.order()), "normalizer": _group_summary(normalizer(g, k, budget))}
    if args.op == "centralizer":
        if args.elem:
            k = _perm(args.elem, n)
            korder = str(k.order())
        else:
            k = _subgroup(args.gen, n, args.sub_file)
            korder = str(k.order())
        return {"subgroup_order": korder, "centralizer": _group_summary(centralizer(g, k, budget))}
    if args.op == "intersect":
        other = _subgroup(args.gen, n, args.sub_file)
        return {"intersection": _group_summary(intersection(g, other, budget))}
    raise AssertionError(args.op)


# ---------------------------------------------------------------------------
# graph


def _spec(args):
    from .cosetgraph import analyze_spec

    g = _group(args.group)
    h = _subgroup(args.h, g.degree, args.h_file)
    x = _perm(args.x, g.degree)
    return analyze_spec(g, h, x)


def cmd_graph(args) -> dict:
    from .cosetgraph import (
        Graph,
        arc_transitivity_check,
        build_graph_with_action,
        graph_props,
        quotient_graph,
        stabilizer_rpart_check,
    )
    from .stabchain import coset_action

    if args.op == "props" and args.graph_file:
        graph = Graph.from_json(json.loads(Path(args.graph_file).read_text(encoding="utf-8")))
        return {"props": graph_props(graph).to_dict()}
    report = _spec(args)
    if args.op == "analyze":
        return {"spec": report.to_dict()}
    graph, action = build_graph_with_action(report.spec, max_vertices=args.max_vertices)
    if args.op == "build":
        out = {"spec": report.to_dict(), "graph": graph.to_json()}
        if args.r:
            out["rpart"] = stabilizer_rpart_check(action, 0, args.r).to_dict()
        out["arc_transitive"] = arc_transitivity_check(action, graph)
        return out
    if args.op == "props":
        return {"spec": report.to_dict(), "props": graph_props(graph).to_dict(),
                "arc_transitive": arc_transitivity_check(action, graph)}
    if args.op == "quotient":
        spec = report.spec
        act = coset_action(spec.g, spec.h, max_index=args.max_vertices)
        k = act.image_group(_subgroup(args.k, spec.g.degree))
        q = quotient_graph(graph, action, k, allow_few_orbits=args.allow_few_orbits)
        return {"spec": report.to_dict(), "quotient": q.to_dict()}
    raise AssertionError(args.op)


# ---------------------------------------------------------------------------
# search, claims, atlas


def cmd_search(args) -> dict:
    from .backtrack import DEFAULT_BUDGET
    from .searcher import SearchBudget, SearchTask, remark_search

    h = _group(args.h_file)
    ambient = args.ambient if args.ambient in ("A", "S") else _group(args.ambient)
    budget = SearchBudget(
        nodes=args.budget or DEFAULT_BUDGET,
        samples=args.samples,
        max_hits=args.max_hits,
        max_degree=args.max_degree,
    )
    task = SearchTask(
        h=h,
        r=args.r,
        ambient=ambient,
        mode=args.mode,
        seed=args.seed,
        budget=budget,
        target_order=args.target_order,
    )
    return remark_search(task).to_dict()


def cmd_claims(args) -> dict:
    from .searcher import claim_ids, reproduce_claim

    if args.op == "list":
        from .searcher import load_registry

        return {"claims": [{"id": c["id"], "description": c["description"]} for c in load_registry().values()]}
    ids = claim_ids() if args.claim == "all" else [args.claim]
    reports = [reproduce_claim(c).to_dict() for c in ids]
    result = {"claims": reports, "passed": all(r["passed"] for r in reports)}
    if not result["passed"]:
        raise _Failed(result)
    return result


def cmd_atlas(args) -> dict:
    from .atlas import _stored_names, atlas_dir, catalogue, load_record

    if args.op == "list":
        return {"atlas_dir": str(atlas_dir()), "groups": catalogue(check_simple=args.check_simple)}
    names = args.names or _stored_names()
    rows = []
    ok = True
    for name in names:
        path = Path(name) if os.path.exists(name) else atlas_dir() / f"{name}.grp"
        try:
            rec, g = load_record(path)
            rows.append({"name": rec.name, "claimed_order": str(rec.claimed_order), "verified": True})
        except CGTError as exc:
            ok = False
            rows.append({"name": name, "verified": False, "error": f"{type(exc).__name__}: {exc}"})
    result = {"records": rows, "passed": ok}
    if not ok:
        raise _Failed(result)
    return result


# ---------------------------------------------------------------------------
# parser and output


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--output", "-o", help="write the report here instead of stdout")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", type=int, default=None, help="node or factoring budget")
    common.add_argument("--workers", type=int, default=1, help="worker count (results do not depend on it)")

    p = argparse.ArgumentParser(prog="cgtkit", description="permutation groups and coset graphs of prime valency")
    p.add_argument("--version", action="version", version=f"cgtkit {__version__}")
    areas = p.add_subparsers(dest="area", required=True)

    nt = areas.add_parser("numth", help="number-theoretic side conditions").add_subparsers(dest="op", required=True)
    s = nt.add_parser("phi", parents=[common], help="Phi_m(q) and its primitive part")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--q", type=int, required=True)
    s = nt.add_parser("zsig", parents=[common], help="scan for Phi*_m(q) = 1")
    s.add_argument("--max-m", type=int, default=20)
    s.add_argument("--max-q", type=int, default=32)
    s = nt.add_parser("lemma-r", parents=[common], help="consequences of (q^d-1)/(q-1) being prime")
    s.add_argument("--q", type=int)
    s.add_argument("--d", type=int, default=None)
    s.add_argument("--max-d", type=int, default=13)
    s.add_argument("--max-q", type=int, default=64)
    s = nt.add_parser("ppart", parents=[common], help="largest power of p dividing n")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--p", type=int, required=True)
    s = nt.add_parser("prime-power", parents=[common], help="write q as p^f")
    s.add_argument("--q", type=int, required=True)

    t1 = areas.add_parser("table1", help="exceptional triples").add_subparsers(dest="op", required=True)
    s = t1.add_parser("enumerate", parents=[common])
    s.add_argument("--line", default="all", help="1..17, a row tag such as 14b, or all")
    s.add_argument("--bound", type=int, default=None, help="cap for n and for exponent products")
    s.add_argument("--p-max", type=int, default=None)
    s.add_argument("--order-max", type=int, default=None)

    gr = areas.add_parser("group", help="permutation group computations").add_subparsers(dest="op", required=True)
    for op in ("order", "stab", "orbit", "normalizer", "centralizer", "intersect"):
        s = gr.add_parser(op, parents=[common])
        s.add_argument("--file", required=True, help="record file or built-in name such as M12 or PSL2:q=11")
        if op in ("stab", "orbit"):
            s.add_argument("--point", type=int, required=True, help="1-based point")
        if op in ("normalizer", "centralizer", "intersect"):
            s.add_argument("--gen", action="append", default=[], help="subgroup generator in cycle notation")
            s.add_argument("--sub-file", help="subgroup as a record file or built-in name")
        if op == "centralizer":
            s.add_argument("--elem", help="a single permutation instead of a subgroup")

    gp = areas.add_parser("graph", help="coset graphs").add_subparsers(dest="op", required=True)
    for op in ("analyze", "build", "quotient", "props"):
        s = gp.add_parser(op, parents=[common])
        s.add_argument("--group", required=op != "props")
        s.add_argument("--h", action="append", default=[], help="generator of H (repeatable)")
        s.add_argument("--h-file")
        s.add_argument("--x", required=op != "props")
        s.add_argument("--max-vertices", type=int, default=100_000)
        if op == "build":
            s.add_argument("--r", type=int, default=None, help="also run the r-part check at vertex 0")
        if op == "quotient":
            s.add_argument("--k", action="append", default=[], required=True, help="generator of K in G")
            s.add_argument("--allow-few-orbits", action="store_true")
        if op == "props":
            s.add_argument("--graph-file", help="graph JSON as written by 'graph build'")

    se = areas.add_parser("search", help="normalizer-based coset graph search").add_subparsers(dest="op", required=True)
    s = se.add_parser("remark", parents=[common])
    s.add_argument("--h-file", required=True, help="vertex stabilizer as a record file or built-in name")
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--ambient", default="A", help="A, S, or a record file / built-in name")
    s.add_argument("--mode", choices=("exhaustive", "randomized"), default="exhaustive")
    s.add_argument("--samples", type=int, default=500)
    s.add_argument("--max-hits", type=int, default=None)
    s.add_argument("--max-degree", type=int, default=24)
    s.add_argument("--target-order", type=int, default=None)

    cl = areas.add_parser("claims", help="replay registered computations").add_subparsers(dest="op", required=True)
    s = cl.add_parser("run", parents=[common])
    s.add_argument("claim", help="claim id or 'all'")
    cl.add_parser("list", parents=[common])

    at = areas.add_parser("atlas", help="stored group records").add_subparsers(dest="op", required=True)
    s = at.add_parser("list", parents=[common])
    s.add_argument("--check-simple", action="store_true")
    s = at.add_parser("verify", parents=[common])
    s.add_argument("names", nargs="*")
    return p


_COMMANDS = {
    "numth": cmd_numth,
    "table1": cmd_table1,
    "group": cmd_group,
    "graph": cmd_graph,
    "search": cmd_search,
    "claims": cmd_claims,
    "atlas": cmd_atlas,
}


def _text(value, indent: int = 0) -> list[str]:
    pad = "  " * indent
    if isinstance(value, dict):
        lines = []
        for k in sorted(value):
            v = value[k]
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
        return lines
    if isinstance(value, list):
        lines = []
        for v in value:
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}-")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(v)}")
        return lines
    return [f"{pad}{_scalar(value)}"]


def _scalar(v) -> str:
    if v is None:
        return "null"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (dict, list)):
        return "[]" if isinstance(v, list) else "{}"
    return str(v)


def render(envelope: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(envelope, indent=2, sort_keys=True) + "\n"
    return "\n".join(_text(envelope)) + "\n"


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    if getattr(args, "workers", 1) < 1:
        parser.print_usage(sys.stderr)
        print("cgtkit: error: --workers must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    if args.area == "numth" and args.op == "lemma-r" and (args.q is None) != (args.d is None):
        parser.print_usage(sys.stderr)
        print("cgtkit: error: lemma-r takes both --q and --d, or neither for a scan", file=sys.stderr)
        return EXIT_USAGE
    command = f"{args.area} {args.op}"
    envelope = {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "seed": args.seed,
        "budget": args.budget,
    }
    code = EXIT_OK
    try:
        envelope["result"] = _COMMANDS[args.area](args)
    except _Failed as failed:
        envelope["result"] = failed.result
        code = EXIT_FAIL
    except BudgetExceeded as exc:
        partial = exc.partial
        envelope["error"] = {"type": type(exc).__name__, "message": str(exc)}
        if partial is not None and hasattr(partial, "order"):
            envelope["error"]["partial_order"] = str(partial.order())
        _emit(render(envelope, args.format), args.output)
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (CGTError, OSError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(render(envelope, args.format), args.output)
    return code


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
