"""Command-line interface.

Exit codes: 0 when every check passes, 1 when a property violation was found
(the report carries a witness), 2 on usage or parse errors.

``safe-remove`` reports each guarantee separately and fails only when none of
them holds.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Any

from . import __version__
from .branch import branch_width, decomposition_to_json, search_conforming
from .catalog import MAX_GRAPH_TANGLE_V, MAX_MATROID_TANGLE_N, named_graph
from .connectivity import adheres, verify_axioms
from .errors import DomainError, ParseError
from .formats import Instance, load_instance
from .graph import SimpleGraph, VertexRemoval, removal_candidates
from .matroid import Matroid, MinorKind
from .sweeps import SUITES, run_suite
from .tangles import enumerate_tangles, first_split, is_k_entangled

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _report(args, command: str, status: str, inst: Instance | None = None, **payload: Any) -> dict:
    rep: dict[str, Any] = {"tool": "tanglekit", "version": __version__, "command": command, "status": status}
    if inst is not None:
        rep["instance"] = {
            "descriptor": inst.descriptor,
            "hash": inst.digest,
            "kind": inst.kind,
            "size": inst.system().n,
        }
    rep.update(payload)
    return rep


def _load(args) -> Instance:
    if not args.instance:
        raise UsageError("--instance is required")
    inst = load_instance(args.instance, seed=args.seed)
    n = inst.system().n
    cap = MAX_GRAPH_TANGLE_V if inst.kind == "graph" else MAX_MATROID_TANGLE_N
    if n > cap:
        if not args.force:
            raise UsageError(f"instance has {n} elements, above the cap of {cap}; pass --force to run anyway")
        print(f"warning: running above the size cap ({n} > {cap})", file=sys.stderr)
    return inst


def cmd_tangles(args) -> dict:
    inst = _load(args)
    K = inst.system()
    ts = enumerate_tangles(K, args.order)
    return _report(
        args, "tangles", "pass", inst,
        order=args.order, count=len(ts), tangles=[T.to_json(K.ground) for T in ts],
    )


def cmd_entangled(args) -> dict:
    inst = _load(args)
    K = inst.system()
    counts = {}
    for t in range(1, args.order + 1):
        counts[str(t)] = len(enumerate_tangles(K, t))
    return _report(args, "entangled", "pass", inst, order=args.order, entangled=is_k_entangled(K, args.order), tangle_counts=counts)


def cmd_branch_width(args) -> dict:
    inst = _load(args)
    K = inst.system()
    bw = branch_width(K)
    D = search_conforming(K, [1 << i for i in range(K.n)], bw)
    return _report(args, "branch-width", "pass", inst, branch_width=bw, decomposition=decomposition_to_json(D, K))


def cmd_pivot(args) -> dict:
    try:
        G = load_instance(args.graph).obj if ":" in args.graph else named_graph(args.graph)
    except DomainError as exc:
        raise ParseError(str(exc)) from exc
    if not isinstance(G, SimpleGraph):
        raise UsageError("pivot needs a graph")
    H = G.pivot(args.u, args.v)
    labels = H.vertices.labels
    sep = "" if all(len(x) == 1 for x in labels) else "-"
    edges = [f"{labels[a]}{sep}{labels[b]}" for a, b in H.edges()]
    return _report(args, "pivot", "pass", None, graph=args.graph, pivot=[args.u, args.v], edges=edges)


def _split_json(K, K0) -> dict:
    split = first_split(K, K0)
    if split is None:
        return {"split_free": True}
    return {
        "split_free": False,
        "witness": {
            "order": split.order,
            "tangle": split.tangle.to_json(K.ground),
            "parts": [T.to_json(K0.ground) for T in split.parts],
        },
    }


def _adherence_json(K0, K) -> dict:
    a = adheres(K0, K)
    out: dict[str, Any] = {"adheres": a.holds}
    if a.witness is not None:
        out["witness"] = [K0.ground.to_bits(a.witness[0]), K0.ground.to_bits(a.witness[1])]
    return out


def cmd_safe_remove(args) -> dict:
    inst = _load(args)
    obj = inst.obj
    K = inst.system()
    if isinstance(obj, Matroid):
        if args.edge is not None:
            raise UsageError("--edge only applies to graph instances")
        e = obj.ground.check_index(args.target)
        options = {
            MinorKind.DELETE.value: obj.delete(e).system(),
            MinorKind.CONTRACT.value: obj.contract(e).system(),
        }
        results = {name: {**_adherence_json(K0, K), **_split_json(K, K0)} for name, K0 in options.items()}
        adh = [name for name, r in results.items() if r["adheres"]]
        free = [name for name, r in results.items() if r["split_free"]]
        verdict = {2: "Both", 0: "None"}.get(len(adh), "DeleteOnly" if adh == ["delete"] else "ContractOnly")
        guarantees = {"some_removal_adheres": bool(adh), "some_removal_split_free": bool(free)}
        status = "pass" if any(guarantees.values()) else "fail"
        return _report(args, "safe-remove", status, inst, element=e, verdict=verdict, options=results, guarantees=guarantees)
    if isinstance(obj, SimpleGraph):
        if args.edge is None:
            raise UsageError("graph instances need --edge u,v incident with the vertex")
        v = obj.vertices.check_index(args.target)
        a, b = args.edge
        if v not in (a, b):
            raise UsageError(f"edge ({a}, {b}) is not incident with vertex {v}")
        u = b if a == v else a
        cands = removal_candidates(obj, v, u)
        results = {kind.value: {**_adherence_json(H.system(), K), **_split_json(K, H.system())} for kind, H in cands.items()}
        two = [VertexRemoval.DELETE.value, VertexRemoval.PIVOT_DELETE.value]
        guarantees = {
            "pm_bixby_some_adheres": any(results[k]["adheres"] for k in two),
            "pm_some_split_free": any(results[k]["split_free"] for k in two),
            "mm_two_split_free": sum(r["split_free"] for r in results.values()) >= 2,
        }
        verdict = sorted(k for k in two if results[k]["adheres"])
        status = "pass" if any(guarantees.values()) else "fail"
        return _report(
            args, "safe-remove", status, inst,
            vertex=v, edge=[min(u, v), max(u, v)], verdict=verdict, options=results, guarantees=guarantees,
        )
    raise UsageError("safe-remove needs a matroid or graph instance")


def cmd_axioms(args) -> dict:
    inst = _load(args)
    bad = verify_axioms(inst.system())
    return _report(
        args, "axioms", "pass" if not bad else "fail", inst,
        violations=[{"kind": v.kind, "sets": [inst.system().ground.to_bits(s) for s in v.sets], "detail": v.detail} for v in bad[:25]],
    )


def cmd_verify(args) -> dict:
    if args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}")
    res = run_suite(args.suite, max_n=args.max_n, max_v=args.max_v)
    body = res.to_json(timing=args.timing)
    status = body.pop("status")
    body.pop("suite")
    return _report(args, "verify", status, None, suite=args.suite, max_n=args.max_n, max_v=args.max_v, **body)


def _edge(text: str) -> tuple[int, int]:
    try:
        a, b = (int(x) for x in text.replace("-", ",").split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an edge 'u,v', got {text!r}") from None
    return a, b


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "text"], default="text")
    common.add_argument("--force", action="store_true", help="run above the default size caps")
    common.add_argument("--seed", type=int, default=None, help="seed for random instances without one")
    common.add_argument("--timing", action="store_true", help="add wall-clock timing (breaks byte-identical output)")

    p = argparse.ArgumentParser(prog="tanglekit", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"tanglekit {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def with_instance(name, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.add_argument("--instance", required=True, help="e.g. uniform:2,4, fano, graph:C5, graphic:K4, file:path")
        return sp

    sp = with_instance("tangles", "list all tangles of one order")
    sp.add_argument("-k", "--order", type=int, required=True)
    sp.set_defaults(func=cmd_tangles)

    sp = with_instance("entangled", "is the system k-entangled")
    sp.add_argument("-k", "--order", type=int, required=True)
    sp.set_defaults(func=cmd_entangled)

    sp = with_instance("branch-width", "exact branch-width with a witness decomposition")
    sp.set_defaults(func=cmd_branch_width)

    sp = with_instance("axioms", "check symmetry and submodularity exhaustively")
    sp.set_defaults(func=cmd_axioms)

    sp = with_instance("safe-remove", "which removals of an element or vertex keep tangles unsplit")
    sp.add_argument("target", type=int, help="element (matroid) or vertex (graph) index")
    sp.add_argument("--edge", type=_edge, default=None, help="graphs: an edge u,v incident with the vertex")
    sp.set_defaults(func=cmd_safe_remove)

    sp = sub.add_parser("pivot", parents=[common], help="pivot a graph on an edge")
    sp.add_argument("--graph", required=True, help="named graph (path3, C5, K4, ...) or graph:/file: descriptor")
    sp.add_argument("u", type=int)
    sp.add_argument("v", type=int)
    sp.set_defaults(func=cmd_pivot)

    sp = sub.add_parser("verify", parents=[common], help="run a property sweep over the catalog")
    sp.add_argument("suite", help=", ".join(SUITES))
    sp.add_argument("--max-n", type=int, default=None)
    sp.add_argument("--max-v", type=int, default=None)
    sp.set_defaults(func=cmd_verify)
    return p


def _text(rep: dict) -> str:
    lines = [f"{rep['command']}: {rep['status']}"]
    for key, val in rep.items():
        if key in ("command", "status", "tool", "version"):
            continue
        if isinstance(val, (dict, list)):
            val = json.dumps(val, sort_keys=True)
        lines.append(f"  {key}: {val}")
    return "\n".join(lines)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    start = time.perf_counter()
    try:
        rep = args.func(args)
    except (UsageError, ParseError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        if args.format == "json":
            rep = _report(args, args.command, "error", None, error=str(exc))
            print(json.dumps(rep, sort_keys=True, indent=2))
        return EXIT_USAGE
    if args.timing:
        rep["elapsed_s"] = round(time.perf_counter() - start, 3)
    if args.format == "json":
        print(json.dumps(rep, sort_keys=True, indent=2))
    else:
        print(_text(rep))
    return EXIT_OK if rep["status"] == "pass" else EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
