"""Command-line interface.

Subcommands cover checking (check-numbering, check-bijection),
construction (number, cb-pair), the double-star criterion
(cb-criterion), backtracking search (search), desk-scale surveys
(sweep, audit-symmetry), and tree generation (enumerate).

Exit codes are a stable contract:

* 0: success / the property holds
* 1: a verified violation or verified nonexistence
* 2: input error (unreadable or malformed files, bad arguments)
* 3: method inapplicable or search budget exhausted

Reports are JSON documents tagged with ``"schema": "tree-amity/1"``.
Every embedded witness is stored in the same text formats the parsers
accept, together with the input trees, so a report can be re-loaded and
re-verified without the original files.  The ``--jobs`` flag controls
worker-pool width for sweeps and audits; the TREE_AMITY_JOBS
environment variable overrides it when set.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from pathlib import Path
from typing import Sequence

from .amity import (
    HookViolation,
    NumberingPairViolation,
    check_friendly_bijection,
    check_friendly_numbering,
    format_bijection,
    format_numbering,
    parse_bijection,
    parse_numbering,
)
from .cb import bijection_from_pair, find_subtree_pair, make_cb, small_n_pair
from .enumeration import enumerate_free_trees
from .errors import PreconditionFailed, TreeAmityError
from .parity import number_parity_center
from .search import (
    BUDGET_EXCEEDED,
    FOUND,
    PROVED_NONE,
    SearchBudget,
    search_bijection,
    search_numbering,
    sweep_cb_universal,
    sweep_hypothesis,
    sweep_question_path,
    symmetry_audit,
)
from .trees import Tree, format_tree, parse_tree_labeled
from .trunk import number_by_trunk

SCHEMA = "tree-amity/1"

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INPUT = 2
EXIT_INAPPLICABLE = 3

__all__ = ["main", "main_entry", "build_parser", "SCHEMA"]


# -- small helpers ------------------------------------------------------------


def _read_file(path: str) -> tuple[str, dict]:
    data = Path(path).read_bytes()
    text = data.decode("utf-8")
    entry = {
        "path": path,
        "sha256": hashlib.sha256(data).hexdigest(),
        "text": text,
    }
    return text, entry


def _load_tree(path: str):
    text, entry = _read_file(path)
    tree, labels = parse_tree_labeled(text)
    return tree, labels, entry


def _resolve_jobs(flag: int | None) -> int:
    env = os.environ.get("TREE_AMITY_JOBS")
    if env is not None:
        jobs = int(env)
    elif flag is not None:
        jobs = flag
    else:
        jobs = os.cpu_count() or 1
    if jobs < 1:
        raise ValueError(f"jobs must be at least 1, got {jobs}")
    return jobs


def _budget_from(args, default_exhaustive: bool = False) -> SearchBudget:
    exhaustive = bool(getattr(args, "exhaustive", False))
    max_nodes = getattr(args, "max_nodes", None)
    time_limit = getattr(args, "time_limit", None)
    if exhaustive:
        return SearchBudget(exhaustive=True)
    if max_nodes is None and time_limit is None and default_exhaustive:
        return SearchBudget(exhaustive=True)
    kwargs = {}
    if max_nodes is not None:
        kwargs["max_nodes"] = max_nodes
    if time_limit is not None:
        kwargs["time_limit"] = time_limit
    return SearchBudget(**kwargs)


def _write_report(args, command: str, inputs: list[dict], payload: dict) -> None:
    path = getattr(args, "report", None)
    if not path:
        return
    doc = {
        "schema": SCHEMA,
        "command": command,
        "seed": args.seed,
        "inputs": inputs,
        **payload,
    }
    Path(path).write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")


def _edge_label(tree: Tree, labels, eid: int) -> list[int]:
    u, v = tree.edges[eid]
    return [labels[u], labels[v]]


def _numbering_violation_dict(flaw: NumberingPairViolation, tree: Tree, labels) -> dict:
    return {
        "kind": "numbering-pair",
        "k": flaw.k,
        "j": flaw.j,
        "partner": flaw.partner(),
        "s": flaw.s,
        "path_edges": [_edge_label(tree, labels, e) for e in flaw.path_edges],
        "path_numbers": list(flaw.path_numbers),
    }


def _hook_violation_dict(flaw: HookViolation, source: Tree, s_labels, target: Tree, t_labels) -> dict:
    return {
        "kind": "hook",
        "p_vertex": s_labels[flaw.p_vertex],
        "q_vertex": s_labels[flaw.q_vertex],
        "hooking": flaw.hooking,
        "edge_pair": [_edge_label(target, t_labels, e) for e in flaw.edge_pair],
        "crossing": flaw.crossing,
    }


# -- check commands -----------------------------------------------------------


def cmd_check_numbering(args) -> int:
    tree, labels, tree_entry = _load_tree(args.tree)
    text, num_entry = _read_file(args.numbering)
    nu = parse_numbering(text, tree, labels)
    started = time.monotonic()
    flaw = check_friendly_numbering(nu)
    elapsed = time.monotonic() - started
    inputs = [tree_entry, num_entry]
    if flaw is None:
        print("ok: numbering is friendly")
        _write_report(args, "check-numbering", inputs, {
            "outcome": "ok",
            "witness": None,
            "elapsed": elapsed,
        })
        return EXIT_OK
    print(
        f"violation at consecutive pair k={flaw.k}: number {flaw.j} lies on "
        f"the path between edges {flaw.k} and {flaw.k + 1} but its partner "
        f"{flaw.partner()} does not (path numbers: {list(flaw.path_numbers)})"
    )
    _write_report(args, "check-numbering", inputs, {
        "outcome": "violation",
        "witness": _numbering_violation_dict(flaw, tree, labels),
        "elapsed": elapsed,
    })
    return EXIT_VIOLATION


def cmd_check_bijection(args) -> int:
    source, s_labels, src_entry = _load_tree(args.source)
    target, t_labels, dst_entry = _load_tree(args.target)
    text, bij_entry = _read_file(args.bijection)
    bj = parse_bijection(text, source, target, s_labels, t_labels)
    started = time.monotonic()
    flaw = check_friendly_bijection(bj)
    elapsed = time.monotonic() - started
    inputs = [src_entry, dst_entry, bij_entry]
    if flaw is None:
        print("ok: bijection is friendly")
        _write_report(args, "check-bijection", inputs, {
            "outcome": "ok",
            "witness": None,
            "elapsed": elapsed,
        })
        return EXIT_OK
    side = flaw.p_vertex if flaw.hooking == "p" else flaw.q_vertex
    other = flaw.q_vertex if flaw.hooking == "p" else flaw.p_vertex
    pair = [_edge_label(target, t_labels, e) for e in flaw.edge_pair]
    print(
        f"violation at vertex pair ({s_labels[flaw.p_vertex]}, "
        f"{s_labels[flaw.q_vertex]}): the image of the coboundary of "
        f"{s_labels[side]} hooks onto the image for {s_labels[other]} "
        f"(edges {pair[0]} and {pair[1]} cross it {flaw.crossing} times)"
    )
    _write_report(args, "check-bijection", inputs, {
        "outcome": "violation",
        "witness": _hook_violation_dict(flaw, source, s_labels, target, t_labels),
        "elapsed": elapsed,
    })
    return EXIT_VIOLATION


# -- construction commands ----------------------------------------------------


def _try_construct(tree: Tree, method: str):
    try:
        if method == "trunk":
            return number_by_trunk(tree)
        if method == "parity-center":
            return number_parity_center(tree)
    except PreconditionFailed:
        return None
    return None


def cmd_number(args) -> int:
    tree, labels, tree_entry = _load_tree(args.tree)
    budget = _budget_from(args)
    started = time.monotonic()
    tried = []
    nu = None
    used = None
    search_status = None
    nodes = 0
    methods = [args.method] if args.method != "auto" else [
        "trunk", "parity-center", "search",
    ]
    for method in methods:
        if method == "search":
            res = search_numbering(tree, budget)
            tried.append(f"search:{res.status}")
            nodes = res.nodes
            search_status = res.status
            if res.status == FOUND:
                nu = res.witness
                used = "search"
            break
        got = _try_construct(tree, method)
        tried.append(f"{method}:{'ok' if got is not None else 'inapplicable'}")
        if got is not None:
            nu = got
            used = method
            break
    elapsed = time.monotonic() - started
    inputs = [tree_entry]
    if nu is not None:
        flaw = check_friendly_numbering(nu)
        assert flaw is None, f"constructed numbering failed verification: {flaw}"
        sys.stdout.write(format_numbering(nu, labels))
        _write_report(args, "number", inputs, {
            "outcome": "ok",
            "method": used,
            "tried": tried,
            "witness": format_numbering(nu, labels),
            "nodes": nodes,
            "elapsed": elapsed,
        })
        return EXIT_OK
    if search_status == PROVED_NONE:
        print(
            f"verified: no friendly numbering exists ({nodes} nodes searched)",
            file=sys.stderr,
        )
        outcome, code = "none", EXIT_VIOLATION
    elif search_status == BUDGET_EXCEEDED:
        print(
            f"search budget exhausted after {nodes} nodes", file=sys.stderr
        )
        outcome, code = "budget", EXIT_INAPPLICABLE
    else:
        print(f"no applicable method (tried: {', '.join(tried)})", file=sys.stderr)
        outcome, code = "inapplicable", EXIT_INAPPLICABLE
    _write_report(args, "number", inputs, {
        "outcome": outcome,
        "method": None,
        "tried": tried,
        "witness": None,
        "nodes": nodes,
        "elapsed": elapsed,
    })
    return code


def _print_pair(tree: Tree, labels, pair) -> None:
    u, v = tree.edges[pair.shared]
    print(f"shared edge: {labels[u]} {labels[v]}")
    for name, part in (("part 1", pair.e1), ("part 2", pair.e2)):
        rendered = " ".join(
            f"({labels[tree.edges[e][0]]},{labels[tree.edges[e][1]]})"
            for e in sorted(part)
        )
        print(f"{name} ({len(part)} edges): {rendered}")


def _pair_dict(tree: Tree, labels, pair) -> dict:
    return {
        "shared": _edge_label(tree, labels, pair.shared),
        "e1": [_edge_label(tree, labels, e) for e in sorted(pair.e1)],
        "e2": [_edge_label(tree, labels, e) for e in sorted(pair.e2)],
    }


def cmd_cb_criterion(args) -> int:
    tree, labels, tree_entry = _load_tree(args.tree)
    n1, n2 = args.n1, args.n2
    started = time.monotonic()
    inputs = [tree_entry]
    needed = n1 + n2 - 1
    if tree.m != needed:
        print(
            f"not friendly: tree has {tree.m} edges, the ({n1},{n2}) double "
            f"star needs {needed}"
        )
        _write_report(args, "cb-criterion", inputs, {
            "outcome": "size-mismatch",
            "witness": None,
            "elapsed": time.monotonic() - started,
        })
        return EXIT_VIOLATION
    pair = find_subtree_pair(tree, n1, n2)
    elapsed = time.monotonic() - started
    if pair is None:
        print(
            f"not friendly: no connected edge subtrees of sizes {n1} and "
            f"{n2} sharing exactly one edge"
        )
        _write_report(args, "cb-criterion", inputs, {
            "outcome": "no-pair",
            "witness": None,
            "elapsed": elapsed,
        })
        return EXIT_VIOLATION
    cb = make_cb(n1, n2)
    bj = bijection_from_pair(tree, pair, cb)
    flaw = check_friendly_bijection(bj)
    assert flaw is None, f"pair-induced bijection failed verification: {flaw}"
    print(f"friendly to the ({n1},{n2}) double star")
    _print_pair(tree, labels, pair)
    sys.stdout.write(format_bijection(bj, target_labels=labels))
    _write_report(args, "cb-criterion", inputs, {
        "outcome": "ok",
        "pair": _pair_dict(tree, labels, pair),
        "witness": format_bijection(bj, target_labels=labels),
        "double_star": format_tree(cb.tree),
        "elapsed": elapsed,
    })
    return EXIT_OK


def cmd_cb_pair(args) -> int:
    tree, labels, tree_entry = _load_tree(args.tree)
    started = time.monotonic()
    pair = small_n_pair(tree, args.n)
    cb = make_cb(tree.m - args.n + 1, args.n)
    bj = bijection_from_pair(tree, pair, cb)
    flaw = check_friendly_bijection(bj)
    assert flaw is None, f"pair-induced bijection failed verification: {flaw}"
    elapsed = time.monotonic() - started
    _print_pair(tree, labels, pair)
    _write_report(args, "cb-pair", [tree_entry], {
        "outcome": "ok",
        "pair": _pair_dict(tree, labels, pair),
        "witness": format_bijection(bj, target_labels=labels),
        "double_star": format_tree(cb.tree),
        "elapsed": elapsed,
    })
    return EXIT_OK


# -- search and surveys -------------------------------------------------------


def cmd_search(args) -> int:
    tree, labels, tree_entry = _load_tree(args.tree)
    budget = _budget_from(args)
    inputs = [tree_entry]
    if args.target is not None:
        target, t_labels, target_entry = _load_tree(args.target)
        inputs.append(target_entry)
        res = search_bijection(tree, target, budget)
        witness_text = (
            format_bijection(res.witness, labels, t_labels)
            if res.witness is not None
            else None
        )
        what = "bijection"
    else:
        res = search_numbering(tree, budget)
        witness_text = (
            format_numbering(res.witness, labels) if res.witness is not None else None
        )
        what = "numbering"
    _write_report(args, "search", inputs, {
        "outcome": res.status,
        "what": what,
        "witness": witness_text,
        "nodes": res.nodes,
        "elapsed": res.elapsed,
    })
    if res.status == FOUND:
        sys.stdout.write(witness_text)
        return EXIT_OK
    if res.status == PROVED_NONE:
        print(
            f"verified: no friendly {what} exists ({res.nodes} nodes searched)",
            file=sys.stderr,
        )
        return EXIT_VIOLATION
    print(f"search budget exhausted after {res.nodes} nodes", file=sys.stderr)
    return EXIT_INAPPLICABLE


def _emit_json(args, doc: dict) -> None:
    text = json.dumps(doc, indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_sweep(args) -> int:
    jobs = _resolve_jobs(args.jobs)
    budget = _budget_from(args, default_exhaustive=True)
    if args.kind == "cb":
        if args.n1 is None or args.n2 is None:
            raise ValueError("--kind cb requires --n1 and --n2")
        report = sweep_cb_universal(
            args.n1, args.n2, budget=budget, jobs=jobs, confirm=args.confirm
        )
    else:
        if args.max_edges is None:
            raise ValueError(f"--kind {args.kind} requires -m")
        if args.kind == "question-path":
            report = sweep_question_path(args.max_edges, budget=budget, jobs=jobs)
        else:
            report = sweep_hypothesis(
                args.max_edges, args.kind, budget=budget, jobs=jobs
            )
    doc = {"schema": SCHEMA, "command": "sweep", "seed": args.seed}
    doc.update(report.to_json_dict())
    _emit_json(args, doc)
    counts = ", ".join(f"{k}={v}" for k, v in report.counts().items()) or "empty"
    findings = len(report.findings)
    print(
        f"sweep {report.kind}: {len(report.records)} trees ({counts}); "
        f"{findings} finding(s)",
        file=sys.stderr,
    )
    return EXIT_OK


def cmd_audit_symmetry(args) -> int:
    jobs = _resolve_jobs(args.jobs)
    report = symmetry_audit(args.max_edges, jobs=jobs)
    doc = {"schema": SCHEMA, "command": "audit-symmetry", "seed": args.seed}
    doc.update(report.to_json_dict())
    _emit_json(args, doc)
    print(
        f"audit: {len(report.records)} pairs, {report.total_friendly} friendly "
        f"bijections, {report.total_failures} inverse failures",
        file=sys.stderr,
    )
    return EXIT_OK if report.total_failures == 0 else EXIT_VIOLATION


def cmd_enumerate(args) -> int:
    first = True
    for tree in enumerate_free_trees(args.max_edges):
        if not first:
            sys.stdout.write("\n")
        sys.stdout.write(format_tree(tree))
        first = False
    return EXIT_OK


# -- parser -------------------------------------------------------------------


def _add_budget_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--max-nodes", type=int, default=None,
                     help="node budget for backtracking (default 10^7)")
    sub.add_argument("--time-limit", type=float, default=None,
                     help="wall-clock budget in seconds (default 60)")
    sub.add_argument("--exhaustive", action="store_true",
                     help="ignore budgets and run to completion")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tree-amity",
        description=(
            "Friendly numberings and friendly bijections on trees: "
            "checkers, constructions, searches, and surveys."
        ),
    )
    parser.add_argument("--seed", type=int, default=0,
                        help="seed recorded in reports and used by any "
                             "randomized sampling (default 0)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-numbering",
                       help="verify a friendly numbering against its tree")
    p.add_argument("tree", help="tree file ('u v' edge lines)")
    p.add_argument("numbering", help="numbering file ('u v k' lines)")
    p.add_argument("--report", help="write a JSON run report here")
    p.set_defaults(func=cmd_check_numbering)

    p = sub.add_parser("check-bijection",
                       help="verify a friendly bijection between two trees")
    p.add_argument("source", help="source tree file")
    p.add_argument("target", help="target tree file")
    p.add_argument("bijection", help="bijection file ('u1 v1 -> u2 v2' lines)")
    p.add_argument("--report", help="write a JSON run report here")
    p.set_defaults(func=cmd_check_bijection)

    p = sub.add_parser("number", help="construct or search a friendly numbering")
    p.add_argument("tree", help="tree file")
    p.add_argument("--method", choices=["trunk", "parity-center", "auto", "search"],
                   default="auto",
                   help="construction to use; auto tries trunk, then "
                        "parity-center, then search")
    _add_budget_flags(p)
    p.add_argument("--report", help="write a JSON run report here")
    p.set_defaults(func=cmd_number)

    p = sub.add_parser("cb-criterion",
                       help="decide friendliness to a double star by the "
                            "subtree-pair criterion")
    p.add_argument("--n1", type=int, required=True, help="edges at one center")
    p.add_argument("--n2", type=int, required=True, help="edges at the other")
    p.add_argument("tree", help="tree file")
    p.add_argument("--report", help="write a JSON run report here")
    p.set_defaults(func=cmd_cb_criterion)

    p = sub.add_parser("cb-pair",
                       help="construct a subtree pair with a small part "
                            "of size n (always exists for n in 2..4)")
    p.add_argument("--n", type=int, choices=[2, 3, 4], required=True,
                   help="size of the small part")
    p.add_argument("tree", help="tree file")
    p.add_argument("--report", help="write a JSON run report here")
    p.set_defaults(func=cmd_cb_pair)

    p = sub.add_parser("search",
                       help="backtracking search for a friendly numbering "
                            "(one tree) or bijection (two trees)")
    p.add_argument("tree", help="tree file")
    p.add_argument("target", nargs="?", default=None,
                   help="target tree file; if given, search a bijection "
                        "from the first tree onto this one")
    _add_budget_flags(p)
    p.add_argument("--report", help="write a JSON run report here")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("sweep", help="survey all trees of bounded size")
    p.add_argument("--kind", choices=["question-path", "d4", "odd", "cb"],
                   required=True,
                   help="question-path: numberability of every tree; "
                        "d4: diameter-at-most-4 family; odd: all-odd-degree "
                        "family with an equidistant vertex; cb: double-star "
                        "criterion over all trees of the matching size")
    p.add_argument("-m", "--max-edges", type=int, default=None,
                   help="size bound in edges (required unless --kind cb)")
    p.add_argument("--n1", type=int, default=None, help="double-star part 1")
    p.add_argument("--n2", type=int, default=None, help="double-star part 2")
    p.add_argument("--confirm", action="store_true",
                   help="for --kind cb: double-check criterion failures by "
                        "exhaustive bijection search")
    _add_budget_flags(p)
    p.add_argument("--jobs", type=int, default=None,
                   help="worker processes (default: all cores; "
                        "TREE_AMITY_JOBS overrides)")
    p.add_argument("--out", help="write the JSON report here instead of stdout")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("audit-symmetry",
                       help="check all bijections between same-size trees "
                            "against their inverses")
    p.add_argument("-m", "--max-edges", type=int, required=True,
                   help="size bound in edges (factorial cost; 5 or 6 is "
                        "a reasonable maximum)")
    p.add_argument("--jobs", type=int, default=None,
                   help="worker processes (default: all cores; "
                        "TREE_AMITY_JOBS overrides)")
    p.add_argument("--out", help="write the JSON report here instead of stdout")
    p.set_defaults(func=cmd_audit_symmetry)

    p = sub.add_parser("enumerate",
                       help="emit one representative per isomorphism class "
                            "of trees with the given edge count")
    p.add_argument("-m", "--max-edges", type=int, required=True,
                   help="edge count")
    p.set_defaults(func=cmd_enumerate)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (TreeAmityError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main_entry() -> None:
    raise SystemExit(main(sys.argv[1:]))
