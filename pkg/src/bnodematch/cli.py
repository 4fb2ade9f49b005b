"""Command-line entry point.

Exit codes: 0 success (or "yes" for decisions), 1 "no" for decisions,
2 usage error, 3 I/O or parse error.  Diagnostics go to stderr;
machine-readable artifacts go to files or stdout only.  ``-`` names
stdin/stdout where a graph or delta is read or written.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
import time
from importlib.metadata import PackageNotFoundError, version as pkg_version
from typing import Optional

from . import ntriples
from .decision import SearchBudgetExceeded, entails, find_equivalence_bijection
from .delta import (
    SOURCE_LABELS,
    TARGET_LABELS,
    apply_delta,
    format_delta,
    load_delta,
    mapped_delta,
    parse_delta,
    plain_delta,
)
from .equivalence import EquivalenceRelation, load_sameas_pairs
from .generator import GenSpec, generate_pair, write_pair
from .integration import integrate_all, majority_accept
from .matcher import (
    MatcherConfig,
    format_mapping,
    mapping_cost,
    match_bnodes,
    parse_mapping,
)
from .model import Graph
from .ntriples import ParseError
from .store import StoreError, VersionStore


def _version() -> str:
    try:
        return pkg_version("bnodematch")
    except PackageNotFoundError:  # running from a source tree
        return "0.1.0"


def _read_graph(path: str) -> Graph:
    if path == "-":
        return ntriples.parse_ntriples(sys.stdin.read(), "stdin").graph
    return ntriples.load_graph(path)


def _write_text(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _guard_output(out: Optional[str], inputs: list[str]) -> None:
    if out is None or out == "-":
        return
    resolved = {os.path.realpath(p) for p in inputs if p != "-"}
    if os.path.realpath(out) in resolved:
        raise UsageError(f"refusing to overwrite input file {out!r}")


class UsageError(ValueError):
    pass


def _build_equiv(arg: str, graphs: list[Graph]) -> EquivalenceRelation:
    if arg == "exact":
        return EquivalenceRelation.for_graphs("exact", graphs)
    if arg == "suffix":
        return EquivalenceRelation.for_graphs("suffix", graphs)
    if arg.startswith("sameas:"):
        pairs = load_sameas_pairs(arg.split(":", 1)[1])
        return EquivalenceRelation.for_graphs("sameas", graphs, pairs)
    raise UsageError(
        f"bad --equiv value {arg!r}; expected exact, suffix, or sameas:<file>"
    )


def _equiv_policy(arg: str) -> tuple[str, list]:
    if arg in ("exact", "suffix"):
        return arg, []
    if arg.startswith("sameas:"):
        return "sameas", load_sameas_pairs(arg.split(":", 1)[1])
    raise UsageError(
        f"bad --equiv value {arg!r}; expected exact, suffix, or sameas:<file>"
    )


# -- subcommands ------------------------------------------------------------


def cmd_diff(args) -> int:
    g1, g2 = _read_graph(args.graph1), _read_graph(args.graph2)
    _guard_output(args.output, [args.graph1, args.graph2])
    if args.plain:
        script = plain_delta(g1, g2)
    else:
        equiv = _build_equiv(args.equiv, [g1, g2])
        mapping = match_bnodes(g1, g2, equiv, MatcherConfig(exact_threshold=args.exact_threshold))
        direction = SOURCE_LABELS if args.labels == "source" else TARGET_LABELS
        script = mapped_delta(g1, g2, mapping, direction)
    _write_text(args.output, format_delta(script))
    print(f"{script.size} operations", file=sys.stderr)
    return 0


def cmd_patch(args) -> int:
    g = _read_graph(args.graph)
    _guard_output(args.output, [args.graph, args.delta])
    if args.delta == "-":
        script = parse_delta(sys.stdin.read())
    else:
        script = load_delta(args.delta)
    result, warnings = apply_delta(g, script)
    for w in warnings:
        print(f"warning: {w}", file=sys.stderr)
    _write_text(args.output, ntriples.serialize_ntriples(result))
    return 0


def cmd_match(args) -> int:
    g1, g2 = _read_graph(args.graph1), _read_graph(args.graph2)
    _guard_output(args.output, [args.graph1, args.graph2])
    equiv = _build_equiv(args.equiv, [g1, g2])
    config = MatcherConfig(exact_threshold=args.exact_threshold)
    mapping = match_bnodes(g1, g2, equiv, config)
    _write_text(args.output, format_mapping(mapping))
    return 0


def cmd_equiv(args) -> int:
    g1, g2 = _read_graph(args.graph1), _read_graph(args.graph2)
    witness = find_equivalence_bijection(g1, g2)
    if witness is None:
        print("not equivalent", file=sys.stderr)
        return 1
    for a, b in sorted(witness.items(), key=lambda p: (p[0].value, p[1].value)):
        print(f"M {a.value} {b.value}")
    return 0


def cmd_entail(args) -> int:
    g1, g2 = _read_graph(args.graph1), _read_graph(args.graph2)
    witness = entails(g1, g2)
    if witness is None:
        print("no entailment", file=sys.stderr)
        return 1
    for b, x in sorted(witness.assignments.items(), key=lambda p: p[0].value):
        print(f"M {b.value} {ntriples.render_term(x)}")
    return 0


def cmd_integrate(args) -> int:
    graphs = [_read_graph(p) for p in args.graphs]
    _guard_output(args.output, args.graphs)
    policy, pairs = _equiv_policy(args.equiv)
    accept = majority_accept
    if args.review:
        def accept(left, right, dist, ls, rs):  # noqa: ANN001 - cli glue
            prompt = f"link {left.value} <-> {right.value} (dist={dist})? [y/N] "
            print(prompt, end="", file=sys.stderr, flush=True)
            answer = sys.stdin.readline().strip().lower()
            return answer in ("y", "yes")
    result = integrate_all(
        graphs, policy, pairs, unify=args.unify, accept=accept
    )
    _write_text(args.output, ntriples.serialize_ntriples(result.merged))
    for a, b in sorted(result.bnode_links, key=lambda p: (p[0].value, p[1].value)):
        print(f"bnode link: {a.value} {b.value}", file=sys.stderr)
    for a, b in sorted(result.uri_links, key=lambda p: (p[0].value, p[1].value)):
        print(f"uri link: <{a.value}> <{b.value}>", file=sys.stderr)
    for tag in sorted(result.report):
        counts = result.report[tag]
        print(
            f"{tag}: {counts['matched']} matched, {counts['unmatched']} unmatched",
            file=sys.stderr,
        )
    return 0


def cmd_vs(args) -> int:
    if args.vs_command == "init":
        VersionStore.init(args.repo, _read_graph(args.graph))
        return 0
    store = VersionStore(args.repo)
    if args.vs_command == "commit":
        script = store.commit(_read_graph(args.graph))
        print(f"version {store.version_count}: {script.size} operations", file=sys.stderr)
        return 0
    if args.vs_command == "checkout":
        g = store.checkout(args.version)
        _write_text(args.output, ntriples.serialize_ntriples(g))
        return 0
    if args.vs_command == "patch":
        script = store.sync_patch(args.frm, args.to)
        _write_text(args.output, format_delta(script))
        return 0
    raise UsageError(f"unknown vs command {args.vs_command!r}")


def cmd_gen(args) -> int:
    spec = GenSpec(
        bnode_count=args.bnodes,
        ground_triples=args.triples,
        connectivity=args.connectivity,
        mutation_ops=args.mutations,
        seed=args.seed,
    )
    pair = generate_pair(spec)
    write_pair(pair, spec, args.output)
    return 0


def cmd_bench(args) -> int:
    rows = []
    for entry in sorted(os.listdir(args.directory)):
        pair_dir = os.path.join(args.directory, entry)
        g1_path = os.path.join(pair_dir, "g1.nt")
        if not os.path.isfile(g1_path):
            continue
        g1 = ntriples.load_graph(g1_path)
        g2 = ntriples.load_graph(os.path.join(pair_dir, "g2.nt"))
        bound = ""
        truth_path = os.path.join(pair_dir, "truth.bm")
        if os.path.isfile(truth_path):
            with open(truth_path, encoding="utf-8") as fh:
                bound = mapping_cost(g1, g2, parse_mapping(fh.read()))
        for config in (MatcherConfig(), MatcherConfig(exact_threshold=0)):
            start = time.perf_counter()
            mapping = match_bnodes(g1, g2, config=config)
            elapsed = time.perf_counter() - start
            rows.append(
                {
                    "instance": entry,
                    "tier": mapping.method,
                    "cost": mapping.cost,
                    "optimum_bound": bound,
                    "wall_time_s": f"{elapsed:.6f}",
                }
            )
    out = sys.stdout if args.output in (None, "-") else open(args.output, "w", newline="")
    try:
        writer = csv.DictWriter(
            out, fieldnames=["instance", "tier", "cost", "optimum_bound", "wall_time_s"]
        )
        writer.writeheader()
        writer.writerows(rows)
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


# -- parser -----------------------------------------------------------------


def _add_equiv_flag(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--equiv",
        default="exact",
        metavar="POLICY",
        help="URI equivalence: exact, suffix, or sameas:<file> (default exact)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bnodematch",
        description="Blank-node aware diff, patch, matching, and integration for RDF graphs.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {_version()}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("diff", help="delta between two graphs")
    p.add_argument("graph1")
    p.add_argument("graph2")
    _add_equiv_flag(p)
    p.add_argument("--plain", action="store_true", help="skip bnode matching")
    p.add_argument("--labels", choices=("source", "target"), default="target",
                   help="label scope of the emitted operations (default target)")
    p.add_argument("--exact-threshold", type=int, default=7)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_diff)

    p = sub.add_parser("patch", help="apply a delta to a graph")
    p.add_argument("graph")
    p.add_argument("delta")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_patch)

    p = sub.add_parser("match", help="compute a bnode mapping")
    p.add_argument("graph1")
    p.add_argument("graph2")
    _add_equiv_flag(p)
    p.add_argument("--exact-threshold", type=int, default=7)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_match)

    p = sub.add_parser("equiv", help="test graph equivalence (exit 0 yes / 1 no)")
    p.add_argument("graph1")
    p.add_argument("graph2")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("entail", help="test whether graph1 entails graph2")
    p.add_argument("graph1")
    p.add_argument("graph2")
    p.set_defaults(func=cmd_entail)

    p = sub.add_parser("integrate", help="merge sources under a URI equivalence")
    p.add_argument("graphs", nargs="+")
    _add_equiv_flag(p)
    p.add_argument("--unify", action="store_true",
                   help="give matched bnodes one shared label instead of sameAs links")
    p.add_argument("--review", action="store_true",
                   help="confirm each candidate pair on the terminal")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_integrate)

    p = sub.add_parser("vs", help="delta-based version store")
    vs_sub = p.add_subparsers(dest="vs_command", required=True)
    q = vs_sub.add_parser("init")
    q.add_argument("repo")
    q.add_argument("graph")
    q = vs_sub.add_parser("commit")
    q.add_argument("repo")
    q.add_argument("graph")
    q = vs_sub.add_parser("checkout")
    q.add_argument("repo")
    q.add_argument("version", type=int)
    q.add_argument("-o", "--output", default=None)
    q = vs_sub.add_parser("patch")
    q.add_argument("repo")
    q.add_argument("--from", dest="frm", type=int, required=True)
    q.add_argument("--to", dest="to", type=int, required=True)
    q.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_vs)

    p = sub.add_parser("gen", help="generate a benchmark graph pair")
    p.add_argument("--bnodes", type=int, required=True)
    p.add_argument("--triples", type=int, default=0)
    p.add_argument("--connectivity", type=float, default=0.0)
    p.add_argument("--mutations", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", required=True, help="pair directory")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="run the matcher over generated pairs, emit CSV")
    p.add_argument("directory")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (StoreError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except SearchBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
