"""Explicit add/delete deltas between graphs, with bnode-mapping support.

A delta can be expressed in the label scope of the target graph (new
bnodes keep their own labels; the old graph is renamed into them before
differencing) or of the source graph (incoming bnodes are renamed into the
old labels, which is what a version store wants).  Scripts embed the
injection they were computed with, so a patch file is self-contained.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Union

from . import ntriples
from .matcher import BnodeMapping
from .model import BNODE, Graph, Renaming, Term, Triple, bnode, rename_graph

TARGET_LABELS = "target-labels"
SOURCE_LABELS = "source-labels"


@dataclass
class DeltaScript:
    """An ordered patch: deletions then additions, plus the mapping used."""

    additions: frozenset[Triple]
    deletions: frozenset[Triple]
    mapping_used: Optional[BnodeMapping] = None
    direction: str = TARGET_LABELS

    def __post_init__(self) -> None:
        self.additions = frozenset(self.additions)
        self.deletions = frozenset(self.deletions)
        if self.additions & self.deletions:
            raise ValueError("a triple cannot be both added and deleted")
        if self.direction not in (TARGET_LABELS, SOURCE_LABELS):
            raise ValueError(f"unknown direction: {self.direction!r}")

    @property
    def size(self) -> int:
        return len(self.additions) + len(self.deletions)

    def is_empty(self) -> bool:
        return not self.additions and not self.deletions


def plain_delta(g1: Graph, g2: Graph) -> DeltaScript:
    """Set-difference delta; bnode labels compare as raw text.

    Labels from different scopes never match unless the text coincides,
    which is exactly the blowup bnode matching exists to avoid.
    """
    return DeltaScript(
        additions=g2.triples - g1.triples,
        deletions=g1.triples - g2.triples,
        mapping_used=None,
        direction=TARGET_LABELS,
    )


def _fresh_label(base: str, used: set[str]) -> str:
    candidate = f"u_{base}"
    while candidate in used:
        candidate = "u" + candidate
    used.add(candidate)
    return candidate


def _as_pairs(mapping: Union[BnodeMapping, dict, None]) -> dict[Term, Term]:
    if mapping is None:
        return {}
    if isinstance(mapping, BnodeMapping):
        return dict(mapping.pairs)
    return dict(mapping)


def _check_mapping(pairs: dict[Term, Term], g1: Graph) -> None:
    seen: set[Term] = set()
    for src, dst in pairs.items():
        if src.kind != BNODE or dst.kind != BNODE:
            raise ValueError(f"mapping pair ({src!r}, {dst!r}) is not bnode-to-bnode")
        if src not in g1.bnodes():
            raise ValueError(f"mapping domain term {src!r} is not a bnode of the source graph")
        if dst in seen:
            raise ValueError(f"mapping is not injective at {dst!r}")
        seen.add(dst)


def mapped_delta(
    g1: Graph,
    g2: Graph,
    mapping: Union[BnodeMapping, dict, None],
    direction: str = TARGET_LABELS,
) -> DeltaScript:
    """Delta after identifying bnodes through an injection.

    ``target-labels``: operations carry the new graph's labels; apply by
    renaming the old graph first.  ``source-labels``: operations carry the
    old graph's labels and apply directly to it.  Partial mappings are
    allowed; unmapped bnodes on either side are treated as fresh and get
    collision-free substitute labels, so no source-scope label leaks into
    a target-labels script (and vice versa).
    """
    pairs = _as_pairs(mapping)
    _check_mapping(pairs, g1)
    method = mapping.method if isinstance(mapping, BnodeMapping) else ""
    cost = mapping.cost if isinstance(mapping, BnodeMapping) else 0

    used = {b.value for b in g1.bnodes() | g2.bnodes()}
    used.update(b.value for b in pairs.values())
    if direction == TARGET_LABELS:
        renaming = dict(pairs)
        for b1 in sorted(g1.bnodes() - set(pairs), key=Term.sort_key):
            renaming[b1] = bnode(_fresh_label(b1.value, used))
        g1m = rename_graph(g1, Renaming(renaming))
        additions = g2.triples - g1m.triples
        deletions = g1m.triples - g2.triples
        stored = renaming
    elif direction == SOURCE_LABELS:
        inverse = {dst: src for src, dst in pairs.items()}
        stored = dict(pairs)
        renaming = dict(inverse)
        for b2 in sorted(g2.bnodes() - set(inverse), key=Term.sort_key):
            fresh = bnode(_fresh_label(b2.value, used))
            renaming[b2] = fresh
            stored[fresh] = b2
        g2m = rename_graph(g2, Renaming(renaming))
        additions = g2m.triples - g1.triples
        deletions = g1.triples - g2m.triples
    else:
        raise ValueError(f"unknown direction: {direction!r}")

    return DeltaScript(
        additions=additions,
        deletions=deletions,
        mapping_used=BnodeMapping(stored, cost=cost, method=method),
        direction=direction,
    )


def apply_delta(g: Graph, script: DeltaScript) -> tuple[Graph, list[str]]:
    """Apply a script to a graph; deletions of absent triples only warn.

    Target-labels scripts rename the graph through the embedded mapping
    first; source-labels scripts expect a graph already in the script's
    source scope.
    """
    base = g
    if script.direction == TARGET_LABELS and script.mapping_used is not None:
        base = rename_graph(g, Renaming(dict(script.mapping_used.pairs)))
    warnings = [
        f"delete of absent triple: {ntriples.render_triple(t)}"
        for t in sorted(script.deletions - base.triples, key=Triple.sort_key)
    ]
    result = (base.triples - script.deletions) | script.additions
    return Graph(result, g.graph_id), warnings


def reverse_delta(script: DeltaScript) -> DeltaScript:
    """Swap additions and deletions and invert the mapping.

    The label scope flips with the direction: reversing a target-labels
    script yields a source-labels script for the opposite transformation,
    so reverse is an involution.
    """
    inverted = None
    if script.mapping_used is not None:
        inverted = BnodeMapping(
            {dst: src for src, dst in script.mapping_used.pairs.items()},
            cost=script.mapping_used.cost,
            method=script.mapping_used.method,
        )
    flipped = SOURCE_LABELS if script.direction == TARGET_LABELS else TARGET_LABELS
    return DeltaScript(
        additions=script.deletions,
        deletions=script.additions,
        mapping_used=inverted,
        direction=flipped,
    )


# -- .rdfd file format ----------------------------------------------------
#
#   # direction=target-labels
#   M <label1> <label2>
#   D <n-triples line>
#   A <n-triples line>
#
# Each section sorted, so serialization is byte-stable.


def format_delta(script: DeltaScript) -> str:
    lines = [f"# direction={script.direction}"]
    if script.mapping_used is not None:
        lines.extend(
            f"M {src.value} {dst.value}"
            for src, dst in sorted(
                script.mapping_used.pairs.items(),
                key=lambda p: (p[0].value, p[1].value),
            )
        )
    lines.extend(
        f"D {ntriples.render_triple(t)}"
        for t in sorted(script.deletions, key=Triple.sort_key)
    )
    lines.extend(
        f"A {ntriples.render_triple(t)}"
        for t in sorted(script.additions, key=Triple.sort_key)
    )
    return "".join(line + "\n" for line in lines)


def parse_delta(text: str) -> DeltaScript:
    direction = TARGET_LABELS
    pairs: dict[Term, Term] = {}
    additions: set[Triple] = set()
    deletions: set[Triple] = set()
    saw_mapping = False
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("direction="):
                direction = body.split("=", 1)[1]
            continue
        tag, _, rest = line.partition(" ")
        if tag == "M":
            parts = rest.split()
            if len(parts) != 2 or not all(ntriples.LABEL_RE.fullmatch(p) for p in parts):
                raise ValueError(f"line {line_no}: malformed mapping line: {line!r}")
            pairs[bnode(parts[0])] = bnode(parts[1])
            saw_mapping = True
        elif tag == "D":
            deletions.add(ntriples.parse_triple_line(rest, line_no))
        elif tag == "A":
            additions.add(ntriples.parse_triple_line(rest, line_no))
        else:
            raise ValueError(f"line {line_no}: unknown delta line tag: {tag!r}")
    mapping = BnodeMapping(pairs, cost=0, method="loaded") if saw_mapping else None
    return DeltaScript(
        additions=frozenset(additions),
        deletions=frozenset(deletions),
        mapping_used=mapping,
        direction=direction,
    )


def save_delta(script: DeltaScript, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_delta(script))


def load_delta(path: str) -> DeltaScript:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_delta(fh.read())
