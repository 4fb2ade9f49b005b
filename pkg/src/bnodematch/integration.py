"""Merge graphs from different sources under a URI-equivalence policy.

Sources are folded left into an accumulated corpus: bnode label scopes are
made disjoint by prefixing with a source tag, the matcher runs with the
equivalence relation folded into its distances, and accepted pairs become
owl:sameAs links (or one shared label with ``unify``).

A matched pair is accepted by default only when the majority of both
endpoints' incident triples align, i.e. its distance is below the smaller
incident-set size.  The matcher itself already refuses pairs that save
nothing, but the majority rule also rejects weak matches that happen to
share a single edge.  Generated sameAs links never feed back into distance
computation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence

from .equivalence import OWL_SAMEAS, EquivalenceRelation
from .matcher import MatcherConfig, _PairContext, match_bnodes
from .model import (
    BNODE,
    Graph,
    Renaming,
    Term,
    Triple,
    bnode,
    incident_triples,
    iri,
    rename_graph,
)

AcceptFn = Callable[[Term, Term, int, int, int], bool]


@dataclass
class CandidateLink:
    left: Term
    right: Term
    dist: int
    left_size: int
    right_size: int


@dataclass
class IntegrationResult:
    merged: Graph
    bnode_links: set[tuple[Term, Term]]
    uri_links: set[tuple[Term, Term]]
    report: dict[str, dict[str, int]]
    candidates: list[CandidateLink] = field(default_factory=list)


def majority_accept(left: Term, right: Term, dist: int,
                    left_size: int, right_size: int) -> bool:
    """Accept when shared triples outnumber half of each incident set."""
    return dist < min(left_size, right_size)


def prefix_bnodes(g: Graph, tag: str) -> Graph:
    """Move a graph into its own label scope: every label gets a tag prefix."""
    renaming = {b: bnode(f"{tag}_{b.value}") for b in g.bnodes()}
    return rename_graph(g, Renaming(renaming))


def _cross_uri_links(
    acc_uris: Iterable[Term], new_uris: Iterable[Term], equiv: EquivalenceRelation
) -> set[tuple[Term, Term]]:
    groups: dict[Term, list[Term]] = {}
    for u in acc_uris:
        groups.setdefault(equiv.representative(u), []).append(u)
    links: set[tuple[Term, Term]] = set()
    for u in new_uris:
        for other in groups.get(equiv.representative(u), []):
            if other != u:
                links.add((other, u))
    return links


def _match_step(
    acc: Graph,
    new: Graph,
    equiv: EquivalenceRelation,
    config: MatcherConfig,
) -> list[CandidateLink]:
    mapping = match_bnodes(acc, new, equiv, config)
    ctx = _PairContext(acc, new, equiv)
    out = []
    for left, right in mapping.sorted_pairs():
        d = ctx.dist(left, right, dict(mapping.pairs))
        out.append(
            CandidateLink(
                left,
                right,
                d,
                len(incident_triples(acc, left)),
                len(incident_triples(new, right)),
            )
        )
    return out


def integrate_all(
    graphs: Sequence[Graph],
    policy: str = "exact",
    sameas_pairs: Iterable[tuple[Term, Term]] = (),
    config: Optional[MatcherConfig] = None,
    tags: Optional[Sequence[str]] = None,
    accept: Optional[AcceptFn] = None,
    unify: bool = False,
) -> IntegrationResult:
    """Fold any number of sources into one corpus with sameAs links."""
    config = config or MatcherConfig()
    accept = accept or majority_accept
    tags = list(tags) if tags is not None else [f"src{i + 1}" for i in range(len(graphs))]
    if len(tags) != len(graphs):
        raise ValueError("one source tag per graph is required")
    if not graphs:
        raise ValueError("at least one graph is required")

    sameas_pairs = list(sameas_pairs)
    prefixed = [prefix_bnodes(g, tag) for g, tag in zip(graphs, tags)]
    source_bnodes = {tag: set(g.bnodes()) for tag, g in zip(tags, prefixed)}

    content = prefixed[0]
    bnode_links: set[tuple[Term, Term]] = set()
    uri_links: set[tuple[Term, Term]] = set()
    all_candidates: list[CandidateLink] = []

    for new in prefixed[1:]:
        equiv = EquivalenceRelation.for_graphs(policy, [content, new], sameas_pairs)
        uri_links |= _cross_uri_links(content.uris(), new.uris(), equiv)
        candidates = _match_step(content, new, equiv, config)
        all_candidates.extend(candidates)
        for cand in candidates:
            if accept(cand.left, cand.right, cand.dist, cand.left_size, cand.right_size):
                bnode_links.add((cand.left, cand.right))
        content = Graph(content.triples | new.triples, "integrated")

    sameas = iri(OWL_SAMEAS)
    link_triples = {Triple(a, sameas, b) for a, b in bnode_links}
    link_triples |= {Triple(a, sameas, b) for a, b in uri_links}

    if unify:
        merged = rename_graph(content, _unifying_renaming(bnode_links))
        merged = Graph(
            merged.triples | {Triple(a, sameas, b) for a, b in uri_links},
            "integrated",
        )
    else:
        merged = Graph(content.triples | link_triples, "integrated")

    linked = {a for a, _ in bnode_links} | {b for _, b in bnode_links}
    report = {
        tag: {
            "bnodes": len(bag),
            "matched": len(bag & linked),
            "unmatched": len(bag - linked),
        }
        for tag, bag in source_bnodes.items()
    }
    return IntegrationResult(merged, bnode_links, uri_links, report, all_candidates)


def _unifying_renaming(links: set[tuple[Term, Term]]) -> Renaming:
    """Collapse each linked group to its shortest label."""
    parent: dict[Term, Term] = {}

    def find(x: Term) -> Term:
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in sorted(links, key=lambda p: (p[0].value, p[1].value)):
        ra, rb = find(a), find(b)
        if ra != rb:
            keep, drop = sorted((ra, rb), key=lambda t: (len(t.value), t.value))
            parent[drop] = keep
    return Renaming({t: find(t) for t in parent if find(t) != t})


def integrate(
    g1: Graph,
    g2: Graph,
    equiv: Optional[EquivalenceRelation] = None,
    config: Optional[MatcherConfig] = None,
    tags: tuple[str, str] = ("src1", "src2"),
    accept: Optional[AcceptFn] = None,
    unify: bool = False,
) -> IntegrationResult:
    """Two-source integration under an explicit equivalence relation."""
    policy = equiv.policy if equiv is not None else "exact"
    pairs = equiv.sameas_pairs if equiv is not None else ()
    return integrate_all(
        [g1, g2], policy, pairs, config, tags=list(tags), accept=accept, unify=unify
    )
