"""Graph equivalence and simple entailment decisions.

Equivalence asks for a bijection between bnode sets that preserves triples
exactly; the matcher answers it fast, with an exhaustive signature-pruned
backtracking fallback so the decision stays exact even when the matcher
had to approximate.  Entailment asks for a (not necessarily injective)
function from the entailed graph's bnodes into the entailing graph's
bnodes and IRIs under which every triple is contained.

Both searches are worst-case exponential; a node budget raises rather
than ever answering wrongly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .delta import TARGET_LABELS, mapped_delta, plain_delta
from .matcher import (
    ASSIGNMENT,
    BRUTE_FORCE,
    MatcherConfig,
    _stable_signatures,
    match_bnodes,
)
from .equivalence import EquivalenceRelation
from .model import (
    BNODE,
    IRI,
    LITERAL,
    Graph,
    Renaming,
    Term,
    Triple,
    bnode_components,
    incident_triples,
    rename_graph,
)

DEFAULT_BUDGET = 2_000_000


class SearchBudgetExceeded(RuntimeError):
    """The backtracking search ran out of budget before deciding."""


@dataclass
class EntailmentMapping:
    """Assignment of the entailed graph's bnodes to bnodes or IRIs."""

    assignments: dict[Term, Term]

    def __post_init__(self) -> None:
        self.assignments = dict(self.assignments)
        for b, x in self.assignments.items():
            if b.kind != BNODE:
                raise ValueError(f"entailment maps bnodes only, got {b!r}")
            if x.kind == LITERAL:
                raise ValueError(f"entailment cannot assign the literal {x!r}")


class _Budget:
    def __init__(self, limit: int) -> None:
        self.limit = limit
        self.spent = 0

    def tick(self) -> None:
        self.spent += 1
        if self.spent > self.limit:
            raise SearchBudgetExceeded(
                f"search exceeded the {self.limit}-node budget"
            )


# -- equivalence -------------------------------------------------------------


def _ground_triples(g: Graph) -> frozenset[Triple]:
    return frozenset(
        t for t in g if t.s.kind != BNODE and t.o.kind != BNODE
    )


def _bijection_search(g1: Graph, g2: Graph, budget: _Budget) -> Optional[dict[Term, Term]]:
    """Exhaustive search for a triple-preserving bnode bijection."""
    if _ground_triples(g1) != _ground_triples(g2):
        return None
    sig1, sig2 = _stable_signatures(g1, g2, EquivalenceRelation.exact())
    by_color: dict[str, list[Term]] = {}
    for b, s in sig2.items():
        by_color.setdefault(s.color, []).append(b)
    candidates = {
        b1: sorted(by_color.get(s.color, []), key=Term.sort_key)
        for b1, s in sig1.items()
    }
    # A bijection maps color classes onto color classes of the same size.
    sizes1: dict[str, int] = {}
    for s in sig1.values():
        sizes1[s.color] = sizes1.get(s.color, 0) + 1
    sizes2: dict[str, int] = {}
    for s in sig2.values():
        sizes2[s.color] = sizes2.get(s.color, 0) + 1
    if sizes1 != sizes2:
        return None

    order = sorted(candidates, key=lambda b: (len(candidates[b]), b.sort_key()))
    assignment: dict[Term, Term] = {}
    used: set[Term] = set()

    def consistent(b1: Term) -> bool:
        # Check every incident triple whose bnodes are all assigned by now.
        for t in incident_triples(g1, b1):
            if t.s.kind == BNODE and t.s not in assignment:
                continue
            if t.o.kind == BNODE and t.o not in assignment:
                continue
            s = assignment.get(t.s, t.s)
            o = assignment.get(t.o, t.o)
            if Triple(s, t.p, o) not in g2:
                return False
        return True

    def backtrack(i: int) -> bool:
        if i == len(order):
            return True
        b1 = order[i]
        for b2 in candidates[b1]:
            if b2 in used:
                continue
            budget.tick()
            assignment[b1] = b2
            used.add(b2)
            if consistent(b1) and backtrack(i + 1):
                return True
            del assignment[b1]
            used.discard(b2)
        return False

    if backtrack(0):
        return dict(assignment)
    return None


def find_equivalence_bijection(
    g1: Graph,
    g2: Graph,
    config: Optional[MatcherConfig] = None,
    budget: int = DEFAULT_BUDGET,
) -> Optional[dict[Term, Term]]:
    """A triple-preserving bnode bijection between the graphs, or None.

    IRIs and literals must coincide exactly; only bnode identity is open.
    The answer is exact: an approximate matcher result with positive cost
    triggers the exhaustive fallback before answering no.
    """
    if g1.uris() != g2.uris() or g1.literals() != g2.literals():
        return None
    if len(g1.bnodes()) != len(g2.bnodes()) or len(g1) != len(g2):
        return None
    if not g1.bnodes():
        return {} if g1 == g2 else None
    mapping = match_bnodes(g1, g2, config=config)
    if mapping.cost == 0:
        script = mapped_delta(g1, g2, mapping, TARGET_LABELS)
        return dict(mapping.pairs) if script.is_empty() else None
    if mapping.method in (BRUTE_FORCE, ASSIGNMENT):
        return None  # the cost is a true minimum, so no zero-cost bijection
    return _bijection_search(g1, g2, _Budget(budget))


def graphs_equivalent(
    g1: Graph,
    g2: Graph,
    config: Optional[MatcherConfig] = None,
    budget: int = DEFAULT_BUDGET,
) -> bool:
    return find_equivalence_bijection(g1, g2, config, budget) is not None


# -- entailment ----------------------------------------------------------------


class _EntailIndex:
    def __init__(self, g: Graph) -> None:
        self.triples = g.triples
        self.sp: dict[tuple[Term, Term], set[Term]] = {}
        self.po: dict[tuple[Term, Term], set[Term]] = {}
        for t in g:
            self.sp.setdefault((t.s, t.p), set()).add(t.o)
            self.po.setdefault((t.p, t.o), set()).add(t.s)

    def pattern_holds(self, s, p, o) -> bool:
        """s/o may be None: a wildcard for a resource to be chosen later."""
        if s is None:
            return bool(self.po.get((p, o)))
        if o is None:
            return any(x.kind != LITERAL for x in self.sp.get((s, p), ()))
        return Triple(s, p, o) in self.triples


def _candidates(g2: Graph, b2: Term, index: _EntailIndex, universe: list[Term]) -> list[Term]:
    patterns = []
    for t in incident_triples(g2, b2):
        s = "slot" if t.s == b2 else (None if t.s.kind == BNODE else t.s)
        o = "slot" if t.o == b2 else (None if t.o.kind == BNODE else t.o)
        patterns.append((s, t.p, o))
    out = []
    for x in universe:
        ok = True
        for s, p, o in patterns:
            sv = x if s == "slot" else s
            ov = x if o == "slot" else o
            if not index.pattern_holds(sv, p, ov):
                ok = False
                break
        if ok:
            out.append(x)
    return out


def entails(
    g1: Graph,
    g2: Graph,
    budget: int = DEFAULT_BUDGET,
) -> Optional[EntailmentMapping]:
    """Witness that g1 entails g2, or None.

    Ground triples of g2 must simply exist in g1; each bnode component of
    g2 is then searched independently, most-constrained bnode first, for
    an assignment into g1's bnodes and IRIs.
    """
    for t in _ground_triples(g2):
        if t not in g1:
            return None
    if not g2.bnodes():
        return EntailmentMapping({})

    index = _EntailIndex(g1)
    universe = sorted(g1.bnodes() | g1.uris(), key=Term.sort_key)
    candidates = {b2: _candidates(g2, b2, index, universe) for b2 in g2.bnodes()}
    if any(not c for c in candidates.values()):
        return None

    tracker = _Budget(budget)
    assignments: dict[Term, Term] = {}

    def consistent(b2: Term, local: dict[Term, Term]) -> bool:
        # Bnodes sharing a triple are in the same component, so a triple is
        # fully decided as soon as all its bnode positions are in `local`.
        for t in incident_triples(g2, b2):
            if t.s.kind == BNODE and t.s not in local:
                continue
            if t.o.kind == BNODE and t.o not in local:
                continue
            s = local.get(t.s, t.s)
            o = local.get(t.o, t.o)
            if Triple(s, t.p, o) not in g1:
                return False
        return True

    for component in bnode_components(g2):
        order = sorted(component, key=lambda b: (len(candidates[b]), b.sort_key()))
        local: dict[Term, Term] = {}

        def backtrack(i: int) -> bool:
            if i == len(order):
                return True
            b2 = order[i]
            for x in candidates[b2]:
                tracker.tick()
                local[b2] = x
                if consistent(b2, local) and backtrack(i + 1):
                    return True
                del local[b2]
            return False

        if not backtrack(0):
            return None
        assignments.update(local)

    witness = EntailmentMapping(assignments)
    assert verify_entailment(g1, g2, witness), "search produced an invalid witness"
    return witness


def verify_entailment(g1: Graph, g2: Graph, mapping: EntailmentMapping) -> bool:
    """True iff renaming g2 through the mapping lands inside g1."""
    missing = g2.bnodes() - set(mapping.assignments)
    if missing:
        raise ValueError(
            f"mapping must cover every bnode of the entailed graph; missing {len(missing)}"
        )
    renamed = rename_graph(g2, Renaming(mapping.assignments))
    return not plain_delta(renamed, g1).deletions
