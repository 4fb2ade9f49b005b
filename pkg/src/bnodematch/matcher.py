"""Minimum-cost bnode matching between two graphs.

The objective: find an injection from the bnodes of the graph with fewer
bnodes into the other side that minimizes the sum of per-pair edit
distances between incident-triple sets, where IRIs and literals compare
through an equivalence relation and neighbor bnodes compare through the
candidate mapping itself.  Bnodes left out of a partial injection
contribute their incident-triple count to the cost (those triples must
appear in any delta regardless).

Three strategies, picked by instance shape:

* exact branch-and-bound enumeration when the smaller bnode set is small
  (cost is the true minimum);
* minimum-cost bipartite assignment when neither graph has directly
  connected bnodes (distances are then mapping-independent, so the
  assignment is exact);
* color-refinement signature seeding plus pairwise hill-climbing otherwise
  (cost is an upper bound on the minimum).

``brute_force_match`` is an independent flat enumeration used as a test
oracle; it evaluates candidate costs through a literal rename-and-diff of
the incident sets rather than the token machinery used by the solver.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from hashlib import blake2b
from typing import Iterable, Mapping, Optional, Union

import numpy as np
from scipy.optimize import linear_sum_assignment

from . import ntriples
from .equivalence import EquivalenceRelation
from .model import (
    BNODE,
    Graph,
    Term,
    Triple,
    bnode,
    has_connected_bnodes,
    incident_triples,
)

BRUTE_FORCE = "brute_force"
ASSIGNMENT = "assignment"
REFINEMENT = "refinement"

_SELF = ("~self~",)
_ORACLE_LIMIT = 8


class InstanceTooLarge(ValueError):
    """Raised when the brute-force oracle is asked for more than it can chew."""


@dataclass
class MatcherConfig:
    exact_threshold: int = 7
    max_refinement_rounds: int = 20
    seed: int = 0

    def __post_init__(self) -> None:
        if self.exact_threshold < 0:
            raise ValueError("exact_threshold must be >= 0")
        if self.max_refinement_rounds < 0:
            raise ValueError("max_refinement_rounds must be >= 0")


@dataclass
class BnodeMapping:
    """An injective bnode-to-bnode map with the cost the solver computed.

    ``pairs`` is keyed by the first graph's bnodes in the caller's argument
    order.  When the solver had to swap internally (first graph had more
    bnodes), ``swapped`` is set and the cost is the objective over the
    smaller side, which is always the side the optimizer enumerates.
    """

    pairs: dict[Term, Term]
    cost: int = 0
    method: str = ""
    swapped: bool = False

    def __post_init__(self) -> None:
        self.pairs = dict(self.pairs)
        if len(set(self.pairs.values())) != len(self.pairs):
            raise ValueError("bnode mapping must be injective")
        for a, b in self.pairs.items():
            if a.kind != BNODE or b.kind != BNODE:
                raise ValueError(f"mapping pair ({a!r}, {b!r}) is not bnode-to-bnode")

    def __len__(self) -> int:
        return len(self.pairs)

    def image(self, b: Term) -> Optional[Term]:
        return self.pairs.get(b)

    def inverted(self) -> "BnodeMapping":
        return BnodeMapping(
            {b: a for a, b in self.pairs.items()},
            cost=self.cost,
            method=self.method,
            swapped=not self.swapped,
        )

    def sorted_pairs(self) -> list[tuple[Term, Term]]:
        return sorted(self.pairs.items(), key=lambda p: (p[0].value, p[1].value))


@dataclass(frozen=True)
class Signature:
    """Canonical token multiset describing one bnode's neighborhood."""

    bnode: Term
    tokens: tuple[str, ...]
    color: str


def _as_dict(mapping: Union[BnodeMapping, Mapping[Term, Term], None]) -> dict[Term, Term]:
    if mapping is None:
        return {}
    if isinstance(mapping, BnodeMapping):
        return dict(mapping.pairs)
    return dict(mapping)


class _PairContext:
    """Distance machinery for one (left graph, right graph, equivalence)."""

    def __init__(self, g1: Graph, g2: Graph, equiv: EquivalenceRelation) -> None:
        self.g1 = g1
        self.g2 = g2
        self.equiv = equiv
        self.left = sorted(g1.bnodes(), key=Term.sort_key)
        self.right = sorted(g2.bnodes(), key=Term.sort_key)
        self._canon: dict[Term, str] = {}
        # Right-side tokens never depend on the candidate mapping: the
        # mapping renames left bnodes into right labels, so right neighbors
        # stand for themselves.
        self._right_tokens: dict[Term, frozenset] = {
            b: frozenset(self._tokens(g2, b, side="right", m=None)) for b in self.right
        }
        self._left_nbrs: dict[Term, tuple[Term, ...]] = {
            b: self._bnode_neighbors(g1, b) for b in self.left
        }
        self._penalty: dict[Term, int] = {
            b: len(incident_triples(g1, b)) for b in self.left
        }
        self._penalty_right: dict[Term, int] = {
            b: len(incident_triples(g2, b)) for b in self.right
        }
        self._memo: dict[tuple, int] = {}
        self._lb_left: dict[Term, frozenset] = {}
        self._lb_right: dict[Term, frozenset] = {}

    def _ground(self, term: Term) -> str:
        tok = self._canon.get(term)
        if tok is None:
            tok = ntriples.render_term(self.equiv.representative(term))
            self._canon[term] = tok
        return tok

    @staticmethod
    def _bnode_neighbors(g: Graph, b: Term) -> tuple[Term, ...]:
        nbrs = set()
        for t in incident_triples(g, b):
            for term in (t.s, t.o):
                if term.kind == BNODE and term != b:
                    nbrs.add(term)
        return tuple(sorted(nbrs, key=Term.sort_key))

    def _tokens(self, g: Graph, owner: Term, side: str,
                m: Optional[dict[Term, Term]], wildcard: bool = False):
        """Canonical forms of the owner's incident triples.

        Predicates compare by exact IRI (renamings never touch them);
        subjects and objects go through the equivalence representative.
        """
        out = []
        for t in incident_triples(g, owner):
            slots = []
            for term in (t.s, t.o):
                if term == owner:
                    slots.append(_SELF)
                elif term.kind == BNODE:
                    if wildcard:
                        slots.append(("?",))
                    elif side == "right":
                        slots.append(("b2", term.value))
                    elif m is not None and term in m:
                        slots.append(("b2", m[term].value))
                    else:
                        # unmapped left neighbor: never equal to anything
                        slots.append(("b1", term.value))
                else:
                    slots.append(("g", self._ground(term)))
            out.append((slots[0], t.p.value, slots[1]))
        return out

    def penalty(self, b1: Term) -> int:
        return self._penalty[b1]

    def penalty_right(self, b2: Term) -> int:
        return self._penalty_right[b2]

    def dist(self, b1: Term, b2: Term, m: Mapping[Term, Term]) -> int:
        """Edit distance between incident sets under the candidate mapping.

        Depends on ``m`` only through the images of b1's bnode neighbors,
        which the memo key exploits.
        """
        relevant = tuple(
            (n.value, m[n].value if n in m else None) for n in self._left_nbrs[b1]
        )
        key = (b1, b2, relevant)
        cached = self._memo.get(key)
        if cached is not None:
            return cached
        local = {n: m[n] for n in self._left_nbrs[b1] if n in m}
        left = frozenset(self._tokens(self.g1, b1, side="left", m=local))
        right = self._right_tokens[b2]
        value = len(left ^ right)
        self._memo[key] = value
        return value

    def lower_bound(self, b1: Term, b2: Term) -> int:
        """Mapping-independent lower bound: neighbor slots wildcarded."""
        lw = self._lb_left.get(b1)
        if lw is None:
            lw = frozenset(self._tokens(self.g1, b1, side="left", m=None, wildcard=True))
            self._lb_left[b1] = lw
        rw = self._lb_right.get(b2)
        if rw is None:
            rw = frozenset(self._tokens(self.g2, b2, side="right", m=None, wildcard=True))
            self._lb_right[b2] = rw
        return len(lw ^ rw)

    def eval_cost(self, m: Mapping[Term, Term]) -> int:
        """Candidate objective: pair distances plus both-sided skip penalties.

        An unmapped bnode's incident triples all end up in the delta, so
        every unmapped bnode on either side contributes its degree.
        """
        total = 0
        images = set(m.values())
        for b1 in self.left:
            if b1 in m:
                total += self.dist(b1, m[b1], m)
            else:
                total += self._penalty[b1]
        for b2 in self.right:
            if b2 not in images:
                total += self._penalty_right[b2]
        return total


def pair_distance(
    g1: Graph,
    g2: Graph,
    b1: Term,
    b2: Term,
    mapping: Union[BnodeMapping, Mapping[Term, Term], None] = None,
    equiv: Optional[EquivalenceRelation] = None,
) -> int:
    """Add/Del operations needed to make the two incident sets identical.

    b1 and b2 compare as each other; neighbor bnodes compare through
    ``mapping`` (unmapped neighbors never match); IRIs and literals compare
    through ``equiv`` (exact equality by default).
    """
    if b1.kind != BNODE or b2.kind != BNODE:
        raise ValueError("pair_distance expects bnodes on both sides")
    ctx = _PairContext(g1, g2, equiv or EquivalenceRelation.exact())
    if b1 not in g1.bnodes() or b2 not in g2.bnodes():
        # Distance against an absent bnode is the size of the present side.
        left = len(incident_triples(g1, b1)) if b1 in g1.bnodes() else 0
        right = len(incident_triples(g2, b2)) if b2 in g2.bnodes() else 0
        return left + right
    m = {k: v for k, v in _as_dict(mapping).items() if k != b1}
    return ctx.dist(b1, b2, m)


# -- signatures -------------------------------------------------------------


def _round_tokens(g: Graph, equiv: EquivalenceRelation, owner: Term,
                  colors: Optional[dict[Term, str]]) -> list[str]:
    toks = []
    for t in incident_triples(g, owner):
        slots = []
        for term in (t.s, t.o):
            if term == owner:
                slots.append("~")
            elif term.kind == BNODE:
                slots.append(colors[term] if colors is not None else "*")
            else:
                slots.append(ntriples.render_term(equiv.representative(term)))
        pred = ntriples.render_term(equiv.representative(t.p))
        toks.append(f"({slots[0]} {pred} {slots[1]})")
    return sorted(toks)


def _color_of(tokens: Iterable[str]) -> str:
    digest = blake2b("\n".join(tokens).encode("utf-8"), digest_size=12)
    return digest.hexdigest()


def build_signatures(
    g: Graph,
    equiv: Optional[EquivalenceRelation] = None,
    rounds: int = 1,
) -> dict[Term, Signature]:
    """Color-refinement signatures after the given number of rounds.

    Round 1 sees every neighbor bnode as one generic placeholder; each
    later round re-tokenizes with the neighbor colors of the previous
    round.  Colors are content digests, so signatures built from two
    different graphs at the same round are directly comparable.
    """
    if rounds < 1:
        raise ValueError("rounds must be >= 1")
    equiv = equiv or EquivalenceRelation.exact()
    colors: Optional[dict[Term, str]] = None
    tokens: dict[Term, tuple[str, ...]] = {}
    for _ in range(rounds):
        tokens = {
            b: tuple(_round_tokens(g, equiv, b, colors)) for b in g.bnodes()
        }
        colors = {b: _color_of(toks) for b, toks in tokens.items()}
    assert colors is not None
    return {
        b: Signature(b, tokens[b], colors[b])
        for b in sorted(g.bnodes(), key=Term.sort_key)
    }


def _stable_signatures(
    g1: Graph, g2: Graph, equiv: EquivalenceRelation
) -> tuple[dict[Term, Signature], dict[Term, Signature]]:
    """Refine both graphs in lockstep until the joint partition stabilizes."""
    cap = max(1, len(g1.bnodes()) + len(g2.bnodes()))
    prev_partition = None
    rounds = 1
    while True:
        sig1 = build_signatures(g1, equiv, rounds)
        sig2 = build_signatures(g2, equiv, rounds)
        # Color strings evolve every round even once the grouping is fixed,
        # so stability is judged on the blocks, not on the color values.
        blocks: list[frozenset] = []
        for sigs in (sig1, sig2):
            by_color: dict[str, set[str]] = {}
            for b, s in sigs.items():
                by_color.setdefault(s.color, set()).add(b.value)
            blocks.append(frozenset(frozenset(v) for v in by_color.values()))
        partition = tuple(blocks)
        if partition == prev_partition or rounds >= cap:
            return sig1, sig2
        prev_partition = partition
        rounds += 1


# -- solver tiers -----------------------------------------------------------


def _exact_search(ctx: _PairContext) -> BnodeMapping:
    left, right = ctx.left, ctx.right
    n1, n2 = len(left), len(right)
    penalty = [ctx.penalty(b) for b in left]
    lbm = [[ctx.lower_bound(b1, b2) for b2 in right] for b1 in left]
    best_one = [
        min([penalty[i]] + lbm[i]) if n2 else penalty[i] for i in range(n1)
    ]
    suffix = [0] * (n1 + 1)
    for i in range(n1 - 1, -1, -1):
        suffix[i] = suffix[i + 1] + best_one[i]
    # Every skipped left bnode strands one more right bnode; at least the
    # cheapest ones must then be paid for.
    rp_sorted = sorted(ctx.penalty_right(b) for b in right)
    rp_prefix = [0]
    for p in rp_sorted:
        rp_prefix.append(rp_prefix[-1] + p)

    best_cost: Optional[int] = None
    best_key: Optional[tuple] = None
    best_pairs: dict[Term, Term] = {}
    assignment: dict[Term, Term] = {}
    used = [False] * n2

    def leaf() -> None:
        nonlocal best_cost, best_key, best_pairs
        cost = ctx.eval_cost(assignment)
        key = tuple(sorted((a.value, b.value) for a, b in assignment.items()))
        if best_cost is None or (cost, key) < (best_cost, best_key):
            best_cost, best_key, best_pairs = cost, key, dict(assignment)

    def dfs(i: int, acc: int, skips: int) -> None:
        stranded = n2 - n1 + skips
        if (
            best_cost is not None
            and acc + suffix[i] + rp_prefix[max(stranded, 0)] > best_cost
        ):
            return
        if i == n1:
            leaf()
            return
        b1 = left[i]
        # Try options in ascending optimistic cost so good bounds come early.
        options: list[tuple[int, int]] = [(penalty[i], -1)]
        options.extend((lbm[i][j], j) for j in range(n2) if not used[j])
        options.sort(key=lambda o: (o[0], o[1]))
        for bound, j in options:
            if j < 0:
                dfs(i + 1, acc + penalty[i], skips + 1)
            else:
                used[j] = True
                assignment[b1] = right[j]
                dfs(i + 1, acc + bound, skips)
                del assignment[b1]
                used[j] = False

    dfs(0, 0, 0)
    assert best_cost is not None
    return BnodeMapping(best_pairs, cost=best_cost, method=BRUTE_FORCE)


def _assignment_tier(ctx: _PairContext) -> BnodeMapping:
    # With both-sided skip penalties a pair never costs more than leaving
    # its two endpoints unmapped (dist <= deg1 + deg2), so some optimal
    # solution maps every left bnode and the assignment below is exact.
    # Crediting each used image's penalty makes the assignment objective
    # equal the true cost up to the constant sum of right penalties.
    left, right = ctx.left, ctx.right
    n1, n2 = len(left), len(right)
    rp = [ctx.penalty_right(b) for b in right]
    matrix = np.zeros((n1, n2), dtype=np.int64)
    for i, b1 in enumerate(left):
        for j, b2 in enumerate(right):
            matrix[i, j] = ctx.dist(b1, b2, {}) - rp[j]
    rows, cols = linear_sum_assignment(matrix)
    pairs = {left[i]: right[j] for i, j in zip(rows, cols)}
    cost = int(matrix[rows, cols].sum()) + sum(rp)
    return BnodeMapping(pairs, cost=cost, method=ASSIGNMENT)


def _seed_by_signatures(ctx: _PairContext) -> dict[Term, Term]:
    sig1, sig2 = _stable_signatures(ctx.g1, ctx.g2, ctx.equiv)
    by_color: dict[str, list[Term]] = {}
    for b in ctx.right:
        by_color.setdefault(sig2[b].color, []).append(b)
    seed: dict[Term, Term] = {}
    taken: set[Term] = set()
    for b1 in ctx.left:
        group = by_color.get(sig1[b1].color, [])
        for b2 in group:
            if b2 not in taken:
                seed[b1] = b2
                taken.add(b2)
                break
    return seed


def _refinement_tier(ctx: _PairContext, config: MatcherConfig) -> BnodeMapping:
    left, right = ctx.left, ctx.right
    m = _seed_by_signatures(ctx)

    # Assign the residue with matched-signature pairs held fixed.
    rest1 = [b for b in left if b not in m]
    rest2 = [b for b in right if b not in set(m.values())]
    if rest1 and rest2:
        n1, n2 = len(rest1), len(rest2)
        matrix = np.zeros((n1, n2), dtype=np.int64)
        for i, b1 in enumerate(rest1):
            for j, b2 in enumerate(rest2):
                matrix[i, j] = ctx.dist(b1, b2, m) - ctx.penalty_right(b2)
        rows, cols = linear_sum_assignment(matrix)
        for i, j in zip(rows, cols):
            m[rest1[i]] = rest2[j]

    nbrs = ctx._left_nbrs

    def contribution(b1: Term, mapping: dict[Term, Term]) -> int:
        if b1 in mapping:
            return ctx.dist(b1, mapping[b1], mapping)
        return ctx.penalty(b1)

    def affected(*bs: Term) -> set[Term]:
        out = set()
        for b in bs:
            if b is None:
                continue
            out.add(b)
            out.update(nbrs[b])
        return out & set(left)

    def move_gain(touch: set[Term], new_m: dict[Term, Term]) -> int:
        before = sum(contribution(b, m) for b in touch)
        after = sum(contribution(b, new_m) for b in touch)
        return after - before

    for _ in range(config.max_refinement_rounds):
        improved = False
        mapped = sorted(m, key=Term.sort_key)
        unused = sorted(set(right) - set(m.values()), key=Term.sort_key)
        # image swaps between mapped pairs
        for b1a, b1b in itertools.combinations(mapped, 2):
            new_m = dict(m)
            new_m[b1a], new_m[b1b] = m[b1b], m[b1a]
            if move_gain(affected(b1a, b1b), new_m) < 0:
                m = new_m
                improved = True
        mapped = sorted(m, key=Term.sort_key)
        unused = sorted(set(right) - set(m.values()), key=Term.sort_key)
        # reassignments to unused images, unmapping, and fresh pairs
        for b1 in sorted(left, key=Term.sort_key):
            current = ctx.eval_cost(m)
            candidates: list[dict[Term, Term]] = []
            if b1 in m:
                dropped = {k: v for k, v in m.items() if k != b1}
                candidates.append(dropped)
                for b2 in unused:
                    candidates.append(dict(dropped) | {b1: b2})
            else:
                for b2 in unused:
                    candidates.append(dict(m) | {b1: b2})
            for new_m in candidates:
                if ctx.eval_cost(new_m) < current:
                    m = new_m
                    unused = sorted(set(right) - set(m.values()), key=Term.sort_key)
                    improved = True
                    break
        if not improved:
            break

    cost = ctx.eval_cost(m)
    empty_cost = ctx.eval_cost({})
    if empty_cost < cost:
        return BnodeMapping({}, cost=empty_cost, method=REFINEMENT)
    return BnodeMapping(m, cost=cost, method=REFINEMENT)


def match_bnodes(
    g1: Graph,
    g2: Graph,
    equiv: Optional[EquivalenceRelation] = None,
    config: Optional[MatcherConfig] = None,
) -> BnodeMapping:
    """Minimum-cost injection between the bnode sets of two graphs.

    The optimizer always enumerates from the side with fewer bnodes; when
    that is the second graph, the work happens on the swapped pair and the
    returned mapping is inverted back (and flagged ``swapped``).  The cost
    is exact for the enumeration and assignment strategies and an upper
    bound for the refinement strategy.  Deterministic for a given config.
    """
    equiv = equiv or EquivalenceRelation.exact()
    config = config or MatcherConfig()
    if len(g1.bnodes()) > len(g2.bnodes()):
        return match_bnodes(g2, g1, equiv, config).inverted()
    ctx = _PairContext(g1, g2, equiv)
    if len(ctx.left) <= config.exact_threshold:
        return _exact_search(ctx)
    if not has_connected_bnodes(g1) and not has_connected_bnodes(g2):
        return _assignment_tier(ctx)
    return _refinement_tier(ctx, config)


def mapping_cost(
    g1: Graph,
    g2: Graph,
    mapping: Union[BnodeMapping, Mapping[Term, Term], None],
    equiv: Optional[EquivalenceRelation] = None,
) -> int:
    """Objective value of an arbitrary candidate mapping.

    Evaluated over the smaller bnode set, mirroring ``match_bnodes``, so
    the result is comparable with solver costs.
    """
    pairs = _as_dict(mapping)
    if len(g1.bnodes()) > len(g2.bnodes()):
        return mapping_cost(g2, g1, {v: k for k, v in pairs.items()}, equiv)
    ctx = _PairContext(g1, g2, equiv or EquivalenceRelation.exact())
    pairs = {a: b for a, b in pairs.items() if a in g1.bnodes()}
    return ctx.eval_cost(pairs)


# -- brute-force oracle ------------------------------------------------------


def _oracle_dist(
    g1: Graph,
    g2: Graph,
    b1: Term,
    b2: Term,
    m: Mapping[Term, Term],
    equiv: EquivalenceRelation,
) -> int:
    """Literal rename-and-diff of the two incident sets (oracle route)."""

    def canon(term: Term, owner: Term, side: str):
        if term == owner:
            return ("self",)
        if term.kind == BNODE:
            if side == "right":
                return ("right", term.value)
            if term in m:
                return ("right", m[term].value)
            return ("left", term.value)
        return ("ground", ntriples.render_term(equiv.representative(term)))

    left = {
        (canon(t.s, b1, "left"), t.p.value, canon(t.o, b1, "left"))
        for t in incident_triples(g1, b1)
    }
    right = {
        (canon(t.s, b2, "right"), t.p.value, canon(t.o, b2, "right"))
        for t in incident_triples(g2, b2)
    }
    return len(left - right) + len(right - left)


def brute_force_match(
    g1: Graph,
    g2: Graph,
    equiv: Optional[EquivalenceRelation] = None,
) -> BnodeMapping:
    """Global minimum by flat enumeration of every partial injection.

    Guarded to 8 bnodes per side.  Ties break lexicographically on the
    sorted pair list, so the result is deterministic.
    """
    equiv = equiv or EquivalenceRelation.exact()
    if len(g1.bnodes()) > _ORACLE_LIMIT or len(g2.bnodes()) > _ORACLE_LIMIT:
        raise InstanceTooLarge(
            f"brute force is limited to {_ORACLE_LIMIT} bnodes per side"
        )
    if len(g1.bnodes()) > len(g2.bnodes()):
        return brute_force_match(g2, g1, equiv).inverted()

    left = sorted(g1.bnodes(), key=Term.sort_key)
    right = sorted(g2.bnodes(), key=Term.sort_key)
    penalty = {b: len(incident_triples(g1, b)) for b in left}
    penalty_right = {b: len(incident_triples(g2, b)) for b in right}
    neighbors = {b: _PairContext._bnode_neighbors(g1, b) for b in left}
    dist_memo: dict[tuple, int] = {}

    def dist(b1: Term, b2: Term, m: dict[Term, Term]) -> int:
        # The distance depends on m only through b1's bnode neighbors.
        relevant = tuple(
            (n.value, m[n].value if n in m else None) for n in neighbors[b1]
        )
        key = (b1, b2, relevant)
        if key not in dist_memo:
            dist_memo[key] = _oracle_dist(g1, g2, b1, b2, m, equiv)
        return dist_memo[key]

    best: Optional[tuple[int, tuple, dict[Term, Term]]] = None
    for r in range(len(left) + 1):
        for subset in itertools.combinations(left, r):
            for images in itertools.permutations(right, r):
                m = dict(zip(subset, images))
                taken = set(images)
                cost = sum(dist(b1, m[b1], m) for b1 in subset)
                cost += sum(penalty[b] for b in left if b not in m)
                cost += sum(penalty_right[b] for b in right if b not in taken)
                key = tuple(sorted((a.value, b.value) for a, b in m.items()))
                if best is None or (cost, key) < (best[0], best[1]):
                    best = (cost, key, m)
    assert best is not None
    return BnodeMapping(best[2], cost=best[0], method=BRUTE_FORCE)


# -- mapping file format -----------------------------------------------------


def format_mapping(mapping: BnodeMapping) -> str:
    lines = [f"M {a.value} {b.value}" for a, b in mapping.sorted_pairs()]
    lines.append(f"# cost={mapping.cost} method={mapping.method or 'unknown'}")
    return "".join(line + "\n" for line in lines)


def parse_mapping(text: str) -> BnodeMapping:
    pairs: dict[Term, Term] = {}
    cost = 0
    method = "loaded"
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            for part in line[1:].split():
                if part.startswith("cost="):
                    cost = int(part.split("=", 1)[1])
                elif part.startswith("method="):
                    method = part.split("=", 1)[1]
            continue
        parts = line.split()
        if len(parts) != 3 or parts[0] != "M":
            raise ValueError(f"line {line_no}: malformed mapping line: {line!r}")
        if not all(ntriples.LABEL_RE.fullmatch(p) for p in parts[1:]):
            raise ValueError(f"line {line_no}: bad bnode label in: {line!r}")
        pairs[bnode(parts[1])] = bnode(parts[2])
    return BnodeMapping(pairs, cost=cost, method=method)
