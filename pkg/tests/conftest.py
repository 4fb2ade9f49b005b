"""Shared fixtures: the John Lennon / Yoko Ono example graphs and helpers."""

from __future__ import annotations

import random
from pathlib import Path

import pytest

from bnodematch import Graph, Renaming, load_graph, rename_graph
from bnodematch.generator import GenSpec, generate_pair

FIXTURES = Path(__file__).parent / "fixtures"

MUS = "http://www.example.com/music/v0/"
DB = "http://www.dbpedia.org/"
RDF_TYPE = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type"


@pytest.fixture(scope="session")
def g1() -> Graph:
    return load_graph(str(FIXTURES / "g1.nt"), "g1")


@pytest.fixture(scope="session")
def g2() -> Graph:
    return load_graph(str(FIXTURES / "g2.nt"), "g2")


@pytest.fixture(scope="session")
def g2_no_birthday() -> Graph:
    return load_graph(str(FIXTURES / "g2_no_birthday.nt"), "g2nb")


@pytest.fixture(scope="session")
def g3() -> Graph:
    return load_graph(str(FIXTURES / "g3.nt"), "g3")


@pytest.fixture(scope="session")
def g4() -> Graph:
    return load_graph(str(FIXTURES / "g4.nt"), "g4")


def random_relabeling(g: Graph, rng: random.Random, tag: str = "r") -> Renaming:
    """A fresh injective relabeling of all bnodes in ``g``."""
    labels = [f"{tag}{i}" for i in range(len(g.bnodes()))]
    rng.shuffle(labels)
    from bnodematch import bnode

    ordered = sorted(g.bnodes(), key=lambda t: t.sort_key())
    return Renaming({b: bnode(labels[i]) for i, b in enumerate(ordered)})


def relabeled_copy(g: Graph, seed: int = 0) -> Graph:
    rng = random.Random(seed)
    return rename_graph(g, random_relabeling(g, rng))


def small_pair(seed: int, bnodes: int = 4, connectivity: float = 0.0, mutations: int = 2):
    """Convenience wrapper for generated pairs in tests."""
    spec = GenSpec(
        bnode_count=bnodes,
        ground_triples=3,
        connectivity=connectivity,
        mutation_ops=mutations,
        seed=seed,
    )
    return generate_pair(spec)
