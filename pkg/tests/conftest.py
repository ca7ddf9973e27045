"""Shared fixtures: the construction grid and random-instance generators."""

import random

import pytest

from seqext.coloring import Hypergraph
from seqext.construct import build_formation_witness
from seqext.sequences import Sequence

# r in {2,3}, q in {r..r+2}, x in {r+1..7}, t in {2,3,4}
GRID_PARAMS = [
    (r, q, x, t)
    for r in (2, 3)
    for q in (r, r + 1, r + 2)
    for x in range(r + 1, 8)
    for t in (2, 3, 4)
]


@pytest.fixture(scope="session")
def grid_builds():
    """All construction-grid witnesses with their traces."""
    out = []
    for params in GRID_PARAMS:
        seq, trace = build_formation_witness(*params)
        out.append((params, seq, trace))
    return out


def random_sequence(rng: random.Random, max_alpha: int = 5, max_len: int = 20) -> Sequence:
    alpha = rng.randint(1, max_alpha)
    length = rng.randint(0, max_len)
    return Sequence(tuple(rng.randint(1, alpha) for _ in range(length)))


def random_hypergraph(rng: random.Random, max_k: int = 5, max_n: int = 12):
    """A k-uniform hypergraph with pairwise intersections <= y, plus its y."""
    k = rng.randint(2, max_k)
    y = rng.randint(1, k - 1)
    n = rng.randint(k, max_n)
    edges: list[frozenset] = []
    for _ in range(rng.randint(1, 3 * n)):
        e = frozenset(rng.sample(range(1, n + 1), k))
        if all(len(e & f) <= y for f in edges):
            edges.append(e)
    return Hypergraph(n, k, tuple(edges)), y
