"""Hypothesis strategies and independent oracles shared by the tests."""

import numpy as np
from hypothesis import strategies as st

from fdgames import FdGame, Relation

SCC_NODES = list("acdefhijkl")
SCC_ARCS = [
    ("a", "c"), ("a", "d"), ("c", "e"), ("e", "f"), ("f", "c"), ("e", "h"),
    ("f", "h"), ("i", "h"), ("h", "i"), ("d", "j"), ("j", "l"), ("l", "k"), ("k", "d"),
]


def node_names(n):
    return [f"n{i}" for i in range(n)]


@st.composite
def relations(draw, min_nodes=1, max_nodes=8, acyclic=False, loops=True):
    n = draw(st.integers(min_nodes, max_nodes))
    pairs = [(u, v) for u in range(n) for v in range(n)]
    if acyclic:
        pairs = [(u, v) for u, v in pairs if u < v]
    elif not loops:
        pairs = [(u, v) for u, v in pairs if u != v]
    arcs = draw(st.sets(st.sampled_from(pairs), max_size=len(pairs))) if pairs else set()
    rel = Relation(tuple(node_names(n)), frozenset(arcs))
    if acyclic:
        # hide the topological order behind a random relabelling
        perm = draw(st.permutations(range(n)))
        rel = Relation(rel.names, frozenset((perm[u], perm[v]) for u, v in rel.arcs))
    return rel


@st.composite
def games(draw, max_situations=12, max_agents=4):
    n = draw(st.integers(1, max_situations))
    k = draw(st.integers(1, max_agents))
    names = tuple(node_names(n))
    pairs = [(u, v) for u in range(n) for v in range(n)]
    density = draw(st.sampled_from([0.1, 0.25, 0.5]))
    seed = draw(st.integers(0, 2**32 - 1))
    rng = np.random.default_rng(seed)
    feas, des = [], []
    for _ in range(k):
        feas.append(Relation(names, frozenset(p for p in pairs if rng.random() < density)))
        des.append(Relation(names, frozenset(p for p in pairs if rng.random() < density)))
    return FdGame(tuple(f"a{i}" for i in range(k)), names, tuple(feas), tuple(des))


def random_game(rng, n, k, density):
    names = tuple(node_names(n))
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    feas, des = [], []
    for _ in range(k):
        feas.append(Relation(names, frozenset(p for p in pairs if rng.random() < density)))
        des.append(Relation(names, frozenset(p for p in pairs if rng.random() < density)))
    return FdGame(tuple(f"a{i}" for i in range(k)), names, tuple(feas), tuple(des))


def reach_matrix(rel):
    """Paths of length >= 1, by squaring the boolean adjacency matrix to a fixpoint."""
    n = len(rel)
    m = np.zeros((n, n), dtype=np.int64)
    for u, v in rel.arcs:
        m[u, v] = 1
    r = m.copy()
    while True:
        nxt = ((r + (r @ r)) > 0).astype(np.int64)
        if (nxt == r).all():
            return r.astype(bool)
        r = nxt
