"""Finite directed relations and the graph algorithms built on them.

Nodes are dense integer indices into a name table.  A :class:`Relation` is
immutable; every function here is pure.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import (
    CapacityExceeded,
    DuplicateName,
    EmptyUniverse,
    PartitionMismatch,
    UnknownNode,
)

MAX_CLOSURE_NODES = 10_000

Arc = tuple[int, int]


def intern_universe(names: Sequence[str]) -> dict[str, int]:
    """Map each name to its position, rejecting duplicates and empty input."""
    if len(names) == 0:
        raise EmptyUniverse()
    table: dict[str, int] = {}
    for i, name in enumerate(names):
        if name in table:
            raise DuplicateName(name)
        table[name] = i
    return table


@dataclass(frozen=True)
class Relation:
    """A set of arcs over a fixed, ordered universe of named nodes.

    Self-loops are allowed and kept.
    """

    names: tuple[str, ...]
    arcs: frozenset[Arc] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "arcs", frozenset((int(u), int(v)) for u, v in self.arcs))
        intern_universe(self.names)
        n = len(self.names)
        for u, v in self.arcs:
            if not (0 <= u < n):
                raise UnknownNode(u)
            if not (0 <= v < n):
                raise UnknownNode(v)

    @classmethod
    def from_names(cls, names: Sequence[str], arcs: Iterable[tuple[str, str]] = ()) -> Relation:
        index = intern_universe(names)
        try:
            return cls(tuple(names), frozenset((index[u], index[v]) for u, v in arcs))
        except KeyError as exc:
            raise UnknownNode(exc.args[0]) from None

    def __len__(self) -> int:
        return len(self.names)

    @cached_property
    def index(self) -> Mapping[str, int]:
        return {name: i for i, name in enumerate(self.names)}

    @cached_property
    def successors(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in self.names]
        for u, v in self.arcs:
            out[u].append(v)
        return tuple(tuple(sorted(vs)) for vs in out)

    def node(self, name: str) -> int:
        try:
            return self.index[name]
        except KeyError:
            raise UnknownNode(name) from None

    def sorted_arcs(self) -> list[Arc]:
        return sorted(self.arcs)

    def named_arcs(self) -> list[tuple[str, str]]:
        return [(self.names[u], self.names[v]) for u, v in self.sorted_arcs()]

    def label(self, nodes: Iterable[int]) -> list[str]:
        return [self.names[i] for i in sorted(nodes)]

    def __repr__(self) -> str:
        arcs = ", ".join(f"{u}->{v}" for u, v in self.named_arcs())
        return f"Relation({list(self.names)}, {{{arcs}}})"


@dataclass(frozen=True)
class SccPartition:
    """Strongly connected components in reverse topological order.

    Every arc of the source relation goes from a component to one at the same
    or an earlier position, so terminal components come first.
    """

    components: tuple[frozenset[int], ...]
    component_of: tuple[int, ...] = field(repr=False)


@dataclass(frozen=True)
class ReducedGraph:
    """Condensation of a relation: one node per component, no self-loops."""

    partition: SccPartition
    relation: Relation

    @property
    def arcs(self) -> frozenset[Arc]:
        return self.relation.arcs


def scc(rel: Relation) -> SccPartition:
    """Tarjan's algorithm, iterative, visiting nodes and successors in index order."""
    n = len(rel)
    succ = rel.successors
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    found: list[list[int]] = []
    counter = 0

    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, i = work[-1]
            if i < len(succ[v]):
                work[-1] = (v, i + 1)
                w = succ[v][i]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                found.append(comp)

    raw_of = [0] * n
    for c, comp in enumerate(found):
        for v in comp:
            raw_of[v] = c
    return _canonical_order(found, raw_of, rel)


def _canonical_order(found: list[list[int]], raw_of: list[int], rel: Relation) -> SccPartition:
    # Kahn's algorithm on the condensation, emitting a component once all of
    # its successors are emitted; ties go to the smallest member index.
    k = len(found)
    out_deg = [0] * k
    preds: list[set[int]] = [set() for _ in range(k)]
    for u, v in rel.arcs:
        cu, cv = raw_of[u], raw_of[v]
        if cu != cv and cu not in preds[cv]:
            preds[cv].add(cu)
            out_deg[cu] += 1
    heap = [(min(found[c]), c) for c in range(k) if out_deg[c] == 0]
    heapq.heapify(heap)
    order: list[int] = []
    while heap:
        _, c = heapq.heappop(heap)
        order.append(c)
        for p in preds[c]:
            out_deg[p] -= 1
            if out_deg[p] == 0:
                heapq.heappush(heap, (min(found[p]), p))
    components = tuple(frozenset(found[c]) for c in order)
    component_of = [0] * len(rel)
    for pos, comp in enumerate(components):
        for v in comp:
            component_of[v] = pos
    return SccPartition(components, tuple(component_of))


def _component_label(rel: Relation, comp: frozenset[int]) -> str:
    return "{" + ",".join(rel.label(comp)) + "}"


def condense(rel: Relation, part: SccPartition) -> ReducedGraph:
    """Collapse each component of ``part`` to one node, dropping inner arcs."""
    seen: set[int] = set()
    total = 0
    for comp in part.components:
        if not comp:
            raise PartitionMismatch("empty component")
        total += len(comp)
        seen |= comp
    if total != len(rel) or seen != set(range(len(rel))):
        raise PartitionMismatch("components do not partition the universe")
    if len(part.component_of) != len(rel) or any(
        v not in part.components[c] for v, c in enumerate(part.component_of)
    ):
        raise PartitionMismatch("component_of disagrees with components")

    of = part.component_of
    arcs = frozenset((of[u], of[v]) for u, v in rel.arcs if of[u] != of[v])
    names = tuple(_component_label(rel, comp) for comp in part.components)
    return ReducedGraph(part, Relation(names, arcs))


def sinks(rel: Relation) -> frozenset[int]:
    """Nodes whose out-arcs, if any, are all self-loops."""
    return frozenset(
        s for s, out in enumerate(rel.successors) if all(t == s for t in out)
    )


def is_acyclic(rel: Relation) -> bool:
    if any(u == v for u, v in rel.arcs):
        return False
    return all(len(c) == 1 for c in scc(rel).components)


def _check_capacity(rel: Relation) -> None:
    if len(rel) > MAX_CLOSURE_NODES:
        raise CapacityExceeded(len(rel), MAX_CLOSURE_NODES)


def _reach(rel: Relation, start: int) -> set[int]:
    """Nodes reachable from ``start`` by a path of length at least one."""
    succ = rel.successors
    seen: set[int] = set()
    frontier = list(succ[start])
    while frontier:
        v = frontier.pop()
        if v in seen:
            continue
        seen.add(v)
        frontier.extend(w for w in succ[v] if w not in seen)
    return seen


def transitive_closure(rel: Relation) -> Relation:
    _check_capacity(rel)
    arcs = frozenset((u, v) for u in range(len(rel)) for v in _reach(rel, u))
    return Relation(rel.names, arcs)


def reflexive_transitive_closure(rel: Relation) -> Relation:
    closure = transitive_closure(rel)
    return Relation(rel.names, closure.arcs | {(v, v) for v in range(len(rel))})


def restrict(rel: Relation, nodes: Iterable[int]) -> Relation:
    """Induced sub-relation on ``nodes``, re-indexed densely in original order."""
    keep = sorted(set(nodes))
    if not keep:
        raise EmptyUniverse()
    for v in keep:
        if not (isinstance(v, int) and 0 <= v < len(rel)):
            raise UnknownNode(v)
    new_index = {v: i for i, v in enumerate(keep)}
    arcs = frozenset(
        (new_index[u], new_index[v]) for u, v in rel.arcs if u in new_index and v in new_index
    )
    return Relation(tuple(rel.names[v] for v in keep), arcs)
