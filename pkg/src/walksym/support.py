"""Support graphs of Hermitian matrices and the combinatorics built on them.

Vertices are 0-based integers. Edges are stored as sorted pairs ``(j, k)``
with ``j < k``; self-loops are tracked separately and never take part in
bipartiteness or cycle-basis computations.

A cycle is a tuple of vertices ``(i1, ..., ik)`` describing the closed walk
``i1 -> i2 -> ... -> ik -> i1``. A 1-tuple is a self-loop and a 2-tuple
``(j, k)`` the back-and-forth walk along an edge.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .hermitian import max_abs

SUPPORT_RTOL = 1e-12


def default_support_tol(h) -> float:
    return SUPPORT_RTOL * max_abs(h)


@dataclass(frozen=True)
class SupportGraph:
    n: int
    edges: frozenset
    loops: frozenset
    adjacency: tuple = field(repr=False, compare=False)
    components: tuple = field(compare=False)

    @classmethod
    def from_edges(cls, n, edges, loops=()):
        edges = frozenset((min(j, k), max(j, k)) for j, k in edges if j != k)
        adj = [[] for _ in range(n)]
        for j, k in edges:
            adj[j].append(k)
            adj[k].append(j)
        adjacency = tuple(tuple(sorted(a)) for a in adj)
        return cls(n, edges, frozenset(loops), adjacency, _components(n, adjacency))

    def has_edge(self, j, k) -> bool:
        return (min(j, k), max(j, k)) in self.edges

    def component_of(self) -> list[int]:
        label = [0] * self.n
        for c, comp in enumerate(self.components):
            for v in comp:
                label[v] = c
        return label


def _components(n, adjacency):
    seen = [False] * n
    comps = []
    for root in range(n):
        if seen[root]:
            continue
        seen[root] = True
        comp, stack = [], [root]
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in adjacency[v]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        comps.append(tuple(sorted(comp)))
    return tuple(comps)


def support(h, tol: float | None = None) -> SupportGraph:
    """Support graph of ``h``: an edge wherever ``|H[j][k]| > tol``.

    ``tol`` defaults to ``1e-12 * max|H|``.
    """
    h = np.asarray(h)
    if tol is None:
        tol = default_support_tol(h)
    mag = np.abs(h)
    n = h.shape[0]
    js, ks = np.nonzero(np.triu(mag > tol, k=1))
    loops = [int(j) for j in range(n) if mag[j, j] > tol]
    return SupportGraph.from_edges(n, zip(js.tolist(), ks.tolist()), loops)


@dataclass(frozen=True)
class Bipartition:
    """Two-colouring of a graph; ``side[v]`` is 0 (side A) or 1 (side B).

    Each component's lowest-index vertex is placed on side A.
    """

    side: tuple

    def side_a(self):
        return [v for v, s in enumerate(self.side) if s == 0]


@dataclass(frozen=True)
class OddCycle:
    """Certificate of non-bipartiteness: a closed walk of odd length."""

    cycle: tuple


def is_bipartite(g: SupportGraph) -> Bipartition | OddCycle:
    """Two-colour ``g`` by BFS, or return an odd cycle proving it impossible."""
    side = [-1] * g.n
    parent = [-1] * g.n
    for comp in g.components:
        root = comp[0]
        side[root] = 0
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for w in g.adjacency[v]:
                if side[w] < 0:
                    side[w] = 1 - side[v]
                    parent[w] = v
                    queue.append(w)
                elif side[w] == side[v]:
                    return OddCycle(_close_cycle(v, w, parent))
    return Bipartition(tuple(side))


def _path_to_root(v, parent):
    path = [v]
    while parent[path[-1]] >= 0:
        path.append(parent[path[-1]])
    return path


def _tree_path(u, v, parent):
    """Vertices on the tree path from u to v (inclusive)."""
    pu = _path_to_root(u, parent)
    pv = _path_to_root(v, parent)
    on_pv = set(pv)
    lca = next(x for x in pu if x in on_pv)
    up = pu[: pu.index(lca) + 1]
    down = pv[: pv.index(lca)]
    return up + down[::-1]


def _close_cycle(u, v, parent):
    # tree path u -> v followed by the non-tree edge v -> u
    return canonical_cycle(_tree_path(u, v, parent))


def canonical_cycle(cycle) -> tuple:
    """Rotate a cycle to start at its smallest vertex, heading toward the
    smaller of that vertex's two cycle neighbours."""
    cycle = list(cycle)
    k = len(cycle)
    if k <= 2:
        i = cycle.index(min(cycle))
        return tuple(cycle[i:] + cycle[:i])
    i = cycle.index(min(cycle))
    rotated = cycle[i:] + cycle[:i]
    if rotated[-1] < rotated[1]:
        rotated = [rotated[0]] + rotated[:0:-1]
    return tuple(rotated)


@dataclass(frozen=True)
class SpanningForest:
    parent: tuple
    tree_edges: frozenset
    chords: tuple
    order: tuple


def spanning_forest(g: SupportGraph) -> SpanningForest:
    """Deterministic BFS forest.

    Each component is searched from its lowest-index vertex and neighbours
    are visited in ascending order. ``order`` lists vertices in discovery
    order, so every vertex appears after its parent.
    """
    parent = [-1] * g.n
    seen = [False] * g.n
    tree = set()
    order = []
    for comp in g.components:
        root = comp[0]
        seen[root] = True
        queue = deque([root])
        while queue:
            v = queue.popleft()
            order.append(v)
            for w in g.adjacency[v]:
                if not seen[w]:
                    seen[w] = True
                    parent[w] = v
                    tree.add((min(v, w), max(v, w)))
                    queue.append(w)
    chords = tuple(sorted(g.edges - tree))
    return SpanningForest(tuple(parent), frozenset(tree), chords, tuple(order))


def fundamental_cycles(g: SupportGraph, forest: SpanningForest | None = None) -> list[tuple]:
    """One canonical cycle per chord, in chord order."""
    if forest is None:
        forest = spanning_forest(g)
    return [_close_cycle(u, v, forest.parent) for u, v in forest.chords]


def is_tree(g: SupportGraph) -> bool:
    """True when the loop-free support is a forest (each component a tree)."""
    return len(g.edges) == g.n - len(g.components)
