"""Directed graphs on a set family, set maps, and the edge-based checks.

Vertices are family indices.  ``SetGraph`` keeps its edge list sorted so
that every report built from it is ordered deterministically.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

from .metric import tail_window

EDGE = "edge"
PATH = "path"


@dataclass(frozen=True)
class SetGraph:
    n_vertices: int
    edges: tuple
    include_diagonal: bool = True

    def __post_init__(self):
        es = set()
        for e in self.edges:
            i, j = (int(x) for x in e)
            if not (0 <= i < self.n_vertices and 0 <= j < self.n_vertices):
                raise IndexError(f"edge {e} has an endpoint outside 0..{self.n_vertices - 1}")
            es.add((i, j))
        if self.include_diagonal:
            es.update((i, i) for i in range(self.n_vertices))
        object.__setattr__(self, "edges", tuple(sorted(es)))

    @classmethod
    def build(cls, n_vertices: int, edges: Iterable = (), diagonal: bool = True):
        return cls(n_vertices, tuple(edges), diagonal)

    @classmethod
    def complete(cls, n_vertices: int):
        return cls(n_vertices, tuple((i, j) for i in range(n_vertices) for j in range(n_vertices)), True)

    @cached_property
    def edge_set(self) -> frozenset:
        return frozenset(self.edges)

    @cached_property
    def successors(self) -> tuple:
        out = [[] for _ in range(self.n_vertices)]
        for i, j in self.edges:
            out[i].append(j)
        return tuple(tuple(s) for s in out)

    def has_edge(self, i, j) -> bool:
        return (i, j) in self.edge_set

    @property
    def has_diagonal(self) -> bool:
        return all((i, i) in self.edge_set for i in range(self.n_vertices))


@dataclass(frozen=True)
class SetMap:
    """Self-map on family indices, stored extensionally."""

    image: tuple

    def __post_init__(self):
        img = tuple(int(x) for x in self.image)
        n = len(img)
        for i, t in enumerate(img):
            if not 0 <= t < n:
                raise IndexError(f"image of {i} is {t}, outside the family of size {n}")
        object.__setattr__(self, "image", img)

    def __getitem__(self, i) -> int:
        return self.image[i]

    def __len__(self):
        return len(self.image)

    def __call__(self, i) -> int:
        return self.image[i]

    @classmethod
    def identity(cls, n):
        return cls(tuple(range(n)))

    @classmethod
    def constant(cls, n, target):
        return cls((target,) * n)


def symmetrize(g: SetGraph) -> SetGraph:
    """Undirected companion: edges together with their reversals."""
    return SetGraph(g.n_vertices, g.edges + tuple((j, i) for i, j in g.edges), g.include_diagonal)


def has_path(g: SetGraph, src: int, dst: int):
    """Reachability along at least one edge, with a witness path.

    Returns ``(found, path)``.  The witness is a shortest path by edge count,
    ties going to the lexicographically smallest vertex sequence; a loop at
    ``src == dst`` gives ``[src]``.
    """
    if src == dst and g.has_edge(src, src):
        return True, [src]
    parent = {}
    queue = deque()
    for j in g.successors[src]:
        if j not in parent:
            parent[j] = src
            queue.append(j)
    # BFS over sorted successor lists keeps first-discovered parents lex-minimal
    while queue:
        v = queue.popleft()
        if v == dst:
            path = [v]
            while True:
                v = parent[v]
                path.append(v)
                if v == src:
                    break
            path.reverse()
            return True, path
        for j in g.successors[v]:
            if j not in parent:
                parent[j] = v
                queue.append(j)
    return False, []


@dataclass
class PreservationReport:
    mode: str
    checked: int
    violations: list = field(default_factory=list)

    @property
    def preserved(self) -> bool:
        return not self.violations

    def to_dict(self):
        return {"mode": self.mode, "checked": self.checked, "preserved": self.preserved,
                "violations": [{"edge": list(e), "image": list(t)} for e, t in self.violations]}


def check_edge_preservation(g: SetGraph, t: SetMap, mode: str = EDGE) -> PreservationReport:
    """Every edge (U, V) must map to an edge (Edge mode) or path (Path mode) (TU, TV)."""
    if mode not in (EDGE, PATH):
        raise ValueError(f"mode must be {EDGE!r} or {PATH!r}")
    if len(t) != g.n_vertices:
        raise ValueError("graph and map are over different families")
    bad = []
    for u, v in g.edges:
        img = (t[u], t[v])
        ok = g.has_edge(*img) if mode == EDGE else has_path(g, *img)[0]
        if not ok:
            bad.append(((u, v), img))
    return PreservationReport(mode, len(g.edges), bad)


def compute_YT(g: SetGraph, t: SetMap) -> list:
    """Vertices U with (U, T(U)) an edge."""
    return [u for u in range(g.n_vertices) if g.has_edge(u, t[u])]


def check_property_Pstar(g: SetGraph, trajectory, limit: int) -> bool:
    """Finite-scale subsequence-edge condition.

    True iff some element of the final window of ``trajectory`` is joined to
    ``limit`` in the symmetrized graph.
    """
    if len(trajectory) == 0:
        raise ValueError("trajectory must be nonempty")
    sym = symmetrize(g)
    w = tail_window(len(trajectory))
    return any(sym.has_edge(u, limit) for u in trajectory[-w:])
