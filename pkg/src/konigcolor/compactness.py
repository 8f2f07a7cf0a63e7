"""Finite truncations of the tree of prefix colorings of an edge stream.

A node of the tree is a sequence ``sigma`` over ``1..n`` such that coloring
edge ``e(i)`` with ``sigma[i]`` is proper on the first ``len(sigma)`` edges.
The searches below are exhaustive, so every query carries a node budget and
refuses (``BudgetExceeded``) rather than returning a truncated answer.
"""

from __future__ import annotations

from typing import Callable, Iterable, Iterator, Optional, Sequence

from .core import BudgetExceeded, EdgeColoring, FiniteMultigraph, GraphError

NODE_BUDGET = 10**7


class MalformedNode(GraphError):
    pass


class LazyGraph:
    """An edge stream ``s -> e(s)`` over vertex set N, materialized on demand.

    ``edges`` may be any iterable (possibly infinite) of vertex pairs; stage
    order is iteration order. ``bound_fn``, when given, is checked against
    every materialized edge.
    """

    def __init__(self, edges: Iterable[tuple[int, int]], degree_bound: int,
                 bound_fn: Optional[Callable[[int], int]] = None):
        self._source: Iterator = iter(edges)
        self._edges: list[tuple[int, int]] = []
        self._seen: set[frozenset] = set()
        self._exhausted = False
        self.degree_bound = degree_bound
        self.bound_fn = bound_fn

    @classmethod
    def from_graph(cls, g: FiniteMultigraph, degree_bound: int,
                   order: Optional[Sequence[int]] = None) -> "LazyGraph":
        order = range(g.m) if order is None else order
        return cls([g.endpoints(e) for e in order], degree_bound)

    @classmethod
    def from_adjacency(cls, adjacent: Callable[[int, int], bool], degree_bound: int,
                       bound_fn: Callable[[int], int]) -> "LazyGraph":
        """Derive a stream from an adjacency predicate: vertex by vertex, neighbors up to ``bound_fn``."""

        def gen():
            v = 0
            while True:
                for w in range(v + 1, bound_fn(v) + 1):
                    if adjacent(v, w):
                        yield (v, w)
                v += 1

        return cls(gen(), degree_bound, bound_fn)

    def _pull(self, count: int) -> None:
        while len(self._edges) < count and not self._exhausted:
            try:
                u, v = next(self._source)
            except StopIteration:
                self._exhausted = True
                break
            u, v = int(u), int(v)
            if u == v:
                raise GraphError(f"stage {len(self._edges)}: loop at {u}")
            if self.bound_fn is not None:
                lo, hi = min(u, v), max(u, v)
                if hi > self.bound_fn(lo):
                    raise GraphError(f"stage {len(self._edges)}: edge {lo}-{hi} exceeds bound {self.bound_fn(lo)}")
            key = frozenset((u, v))
            if key in self._seen:
                raise GraphError(f"stage {len(self._edges)}: edge {u}-{v} repeats an earlier stage")
            self._seen.add(key)
            self._edges.append((u, v))

    def edge(self, s: int) -> tuple[int, int]:
        self._pull(s + 1)
        if s >= len(self._edges):
            raise IndexError(f"stream ends after {len(self._edges)} edges")
        return self._edges[s]

    def prefix(self, m: int) -> list[tuple[int, int]]:
        self._pull(m)
        if m > len(self._edges):
            raise IndexError(f"stream ends after {len(self._edges)} edges, {m} requested")
        return self._edges[:m]

    def length(self, limit: Optional[int] = None) -> Optional[int]:
        """Number of edges if the stream ends within ``limit`` (or at all when None)."""
        if limit is None:
            while not self._exhausted:
                self._pull(len(self._edges) + 1024)
            return len(self._edges)
        self._pull(limit + 1)
        return len(self._edges) if self._exhausted else None

    def materialize(self, m: int) -> FiniteMultigraph:
        return FiniteMultigraph.from_pairs(self.prefix(m))


class _Search:
    """Shared incremental state for depth-first walks of the prefix tree."""

    def __init__(self, g: LazyGraph, n: int, m: int, budget: int):
        self.edges = g.prefix(m)
        self.n = n
        self.m = m
        self.budget = budget
        self.visited = 0
        self.used: dict[int, set[int]] = {}
        for u, v in self.edges:
            self.used.setdefault(u, set())
            self.used.setdefault(v, set())
        self.sigma: list[int] = []

    def tick(self) -> None:
        self.visited += 1
        if self.visited > self.budget:
            raise BudgetExceeded(f"prefix-tree search visited more than {self.budget} nodes")

    def children(self) -> Iterator[int]:
        u, v = self.edges[len(self.sigma)]
        for c in range(1, self.n + 1):
            if c not in self.used[u] and c not in self.used[v]:
                yield c

    def push(self, c: int) -> None:
        u, v = self.edges[len(self.sigma)]
        self.used[u].add(c)
        self.used[v].add(c)
        self.sigma.append(c)

    def pop(self) -> None:
        c = self.sigma.pop()
        u, v = self.edges[len(self.sigma)]
        self.used[u].discard(c)
        self.used[v].discard(c)


def is_tree_node(g: LazyGraph, sigma: Sequence[int], n: Optional[int] = None) -> bool:
    n = g.degree_bound if n is None else n
    for c in sigma:
        if not (isinstance(c, int) and 1 <= c <= n):
            raise MalformedNode(f"color {c!r} outside 1..{n}")
    used: dict[int, set[int]] = {}
    for (u, v), c in zip(g.prefix(len(sigma)), sigma):
        cu, cv = used.setdefault(u, set()), used.setdefault(v, set())
        if c in cu or c in cv:
            return False
        cu.add(c)
        cv.add(c)
    return True


def level_counts(g: LazyGraph, m: int, n: Optional[int] = None,
                 budget: int = NODE_BUDGET) -> list[int]:
    """Node counts of the tree at every level ``0..m``."""
    n = g.degree_bound if n is None else n
    st = _Search(g, n, m, budget)
    counts = [0] * (m + 1)

    def walk(depth: int) -> None:
        st.tick()
        counts[depth] += 1
        if depth == m:
            return
        for c in list(st.children()):
            st.push(c)
            walk(depth + 1)
            st.pop()

    walk(0)
    return counts


def level_count(g: LazyGraph, m: int, n: Optional[int] = None, budget: int = NODE_BUDGET) -> int:
    return level_counts(g, m, n, budget)[m]


def find_prefix_path(g: LazyGraph, m: int, n: Optional[int] = None,
                     budget: int = NODE_BUDGET) -> Optional[tuple[int, ...]]:
    """Leftmost node at level ``m``, or None if the tree dies before ``m``."""
    n = g.degree_bound if n is None else n
    st = _Search(g, n, m, budget)

    def walk() -> bool:
        st.tick()
        if len(st.sigma) == m:
            return True
        for c in list(st.children()):
            st.push(c)
            if walk():
                return True
            st.pop()
        return False

    return tuple(st.sigma) if walk() else None


def find_dead_node(g: LazyGraph, n: Optional[int] = None, depth: Optional[int] = None,
                   budget: int = NODE_BUDGET) -> Optional[tuple[int, ...]]:
    """First node, in leftmost depth-first order, with no extension to full depth.

    Full depth is the stream length (the stream must end) unless ``depth`` is
    given.
    """
    n = g.degree_bound if n is None else n
    if depth is None:
        depth = g.length()
    st = _Search(g, n, depth, budget)

    def walk() -> tuple[bool, Optional[tuple[int, ...]]]:
        st.tick()
        if len(st.sigma) == depth:
            return True, None
        here = tuple(st.sigma)
        alive, first = False, None
        for c in list(st.children()):
            st.push(c)
            a, d = walk()
            st.pop()
            alive = alive or a
            if first is None and d is not None:
                first = d
        if not alive:
            return False, here
        return True, first

    return walk()[1]


def path_to_coloring(g: LazyGraph, sigma: Sequence[int]) -> tuple[FiniteMultigraph, EdgeColoring]:
    """The finite graph on the first ``len(sigma)`` edges with sigma as its coloring."""
    fg = g.materialize(len(sigma))
    return fg, EdgeColoring(max(sigma, default=0), dict(enumerate(sigma)))

