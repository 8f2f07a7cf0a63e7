"""Graphs, point sets, colorings and partitions, plus their validity checkers.

Everything here is immutable once built. Points are stored as ``(row, col)``.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional

L, R = "L", "R"


class GraphError(ValueError):
    """Base class for malformed or unsupported inputs."""


class MalformedColoring(GraphError):
    pass


class UnsupportedMultigraph(GraphError):
    def __init__(self, message: str, edges: tuple[int, int]):
        super().__init__(message)
        self.edges = edges


class NotBipartite(GraphError):
    def __init__(self, cycle: list[int]):
        super().__init__(f"graph is not bipartite; odd cycle {cycle}")
        self.cycle = cycle


class ImproperColoring(GraphError):
    def __init__(self, witness: tuple[int, int]):
        super().__init__(f"coloring is not proper; edges {witness[0]} and {witness[1]} conflict")
        self.witness = witness


class PreconditionError(GraphError):
    """An algorithm's input bound is violated; ``witness`` names the culprit."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class BudgetExceeded(RuntimeError):
    """A brute-force routine refused an instance larger than its budget."""


@dataclass(frozen=True)
class FiniteMultigraph:
    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int, int], ...]
    bipartition: Optional[Mapping[int, str]] = None
    # vertex -> row/column number; set by matrix_to_graph so the inverse is exact
    side_index: Optional[Mapping[int, int]] = field(default=None, compare=False)

    def __post_init__(self):
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise GraphError("duplicate vertex ids")
        for v in self.vertices:
            if not isinstance(v, int) or v < 0:
                raise GraphError(f"vertex ids must be naturals, got {v!r}")
        for pos, (eid, u, v) in enumerate(self.edges):
            if eid != pos:
                raise GraphError(f"edge ids must be dense 0..m-1; position {pos} has id {eid}")
            if u not in vs or v not in vs:
                raise GraphError(f"edge {eid} has an undeclared endpoint")
            if u == v:
                raise GraphError(f"edge {eid} is a loop at {u}")
        if self.bipartition is not None:
            for v in self.vertices:
                if self.bipartition.get(v) not in (L, R):
                    raise GraphError(f"vertex {v} has no side in the bipartition")
            for eid, u, v in self.edges:
                if self.bipartition[u] == self.bipartition[v]:
                    raise GraphError(f"edge {eid} joins two {self.bipartition[u]} vertices")

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]], vertices: Iterable[int] = (),
                   bipartition: Optional[Mapping[int, str]] = None) -> "FiniteMultigraph":
        pairs = [(int(u), int(v)) for u, v in pairs]
        vs = set(vertices)
        for u, v in pairs:
            vs.update((u, v))
        edges = tuple((i, u, v) for i, (u, v) in enumerate(pairs))
        return cls(tuple(sorted(vs)), edges, dict(bipartition) if bipartition else None)

    @property
    def m(self) -> int:
        return len(self.edges)

    def endpoints(self, eid: int) -> tuple[int, int]:
        _, u, v = self.edges[eid]
        return u, v

    def incidence(self) -> dict[int, list[int]]:
        """vertex -> incident edge ids, in edge-id order."""
        inc: dict[int, list[int]] = {v: [] for v in self.vertices}
        for eid, u, v in self.edges:
            inc[u].append(eid)
            inc[v].append(eid)
        return inc

    def degree(self, v: int) -> int:
        return sum((u == v) + (w == v) for _, u, w in self.edges)

    def is_simple(self) -> bool:
        return self.parallel_pair() is None

    def parallel_pair(self) -> Optional[tuple[int, int]]:
        seen: dict[frozenset, int] = {}
        for eid, u, v in self.edges:
            key = frozenset((u, v))
            if key in seen:
                return seen[key], eid
            seen[key] = eid
        return None


@dataclass(frozen=True)
class EdgeColoring:
    palette_size: int
    assignment: Mapping[int, int]

    @property
    def colors_used(self) -> int:
        return len(set(self.assignment.values()))

    def as_list(self) -> list[int]:
        return [self.assignment[e] for e in sorted(self.assignment)]


class PointSet(frozenset):
    """A finite set of ``(row, col)`` pairs of naturals."""

    def __new__(cls, points: Iterable[tuple[int, int]] = ()):
        pts = []
        for p in points:
            r, c = p
            if r < 0 or c < 0:
                raise GraphError(f"point {p} has a negative coordinate")
            pts.append((int(r), int(c)))
        return super().__new__(cls, pts)

    def sorted(self) -> list[tuple[int, int]]:
        return sorted(self)

    def row_counts(self) -> Counter:
        return Counter(r for r, _ in self)

    def col_counts(self) -> Counter:
        return Counter(c for _, c in self)

    def transpose(self) -> "PointSet":
        return PointSet((c, r) for r, c in self)

    def max_line_count(self) -> int:
        return max([*self.row_counts().values(), *self.col_counts().values(), 0])

    def __repr__(self):
        return f"PointSet({self.sorted()})"


def is_partial_transversal(points: Iterable[tuple[int, int]]) -> bool:
    rows, cols = set(), set()
    for r, c in points:
        if r in rows or c in cols:
            return False
        rows.add(r)
        cols.add(c)
    return True


@dataclass(frozen=True)
class TransversalPartition:
    blocks: tuple[PointSet, ...]

    def validate(self, source: Optional[PointSet] = None) -> None:
        seen: set = set()
        for i, b in enumerate(self.blocks):
            if seen & b:
                raise GraphError(f"block {i} overlaps an earlier block")
            if not is_partial_transversal(b):
                raise GraphError(f"block {i} is not a partial transversal")
            seen |= b
        if source is not None and seen != set(source):
            raise GraphError("blocks do not cover the source point set")

    def block_of(self, point: tuple[int, int]) -> int:
        for i, b in enumerate(self.blocks):
            if point in b:
                return i
        raise KeyError(point)

    def transpose(self) -> "TransversalPartition":
        return TransversalPartition(tuple(b.transpose() for b in self.blocks))


@dataclass(frozen=True)
class MatchingPartition:
    blocks: tuple[frozenset, ...]
    complete: bool = False

    def validate(self, g: FiniteMultigraph) -> None:
        seen: set = set()
        for i, b in enumerate(self.blocks):
            if seen & b:
                raise GraphError(f"block {i} overlaps an earlier block")
            covered: set = set()
            for eid in b:
                u, v = g.endpoints(eid)
                if u in covered or v in covered:
                    raise GraphError(f"block {i} is not a matching")
                covered.update((u, v))
            if self.complete and covered != set(g.vertices):
                raise GraphError(f"block {i} is not a complete matching")
            seen |= b
        if seen != set(range(g.m)):
            raise GraphError("blocks do not cover the edge set")


def max_degree(g: FiniteMultigraph) -> int:
    deg: Counter = Counter()
    for _, u, v in g.edges:
        deg[u] += 1
        deg[v] += 1
    return max(deg.values(), default=0)


def check_proper(g: FiniteMultigraph, c: EdgeColoring) -> tuple[bool, Optional[tuple[int, int]]]:
    """Return ``(True, None)`` or ``(False, (e, f))`` for the first conflicting pair."""
    missing = [eid for eid, _, _ in g.edges if eid not in c.assignment]
    if missing:
        raise MalformedColoring(f"no color for edge {missing[0]}")
    seen: dict[tuple[int, int], int] = {}
    for eid, u, v in g.edges:
        col = c.assignment[eid]
        for x in (u, v):
            other = seen.get((x, col))
            if other is not None:
                return False, (other, eid)
        seen[(u, col)] = eid
        seen[(v, col)] = eid
    return True, None


def two_color_vertices(g: FiniteMultigraph) -> dict[int, str]:
    """Breadth-first 2-coloring of the vertices, lowest-id root per component.

    Raises NotBipartite carrying an odd cycle as a vertex list.
    """
    adj: dict[int, list[int]] = {v: [] for v in g.vertices}
    for _, u, v in g.edges:
        adj[u].append(v)
        adj[v].append(u)
    side: dict[int, str] = {}
    parent: dict[int, Optional[int]] = {}
    for root in sorted(g.vertices):
        if root in side:
            continue
        side[root] = L
        parent[root] = None
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y in sorted(adj[x]):
                if y not in side:
                    side[y] = R if side[x] == L else L
                    parent[y] = x
                    queue.append(y)
                elif side[y] == side[x]:
                    raise NotBipartite(_odd_cycle(parent, x, y))
    return side


def _odd_cycle(parent, x, y) -> list[int]:
    def chain(v):
        out = []
        while v is not None:
            out.append(v)
            v = parent[v]
        return out

    px, py = chain(x), chain(y)
    on_py = set(py)
    lca = next(v for v in px if v in on_py)
    left = px[: px.index(lca) + 1]
    right = py[: py.index(lca)]
    return left + right[::-1]


def bipartition_of(g: FiniteMultigraph) -> dict[int, str]:
    if g.bipartition is not None:
        return dict(g.bipartition)
    return two_color_vertices(g)


def matrix_to_graph(s: Iterable[tuple[int, int]]) -> FiniteMultigraph:
    """Row i becomes vertex ``2i`` (side L), column j becomes ``2j + 1`` (side R).

    Edge ids follow the sorted order of the points.
    """
    pts = sorted(PointSet(s))
    side: dict[int, str] = {}
    index: dict[int, int] = {}
    edges = []
    for eid, (r, c) in enumerate(pts):
        v, w = 2 * r, 2 * c + 1
        side[v], side[w] = L, R
        index[v], index[w] = r, c
        edges.append((eid, v, w))
    return FiniteMultigraph(tuple(sorted(side)), tuple(edges), side, index)


def row_vertex(i: int) -> int:
    return 2 * i


def col_vertex(j: int) -> int:
    return 2 * j + 1


def graph_to_matrix(g: FiniteMultigraph) -> PointSet:
    """Inverse of :func:`matrix_to_graph`.

    Rows and columns are numbered by ``g.side_index`` when present, otherwise by
    each vertex's rank within its side.
    """
    pair = g.parallel_pair()
    if pair is not None:
        raise UnsupportedMultigraph(f"edges {pair[0]} and {pair[1]} are parallel", pair)
    side = bipartition_of(g)
    if g.side_index is not None:
        index = dict(g.side_index)
    else:
        index = {}
        for s in (L, R):
            for rank, v in enumerate(sorted(v for v in g.vertices if side[v] == s)):
                index[v] = rank
    pts = []
    for _, u, v in g.edges:
        if side[u] == R:
            u, v = v, u
        pts.append((index[u], index[v]))
    return PointSet(pts)


def coloring_to_matchings(g: FiniteMultigraph, c: EdgeColoring, complete: bool = False) -> MatchingPartition:
    ok, witness = check_proper(g, c)
    if not ok:
        raise ImproperColoring(witness)
    groups: dict[int, set] = {}
    for eid in range(g.m):
        groups.setdefault(c.assignment[eid], set()).add(eid)
    blocks = tuple(frozenset(groups[k]) for k in sorted(groups))
    blocks = tuple(sorted(blocks, key=min))
    return MatchingPartition(blocks, complete)


def coloring_to_partition(g: FiniteMultigraph, c: EdgeColoring,
                          points: Optional[Iterable[tuple[int, int]]] = None):
    """Group edges by color.

    With ``points`` (the point set ``g`` was built from) the result is a
    TransversalPartition; otherwise a MatchingPartition of edge ids.
    """
    mp = coloring_to_matchings(g, c)
    if points is None:
        return mp
    pts = sorted(PointSet(points))
    if len(pts) != g.m:
        raise GraphError("point set does not match the graph's edges")
    blocks = tuple(PointSet(pts[e] for e in b) for b in mp.blocks)
    return TransversalPartition(tuple(sorted(blocks, key=min)))
