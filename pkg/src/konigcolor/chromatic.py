"""Edge-coloring algorithms and the decompositions built on them."""

from __future__ import annotations

from typing import Iterable, Optional, Sequence

from .core import (
    BudgetExceeded,
    EdgeColoring,
    FiniteMultigraph,
    MatchingPartition,
    PointSet,
    PreconditionError,
    TransversalPartition,
    UnsupportedMultigraph,
    bipartition_of,
    check_proper,
    coloring_to_matchings,
    coloring_to_partition,
    matrix_to_graph,
    max_degree,
)

BRUTEFORCE_EDGE_BUDGET = 20


def _check_order(g: FiniteMultigraph, order: Optional[Sequence[int]]) -> list[int]:
    if order is None:
        return list(range(g.m))
    order = list(order)
    if sorted(order) != list(range(g.m)):
        raise PreconditionError("edge order is not a permutation of the edge ids", order)
    return order


def _check_degree_bound(g: FiniteMultigraph, n: int) -> None:
    inc = g.incidence()
    for v in g.vertices:
        if len(inc[v]) > n:
            raise PreconditionError(f"vertex {v} has degree {len(inc[v])} > {n}", v)


def greedy_edge_color(g: FiniteMultigraph, order: Optional[Sequence[int]] = None,
                      n: Optional[int] = None) -> EdgeColoring:
    """First-fit coloring: each edge, in ``order``, takes the least color free at both ends.

    With every degree at most ``n`` no edge sees more than ``2n - 2`` used
    colors, so the result never exceeds ``2n - 1``.
    """
    if n is None:
        n = max_degree(g)
    if n < 1 and g.m:
        raise PreconditionError("degree bound must be at least 1", n)
    _check_degree_bound(g, n)
    used: dict[int, set[int]] = {v: set() for v in g.vertices}
    assignment: dict[int, int] = {}
    for eid in _check_order(g, order):
        u, v = g.endpoints(eid)
        color = 1
        while color in used[u] or color in used[v]:
            color += 1
        assignment[eid] = color
        used[u].add(color)
        used[v].add(color)
    return EdgeColoring(max(assignment.values(), default=0), assignment)


def koenig_edge_color(g: FiniteMultigraph) -> EdgeColoring:
    """Color a bipartite multigraph with exactly max-degree colors.

    Edges are inserted one at a time. For edge ``uv`` take ``a`` missing at
    ``u`` and ``b`` missing at ``v``; if ``a`` is taken at ``v``, swap ``a``
    and ``b`` along the alternating path leaving ``v``, then color ``uv`` with
    ``a``. Bipartiteness keeps that path away from ``u``.
    """
    bipartition_of(g)  # raises NotBipartite with an odd cycle
    delta = max_degree(g)
    # at[x][c] = edge id colored c at x
    at: dict[int, dict[int, int]] = {v: {} for v in g.vertices}
    color: dict[int, int] = {}

    def least_missing(x: int) -> int:
        c = 1
        while c in at[x]:
            c += 1
        return c

    for eid, u, v in g.edges:
        a, b = least_missing(u), least_missing(v)
        if a in at[v]:
            path = []
            x, c = v, a
            while c in at[x]:
                e = at[x][c]
                path.append(e)
                y, z = g.endpoints(e)
                x = z if y == x else y
                c = b if c == a else a
            for e in path:
                y, z = g.endpoints(e)
                old = color[e]
                del at[y][old], at[z][old]
            for e in path:
                y, z = g.endpoints(e)
                new = b if color[e] == a else a
                color[e] = new
                at[y][new] = at[z][new] = e
        color[eid] = a
        at[u][a] = at[v][a] = eid
    assert max(color.values(), default=0) <= delta
    return EdgeColoring(delta, color)


def vizing_edge_color(g: FiniteMultigraph) -> EdgeColoring:
    """Color a simple graph with at most max-degree + 1 colors (Misra-Gries fans)."""
    pair = g.parallel_pair()
    if pair is not None:
        raise UnsupportedMultigraph(f"edges {pair[0]} and {pair[1]} are parallel", pair)
    delta = max_degree(g)
    if delta == 0:
        return EdgeColoring(0, {})
    palette = range(1, delta + 2)
    edge_id = {}
    nbrs: dict[int, list[int]] = {v: [] for v in g.vertices}
    for eid, u, v in g.edges:
        edge_id[u, v] = edge_id[v, u] = eid
        nbrs[u].append(v)
        nbrs[v].append(u)
    color: dict[int, int] = {}
    at: dict[int, dict[int, int]] = {v: {} for v in g.vertices}  # x -> color -> neighbor

    def free(x: int) -> int:
        return next(c for c in palette if c not in at[x])

    def is_free(x: int, c: int) -> bool:
        return c not in at[x]

    def set_color(x: int, y: int, c: int) -> None:
        color[edge_id[x, y]] = c
        at[x][c] = y
        at[y][c] = x

    def clear(x: int, y: int) -> None:
        c = color.pop(edge_id[x, y])
        del at[x][c], at[y][c]

    for eid, u, v in g.edges:
        fan = [v]
        in_fan = {v}
        extended = True
        while extended:
            extended = False
            for w in nbrs[u]:
                e = edge_id[u, w]
                if w not in in_fan and e in color and is_free(fan[-1], color[e]):
                    fan.append(w)
                    in_fan.add(w)
                    extended = True
                    break
        c = free(u)
        d = free(fan[-1])

        # invert the c/d path leaving u; it starts with the d-edge at u
        path = []
        x, want = u, d
        while want in at[x]:
            y = at[x][want]
            path.append((x, y))
            x = y
            want = c if want == d else d
        old = [color[edge_id[x, y]] for x, y in path]
        for x, y in path:
            clear(x, y)
        for (x, y), col in zip(path, old):
            set_color(x, y, d if col == c else c)

        # longest prefix of the fan that is still a fan, ending where d is free
        stop = None
        for i, w in enumerate(fan):
            if i > 0:
                e = edge_id[u, w]
                if e not in color or not is_free(fan[i - 1], color[e]):
                    break
            if is_free(w, d):
                stop = i
                break
        assert stop is not None, "no fan vertex with the inverted color free"
        for i in range(stop):
            nxt = color[edge_id[u, fan[i + 1]]]
            clear(u, fan[i + 1])
            set_color(u, fan[i], nxt)
        set_color(u, fan[stop], d)
    return EdgeColoring(delta + 1, color)


def decompose_matchings(g: FiniteMultigraph) -> MatchingPartition:
    """Split an n-regular bipartite graph into n perfect matchings."""
    bipartition_of(g)
    inc = g.incidence()
    degrees = {v: len(inc[v]) for v in g.vertices}
    if degrees:
        n = max(degrees.values())
        for v in g.vertices:
            if degrees[v] != n:
                raise PreconditionError(f"graph is not regular: vertex {v} has degree {degrees[v]}, expected {n}", v)
    c = koenig_edge_color(g)
    part = coloring_to_matchings(g, c, complete=True)
    part.validate(g)
    return part


def decompose_transversals(s: Iterable[tuple[int, int]], n: int) -> TransversalPartition:
    """Write ``s`` as at most ``n`` partial transversals via its bipartite graph."""
    s = PointSet(s)
    for r, cnt in sorted(s.row_counts().items()):
        if cnt > n:
            raise PreconditionError(f"row {r} has {cnt} points > {n}", ("row", r))
    for c, cnt in sorted(s.col_counts().items()):
        if cnt > n:
            raise PreconditionError(f"column {c} has {cnt} points > {n}", ("col", c))
    g = matrix_to_graph(s)
    part = coloring_to_partition(g, koenig_edge_color(g), s)
    part.validate(s)
    return part


def _search_order(g: FiniteMultigraph) -> list[int]:
    """Edges of a max-degree vertex first, then breadth-first along shared endpoints."""
    inc = g.incidence()
    order: list[int] = []
    placed: set[int] = set()
    verts = sorted(g.vertices, key=lambda v: (-len(inc[v]), v))
    for start in verts:
        frontier = [start]
        while frontier:
            nxt = []
            for x in frontier:
                for e in inc[x]:
                    if e not in placed:
                        placed.add(e)
                        order.append(e)
                        a, b = g.endpoints(e)
                        nxt.append(b if a == x else a)
            frontier = nxt
    return order


def is_k_edge_colorable(g: FiniteMultigraph, k: int,
                        budget: int = BRUTEFORCE_EDGE_BUDGET) -> Optional[EdgeColoring]:
    """Exhaustive backtracking; returns a k-coloring or None."""
    if g.m > budget:
        raise BudgetExceeded(f"{g.m} edges exceeds the brute-force budget of {budget}")
    if g.m == 0:
        return EdgeColoring(k, {})
    order = _search_order(g)
    ends = [g.endpoints(e) for e in order]
    used: dict[int, set[int]] = {v: set() for v in g.vertices}
    chosen = [0] * len(order)

    def place(i: int, top: int) -> bool:
        if i == len(order):
            return True
        u, v = ends[i]
        # a color beyond top+1 is a relabeling of top+1
        for c in range(1, min(k, top + 1) + 1):
            if c in used[u] or c in used[v]:
                continue
            used[u].add(c)
            used[v].add(c)
            chosen[i] = c
            if place(i + 1, max(top, c)):
                return True
            used[u].discard(c)
            used[v].discard(c)
        return False

    if not place(0, 0):
        return None
    return EdgeColoring(k, {e: chosen[i] for i, e in enumerate(order)})


def chromatic_index_bruteforce(g: FiniteMultigraph, budget: int = BRUTEFORCE_EDGE_BUDGET) -> int:
    """Least k admitting a proper k-edge-coloring, trying k = 1, 2, ... in turn."""
    if g.m > budget:
        raise BudgetExceeded(f"{g.m} edges exceeds the brute-force budget of {budget}")
    if g.m == 0:
        return 0
    k = 1
    while True:
        found = is_k_edge_colorable(g, k, budget)
        if found is not None:
            assert check_proper(g, found)[0]
            return k
        k += 1
