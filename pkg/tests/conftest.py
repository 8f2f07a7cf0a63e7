import random
from itertools import product

import pytest

from konigcolor.core import FiniteMultigraph, L, R

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def record_criterion():
    def record(number, ok, detail=""):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return record


# -- named graphs ----------------------------------------------------------------


def cycle(n):
    return FiniteMultigraph.from_pairs([(i, (i + 1) % n) for i in range(n)])


def path(n):
    return FiniteMultigraph.from_pairs([(i, i + 1) for i in range(n - 1)])


def complete_bipartite(a, b):
    return FiniteMultigraph.from_pairs([(i, a + j) for i in range(a) for j in range(b)],
                                       bipartition={**{i: L for i in range(a)},
                                                    **{a + j: R for j in range(b)}})


def triangle():
    return FiniteMultigraph.from_pairs([(0, 1), (1, 2), (2, 0)])


def star(leaves):
    return FiniteMultigraph.from_pairs([(0, i) for i in range(1, leaves + 1)])


def petersen():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return FiniteMultigraph.from_pairs(outer + spokes + inner)


# -- random generators -----------------------------------------------------------


def random_bipartite_multigraph(rng, max_vertices=40, max_edges=80, max_deg=6, simple=False):
    nl = rng.randint(1, max_vertices // 2)
    nr = rng.randint(1, max_vertices - nl)
    cap = rng.randint(1, max_deg)
    left = list(range(nl))
    right = list(range(nl, nl + nr))
    deg = {v: 0 for v in left + right}
    pairs, seen = [], set()
    for _ in range(rng.randint(1, max_edges) * 3):
        if len(pairs) >= max_edges:
            break
        u, v = rng.choice(left), rng.choice(right)
        if deg[u] >= cap or deg[v] >= cap or (simple and (u, v) in seen):
            continue
        seen.add((u, v))
        pairs.append((u, v))
        deg[u] += 1
        deg[v] += 1
    side = {**{v: L for v in left}, **{v: R for v in right}}
    return FiniteMultigraph.from_pairs(pairs, left + right, side)


def random_graph(rng, max_vertices=30, n=4, max_edges=60, simple=True):
    nv = rng.randint(2, max_vertices)
    deg = [0] * nv
    pairs, seen = [], set()
    for _ in range(max_edges * 3):
        if len(pairs) >= max_edges:
            break
        u, v = rng.sample(range(nv), 2)
        key = frozenset((u, v))
        if deg[u] >= n or deg[v] >= n or (simple and key in seen):
            continue
        seen.add(key)
        pairs.append((u, v))
        deg[u] += 1
        deg[v] += 1
    return FiniteMultigraph.from_pairs(pairs, range(nv))


def random_simple_graph(rng, max_vertices=30):
    nv = rng.randint(2, max_vertices)
    p = rng.uniform(0.05, 0.5)
    pairs = [(u, v) for u in range(nv) for v in range(u + 1, nv) if rng.random() < p]
    return FiniteMultigraph.from_pairs(pairs, range(nv))


def random_regular_bipartite(rng, n, half, simple=False):
    """Union of n perfect matchings between two sides of size ``half``.

    The simple variant uses n distinct cyclic shifts of one random
    permutation, so no pair repeats; it needs ``half >= n``.
    """
    if simple:
        if half < n:
            raise ValueError("a simple n-regular bipartite graph needs half >= n")
        perm = list(range(half))
        rng.shuffle(perm)
        shifts = rng.sample(range(half), n)
        pairs = [(i, half + perm[(i + s) % half]) for s in shifts for i in range(half)]
    else:
        pairs = []
        for _ in range(n):
            perm = list(range(half))
            rng.shuffle(perm)
            pairs += [(i, half + perm[i]) for i in range(half)]
    side = {**{i: L for i in range(half)}, **{half + i: R for i in range(half)}}
    return FiniteMultigraph.from_pairs(pairs, range(2 * half), side)


def random_point_set(rng, n, max_points=30, size=12):
    rows, cols = {}, {}
    pts = set()
    for _ in range(max_points * 4):
        if len(pts) >= max_points:
            break
        r, c = rng.randrange(size), rng.randrange(size)
        if (r, c) in pts or rows.get(r, 0) >= n or cols.get(c, 0) >= n:
            continue
        pts.add((r, c))
        rows[r] = rows.get(r, 0) + 1
        cols[c] = cols.get(c, 0) + 1
    return pts


# -- independent oracles ---------------------------------------------------------


def proper_by_scan(g, colors):
    """Direct pairwise adjacency scan; no shared code with the library checker."""
    for i in range(g.m):
        for j in range(i + 1, g.m):
            if colors[i] == colors[j] and set(g.endpoints(i)) & set(g.endpoints(j)):
                return False
    return True


def all_colorings(g, k):
    """Every proper k-edge-coloring by exhaustive product enumeration."""
    return [c for c in product(range(1, k + 1), repeat=g.m) if proper_by_scan(g, c)]


def first_fit_by_hand(edges, order):
    """Step-by-step first-fit simulation over explicit endpoint pairs."""
    colors = {}
    for e in order:
        taken = {colors[f] for f in colors if set(edges[f]) & set(edges[e])}
        c = 1
        while c in taken:
            c += 1
        colors[e] = c
    return [colors[e] for e in range(len(edges))]


@pytest.fixture
def rng():
    return random.Random(20261015)
