"""Point-set gadgets whose 2-transversal partitions encode a separation problem.

A gadget ``S_k`` watches two injections ``f`` and ``g`` with disjoint ranges.
Its points are arranged so that in every partition of ``S_k`` into two
partial transversals, ``e1`` and ``e3`` share a block when ``k`` is hit by
``f`` and are split when ``k`` is hit by ``g``.

Coordinates are stored as ``(row, col)``. The basic gadget takes its
coordinates as ``(row, col)`` directly. The staircase gadgets are laid out in
drawing coordinates ``(x, y) = (col, row)`` and swapped on construction;
:meth:`GadgetInstance.figure_coords` gives them back in drawing order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

import sympy

from .core import BudgetExceeded, GraphError, PointSet, TransversalPartition

PARTITION_BUDGET = 24

BASIC, STAIRCASE, TWO_REGULAR = "basic", "staircase", "two_regular"
VARIANTS = (BASIC, STAIRCASE, TWO_REGULAR)

FORCED_TRUE, FORCED_FALSE, UNCONSTRAINED = "forced-true", "forced-false", "unconstrained"


class InjectionError(GraphError):
    pass


class UnboundedLine(GraphError):
    """The candidate points of a line cannot be listed in advance."""


class ForcingFailure(RuntimeError):
    pass


@dataclass(frozen=True)
class InjectionPair:
    """Finite stage tables ``q -> f(q)`` and ``q -> g(q)``.

    Injective, with disjoint ranges. ``stage_bound`` is the number of stages
    revealed; it defaults to one past the largest tabulated stage.
    """

    f_table: Mapping[int, int] = field(default_factory=dict)
    g_table: Mapping[int, int] = field(default_factory=dict)
    stage_bound: Optional[int] = None

    def __post_init__(self):
        for name, table in (("f", self.f_table), ("g", self.g_table)):
            values = list(table.values())
            if len(set(values)) != len(values):
                raise InjectionError(f"{name} is not injective")
            if any(q < 0 for q in table) or any(v < 0 for v in values):
                raise InjectionError(f"{name} has a negative stage or value")
        both = set(self.f_table.values()) & set(self.g_table.values())
        if both:
            raise InjectionError(f"ranges of f and g share {sorted(both)}")
        if self.stage_bound is None:
            stages = [*self.f_table, *self.g_table]
            object.__setattr__(self, "stage_bound", max(stages) + 1 if stages else 0)

    def first_hit(self, k: int, stages: Optional[int] = None) -> Optional[tuple[str, int]]:
        """``('f', q)`` or ``('g', q)`` for the earliest stage below ``stages`` hitting ``k``."""
        stages = self.stage_bound if stages is None else stages
        for q in range(stages):
            if self.f_table.get(q) == k:
                return "f", q
            if self.g_table.get(q) == k:
                return "g", q
        return None

    def f_range(self) -> set[int]:
        return {v for q, v in self.f_table.items() if q < self.stage_bound}

    def g_range(self) -> set[int]:
        return {v for q, v in self.g_table.items() if q < self.stage_bound}


@dataclass(frozen=True)
class GadgetInstance:
    k: int
    variant: str
    points: PointSet
    labels: Mapping[tuple[int, int], str]
    cap: Optional[tuple[str, int]] = None
    stages: int = 0
    # lines left with a single point by truncation: ("row" | "col", index)
    boundary: tuple[tuple[str, int], ...] = ()
    offset: int = 0

    def __post_init__(self):
        if set(self.labels) != set(self.points):
            raise GraphError("labels must cover exactly the points")
        if len(set(self.labels.values())) != len(self.labels):
            raise GraphError("duplicate gadget labels")

    def point(self, tag: str) -> tuple[int, int]:
        for p, t in self.labels.items():
            if t == tag:
                return p
        raise KeyError(tag)

    def tags(self) -> list[str]:
        return [self.labels[p] for p in sorted(self.points)]

    def figure_coords(self) -> dict[str, tuple[int, int]]:
        """tag -> ``(col, row)``, the drawing order used for staircases."""
        return {t: (c, r) for (r, c), t in self.labels.items()}

    @property
    def cap_event(self) -> Optional[str]:
        if self.cap is None:
            return None
        return f"{self.cap[0]}-capped({self.cap[1]})"


def _check_k(k: int, pair: InjectionPair) -> None:
    if k < 0:
        raise InjectionError("k must be a natural number")
    if k in pair.f_range() and k in pair.g_range():
        raise InjectionError(f"{k} lies in the range of both f and g")


def build_basic(k: int, pair: InjectionPair) -> GadgetInstance:
    _check_k(k, pair)
    placed = {(0, 0): "e1", (1, 1): "e2", (1, 2): "e3"}
    hit = pair.first_hit(k)
    if hit is not None:
        kind, q = hit
        placed[(q + 2, 0)] = "e4"
        placed[(q + 2, 1) if kind == "f" else (q + 2, 2)] = "e5"
    return GadgetInstance(k, BASIC, PointSet(placed), placed, hit, pair.stage_bound)


def _stair_points(q: int) -> dict[str, tuple[int, int]]:
    """Drawing positions placed at stage ``q`` regardless of caps."""
    return {
        f"e2,{2 * q + 1}": (3 * q + 3, 3 * q + 1),
        f"e2,{2 * q + 2}": (3 * q + 3, 3 * q + 4),
        f"e3,{2 * q + 1}": (3 * q + 4, 3 * q + 2),
        f"e3,{2 * q + 2}": (3 * q + 4, 3 * q + 5),
        f"e1,{2 * q + 1}": (3 * q + 2, 3 * q),
    }


def _top_of_first_chain(q: int, kind: Optional[str]) -> tuple[int, int]:
    # f-cap joins the second chain's row, g-cap the third's
    return (3 * q + 2, 3 * q + {"f": 4, "g": 5, None: 3}[kind])


def _chain_step(chain: int, q: int) -> dict[str, tuple[int, int]]:
    pts = _stair_points(q)
    if chain == 1:
        return {f"e1,{2 * q + 1}": pts[f"e1,{2 * q + 1}"], f"e1,{2 * q + 2}": _top_of_first_chain(q, None)}
    return {t: p for t, p in pts.items() if t.startswith(f"e{chain},")}


def _staircase_layout(k: int, pair: InjectionPair, stages: int, extend_to: Optional[int] = None):
    """Drawing coordinates for the staircase; ``extend_to`` continues uncapped chains.

    Returns ``(positions, cap, open_chains, last_stage)``.
    """
    fig = {"e1": (0, 0), "e2": (1, 1), "e3": (1, 2)}
    cap = None
    for q in range(stages):
        fig.update(_stair_points(q))
        hit = pair.first_hit(k, q + 1)
        kind = hit[0] if hit is not None and hit[1] == q else None
        fig[f"e1,{2 * q + 2}"] = _top_of_first_chain(q, kind)
        if kind is not None:
            cap = (kind, q)
            break
    last = cap[1] if cap else stages - 1
    if cap is None:
        open_chains = [1, 2, 3]
    else:
        open_chains = [3] if cap[0] == "f" else [2]
    if extend_to is not None:
        for q in range(last + 1, extend_to):
            for chain in open_chains:
                fig.update(_chain_step(chain, q))
        last = max(last, extend_to - 1)
    return fig, cap, open_chains, last


def _chain_top_row(chain: int, q: int) -> int:
    return 3 * q + {1: 3, 2: 4, 3: 5}[chain]


def _instance_from_figure(k, variant, fig, cap, stages, boundary_fig, offset=0) -> GadgetInstance:
    labels = {(y, x): tag for tag, (x, y) in fig.items()}
    boundary = tuple(sorted(("row", i) if axis == "y" else ("col", i) for axis, i in boundary_fig))
    return GadgetInstance(k, variant, PointSet(labels), labels, cap, stages, boundary, offset)


def build_staircase(k: int, pair: InjectionPair, stages: Optional[int] = None) -> GadgetInstance:
    """Staircase gadget run for ``stages`` stages (default: the pair's stage bound)."""
    _check_k(k, pair)
    stages = pair.stage_bound if stages is None else stages
    fig, cap, open_chains, last = _staircase_layout(k, pair, stages)
    boundary = [("x", 0)]  # column of e1
    if stages == 0:
        boundary += [("y", 0), ("y", 1), ("y", 2)]
    else:
        boundary += [("y", _chain_top_row(c, last)) for c in open_chains]
    return _instance_from_figure(k, STAIRCASE, fig, cap, stages, boundary)


def build_two_regular(k: int, pair: InjectionPair, window: int) -> GadgetInstance:
    """Staircase whose open ends keep going for ``window + 1`` stages.

    The first chain also runs down and to the left from ``e1`` for
    ``window + 1`` steps of two points each; everything is then shifted by
    ``3 * (window + 1)`` so coordinates stay natural. Rows and columns left
    with one point by the truncation are listed in ``boundary``.
    """
    _check_k(k, pair)
    if window < 0:
        raise ValueError("window must be non-negative")
    span = window + 1
    fig, cap, open_chains, last = _staircase_layout(k, pair, span, extend_to=span)
    for t in range(span):
        fig[f"e1,{-(2 * t + 1)}"] = (-3 * t, -3 * t - 3)
        fig[f"e1,{-(2 * t + 2)}"] = (-3 * t - 3, -3 * t - 3)
    shift = 3 * span
    fig = {tag: (x + shift, y + shift) for tag, (x, y) in fig.items()}
    boundary = [("x", 0)] + [("y", _chain_top_row(c, last) + shift) for c in open_chains]
    return _instance_from_figure(k, TWO_REGULAR, fig, cap, span, boundary, shift)


def build_gadget(k: int, pair: InjectionPair, variant: str = STAIRCASE,
                 window: Optional[int] = None) -> GadgetInstance:
    if variant == BASIC:
        return build_basic(k, pair)
    if variant == STAIRCASE:
        return build_staircase(k, pair)
    if variant == TWO_REGULAR:
        return build_two_regular(k, pair, pair.stage_bound - 1 if window is None else window)
    raise ValueError(f"unknown variant {variant!r}")


def line_counts(points: Iterable[tuple[int, int]]) -> tuple[dict[int, int], dict[int, int]]:
    rows: dict[int, int] = {}
    cols: dict[int, int] = {}
    for r, c in points:
        rows[r] = rows.get(r, 0) + 1
        cols[c] = cols.get(c, 0) + 1
    return rows, cols


# -- combining gadgets into prime blocks --------------------------------------


def kth_prime_for(k: int) -> int:
    """The (k+1)-st prime: 2 for k = 0."""
    return int(sympy.prime(k + 1))


def embed(k: int, point: tuple[int, int]) -> tuple[int, int]:
    p = kth_prime_for(k)
    i, j = point
    return p ** (i + 1), p ** (j + 1)


def unembed(index: int) -> tuple[int, int]:
    """``p**(i+1) -> (k, i)``; raises ValueError for non prime powers."""
    if index < 2:
        raise ValueError(f"{index} is not a prime power")
    if sympy.isprime(index):
        p, e = index, 1
    else:
        pp = sympy.perfect_power(index)
        if not pp or not sympy.isprime(pp[0]):
            raise ValueError(f"{index} is not a prime power")
        p, e = int(pp[0]), int(pp[1])
    return int(sympy.primepi(p)) - 1, e - 1


@dataclass(frozen=True)
class CombinedSet:
    points: PointSet
    labels: Mapping[tuple[int, int], tuple[int, str]]
    instances: tuple[GadgetInstance, ...]

    @property
    def window(self) -> frozenset:
        return frozenset(inst.k for inst in self.instances)

    def point(self, k: int, tag: str) -> tuple[int, int]:
        for p, lab in self.labels.items():
            if lab == (k, tag):
                return p
        raise KeyError((k, tag))


def combine(instances: Sequence[GadgetInstance]) -> CombinedSet:
    ks = [inst.k for inst in instances]
    if len(set(ks)) != len(ks):
        raise GraphError(f"duplicate k among instances: {sorted(ks)}")
    labels: dict[tuple[int, int], tuple[int, str]] = {}
    for inst in sorted(instances, key=lambda i: i.k):
        for p, tag in inst.labels.items():
            labels[embed(inst.k, p)] = (inst.k, tag)
    return CombinedSet(PointSet(labels), labels, tuple(sorted(instances, key=lambda i: i.k)))


def _candidate_figure_points(variant: str, line: int, axis: str, window: Optional[int]) -> set:
    """Every drawing position a gadget of this variant could occupy on one line."""
    if variant == BASIC:
        if axis == "row":
            out = {(0, 0), (1, 1), (1, 2)}
            if line >= 2:
                out |= {(line, 0), (line, 1), (line, 2)}
            return {p for p in out if p[0] == line}
        if line in (0, 1, 2):
            raise UnboundedLine(f"column {line} of the basic gadget can receive a point at any stage")
        return set()
    shift = 0
    extra = set()
    if variant == TWO_REGULAR:
        if window is None:
            raise ValueError("two_regular candidates need the window")
        span = window + 1
        shift = 3 * span
        for t in range(span):
            extra |= {(-3 * t, -3 * t - 3), (-3 * t - 3, -3 * t - 3)}
    cands = {(0, 0), (1, 1), (1, 2)} | extra
    # x and y both grow by 3 per stage, so stages past line // 3 + 1 cannot reach this line
    for q in range(max(0, (line - shift) // 3 + 2)):
        cands |= set(_stair_points(q).values())
        cands |= {_top_of_first_chain(q, kind) for kind in (None, "f", "g")}
    cands = {(x + shift, y + shift) for x, y in cands}
    # drawing (x, y) -> stored (row, col) = (y, x)
    if axis == "row":
        return {(y, x) for x, y in cands if y == line}
    return {(y, x) for x, y in cands if x == line}


def line_candidates(index: int, axis: str, variant: str = STAIRCASE,
                    window: Optional[int] = None) -> list[tuple[int, int]]:
    """All points a combined set could ever hold in row/column ``index``.

    Computed from the index alone (its prime, hence ``k``, and its exponent),
    without consulting ``f`` or ``g``.
    """
    if axis not in ("row", "col"):
        raise ValueError(axis)
    try:
        k, i = unembed(index)
    except ValueError:
        return []
    local = _candidate_figure_points(variant, i, axis, window)
    return sorted(embed(k, p) for p in local)


# -- brute-force partition oracle ----------------------------------------------


def all_two_transversal_partitions(s: Iterable[tuple[int, int]],
                                   budget: int = PARTITION_BUDGET) -> list[TransversalPartition]:
    """Every ordered split of ``s`` into two partial transversals.

    Points are assigned in sorted order, block 0 tried before block 1, and a
    branch is cut as soon as a block repeats a row or column.
    """
    pts = sorted(PointSet(s))
    if len(pts) > budget:
        raise BudgetExceeded(f"{len(pts)} points exceeds the partition budget of {budget}")
    rows = [set(), set()]
    cols = [set(), set()]
    choice = [0] * len(pts)
    out: list[TransversalPartition] = []

    def assign(i: int) -> None:
        if i == len(pts):
            blocks = (PointSet(p for p, b in zip(pts, choice) if b == 0),
                      PointSet(p for p, b in zip(pts, choice) if b == 1))
            out.append(TransversalPartition(blocks))
            return
        r, c = pts[i]
        for b in (0, 1):
            if r in rows[b] or c in cols[b]:
                continue
            rows[b].add(r)
            cols[b].add(c)
            choice[i] = b
            assign(i + 1)
            rows[b].discard(r)
            cols[b].discard(c)

    assign(0)
    return out


@dataclass(frozen=True)
class ForcingReport:
    k: int
    variant: str
    cap: Optional[tuple[str, int]]
    status: str
    expected: str
    partitions: int
    same_block_count: int
    chain_rigid: bool
    chain_failures: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return self.status == self.expected and self.chain_rigid

    def as_dict(self) -> dict:
        return {
            "k": self.k,
            "variant": self.variant,
            "cap": None if self.cap is None else {"kind": self.cap[0], "stage": self.cap[1]},
            "status": self.status,
            "expected": self.expected,
            "partitions": self.partitions,
            "same_block_count": self.same_block_count,
            "chain_rigid": self.chain_rigid,
            "chain_failures": list(self.chain_failures),
            "ok": self.ok,
        }


def expected_forcing(cap: Optional[tuple[str, int]]) -> str:
    if cap is None:
        return UNCONSTRAINED
    return FORCED_TRUE if cap[0] == "f" else FORCED_FALSE


def _chain_pairs(inst: GadgetInstance) -> list[tuple[str, str]]:
    """(head, even-indexed chain point) pairs that must always share a block."""
    pairs = []
    for tag in inst.labels.values():
        if "," in tag:
            head, idx = tag.split(",")
            if int(idx) % 2 == 0:
                pairs.append((head, tag))
    return sorted(pairs)


def verify_forcing(inst: GadgetInstance, budget: int = PARTITION_BUDGET) -> ForcingReport:
    parts = all_two_transversal_partitions(inst.points, budget)
    if not parts:
        raise ForcingFailure(f"gadget k={inst.k} has no partition into two partial transversals")
    e1, e3 = inst.point("e1"), inst.point("e3")
    same = sum(p.block_of(e1) == p.block_of(e3) for p in parts)
    if same == len(parts):
        status = FORCED_TRUE
    elif same == 0:
        status = FORCED_FALSE
    else:
        status = UNCONSTRAINED
    failures = []
    for head, tag in _chain_pairs(inst):
        a, b = inst.point(head), inst.point(tag)
        if any(p.block_of(a) != p.block_of(b) for p in parts):
            failures.append(tag)
    return ForcingReport(inst.k, inst.variant, inst.cap, status, expected_forcing(inst.cap),
                         len(parts), same, not failures, tuple(failures))


@dataclass(frozen=True)
class SeparatorReport:
    A: frozenset
    window: frozenset

    def check(self, pair: InjectionPair) -> dict[str, bool]:
        return {
            "subset_of_window": self.A <= self.window,
            "contains_f_hits": (pair.f_range() & self.window) <= self.A,
            "avoids_g_hits": not (self.A & pair.g_range()),
        }


def extract_separator(partition: TransversalPartition, combined: CombinedSet) -> SeparatorReport:
    A = set()
    for k in sorted(combined.window):
        try:
            b1 = partition.block_of(combined.point(k, "e1"))
            b3 = partition.block_of(combined.point(k, "e3"))
        except KeyError as exc:
            raise GraphError(f"partition does not contain gadget point {exc.args[0]}") from None
        if b1 == b3:
            A.add(k)
    return SeparatorReport(frozenset(A), combined.window)
