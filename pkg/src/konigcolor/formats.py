"""Text formats read and written by the command line tool.

Edge lists are one ``u v`` pair per line, with an optional header line
``bipartite L: <ids> R: <ids>``. Point sets are one ``row col`` pair per line.
Gadget files are ``row col label`` lines under ``# key: value`` headers.
``#`` starts a comment everywhere.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Iterable, Optional, Union

from .core import FiniteMultigraph, GraphError, L, PointSet, R, TransversalPartition
from .gadgets import CombinedSet, GadgetInstance

PathLike = Union[str, Path]


class ParseError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None, source: str = "<input>"):
        where = f"{source}:{line}: " if line is not None else f"{source}: "
        super().__init__(where + message)
        self.line = line


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            yield no, body


def _naturals(tokens, no, source):
    try:
        vals = [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"expected natural numbers, got {' '.join(tokens)!r}", no, source) from None
    if any(v < 0 for v in vals):
        raise ParseError("negative number", no, source)
    return vals


def parse_edge_list(text: str, source: str = "<input>") -> FiniteMultigraph:
    pairs = []
    bipartition = None
    declared: list[int] = []
    for no, body in _lines(text):
        if body.startswith("bipartite"):
            if bipartition is not None or pairs:
                raise ParseError("bipartite header must come first and only once", no, source)
            rest = body[len("bipartite"):].strip()
            if not rest.startswith("L:") or " R:" not in f" {rest}":
                raise ParseError("header must read 'bipartite L: <ids> R: <ids>'", no, source)
            left, right = rest[2:].split("R:", 1)
            lv = _naturals(left.split(), no, source)
            rv = _naturals(right.split(), no, source)
            if set(lv) & set(rv):
                raise ParseError("a vertex is on both sides", no, source)
            bipartition = {**{v: L for v in lv}, **{v: R for v in rv}}
            declared = lv + rv
            continue
        tokens = body.split()
        if len(tokens) != 2:
            raise ParseError(f"expected 'u v', got {body!r}", no, source)
        u, v = _naturals(tokens, no, source)
        if u == v:
            raise ParseError(f"loop at vertex {u}", no, source)
        if bipartition is not None and (u not in bipartition or v not in bipartition):
            raise ParseError(f"edge {u} {v} uses a vertex missing from the header", no, source)
        pairs.append((u, v))
    try:
        return FiniteMultigraph.from_pairs(pairs, declared, bipartition)
    except GraphError as exc:
        raise ParseError(str(exc), None, source) from None


def format_edge_list(g: FiniteMultigraph) -> str:
    out = []
    if g.bipartition is not None:
        ls = " ".join(str(v) for v in g.vertices if g.bipartition[v] == L)
        rs = " ".join(str(v) for v in g.vertices if g.bipartition[v] == R)
        out.append(f"bipartite L: {ls} R: {rs}")
    out += [f"{u} {v}" for _, u, v in g.edges]
    return "\n".join(out) + "\n"


def parse_point_set(text: str, source: str = "<input>") -> PointSet:
    pts = []
    seen = set()
    for no, body in _lines(text):
        tokens = body.split()
        if len(tokens) != 2:
            raise ParseError(f"expected 'row col', got {body!r}", no, source)
        p = tuple(_naturals(tokens, no, source))
        if p in seen:
            raise ParseError(f"duplicate point {p}", no, source)
        seen.add(p)
        pts.append(p)
    return PointSet(pts)


def format_point_set(s: Iterable[tuple[int, int]]) -> str:
    return "".join(f"{r} {c}\n" for r, c in sorted(s))


def parse_order(text: str, source: str = "<order>") -> list[int]:
    order = []
    for no, body in _lines(text):
        order += _naturals(body.split(), no, source)
    return order


def parse_table(text: str) -> dict[int, int]:
    """``"q:v,q:v"`` -> ``{q: v}`` (stage first, then the value revealed there)."""
    table: dict[int, int] = {}
    if not text.strip():
        return table
    for item in text.split(","):
        try:
            q, v = (int(x) for x in item.split(":"))
        except ValueError:
            raise ParseError(f"bad table entry {item!r}; expected stage:value") from None
        if q in table:
            raise ParseError(f"stage {q} listed twice")
        table[q] = v
    return table


def format_table(table) -> str:
    return ",".join(f"{q}:{v}" for q, v in sorted(table.items()))


# -- gadget files ---------------------------------------------------------------


def format_gadget(inst: GadgetInstance) -> str:
    cap = "none" if inst.cap is None else f"{inst.cap[0]}:{inst.cap[1]}"
    boundary = " ".join(f"{a}:{i}" for a, i in inst.boundary) or "none"
    head = [
        "# konigcolor gadget",
        f"# k: {inst.k}",
        f"# variant: {inst.variant}",
        f"# stages: {inst.stages}",
        f"# cap: {cap}",
        f"# offset: {inst.offset}",
        f"# boundary: {boundary}",
    ]
    rows = [f"{r} {c} {inst.labels[(r, c)]}" for r, c in sorted(inst.points)]
    return "\n".join(head + rows) + "\n"


def _headers(text: str) -> dict[str, str]:
    out = {}
    for raw in text.splitlines():
        s = raw.strip()
        if s.startswith("#") and ":" in s:
            key, val = s[1:].split(":", 1)
            out[key.strip()] = val.strip()
    return out


def parse_gadget(text: str, source: str = "<gadget>") -> GadgetInstance:
    h = _headers(text)
    try:
        k = int(h["k"])
        variant = h["variant"]
        stages = int(h.get("stages", "0"))
        offset = int(h.get("offset", "0"))
    except (KeyError, ValueError) as exc:
        raise ParseError(f"missing or bad gadget header: {exc}", None, source) from None
    cap = None
    if h.get("cap", "none") != "none":
        kind, q = h["cap"].split(":")
        cap = (kind, int(q))
    boundary = ()
    if h.get("boundary", "none") != "none":
        boundary = tuple((a, int(i)) for a, i in (b.split(":") for b in h["boundary"].split()))
    labels = {}
    for no, body in _lines(text):
        tokens = body.split()
        if len(tokens) != 3:
            raise ParseError(f"expected 'row col label', got {body!r}", no, source)
        r, c = _naturals(tokens[:2], no, source)
        labels[(r, c)] = tokens[2]
    return GadgetInstance(k, variant, PointSet(labels), labels, cap, stages, boundary, offset)


def format_combined(cs: CombinedSet) -> str:
    out = ["# konigcolor combined", "# window: " + " ".join(str(k) for k in sorted(cs.window))]
    for r, c in sorted(cs.points):
        k, tag = cs.labels[(r, c)]
        out.append(f"{r} {c} {k} {tag}")
    return "\n".join(out) + "\n"


def parse_combined(text: str, source: str = "<combined>") -> CombinedSet:
    by_k: dict[int, dict] = {}
    for no, body in _lines(text):
        tokens = body.split()
        if len(tokens) != 4:
            raise ParseError(f"expected 'row col k label', got {body!r}", no, source)
        r, c, k = _naturals(tokens[:3], no, source)
        by_k.setdefault(k, {})[(r, c)] = tokens[3]
    labels = {p: (k, tag) for k, pts in by_k.items() for p, tag in pts.items()}
    # rebuild instances only as label carriers; their local coordinates are not needed
    instances = tuple(
        GadgetInstance(k, "combined", PointSet(pts), pts) for k, pts in sorted(by_k.items())
    )
    return CombinedSet(PointSet(labels), labels, instances)


def parse_partition(text: str, source: str = "<partition>") -> TransversalPartition:
    blocks: dict[int, list] = {}
    for no, body in _lines(text):
        tokens = body.split()
        if len(tokens) != 3:
            raise ParseError(f"expected 'row col block', got {body!r}", no, source)
        r, c, b = _naturals(tokens, no, source)
        blocks.setdefault(b, []).append((r, c))
    return TransversalPartition(tuple(PointSet(blocks[b]) for b in sorted(blocks)))


def format_partition(part: TransversalPartition) -> str:
    return "".join(f"{r} {c} {b}\n" for b, blk in enumerate(part.blocks) for r, c in sorted(blk))


# -- structured output ------------------------------------------------------------


def digest(text: str) -> str:
    return "sha256:" + hashlib.sha256(text.encode()).hexdigest()


def dump_json(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def read_text(path: PathLike) -> str:
    return Path(path).read_text()

