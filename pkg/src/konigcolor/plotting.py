"""CSV + PNG companions for the ``--emit-plot`` option."""

from __future__ import annotations

import csv
from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .gadgets import GadgetInstance  # noqa: E402

CHAIN_COLORS = {"1": "tab:blue", "2": "tab:orange", "3": "tab:green", "x": "tab:gray"}


def _write_csv(path: Path, header: Sequence[str], rows) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def _save(fig, path: Path) -> None:
    # fixed metadata keeps the PNG bytes reproducible
    fig.savefig(path, dpi=100, metadata={"Software": None})
    plt.close(fig)


def plot_level_counts(counts: Sequence[int], prefix: str) -> list[str]:
    csv_path, png_path = Path(f"{prefix}.csv"), Path(f"{prefix}.png")
    _write_csv(csv_path, ["level", "nodes"], enumerate(counts))
    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.semilogy(range(len(counts)), [max(c, 0.5) for c in counts], "o-")
    ax.set_xlabel("level (edges colored)")
    ax.set_ylabel("tree nodes")
    ax.set_title("prefix-coloring tree")
    fig.tight_layout()
    _save(fig, png_path)
    return [str(csv_path), str(png_path)]


def plot_color_classes(sizes: dict[int, int], prefix: str) -> list[str]:
    csv_path, png_path = Path(f"{prefix}.csv"), Path(f"{prefix}.png")
    _write_csv(csv_path, ["color", "edges"], sorted(sizes.items()))
    fig, ax = plt.subplots(figsize=(5, 3.5))
    keys = sorted(sizes)
    ax.bar([str(k) for k in keys], [sizes[k] for k in keys], color="tab:blue")
    ax.set_xlabel("color")
    ax.set_ylabel("edges")
    fig.tight_layout()
    _save(fig, png_path)
    return [str(csv_path), str(png_path)]


def _stage_of(tag: str) -> int:
    if "," not in tag:
        return -1 if tag in ("e1", "e2", "e3") else 0
    t = int(tag.split(",")[1])
    return (t - 1) // 2 if t > 0 else -((-t + 1) // 2)


def plot_gadget(inst: GadgetInstance, prefix: str) -> list[str]:
    """Points in drawing order (x = column, y = row), linked when they share a line."""
    csv_path, png_path = Path(f"{prefix}.csv"), Path(f"{prefix}.png")
    pts = sorted(inst.points)
    _write_csv(csv_path, ["label", "stage", "col", "row"],
               [(inst.labels[p], _stage_of(inst.labels[p]), p[1], p[0]) for p in pts])
    fig, ax = plt.subplots(figsize=(5, 5))
    for i, a in enumerate(pts):
        for b in pts[i + 1:]:
            if a[0] == b[0] or a[1] == b[1]:
                heavy = {inst.labels[a][:2], inst.labels[b][:2]} == {"e1", "e2"} and a[0] == b[0]
                ax.plot([a[1], b[1]], [a[0], b[0]], "k-", lw=2.0 if heavy else 0.8, zorder=1)
    for p in pts:
        tag = inst.labels[p]
        chain = tag[1] if tag[1] in "123" and (len(tag) == 2 or tag[2] == ",") else "x"
        ax.scatter([p[1]], [p[0]], s=30, color=CHAIN_COLORS[chain], zorder=2)
        ax.annotate(tag, (p[1], p[0]), textcoords="offset points", xytext=(4, 4), fontsize=7)
    ax.set_xlabel("column")
    ax.set_ylabel("row")
    ax.set_title(f"gadget k={inst.k} ({inst.variant}, {inst.cap_event or 'uncapped'})")
    ax.set_aspect("equal", adjustable="datalim")
    fig.tight_layout()
    _save(fig, png_path)
    return [str(csv_path), str(png_path)]
