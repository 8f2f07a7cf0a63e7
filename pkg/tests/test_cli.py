import json
import shutil
import subprocess
import sys
from pathlib import Path

import pytest

from konigcolor.cli import main

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def work(tmp_path, monkeypatch):
    for f in FIXTURES.iterdir():
        shutil.copy(f, tmp_path / f.name)
    monkeypatch.chdir(tmp_path)
    return tmp_path


def run(*argv):
    out = Path("report.json")
    code = main([*argv, "--json", str(out)])
    doc = json.loads(out.read_text()) if out.exists() and code in (0, 1) else None
    if out.exists():
        out.unlink()
    return code, doc


class TestColor:
    def test_koenig_c6(self, work):
        code, doc = run("color", "koenig", "c6.txt")
        assert code == 0
        assert doc["result"]["palette_size"] == 2 and doc["checks"]["proper"]

    def test_greedy_trap(self, work):
        code, doc = run("color", "greedy", "c6.txt", "--order", "c6_trap_order.txt", "--n", "2")
        assert code == 0 and doc["result"]["palette_size"] == 3

    def test_vizing_triangle(self, work):
        code, doc = run("color", "vizing", "k3.txt")
        assert code == 0 and doc["result"]["palette_size"] == 3

    def test_coloring_file(self, work):
        code, _ = run("color", "koenig", "k33.txt", "-o", "col.txt")
        lines = Path("col.txt").read_text().splitlines()
        assert code == 0 and len(lines) == 9
        assert {line.split()[1] for line in lines} == {"1", "2", "3"}

    def test_koenig_rejects_odd_cycle(self, work):
        assert run("color", "koenig", "k3.txt")[0] == 2

    def test_parse_error_has_line_number(self, work, capsys):
        Path("bad.txt").write_text("0 1\n1 x\n")
        assert run("color", "koenig", "bad.txt")[0] == 3
        assert "bad.txt:2:" in capsys.readouterr().err

    def test_emit_plot(self, work):
        code, doc = run("color", "greedy", "c6.txt", "--emit-plot", "cls")
        assert code == 0
        assert Path("cls.csv").read_text().startswith("color,edges\n")
        assert Path("cls.png").stat().st_size > 0
        assert doc["manifest"]["outputs"] == ["cls.csv", "cls.png"]


class TestDecompose:
    def test_k33_matchings(self, work):
        code, doc = run("decompose", "matchings", "k33.txt")
        assert code == 0
        assert [len(b) for b in doc["result"]["blocks"]] == [3, 3, 3]

    def test_diagonal(self, work):
        code, doc = run("decompose", "transversals", "diagonal.txt", "--n", "1")
        assert code == 0 and doc["result"]["block_count"] == 1

    def test_full_two_by_two(self, work):
        code, doc = run("decompose", "transversals", "full2x2.txt", "--n", "2")
        assert code == 0 and doc["result"]["blocks"] == [[[0, 0], [1, 1]], [[0, 1], [1, 0]]]

    def test_row_overflow(self, work):
        assert run("decompose", "transversals", "full2x2.txt", "--n", "1")[0] == 2


class TestGadget:
    def test_build_and_verify_figure_two(self, work):
        code, doc = run("gadget", "build", "--variant", "staircase", "--k", "0",
                        "--f-table", "1:0", "--stages", "2", "-o", "g.txt")
        assert code == 0
        assert doc["result"]["point_count"] == 15
        assert doc["result"]["cap"] == "f-capped(1)"
        assert doc["result"]["figure_coords"]["e1,4"] == [5, 7]
        code, doc = run("gadget", "verify", "g.txt")
        assert code == 0 and doc["result"]["status"] == "forced-true"

    def test_verify_golden_figure_one(self, work):
        assert run("gadget", "verify", "figure1_i.txt")[1]["result"]["status"] == "forced-true"
        assert run("gadget", "verify", "figure1_ii.txt")[1]["result"]["status"] == "forced-false"

    def test_verify_fails_on_wrong_claim(self, work):
        text = Path("figure1_i.txt").read_text().replace("cap: f:0", "cap: g:0")
        Path("liar.txt").write_text(text)
        code, doc = run("gadget", "verify", "liar.txt")
        assert code == 1 and doc["result"]["ok"] is False

    def test_combine_and_separate(self, work):
        for k in (5, 7, 9):
            assert run("gadget", "build", "--variant", "basic", "--k", str(k), "--f-table", "0:5",
                       "--g-table", "0:7", "-o", f"g{k}.txt")[0] == 0
        code, doc = run("gadget", "combine", "g5.txt", "g7.txt", "g9.txt", "-o", "all.txt")
        assert code == 0 and doc["checks"]["max_line_count"] <= 2
        code, doc = run("gadget", "separate", "all.txt", "--f-table", "0:5", "--g-table", "0:7")
        assert code == 0
        assert {tuple(s["A"]) for s in doc["result"]["separators"]} == {(5,), (5, 9)}

    def test_separate_with_supplied_partition(self, work):
        run("gadget", "build", "--variant", "basic", "--k", "1", "--f-table", "0:1", "-o", "g1.txt")
        run("gadget", "combine", "g1.txt", "-o", "one.txt")
        pts = [tuple(map(int, line.split()[:2])) for line in Path("one.txt").read_text().splitlines()
               if not line.startswith("#")]
        from konigcolor.gadgets import all_two_transversal_partitions
        from konigcolor.formats import format_partition
        part = all_two_transversal_partitions(pts)[0]
        Path("part.txt").write_text(format_partition(part))
        code, doc = run("gadget", "separate", "one.txt", "--partition", "part.txt", "--f-table", "0:1")
        assert code == 0 and doc["result"]["separators"] == [
            {"A": [1], "checks": {"avoids_g_hits": True, "contains_f_hits": True, "subset_of_window": True}}]

    def test_budget_refusal_exit_code(self, work):
        run("gadget", "build", "--variant", "two_regular", "--window", "4", "-o", "big.txt")
        assert run("gadget", "verify", "big.txt")[0] == 4

    def test_bad_table(self, work):
        assert run("gadget", "build", "--f-table", "1-0")[0] == 3

    def test_emit_plot(self, work):
        code, doc = run("gadget", "build", "--f-table", "1:0", "--emit-plot", "fig2")
        rows = Path("fig2.csv").read_text().splitlines()
        assert code == 0 and rows[0] == "label,stage,col,row" and len(rows) == 16


class TestTree:
    def test_levels(self, work):
        code, doc = run("tree", "levels", "c6.txt", "--n", "2", "--depth", "6")
        assert code == 0 and doc["result"]["levels"][-1] == 2

    def test_path_none(self, work):
        code, doc = run("tree", "path", "k3.txt", "--n", "2", "--depth", "3")
        assert code == 0 and doc["result"]["path"] == "none"

    def test_deadnode(self, work):
        code, doc = run("tree", "deadnode", "c6_matching_first.txt", "--n", "2")
        assert code == 0 and doc["result"]["dead_node"] == [1, 1, 2]

    def test_budget(self, work):
        assert run("tree", "levels", "c6.txt", "--n", "2", "--budget", "3")[0] == 4

    def test_levels_plot(self, work):
        run("tree", "levels", "c6.txt", "--n", "2", "--emit-plot", "lv")
        assert Path("lv.csv").read_text().splitlines() == [
            "level,nodes", "0,1", "1,2", "2,2", "3,2", "4,2", "5,2", "6,2"]


def test_determinism_byte_identical(work):
    argv = ["gadget", "build", "--f-table", "1:0", "-o", "g.txt", "--emit-plot", "p"]
    blobs = []
    for _ in range(2):
        main([*argv, "--json", "r.json"])
        blobs.append([Path(n).read_bytes() for n in ("r.json", "g.txt", "p.csv", "p.png")])
    assert blobs[0] == blobs[1]


def test_module_entry_point(work):
    proc = subprocess.run([sys.executable, "-m", "konigcolor", "color", "koenig", "c6.txt"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["palette_size"] == 2
