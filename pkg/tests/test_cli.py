import csv
import io
import json
import subprocess
import sys

import pytest
from click.testing import CliRunner

from cyccover.cli import main, witness_hash
from cyccover.construct import odd_cover
from cyccover.cover import h_search
from cyccover.gf import gf
from cyccover.linalg import Subspace, full_space


@pytest.fixture
def run():
    runner = CliRunner()

    def invoke(*args):
        return runner.invoke(main, [str(a) for a in args])

    return invoke


def test_factor(run):
    r = run("factor", "--q", 2, "--n", 7)
    assert r.exit_code == 0
    assert "3 factors" in r.output and "factor 1011" in r.output
    d = json.loads(run("factor", "--q", 2, "--n", 7, "--output", "json").output)
    assert [len(f) - 1 for f in d["factors"]] == [1, 3, 3]
    d = json.loads(run("factor", "--q", 2, "--n", 1, "--output", "json").output)
    assert d["factors"] == [[1, 1]]
    assert run("factor", "--q", 2, "--n", 4).exit_code == 2
    assert run("factor", "--q", 6, "--n", 5).exit_code == 2


@pytest.mark.parametrize("q,n,h", [(2, 5, 2), (3, 4, 0), (2, 8, 0)])
def test_search(run, q, n, h):
    r = run("search", "--q", q, "--n", n, "--threads", 1, "--output", "json")
    assert r.exit_code == 0
    d = json.loads(r.output)
    assert d["h"] == h
    assert Subspace.from_text(d["witness"]).codim == h


def test_search_budget_exit(run):
    assert run("search", "--q", 2, "--n", 9, "--budget", 50, "--threads", 1).exit_code == 3


def test_search_budget_env(monkeypatch, run):
    monkeypatch.setenv("CYCCOVER_BUDGET", "50")
    assert run("search", "--q", 2, "--n", 9, "--threads", 1).exit_code == 3


def test_construct(run, tmp_path):
    out = tmp_path / "b.txt"
    r = run("construct", "thm31", "--q", 2, "--d", 3, "--basis-out", out)
    assert r.exit_code == 0 and "verified: yes" in r.output and "codimension 2" in r.output
    assert Subspace.from_text(out.read_text()).codim == 2
    d = json.loads(run("construct", "thm33", "--q", 2, "--k", 3, "--d", 1, "--output", "json").output)
    assert d["n"] == 9 and d["claimed_codim"] == 3 and d["verified"]
    assert run("construct", "thm33", "--q", 2, "--k", 2, "--d", 2).exit_code == 2
    assert run("construct", "thm32", "--q", 2, "--k", 2, "--d", 2, "--c", 2).exit_code == 2
    assert run("construct", "lemma21", "--n", 3).exit_code == 2
    assert run("construct", "section4", "--m", 2, "--m", 4).exit_code == 2
    r = run("construct", "section4", "--m", 2, "--m", 3, "--output", "json")
    assert json.loads(r.output)["claimed_codim"] == 3
    d = json.loads(run("construct", "thm32", "--q", 2, "--k", 2, "--d", 2, "--c", 1, "--output", "json").output)
    assert d["n"] == 21 and d["verified"]
    r = run("construct", "thm31", "--q", 2, "--d", 3, "--no-verify", "--output", "json")
    assert json.loads(r.output)["verified"] is False


def test_construct_product(run, tmp_path):
    f = tmp_path / "w3.txt"
    f.write_text(h_search(2, 3).witness.to_text())
    d = json.loads(run("construct", "product", "--basis", f, "--m", 3, "--output", "json").output)
    assert d["n"] == 9 and d["claimed_codim"] == 1 and d["verified"]


def test_verify(run, tmp_path):
    full = tmp_path / "full.txt"
    full.write_text(full_space(gf(2), 4).to_text())
    r = run("verify", "--q", 2, "--n", 4, "--basis", full)
    assert r.exit_code == 0 and r.output.strip() == "COVERING"
    zero = tmp_path / "zero.txt"
    zero.write_text("2 2 0\n")
    r = run("verify", "--q", 2, "--n", 2, "--basis", zero)
    assert r.exit_code == 1 and r.output.strip() == "NOT COVERING: 01"
    l5 = tmp_path / "l5.txt"
    l5.write_text(odd_cover(5).subspace.to_text())
    assert run("verify", "--q", 2, "--n", 5, "--basis", l5).output.strip() == "COVERING"
    bad = tmp_path / "bad.txt"
    bad.write_text("2 3 1\n10\n")
    assert run("verify", "--q", 2, "--n", 3, "--basis", bad).exit_code == 2
    assert run("verify", "--q", 2, "--n", 5, "--basis", full).exit_code == 2


def test_isbell(run, tmp_path):
    r = run("isbell", "--p", 2, "--b", 7)
    assert r.exit_code == 0 and "degree 28" in r.output and "m_2(7) > 2" in r.output
    d = json.loads(run("isbell", "--p", 2, "--b", 3, "--output", "json").output)
    assert d["degree"] == 6 and d["m_p_lower"] == 2
    assert run("isbell", "--p", 2, "--b", 4).exit_code == 2
    d = json.loads(run("isbell", "--p", 3, "--b", 8, "--output", "json").output)
    assert d["degree"] == 24 and d["valid"]
    w = tmp_path / "w.txt"
    w.write_text(odd_cover(5).subspace.to_text())
    d = json.loads(run("isbell", "--p", 2, "--b", 5, "--witness", w, "--output", "json").output)
    assert d["degree"] == 20 and d["valid"]
    # no construction applies to b = 6 over GF(5): falls back to search
    d = json.loads(run("isbell", "--p", 5, "--b", 6, "--threads", 1, "--output", "json").output)
    assert d["a"] == h_search(5, 6).h


def _table(run, *args):
    r = run("table", *args)
    assert r.exit_code == 0
    return list(csv.DictReader(io.StringIO(r.output)))


def test_table(run):
    rows = _table(run, "--q", 2, "--n-max", 9, "--threads", 1)
    assert [int(r["h"]) for r in rows] == [0, 0, 1, 0, 2, 2, 2, 0, 3]
    assert {r["method"] for r in rows} == {"search"}
    assert rows[4]["witness_hash"] == witness_hash(h_search(2, 5).witness)
    assert [int(r["h"]) for r in _table(run, "--q", 3, "--n-max", 4)] == [0, 0, 0, 0]
    assert len(_table(run, "--q", 2, "--n-max", 1)) == 1


def test_table_falls_back_to_constructions(run):
    rows = _table(run, "--q", 2, "--n-max", 9, "--budget", 2000, "--threads", 1)
    by_n = {int(r["n"]): r for r in rows}
    assert by_n[9]["method"] == "lower-bound-only"
    assert int(by_n[9]["h"]) == 3
    assert int(by_n[7]["h"]) >= 2


def test_threads_do_not_change_output(run):
    for args in (("--q", 2, "--n", 9), ("--q", 3, "--n", 6)):
        one = run("search", *args, "--threads", 1, "--output", "json").output
        many = run("search", *args, "--threads", 4, "--output", "json").output
        assert one == many


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "cyccover", "search", "--q", "2", "--n", "3", "--threads", "1"],
                         capture_output=True, text=True, check=True)
    assert "h_2(3) = 1" in out.stdout
