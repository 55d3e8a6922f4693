import json
import subprocess
import sys

import pytest

from gsx.cli import (EXIT_INCONCLUSIVE, EXIT_LC_EQUIVALENT, EXIT_LU_INEQUIVALENT, EXIT_OK, EXIT_USAGE,
                     INCONCLUSIVE, LU_INEQUIVALENT, Verdict, decide, load_graph, main)
from gsx.graph import cycle, path, star
from conftest import DATA, random_connected, random_walk


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_dm(capsys):
    code, out, _ = run(capsys, "dm", "--graph", "path_4", "--set", "1,3")
    assert code == EXIT_OK
    assert "d_M = 0" in out and "rank(rho_M) = 4" in out and "E_M = 2" in out
    code, out, _ = run(capsys, "dm", "--graph", "star_4", "--set", "2,3", "--elements", "--json")
    data = json.loads(out)
    assert data["d"] == 1 and data["elements"] == ["+IIII", "+IXXI"]
    code, _, err = run(capsys, "dm", "--graph", "path_4", "--set", "")
    assert code == EXIT_USAGE and "empty" in err
    code, _, err = run(capsys, "dm", "--graph", "path_4", "--set", "5")
    assert code == EXIT_USAGE


def test_graph_inputs(tmp_path):
    (tmp_path / "g.txt").write_text("# edges\n1 2\n2 3\n3 4\n")
    (tmp_path / "g.g6").write_text("Ch\n")
    assert load_graph(f"@{tmp_path / 'g.txt'}") == path(4)
    assert load_graph(f"@{tmp_path / 'g.g6'}") == path(4)
    assert load_graph("Ch") == path(4)
    assert load_graph("cycle_5") == cycle(5)


def test_compare_verdicts(capsys):
    code, out, _ = run(capsys, "compare", "--graph", "star_4", "--graph2", "complete_4")
    assert code == EXIT_LC_EQUIVALENT and "stage 2" in out
    code, out, _ = run(capsys, "compare", "--graph", "cycle_7", "--graph2", "path_7", "--json")
    data = json.loads(out)
    assert code == EXIT_LU_INEQUIVALENT
    assert data["stage_number"] == 1 and data["witness"]["k"] == 2
    code, _, _ = run(capsys, "compare", "--graph", "path_5", "--graph2", "path_5")
    assert code == EXIT_LC_EQUIVALENT
    code, _, err = run(capsys, "compare", "--graph", "path_5", "--graph2", "path_4")
    assert code == EXIT_USAGE


def test_compare_batch_order():
    v = decide(cycle(7), path(7), batch=True)
    assert [s["stage"] for s in v.stages] == ["invariants"]
    v = decide(cycle(7), path(7))
    assert [s["stage"] for s in v.stages] == ["lc-search", "invariants"]


def test_budget_exhaustion_is_not_a_verdict():
    v = decide(cycle(6), path(6).permute([0, 2, 1, 3, 4, 5]), budget=3)
    assert v.status in (LU_INEQUIVALENT, INCONCLUSIVE)
    assert any("budget exhausted" in s["result"] for s in v.stages)


def test_verdict_invariant():
    with pytest.raises(ValueError):
        Verdict(LU_INEQUIVALENT)
    with pytest.raises(ValueError):
        Verdict("LCEquivalent", "lc-search", {"k": 2})


def test_compare_json_is_stable(capsys, rng):
    g = random_connected(rng, 6)
    h = random_walk(rng, g, 5)[-1]
    from gsx.graph import to_graph6
    outs = {run(capsys, "compare", "--graph", to_graph6(g), "--graph2", to_graph6(h), "--json")[1] for _ in range(3)}
    assert len(outs) == 1


def test_classes(capsys):
    code, out, _ = run(capsys, "classes", "--n", "4")
    assert code == EXIT_OK and "2 classes" in out
    code, out, _ = run(capsys, "classes", "--n", "4", "--mode", "labeled", "--json")
    data = json.loads(out)
    assert data["orbits"] == 4 and data["graphs"] == 38
    code, out, _ = run(capsys, "classes", "--source", str(DATA / "classes_n8.g6"), "--json")
    assert json.loads(out)["classes"] == 101
    code, _, err = run(capsys, "classes", "--n", "9")
    assert code == EXIT_USAGE


def test_classes_integrity_error(capsys, tmp_path):
    bad = tmp_path / "bad.g6"
    bad.write_text("CF\nC~\n")
    code, _, err = run(capsys, "classes", "--source", str(bad))
    assert code == EXIT_USAGE and "CF" in err and "C~" in err


def test_classes_writes_db(capsys, tmp_path):
    out = tmp_path / "c5.g6"
    run(capsys, "classes", "--n", "5", "--out", str(out))
    assert len(out.read_text().split()) == 4
    assert (tmp_path / "c5.g6.json").exists()


def test_tables(capsys):
    code, out, _ = run(capsys, "tables", "--n", "6", "--invariant", "T", "--k", "3", "--json")
    rows = json.loads(out)
    assert [round(r["r"], 2) for r in rows] == [0.52, 1.0, 1.0]
    assert [round(r["p"], 2) for r in rows] == [0.05, 0.0, 0.0]
    code, _, err = run(capsys, "tables", "--n", "9", "--invariant", "l")
    assert code == EXIT_USAGE


def test_tables_sampled_is_reproducible(capsys):
    argv = ("tables", "--n", "8", "--invariant", "l", "--source", str(DATA / "classes_n8.g6"),
            "--samples", "200", "--seed", "5", "--json")
    a = run(capsys, *argv)[1]
    b = run(capsys, *argv)[1]
    assert a == b
    rows = json.loads(a)
    assert all(r["seed"] == 5 and "stderr" in r for r in rows)


def test_condense(capsys, tmp_path):
    code, out, _ = run(capsys, "condense", "--graph", "star_4", "--set", "2,3,4", "--json")
    data = json.loads(out)
    assert data["graph6"] == "A_" and data["rules"][0]["rule"] == "DimCMinus1"
    code, out, _ = run(capsys, "condense", "--graph", "path_4", "--set", "1,3", "--strict")
    assert code == EXIT_USAGE and "refused" in out
    dot = tmp_path / "c.dot"
    code, out, _ = run(capsys, "condense", "--graph", "path_6", "--set", "3,4", "--dot", str(dot))
    assert code == EXIT_OK and "experimental" in out and dot.read_text().startswith("graph")
    code, _, err = run(capsys, "condense", "--graph", "path_6", "--set", "3,4", "--set", "4,5")
    assert code == EXIT_USAGE and "overlap" in err


def test_orbit(capsys):
    code, out, _ = run(capsys, "orbit", "--graph", "star_7", "--count-only")
    assert out.strip() == "orbit size: 8"
    code, out, _ = run(capsys, "orbit", "--graph", "star_4", "--json")
    assert json.loads(out)["size"] == 5
    code, out, _ = run(capsys, "orbit", "--graph", "path_4", "--mode", "unlabeled", "--json")
    assert json.loads(out)["size"] == 4
    code, _, err = run(capsys, "orbit", "--graph", "star_7", "--budget", "3")
    assert code == EXIT_USAGE and "cap" in err


def test_metagraph(capsys, tmp_path):
    dot = tmp_path / "m.dot"
    code, out, _ = run(capsys, "metagraph", "--graph", "path_4", "--set", "1,2", "--json", "--dot", str(dot))
    data = json.loads(out)
    assert data["connected_type2"] == ["{2}"] and data["elements"] == ["+IIII", "+XZII"]
    assert "[1,2]" in dot.read_text()


def test_console_entry_point():
    out = subprocess.run([sys.executable, "-m", "gsx.cli", "dm", "--graph", "star_4", "--set", "2,3"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and "d_M = 1" in out.stdout
