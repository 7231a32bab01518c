import json

import pytest

from twindragon import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_automaton_normalizes_fifth(capsys):
    code, out, err = run(capsys, "automaton", "1", "0", "-1/5")
    assert code == 0
    assert "Δ_{5,0,-1}" in err and "Δ_{5,0,-1}" in out
    assert out.count("->") == 4
    assert out.count("peripheries=2") == 1


def test_automaton_boundary_graph(capsys):
    code, out, _ = run(capsys, "automaton", "5", "0", "-1", "--boundary", "--format", "graph")
    assert code == 0
    assert out.count("->") == 6
    assert '"(1,g3)"' in out and '"(1,g4)"' in out


def test_automaton_json_untrimmed(capsys):
    code, out, _ = run(capsys, "automaton", "1", "0", "10", "--untrimmed", "--format", "json")
    assert code == 0
    assert len(json.loads(out)["states"]) > 0


def test_degenerate_line(capsys):
    code, _, err = run(capsys, "automaton", "0", "0", "1")
    assert code == 3
    assert "vanish" in err


@pytest.mark.parametrize("bad", ["0.2", "1/0", "x"])
def test_rejects_bad_rationals(capsys, bad):
    code, _, _ = run(capsys, "dim", "1", "0", bad)
    assert code == 2


def test_missing_subcommand(capsys):
    assert run(capsys)[0] == 2


def test_dim_boundary(capsys):
    code, out, _ = run(capsys, "dim", "5", "0", "-1", "--boundary")
    doc = json.loads(out)
    assert code == 0
    assert doc["dimension"] == 0.792481250361
    assert doc["certificate"]["passed"] is True
    assert list(doc) == sorted(doc)


def test_dim_tile_section(capsys):
    code, out, _ = run(capsys, "dim", "5", "0", "-1")
    assert code == 0 and json.loads(out)["dimension"] == 1.0


def test_dim_empty(capsys):
    code, out, _ = run(capsys, "dim", "1", "0", "10")
    assert code == 4
    assert json.loads(out)["empty"] is True


def test_intervals(capsys):
    code, out, _ = run(capsys, "intervals", "1", "0", "-1/4")
    doc = json.loads(out)
    assert code == 0
    assert doc["intervals"] == [["-9/10", "-13/20"], ["-2/5", "1/10"], ["7/20", "3/5"]]
    code, out, _ = run(capsys, "intervals", "5", "0", "-1")
    assert json.loads(out)["intervals"] is None


def test_render_writes_deterministic_file(capsys, tmp_path):
    a, b = tmp_path / "a.ppm", tmp_path / "b.ppm"
    for path in (a, b):
        code, _, _ = run(capsys, "render", "--depth", "4", "--size", "64x48",
                         "--line", "1", "0", "-1/5", "--out", str(path))
        assert code == 0
    assert a.read_bytes() == b.read_bytes()


def test_render_points(capsys, tmp_path):
    pts = tmp_path / "p.txt"
    code, _, _ = run(capsys, "render", "--depth", "3", "--size", "32x32", "--line", "1", "0", "0",
                     "--out", str(tmp_path / "x.ppm"), "--points", str(pts))
    assert code == 0
    rows = pts.read_text().splitlines()
    assert len(rows) == 4 ** 3
    assert all(float(r.split()[0]) == 0 for r in rows)


def test_render_errors(capsys, tmp_path):
    assert run(capsys, "render", "--depth", "99", "--out", str(tmp_path / "x.ppm"))[0] == 2
    assert run(capsys, "render", "--depth", "2", "--size", "0x3", "--out", "x.ppm")[0] == 2
    assert run(capsys, "render", "--depth", "2", "--viewport", "1", "0", "0", "1",
               "--out", str(tmp_path / "x.ppm"))[0] == 2
    assert run(capsys, "render", "--depth", "2", "--out", str(tmp_path / "no" / "x.ppm"))[0] == 5


def test_verify_subset(capsys):
    code, out, _ = run(capsys, "verify", "--skip", "6", "7", "8", "9")
    assert code == 0
    assert out.count("[PASS]") == 6
