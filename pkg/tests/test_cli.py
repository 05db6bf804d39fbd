import json
import math
import shutil
import subprocess

import pytest

from fnlab.cli import main
from fnlab.fileio import write_point
from fnlab.surface import make_fn_point, preset


@pytest.fixture
def pair(tmp_path):
    d = preset("four-holed-sphere")
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    write_point(make_fn_point(d, (1.0, 1.0, 1.2, 0.8, 1.0), (0.5,)), a)
    write_point(make_fn_point(d, (1.0, 1.0, 1.2, 0.8, 1.0), (1.5,)), b)
    return a, b


def test_dist_fn_equal_files(pair, capsys):
    a, _ = pair
    assert main(["dist", "fn", "--a", str(a), "--b", str(a)]) == 0
    assert capsys.readouterr().out.strip() == "0"


def test_dist_fn_value(pair, capsys):
    a, b = pair
    assert main(["dist", "fn", "--a", str(a), "--b", str(b)]) == 0
    assert float(capsys.readouterr().out) == 1.0


def test_dist_report(pair, capsys):
    a, b = pair
    assert main(["dist", "ls", "--a", str(a), "--b", str(b), "--budget", "1", "--report",
                 "--pair-id", "p7"]) == 0
    head, row = capsys.readouterr().out.strip().splitlines()
    assert head == "pair_id,metric,kind,value,budget,source"
    fields = row.split(",")
    assert fields[:3] == ["p7", "ls", "lower"] and fields[4] == "1"
    assert float(fields[3]) > 0


def test_dist_arc(pair, capsys):
    a, b = pair
    assert main(["dist", "arc", "--a", str(a), "--b", str(b), "--budget", "1"]) == 0
    assert float(capsys.readouterr().out) >= 0


def test_arc_on_closed_surface_is_invalid(tmp_path, capsys):
    g = tmp_path / "g.json"
    write_point(make_fn_point(preset("genus-2"), (1, 1, 1), (0, 0, 0)), g)
    assert main(["dist", "arc", "--a", str(g), "--b", str(g)]) == 2
    assert "invalid input" in capsys.readouterr().err


def test_invalid_input_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"pants": [["glued", "glued", "glued"]], "gluings": [],
                               "lengths": [-1], "twists": []}))
    assert main(["dist", "fn", "--a", str(bad), "--b", str(bad)]) == 2
    assert main(["io", "validate", "--in", str(tmp_path / "nope.json")]) == 2


def test_degenerate_exit_3(tmp_path, capsys):
    d = preset("genus-2")
    f = tmp_path / "thin.json"
    write_point(make_fn_point(d, (1e-300, 1.0, 1.0), (0, 0, 0)), f)
    assert main(["dist", "ls", "--a", str(f), "--b", str(f)]) == 3
    assert "degeneracy" in capsys.readouterr().err


def test_usage_exit_64(capsys):
    assert main(["frobnicate"]) == 64
    assert main(["dist", "xx", "--a", "a", "--b", "b"]) == 64
    assert main(["dist", "fn"]) == 64
    assert main(["--help"]) == 0


def test_io_roundtrip_byte_identical(pair, tmp_path, capsys):
    a, _ = pair
    out = tmp_path / "c.json"
    assert main(["io", "roundtrip", "--in", str(a), "--out", str(out)]) == 0
    assert out.read_bytes() == a.read_bytes()
    assert main(["io", "validate", "--in", str(a)]) == 0
    assert capsys.readouterr().out.startswith("ok: 2 pants")


def test_io_roundtrip_canonicalizes(tmp_path, capsys):
    f = tmp_path / "loose.json"
    f.write_text(json.dumps({"twists": [0.0], "lengths": [1, 2], "gluings": [[[0, 0], [0, 1]]],
                             "pants": [["glued", "glued", "boundary"]]}))
    assert main(["io", "roundtrip", "--in", str(f)]) == 0
    cap = capsys.readouterr()
    assert "canonical" in cap.err
    assert json.loads(cap.out)["lengths"] == [1.0, 2.0]


def test_experiment_shrinking_curve_rows(tmp_path, capsys):
    out = tmp_path / "s.csv"
    assert main(["experiment", "shrinking-curve", "--out", str(out)]) == 0
    lines = [l for l in out.read_text().splitlines() if not l.startswith("#")]
    assert lines[0].startswith("k,eps,t,d_fn")
    assert len(lines) - 1 == 18
    assert all(math.isclose(float(l.split(",")[3]), 2 * math.pi, rel_tol=1e-12) for l in lines[1:])


def test_out_dir_from_environment(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("FNLAB_OUT_DIR", str(tmp_path))
    assert main(["experiment", "divergent-twist", "--kmin", "3", "--kmax", "5"]) == 0
    assert (tmp_path / "divergent-twist.csv").exists()


def test_bad_experiment_range(capsys):
    assert main(["experiment", "shrinking-curve", "--kmin", "9", "--kmax", "3"]) == 2


def test_verify_wolpert(tmp_path, capsys):
    out = tmp_path / "w.csv"
    assert main(["verify", "wolpert", "--samples", "2", "--out", str(out)]) == 0
    assert "max_rel_err_d1=" in capsys.readouterr().err
    assert "surface,config,curve,l,theta,derivative" in out.read_text()


@pytest.mark.skipif(shutil.which("fnlab") is None, reason="console script not installed")
def test_console_script(pair):
    a, _ = pair
    r = subprocess.run(["fnlab", "dist", "fn", "--a", str(a), "--b", str(a)],
                       capture_output=True, text=True, check=False)
    assert r.returncode == 0 and r.stdout.strip() == "0"
    r = subprocess.run(["fnlab", "bogus"], capture_output=True, text=True, check=False)
    assert r.returncode == 64
