import io

import numpy as np
import pytest

from spinwitness.cli import build_model, main, parse_command
from spinwitness.errors import BadConfigError, UsageError
from spinwitness.sweep import HEADER, SweepGrid, SweepPoint, parse_range, run_sweep


def _run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_parse_examples():
    plan = parse_command("bound --model heisenberg --d 1 --n 8 --b 0".split())
    assert (plan.verb, plan.model, plan.d, plan.n, plan.b) == ("bound", "heisenberg", 1, [8], [0.0])
    plan = parse_command("sweep --model heisenberg --n 8 --b 0:5:0.25 --t 0.05:5:0.05 --out grid.csv".split())
    assert len(plan.b) == 21 and plan.b[-1] == 5.0
    assert len(plan.t) == 100 and plan.t[0] == 0.05 and plan.t[-1] == 5.0
    assert plan.out == "grid.csv"
    plan = parse_command("tbound --model collective --n 6".split())
    assert (plan.verb, plan.model, plan.n) == ("tbound", "collective", [6])


def test_ising_is_xy_sugar():
    plan = parse_command("ground --model ising --n 6 --b 1".split())
    assert (plan.model, plan.jx, plan.jy) == ("xy", 1.0, 0.0)
    with pytest.raises(UsageError):
        parse_command("ground --model ising --n 6 --jx 2".split())


@pytest.mark.parametrize(
    "argv,flag",
    [
        ("bound --model heisenberg --n 8 --bogus 1", "--bogus"),
        ("bound --model potts --n 8", "--model"),
        ("bound --model heisenberg --n eight", "--n"),
        ("ground --model xy --n 4", "--jx"),
        ("sweep --model heisenberg --n 4 --b 0", "--t"),
        ("bound --model heisenberg --n 4 --threads 0", "--threads"),
        ("bound --model heisenberg --n 4 --b 3:1:1", "range"),
        ("ground --model heisenberg --n 4 --b 0:1:0.5", "--b"),
        ("bound --n 4", "--model"),
    ],
)
def test_usage_errors_name_the_flag(argv, flag):
    code, out, err = _run(*argv.split())
    assert code == 2
    assert flag in err
    assert err.count("\n") == 1


def test_module_errors_exit_one():
    code, _, err = _run("bound", "--model", "heisenberg", "--d", "2", "--side", "3")
    assert code == 1 and "OddPeriodicSideError" in err
    code, _, err = _run("spectrum", "--model", "collective", "--n", "5")
    assert code == 1 and "OddNError" in err


def test_parse_range():
    assert parse_range("2") == [2.0]
    assert parse_range("0:1:0.3") == [0.0, 0.3, 0.6, 0.9]
    assert parse_range("0:1:0.34") == [0.0, 0.34, 0.68, 1.02]
    assert parse_range("0:0.3:0.1")[-1] == 0.3


def test_config_file_and_flag_precedence(tmp_path):
    cfg = tmp_path / "model.cfg"
    cfg.write_text("# chain model\nmodel = xy\nn=6\njx=1\njy=0.5\nb=2\nperiodic=false\n")
    plan = parse_command(["ground", "--config", str(cfg)])
    assert (plan.model, plan.n, plan.jx, plan.jy, plan.b, plan.periodic) == ("xy", [6], 1.0, 0.5, [2.0], False)
    plan = parse_command(["ground", "--config", str(cfg), "--b", "3", "--periodic"])
    assert plan.b == [3.0] and plan.periodic is True
    cfg.write_text("colour=red\n")
    with pytest.raises(UsageError, match="--colour"):
        parse_command(["ground", "--config", str(cfg)])
    with pytest.raises(UsageError, match="--config"):
        parse_command(["ground", "--config", str(tmp_path / "missing.cfg")])


def test_bound_prints_analytic_and_numerical():
    code, out, _ = _run("bound", "--model", "heisenberg", "--d", "1", "--n", "8", "--b", "0")
    assert code == 0
    assert "e_sep analytic -8\n" in out
    assert "e_sep pairwise -8\n" in out
    assert "WARNING" not in out


def test_bound_frustrated_and_boson_models():
    code, out, _ = _run("bound", "--model", "heisenberg", "--n", "5")
    assert code == 0 and "coordinate-descent -4.04508497" in out
    code, out, _ = _run("bound", "--model", "bosehubbard", "--n", "10", "--nb", "5")
    assert "e_sep analytic -5\n" in out and "e_sep gutzwiller -5\n" in out
    code, out, _ = _run("bound", "--model", "collective", "--n", "6")
    assert "e_sep analytic 12\n" in out and "e_sep classical-pairing 12\n" in out


def test_ground_reports_detection():
    code, out, _ = _run("ground", "--model", "heisenberg", "--n", "6")
    lines = dict(line.split(" ", 1) for line in out.splitlines()[1:])
    assert float(lines["ground"]) < float(lines["e_sep"]) == -6
    assert lines["detected"] == "1"


def test_tbound_collective():
    code, out, _ = _run("tbound", "--model", "collective", "--n", "6")
    header, row = out.splitlines()
    assert header == "n,T_E,T_E_asymptotic"
    n, t_e, asym = row.split(",")
    assert n == "6" and float(asym) == 24 and 0.5 < float(t_e) / 24 < 1.5


def test_tbound_size_list():
    code, out, _ = _run("tbound", "--model", "heisenberg", "--n", "4,6")
    rows = [line.split(",") for line in out.splitlines()[1:]]
    assert [r[0] for r in rows] == ["4", "6"]
    assert float(rows[0][1]) > float(rows[1][1])


def test_spectrum_collective():
    code, out, _ = _run("spectrum", "--model", "collective", "--n", "4")
    assert out == "energy,degeneracy\n0,2\n8,9\n24,5\n"
    code, out, _ = _run("spectrum", "--model", "heisenberg", "--n", "2", "--no-periodic")
    assert out == "energy,degeneracy\n-3,1\n1,3\n"


def test_ising_sweep_detected_switches_once(tmp_path):
    path = tmp_path / "ising.csv"
    code, out, _ = _run("sweep", "--model", "ising", "--n", "8", "--b", "1", "--t", "0.05:2:0.05", "--out", str(path))
    assert code == 0
    grid = SweepGrid.read(path)
    flags = [p.detected for p in grid.points]
    assert flags[0] == 1 and flags[-1] == 0
    assert sum(a != b for a, b in zip(flags, flags[1:])) == 1


def test_sweep_csv_round_trip_and_determinism(tmp_path):
    argv = ["sweep", "--model", "heisenberg", "--n", "6", "--b", "0:5:1", "--t", "0:2:0.5", "--seed", "4"]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert _run(*argv, "--out", str(a), "--threads", "1")[0] == 0
    assert _run(*argv, "--out", str(b), "--threads", "4")[0] == 0
    assert a.read_bytes() == b.read_bytes()
    text = a.read_text()
    assert text.splitlines()[0] == ",".join(HEADER)
    assert text.endswith("\n")
    grid = SweepGrid.from_csv(text)
    assert grid.to_csv() == text
    assert len(grid.points) == 6 * 5

    plan = parse_command(argv)
    direct = run_sweep(lambda x: build_model(plan, 6, x), plan.b, plan.t, threads=3, seed=4)
    assert direct == grid


def test_sweep_bose_hubbard_and_stdout():
    code, out, _ = _run("sweep", "--model", "bosehubbard", "--n", "6", "--nb", "3", "--b", "0", "--t", "0.1:0.3:0.1")
    grid = SweepGrid.from_csv(out)
    assert all(p.e_sep == -3 for p in grid.points)
    assert all(0 <= p.concurrence <= 1 for p in grid.points)


def test_sweep_grid_invariants():
    p = SweepPoint(0.0, 1.0, -2.0, -1.0, -1.0, 0.0, 0.0, 0)
    with pytest.raises(BadConfigError):
        SweepGrid((0.0,), (1.0,), (p,))
    with pytest.raises(BadConfigError):
        SweepGrid((0.0,), (1.0, 2.0), (p._replace(detected=1),))
    with pytest.raises(BadConfigError):
        SweepGrid.from_csv("B,T\n")


def test_module_entry_point():
    import subprocess
    import sys

    proc = subprocess.run(
        [sys.executable, "-m", "spinwitness", "bound", "--model", "xy", "--n", "10", "--jx", "1", "--jy", "0", "--b", "1"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "e_sep analytic -12.5" in proc.stdout
    bad = subprocess.run([sys.executable, "-m", "spinwitness", "bound"], capture_output=True, text=True)
    assert bad.returncode == 2 and bad.stdout == "" and "usage error" in bad.stderr
