import math
import subprocess
import sys

import pytest

from pairdiscord.cli import main, parse_angle, parse_ns, parse_thetas, UsageError


def run(*args):
    return subprocess.run([sys.executable, "-m", "pairdiscord", *args], capture_output=True, text=True)


def report(text):
    out = {}
    for line in text.splitlines():
        key, *vals = line.split()
        out[key] = vals
    return out


def test_parse_angle():
    assert parse_angle("0.1pi") == pytest.approx(0.1 * math.pi)
    assert parse_angle("pi") == pytest.approx(math.pi)
    assert parse_angle("-pi") == pytest.approx(-math.pi)
    assert parse_angle("0.5") == 0.5
    with pytest.raises(UsageError):
        parse_angle("abc")


def test_parse_lists():
    assert parse_ns("2:8:2") == (2, 4, 6, 8)
    assert parse_ns("3,5") == (3, 5)
    assert parse_thetas("0:2pi:3") == pytest.approx((0.0, math.pi, 2 * math.pi))
    with pytest.raises(UsageError):
        parse_ns("2:x")


def test_point_golden(fixtures):
    res = run("point", "--n", "12", "--theta", "0.1pi")
    assert res.returncode == 0, res.stderr
    rep = report(res.stdout)
    gap = float(rep["qd"][0]) - fixtures["oracle.discord_bruteforce.n=12.theta=0.1pi"]
    assert -1e-6 <= gap <= 3e-3
    for key in ("rho11", "rho22", "rho33", "rho44", "rho14", "rho23", "gmqd_normalized", "classical", "mutual_info"):
        assert key in rep


def test_point_product_state_stays_classical(capsys):
    assert main(["point", "--n", "2", "--theta", "0", "--channel", "phase_flip", "--gamma-t", "1"]) == 0
    rep = report(capsys.readouterr().out)
    assert float(rep["qd"][0]) == 0.0
    assert float(rep["gmqd_normalized"][0]) == 0.0


def test_point_phase_flip_zero_crossing(capsys):
    assert main(["point", "--channel", "phase_flip", "--gamma-t", str(math.log(2))]) == 0
    rep = report(capsys.readouterr().out)
    assert abs(float(rep["qd"][0])) < 1e-6


@pytest.mark.parametrize(
    "args",
    [
        ["point", "--n", "1"],
        ["point", "--channel", "bitflip"],
        ["point", "--gamma-t", "-1"],
        ["point", "--theta", "zz"],
        ["sweep", "--n", "4"],
        ["sweep", "--grid", "0:5", "--out", "x.csv"],
        ["sweep", "--measures", "qd,foo", "--out", "x.csv"],
    ],
)
def test_usage_errors(args, capsys):
    assert main(args) == 2
    assert "error" in capsys.readouterr().err


def test_bad_subcommand():
    assert run("nope").returncode == 2


def test_sweep_writes_csv_and_svg(tmp_path):
    out = tmp_path / "s.csv"
    res = run("sweep", "--channel", "pd", "--n", "4", "--theta", "0.2pi", "--grid", "0:2:5", "--out", str(out), "--svg")
    assert res.returncode == 0, res.stderr
    lines = out.read_text().splitlines()
    assert lines[0] == "channel,n,theta,gamma_t,p,qd,gmqd_normalized,classical,mutual_info"
    assert len(lines) == 6
    assert len(list(tmp_path.glob("s_phase_damping_n4_theta0.2pi.svg"))) == 1


def test_sweep_unwritable_path(tmp_path):
    blocker = tmp_path / "f"
    blocker.write_text("")
    res = run("sweep", "--channel", "pf", "--n", "2", "--theta", "0", "--grid", "0:1:2", "--out", str(blocker / "x.csv"))
    assert res.returncode == 1
    assert str(blocker) in res.stderr


def test_config_precedence(tmp_path, capsys):
    cfg = tmp_path / "c.txt"
    cfg.write_text("# settings\nn = 4\ntheta = 0.3pi\nchannel = ad\n")
    assert main(["point", "--config", str(cfg), "--n", "6"]) == 0
    rep = report(capsys.readouterr().out)
    assert rep["n"] == ["6"]
    assert rep["channel"] == ["amplitude_damping"]
    assert float(rep["theta"][0]) == pytest.approx(0.3 * math.pi)


def test_config_errors(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("no equals sign\n")
    assert main(["point", "--config", str(bad)]) == 2
    assert main(["point", "--config", str(tmp_path / "missing.txt")]) == 2
