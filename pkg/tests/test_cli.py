import io
import json
import math
import subprocess
import sys
from contextlib import redirect_stdout

import numpy as np
import pytest

import rainbowchain as rc
from conftest import ground_state
from rainbowchain.cli import main

LN2 = math.log(2)


def run(*argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main([str(a) for a in argv])
    return code, buf.getvalue()


def table(text):
    lines = text.splitlines()
    assert lines[0].startswith("# ")
    header = lines[1].split(",")
    rows = np.array([[float(v) for v in ln.split(",")] for ln in lines[2:]]).reshape(-1, len(header))
    return lines[0], header, rows


SMALL = {
    "spectrum": ["--sites", 8],
    "profile": ["--sites", 12, "--renyi", "1,2", "--overlay-cft"],
    "entspectrum": ["--sites", 12],
    "arcs": ["--sites", 12],
    "quench": ["--sites", 8, "--tmax", 4],
    "thermal": ["--sites", 12, "--beta", 5],
}


@pytest.mark.parametrize("command", sorted(SMALL))
def test_every_command_deterministic(command):
    code, first = run(command, *SMALL[command])
    assert code == 0
    comment, header, rows = table(first)
    assert f"command={command}" in comment and "sites=" in comment
    assert rows.shape[0] > 0
    assert run(command, *SMALL[command]) == (0, first)


@pytest.mark.parametrize("command", sorted(SMALL))
def test_json_format(command):
    code, out = run(command, *SMALL[command], "--format", "json")
    assert code == 0
    assert isinstance(json.loads(out), dict)


def test_spectrum_two_sites():
    code, out = run("spectrum", "--sites", 2, "--model", "homogeneous")
    _, header, rows = table(out)
    assert header == ["k", "energy", "mirror_sum"]
    np.testing.assert_allclose(rows[:, 1], [-0.5, 0.5], atol=1e-15)


def test_spectrum_cosine_band():
    _, out = run("spectrum", "--sites", 8, "--model", "homogeneous")
    _, _, rows = table(out)
    k = np.arange(1, 9)
    np.testing.assert_allclose(rows[:, 1], np.sort(-np.cos(np.pi * k / 9)), atol=1e-14)


def test_spectrum_antisymmetry_column():
    _, out = run("spectrum", "--sites", 20, "--h", 2.5)
    _, _, rows = table(out)
    assert np.abs(rows[:, 2]).max() < 1e-10


def test_profile_matches_library():
    _, out = run("profile", "--sites", 8, "--h", 0.7, "--renyi", "1,2")
    _, header, rows = table(out)
    assert header == ["ell", "x", "S1", "S2"]
    C = ground_state(8, 0.7)
    np.testing.assert_allclose(rows[:, 2], rc.entropy_profile(C, 1).values, rtol=1e-15)
    np.testing.assert_allclose(rows[:, 3], rc.entropy_profile(C, 2).values, rtol=1e-15)
    np.testing.assert_allclose(rows[:, 2], rows[::-1, 2], atol=1e-10)


def test_profile_overlay_tracks_numerics():
    _, out = run("profile", "--sites", 64, "--h", 0.5, "--overlay-cft")
    _, header, rows = table(out)
    assert header[-1] == "S1_cft"
    inner = np.abs(rows[:, 1]) <= 0.8 * 32
    smooth = rc.cft.smooth_part(rows[:, 2])
    assert np.abs(smooth[inner] - rows[inner, 3]).mean() < 0.1


def test_entspectrum_columns():
    _, out = run("entspectrum", "--sites", 32, "--h", 1)
    comment, header, rows = table(out)
    assert header == ["k", "nu", "epsilon", "p", "fit", "thermofield"]
    assert "delta_fit=" in comment and "goodness=" in comment
    np.testing.assert_allclose(rows[:, 5], 2 * np.pi**2 / 16 * rows[:, 3])
    assert np.all(np.diff(rows[:, 2]) > 0)


def test_entspectrum_single_site():
    _, out = run("entspectrum", "--sites", 8, "--model", "homogeneous", "--block", "3:4",
                 "--format", "json")
    s = json.loads(out)
    assert s["entropy"] == pytest.approx(LN2)
    assert s["ladder"] == "none"


def test_arcs_threshold_and_svg(tmp_path):
    svg = tmp_path / "arcs.svg"
    _, out = run("arcs", "--sites", 12, "--h", 8, "--svg", svg)
    _, header, rows = table(out)
    assert header == ["i", "j", "weight"]
    assert {(int(i), int(j)) for i, j, _ in rows} >= {(i, 11 - i) for i in range(6)}
    assert svg.read_text().count('r="2.5"') == 12
    _, out = run("arcs", "--sites", 12, "--h", 8, "--threshold", 0.5)
    assert table(out)[2].shape[0] == 0


def test_arcs_homogeneous_decay():
    _, out = run("arcs", "--sites", 40, "--model", "homogeneous", "--threshold", 0)
    _, _, rows = table(out)
    d = rows[:, 1] - rows[:, 0]
    mid = (rows[:, 0] == 19)
    odd = mid & (d % 2 == 1)
    w = rows[odd, 2]
    assert np.all(np.diff(w) < 0)


def test_quench_t0_rows_equal_static_profile():
    _, out = run("quench", "--sites", 12, "--tmax", 2)
    _, header, rows = table(out)
    assert header == ["t", "ell", "S"]
    t0 = rows[rows[:, 0] == 0]
    static = rc.entropy_profile(rc.build_rainbow_ideal(12)).values[:6]
    np.testing.assert_allclose(t0[:, 2], static, rtol=1e-15)


def test_quench_json_conservation():
    _, out = run("quench", "--sites", 16, "--initial", "dimer", "--format", "json")
    s = json.loads(out)
    assert s["max_trace_error"] < 1e-9 and s["max_purity_error"] < 1e-8


def test_thermal_infinite_temperature():
    _, out = run("thermal", "--sites", 16, "--h", 1, "--beta", 0)
    comment, header, rows = table(out)
    assert header == ["ell", "x", "S", "S_pred"]
    np.testing.assert_allclose(rows[:, 2], rows[:, 0] * LN2, atol=1e-12)
    np.testing.assert_allclose(rows[:, 3], (8 + rows[:, 1]) * LN2, atol=1e-12)


def test_out_file(tmp_path):
    path = tmp_path / "s.csv"
    code, out = run("spectrum", "--sites", 4, "--out", path)
    assert code == 0 and out == ""
    assert path.read_text() == run("spectrum", "--sites", 4)[1]


def test_config_precedence(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# experiment\nsites = 10\nh = 2.0\nrenyi = 2\n")
    _, from_file = run("profile", "--config", cfg)
    _, explicit = run("profile", "--sites", 10, "--h", 2.0, "--renyi", 2)
    assert table(from_file)[1:][0] == table(explicit)[1:][0]
    np.testing.assert_array_equal(table(from_file)[2], table(explicit)[2])
    _, overridden = run("profile", "--config", cfg, "--sites", 6)
    assert table(overridden)[2].shape[0] == 5


def test_custom_model_roundtrip(tmp_path):
    path = tmp_path / "t.csv"
    rc.write_couplings_csv(rc.ChainSpec(10, h=1.3).couplings(), path)
    _, custom = run("spectrum", "--model", f"custom:{path}")
    _, rainbow = run("spectrum", "--sites", 10, "--h", 1.3)
    np.testing.assert_array_equal(table(custom)[2], table(rainbow)[2])


@pytest.mark.parametrize("argv", [
    ["spectrum", "--sites", 7],
    ["spectrum", "--h", -1],
    ["profile", "--renyi", "0"],
    ["spectrum", "--model", "ladder"],
    ["spectrum", "--model", "custom:/nonexistent.csv"],
    ["entspectrum", "--block", "5:2"],
    ["quench", "--dt", 0],
    ["spectrum", "--config", "/nonexistent.cfg"],
    ["spectrum", "--bogus"],
])
def test_config_errors(argv, capsys):
    assert run(*argv)[0] == 2


def test_bad_config_file(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("colour = red\n")
    assert run("spectrum", "--config", cfg)[0] == 2


def test_numerical_error_exit(tmp_path, capsys):
    path = tmp_path / "t.csv"
    rc.write_couplings_csv([0.0, 1.0, 0.0], path)  # two isolated end sites
    assert run("profile", "--model", f"custom:{path}")[0] == 3
    assert "numerical" in capsys.readouterr().err


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "rainbowchain", "spectrum", "--sites", "2"],
                         capture_output=True, text=True, check=True).stdout
    assert out.splitlines()[1] == "k,energy,mirror_sum"
