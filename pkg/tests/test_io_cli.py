import json

import numpy as np
import pytest
from numpy.testing import assert_array_equal

from tcvol import io
from tcvol.bench import BenchSettings, loglog_slope, run_bench
from tcvol.cli import main
from tcvol.errors import ConfigurationError, DataFormatError
from tcvol.models import Constant, LevyTriplet, NoiseSpec
from tcvol.simulate import simulate_tc_levy


def _write(path, text):
    path.write_text(text, encoding="utf-8")
    return path


def test_ingest_basic(tmp_path):
    s = io.ingest_csv(_write(tmp_path / "a.csv", "index,log_price\n0,0.0\n1,0.1\n2,0.05\n3,0.2"))
    assert s.n == 4
    assert_array_equal(s.y, [0.0, 0.1, 0.05, 0.2])


def test_ingest_crlf_and_t_column(tmp_path):
    s = io.ingest_csv(_write(tmp_path / "a.csv", "t,log_price\r\n0,1\r\n0.25,2\r\n0.5,3\r\n"))
    assert_array_equal(s.y, [1, 2, 3])


def test_ingest_nan_row(tmp_path):
    p = _write(tmp_path / "a.csv", "index,log_price\n0,0.0\n1,nan\n2,0.1\n")
    with pytest.raises(DataFormatError, match="row 2"):
        io.ingest_csv(p)
    p = _write(tmp_path / "b.csv", "index,log_price\n0,0.0\n1,\n2,0.1\n")
    with pytest.raises(DataFormatError, match="row 2"):
        io.ingest_csv(p)


def test_ingest_uneven_t(tmp_path):
    p = _write(tmp_path / "a.csv", "t,log_price\n0,0\n0.1,0\n0.2,0\n0.35,0\n0.45,0\n")
    with pytest.raises(DataFormatError, match="spacing"):
        io.ingest_csv(p)


def test_ingest_bad_header(tmp_path):
    with pytest.raises(DataFormatError, match="header"):
        io.ingest_csv(_write(tmp_path / "a.csv", "time,price\n0,1\n1,2\n"))


def test_curve_round_trip(tmp_path, rng):
    grid = np.linspace(0, 1, 7)
    c = rng.standard_normal(7) * np.pi
    r = c / 3.0
    g = rng.random(7)
    io.write_curve_csv(tmp_path / "c.csv", grid, c, r, g)
    back = io.read_curve_csv(tmp_path / "c.csv")
    for name, ref in [("t", grid), ("c_tilde", c), ("r_tilde", r), ("guard_fraction", g)]:
        assert_array_equal(back[name], ref)


def test_series_round_trip(tmp_path):
    s = simulate_tc_levy(LevyTriplet(0.0, 1.0), Constant(), NoiseSpec("gaussian", 0.01), 500, 3)
    io.write_series_csv(tmp_path / "s.csv", s)
    assert_array_equal(io.ingest_csv(tmp_path / "s.csv").y, s.y)


def _run(*args):
    return main([str(a) for a in args])


SIM = ["--n", 4096, "--seed", 1, "--rate", "sine", "--noise", "gaussian", "--sigma", 0.005]


def test_cli_simulate_and_estimate(tmp_path):
    y = tmp_path / "y.csv"
    assert _run("simulate", *SIM, "--output", y, "--truth", tmp_path / "truth.csv") == 0
    header = (tmp_path / "truth.csv").read_text().splitlines()[0]
    assert header == "t,r,c,x"
    out1, out2 = tmp_path / "c1.csv", tmp_path / "c2.csv"
    assert _run("estimate", "--input", y, "--output", out1, "--summary", tmp_path / "s1.json") == 0
    assert _run("estimate", "--input", y, "--output", out2, "--summary", tmp_path / "s2.json") == 0
    assert out1.read_bytes() == out2.read_bytes()
    assert (tmp_path / "s1.json").read_bytes() == (tmp_path / "s2.json").read_bytes()
    assert out1.read_text().splitlines()[0] == "t,c_tilde,r_tilde,guard_fraction"
    summary = json.loads((tmp_path / "s1.json").read_text())
    assert summary["schema_version"] == io.SCHEMA_VERSION
    assert set(summary["layout"]) >= {"n1", "n2", "n0", "kappa"}
    assert summary["degenerate"] is False


def test_cli_estimate_from_simulation_spec(tmp_path):
    assert _run("estimate", *SIM, "--output", tmp_path / "c.csv", "--summary", tmp_path / "s.json") == 0


def test_cli_constant_input_degenerate(tmp_path):
    y = _write(tmp_path / "flat.csv", "index,log_price\n" + "".join(f"{j},1.5\n" for j in range(4096)))
    rc = _run("estimate", "--input", y, "--output", tmp_path / "c.csv", "--summary", tmp_path / "s.json")
    assert rc == 4
    curve = io.read_curve_csv(tmp_path / "c.csv")
    assert "r_tilde" not in curve
    assert_array_equal(curve["c_tilde"], 0.0)
    assert json.loads((tmp_path / "s.json").read_text())["degenerate"] is True


def test_cli_exit_codes(tmp_path):
    bad = _write(tmp_path / "bad.csv", "index,log_price\n0,1\n1,x\n")
    assert _run("estimate", "--input", bad, "--output", tmp_path / "o.csv") == 3
    assert _run("estimate", "--input", bad, *SIM, "--output", tmp_path / "o.csv") == 2
    assert _run("simulate", "--n", 100, "--output", tmp_path / "o.csv") == 2
    assert _run("bench", "--ladder", "64,128,256", "--replicates", 1) == 2
    assert _run("estimate", "--input", tmp_path / "missing.csv", "--output", tmp_path / "o.csv") == 3
    assert _run("estimate", *SIM, "--h1", 0.01, "--output", tmp_path / "o.csv") == 2
    assert _run("frobnicate") == 2


def test_cli_tune(tmp_path):
    out = tmp_path / "t.json"
    assert _run("tune", *SIM, "--u-grid", "0.5", "--h1-grid", "0.25", "--h2-grid", "2",
                "--h-grid", "0.1,0.2", "--output", out) == 0
    d = json.loads(out.read_text())
    assert d["best"]["h"] in (0.1, 0.2)
    assert len(d["table"]) == 2


def test_cli_bench(tmp_path):
    out = tmp_path / "b.json"
    assert _run("bench", *SIM[2:], "--seed", 1, "--ladder", "4096,8192,16384",
                "--replicates", 2, "--output", out) == 0
    d = json.loads(out.read_text())
    assert len(d["rmse_r"]) == 3 and d["slope_r"] is not None


def test_bench_single_point():
    sim = lambda n, seed: simulate_tc_levy(LevyTriplet(0.0, 1.0), Constant(),
                                           NoiseSpec("gaussian", 0.005), n, seed)
    rep = run_bench(sim, [4096], 1, 0, BenchSettings())
    assert len(rep.rmse_r) == 1 and rep.slope_r is None
    assert rep.rmse_r[0] >= 0


def test_bench_infeasible_first():
    calls = []

    def sim(n, seed):
        calls.append(n)
        raise AssertionError("should not simulate")

    with pytest.raises(ConfigurationError):
        run_bench(sim, [64, 4096, 8192], 1, 0, BenchSettings(h1=0.1))
    assert calls == []


def test_loglog_slope():
    ns = [10, 100, 1000]
    assert loglog_slope(ns, [1.0, 0.1, 0.01]) == pytest.approx(-1.0)
    assert loglog_slope(ns[:2], [1.0, 0.1]) is None


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_cli_constant_rate_defaults_near_one(tmp_path, seed):
    out = tmp_path / "c.csv"
    assert _run("estimate", "--n", 2 ** 16, "--seed", seed, "--rate", "constant", "--noise", "gaussian",
                "--sigma", 0.01, "--output", out) == 0
    r = io.read_curve_csv(out)["r_tilde"]
    assert np.all((r >= 0.8) & (r <= 1.2))
