import json
import math

import pytest
from hypothesis import given, settings, strategies as st

from eurdyn.cli import main
from eurdyn.config import ConfigError, RunConfig, apply_overrides, config_from_dict, parse_config, serialize
from eurdyn.output import render_csv
from eurdyn.tasks import nonmarkov_sweep_task, run_task


def test_defaults():
    cfg = parse_config("{}")
    assert cfg == RunConfig()
    assert cfg.grid.t_max == 100.0 and cfg.grid.dt == 1e-3
    assert cfg.grid.points() == 100_001
    assert cfg.state.theta_angle == math.pi / 4


@pytest.mark.parametrize("doc, field", [
    ({"reservoir": {"gamma": 0}}, "reservoir.gamma"),
    ({"reservoir": {"gamma": -1.0}}, "reservoir.gamma"),
    ({"task": "figure", "figure": {"id": 9}}, "figure.id"),
    ({"grid": {"tmax": 3}}, "grid.tmax"),
    ({"omega": "fast"}, "omega"),
    ({"wmr": {"m_values": [0.5, 1.5]}}, "wmr.m_values[1]"),
    ({"task": "wmr-sweep"}, "wmr.t_eval"),
    ({"method": "analytic", "reservoir": {"mode": "memoryless"}}, "method"),
])
def test_validation_errors_name_the_field(doc, field):
    with pytest.raises(ConfigError) as info:
        config_from_dict(doc)
    assert info.value.path == field


def test_malformed_json():
    with pytest.raises(ConfigError):
        parse_config("{not json")


finite = st.floats(0.01, 50, allow_nan=False)


@settings(max_examples=50)
@given(finite, finite, finite, st.sampled_from(["lorentzian", "memoryless"]),
       st.integers(2, 500), st.one_of(st.none(), st.lists(st.floats(0, 1), max_size=4)))
def test_round_trip(omega, theta, gamma, mode, n, ms):
    cfg = config_from_dict({"omega": omega, "theta": theta, "reservoir": {"mode": mode, "gamma": gamma},
                            "grid": {"n_points": n}, "wmr": {"m_values": ms, "t_eval": 1.0},
                            "task": "wmr-sweep", "output": "x.csv"})
    assert parse_config(serialize(cfg)) == cfg


def test_overrides():
    data = apply_overrides({"grid": {"t_max": 5}}, ["grid.dt=0.5", "reservoir.mode=memoryless",
                                                    "wmr.m_values=[0, 0.5]"])
    assert data == {"grid": {"t_max": 5, "dt": 0.5}, "reservoir": {"mode": "memoryless"},
                    "wmr": {"m_values": [0, 0.5]}}
    with pytest.raises(ConfigError):
        apply_overrides({}, ["novalue"])


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_series_csv(tmp_path, capsys):
    out = tmp_path / "s.csv"
    code, _, _ = run(capsys, "series", "--set", "grid.t_max=2", "--set", "grid.dt=0.01", "--out", str(out))
    assert code == 0
    lines = [ln for ln in out.read_text().splitlines() if not ln.startswith("#")]
    assert lines[0] == "t,gamma,D,purity,S_xz,B_CP"
    t, g, d = map(float, lines[1].split(",")[:3])
    assert (t, g, d) == (0.0, 1.0, 1.0)
    assert len(lines) == 202


def test_metadata_lines(capsys):
    code, out, _ = run(capsys, "gamma-curve", "--set", "grid.t_max=1", "--set", "grid.dt=0.5")
    assert code == 0
    head = out.splitlines()
    assert head[0].startswith("# eurdyn ")
    assert any(h.startswith("# config_sha256: ") for h in head)
    assert "t,gamma" in head


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"reservoir": {"mode": "memoryless"}, "grid": {"t_max": 1, "dt": 0.25}}))
    code, out, _ = run(capsys, "gamma-curve", "--config", str(cfg))
    assert code == 0 and "# method: memoryless" in out


def test_config_error_exit_code(tmp_path, capsys):
    out = tmp_path / "s.csv"
    code, _, err = run(capsys, "series", "--set", "reservoir.gamma=-1", "--out", str(out))
    assert code == 2
    record = json.loads(err.strip().splitlines()[-1])
    assert record["error"] == "config" and record["field"] == "reservoir.gamma"
    assert not out.exists()
    assert list(tmp_path.iterdir()) == []


def test_bad_file_and_bad_json(tmp_path, capsys):
    assert run(capsys, "series", "--config", str(tmp_path / "missing.json"))[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert run(capsys, "series", "--config", str(bad))[0] == 2
    assert run(capsys, "figure", "9")[0] == 2
    assert run(capsys, "nonsense")[0] == 2


def test_computation_error_exit_code(tmp_path, capsys):
    out = tmp_path / "w.csv"
    code, _, err = run(capsys, "wmr-sweep", "--set", "state.theta_angle=0", "--set", "wmr.t_eval=0",
                       "--set", "wmr.m_values=[0.5, 1]", "--out", str(out))
    assert code == 3
    assert json.loads(err)["error"] == "computation"
    assert list(tmp_path.iterdir()) == []


def test_io_error_exit_code(tmp_path, capsys):
    out = tmp_path / "no" / "such" / "dir" / "s.csv"
    code, _, err = run(capsys, "gamma-curve", "--set", "grid.t_max=1", "--set", "grid.dt=0.5",
                       "--out", str(out))
    assert code == 4
    assert json.loads(err)["error"] == "io"


def test_json_mirror(tmp_path, capsys):
    out = tmp_path / "g.csv"
    code, _, _ = run(capsys, "gamma-curve", "--set", "grid.t_max=1", "--set", "grid.dt=0.5",
                     "--out", str(out), "--json")
    assert code == 0
    rows = json.loads((tmp_path / "g.json").read_text())
    assert rows[0] == {"t": 0.0, "gamma": 1.0}
    assert len(rows) == 3


def test_sweep_sorted_and_parallel_equals_sequential():
    base = {"task": "nonmarkov-sweep", "grid": {"t_max": 20.0},
            "sweep": {"start": 0.1, "stop": 100.0, "num": 6}}
    seq = config_from_dict(base)
    par = config_from_dict({**base, "workers": 3})
    a, = nonmarkov_sweep_task(seq)
    b, = nonmarkov_sweep_task(par)
    xs = a.column("gamma_over_omega")
    assert list(xs) == sorted(xs)
    assert render_csv(a, seq).split("\n", 4)[4] == render_csv(b, par).split("\n", 4)[4]


def test_determinism(tmp_path, capsys):
    paths = []
    for name in ("a.csv", "b.csv"):
        p = tmp_path / name
        assert run(capsys, "uncertainty-surface", "--set", "surface.n_theta=5", "--out", str(p))[0] == 0
        paths.append(p)
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_figure_outputs(tmp_path, capsys):
    code, _, _ = run(capsys, "figure", "6", "--set", "figure.n_grid=9", "--out", str(tmp_path))
    assert code == 0
    files = list(tmp_path.glob("*.csv"))
    assert len(files) == 1
    text = files[0].read_text()
    assert "theta_over_omega" in text or "Theta/Omega" in text or "0.15" in text


def test_run_task_dispatch():
    for task in ("gamma-curve", "series", "uncertainty-surface"):
        cfg = config_from_dict({"task": task, "grid": {"t_max": 1.0, "dt": 0.1},
                                "surface": {"n_theta": 3, "n_phi": 3}})
        tables = run_task(cfg)
        assert tables and all(len(t.data) > 0 for t in tables)
