"""
Computations behind the command-line tasks and the figure reproductions.

Each task returns one or more :class:`Table` objects (named columns of
floats plus ``#`` metadata lines); writing them out is left to
:mod:`eurdyn.output`. Sweeps go through :func:`ordered_map`, which keeps
results in input order whatever the worker count, so parallel and
sequential runs give identical tables.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .config import ConfigError, RunConfig
from .dynamics import evolve, time_series
from .model import (DensityMatrix2, Lorentzian, Memoryless, ModelParams, PureStateAngles,
                    pure_state_from_angles)
from .nonmarkov import non_markovianity
from .propagator import decoherence_curve, gamma_analytic, gamma_memoryless, gamma_ode_oracle
from .uncertainty import entropic_sum_xz
from .wmr import apply_wmr, wmr_uncertainty_sweep

__all__ = ["Table", "ordered_map", "run_task", "reproduce_figure", "FIGURE_DEFAULTS"]


@dataclass
class Table:
    name: str
    columns: list[str]
    data: np.ndarray  # shape (rows, len(columns))
    notes: list[str] = field(default_factory=list)

    def column(self, name: str) -> np.ndarray:
        return self.data[:, self.columns.index(name)]

    def rows(self) -> list[dict]:
        return [dict(zip(self.columns, map(float, row))) for row in self.data]


def _table(name, cols: dict, notes=()) -> Table:
    names = list(cols)
    data = np.column_stack([np.asarray(cols[k], dtype=float) for k in names])
    return Table(name, names, data, list(notes))


def ordered_map(fn, items, workers: int = 1) -> list:
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _time_grid(cfg: RunConfig) -> np.ndarray:
    return np.linspace(0.0, cfg.grid.t_max, cfg.grid.points())


# --- generic tasks ---------------------------------------------------------

def gamma_curve_task(cfg: RunConfig) -> list[Table]:
    params = cfg.model_params()
    t = _time_grid(cfg)
    if cfg.method == "oracle":
        curve = gamma_ode_oracle(t, params)
    elif cfg.method == "analytic":
        curve = gamma_analytic(t, params)
    else:
        curve = decoherence_curve(t, params)
    notes = [f"method: {curve.method}", *curve.notes]
    if curve.error_estimate is not None:
        notes.append(f"oracle_error_estimate: {curve.error_estimate:.3e}")
    return [_table("gamma-curve", {"t": curve.t, "gamma": curve.gamma}, notes)]


def series_task(cfg: RunConfig) -> list[Table]:
    ts = time_series(cfg.model_params(), cfg.angles(), cfg.grid.t_max, cfg.grid.points())
    return [_table("series", ts.columns(), [f"method: {ts.curve.method}"])]


def _nm_point(args) -> float:
    theta_ratio, gamma_ratio, t_max, dt = args
    params = ModelParams.from_ratios(theta_ratio, gamma_ratio)
    return non_markovianity(params, t_max, dt).n_value


def _sweep_values(start, stop, num, scale) -> np.ndarray:
    if num == 1:
        return np.array([start], dtype=float)
    if scale == "log":
        return np.logspace(math.log10(start), math.log10(stop), num)
    return np.linspace(start, stop, num)


def nonmarkov_sweep_task(cfg: RunConfig) -> list[Table]:
    s = cfg.sweep
    xs = np.sort(_sweep_values(s.start, s.stop, s.num, s.scale))
    th = cfg.theta / cfg.omega
    g = None if cfg.reservoir.mode == "memoryless" else cfg.reservoir.gamma / cfg.omega
    if s.parameter == "gamma":
        if g is None:
            raise ConfigError("a gamma sweep needs a lorentzian reservoir", "sweep.parameter")
        args = [(th, x, cfg.grid.t_max, cfg.grid.dt) for x in xs]
        label = "gamma_over_omega"
    elif s.parameter == "theta":
        args = [(x, g, cfg.grid.t_max, cfg.grid.dt) for x in xs]
        label = "theta_over_omega"
    else:
        args = [(1.0 / x, g, cfg.grid.t_max, cfg.grid.dt) for x in xs]
        label = "omega_over_theta"
    ns = ordered_map(_nm_point, args, cfg.workers)
    return [_table("nonmarkov-sweep", {label: xs, "N": ns},
                   ["N: trace-distance backflow of the |+>,|-> pair (lower bound on the maximised measure)"])]


def _surface(params: ModelParams, t_eval: float, n_theta: int, n_phi: int):
    gamma_t = float(decoherence_curve([t_eval], params).gamma[0])
    thetas = np.linspace(0.0, math.pi / 2, n_theta)
    phis = np.linspace(0.0, math.pi, n_phi)
    tt, pp = np.meshgrid(thetas, phis, indexing="ij")
    c, s = np.cos(tt), np.sin(tt)
    ee = c * c * gamma_t ** 2
    eg = c * s * np.exp(-1j * pp) * gamma_t
    sxz = entropic_sum_xz(DensityMatrix2(ee.ravel(), eg.ravel()))
    return tt.ravel(), pp.ravel(), sxz


def uncertainty_surface_task(cfg: RunConfig) -> list[Table]:
    sc = cfg.surface
    tt, pp, sxz = _surface(cfg.model_params(), sc.t_eval, sc.n_theta, sc.n_phi)
    return [_table("uncertainty-surface", {"theta_angle": tt, "phi": pp, "S_xz": sxz},
                   [f"t_eval (Omega*t): {sc.t_eval!r}"])]


def wmr_sweep_task(cfg: RunConfig) -> list[Table]:
    rows = wmr_uncertainty_sweep(cfg.model_params(), cfg.angles(), cfg.wmr.t_eval, cfg.wmr.grid())
    m, s = zip(*rows)
    return [_table("wmr-sweep", {"m": m, "S_xz": s}, [f"t_eval (Omega*t): {cfg.wmr.t_eval!r}"])]


# --- figures ---------------------------------------------------------------

FIGURE_DEFAULTS = {
    2: dict(t_max=40.0, dt=0.01, angles=(math.pi / 4, math.pi / 8), gammas=(1000.0, 1.0)),
    3: dict(t_max=100.0, dt=1e-3, ratios=(0.1, 1.0, 5.0), n_sweep=30, span=(0.1, 100.0)),
    4: dict(t_max=40.0, dt=0.01, nm_t_max=100.0, nm_dt=1e-3, ratios=(0.5, 1.0, 5.0, 10.0),
            n_sweep=100, span=(0.01, 1.0)),
    5: dict(t_max=40.0, dt=0.01, angles=(math.pi / 3, math.pi / 6), ratios=(0.5, 1.0, 5.0, 10.0)),
    6: dict(t_eval=10.0, theta_over_omega=0.15, n_grid=41),
    7: dict(t_eval=10.0, angles=(math.pi / 3, math.pi / 6),
            pairs=((0.1, 3.0), (1.0, 3.0), (10.0, 3.0), (20.0, 3.0)), n_sweep=100),
    8: dict(angles=(math.pi / 5, math.pi / 3), strengths=(0.0, 0.5), t_max=10.0, n_grid=101),
}


def _fmt(x: float) -> str:
    return f"{x:g}"


def _fig2(cfg, fc, workers):
    d = FIGURE_DEFAULTS[2]
    t_max, dt = fc.t_max or d["t_max"], fc.dt or d["dt"]
    n = int(round(t_max / dt)) + 1
    out = []
    for panel, g in zip("ab", d["gammas"]):
        ts = time_series(ModelParams.from_ratios(1.0, g), PureStateAngles(*d["angles"]), t_max, n)
        out.append(_table(f"fig2{panel}", {"Omega_t": ts.t, "D": ts.D, "S_xz": ts.S_xz},
                          [f"Theta/Omega = 1, gamma/Omega = {_fmt(g)}, theta = pi/4, phi = pi/8"]))
    return out


def _fig3(cfg, fc, workers):
    d = FIGURE_DEFAULTS[3]
    t_max, dt = fc.t_max or d["t_max"], fc.dt or d["dt"]
    xs = _sweep_values(*d["span"], fc.n_sweep or d["n_sweep"], "log")
    cols = {"gamma_over_omega": xs}
    for r in d["ratios"]:
        cols[f"N_theta_over_omega_{_fmt(r)}"] = ordered_map(
            _nm_point, [(r, x, t_max, dt) for x in xs], workers)
    return [_table("fig3", cols, [f"t_max (Omega*t) = {_fmt(t_max)}, dt = {_fmt(dt)}"])]


def _fig4(cfg, fc, workers):
    d = FIGURE_DEFAULTS[4]
    t_max, dt = fc.t_max or d["t_max"], fc.dt or d["dt"]
    t = np.linspace(0.0, t_max, int(round(t_max / dt)) + 1)
    cols = {"Omega_t": t}
    for r in d["ratios"]:
        cols[f"D_theta_over_omega_{_fmt(r)}"] = np.abs(gamma_memoryless(t, 1.0, r))
    a = _table("fig4a", cols, ["memoryless reservoir"])
    xs = _sweep_values(*d["span"], fc.n_sweep or d["n_sweep"], "linear")
    ns = ordered_map(_nm_point, [(1.0 / x, None, d["nm_t_max"], d["nm_dt"]) for x in xs], workers)
    b = _table("fig4b", {"omega_over_theta": xs, "N": ns},
               [f"memoryless reservoir, t_max (Omega*t) = {_fmt(d['nm_t_max'])}"])
    return [a, b]


def _fig5(cfg, fc, workers):
    d = FIGURE_DEFAULTS[5]
    t_max, dt = fc.t_max or d["t_max"], fc.dt or d["dt"]
    n = int(round(t_max / dt)) + 1
    out = []
    for panel, r in zip("abcd", d["ratios"]):
        ts = time_series(ModelParams.from_ratios(r, None), PureStateAngles(*d["angles"]), t_max, n)
        out.append(_table(f"fig5{panel}", {"Omega_t": ts.t, "S_xz": ts.S_xz, "purity": ts.purity},
                          [f"memoryless reservoir, Theta/Omega = {_fmt(r)}, theta = pi/3, phi = pi/6"]))
    return out


def _fig6(cfg, fc, workers):
    d = FIGURE_DEFAULTS[6]
    t_eval = d["t_eval"] if fc.t_eval is None else fc.t_eval
    ratio = fc.theta_over_omega or d["theta_over_omega"]
    n = fc.n_grid or d["n_grid"]
    tt, pp, sxz = _surface(ModelParams.from_ratios(ratio, None), t_eval, n, n)
    return [_table("fig6", {"theta_angle": tt, "phi": pp, "S_xz": sxz},
                   [f"memoryless reservoir, Omega*t = {_fmt(t_eval)}, Theta/Omega = {_fmt(ratio)}"])]


def _fig7(cfg, fc, workers):
    d = FIGURE_DEFAULTS[7]
    t_eval = d["t_eval"] if fc.t_eval is None else fc.t_eval
    mode = fc.reservoir or "memoryless"
    n = fc.n_sweep or d["n_sweep"]
    ms = np.linspace(0.0, 1.0, n)
    cols = {"m": ms}
    for om, th in d["pairs"]:
        reservoir = Memoryless() if mode == "memoryless" else Lorentzian(fc.gamma or 1.0)
        params = ModelParams(om, th, reservoir)
        rows = wmr_uncertainty_sweep(params, PureStateAngles(*d["angles"]), t_eval, ms)
        cols[f"S_xz_omega_{_fmt(om)}_theta_{_fmt(th)}"] = [s for _, s in rows]
    note = f"{mode} reservoir, evaluation time Omega*t = {_fmt(t_eval)}"
    if mode == "lorentzian":
        note += f", gamma = {_fmt(fc.gamma or 1.0)}"
    return [_table("fig7", cols, [note])]


def _fig8(cfg, fc, workers):
    d = FIGURE_DEFAULTS[8]
    extent = fc.t_max or d["t_max"]
    n = fc.n_grid or d["n_grid"]
    axis = np.linspace(0.0, extent, n)
    th_t, om_t = np.meshgrid(axis, axis, indexing="ij")
    # memoryless Gamma depends on (Theta t, Omega t) only: evaluate at unit time
    gam = np.array([gamma_memoryless(1.0, w, th) for th, w in zip(th_t.ravel(), om_t.ravel())])
    rho = evolve(pure_state_from_angles(PureStateAngles(*d["angles"])), gam)
    out = []
    for panel, m in zip("ab", d["strengths"]):
        sxz = entropic_sum_xz(apply_wmr(rho, m))
        out.append(_table(f"fig8{panel}", {"Theta_t": th_t.ravel(), "Omega_t": om_t.ravel(), "S_xz": sxz},
                          [f"memoryless reservoir, m = {_fmt(m)}, theta = pi/5, phi = pi/3"]))
    return out


_FIGURES = {2: _fig2, 3: _fig3, 4: _fig4, 5: _fig5, 6: _fig6, 7: _fig7, 8: _fig8}


def reproduce_figure(figure_id: int, cfg: RunConfig | None = None) -> list[Table]:
    """Tables (one per panel) for figure ``figure_id``; ``cfg.figure`` holds overrides."""
    if figure_id not in _FIGURES:
        raise ValueError(f"figure id must be one of 2..8, got {figure_id}")
    cfg = cfg or RunConfig(task="figure")
    return _FIGURES[figure_id](cfg, cfg.figure, cfg.workers)


def run_task(cfg: RunConfig) -> list[Table]:
    if cfg.task == "figure":
        return reproduce_figure(cfg.figure.id, cfg)
    return {
        "gamma-curve": gamma_curve_task,
        "series": series_task,
        "nonmarkov-sweep": nonmarkov_sweep_task,
        "uncertainty-surface": uncertainty_surface_task,
        "wmr-sweep": wmr_sweep_task,
    }[cfg.task](cfg)
