"""
Run configuration: a single JSON document, validated into :class:`RunConfig`.

Every violation is reported as a :class:`ConfigError` carrying the dotted
path of the offending field. Unknown keys are rejected at every level.
"""

from __future__ import annotations

import dataclasses
import json
import math
from dataclasses import dataclass, field
from typing import Any

from .model import Lorentzian, Memoryless, ModelParams, PureStateAngles
from .nonmarkov import DEFAULT_DT, DEFAULT_T_MAX

__all__ = [
    "TASKS",
    "FIGURE_IDS",
    "ConfigError",
    "ReservoirConfig",
    "StateConfig",
    "GridConfig",
    "SweepConfig",
    "SurfaceConfig",
    "WmrConfig",
    "FigureConfig",
    "RunConfig",
    "parse_config",
    "config_from_dict",
    "serialize",
    "apply_overrides",
]

TASKS = ("gamma-curve", "series", "nonmarkov-sweep", "uncertainty-surface", "wmr-sweep", "figure")
FIGURE_IDS = tuple(range(2, 9))


class ConfigError(ValueError):
    def __init__(self, message: str, path: str | None = None):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path
        self.message = message


@dataclass(frozen=True)
class ReservoirConfig:
    mode: str = "lorentzian"
    gamma: float | None = 1.0

    def _check(self, path):
        if self.mode not in ("lorentzian", "memoryless"):
            raise ConfigError("must be 'lorentzian' or 'memoryless'", f"{path}.mode")
        if self.mode == "lorentzian":
            if self.gamma is None:
                raise ConfigError("required for a lorentzian reservoir", f"{path}.gamma")
            _positive(self.gamma, f"{path}.gamma")


@dataclass(frozen=True)
class StateConfig:
    theta_angle: float = math.pi / 4
    phi: float = math.pi / 8


@dataclass(frozen=True)
class GridConfig:
    t_max: float = DEFAULT_T_MAX
    dt: float = DEFAULT_DT
    n_points: int | None = None

    def _check(self, path):
        _positive(self.t_max, f"{path}.t_max")
        _positive(self.dt, f"{path}.dt")
        if self.n_points is not None and self.n_points < 2:
            raise ConfigError("must be >= 2", f"{path}.n_points")

    def points(self) -> int:
        if self.n_points is not None:
            return self.n_points
        return max(1, int(round(self.t_max / self.dt))) + 1


@dataclass(frozen=True)
class SweepConfig:
    """Grid over one dimensionless ratio for ``nonmarkov-sweep``.

    ``parameter`` is ``gamma`` (gamma/Omega), ``theta`` (Theta/Omega) or
    ``omega_over_theta``.
    """

    parameter: str = "gamma"
    start: float = 0.1
    stop: float = 100.0
    num: int = 30
    scale: str = "log"

    def _check(self, path):
        if self.parameter not in ("gamma", "theta", "omega_over_theta"):
            raise ConfigError("must be 'gamma', 'theta' or 'omega_over_theta'", f"{path}.parameter")
        if self.scale not in ("log", "linear"):
            raise ConfigError("must be 'log' or 'linear'", f"{path}.scale")
        _positive(self.start, f"{path}.start")
        _positive(self.stop, f"{path}.stop")
        if self.stop < self.start:
            raise ConfigError("must be >= start", f"{path}.stop")
        if self.num < 1:
            raise ConfigError("must be >= 1", f"{path}.num")


@dataclass(frozen=True)
class SurfaceConfig:
    t_eval: float = 10.0
    n_theta: int = 21
    n_phi: int = 21

    def _check(self, path):
        _nonnegative(self.t_eval, f"{path}.t_eval")
        for name in ("n_theta", "n_phi"):
            if getattr(self, name) < 2:
                raise ConfigError("must be >= 2", f"{path}.{name}")


@dataclass(frozen=True)
class WmrConfig:
    """``t_eval`` has no default: the evaluation time must be chosen explicitly."""

    t_eval: float | None = None
    m_num: int = 100
    m_max: float = 1.0
    m_values: list | None = None

    def _check(self, path, required: bool):
        if self.t_eval is None:
            if required:
                raise ConfigError("evaluation time must be given explicitly", f"{path}.t_eval")
        else:
            _nonnegative(self.t_eval, f"{path}.t_eval")
        if self.m_num < 1:
            raise ConfigError("must be >= 1", f"{path}.m_num")
        _strength(self.m_max, f"{path}.m_max")
        if self.m_values is not None:
            for i, m in enumerate(self.m_values):
                _strength(m, f"{path}.m_values[{i}]")

    def grid(self) -> list[float]:
        if self.m_values is not None:
            return [float(m) for m in self.m_values]
        if self.m_num == 1:
            return [0.0]
        return [self.m_max * i / (self.m_num - 1) for i in range(self.m_num)]


@dataclass(frozen=True)
class FigureConfig:
    """Figure id plus optional overrides of the figure defaults."""

    id: int | None = None
    t_max: float | None = None
    dt: float | None = None
    t_eval: float | None = None
    theta_over_omega: float | None = None
    reservoir: str | None = None
    gamma: float | None = None
    n_sweep: int | None = None
    n_grid: int | None = None

    def _check(self, path, required: bool):
        if self.id is None:
            if required:
                raise ConfigError("figure id required", f"{path}.id")
        elif self.id not in FIGURE_IDS:
            raise ConfigError(f"figure id must be one of 2..8, got {self.id}", f"{path}.id")
        for name in ("t_max", "dt", "gamma", "theta_over_omega"):
            if getattr(self, name) is not None:
                _positive(getattr(self, name), f"{path}.{name}")
        if self.t_eval is not None:
            _nonnegative(self.t_eval, f"{path}.t_eval")
        if self.reservoir not in (None, "lorentzian", "memoryless"):
            raise ConfigError("must be 'lorentzian' or 'memoryless'", f"{path}.reservoir")
        for name in ("n_sweep", "n_grid"):
            value = getattr(self, name)
            if value is not None and value < 2:
                raise ConfigError("must be >= 2", f"{path}.{name}")


@dataclass(frozen=True)
class RunConfig:
    task: str = "series"
    omega: float = 1.0
    theta: float = 1.0
    reservoir: ReservoirConfig = field(default_factory=ReservoirConfig)
    state: StateConfig = field(default_factory=StateConfig)
    grid: GridConfig = field(default_factory=GridConfig)
    method: str = "auto"
    sweep: SweepConfig = field(default_factory=SweepConfig)
    surface: SurfaceConfig = field(default_factory=SurfaceConfig)
    wmr: WmrConfig = field(default_factory=WmrConfig)
    figure: FigureConfig = field(default_factory=FigureConfig)
    output: str | None = None
    workers: int = 1

    def _check(self):
        if self.task not in TASKS:
            raise ConfigError(f"unknown task {self.task!r}; expected one of {', '.join(TASKS)}", "task")
        _positive(self.omega, "omega")
        _nonnegative(self.theta, "theta")
        self.reservoir._check("reservoir")
        for name in ("theta_angle", "phi"):
            if not math.isfinite(getattr(self.state, name)):
                raise ConfigError("must be finite", f"state.{name}")
        self.grid._check("grid")
        if self.method not in ("auto", "analytic", "memoryless", "oracle"):
            raise ConfigError("must be 'auto', 'analytic', 'memoryless' or 'oracle'", "method")
        if self.method in ("analytic", "oracle") and self.reservoir.mode == "memoryless":
            raise ConfigError(f"method {self.method!r} needs a lorentzian reservoir", "method")
        if self.method == "memoryless" and self.reservoir.mode != "memoryless":
            raise ConfigError("method 'memoryless' needs reservoir.mode = 'memoryless'", "method")
        self.sweep._check("sweep")
        self.surface._check("surface")
        self.wmr._check("wmr", required=self.task == "wmr-sweep")
        self.figure._check("figure", required=self.task == "figure")
        if self.workers < 1:
            raise ConfigError("must be >= 1", "workers")

    def model_params(self) -> ModelParams:
        if self.reservoir.mode == "memoryless":
            reservoir = Memoryless()
        else:
            reservoir = Lorentzian(self.reservoir.gamma)
        return ModelParams(self.omega, self.theta, reservoir)

    def angles(self) -> PureStateAngles:
        return PureStateAngles(self.state.theta_angle, self.state.phi)


def _positive(value, path):
    if not math.isfinite(value) or value <= 0:
        raise ConfigError(f"must be finite and > 0, got {value!r}", path)


def _nonnegative(value, path):
    if not math.isfinite(value) or value < 0:
        raise ConfigError(f"must be finite and >= 0, got {value!r}", path)


def _strength(value, path):
    if not isinstance(value, (int, float)) or isinstance(value, bool) \
            or not math.isfinite(value) or not 0 <= value <= 1:
        raise ConfigError(f"measurement strength must lie in [0, 1], got {value!r}", path)


_NUMBER = (int, float)


def _coerce(value, annotation: str, path: str):
    optional = "None" in annotation
    if value is None:
        if optional:
            return None
        raise ConfigError("must not be null", path)
    base = annotation.replace("| None", "").strip()
    if base == "float":
        if isinstance(value, bool) or not isinstance(value, _NUMBER):
            raise ConfigError(f"expected a number, got {value!r}", path)
        return float(value)
    if base == "int":
        if isinstance(value, bool) or not (isinstance(value, int)
                                           or (isinstance(value, float) and value.is_integer())):
            raise ConfigError(f"expected an integer, got {value!r}", path)
        return int(value)
    if base == "str":
        if not isinstance(value, str):
            raise ConfigError(f"expected a string, got {value!r}", path)
        return value
    if base == "list":
        if not isinstance(value, list):
            raise ConfigError(f"expected a list, got {value!r}", path)
        return list(value)
    raise AssertionError(f"unhandled annotation {annotation}")


def _build(cls, data: Any, path: str):
    if not isinstance(data, dict):
        raise ConfigError(f"expected an object, got {type(data).__name__}", path or None)
    fields = {f.name: f for f in dataclasses.fields(cls)}
    for key in data:
        if key not in fields:
            where = f"{path}.{key}" if path else key
            raise ConfigError("unknown field", where)
    kwargs = {}
    for name, f in fields.items():
        if name not in data:
            continue
        where = f"{path}.{name}" if path else name
        sub = _NESTED.get(name) if cls is RunConfig else None
        if sub is not None:
            kwargs[name] = _build(sub, data[name], where)
        else:
            kwargs[name] = _coerce(data[name], f.type, where)
    try:
        return cls(**kwargs)
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc), path or None) from exc


_NESTED = {
    "reservoir": ReservoirConfig,
    "state": StateConfig,
    "grid": GridConfig,
    "sweep": SweepConfig,
    "surface": SurfaceConfig,
    "wmr": WmrConfig,
    "figure": FigureConfig,
}


def config_from_dict(data: dict) -> RunConfig:
    cfg = _build(RunConfig, data, "")
    cfg._check()
    return cfg


def parse_config(text: str) -> RunConfig:
    """Parse and validate a JSON configuration document."""
    try:
        data = json.loads(text) if text.strip() else {}
    except json.JSONDecodeError as exc:
        raise ConfigError(f"malformed JSON: {exc}") from exc
    return config_from_dict(data)


def serialize(cfg: RunConfig) -> str:
    """Canonical JSON (sorted keys) that :func:`parse_config` maps back to ``cfg``."""
    return json.dumps(dataclasses.asdict(cfg), sort_keys=True, indent=2)


def apply_overrides(data: dict, assignments: list[str]) -> dict:
    """Apply ``key.sub=value`` assignments to a raw config dict.

    Values are read as JSON when possible (numbers, null, lists), otherwise
    kept as strings.
    """
    out = json.loads(json.dumps(data))
    for item in assignments:
        key, sep, raw = item.partition("=")
        if not sep or not key:
            raise ConfigError(f"override must look like key=value, got {item!r}")
        try:
            value = json.loads(raw)
        except json.JSONDecodeError:
            value = raw
        node = out
        parts = key.split(".")
        for part in parts[:-1]:
            node = node.setdefault(part, {})
            if not isinstance(node, dict):
                raise ConfigError("cannot override inside a non-object", key)
        node[parts[-1]] = value
    return out
