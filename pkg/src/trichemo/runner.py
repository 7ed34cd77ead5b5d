"""Experiment orchestration: configuration, seeded initial data, the time
loop, and artifact persistence.

A run owns one output directory and writes three artifact kinds there:
snap_<field>_t<time>.csv per snapshot time, diagnostics.jsonl with one
record per sample, and run.json with the config echo, stability advisory,
decay fits and artifact list.  Identical configs give byte-identical
snapshots and diagnostics.
"""

from __future__ import annotations

import json
import math
import statistics
import time
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Any

import numpy as np

from .diagnostics import (
    DecayFit,
    DiagnosticsRecord,
    collect,
    fit_exponential_rate,
)
from .grid import Field, Grid, full_field, make_grid, make_grid_from_spacing, write_field_csv
from .params import Params, equilibrium
from .stepping import (
    DEFAULT_FLOOR,
    BlowupError,
    StabilityAdvisory,
    State,
    StepConfig,
    StepInfo,
    check_stability,
    euler_step,
)

TWO_PI = 2.0 * math.pi

# step alignment tolerance, relative to the time in question
_ALIGN_RTOL = 1e-9


class ConfigError(ValueError):
    """A run configuration that violates the documented schema."""


class AlignmentError(ConfigError):
    """A requested time that does not land on the step grid."""


@dataclass(frozen=True)
class RunConfig:
    params: Params
    t_end: float
    out_dir: str
    u0: float
    v0: float
    w0: float
    nx: int = 13
    ny: int = 13
    grid_mode: str = "exact-domain"
    lx: float = TWO_PI
    ly: float = TWO_PI
    dx: float | None = None
    dy: float | None = None
    dt: float = 0.01
    floor: float = DEFAULT_FLOOR
    seed: int = 42
    sigma: float = 0.2
    snapshot_times: tuple[float, ...] = ()
    diag_interval: float = 1.0
    upwind: bool = False

    def __post_init__(self):
        if self.grid_mode not in ("exact-domain", "exact-spacing"):
            raise ConfigError(
                f"grid_mode must be exact-domain or exact-spacing, got {self.grid_mode!r}"
            )
        if self.grid_mode == "exact-spacing" and (self.dx is None or self.dy is None):
            raise ConfigError("exact-spacing mode needs dx and dy")
        if self.grid_mode == "exact-domain" and not (self.dx is None and self.dy is None):
            raise ConfigError("dx/dy only make sense in exact-spacing mode")
        if not self.dt > 0.0:
            raise ConfigError(f"dt must be positive, got {self.dt}")
        if self.t_end < 0.0:
            raise ConfigError(f"t_end must be nonnegative, got {self.t_end}")
        if not (self.u0 > 0.0 and self.v0 > 0.0 and self.w0 > 0.0):
            raise ConfigError("initial base values must be positive")
        if self.sigma < 0.0:
            raise ConfigError(f"sigma must be nonnegative, got {self.sigma}")
        if not self.floor > 0.0:
            raise ConfigError(f"floor must be positive, got {self.floor}")
        if self.seed < 0:
            raise ConfigError(f"seed must be a nonnegative integer, got {self.seed}")
        if not self.diag_interval > 0.0:
            raise ConfigError(f"diag_interval must be positive, got {self.diag_interval}")
        object.__setattr__(self, "snapshot_times", tuple(float(t) for t in self.snapshot_times))
        for ts in self.snapshot_times:
            if not 0.0 <= ts <= self.t_end:
                raise ConfigError(
                    f"snapshot time {ts:g} outside the run interval [0, {self.t_end:g}]"
                )
        # every sampled time must land on a step boundary; no interpolation
        _step_index(self.t_end, self.dt, "t_end")
        _step_index(self.diag_interval, self.dt, "diag_interval")
        for ts in self.snapshot_times:
            _step_index(ts, self.dt, "snapshot time")

    def grid(self) -> Grid:
        if self.grid_mode == "exact-spacing":
            return make_grid_from_spacing(self.nx, self.ny, self.dx, self.dy)
        return make_grid(self.nx, self.ny, self.lx, self.ly)

    def step_config(self) -> StepConfig:
        return StepConfig(dt=self.dt, floor=self.floor, upwind=self.upwind)


def _step_index(t: float, dt: float, what: str) -> int:
    """Index of the step landing on time t, or AlignmentError if none does."""
    i = round(t / dt)
    if abs(i * dt - t) > _ALIGN_RTOL * max(1.0, abs(t)):
        raise AlignmentError(
            f"{what} {t:g} does not land on the dt={dt:g} step grid"
        )
    return i


# --- seeded initial data --------------------------------------------------
#
# The perturbation stream must be reproducible node by node, so it comes
# from the Philox-4x64 counter-based generator: key = seed, counter block
# (0, 0, 0, field_index) with field indices u:0 v:1 w:2, so each field
# reads its own disjoint counter range.  Nodes are drawn in row-major
# order, one 53-bit integer each (the power-of-two range consumes exactly
# one 64-bit word per draw), mapped to the open unit interval via
# (x + 1/2) / 2^53 and then through the standard normal inverse CDF.

_FIELD_INDEX = {"u": 0, "v": 1, "w": 2}


def _normal_draws(seed: int, field_index: int, count: int) -> np.ndarray:
    bg = np.random.Philox(
        key=np.uint64(seed),
        counter=np.array([0, 0, 0, field_index], dtype=np.uint64),
    )
    raw = np.random.Generator(bg).integers(0, 1 << 53, size=count, dtype=np.uint64)
    uniforms = (raw.astype(np.float64) + 0.5) / float(1 << 53)
    inv_cdf = statistics.NormalDist().inv_cdf
    return np.array([inv_cdf(x) for x in uniforms])


def perturbed_ic(
    base: tuple[float, float, float],
    sigma: float,
    seed: int,
    grid: Grid,
    floor: float = DEFAULT_FLOOR,
) -> State:
    """Constant base state plus i.i.d. N(0, sigma^2) noise per node per
    field, floored from below.  Bit-identical for identical arguments."""
    if not all(b > 0.0 for b in base):
        raise ValueError(f"base values must be positive, got {base}")
    if sigma < 0.0:
        raise ValueError(f"sigma must be nonnegative, got {sigma}")
    fields = []
    for name, b in zip(("u", "v", "w"), base):
        if sigma == 0.0:
            fields.append(full_field(grid, b))
            continue
        noise = _normal_draws(seed, _FIELD_INDEX[name], grid.nx * grid.ny)
        vals = b + sigma * noise.reshape(grid.shape)
        fields.append(Field(grid, np.maximum(vals, floor)))
    return State(fields[0], fields[1], fields[2], t=0.0)


# --- run records ----------------------------------------------------------


@dataclass(frozen=True)
class RunRecord:
    config: dict[str, Any]
    advisory: StabilityAdvisory
    duration_s: float
    final_diagnostics: DiagnosticsRecord | None
    artifacts: tuple[str, ...]
    fits: dict[str, DecayFit | None]
    incomplete: bool = False
    error: str | None = None


def _fit_to_dict(f: DecayFit | None) -> dict | None:
    if f is None:
        return None
    # the fitted rate is serialized under the traditional name
    return {
        "c_amp": f.c_amp,
        "lambda": f.rate,
        "fit_window": list(f.fit_window),
        "residual": f.residual,
        "n_samples": f.n_samples,
    }


def record_to_dict(rec: RunRecord) -> dict:
    return {
        "config": rec.config,
        "advisory": asdict(rec.advisory),
        "duration_s": rec.duration_s,
        "final_diagnostics": (
            None if rec.final_diagnostics is None else asdict(rec.final_diagnostics)
        ),
        "artifacts": list(rec.artifacts),
        "fits": {k: _fit_to_dict(v) for k, v in rec.fits.items()},
        "incomplete": rec.incomplete,
        "error": rec.error,
    }


def config_to_flat_dict(cfg: RunConfig) -> dict[str, Any]:
    """Flatten a RunConfig to the documented key-value schema."""
    p = cfg.params
    out = {
        "mu1": p.mu1,
        "mu2": p.mu2,
        "r": p.r,
        "k": p.k,
        "chi1": p.chi1,
        "chi2": p.chi2,
        "nx": cfg.nx,
        "ny": cfg.ny,
        "grid_mode": cfg.grid_mode,
        "lx": cfg.lx,
        "ly": cfg.ly,
        "dt": cfg.dt,
        "t_end": cfg.t_end,
        "floor": cfg.floor,
        "seed": cfg.seed,
        "u0": cfg.u0,
        "v0": cfg.v0,
        "w0": cfg.w0,
        "sigma": cfg.sigma,
        "snapshot_times": list(cfg.snapshot_times),
        "diag_interval": cfg.diag_interval,
        "upwind": cfg.upwind,
        "out_dir": cfg.out_dir,
    }
    if cfg.grid_mode == "exact-spacing":
        out["dx"] = cfg.dx
        out["dy"] = cfg.dy
    return out


_PARAM_KEYS = ("mu1", "mu2", "r", "k", "chi1", "chi2")
_REQUIRED_KEYS = ("mu1", "mu2", "r", "k", "t_end", "u0", "v0", "w0", "out_dir")
_OPTIONAL_KEYS = (
    "chi1", "chi2", "nx", "ny", "grid_mode", "lx", "ly", "dx", "dy", "dt",
    "floor", "seed", "sigma", "snapshot_times", "diag_interval", "upwind",
)
KNOWN_CONFIG_KEYS = frozenset(_REQUIRED_KEYS) | frozenset(_OPTIONAL_KEYS)

_INT_KEYS = frozenset(("nx", "ny", "seed"))
_BOOL_KEYS = frozenset(("upwind",))
_STR_KEYS = frozenset(("grid_mode", "out_dir"))
_LIST_KEYS = frozenset(("snapshot_times",))


def _check_type(key: str, value: Any) -> Any:
    if key in _BOOL_KEYS:
        if not isinstance(value, bool):
            raise ConfigError(f"key {key!r} must be a boolean, got {value!r}")
        return value
    if key in _STR_KEYS:
        if not isinstance(value, str):
            raise ConfigError(f"key {key!r} must be a string, got {value!r}")
        return value
    if key in _LIST_KEYS:
        if not isinstance(value, (list, tuple)) or any(
            isinstance(x, bool) or not isinstance(x, (int, float)) for x in value
        ):
            raise ConfigError(f"key {key!r} must be a list of numbers, got {value!r}")
        return [float(x) for x in value]
    if key in _INT_KEYS:
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(f"key {key!r} must be an integer, got {value!r}")
        return value
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"key {key!r} must be a number, got {value!r}")
    return float(value)


def config_from_flat_dict(flat: dict[str, Any]) -> RunConfig:
    unknown = sorted(set(flat) - KNOWN_CONFIG_KEYS)
    if unknown:
        raise ConfigError(f"unknown configuration keys: {', '.join(unknown)}")
    missing = sorted(k for k in _REQUIRED_KEYS if k not in flat)
    if missing:
        raise ConfigError(f"missing required configuration keys: {', '.join(missing)}")
    clean = {k: _check_type(k, v) for k, v in flat.items()}
    try:
        params = Params(**{k: clean.pop(k) for k in _PARAM_KEYS if k in clean})
    except ValueError as e:
        raise ConfigError(str(e)) from None
    if "snapshot_times" in clean:
        clean["snapshot_times"] = tuple(clean["snapshot_times"])
    return RunConfig(params=params, **clean)


def load_config(path: str | Path) -> RunConfig:
    """Read a run configuration from a flat TOML file (documented schema)."""
    try:
        import tomllib
    except ModuleNotFoundError:  # python < 3.11
        import tomli as tomllib
    p = Path(path)
    if not p.is_file():
        raise FileNotFoundError(f"configuration file not found: {p}")
    try:
        with open(p, "rb") as fh:
            flat = tomllib.load(fh)
    except tomllib.TOMLDecodeError as e:
        raise ConfigError(f"{p}: not parseable as TOML: {e}") from None
    return config_from_flat_dict(flat)


def dump_config(cfg: RunConfig) -> str:
    """Serialize a RunConfig back to the flat TOML schema."""
    lines = []
    for key, value in config_to_flat_dict(cfg).items():
        if isinstance(value, bool):
            lines.append(f"{key} = {'true' if value else 'false'}")
        elif isinstance(value, str):
            lines.append(f'{key} = "{value}"')
        elif isinstance(value, list):
            lines.append(f"{key} = [{', '.join(repr(float(x)) for x in value)}]")
        else:
            lines.append(f"{key} = {value!r}")
    return "\n".join(lines) + "\n"


# --- presets --------------------------------------------------------------


def case1_config(out_dir: str | Path, **overrides: Any) -> RunConfig:
    """Weakly singular run, k = 0.8: snapshots at t = 10, 20, 60, 1000."""
    flat = {
        "mu1": 0.8, "mu2": 0.9, "r": 0.1, "k": 0.8,
        "t_end": 1000.0, "u0": 2.5, "v0": 2.5, "w0": 5.0,
        "snapshot_times": [10.0, 20.0, 60.0, 1000.0],
        "out_dir": str(out_dir),
    }
    flat.update(overrides)
    return config_from_flat_dict(flat)


def case2_config(out_dir: str | Path, **overrides: Any) -> RunConfig:
    """Classical sensitivity run, k = 1: snapshots at t = 10, 20, 60, 1600."""
    flat = {
        "mu1": 0.8, "mu2": 0.9, "r": 0.1, "k": 1.0,
        "t_end": 1600.0, "u0": 2.5, "v0": 2.5, "w0": 5.0,
        "snapshot_times": [10.0, 20.0, 60.0, 1600.0],
        "out_dir": str(out_dir),
    }
    flat.update(overrides)
    return config_from_flat_dict(flat)


# --- persistence helpers --------------------------------------------------


def record_to_json_line(rec: DiagnosticsRecord) -> str:
    return json.dumps(asdict(rec))


def read_diagnostics(path: str | Path) -> list[DiagnosticsRecord]:
    records = []
    for line in Path(path).read_text().splitlines():
        if not line.strip():
            continue
        records.append(DiagnosticsRecord(**json.loads(line)))
    return records


def _snapshot_name(field_name: str, t: float) -> str:
    return f"snap_{field_name}_t{t:g}.csv"


def _write_snapshots(out: Path, s: State, t: float) -> list[str]:
    names = []
    for name, f in (("u", s.u), ("v", s.v), ("w", s.w)):
        fname = _snapshot_name(name, t)
        write_field_csv(out / fname, f, t)
        names.append(fname)
    return names


# --- the run itself -------------------------------------------------------


def _compute_fits(
    records: list[DiagnosticsRecord], window: tuple[float, float]
) -> dict[str, DecayFit | None]:
    """Decay fits for sqrt(dissipation_E) and the three max-norm distances.
    Series that cannot be fitted (too few samples, zeros) map to None."""
    times = [r.t for r in records]
    series = {
        "sqrt_dissipation_E": [math.sqrt(r.dissipation_E) for r in records],
        "linf_u": [r.linf_u for r in records],
        "linf_v": [r.linf_v for r in records],
        "linf_w": [r.linf_w for r in records],
    }
    fits: dict[str, DecayFit | None] = {}
    for name, ys in series.items():
        try:
            fits[name] = fit_exponential_rate(times, ys, window)
        except ValueError:
            fits[name] = None
    return fits


def run(cfg: RunConfig) -> RunRecord:
    """Execute one configured run and persist all artifacts.

    Aborts with BlowupError if the integration produces a non-finite
    value; in that case run.json is still written, flagged incomplete,
    before the error propagates.
    """
    t_start = time.perf_counter()
    grid = cfg.grid()
    eq = equilibrium(cfg.params)
    step_cfg = cfg.step_config()
    advisory = check_stability(step_cfg, grid)

    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)

    n_steps = _step_index(cfg.t_end, cfg.dt, "t_end")
    stride = _step_index(cfg.diag_interval, cfg.dt, "diag_interval")
    snap_at = {_step_index(ts, cfg.dt, "snapshot time"): ts for ts in cfg.snapshot_times}

    state = perturbed_ic((cfg.u0, cfg.v0, cfg.w0), cfg.sigma, cfg.seed, grid, cfg.floor)
    ic_clamps = sum(
        int(np.count_nonzero(f.values == cfg.floor)) for f in (state.u, state.v, state.w)
    )

    artifacts = ["diagnostics.jsonl"]
    records: list[DiagnosticsRecord] = []
    error: str | None = None

    diag_path = out / "diagnostics.jsonl"
    with open(diag_path, "w") as diag_fh:

        def sample(s: State, info: StepInfo, t: float) -> None:
            # a state that is finite but astronomically large can overflow
            # inside the quadratic monitors; that is the same failure as a
            # non-finite step and aborts the run identically
            try:
                with np.errstate(over="ignore", invalid="ignore"):
                    rec = collect(s, eq, info, t=t)
            except ValueError as e:
                raise BlowupError(f"diagnostics at t={t:g}: {e}") from None
            records.append(rec)
            diag_fh.write(record_to_json_line(rec) + "\n")

        try:
            sample(state, StepInfo(ic_clamps, 0.0), 0.0)
            if 0 in snap_at:
                artifacts.extend(_write_snapshots(out, state, 0.0))

            for i in range(1, n_steps + 1):
                state, info = euler_step(state, cfg.params, step_cfg)
                if i in snap_at:
                    artifacts.extend(_write_snapshots(out, state, snap_at[i]))
                if i % stride == 0:
                    sample(state, info, (i // stride) * cfg.diag_interval)
                elif i in snap_at:
                    sample(state, info, snap_at[i])
        except BlowupError as e:
            error = str(e)

    window = (cfg.t_end / 2.0, cfg.t_end * 0.9)
    fits = _compute_fits(records, window) if cfg.t_end > 0.0 else {}

    artifacts.append("run.json")
    record = RunRecord(
        config=config_to_flat_dict(cfg),
        advisory=advisory,
        duration_s=time.perf_counter() - t_start,
        final_diagnostics=records[-1] if records else None,
        artifacts=tuple(artifacts),
        fits=fits,
        incomplete=error is not None,
        error=error,
    )
    with open(out / "run.json", "w") as fh:
        json.dump(record_to_dict(record), fh, indent=2)
        fh.write("\n")

    if error is not None:
        raise BlowupError(error)
    return record
