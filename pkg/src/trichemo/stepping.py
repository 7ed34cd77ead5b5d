"""Explicit Euler time stepping with a positivity floor.

Each step assembles the full right-hand side from the current state,
advances all three components at once, then clamps every node from
below at a small floor so the singular sensitivity never sees a
nonpositive signal.  Clamp events are counted per step; a healthy run
stops clamping as soon as the initial noise has smoothed out.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import Field
from .operators import BlowupError, assemble_rhs
from .params import Params

DEFAULT_FLOOR = 1e-6


@dataclass(frozen=True)
class State:
    u: Field
    v: Field
    w: Field
    t: float

    def __post_init__(self):
        if not (self.u.grid == self.v.grid == self.w.grid):
            raise ValueError("state components live on different grids")

    @property
    def grid(self):
        return self.u.grid


@dataclass(frozen=True)
class StepConfig:
    dt: float
    floor: float = DEFAULT_FLOOR
    upwind: bool = False

    def __post_init__(self):
        if not self.dt > 0.0:
            raise ValueError(f"time step must be positive, got {self.dt}")
        if not self.floor > 0.0:
            raise ValueError(f"positivity floor must be positive, got {self.floor}")


@dataclass(frozen=True)
class StepInfo:
    clamp_count: int
    max_chemo_flux: float


def _advance(name: str, old: np.ndarray, rate: np.ndarray, cfg: StepConfig, t_new: float):
    with np.errstate(over="ignore", invalid="ignore"):
        new = old + cfg.dt * rate
    bad = ~np.isfinite(new)
    if bad.any():
        j, i = np.argwhere(bad)[0]
        raise BlowupError(
            f"non-finite {name} at node (i={i}, j={j}) stepping to t={t_new:g}"
        )
    clamped = int(np.count_nonzero(new < cfg.floor))
    if clamped:
        new = np.maximum(new, cfg.floor)
    return new, clamped


def euler_step(s: State, p: Params, cfg: StepConfig) -> tuple[State, StepInfo]:
    """One forward Euler step of size cfg.dt, floored at cfg.floor."""
    rhs = assemble_rhs(s, p, upwind=cfg.upwind)
    t_new = s.t + cfg.dt
    u_new, cu = _advance("u", s.u.values, rhs.du.values, cfg, t_new)
    v_new, cv = _advance("v", s.v.values, rhs.dv.values, cfg, t_new)
    w_new, cw = _advance("w", s.w.values, rhs.dw.values, cfg, t_new)
    g = s.grid
    return (
        State(Field(g, u_new), Field(g, v_new), Field(g, w_new), t_new),
        StepInfo(clamp_count=cu + cv + cw, max_chemo_flux=rhs.max_chemo_flux),
    )


@dataclass(frozen=True)
class StabilityAdvisory:
    dt: float
    dt_max: float
    passed: bool
    message: str


def check_stability(cfg: StepConfig, grid) -> StabilityAdvisory:
    """Diffusive CFL bound for forward Euler: dt <= 1 / (2/dx^2 + 2/dy^2).

    Advection and reaction tighten the true limit, so this is advisory:
    failing it near-guarantees trouble, passing it does not certify the run.
    """
    dt_max = 0.5 / (1.0 / grid.dx**2 + 1.0 / grid.dy**2)
    passed = cfg.dt <= dt_max
    if passed:
        msg = f"dt={cfg.dt:g} within diffusive bound {dt_max:.6g}"
    else:
        msg = f"dt={cfg.dt:g} exceeds diffusive bound {dt_max:.6g}; expect instability"
    return StabilityAdvisory(dt=cfg.dt, dt_max=dt_max, passed=passed, message=msg)
