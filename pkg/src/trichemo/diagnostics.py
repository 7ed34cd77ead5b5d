"""Scalar diagnostics sampled along a run, and exponential-rate fitting.

The two convergence functionals relate the state to the uniform steady
state (us, vs, ws): relative_entropy integrates f - fs - fs*log(f/fs)
for u and v, plus twice that expression for w; deviation_energy is the
plain squared L2 distance of u and v from their steady values.  Along a
decaying solution the first is nonincreasing and controls the second.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .grid import Field, integrate
from .params import Equilibrium
from .stepping import State, StepInfo


def _entropy_piece(f: Field, ref: float) -> float:
    vals = f.values
    if vals.min() <= 0.0:
        j, i = np.argwhere(vals <= 0.0)[0]
        raise ValueError(
            f"entropy needs strictly positive values, found {vals[j, i]!r} at node (i={i}, j={j})"
        )
    # f - ref - ref*log(f/ref) rewritten as ref*(d - log1p(d)) with
    # d = (f - ref)/ref.  The direct form cancels catastrophically near
    # the reference value (log(f/ref) rounds at ulp(1)); this form keeps
    # every node value exact to rounding and nonnegative, because
    # log1p(d) <= d holds for the rounded result as well.
    d = (vals - ref) / ref
    return ref * integrate(Field(f.grid, d - np.log1p(d)))


def mixing_entropy(s: State) -> float:
    """integrate(u log u) + integrate(v log v); bounded along a run."""
    for f, name in ((s.u, "u"), (s.v, "v")):
        if f.values.min() <= 0.0:
            raise ValueError(f"mixing entropy needs {name} strictly positive")
    eu = integrate(Field(s.u.grid, s.u.values * np.log(s.u.values)))
    ev = integrate(Field(s.v.grid, s.v.values * np.log(s.v.values)))
    return eu + ev


def relative_entropy(s: State, eq: Equilibrium) -> float:
    """Lyapunov functional of the state about the uniform steady state.

    Zero exactly at the steady state, strictly positive elsewhere, and
    nonincreasing in time once transients vanish.  The signal piece is
    weighted twice.
    """
    return (
        _entropy_piece(s.u, eq.u_star)
        + _entropy_piece(s.v, eq.v_star)
        + 2.0 * _entropy_piece(s.w, eq.w_star)
    )


def deviation_energy(s: State, eq: Equilibrium) -> float:
    """Squared L2 distance of the two densities from their steady values."""
    du = s.u.values - eq.u_star
    dv = s.v.values - eq.v_star
    return integrate(Field(s.u.grid, du * du)) + integrate(Field(s.v.grid, dv * dv))


@dataclass(frozen=True)
class DiagnosticsRecord:
    """One sample of every monitored scalar.

    linf_* are max-norm distances to the steady state, min_* are plain
    nodewise minima, and mass_* are quadrature integrals over the domain.
    clamp_count and max_chemo_flux echo the integrator's report for the
    step that produced this state (zero flux and the initial clamp tally
    for the t = 0 record).
    """

    t: float
    mass_u: float
    mass_v: float
    mass_w: float
    linf_u: float
    linf_v: float
    linf_w: float
    min_u: float
    min_v: float
    min_w: float
    entropy: float
    lyapunov_F: float
    dissipation_E: float
    clamp_count: int
    max_chemo_flux: float


def collect(
    s: State, eq: Equilibrium, info: StepInfo, t: float | None = None
) -> DiagnosticsRecord:
    """One diagnostics sample.  Pass t to stamp a nominal sample time
    instead of the accumulated state clock."""
    return DiagnosticsRecord(
        t=float(s.t if t is None else t),
        mass_u=integrate(s.u),
        mass_v=integrate(s.v),
        mass_w=integrate(s.w),
        linf_u=float(np.abs(s.u.values - eq.u_star).max()),
        linf_v=float(np.abs(s.v.values - eq.v_star).max()),
        linf_w=float(np.abs(s.w.values - eq.w_star).max()),
        min_u=s.u.min(),
        min_v=s.v.min(),
        min_w=s.w.min(),
        entropy=mixing_entropy(s),
        lyapunov_F=relative_entropy(s, eq),
        dissipation_E=deviation_energy(s, eq),
        clamp_count=info.clamp_count,
        max_chemo_flux=info.max_chemo_flux,
    )


@dataclass(frozen=True)
class DecayFit:
    """Least-squares fit of y(t) ~ c_amp * exp(-rate * t) on a window."""

    c_amp: float
    rate: float
    fit_window: tuple[float, float]
    residual: float
    n_samples: int


def fit_exponential_rate(
    times: Sequence[float], values: Sequence[float], window: tuple[float, float]
) -> DecayFit:
    """Fit log(y) = log(c) - rate*t by least squares over the window.

    Samples with t inside [window[0], window[1]] (inclusive) take part.
    All participating values must be strictly positive and at least five
    samples must land in the window; the residual is the rms misfit of
    log(y), so a value near zero means cleanly exponential data.
    """
    t_arr = np.asarray(times, dtype=np.float64)
    y_arr = np.asarray(values, dtype=np.float64)
    if t_arr.shape != y_arr.shape or t_arr.ndim != 1:
        raise ValueError("times and values must be equal-length 1-d sequences")
    lo, hi = float(window[0]), float(window[1])
    if not hi > lo:
        raise ValueError(f"fit window must have positive width, got ({lo}, {hi})")
    mask = (t_arr >= lo) & (t_arr <= hi)
    t_sel, y_sel = t_arr[mask], y_arr[mask]
    if t_sel.size < 5:
        raise ValueError(
            f"need at least 5 samples inside the fit window, found {t_sel.size}"
        )
    if y_sel.min() <= 0.0:
        raise ValueError("fit values must be strictly positive inside the window")
    z = np.log(y_sel)
    slope, intercept = np.polyfit(t_sel, z, 1)
    pred = intercept + slope * t_sel
    residual = float(np.sqrt(np.mean((z - pred) ** 2)))
    return DecayFit(
        c_amp=float(math.exp(intercept)),
        rate=float(-slope + 0.0),
        fit_window=(lo, hi),
        residual=residual,
        n_samples=int(t_sel.size),
    )
