"""Spatial operators: five-point Laplacian, finite-volume chemotaxis
transport, and the pointwise reaction terms.

Zero-flux walls are realized two ways, chosen to be mutually consistent.
The Laplacian reflects across the boundary (ghost node mirrors the first
interior node).  The chemotaxis term is built from face fluxes midway
between nodes; a boundary node owns a half-width control volume whose
outer face carries no flux, which is what keeps the discrete divergence
theorem exact: integrate(divergence(...)) == 0 to rounding.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from .grid import Field
from .params import Params

if TYPE_CHECKING:  # only for annotations; State lives with the stepper
    from .stepping import State


class BlowupError(RuntimeError):
    """A computation produced a non-finite node value."""


def _reflect_pad(a: np.ndarray) -> np.ndarray:
    """Add one ghost ring mirroring the first interior node (zero-flux wall)."""
    p = np.zeros((a.shape[0] + 2, a.shape[1] + 2))
    p[1:-1, 1:-1] = a
    p[0, 1:-1] = a[1, :]
    p[-1, 1:-1] = a[-2, :]
    p[1:-1, 0] = a[:, 1]
    p[1:-1, -1] = a[:, -2]
    # corners of the ghost ring are never read by the five-point stencil
    return p


def _laplacian_array(a: np.ndarray, dx: float, dy: float) -> np.ndarray:
    p = _reflect_pad(a)
    return (p[1:-1, 2:] - 2.0 * a + p[1:-1, :-2]) / (dx * dx) + (
        p[2:, 1:-1] - 2.0 * a + p[:-2, 1:-1]
    ) / (dy * dy)


def laplacian(f: Field) -> Field:
    """Five-point Laplacian with reflecting (zero normal derivative) walls."""
    g = f.grid
    return Field(g, _laplacian_array(f.values, g.dx, g.dy))


def _face_fluxes(
    n: np.ndarray,
    w: np.ndarray,
    chi: float,
    k: float,
    dx: float,
    dy: float,
    upwind: bool,
) -> tuple[np.ndarray, np.ndarray]:
    """Advective flux chi * n / w**k * grad(w) on interior faces.

    fx has shape (ny, nx-1): fx[j, i] sits between nodes i and i+1 of row j.
    fy has shape (ny-1, nx) and sits between rows.  The signal w is averaged
    arithmetically onto the face before the power is taken.  The density n is
    averaged the same way by default; with upwind=True the node the flux
    drains from supplies n instead.
    """
    gwx = (w[:, 1:] - w[:, :-1]) / dx
    wfx = 0.5 * (w[:, 1:] + w[:, :-1])
    if upwind:
        nfx = np.where(gwx >= 0.0, n[:, :-1], n[:, 1:])
    else:
        nfx = 0.5 * (n[:, 1:] + n[:, :-1])
    fx = chi * nfx * wfx ** (-k) * gwx

    gwy = (w[1:, :] - w[:-1, :]) / dy
    wfy = 0.5 * (w[1:, :] + w[:-1, :])
    if upwind:
        nfy = np.where(gwy >= 0.0, n[:-1, :], n[1:, :])
    else:
        nfy = 0.5 * (n[1:, :] + n[:-1, :])
    fy = chi * nfy * wfy ** (-k) * gwy

    return fx, fy


def _face_divergence(
    fx: np.ndarray, fy: np.ndarray, dx: float, dy: float
) -> np.ndarray:
    """Flux differences per control volume.

    Interior nodes own cells of width dx; boundary nodes own half cells
    whose wall-side face is fluxless, hence the factor 2/dx there.
    """
    ny, nx = fy.shape[0] + 1, fx.shape[1] + 1
    div_x = np.empty((ny, nx))
    div_x[:, 1:-1] = (fx[:, 1:] - fx[:, :-1]) / dx
    div_x[:, 0] = 2.0 * fx[:, 0] / dx
    div_x[:, -1] = -2.0 * fx[:, -1] / dx

    div_y = np.empty((ny, nx))
    div_y[1:-1, :] = (fy[1:, :] - fy[:-1, :]) / dy
    div_y[0, :] = 2.0 * fy[0, :] / dy
    div_y[-1, :] = -2.0 * fy[-1, :] / dy

    return div_x + div_y


def chemotaxis_divergence(
    n: Field, w: Field, chi: float, k: float, upwind: bool = False
) -> Field:
    """div( chi * n / w**k * grad(w) ) in conservation form.

    Requires w strictly positive everywhere; a nonpositive node means the
    positivity floor upstream has been bypassed, so this raises rather than
    silently taking a fractional power of a nonpositive number.
    """
    g = n.grid
    if n.grid != w.grid:
        raise ValueError("density and signal live on different grids")
    if w.values.min() <= 0.0:
        j, i = np.argwhere(w.values <= 0.0)[0]
        raise ValueError(
            f"signal must be strictly positive, found {w.values[j, i]!r} at node (i={i}, j={j})"
        )
    fx, fy = _face_fluxes(n.values, w.values, chi, k, g.dx, g.dy, upwind)
    return Field(g, _face_divergence(fx, fy, g.dx, g.dy))


def reaction(u: Field, v: Field, w: Field, p: Params) -> tuple[Field, Field, Field]:
    """Pointwise source terms for the three components."""
    g = u.grid
    ru = w.values - p.mu1 * u.values * u.values
    rv = w.values + p.r * u.values * v.values - p.mu2 * v.values * v.values
    rw = u.values + v.values - w.values
    return Field(g, ru), Field(g, rv), Field(g, rw)


@dataclass(frozen=True)
class RhsTriple:
    """Full right-hand side for one explicit step, plus the largest
    chemotactic face flux magnitude seen while assembling it."""

    du: Field
    dv: Field
    dw: Field
    max_chemo_flux: float


def assemble_rhs(s: "State", p: Params, upwind: bool = False) -> RhsTriple:
    """Diffusion - chemotaxis + reaction for every component at once.

    All three pieces are evaluated from the same input state, so the
    stepper can update the components simultaneously.
    """
    g = s.u.grid
    u, v, w = s.u.values, s.v.values, s.w.values

    if s.w.values.min() <= 0.0:
        j, i = np.argwhere(w <= 0.0)[0]
        raise ValueError(
            f"signal must be strictly positive, found {w[j, i]!r} at node (i={i}, j={j})"
        )

    # overflow is detected below and reported as BlowupError, so the
    # intermediate inf/nan warnings carry no extra information
    with np.errstate(over="ignore", invalid="ignore"):
        fxu, fyu = _face_fluxes(u, w, p.chi1, p.k, g.dx, g.dy, upwind)
        fxv, fyv = _face_fluxes(v, w, p.chi2, p.k, g.dx, g.dy, upwind)
        chem_u = _face_divergence(fxu, fyu, g.dx, g.dy)
        chem_v = _face_divergence(fxv, fyv, g.dx, g.dy)

        du = _laplacian_array(u, g.dx, g.dy) - chem_u + (w - p.mu1 * u * u)
        dv = (
            _laplacian_array(v, g.dx, g.dy)
            - chem_v
            + (w + p.r * u * v - p.mu2 * v * v)
        )
        dw = _laplacian_array(w, g.dx, g.dy) + (u + v - w)

    for name, rate in (("u", du), ("v", dv), ("w", dw)):
        bad = ~np.isfinite(rate)
        if bad.any():
            j, i = np.argwhere(bad)[0]
            raise BlowupError(
                f"non-finite {name} rate at node (i={i}, j={j}) at t={s.t:g}"
            )

    max_flux = 0.0
    for f in (fxu, fyu, fxv, fyv):
        if f.size:
            max_flux = max(max_flux, float(np.abs(f).max()))

    return RhsTriple(Field(g, du), Field(g, dv), Field(g, dw), max_flux)
