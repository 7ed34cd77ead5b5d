"""Uniform vertex-centered grid on a rectangle, plus scalar fields living on it.

Nodes sit at x_i = i*dx for i = 0..nx-1 (same along y), so the domain
boundary passes through the outermost nodes.  A Field stores one value
per node as a (ny, nx) float64 array, values[j, i] = f(x_i, y_j).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np


@dataclass(frozen=True)
class Grid:
    nx: int
    ny: int
    lx: float
    ly: float

    def __post_init__(self):
        if self.nx < 3 or self.ny < 3:
            raise ValueError(
                f"grid needs at least 3 nodes per axis, got {self.nx}x{self.ny}"
            )
        if not (self.lx > 0.0 and self.ly > 0.0):
            raise ValueError(
                f"domain edge lengths must be positive, got lx={self.lx}, ly={self.ly}"
            )

    @property
    def dx(self) -> float:
        return self.lx / (self.nx - 1)

    @property
    def dy(self) -> float:
        return self.ly / (self.ny - 1)

    @property
    def shape(self) -> tuple[int, int]:
        # numpy convention: rows are y, columns are x
        return (self.ny, self.nx)

    def x(self) -> np.ndarray:
        return np.arange(self.nx) * self.dx

    def y(self) -> np.ndarray:
        return np.arange(self.ny) * self.dy

    def meshgrid(self) -> tuple[np.ndarray, np.ndarray]:
        return np.meshgrid(self.x(), self.y())

    def quad_weights(self) -> np.ndarray:
        """Trapezoid weights per node: 1 interior, 1/2 edges, 1/4 corners."""
        w = np.ones(self.shape)
        w[0, :] *= 0.5
        w[-1, :] *= 0.5
        w[:, 0] *= 0.5
        w[:, -1] *= 0.5
        return w


def make_grid(nx: int, ny: int, lx: float, ly: float) -> Grid:
    """Grid with the domain edges given exactly; spacing is lx/(nx-1)."""
    return Grid(nx, ny, lx, ly)


def make_grid_from_spacing(nx: int, ny: int, dx: float, dy: float) -> Grid:
    """Grid with the node spacing given exactly; the domain stretches to fit."""
    if not (dx > 0.0 and dy > 0.0):
        raise ValueError(f"spacings must be positive, got dx={dx}, dy={dy}")
    return Grid(nx, ny, (nx - 1) * dx, (ny - 1) * dy)


@dataclass(frozen=True)
class Field:
    """Immutable scalar field: a grid and one float64 value per node."""

    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        vals = np.array(self.values, dtype=np.float64)
        if vals.shape != self.grid.shape:
            raise ValueError(
                f"values shape {vals.shape} does not match grid shape {self.grid.shape}"
            )
        bad = ~np.isfinite(vals)
        if bad.any():
            j, i = np.argwhere(bad)[0]
            raise ValueError(f"non-finite value at node (i={i}, j={j}): {vals[j, i]!r}")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    def min(self) -> float:
        return float(self.values.min())

    def max(self) -> float:
        return float(self.values.max())

    def linf(self) -> float:
        return float(np.abs(self.values).max())


def full_field(grid: Grid, value: float) -> Field:
    return Field(grid, np.full(grid.shape, float(value)))


def field_from_function(grid: Grid, fn) -> Field:
    """Sample fn(x, y) at the nodes.  fn must accept numpy arrays."""
    xx, yy = grid.meshgrid()
    return Field(grid, fn(xx, yy))


def integrate(f: Field) -> float:
    """Trapezoid quadrature of f over the whole rectangle.

    The reduction is a single np.sum over the weighted node array, so the
    result is bitwise reproducible for identical inputs.
    """
    g = f.grid
    return float(np.sum(g.quad_weights() * f.values)) * g.dx * g.dy


# --- snapshot files -------------------------------------------------------
#
# One scalar field per file.  First line is a comment header carrying the
# grid and the sample time; after that one CSV row of nodes per grid row,
# printed with 17 significant digits so values round-trip exactly.

_HEADER_RE = re.compile(
    r"^# nx=(\d+) ny=(\d+) lx=([^ ]+) ly=([^ ]+) t=([^ ]+)\s*$"
)


def write_field_csv(path: str | Path, f: Field, t: float) -> None:
    g = f.grid
    lines = [f"# nx={g.nx} ny={g.ny} lx={g.lx:.17g} ly={g.ly:.17g} t={t:.17g}"]
    for row in f.values:
        lines.append(",".join(f"{v:.17g}" for v in row))
    Path(path).write_text("\n".join(lines) + "\n")


def read_field_csv(path: str | Path) -> tuple[Field, float]:
    """Inverse of write_field_csv.  Returns the field and the sample time."""
    text = Path(path).read_text()
    lines = text.splitlines()
    if not lines:
        raise ValueError(f"{path}: empty snapshot file")
    m = _HEADER_RE.match(lines[0])
    if m is None:
        raise ValueError(f"{path}: malformed header line: {lines[0]!r}")
    nx, ny = int(m.group(1)), int(m.group(2))
    lx, ly, t = float(m.group(3)), float(m.group(4)), float(m.group(5))
    rows = [ln for ln in lines[1:] if ln.strip()]
    if len(rows) != ny:
        raise ValueError(f"{path}: expected {ny} data rows, found {len(rows)}")
    vals = np.array([[float(tok) for tok in ln.split(",")] for ln in rows])
    if vals.shape != (ny, nx):
        raise ValueError(f"{path}: data shape {vals.shape} does not match header")
    return Field(Grid(nx, ny, lx, ly), vals), t
