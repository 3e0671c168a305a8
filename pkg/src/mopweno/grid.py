"""Uniform Cartesian grids, cell averages and ghost layers."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

from mopweno.weno_core import N_GHOST

PERIODIC = "periodic"
TRANSMISSIVE = "transmissive"


@dataclass(frozen=True)
class Grid1D:
    x_lo: float
    x_hi: float
    n_cells: int

    def __post_init__(self) -> None:
        if self.n_cells < 1 or not self.x_hi > self.x_lo:
            raise ValueError(f"degenerate grid: [{self.x_lo}, {self.x_hi}] with {self.n_cells} cells")

    @property
    def dx(self) -> float:
        return (self.x_hi - self.x_lo) / self.n_cells

    @property
    def centers(self) -> np.ndarray:
        return self.x_lo + (np.arange(self.n_cells) + 0.5) * self.dx

    @property
    def faces(self) -> np.ndarray:
        return self.x_lo + np.arange(self.n_cells + 1) * self.dx


@dataclass(frozen=True)
class Grid2D:
    x_lo: float
    x_hi: float
    y_lo: float
    y_hi: float
    nx: int
    ny: int

    def __post_init__(self) -> None:
        Grid1D(self.x_lo, self.x_hi, self.nx)
        Grid1D(self.y_lo, self.y_hi, self.ny)

    @property
    def gx(self) -> Grid1D:
        return Grid1D(self.x_lo, self.x_hi, self.nx)

    @property
    def gy(self) -> Grid1D:
        return Grid1D(self.y_lo, self.y_hi, self.ny)

    @property
    def dx(self) -> float:
        return self.gx.dx

    @property
    def dy(self) -> float:
        return self.gy.dx


def fill_ghosts(field: np.ndarray, kind: str, n_ghost: int = N_GHOST, axes: Iterable[int] = (-1,)) -> np.ndarray:
    """Copy of *field* padded with *n_ghost* cells per side along *axes*."""
    field = np.asarray(field, dtype=np.float64)
    if not np.all(np.isfinite(field)):
        bad = np.argwhere(~np.isfinite(field))[0]
        raise ValueError(f"non-finite cell value at index {tuple(bad)}")
    pad = [(0, 0)] * field.ndim
    for ax in axes:
        if field.shape[ax] < n_ghost and kind == PERIODIC:
            raise ValueError("periodic ghosts need at least n_ghost interior cells")
        pad[ax] = (n_ghost, n_ghost)
    if kind == PERIODIC:
        return np.pad(field, pad, mode="wrap")
    if kind == TRANSMISSIVE:
        return np.pad(field, pad, mode="edge")
    raise ValueError(f"unknown boundary kind: {kind!r}")


def interior(ghosted: np.ndarray, n_ghost: int = N_GHOST, axes: Iterable[int] = (-1,)) -> np.ndarray:
    sl = [slice(None)] * ghosted.ndim
    for ax in axes:
        sl[ax] = slice(n_ghost, -n_ghost)
    return ghosted[tuple(sl)]


def _check_jumps(grid: Grid1D, jumps: Iterable[float], tol: float) -> None:
    for x in jumps:
        if not grid.x_lo < x < grid.x_hi:
            continue
        pos = (x - grid.x_lo) / grid.dx
        if abs(pos - round(pos)) > tol:
            raise ValueError(
                f"discontinuity at x={x} falls inside a cell for N={grid.n_cells}; "
                "choose N so that jumps sit on cell faces"
            )


def cell_average_init(
    grid: Grid1D,
    f: Callable[[np.ndarray], np.ndarray],
    quadrature_points: int = 5,
    *,
    breakpoints: Iterable[float] = (),
    jumps: Iterable[float] = (),
    shift: float = 0.0,
) -> np.ndarray:
    """Gauss-Legendre cell averages of ``f(x - shift)``.

    *jumps* are discontinuities of ``f``; a jump strictly inside a cell is
    rejected. *breakpoints* are kinks where ``f`` stays continuous; cells
    containing one are split there so each piece is integrated exactly.
    Both lists are in the coordinates of ``f`` and are shifted along with it.
    """
    if quadrature_points < 5:
        raise ValueError("use at least 5 quadrature points per cell")
    period = grid.x_hi - grid.x_lo

    def moved(points):
        out = []
        for p in points:
            q = p + shift
            q = grid.x_lo + (q - grid.x_lo) % period if shift else q
            out.append(q)
        return out

    _check_jumps(grid, moved(jumps), 1e-9)
    xg, wg = np.polynomial.legendre.leggauss(quadrature_points)
    faces = grid.faces
    dx = grid.dx
    cuts = sorted(moved(breakpoints))
    avgs = np.empty(grid.n_cells)
    for j in range(grid.n_cells):
        a, b = faces[j], faces[j + 1]
        edges = [a] + [p for p in cuts if a < p < b] + [b]
        total = 0.0
        for lo, hi in zip(edges[:-1], edges[1:]):
            x = 0.5 * (hi + lo) + 0.5 * (hi - lo) * xg
            total += 0.5 * (hi - lo) * np.dot(wg, f(x - shift))
        avgs[j] = total / dx
    if not np.all(np.isfinite(avgs)):
        raise ValueError("initial data produced non-finite cell averages")
    return avgs
