"""Error norms, convergence orders and slice diagnostics."""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from mopweno.grid import Grid2D


class ErrorTriple(NamedTuple):
    l1: float
    l2: float
    linf: float


def error_norms(numeric, exact, h: float) -> ErrorTriple:
    numeric = np.asarray(numeric, dtype=np.float64)
    exact = np.asarray(exact, dtype=np.float64)
    if numeric.shape != exact.shape:
        raise ValueError(f"shape mismatch: {numeric.shape} vs {exact.shape}")
    e = np.abs(exact - numeric).ravel()
    if e.size == 0:
        return ErrorTriple(0.0, 0.0, 0.0)
    linf = float(e.max())
    if linf == 0.0:
        return ErrorTriple(0.0, 0.0, 0.0)
    # scaled so squaring tiny errors cannot underflow
    s = e / linf
    return ErrorTriple(float(h * e.sum()), linf * math.sqrt(h * float(np.dot(s, s))), linf)


def convergence_order(e_coarse: float, e_fine: float, ratio: float = 2.0) -> float:
    """``log(e_coarse / e_fine) / log(ratio)``; NaN when either error is zero."""
    if not (e_coarse > 0 and e_fine > 0):
        return math.nan
    return math.log(e_coarse / e_fine) / math.log(ratio)


def convergence_table(ns, errors) -> list[tuple[int, ErrorTriple, tuple[float, float, float]]]:
    """Rows ``(N, errors, orders)``; orders of the first row are NaN."""
    rows = []
    prev = None
    for n, err in zip(ns, errors):
        if prev is None:
            orders = (math.nan,) * 3
        else:
            ratio = n / prev[0]
            orders = tuple(convergence_order(a, b, ratio) for a, b in zip(prev[1], err))
        rows.append((n, ErrorTriple(*err), orders))
        prev = (n, err)
    return rows


def increased_error_pct(e_scheme: float, e_reference: float) -> float:
    if not e_reference > 0:
        raise ValueError(f"reference error must be positive, got {e_reference}")
    return (e_scheme - e_reference) / e_reference * 100.0


def _cell_index(coord: float, lo: float, step: float, n: int) -> int:
    # the cell containing coord; a coordinate on a face goes to the upper cell
    idx = math.floor((coord - lo) / step + 1e-9)
    return min(max(idx, 0), n - 1)


def slice_extract(
    field: np.ndarray,
    grid: Grid2D,
    axis: str,
    coordinate: float,
    window: tuple[float, float] | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """1D profile of a ``(nx, ny)`` cell field along a grid line.

    ``axis="x"`` returns the row of cells containing ``y = coordinate`` as a
    function of x (and vice versa for ``"y"``). *window* limits the profile
    to the cells containing the window ends and everything between.
    Returns ``(positions, values)``.
    """
    field = np.asarray(field)
    if axis == "x":
        lo, hi, step, n = grid.y_lo, grid.y_hi, grid.dy, grid.ny
        along = grid.gx
    elif axis == "y":
        lo, hi, step, n = grid.x_lo, grid.x_hi, grid.dx, grid.nx
        along = grid.gy
    else:
        raise ValueError(f"axis must be 'x' or 'y', got {axis!r}")
    if not lo <= coordinate <= hi:
        raise ValueError(f"coordinate {coordinate} outside [{lo}, {hi}]")
    k = _cell_index(coordinate, lo, step, n)
    line = field[:, k] if axis == "x" else field[k, :]
    pos = along.centers
    if window is not None:
        a, b = window
        if not (along.x_lo <= a <= b <= along.x_hi):
            raise ValueError(f"window {window} outside the domain")
        i0 = _cell_index(a, along.x_lo, along.dx, along.n_cells)
        i1 = _cell_index(b, along.x_lo, along.dx, along.n_cells)
        pos, line = pos[i0 : i1 + 1], line[i0 : i1 + 1]
    return pos, np.array(line)


def total_variation(profile) -> float:
    return float(np.sum(np.abs(np.diff(np.asarray(profile, dtype=np.float64)))))


def oscillation_amplitude(profile) -> float:
    p = np.asarray(profile, dtype=np.float64)
    return float(p.max() - p.min()) if p.size else 0.0
