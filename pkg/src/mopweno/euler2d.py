"""
2D compressible Euler equations
-------------------------------

Conserved fields are stored as ``U[k, i, j]`` with ``k`` in
``(rho, rho u, rho v, E)``, ``i`` along x and ``j`` along y. Reconstruction is
dimension by dimension at face midpoints, in local characteristic
variables of the arithmetic mean of the two adjacent primitive states.
The y sweep reuses the x machinery with the two momentum components
swapped, which is exactly how the y flux and eigensystem relate to the x
ones.

Boundaries are transmissive (zero-gradient, 3 ghost layers). Fluxes are
global Lax-Friedrichs with one wave-speed bound per direction and stage.
"""

from __future__ import annotations

import functools
import math
import time
from dataclasses import dataclass, field

import numpy as np
from numba import njit

from mopweno.grid import Grid2D
from mopweno.integrator import cfl_dt_2d
from mopweno.schemes import SchemeConfig, face_kernel, resolve_scheme

GAMMA = 1.4
CFL = 0.5


class PositivityError(RuntimeError):
    def __init__(self, message: str, cell=None, t=None):
        super().__init__(message)
        self.cell = cell
        self.t = t


# {{{ state conversions and eigensystems


def prim_to_cons(W, gamma: float = GAMMA) -> np.ndarray:
    """``(rho, u, v, p)`` on axis 0 to ``(rho, rho u, rho v, E)``."""
    W = np.asarray(W, dtype=np.float64)
    rho, u, v, p = W
    _check_positive(rho, p)
    E = p / (gamma - 1.0) + 0.5 * rho * (u * u + v * v)
    return np.stack([rho, rho * u, rho * v, E])


def cons_to_prim(U, gamma: float = GAMMA) -> np.ndarray:
    U = np.asarray(U, dtype=np.float64)
    rho, mx, my, E = U
    u = mx / rho
    v = my / rho
    p = (gamma - 1.0) * (E - 0.5 * rho * (u * u + v * v))
    _check_positive(rho, p)
    return np.stack([rho, u, v, p])


def _check_positive(rho, p) -> None:
    bad = ~((np.asarray(rho) > 0) & (np.asarray(p) > 0))
    if np.any(bad):
        idx = tuple(int(i) for i in np.argwhere(np.atleast_1d(bad))[0])
        raise PositivityError(f"nonpositive density or pressure at cell {idx}", cell=idx)


def sound_speed(rho, p, gamma: float = GAMMA):
    return np.sqrt(gamma * np.asarray(p) / np.asarray(rho))


def flux_x(U, gamma: float = GAMMA) -> np.ndarray:
    rho, mx, my, E = np.asarray(U, dtype=np.float64)
    u = mx / rho
    p = (gamma - 1.0) * (E - 0.5 * (mx * mx + my * my) / rho)
    return np.stack([mx, mx * u + p, my * u, (E + p) * u])


def flux_y(U, gamma: float = GAMMA) -> np.ndarray:
    rho, mx, my, E = np.asarray(U, dtype=np.float64)
    v = my / rho
    p = (gamma - 1.0) * (E - 0.5 * (mx * mx + my * my) / rho)
    return np.stack([my, mx * v, my * v + p, (E + p) * v])


@njit(cache=True)
def _fill_eig(rho, un, ut, p, gamma, L, R):
    """Eigenvectors of the normal-direction Jacobian for components ordered
    ``(rho, normal momentum, tangential momentum, E)``."""
    c = math.sqrt(gamma * p / rho)
    q2 = un * un + ut * ut
    H = gamma * p / ((gamma - 1.0) * rho) + 0.5 * q2
    b1 = (gamma - 1.0) / (c * c)
    b2 = 0.5 * b1 * q2

    R[0, 0] = 1.0
    R[1, 0] = un - c
    R[2, 0] = ut
    R[3, 0] = H - un * c
    R[0, 1] = 1.0
    R[1, 1] = un
    R[2, 1] = ut
    R[3, 1] = 0.5 * q2
    R[0, 2] = 0.0
    R[1, 2] = 0.0
    R[2, 2] = 1.0
    R[3, 2] = ut
    R[0, 3] = 1.0
    R[1, 3] = un + c
    R[2, 3] = ut
    R[3, 3] = H + un * c

    L[0, 0] = 0.5 * (b2 + un / c)
    L[0, 1] = -0.5 * (b1 * un + 1.0 / c)
    L[0, 2] = -0.5 * b1 * ut
    L[0, 3] = 0.5 * b1
    L[1, 0] = 1.0 - b2
    L[1, 1] = b1 * un
    L[1, 2] = b1 * ut
    L[1, 3] = -b1
    L[2, 0] = -ut
    L[2, 1] = 0.0
    L[2, 2] = 1.0
    L[2, 3] = 0.0
    L[3, 0] = 0.5 * (b2 - un / c)
    L[3, 1] = -0.5 * (b1 * un - 1.0 / c)
    L[3, 2] = -0.5 * b1 * ut
    L[3, 3] = 0.5 * b1
    return c


_SWAP = np.array([0, 2, 1, 3])


def x_eigensystem(prim, gamma: float = GAMMA):
    """``(L, R, eigenvalues)`` of the x-flux Jacobian at ``(rho, u, v, p)``."""
    rho, u, v, p = (float(x) for x in prim)
    _check_positive(rho, p)
    L = np.empty((4, 4))
    R = np.empty((4, 4))
    c = _fill_eig(rho, u, v, p, gamma, L, R)
    return L, R, np.array([u - c, u, u, u + c])


def y_eigensystem(prim, gamma: float = GAMMA):
    """Same for the y flux: the x system with the momentum rows/columns
    swapped."""
    rho, u, v, p = (float(x) for x in prim)
    L, R, lam = x_eigensystem((rho, v, u, p), gamma)
    return L[:, _SWAP], R[_SWAP, :], lam


# }}}


# {{{ compiled sweeps


@njit(cache=True)
def _primitives(U, gamma, prim):
    """Fill ``prim`` and return ``(status, i, j, alpha_x, alpha_y)``."""
    nx, ny = U.shape[1], U.shape[2]
    ax = 0.0
    ay = 0.0
    for i in range(nx):
        for j in range(ny):
            rho = U[0, i, j]
            u = U[1, i, j] / rho
            v = U[2, i, j] / rho
            p = (gamma - 1.0) * (U[3, i, j] - 0.5 * rho * (u * u + v * v))
            if not (rho > 0.0 and p > 0.0):
                return 1, i, j, 0.0, 0.0
            prim[0, i, j] = rho
            prim[1, i, j] = u
            prim[2, i, j] = v
            prim[3, i, j] = p
            c = math.sqrt(gamma * p / rho)
            ax = max(ax, abs(u) + c)
            ay = max(ay, abs(v) + c)
    return 0, 0, 0, ax, ay


@njit(cache=True)
def _ghost_lines(U, axis, G):
    """Copy ``U`` into lines ``G[m, cell, k]`` along *axis* with transmissive
    ghosts; for ``axis == 1`` the momentum components are swapped."""
    nx, ny = U.shape[1], U.shape[2]
    if axis == 0:
        for j in range(ny):
            for g in range(nx + 6):
                i = min(max(g - 3, 0), nx - 1)
                for k in range(4):
                    G[j, g, k] = U[k, i, j]
    else:
        for i in range(nx):
            for g in range(ny + 6):
                j = min(max(g - 3, 0), ny - 1)
                G[i, g, 0] = U[0, i, j]
                G[i, g, 1] = U[2, i, j]
                G[i, g, 2] = U[1, i, j]
                G[i, g, 3] = U[3, i, j]


@njit(cache=True, inline="always")
def _normal_flux(r, mn, mt, E, gamma, out):
    un = mn / r
    p = (gamma - 1.0) * (E - 0.5 * (mn * mn + mt * mt) / r)
    out[0] = mn
    out[1] = mn * un + p
    out[2] = mt * un
    out[3] = (E + p) * un


@functools.lru_cache(maxsize=None)
def _state_kernel(family: int, mop: bool):
    face = face_kernel(family, mop)

    @njit(cache=True)
    def states(G, gamma, SL, SR, P, c, d0, d1, d2):
        """Interface states ``SL[m, f]``, ``SR[m, f]`` at the ``n + 1`` faces
        of each ghosted line ``G[m]``. Returns ``(status, m, f, count)``."""
        M, n = G.shape[0], G.shape[1] - 6
        L = np.empty((4, 4))
        R = np.empty((4, 4))
        W = np.empty((6, 4))
        count = 0
        for m in range(M):
            for f in range(n + 1):
                a = f + 2
                b = f + 3
                ra, rb = G[m, a, 0], G[m, b, 0]
                una, unb = G[m, a, 1] / ra, G[m, b, 1] / rb
                uta, utb = G[m, a, 2] / ra, G[m, b, 2] / rb
                pa = (gamma - 1.0) * (G[m, a, 3] - 0.5 * ra * (una * una + uta * uta))
                pb = (gamma - 1.0) * (G[m, b, 3] - 0.5 * rb * (unb * unb + utb * utb))
                rho = 0.5 * (ra + rb)
                p = 0.5 * (pa + pb)
                if not (rho > 0.0 and p > 0.0):
                    return 1, m, f, count
                _fill_eig(rho, 0.5 * (una + unb), 0.5 * (uta + utb), p, gamma, L, R)
                for s in range(6):
                    for q in range(4):
                        acc = 0.0
                        for k in range(4):
                            acc += L[q, k] * G[m, f + s, k]
                        W[s, q] = acc
                for k in range(4):
                    SL[m, f, k] = 0.0
                    SR[m, f, k] = 0.0
                for q in range(4):
                    vl, fl = face(W[0, q], W[1, q], W[2, q], W[3, q], W[4, q], P, c, d0, d1, d2)
                    vr, fr = face(W[5, q], W[4, q], W[3, q], W[2, q], W[1, q], P, c, d0, d1, d2)
                    count += fl + fr
                    for k in range(4):
                        SL[m, f, k] += R[k, q] * vl
                        SR[m, f, k] += R[k, q] * vr
        return 0, 0, 0, count

    return states


@functools.lru_cache(maxsize=None)
def _euler_kernels(family: int, mop: bool):
    states = _state_kernel(family, mop)

    @njit(cache=True)
    def sweep(G, alpha, gamma, SL, SR, F, P, c, d0, d1, d2):
        """Global LF fluxes ``F[m, f]`` from the interface states."""
        st, m, f, count = states(G, gamma, SL, SR, P, c, d0, d1, d2)
        if st != 0:
            return st, m, f, count
        FL = np.empty(4)
        FR = np.empty(4)
        for m in range(F.shape[0]):
            for f in range(F.shape[1]):
                _normal_flux(SL[m, f, 0], SL[m, f, 1], SL[m, f, 2], SL[m, f, 3], gamma, FL)
                _normal_flux(SR[m, f, 0], SR[m, f, 1], SR[m, f, 2], SR[m, f, 3], gamma, FR)
                for k in range(4):
                    F[m, f, k] = 0.5 * (FL[k] + FR[k] - alpha * (SR[m, f, k] - SL[m, f, k]))
        return 0, 0, 0, count

    @njit(cache=True)
    def operator(U, dx, dy, gamma, prim, Gx, Gy, Fx, Fy, out, P, c, d0, d1, d2):
        """``out = dU/dt``. Returns ``(status, i, j, alpha_x, alpha_y, count)``
        with status 1 for a bad cell average and 2 for a bad face state."""
        SLx = np.empty_like(Fx)
        SRx = np.empty_like(Fx)
        SLy = np.empty_like(Fy)
        SRy = np.empty_like(Fy)
        nx, ny = U.shape[1], U.shape[2]
        st, i, j, ax, ay = _primitives(U, gamma, prim)
        if st != 0:
            return st, i, j, 0.0, 0.0, 0
        _ghost_lines(U, 0, Gx)
        st, m, f, cnt_x = sweep(Gx, ax, gamma, SLx, SRx, Fx, P, c, d0, d1, d2)
        if st != 0:
            return 2, f - 1, m, ax, ay, cnt_x
        _ghost_lines(U, 1, Gy)
        st, m, f, cnt_y = sweep(Gy, ay, gamma, SLy, SRy, Fy, P, c, d0, d1, d2)
        if st != 0:
            return 2, m, f - 1, ax, ay, cnt_x + cnt_y
        for i in range(nx):
            for j in range(ny):
                out[0, i, j] = -(Fx[j, i + 1, 0] - Fx[j, i, 0]) / dx - (Fy[i, j + 1, 0] - Fy[i, j, 0]) / dy
                out[1, i, j] = -(Fx[j, i + 1, 1] - Fx[j, i, 1]) / dx - (Fy[i, j + 1, 2] - Fy[i, j, 2]) / dy
                out[2, i, j] = -(Fx[j, i + 1, 2] - Fx[j, i, 2]) / dx - (Fy[i, j + 1, 1] - Fy[i, j, 1]) / dy
                out[3, i, j] = -(Fx[j, i + 1, 3] - Fx[j, i, 3]) / dx - (Fy[i, j + 1, 3] - Fy[i, j, 3]) / dy
        return 0, 0, 0, ax, ay, cnt_x + cnt_y

    @njit(cache=True)
    def loop(U, t_end, dx, dy, gamma, cfl, sum_form, max_steps, P, c, d0, d1, d2):
        """SSP-RK3 to ``t_end``. Returns ``(status, i, j, t, steps, count)``;
        status 3 means the step limit was hit."""
        nx, ny = U.shape[1], U.shape[2]
        prim = np.empty((4, nx, ny))
        Gx = np.empty((ny, nx + 6, 4))
        Gy = np.empty((nx, ny + 6, 4))
        Fx = np.empty((ny, nx + 1, 4))
        Fy = np.empty((nx, ny + 1, 4))
        Lu = np.empty((4, nx, ny))
        U1 = np.empty((4, nx, ny))
        U2 = np.empty((4, nx, ny))
        t = 0.0
        steps = 0
        count = 0
        tol = 1e-12 * max(1.0, t_end)
        while t_end - t > tol:
            if steps >= max_steps:
                return 3, 0, 0, t, steps, count
            st, i, j, ax, ay, cnt = operator(U, dx, dy, gamma, prim, Gx, Gy, Fx, Fy, Lu, P, c, d0, d1, d2)
            count += cnt
            if st != 0:
                return st, i, j, t, steps, count
            if sum_form:
                h = cfl / (ax / dx + ay / dy)
            else:
                h = cfl * min(dx / ax, dy / ay)
            h = min(h, t_end - t)
            U1[:] = U + h * Lu
            st, i, j, ax, ay, cnt = operator(U1, dx, dy, gamma, prim, Gx, Gy, Fx, Fy, Lu, P, c, d0, d1, d2)
            count += cnt
            if st != 0:
                return st, i, j, t, steps, count
            U2[:] = 0.75 * U + 0.25 * U1 + 0.25 * h * Lu
            st, i, j, ax, ay, cnt = operator(U2, dx, dy, gamma, prim, Gx, Gy, Fx, Fy, Lu, P, c, d0, d1, d2)
            count += cnt
            if st != 0:
                return st, i, j, t, steps, count
            U[:] = U / 3.0 + 2.0 / 3.0 * U2 + 2.0 / 3.0 * h * Lu
            t += h
            steps += 1
        st, i, j, ax, ay = _primitives(U, gamma, prim)
        return st, i, j, t, steps, count

    return sweep, operator, loop


# }}}


# {{{ public solver API


def _kernels(scheme: SchemeConfig | str):
    if isinstance(scheme, str):
        scheme = resolve_scheme(scheme)
    return scheme, _euler_kernels(scheme.family, scheme.mop)


def reconstruct_direction(U: np.ndarray, direction: str, scheme: SchemeConfig | str, gamma: float = GAMMA):
    """Characteristic-wise interface states at every face along *direction*.

    Returns ``(UL, UR)`` of shape ``(4, nx + 1, ny)`` for ``"x"`` or
    ``(4, nx, ny + 1)`` for ``"y"``, in conserved variables.
    """
    if isinstance(scheme, str):
        scheme = resolve_scheme(scheme)
    U = np.ascontiguousarray(U, dtype=np.float64)
    axis = {"x": 0, "y": 1}[direction]
    nx, ny = U.shape[1:]
    n, M = (nx, ny) if axis == 0 else (ny, nx)
    G = np.empty((M, n + 6, 4))
    _ghost_lines(U, axis, G)
    UL, UR = _states_along(G, scheme, gamma)
    if axis == 1:
        UL, UR = UL[:, :, _SWAP], UR[:, :, _SWAP]
        return UL.transpose(2, 0, 1), UR.transpose(2, 0, 1)
    return UL.transpose(2, 1, 0), UR.transpose(2, 1, 0)


def _states_along(G, scheme: SchemeConfig, gamma: float):
    M, n = G.shape[0], G.shape[1] - 6
    SL = np.empty((M, n + 1, 4))
    SR = np.empty((M, n + 1, 4))
    st, m, f, _ = _state_kernel(scheme.family, scheme.mop)(G, gamma, SL, SR, *scheme.kernel_args())
    if st:
        raise PositivityError(f"nonpositive face-average state on line {m}, face {f}", cell=(m, f))
    return SL, SR


def _raise_status(st: int, i: int, j: int, t: float | None = None) -> None:
    at = "" if t is None else f" at t={t:.6g}"
    if st == 1:
        raise PositivityError(f"nonpositive density or pressure in cell ({i}, {j}){at}", cell=(i, j), t=t)
    if st == 2:
        raise PositivityError(f"nonpositive face-average state next to cell ({i}, {j}){at}", cell=(i, j), t=t)


def euler_spatial_operator(
    U: np.ndarray, grid: Grid2D, scheme: SchemeConfig | str, gamma: float = GAMMA
) -> tuple[np.ndarray, int]:
    """``(dU/dt, non_op_count)`` for conserved fields *U* of shape
    ``(4, nx, ny)`` with transmissive boundaries."""
    scheme, (_, operator, _) = _kernels(scheme)
    U = np.ascontiguousarray(U, dtype=np.float64)
    nx, ny = U.shape[1:]
    out = np.empty_like(U)
    st, i, j, _, _, count = operator(
        U,
        grid.dx,
        grid.dy,
        gamma,
        np.empty_like(U),
        np.empty((ny, nx + 6, 4)),
        np.empty((nx, ny + 6, 4)),
        np.empty((ny, nx + 1, 4)),
        np.empty((nx, ny + 1, 4)),
        out,
        *scheme.kernel_args(),
    )
    _raise_status(st, i, j)
    return out, int(count)


def max_wave_speeds(U: np.ndarray, gamma: float = GAMMA) -> tuple[float, float]:
    rho, u, v, p = cons_to_prim(U, gamma)
    c = sound_speed(rho, p, gamma)
    return float(np.max(np.abs(u) + c)), float(np.max(np.abs(v) + c))


def stable_dt(U: np.ndarray, grid: Grid2D, cfl: float = CFL, form: str = "sum", gamma: float = GAMMA) -> float:
    ax, ay = max_wave_speeds(U, gamma)
    return cfl_dt_2d(cfl, ax, ay, grid.dx, grid.dy, form)


# }}}


# {{{ test problems


def _cell_average_2d(grid: Grid2D, prim_fn, jumps_x=(), jumps_y=(), points: int = 5) -> np.ndarray:
    """Tensor Gauss-Legendre averages of the conserved variables of
    ``prim_fn(x, y)``; jumps must lie on cell faces."""
    for lo, d, n, jumps in ((grid.x_lo, grid.dx, grid.nx, jumps_x), (grid.y_lo, grid.dy, grid.ny, jumps_y)):
        for xj in jumps:
            pos = (xj - lo) / d
            if 0 < pos < n and abs(pos - round(pos)) > 1e-9:
                raise ValueError(f"discontinuity at {xj} falls inside a cell")
    xg, wg = np.polynomial.legendre.leggauss(points)
    xc = grid.gx.centers
    yc = grid.gy.centers
    U = np.zeros((4, grid.nx, grid.ny))
    for a, wa in zip(xg, wg):
        for b, wb in zip(xg, wg):
            X, Y = np.meshgrid(xc + 0.5 * grid.dx * a, yc + 0.5 * grid.dy * b, indexing="ij")
            U += 0.25 * wa * wb * prim_to_cons(prim_fn(X, Y))
    return U


@dataclass(frozen=True)
class ShockVortex:
    eps: float = 0.3
    rc: float = 0.05
    alpha: float = 0.204
    xc: float = 0.25
    yc: float = 0.5
    p_right: float = 1.3
    gamma: float = GAMMA
    t_end: float = 0.35
    x_shock: float = 0.5

    @property
    def left(self) -> tuple[float, float, float, float]:
        return 1.0, math.sqrt(self.gamma), 0.0, 1.0

    @property
    def right(self) -> tuple[float, float, float, float]:
        g, pR = self.gamma, self.p_right
        rhoL, uL, _, _ = self.left
        rho = rhoL * (g - 1 + (g + 1) * pR) / (g + 1 + (g - 1) * pR)
        u = uL * (1 - pR) / math.sqrt(g - 1 + pR * (g + 1))
        return rho, u, 0.0, pR

    def primitive(self, x, y):
        g = self.gamma
        rhoL, uL, vL, pL = self.left
        rhoR, uR, vR, pR = self.right
        r2 = ((x - self.xc) ** 2 + (y - self.yc) ** 2) / self.rc**2
        e = np.exp(self.alpha * (1 - r2))
        dT = -(g - 1) * self.eps**2 * e**2 / (4 * self.alpha * g)
        drho = rhoL**2 / ((g - 1) * pL) * dT
        du = self.eps * (y - self.yc) / self.rc * e
        dv = -self.eps * (x - self.xc) / self.rc * e
        dp = g * rhoL**2 / ((g - 1) * rhoL) * dT
        left = x < self.x_shock
        return np.stack(
            [
                np.where(left, rhoL + drho, rhoR),
                np.where(left, uL + du, uR),
                np.where(left, vL + dv, vR),
                np.where(left, pL + dp, pR),
            ]
        )

    def initial_field(self, grid: Grid2D) -> np.ndarray:
        return _cell_average_2d(grid, self.primitive, jumps_x=(self.x_shock,))


@dataclass(frozen=True)
class Riemann4:
    """Four constant quadrants split at ``x = 0.5``, ``y = 0.5``."""

    upper_right: tuple[float, ...] = (1.1, 0.0, 0.0, 1.1)
    upper_left: tuple[float, ...] = (0.5065, 0.8939, 0.0, 0.35)
    lower_left: tuple[float, ...] = (1.1, 0.8939, 0.8939, 1.1)
    lower_right: tuple[float, ...] = (0.5065, 0.0, 0.8939, 0.35)
    t_end: float = 0.25

    def primitive(self, x, y):
        right = x >= 0.5
        upper = y >= 0.5
        out = np.empty((4,) + np.shape(x))
        for k in range(4):
            out[k] = np.where(
                upper,
                np.where(right, self.upper_right[k], self.upper_left[k]),
                np.where(right, self.lower_right[k], self.lower_left[k]),
            )
        return out

    def initial_field(self, grid: Grid2D) -> np.ndarray:
        return _cell_average_2d(grid, self.primitive, jumps_x=(0.5,), jumps_y=(0.5,))


PROBLEMS_2D = {"shock_vortex": ShockVortex, "riemann4": Riemann4}

# slice used for the post-shock oscillation proxy: (axis, coordinate, window)
SLICES = {
    "shock_vortex": ("x", 0.65, (0.70, 0.76)),
    "riemann4": ("x", 0.5, (0.65, 0.692)),
}


@dataclass
class EulerResult:
    problem: str
    scheme: str
    grid: Grid2D
    U: np.ndarray
    t: float
    steps: int
    non_op_count: int
    wall_time: float
    extra: dict = field(default_factory=dict)

    @property
    def primitive(self) -> np.ndarray:
        return cons_to_prim(self.U)


def solve_euler(
    problem: str,
    n: int,
    scheme: SchemeConfig | str,
    *,
    t_end: float | None = None,
    cfl: float = CFL,
    cfl_form: str = "sum",
    max_steps: int = 1_000_000,
) -> EulerResult:
    """Run *problem* (``shock_vortex`` or ``riemann4``) on ``n x n`` cells
    of the unit square with SSP-RK3."""
    try:
        setup = PROBLEMS_2D[problem]()
    except KeyError:
        raise KeyError(f"unknown 2D problem: {problem!r}") from None
    if cfl_form not in ("sum", "min"):
        raise ValueError(f"unknown CFL form: {cfl_form!r}")
    scheme, (_, _, loop) = _kernels(scheme)
    grid = Grid2D(0.0, 1.0, 0.0, 1.0, n, n)
    U = setup.initial_field(grid)
    t_end = setup.t_end if t_end is None else float(t_end)
    start = time.perf_counter()
    st, i, j, t, steps, count = loop(
        U, t_end, grid.dx, grid.dy, GAMMA, cfl, cfl_form == "sum", max_steps, *scheme.kernel_args()
    )
    wall = time.perf_counter() - start
    if st == 3:
        raise RuntimeError(f"max_steps={max_steps} reached at t={t}")
    _raise_status(st, i, j, t)
    if not np.all(np.isfinite(U)):
        raise PositivityError(f"non-finite state at t={t}", t=t)
    return EulerResult(problem, scheme.name, grid, U, t, steps, int(count), wall)


# }}}
