"""
Linear advection ``u_t + u_x = 0`` on ``[-1, 1]`` with periodic boundaries
--------------------------------------------------------------------------

Initial conditions: ``sin``, ``sin_sin``, ``sin9``, ``slp`` and ``bicwp``.
The exact solution is the initial profile translated by ``t`` (period 2), so
:func:`exact_solution` simply re-averages the shifted profile.

Two time-marching routes exist. :func:`solve` runs the whole SSP-RK3 loop
inside one compiled kernel, which is what makes ``t = 200`` runs affordable;
:func:`spatial_operator` plus :mod:`mopweno.integrator` is the plain Python
route and is used to cross-check the compiled loop.
"""

from __future__ import annotations

import functools
import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from numba import njit

from mopweno.grid import PERIODIC, Grid1D, cell_average_init, fill_ghosts
from mopweno.schemes import SchemeConfig, line_kernel, resolve_scheme

X_LO, X_HI = -1.0, 1.0
PERIOD = X_HI - X_LO


# {{{ initial conditions


def _wrap(x):
    return X_LO + np.mod(np.asarray(x, dtype=np.float64) - X_LO, PERIOD)


def ic_sin(x):
    return np.sin(np.pi * x)


def ic_sin_sin(x):
    return np.sin(np.pi * x - np.sin(np.pi * x) / np.pi)


def ic_sin9(x):
    return np.sin(np.pi * x) ** 9


@dataclass(frozen=True)
class SLPConstants:
    z: float = -0.7
    delta: float = 0.005
    a: float = 0.5
    alpha: float = 10.0

    @property
    def beta(self) -> float:
        return np.log(2.0) / (36.0 * self.delta**2)


SLP = SLPConstants()


def _gauss(x, beta, z):
    return np.exp(-beta * (x - z) ** 2)


def _ellipse(x, alpha, a):
    return np.sqrt(np.maximum(1.0 - alpha**2 * (x - a) ** 2, 0.0))


def ic_slp(x):
    x = _wrap(x)
    c = SLP
    out = np.zeros_like(x)
    m = (x >= -0.8) & (x <= -0.6)
    xm = x[m]
    out[m] = (
        _gauss(xm, c.beta, c.z - c.delta) + 4 * _gauss(xm, c.beta, c.z) + _gauss(xm, c.beta, c.z + c.delta)
    ) / 6
    out[(x >= -0.4) & (x <= -0.2)] = 1.0
    m = (x >= 0.0) & (x <= 0.2)
    out[m] = 1 - np.abs(10 * (x[m] - 0.1))
    m = (x >= 0.4) & (x <= 0.6)
    xm = x[m]
    out[m] = (
        _ellipse(xm, c.alpha, c.a - c.delta) + 4 * _ellipse(xm, c.alpha, c.a) + _ellipse(xm, c.alpha, c.a + c.delta)
    ) / 6
    return out


def ic_bicwp(x):
    x = _wrap(x)
    out = np.zeros_like(x)
    for lo, hi in ((-0.6, -0.4), (0.2, 0.4), (0.6, 0.8)):
        out[(x > lo) & (x <= hi)] = 0.5
    for lo, hi in ((-0.8, -0.6), (-0.4, -0.2), (0.4, 0.6)):
        out[(x > lo) & (x <= hi)] = 1.0
    return out


@dataclass(frozen=True)
class InitialCondition:
    f: Callable[[np.ndarray], np.ndarray]
    jumps: tuple[float, ...] = ()
    kinks: tuple[float, ...] = ()
    cfl: str = "accuracy"  # or "fixed"


INITIAL_CONDITIONS = {
    "sin": InitialCondition(ic_sin),
    "sin_sin": InitialCondition(ic_sin_sin),
    "sin9": InitialCondition(ic_sin9),
    "slp": InitialCondition(
        ic_slp,
        jumps=(-0.8, -0.6, -0.4, -0.2, 0.4, 0.6),
        kinks=(0.0, 0.1, 0.2, 0.405, 0.595, X_LO),
        cfl="fixed",
    ),
    "bicwp": InitialCondition(ic_bicwp, jumps=(-0.8, -0.6, -0.4, -0.2, 0.2, 0.4, 0.6, 0.8), cfl="fixed"),
}

FIXED_CFL = 0.1


def _ic(name: str) -> InitialCondition:
    try:
        return INITIAL_CONDITIONS[name]
    except KeyError:
        raise KeyError(f"unknown initial condition: {name!r}") from None


# }}}


@dataclass(frozen=True)
class AdvectionProblem:
    ic: str
    n_cells: int
    t_end: float
    cfl_rule: str | None = None

    def __post_init__(self) -> None:
        _ic(self.ic)
        if self.cfl_rule not in (None, "accuracy", "fixed"):
            raise ValueError(f"unknown CFL rule: {self.cfl_rule!r}")

    @property
    def grid(self) -> Grid1D:
        return Grid1D(X_LO, X_HI, self.n_cells)

    @property
    def dt(self) -> float:
        """``CFL * dx`` with ``CFL = dx^(2/3)`` (accuracy) or 0.1 (fixed)."""
        dx = self.grid.dx
        rule = self.cfl_rule or _ic(self.ic).cfl
        cfl = dx ** (2.0 / 3.0) if rule == "accuracy" else FIXED_CFL
        return cfl * dx

    def initial_field(self) -> np.ndarray:
        return exact_solution(self, 0.0)


def exact_solution(problem: AdvectionProblem, t: float) -> np.ndarray:
    """Cell averages of ``u0(x - t)`` with periodic wrap."""
    ic = _ic(problem.ic)
    shift = float(np.mod(t, PERIOD))

    def f(x):
        return ic.f(_wrap(x))

    return cell_average_init(problem.grid, f, breakpoints=ic.kinks, jumps=ic.jumps, shift=shift)


def lf_flux(a, b, alpha: float = 1.0, f: Callable = lambda u: u):
    """Global Lax-Friedrichs flux ``(f(a) + f(b) - alpha (b - a)) / 2``."""
    return 0.5 * (f(a) + f(b) - alpha * (b - a))


# {{{ compiled operator and time loop


@njit(cache=True)
def _fill_periodic(u, ug):
    n = u.shape[0]
    for i in range(n):
        ug[i + 3] = u[i]
    for g in range(3):
        ug[g] = u[n - 3 + g]
        ug[n + 3 + g] = u[g]


@functools.lru_cache(maxsize=None)
def _rk3_kernel(family: int, mop: bool):
    line = line_kernel(family, mop)

    @njit(cache=True)
    def operator(u, ug, uL, uR, out, dx, P, c, d0, d1, d2):
        _fill_periodic(u, ug)
        count = line(ug, uL, uR, P, c, d0, d1, d2)
        for i in range(u.shape[0]):
            fr = 0.5 * (uL[i + 1] + uR[i + 1] - (uR[i + 1] - uL[i + 1]))
            fl = 0.5 * (uL[i] + uR[i] - (uR[i] - uL[i]))
            out[i] = -(fr - fl) / dx
        return count

    @njit(cache=True)
    def loop(u, t_end, dt, dx, max_steps, P, c, d0, d1, d2):
        n = u.shape[0]
        ug = np.empty(n + 6)
        uL = np.empty(n + 1)
        uR = np.empty(n + 1)
        L = np.empty(n)
        u1 = np.empty(n)
        u2 = np.empty(n)
        t = 0.0
        steps = 0
        count = 0
        tol = 1e-12 * max(1.0, t_end)
        while t_end - t > tol:
            if steps >= max_steps:
                return t, steps, count, 1
            h = min(dt, t_end - t)
            count += operator(u, ug, uL, uR, L, dx, P, c, d0, d1, d2)
            for i in range(n):
                u1[i] = u[i] + h * L[i]
            count += operator(u1, ug, uL, uR, L, dx, P, c, d0, d1, d2)
            for i in range(n):
                u2[i] = 0.75 * u[i] + 0.25 * u1[i] + 0.25 * h * L[i]
            count += operator(u2, ug, uL, uR, L, dx, P, c, d0, d1, d2)
            finite = True
            for i in range(n):
                u[i] = u[i] / 3.0 + 2.0 / 3.0 * u2[i] + 2.0 / 3.0 * h * L[i]
                finite &= np.isfinite(u[i])
            if not finite:
                return t, steps, count, 2
            t += h
            steps += 1
        return t, steps, count, 0

    return loop


# }}}


def spatial_operator(u: np.ndarray, scheme: SchemeConfig | str, dx: float) -> np.ndarray:
    """``L(u)_j = -(f_{j+1/2} - f_{j-1/2}) / dx`` built from array calls."""
    if isinstance(scheme, str):
        scheme = resolve_scheme(scheme)
    uL, uR, _ = scheme.reconstruct_line(fill_ghosts(u, PERIODIC))
    flux = lf_flux(uL, uR, 1.0)
    return -(flux[1:] - flux[:-1]) / dx


def non_op_count(u: np.ndarray, scheme: SchemeConfig | str) -> int:
    """Non-OP reconstructions needed for one evaluation of the operator."""
    if isinstance(scheme, str):
        scheme = resolve_scheme(scheme)
    return scheme.reconstruct_line(fill_ghosts(u, PERIODIC))[2]


class SolverError(RuntimeError):
    pass


@dataclass
class AdvectionResult:
    problem: AdvectionProblem
    scheme: str
    u: np.ndarray
    exact: np.ndarray
    steps: int
    non_op_count: int
    wall_time: float
    extra: dict = field(default_factory=dict)


def solve(
    problem: AdvectionProblem,
    scheme: SchemeConfig | str,
    *,
    max_steps: int = 50_000_000,
) -> AdvectionResult:
    """March *problem* to ``t_end`` with SSP-RK3; counts every non-OP
    reconstruction (both biases, all stages) over the run."""
    if isinstance(scheme, str):
        scheme = resolve_scheme(scheme)
    u = problem.initial_field()
    start = time.perf_counter()
    loop = _rk3_kernel(scheme.family, scheme.mop)
    t, steps, count, status = loop(
        u, float(problem.t_end), problem.dt, problem.grid.dx, max_steps, *scheme.kernel_args()
    )
    wall = time.perf_counter() - start
    if status == 1:
        raise SolverError(f"max_steps={max_steps} reached at t={t}")
    if status == 2:
        raise SolverError(f"non-finite value after step {steps} at t={t}")
    return AdvectionResult(problem, scheme.name, u, exact_solution(problem, problem.t_end), steps, count, wall)
