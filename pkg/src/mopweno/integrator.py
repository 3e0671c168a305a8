"""Third-order SSP Runge-Kutta time marching."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

Operator = Callable[[np.ndarray], np.ndarray]


class IntegrationError(RuntimeError):
    pass


def _check(u: np.ndarray, stage: int) -> np.ndarray:
    if not np.all(np.isfinite(u)):
        raise IntegrationError(f"non-finite values after RK stage {stage}")
    return u


def ssp_rk3_step(u: np.ndarray, dt: float, L: Operator) -> np.ndarray:
    """One step of the three-stage SSP scheme::

        u1 = u + dt L(u)
        u2 = 3/4 u + 1/4 u1 + 1/4 dt L(u1)
        u  = 1/3 u + 2/3 u2 + 2/3 dt L(u2)
    """
    u1 = _check(u + dt * L(u), 1)
    u2 = _check(0.75 * u + 0.25 * u1 + 0.25 * dt * L(u1), 2)
    return _check(u / 3.0 + 2.0 / 3.0 * u2 + 2.0 / 3.0 * dt * L(u2), 3)


@dataclass(frozen=True)
class TimeLoopConfig:
    """Step control. *dt_rule* receives the current state and returns a
    stable step; the final step is clipped so the loop lands on *t_end*."""

    t_end: float
    dt_rule: Callable[[np.ndarray], float]
    max_steps: int = 10_000_000

    @classmethod
    def fixed(cls, t_end: float, dt: float, max_steps: int = 10_000_000) -> TimeLoopConfig:
        return cls(t_end, lambda _u: dt, max_steps)


def cfl_dt_2d(cfl: float, alpha_x: float, alpha_y: float, dx: float, dy: float, form: str = "sum") -> float:
    """Stable step for a 2D problem.

    ``form="sum"`` gives ``cfl / (alpha_x/dx + alpha_y/dy)``, ``form="min"``
    gives ``cfl * min(dx/alpha_x, dy/alpha_y)``.
    """
    if form == "sum":
        return cfl / (alpha_x / dx + alpha_y / dy)
    if form == "min":
        return cfl * min(dx / alpha_x, dy / alpha_y)
    raise ValueError(f"unknown CFL form: {form!r}")


def advance_to(
    u: np.ndarray,
    config: TimeLoopConfig,
    L: Operator,
    callback: Callable[[np.ndarray, float, int], None] | None = None,
) -> tuple[np.ndarray, int]:
    """March *u* from ``t = 0`` to ``config.t_end``; returns ``(u, steps)``."""
    if config.t_end < 0:
        raise ValueError("t_end must be nonnegative")
    t_end = config.t_end
    tol = 1e-12 * max(1.0, t_end)
    t, steps = 0.0, 0
    while t_end - t > tol:
        if steps >= config.max_steps:
            raise IntegrationError(f"max_steps={config.max_steps} reached at t={t}")
        dt = config.dt_rule(u)
        if not dt > 0:
            raise IntegrationError(f"non-positive time step {dt} at t={t}")
        dt = min(dt, t_end - t)
        try:
            u = ssp_rk3_step(u, dt, L)
        except IntegrationError as exc:
            raise IntegrationError(f"{exc} (step {steps + 1}, t={t})") from None
        t += dt
        steps += 1
        if callback is not None:
            callback(u, t, steps)
    return u, steps
