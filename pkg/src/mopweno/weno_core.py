"""
Fifth-order WENO building blocks
--------------------------------

Stencils are arrays whose last axis holds the five cell averages
``(u[j-2], u[j-1], u[j], u[j+1], u[j+2])``; the reconstructed value is the
left-biased state at ``x[j+1/2]``. The right-biased state at the same face
comes from the mirrored stencil ``(u[j+3], u[j+2], u[j+1], u[j], u[j-1])``.

The array functions here are the readable reference path; the ``*_scalar``
twins are compiled for the stencil sweeps in :mod:`mopweno.schemes`.
"""

from __future__ import annotations

from typing import Callable

import numpy as np
from numba import njit

IDEAL_WEIGHTS = np.array([0.1, 0.6, 0.3])
EPSILON = 1.0e-40
N_GHOST = 3

#: maps raw JS weights (last axis of size 3) to unnormalized mapped weights
WeightTransform = Callable[[np.ndarray], np.ndarray]


def smoothness_indicators(stencil) -> np.ndarray:
    """Jiang-Shu indicators ``beta_s``, stacked on the last axis."""
    u = np.asarray(stencil, dtype=np.float64)
    um2, um1, u0, up1, up2 = (u[..., i] for i in range(5))
    b0 = 13 / 12 * (um2 - 2 * um1 + u0) ** 2 + 1 / 4 * (um2 - 4 * um1 + 3 * u0) ** 2
    b1 = 13 / 12 * (um1 - 2 * u0 + up1) ** 2 + 1 / 4 * (um1 - up1) ** 2
    b2 = 13 / 12 * (u0 - 2 * up1 + up2) ** 2 + 1 / 4 * (3 * u0 - 4 * up1 + up2) ** 2
    return np.stack([b0, b1, b2], axis=-1)


def js_weights(betas, d=IDEAL_WEIGHTS, eps: float = EPSILON) -> np.ndarray:
    alpha = np.asarray(d) / (eps + np.asarray(betas, dtype=np.float64)) ** 2
    return alpha / alpha.sum(axis=-1, keepdims=True)


def substencil_values(stencil) -> np.ndarray:
    """Third-order candidate values at ``x[j+1/2]`` from each substencil."""
    u = np.asarray(stencil, dtype=np.float64)
    um2, um1, u0, up1, up2 = (u[..., i] for i in range(5))
    q0 = (2 * um2 - 7 * um1 + 11 * u0) / 6
    q1 = (-um1 + 5 * u0 + 2 * up1) / 6
    q2 = (2 * u0 + 5 * up1 - up2) / 6
    return np.stack([q0, q1, q2], axis=-1)


def normalize(alpha, fallback=IDEAL_WEIGHTS) -> np.ndarray:
    """Divide by the sum; rows whose sum vanishes fall back to *fallback*."""
    alpha = np.asarray(alpha, dtype=np.float64)
    total = alpha.sum(axis=-1, keepdims=True)
    ok = total > 0
    w = alpha / np.where(ok, total, 1.0)
    return np.where(ok, w, np.broadcast_to(fallback, w.shape))


def reconstruct_interface(
    stencil, transform: WeightTransform | None = None, *, right: bool = False
) -> np.ndarray:
    """WENO value at ``x[j+1/2]``.

    With ``right=True`` the stencil is read as ``(u[j-1], ..., u[j+3])`` and
    the right-biased value at the same face is returned.
    """
    u = np.asarray(stencil, dtype=np.float64)
    if right:
        u = u[..., ::-1]
    w = js_weights(smoothness_indicators(u))
    if transform is not None:
        w = normalize(transform(w))
    return np.sum(w * substencil_values(u), axis=-1)


def sliding_stencils(u: np.ndarray, n_ghost: int = N_GHOST) -> np.ndarray:
    """All five-point stencils for faces ``j+1/2``, ``j = -1..N-1``.

    *u* carries *n_ghost* ghost cells on each side of the last axis; the
    result has shape ``u.shape[:-1] + (N + 1, 5)``.
    """
    n = u.shape[-1] - 2 * n_ghost
    first = n_ghost - 1 - 2
    idx = first + np.arange(n + 1)[:, None] + np.arange(5)[None, :]
    return u[..., idx]


# {{{ compiled scalar versions


@njit(cache=True, inline="always")
def betas_scalar(um2, um1, u0, up1, up2):
    b0 = 13.0 / 12.0 * (um2 - 2.0 * um1 + u0) ** 2 + 0.25 * (um2 - 4.0 * um1 + 3.0 * u0) ** 2
    b1 = 13.0 / 12.0 * (um1 - 2.0 * u0 + up1) ** 2 + 0.25 * (um1 - up1) ** 2
    b2 = 13.0 / 12.0 * (u0 - 2.0 * up1 + up2) ** 2 + 0.25 * (3.0 * u0 - 4.0 * up1 + up2) ** 2
    return b0, b1, b2


@njit(cache=True, inline="always")
def candidates_scalar(um2, um1, u0, up1, up2):
    q0 = (2.0 * um2 - 7.0 * um1 + 11.0 * u0) / 6.0
    q1 = (-um1 + 5.0 * u0 + 2.0 * up1) / 6.0
    q2 = (2.0 * u0 + 5.0 * up1 - up2) / 6.0
    return q0, q1, q2


@njit(cache=True, inline="always")
def js_weights_scalar(b0, b1, b2, d0, d1, d2, eps):
    a0 = d0 / (eps + b0) ** 2
    a1 = d1 / (eps + b1) ** 2
    a2 = d2 / (eps + b2) ** 2
    total = a0 + a1 + a2
    return a0 / total, a1 / total, a2 / total


# }}}
