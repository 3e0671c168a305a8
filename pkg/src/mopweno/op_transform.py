"""
Order-preserving (MOP) wrapper for mapping sets
-----------------------------------------------

A mapping set ``(g_0, g_1, g_2)`` is order preserving when
``(w_m - w_n) (g_m(w_m) - g_n(w_n)) >= 0`` for every pair, with equal inputs
going to equal outputs. Plain mapped schemes break this because each
substencil carries its own ideal weight. The MOP construction evaluates the
family at every ``w_s`` with the parameters of the substencil whose ideal
weight is nearest to ``w_s``, so all three substencils share one mapping
per interval ``Omega_i``::

    k* = min_dist_index(w_s)
    alpha_s = g(w_s; P[k*])
    w_s^MOP = alpha_s / sum(alpha)

If every ``alpha_s`` vanishes (plateau families with zero slope can do that)
the ideal weights are returned instead of dividing by zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numba import njit

from mopweno.mappings import JS, MappingSpec, gmap
from mopweno.weno_core import IDEAL_WEIGHTS


@dataclass(frozen=True)
class SortedIdealWeights:
    """Ascending ideal weights and the intervals ``Omega_i`` around them."""

    values: np.ndarray
    edges: np.ndarray

    @classmethod
    def from_ideal(cls, d=IDEAL_WEIGHTS) -> SortedIdealWeights:
        v = np.sort(np.asarray(d, dtype=np.float64))
        if np.any(np.diff(v) <= 0):
            raise ValueError("ideal weights must be distinct")
        mids = 0.5 * (v[1:] + v[:-1])
        return cls(v, np.concatenate([[0.0], mids, [1.0]]))

    def interval(self, w: float) -> int:
        """Index *i* with ``w`` in ``Omega_i = (edges[i], edges[i+1]]``."""
        if not 0.0 < w <= 1.0:
            raise ValueError(f"weight outside (0, 1]: {w}")
        return int(np.searchsorted(self.edges, w, side="left")) - 1


SORTED_IDEAL = SortedIdealWeights.from_ideal()


# {{{ compiled kernels


@njit(cache=True)
def min_dist3(w, d0, d1, d2):
    """Smallest index minimizing ``|w - d_s|`` (original order of *d*)."""
    best = 0
    dist = abs(w - d0)
    e = abs(w - d1)
    if e < dist:
        best, dist = 1, e
    if abs(w - d2) < dist:
        best = 2
    return best


@njit(cache=True)
def mapped_alpha(family, w0, w1, w2, P, c, mop):
    """Unnormalized mapped weights for raw weights ``(w0, w1, w2)``.

    ``P`` is the ``(3, 3)`` per-substencil table and ``c`` the shared
    constants; with ``mop`` set the parameter row is chosen by
    :func:`min_dist3` instead of by the substencil index.
    """
    if family == JS:
        return w0, w1, w2
    r0, r1, r2 = 0, 1, 2
    if mop:
        d0, d1, d2 = P[0, 0], P[1, 0], P[2, 0]
        r0 = min_dist3(w0, d0, d1, d2)
        r1 = min_dist3(w1, d0, d1, d2)
        r2 = min_dist3(w2, d0, d1, d2)
    c0, c1, c2, c3 = c[0], c[1], c[2], c[3]
    return (
        gmap(family, w0, P[r0, 0], P[r0, 1], P[r0, 2], c0, c1, c2, c3),
        gmap(family, w1, P[r1, 0], P[r1, 1], P[r1, 2], c0, c1, c2, c3),
        gmap(family, w2, P[r2, 0], P[r2, 1], P[r2, 2], c0, c1, c2, c3),
    )


@njit(cache=True, inline="always")
def _pair_violates(wm, wn, gm, gn):
    if wm == wn:
        return gm != gn
    return (wm - wn) * (gm - gn) < 0.0


@njit(cache=True)
def non_op_flag(w0, w1, w2, a0, a1, a2):
    return (
        _pair_violates(w0, w1, a0, a1)
        or _pair_violates(w0, w2, a0, a2)
        or _pair_violates(w1, w2, a1, a2)
    )


@njit(cache=True)
def _batch_alpha(family, w, P, c, mop, out):
    for i in range(w.shape[0]):
        a0, a1, a2 = mapped_alpha(family, w[i, 0], w[i, 1], w[i, 2], P, c, mop)
        out[i, 0] = a0
        out[i, 1] = a1
        out[i, 2] = a2


@njit(cache=True)
def _batch_flags(family, w, P, c, mop, flags):
    n = 0
    for i in range(w.shape[0]):
        a0, a1, a2 = mapped_alpha(family, w[i, 0], w[i, 1], w[i, 2], P, c, mop)
        flags[i] = non_op_flag(w[i, 0], w[i, 1], w[i, 2], a0, a1, a2)
        n += flags[i]
    return n


# }}}


# {{{ public API


def min_dist_index(w: float, d=IDEAL_WEIGHTS) -> int:
    d0, d1, d2 = (float(v) for v in d)
    return int(min_dist3(float(w), d0, d1, d2))


def _as_triples(w) -> np.ndarray:
    w = np.asarray(w, dtype=np.float64)
    if w.shape[-1] != 3:
        raise ValueError(f"weight triples need a trailing axis of 3, got {w.shape}")
    return w


def mapped_weights(w_js, spec: MappingSpec, *, mop: bool) -> np.ndarray:
    """Unnormalized ``alpha`` for raw weights *w_js* (trailing axis 3)."""
    w = _as_triples(w_js)
    flat = np.ascontiguousarray(w.reshape(-1, 3))
    out = np.empty_like(flat)
    P, c = spec.kernel_params()
    _batch_alpha(spec.family, flat, P, c, mop, out)
    return out.reshape(w.shape)


def mop_mapping(w_js, spec: MappingSpec) -> np.ndarray:
    """Unnormalized MOP weights ``alpha``; see :func:`mop_weights`."""
    return mapped_weights(w_js, spec, mop=True)


def mop_weights(w_js, spec: MappingSpec) -> np.ndarray:
    from mopweno.weno_core import normalize

    return normalize(mop_mapping(w_js, spec), spec.ideal)


@dataclass
class NonOPReport:
    flags: np.ndarray
    pairs: list[tuple[int, int]] = field(default_factory=list)

    @property
    def count(self) -> int:
        return int(np.count_nonzero(self.flags))

    @property
    def flagged(self) -> bool:
        return self.count > 0


def detect_non_op(inputs, outputs) -> NonOPReport:
    """Flag the points where ``outputs`` reverse the ordering of ``inputs``.

    Both arguments have a trailing axis of 3 (one entry per substencil).
    ``pairs`` lists the offending ``(m, n)`` when a single point is given.
    """
    w = _as_triples(inputs)
    g = _as_triples(outputs)
    flags = np.zeros(w.shape[:-1], dtype=bool)
    pairs = []
    for m, n in ((0, 1), (0, 2), (1, 2)):
        dw = w[..., m] - w[..., n]
        dg = g[..., m] - g[..., n]
        bad = np.where(dw == 0, dg != 0, dw * dg < 0)
        flags |= bad
        if bad.ndim == 0 and bad:
            pairs.append((m, n))
    return NonOPReport(flags, pairs)


def count_non_op(w_js, spec: MappingSpec, *, mop: bool) -> int:
    """Number of rows of *w_js* where the (plain or MOP) mapping is non-OP."""
    w = np.ascontiguousarray(_as_triples(w_js).reshape(-1, 3))
    flags = np.zeros(w.shape[0], dtype=np.bool_)
    P, c = spec.kernel_params()
    return int(_batch_flags(spec.family, w, P, c, mop, flags))


def mop_properties_check(
    spec: MappingSpec, *, mop: bool = True, n_samples: int = 2001, seed: int = 0, tol: float = 1e-12
) -> list[str]:
    """Check range, fixed points, endpoints, monotonicity and order
    preservation of a (MOP or plain) mapping set; returns failure messages.

    Monotonicity is only checked inside each ``Omega_i``, since the MOP
    mapping is allowed to jump at the interval edges.
    """
    failures: list[str] = []
    P, c = spec.kernel_params()
    srt = SortedIdealWeights.from_ideal(spec.ideal)

    def g(ws: np.ndarray, s: int) -> np.ndarray:
        trip = np.zeros((ws.size, 3))
        trip[:, s] = ws
        if not mop:
            return mapped_weights(trip, spec, mop=False)[:, s]
        return mapped_weights(trip, spec, mop=True)[:, s]

    grid = np.linspace(0.0, 1.0, n_samples)
    for s in range(3):
        vals = g(grid, s)
        if np.any(vals < -tol) or np.any(vals > 1 + tol):
            failures.append(f"C2 range: g_{s} leaves [0, 1]")
        if abs(vals[0]) > tol or abs(vals[-1] - 1) > tol:
            failures.append(f"C4 endpoints: g_{s}(0)={vals[0]!r}, g_{s}(1)={vals[-1]!r}")
        for i in range(3):
            lo, hi = srt.edges[i], srt.edges[i + 1]
            inside = grid[(grid > lo) & (grid <= hi)]
            if np.any(np.diff(g(inside, s)) < -tol):
                failures.append(f"C1 monotonicity: g_{s} decreases on Omega_{i}")
    fixed = srt.values if mop else spec.ideal
    for s in range(3):
        targets = fixed if mop else fixed[s : s + 1]
        got = g(np.asarray(targets), s)
        if np.any(np.abs(got - targets) > tol):
            failures.append(f"C3 fixed points: g_{s} moves {targets}")

    rng = np.random.default_rng(seed)
    w = rng.random((n_samples * 10, 3))
    n_bad = count_non_op(w, spec, mop=mop)
    if n_bad:
        failures.append(f"C5 order preservation: {n_bad} non-OP triples")
    return failures


# }}}
