"""
Scheme configuration and compiled reconstruction sweeps
-------------------------------------------------------

A scheme is ``JS weights -> optional mapping (plain X or MOP-X) ->
renormalize``. Names follow ``weno-js``, ``weno-m``, ``weno-im``,
``weno-pm6``, ``weno-ppm5``, ``weno-rm260``, ``weno-maim1``, ``weno-acm``,
``mip-weno-acmk``; a ``mop-`` prefix applies the order-preserving transform
(``mop-weno-m``, ``mop-weno-acmk``, ...).
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np
from numba import njit

from mopweno.mappings import JS, MappingSpec, default_spec, gmap
from mopweno.op_transform import mapped_weights, min_dist3, non_op_flag
from mopweno.weno_core import (
    EPSILON,
    N_GHOST,
    betas_scalar,
    candidates_scalar,
    js_weights_scalar,
    js_weights,
    normalize,
    sliding_stencils,
    smoothness_indicators,
    substencil_values,
)

_NAME_TO_MAPPING = {
    "weno-js": "js",
    "weno-m": "m",
    "weno-im": "im_2_0.1",
    "weno-pm6": "pm6",
    "weno-ppm5": "ppm5",
    "weno-rm260": "rm260",
    "weno-maim1": "maim1",
    "weno-acm": "acm",
    "mip-weno-acmk": "mip_acmk",
}

PLAIN_SCHEMES = tuple(_NAME_TO_MAPPING)
MAPPED_SCHEMES = PLAIN_SCHEMES[1:]
MOP_SCHEMES = tuple(
    "mop-weno-acmk" if n == "mip-weno-acmk" else "mop-" + n for n in MAPPED_SCHEMES
)
ALL_SCHEMES = PLAIN_SCHEMES + MOP_SCHEMES


@dataclass(frozen=True)
class SchemeConfig:
    name: str
    spec: MappingSpec
    mop: bool = False

    @property
    def family(self) -> int:
        return self.spec.family

    def kernel_args(self):
        """``(P, c, d0, d1, d2)``, the run-time arguments of the kernels."""
        P, c = self.spec.kernel_params()
        d0, d1, d2 = (float(v) for v in self.spec.ideal)
        return P, c, d0, d1, d2

    @property
    def face(self):
        return face_kernel(self.family, self.mop)

    @property
    def line(self):
        return line_kernel(self.family, self.mop)

    def reconstruct_line(self, u: np.ndarray):
        """``(uL, uR, non_op_count)`` for a ghosted line *u*."""
        n = u.shape[0] - 2 * N_GHOST
        uL, uR = np.empty(n + 1), np.empty(n + 1)
        count = self.line(np.ascontiguousarray(u, dtype=np.float64), uL, uR, *self.kernel_args())
        return uL, uR, int(count)

    def transform(self, w: np.ndarray) -> np.ndarray:
        """Weight hook for :func:`mopweno.weno_core.reconstruct_interface`."""
        return mapped_weights(w, self.spec, mop=self.mop)


def resolve_scheme(name: str) -> SchemeConfig:
    key = name.strip().lower()
    mop = key.startswith("mop-")
    base = key[4:] if mop else key
    if mop and base == "weno-acmk":
        base = "mip-weno-acmk"
    if base not in _NAME_TO_MAPPING:
        raise KeyError(f"unknown scheme: {name!r}")
    spec = default_spec(_NAME_TO_MAPPING[base])
    if mop and spec.family == JS:
        raise KeyError("the MOP transform needs a mapped family, not weno-js")
    return SchemeConfig(key, spec, mop)


# {{{ compiled kernels
#
# The family id and the MOP switch are baked into each kernel as
# compile-time constants; branching on them at run time costs a factor of
# about four in the stencil sweeps.


@functools.lru_cache(maxsize=None)
def face_kernel(family: int, mop: bool):
    """Compiled ``face(um2, um1, u0, up1, up2, P, c, d0, d1, d2)``.

    Returns the left-biased value at ``x[j+1/2]`` and whether the mapping
    reversed the order of the JS weights there.
    """
    family = int(family)
    mop = bool(mop)
    plain = family == JS

    @njit(cache=True)
    def face(um2, um1, u0, up1, up2, P, c, d0, d1, d2):
        b0, b1, b2 = betas_scalar(um2, um1, u0, up1, up2)
        w0, w1, w2 = js_weights_scalar(b0, b1, b2, d0, d1, d2, EPSILON)
        q0, q1, q2 = candidates_scalar(um2, um1, u0, up1, up2)
        if plain:
            return w0 * q0 + w1 * q1 + w2 * q2, False
        r0, r1, r2 = 0, 1, 2
        if mop:
            r0 = min_dist3(w0, d0, d1, d2)
            r1 = min_dist3(w1, d0, d1, d2)
            r2 = min_dist3(w2, d0, d1, d2)
        c0, c1, c2, c3 = c[0], c[1], c[2], c[3]
        a0 = gmap(family, w0, P[r0, 0], P[r0, 1], P[r0, 2], c0, c1, c2, c3)
        a1 = gmap(family, w1, P[r1, 0], P[r1, 1], P[r1, 2], c0, c1, c2, c3)
        a2 = gmap(family, w2, P[r2, 0], P[r2, 1], P[r2, 2], c0, c1, c2, c3)
        flag = non_op_flag(w0, w1, w2, a0, a1, a2)
        total = a0 + a1 + a2
        if total > 0.0:
            return (a0 * q0 + a1 * q1 + a2 * q2) / total, flag
        return d0 * q0 + d1 * q1 + d2 * q2, flag

    return face


@functools.lru_cache(maxsize=None)
def line_kernel(family: int, mop: bool):
    """Compiled ``line(u, uL, uR, P, c, d0, d1, d2) -> non-OP count``.

    ``u`` holds ``N + 6`` values (3 ghosts per side). Face ``f`` (0..N) is
    ``x[f-1/2]`` of interior cell ``f``; ``uL[f]`` is reconstructed from the
    cell on its left, ``uR[f]`` from the mirrored stencil on its right.
    """
    face = face_kernel(family, mop)

    @njit(cache=True)
    def line(u, uL, uR, P, c, d0, d1, d2):
        n = u.shape[0] - 6
        count = 0
        for f in range(n + 1):
            j = f + 2  # left cell of the face, in ghosted indexing
            vl, fl = face(u[j - 2], u[j - 1], u[j], u[j + 1], u[j + 2], P, c, d0, d1, d2)
            vr, fr = face(u[j + 3], u[j + 2], u[j + 1], u[j], u[j - 1], P, c, d0, d1, d2)
            uL[f] = vl
            uR[f] = vr
            count += fl + fr
        return count

    return line


# }}}


def reconstruct_line_reference(u: np.ndarray, scheme: SchemeConfig):
    """Array-path twin of :meth:`SchemeConfig.reconstruct_line`."""
    def recon(st):
        w = js_weights(smoothness_indicators(st), scheme.spec.ideal)
        if scheme.family != JS:
            w = normalize(scheme.transform(w), scheme.spec.ideal)
        return np.sum(w * substencil_values(st), axis=-1)

    st = sliding_stencils(u, N_GHOST)
    left = recon(st)
    n = u.shape[-1] - 2 * N_GHOST
    idx = N_GHOST + np.arange(n + 1)[:, None] + np.arange(-2, 3)[None, ::-1]
    right = recon(u[..., idx])
    return left, right
