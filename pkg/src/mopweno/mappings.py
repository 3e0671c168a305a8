"""
Mapping functions for mapped WENO weights
-----------------------------------------

Every family is written as ``g(omega; P_1, ..., P_mP)`` where the ``P_j`` are
the parameters tied to one substencil (``d_s`` always comes first) and the
remaining constants are shared by all substencils. Keeping the per-substencil
parameters separate is what lets :mod:`mopweno.op_transform` swap them.

The scalar ``eval_*`` functions are numba-compiled so they can be called from
the stencil kernels. They only use arithmetic, ``abs``, ``min``/``max`` and
``**``, so ``eval_*.py_func`` also runs on :mod:`mpmath` numbers.

Registry names: ``js``, ``m``, ``im_2_0.1``, ``pm6``, ``ppm5``, ``rm260``,
``maim1``, ``acm``, ``mip_acmk``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numba import njit

from mopweno.weno_core import IDEAL_WEIGHTS

# family ids used inside the compiled kernels
JS, M, IM, PM, PPM5, RM260, MAIM1, ACM, MIP_ACMK = range(9)

FAMILY_NAMES = {
    JS: "JS",
    M: "M",
    IM: "IM",
    PM: "PM",
    PPM5: "PPM5",
    RM260: "RM",
    MAIM1: "MAIM1",
    ACM: "ACM",
    MIP_ACMK: "MIP_ACMk",
}

# number of per-substencil parameters
N_PARAMS = {JS: 0, M: 1, IM: 1, PM: 1, PPM5: 1, RM260: 1, MAIM1: 2, ACM: 2, MIP_ACMK: 3}

# order of the critical point at omega = d_s; None means infinite
CRITICAL_ORDER = {JS: None, M: 2, IM: 2, PM: 6, PPM5: 4, RM260: 3, MAIM1: 10, ACM: None, MIP_ACMK: None}

TINY = 1.0e-300


# {{{ scalar mappings


@njit(cache=True)
def eval_M(w, d):
    return w * (d + d * d - 3.0 * d * w + w * w) / (d * d + (1.0 - 2.0 * d) * w)


# Each family below is written as ``d + N(w) / D(w)`` and reaches g(0) = 0 by
# cancelling d. Far below d that leaves round-off of size ulp(d) instead of a
# tiny value, enough to reverse the order of two small weights, so the
# branch ``w <= d/2`` uses an equivalent form with an explicit factor w.


@njit(cache=True)
def eval_IM(w, d, k, A):
    k = int(k)
    x = w - d
    if w <= 0.5 * d:
        s = A * x**k
        return w * (s + d * (1.0 - w)) / (s + w * (1.0 - w))
    return d + x ** (k + 1) * A / (x**k * A + w * (1.0 - w))


@njit(cache=True)
def eval_PM(w, d, k):
    k = int(k)
    if w <= 0.5 * d:
        # d a^2 sum_{m<=k} (m + 1) b^m with a = w/d, b = 1 - a
        a = w / d
        b = 1.0 - a
        acc = 0.0
        for m in range(k, -1, -1):
            acc = acc * b + (m + 1)
        return d * a * a * acc
    if w <= d:
        c1 = (-1.0) ** k * (k + 1) / d ** (k + 1)
        c2 = d / (k + 1)
    else:
        c1 = -(k + 1) / (1.0 - d) ** (k + 1)
        c2 = (d - (k + 2)) / (k + 1)
    return c1 * (w - d) ** (k + 1) * (w + c2) + d


@njit(cache=True)
def eval_PPM5(w, d):
    if w <= d:
        a = w / d
        if a <= 0.5:
            b = 1.0 - a
            return d * a * (1.0 + b * (1.0 + b * (1.0 + b * (1.0 + b))))
        return d * (1.0 + (a - 1.0) ** 5)
    b = 1.0 / (d - 1.0)
    return d + b**4 * (w - d) ** 5


@njit(cache=True)
def rm260_coefficients(d):
    a0 = d**6
    a1 = -7.0 * d**5
    a2 = 21.0 * d**4
    a3 = (1.0 - d) ** 6 - (a0 + a1 + a2)
    return a0, a1, a2, a3


@njit(cache=True)
def eval_RM260(w, d):
    a0, a1, a2, a3 = rm260_coefficients(d)
    q = a0 + w * (a1 + w * (a2 + w * a3))
    if w <= 0.5 * d:
        # d q + (w - d)^7: the w^0..w^2 terms cancel exactly
        r = (d * a3 + 35.0 * d**4) + w * (-35.0 * d**3 + w * (21.0 * d * d + w * (-7.0 * d + w)))
        return w * w * w * r / q
    return d + (w - d) ** 7 / q


@njit(cache=True)
def eval_sgm(x, delta, B, k):
    """Smoothed sign: ``x/|x|`` outside ``(-delta, delta)``."""
    ax = abs(x)
    if ax >= delta:
        return x / ax
    if x == 0:
        return 0.0 * x
    return x / ((B * (delta * delta - x * x)) ** (int(k) + 3) + ax)


@njit(cache=True)
def eval_MAIM1(w, d, m, k, A, delta, eps_a):
    k = int(k)
    x = w - d
    even = (1 + (-1) ** k) // 2
    gate = even + (1 - even) * eval_sgm(x, delta, 1.0, k)
    left = max(w, TINY) ** (d / (m * w + eps_a))
    right = max(1.0 - w, TINY) ** ((1.0 - d) / (m * (1.0 - w) + eps_a))
    s = A * gate * x**k
    if w <= 0.5 * d:
        return (s * w + d * left * right) / (s + left * right)
    return d + s * x / (s + left * right)


@njit(cache=True)
def acm_delta(d, cfs, mu):
    """``mu`` clipped below the admissible bound for the transition width."""
    bound = min(
        min(cfs, d - cfs),
        min((1.0 - d) * (1.0 - cfs / d), (1.0 - d) / d * cfs),
    )
    if mu < bound:
        return mu
    return 0.5 * bound


@njit(cache=True)
def eval_ACM(w, d, cfs, B, k, mu):
    delta = acm_delta(d, cfs, mu)
    if w <= d:
        return 0.5 * d * eval_sgm(w - cfs, delta, B, k) + 0.5 * d
    cfs_bar = 1.0 - (1.0 - d) / d * cfs
    return 0.5 * (1.0 - d) * eval_sgm(w - cfs_bar, delta, B, k) + 0.5 * (1.0 + d)


@njit(cache=True)
def eval_MIP_ACMk(w, d, cfs, ks):
    cfs_bar = 1.0 - (1.0 - d) / d * cfs
    if w < cfs:
        return ks * w
    if w <= cfs_bar:
        return d + 0.0 * w
    return 1.0 - ks * (1.0 - w)


@njit(cache=True)
def gmap(family, w, p0, p1, p2, c0, c1, c2, c3):
    """Evaluate family *family* at *w*; ``p*`` are the per-substencil
    parameters and ``c*`` the shared constants (unused slots are ignored)."""
    if family == M:
        return eval_M(w, p0)
    if family == IM:
        return eval_IM(w, p0, c0, c1)
    if family == PM:
        return eval_PM(w, p0, c0)
    if family == PPM5:
        return eval_PPM5(w, p0)
    if family == RM260:
        return eval_RM260(w, p0)
    if family == MAIM1:
        return eval_MAIM1(w, p0, p1, c0, c1, c2, c3)
    if family == ACM:
        return eval_ACM(w, p0, p1, c0, c1, c2)
    if family == MIP_ACMK:
        return eval_MIP_ACMk(w, p0, p1, p2)
    return w


@njit(cache=True)
def _gmap_array(family, w, p, c, out):
    flat_w = w.ravel()
    flat_out = out.ravel()
    for i in range(flat_w.size):
        flat_out[i] = gmap(family, flat_w[i], p[0], p[1], p[2], c[0], c[1], c[2], c[3])


# }}}


# {{{ specs and registry


@dataclass(frozen=True)
class MappingSpec:
    """A mapping family with its Table-style parameters.

    *params* has one row per substencil; column ``j`` holds ``P_{s, j+1}``
    (so column 0 is always the ideal weight). *consts* holds the family-wide
    constants in the order the compiled evaluator expects.
    """

    family: int
    params: np.ndarray
    consts: tuple[float, ...] = ()
    label: str = ""

    def __post_init__(self) -> None:
        if self.family not in N_PARAMS:
            raise ValueError(f"unknown mapping family: {self.family!r}")
        params = np.atleast_2d(np.asarray(self.params, dtype=np.float64))
        if params.shape[0] != 3:
            raise ValueError(f"expected 3 substencil rows, got {params.shape[0]}")
        if params.shape[1] != max(N_PARAMS[self.family], 1):
            raise ValueError(
                f"{FAMILY_NAMES[self.family]} takes {N_PARAMS[self.family]} "
                f"parameter(s) per substencil, got {params.shape[1]}"
            )
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "consts", tuple(float(v) for v in self.consts))
        _validate(self)

    @property
    def n_params(self) -> int:
        return N_PARAMS[self.family]

    @property
    def ideal(self) -> np.ndarray:
        return self.params[:, 0]

    def kernel_params(self) -> tuple[np.ndarray, np.ndarray]:
        """Padded ``(3, 3)`` parameter table and length-4 constant vector."""
        p = np.zeros((3, 3))
        p[:, : self.params.shape[1]] = self.params
        c = np.zeros(4)
        c[: len(self.consts)] = self.consts
        return p, c


def _validate(spec: MappingSpec) -> None:
    d = spec.params[:, 0]
    if np.any(d <= 0) or np.any(d >= 1):
        raise ValueError("ideal weights must lie in (0, 1)")
    fam, c = spec.family, spec.consts
    if fam == IM:
        k, A = c
        if k <= 0 or k % 2 != 0 or A <= 0:
            raise ValueError(f"IM needs an even k > 0 and A > 0, got k={k}, A={A}")
    elif fam == PM and (len(c) != 1 or c[0] < 2):
        raise ValueError("PM needs k >= 2")
    elif fam == MAIM1 and (len(c) != 4 or c[0] < 1 or c[1] <= 0 or c[2] <= 0):
        raise ValueError("MAIM1 needs (k >= 1, A > 0, delta > 0, eps_A)")
    elif fam in (ACM, MIP_ACMK):
        cfs = spec.params[:, 1]
        if np.any(cfs <= 0) or np.any(cfs >= d):
            raise ValueError("CFS_s must lie in (0, d_s)")
        if fam == MIP_ACMK and np.any(
            (spec.params[:, 2] < 0) | (spec.params[:, 2] > d / cfs)
        ):
            raise ValueError("k_s must lie in [0, d_s / CFS_s]")
    elif fam == RM260:
        w = np.linspace(0.0, 1.0, 2001)
        for ds in d:
            a0, a1, a2, a3 = rm260_coefficients(ds)
            if np.any(a0 + w * (a1 + w * (a2 + w * a3)) <= 0):
                raise ValueError(f"RM260 denominator is not positive for d={ds}")


def _column(d: np.ndarray, *extra: np.ndarray) -> np.ndarray:
    return np.column_stack([d, *extra])


def default_spec(name: str, ideal: np.ndarray = IDEAL_WEIGHTS) -> MappingSpec:
    """Build the registered spec *name* with the default parameters."""
    d = np.asarray(ideal, dtype=np.float64)
    key = name.lower()
    if key == "js":
        return MappingSpec(JS, _column(d), (), "js")
    if key == "m":
        return MappingSpec(M, _column(d), (), "m")
    if key.startswith("im"):
        k, A = 2.0, 0.1
        if key != "im":
            _, ks, As = key.split("_")
            k, A = float(ks), float(As)
        return MappingSpec(IM, _column(d), (k, A), key)
    if key.startswith("pm"):
        k = float(key[2:] or 6)
        return MappingSpec(PM, _column(d), (k,), key)
    if key == "ppm5":
        return MappingSpec(PPM5, _column(d), (), key)
    if key == "rm260":
        return MappingSpec(RM260, _column(d), (), key)
    if key == "maim1":
        return MappingSpec(
            MAIM1, _column(d, np.full(3, 0.06)), (10.0, 1.0e-6, 1.0e-6, 1.0e-40), key
        )
    if key == "acm":
        return MappingSpec(ACM, _column(d, d / 10), (20.0, 2.0, 1.0e-6), key)
    if key == "mip_acmk":
        return MappingSpec(MIP_ACMK, _column(d, d / 10, np.zeros(3)), (), key)
    raise KeyError(f"unknown mapping: {name!r}")


REGISTRY_NAMES = ("js", "m", "im_2_0.1", "pm6", "ppm5", "rm260", "maim1", "acm", "mip_acmk")
REGISTRY: dict[str, MappingSpec] = {name: default_spec(name) for name in REGISTRY_NAMES}


@dataclass(frozen=True)
class MappingFn:
    """One member ``(g^X)_s`` of a mapping set, callable on scalars or arrays."""

    spec: MappingSpec
    s: int
    _p: np.ndarray = field(init=False, repr=False)
    _c: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if not 0 <= self.s < 3:
            raise ValueError(f"substencil index out of range: {self.s}")
        p, c = self.spec.kernel_params()
        object.__setattr__(self, "_p", p[self.s].copy())
        object.__setattr__(self, "_c", c)

    @property
    def ideal(self) -> float:
        return float(self._p[0])

    def __call__(self, w):
        w = np.asarray(w, dtype=np.float64)
        out = np.empty_like(w)
        _gmap_array(self.spec.family, w, self._p, self._c, out)
        return out if out.ndim else float(out)


def make_mapping(family: str | MappingSpec, s: int, spec: MappingSpec | None = None) -> MappingFn:
    """Bind substencil *s* of a registered family (or of an explicit *spec*)."""
    if spec is None:
        spec = family if isinstance(family, MappingSpec) else REGISTRY.get(family) or default_spec(family)
    return MappingFn(spec, s)


# }}}
