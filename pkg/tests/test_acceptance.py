"""Acceptance runs. Each check records one PASS/FAIL line, collected in the
"acceptance criteria" section at the end of the pytest output.

Long reproduction runs carry the ``slow`` marker (``pytest --runslow``).
"""

import functools

import mpmath
import numpy as np
import pytest

from mopweno.advection1d import AdvectionProblem, solve
from mopweno.euler2d import SLICES, prim_to_cons, solve_euler, x_eigensystem, y_eigensystem
from mopweno.integrator import TimeLoopConfig, advance_to
from mopweno.mappings import REGISTRY, REGISTRY_NAMES, make_mapping
from mopweno.metrics import convergence_order, error_norms, increased_error_pct, slice_extract, total_variation
from mopweno.op_transform import count_non_op, detect_non_op, mapped_weights
from mopweno.schemes import ALL_SCHEMES, MAPPED_SCHEMES, MOP_SCHEMES

SIN_GRIDS = (10, 20, 40, 80, 160, 320)
MAPPED_FAMILIES = REGISTRY_NAMES[1:]


def rel(a, b):
    return abs(a - b) / abs(b)


@functools.lru_cache(maxsize=None)
def l1_run(ic, n, t, scheme):
    res = solve(AdvectionProblem(ic, n, t), scheme)
    return error_norms(res.u, res.exact, 2.0 / n), res.non_op_count


def last_orders(ic, scheme):
    e = [l1_run(ic, n, 2.0, scheme)[0] for n in SIN_GRIDS[-2:]]
    return [convergence_order(a, b) for a, b in zip(e[0], e[1])]


# {{{ 1, 2: convergence


def test_c1_smooth_accuracy(criterion):
    orders = {s: last_orders("sin", s)[0] for s in ALL_SCHEMES}
    bad = {s: round(o, 4) for s, o in orders.items() if not 4.9 <= o <= 5.1}
    js40 = l1_run("sin", 40, 2.0, "weno-js")[0].l1
    ok = criterion(
        "1  sin(pi x): L1 order at N=320 in [4.9, 5.1] for all schemes",
        not bad,
        f"min {min(orders.values()):.4f}, max {max(orders.values()):.4f}" + (f", out of range {bad}" if bad else ""),
    )
    ok &= criterion("1  sin(pi x): WENO-JS L1 at N=40 within 2% of 9.27609e-05", rel(js40, 9.27609e-05) <= 0.02, f"{js40:.6e}")
    assert ok


def test_c2_critical_point_accuracy(criterion):
    js = last_orders("sin_sin", "weno-js")[2]
    mapped = {s: last_orders("sin_sin", s)[2] for s in MAPPED_SCHEMES + MOP_SCHEMES}
    low = {s: round(o, 4) for s, o in mapped.items() if o < 4.95}
    mop80 = l1_run("sin_sin", 80, 2.0, "mop-weno-m")[0].l1
    ok = criterion("2  sin(pi x - sin(pi x)/pi): WENO-JS Linf order at N=320 <= 3.5", js <= 3.5, f"{js:.4f}")
    ok &= criterion(
        "2  sin(pi x - sin(pi x)/pi): mapped/MOP Linf order at N=320 >= 4.95",
        not low,
        f"min {min(mapped.values()):.4f}" + (f", low {low}" if low else ""),
    )
    ok &= criterion("2  MOP-WENO-M L1 at N=80 within 2% of 4.80253e-06", rel(mop80, 4.80253e-06) <= 0.02, f"{mop80:.6e}")
    assert ok


# }}}


# {{{ 3, 4: long-time and discontinuous profiles

SIN9_REFERENCE = {
    # (N, t): {scheme: (L1, increased error in % against MIP-WENO-ACMk)}
    (200, 200.0): {"weno-js": (2.35657e-02, 1323.42), "mop-weno-m": (5.11795e-03, 209.14)},
    (200, 1000.0): {"weno-js": (2.91359e-01, 3920.28), "mop-weno-m": (1.75990e-02, 142.84)},
    (800, 200.0): {"weno-js": (7.29285e-05, 4299.06), "mop-weno-m": (1.81123e-06, 9.25)},
    (800, 1000.0): {"weno-js": (1.01278e-01, 1221783.34), "mop-weno-m": (8.53126e-06, 2.93)},
}


def check_sin9(criterion, n, t):
    base = l1_run("sin9", n, t, "mip-weno-acmk")[0].l1
    ok = True
    for scheme, (ref, pct_ref) in SIN9_REFERENCE[(n, t)].items():
        l1 = l1_run("sin9", n, t, scheme)[0].l1
        pct = increased_error_pct(l1, base)
        ok &= criterion(f"3  sin^9, N={n}, t={t:g}: {scheme} L1 within 10% of {ref:.5e}", rel(l1, ref) <= 0.10, f"{l1:.5e}")
        ok &= criterion(
            f"3  sin^9, N={n}, t={t:g}: {scheme} increased error within 15 points of {pct_ref}%",
            abs(pct - pct_ref) <= 15.0,
            f"{pct:.2f}%",
        )
    assert ok


def test_c3_sin9_t200(criterion):
    check_sin9(criterion, 200, 200.0)


@pytest.mark.slow
@pytest.mark.parametrize(
    "n, t",
    [
        # MOP-WENO-M ends about 24% below the reference here; JS and the baseline match
        pytest.param(200, 1000.0, marks=pytest.mark.xfail(strict=True, reason="MOP-WENO-M L1 off by more than 10%")),
        (800, 200.0),
        (800, 1000.0),
    ],
)
def test_c3_sin9_slow(criterion, n, t):
    check_sin9(criterion, n, t)


def check_slp(criterion, t, refs, tol):
    ok = True
    for scheme, ref in refs.items():
        l1 = l1_run("slp", 200, t, scheme)[0].l1
        ok &= criterion(f"4  SLP, N=200, t={t:g}: {scheme} L1 within {tol:.0%} of {ref:.5e}", rel(l1, ref) <= tol, f"{l1:.5e}")
    assert ok


def test_c4_slp_t2(criterion):
    check_slp(criterion, 2.0, {"weno-js": 6.30497e-02, "mop-weno-m": 5.72690e-02}, 0.05)


@pytest.mark.slow
def test_c4_slp_t2000(criterion):
    check_slp(criterion, 2000.0, {"weno-js": 6.12899e-01, "mop-weno-m": 3.85134e-01}, 0.15)


# }}}


# {{{ 5, 6: order preservation


def test_c5_op_guarantee(criterion):
    rng = np.random.default_rng(20240607)
    # on the simplex (normalized JS weights), anywhere in the cube, and
    # log-scale triples down to 1e-30 like those next to flat data
    tiny = 10.0 ** rng.uniform(-30.0, 0.0, (200_000, 3))
    w = np.concatenate(
        [rng.dirichlet((1.0, 1.0, 1.0), 400_000), rng.random((400_000, 3)), tiny / tiny.sum(axis=1, keepdims=True)]
    )
    counts = {name: count_non_op(w, REGISTRY[name], mop=True) for name in MAPPED_FAMILIES}
    ok = criterion("5  10^6 random triples: zero non-OP for every MOP mapping set", not any(counts.values()), str(counts))

    triple = np.array([0.15, 0.5, 0.14])
    flagged = detect_non_op(triple, mapped_weights(triple, REGISTRY["m"], mop=False)).flagged
    clean = not detect_non_op(triple, mapped_weights(triple, REGISTRY["m"], mop=True)).flagged
    ok &= criterion("5  (0.15, 0.5, 0.14): plain WENO-M non-OP, MOP-WENO-M OP", flagged and clean)
    assert ok


def test_c6_non_op_counts_slp(criterion):
    counts = {s: l1_run("slp", 200, 200.0, s)[1] for s in MOP_SCHEMES + ("weno-m",)}
    mop = {s: counts[s] for s in MOP_SCHEMES}
    ok = criterion("6  SLP N=200 t=200: non-OP count 0 for every MOP scheme", not any(mop.values()), str(mop))
    ok &= criterion("6  SLP N=200 t=200: WENO-M non-OP count > 0", counts["weno-m"] > 0, str(counts["weno-m"]))
    assert ok


# }}}


# {{{ 7, 8: building blocks


def test_c7_mapping_suite(criterion):
    grid = np.linspace(0.0, 1.0, 10_000)
    failures = []
    for name in MAPPED_FAMILIES:
        d = REGISTRY[name].ideal
        for s in range(3):
            g = make_mapping(name, s)
            devs = (abs(float(g(d[s])) - d[s]), abs(float(g(0.0))), abs(float(g(1.0)) - 1.0))
            if max(devs) > 1e-12:
                failures.append(f"{name}[{s}] {devs}")
            if np.any(np.diff(g(grid)) < 0):
                failures.append(f"{name}[{s}] not monotone")
    assert criterion("7  fixed points, endpoints <= 1e-12 and monotonicity for every family", not failures, "; ".join(failures))


def test_c8_rk3_order(criterion):
    dts = [0.1 / 2**k for k in range(5)]
    errs = []
    for dt in dts:
        u, _ = advance_to(np.array([1.0]), TimeLoopConfig.fixed(1.0, dt), lambda v: -v)
        errs.append(abs(u[0] - np.exp(-1.0)))
    slope = np.polyfit(np.log(dts), np.log(errs), 1)[0]
    assert criterion("8  SSP-RK3 order on u' = -u: 3.00 +- 0.05", abs(slope - 3.0) <= 0.05, f"{slope:.4f}")


# }}}


# {{{ 9: 2D Euler

PAIRS = (("weno-m", "mop-weno-m"), ("mip-weno-acmk", "mop-weno-acmk"))


@functools.lru_cache(maxsize=None)
def euler_run(problem, n, scheme):
    res = solve_euler(problem, n, scheme)
    W = res.primitive  # raises on nonpositive density or pressure
    axis, coord, window = SLICES[problem]
    _, prof = slice_extract(W[0], res.grid, axis, coord, window)
    healthy = bool(np.all(np.isfinite(res.U)) and np.all(W[0] > 0) and np.all(W[3] > 0))
    return healthy, total_variation(prof)


# With the right state evaluated exactly as printed, the post-interaction
# slice is a smooth ramp for every scheme and the MOP variants come out
# slightly steeper; see the README.
KNOWN_TV_MISSES = {
    (100, "shock_vortex", "weno-m"),
    (100, "shock_vortex", "mip-weno-acmk"),
    (200, "shock_vortex", "weno-m"),
}


def euler_cases(n):
    marks = [pytest.mark.slow] if n >= 200 else []
    out = []
    for problem in ("shock_vortex", "riemann4"):
        for x, mop in PAIRS:
            m = list(marks)
            if (n, problem, x) in KNOWN_TV_MISSES:
                m.append(pytest.mark.xfail(strict=True, reason="TV(MOP-X) > TV(X) on this slice"))
            out.append(pytest.param(n, problem, x, mop, marks=m, id=f"{problem}-{n}-{x}"))
    return out


@pytest.mark.parametrize("n, problem, x, mop", euler_cases(100) + euler_cases(200))
def test_c9_euler_2d(criterion, n, problem, x, mop):
    hx, tvx = euler_run(problem, n, x)
    hm, tvm = euler_run(problem, n, mop)
    ok = criterion(f"9  {problem} {n}x{n}: {x} and {mop} finish with rho, p > 0 and no NaN", hx and hm)
    ok &= criterion(f"9  {problem} {n}x{n}: TV({mop}) <= TV({x}) on the slice", tvm <= tvx, f"{tvm:.6g} vs {tvx:.6g}")
    assert ok


# }}}


# {{{ 10: characteristic oracle


def _mp_flux(U, normal):
    rho, mx, my, E = U
    p = (mpmath.mpf("1.4") - 1) * (E - (mx * mx + my * my) / (2 * rho))
    if normal == "x":
        u = mx / rho
        return [mx, mx * u + p, my * u, (E + p) * u]
    v = my / rho
    return [my, mx * v, my * v + p, (E + p) * v]


def test_c10_characteristic_oracle(criterion):
    rng = np.random.default_rng(11)
    h = mpmath.mpf("1e-25")
    worst_lr = worst_jac = 0.0
    with mpmath.workdps(50):
        for _ in range(1000):
            W = np.array([rng.uniform(0.1, 10), rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(0.1, 10)])
            U = [mpmath.mpf(float(v)) for v in prim_to_cons(W)]
            for normal, eig in (("x", x_eigensystem), ("y", y_eigensystem)):
                L, R, lam = eig(W)
                worst_lr = max(worst_lr, float(np.max(np.abs(L @ R - np.eye(4)))))
                J = np.empty((4, 4))
                for k in range(4):
                    up, dn = list(U), list(U)
                    up[k] += h
                    dn[k] -= h
                    J[:, k] = [float((a - b) / (2 * h)) for a, b in zip(_mp_flux(up, normal), _mp_flux(dn, normal))]
                err = np.max(np.abs(R @ np.diag(lam) @ L - J)) / max(1.0, np.max(np.abs(J)))
                worst_jac = max(worst_jac, float(err))
    ok = criterion("10 L R = I within 1e-12 for 10^3 states (x and y)", worst_lr <= 1e-12, f"{worst_lr:.2e}")
    ok &= criterion("10 R diag(lambda) L = dF/dU within 1e-10 (finite differences)", worst_jac <= 1e-10, f"{worst_jac:.2e}")
    assert ok


# }}}
