import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mopweno.weno_core import (
    EPSILON,
    IDEAL_WEIGHTS,
    js_weights,
    normalize,
    reconstruct_interface,
    smoothness_indicators,
    substencil_values,
)
from mopweno.mappings import REGISTRY
from mopweno.schemes import ALL_SCHEMES, resolve_scheme

finite = st.floats(-1e3, 1e3, allow_nan=False)
stencils = st.lists(finite, min_size=5, max_size=5)


def test_ideal_weights():
    assert IDEAL_WEIGHTS.tolist() == [0.1, 0.6, 0.3]
    assert IDEAL_WEIGHTS.sum() == pytest.approx(1.0, abs=1e-15)
    assert EPSILON == 1e-40


@pytest.mark.parametrize(
    "stencil, expected",
    [
        ((2.0,) * 5, (0, 0, 0)),
        ((-2, -1, 0, 1, 2), (1, 1, 1)),
        ((0, 0, 0, 1, 1), (0, 4 / 3, 10 / 3)),
    ],
)
def test_smoothness_indicators(stencil, expected):
    np.testing.assert_allclose(smoothness_indicators(stencil), expected, rtol=1e-15, atol=1e-15)


def test_js_weights_cases():
    np.testing.assert_allclose(js_weights([0.0, 0.0, 0.0]), IDEAL_WEIGHTS, rtol=1e-15)
    np.testing.assert_allclose(js_weights([1.0, 1.0, 1.0]), IDEAL_WEIGHTS, rtol=1e-15)


def test_js_weights_extreme_against_mpmath():
    w = js_weights([0.0, 4 / 3, 10 / 3])
    with mpmath.workdps(60):
        eps = mpmath.mpf("1e-40")
        a = [mpmath.mpf(d) / (eps + b) ** 2 for d, b in zip(("0.1", "0.6", "0.3"), (0, mpmath.mpf(4) / 3, mpmath.mpf(10) / 3))]
        ref = [float(x / sum(a)) for x in a]
    assert abs(w[0] - 1) < 1e-30
    assert w[1] < 1e-75 and w[2] < 1e-75
    np.testing.assert_allclose(w, ref, rtol=1e-14)


@pytest.mark.parametrize(
    "stencil, expected",
    [((3.0,) * 5, (3, 3, 3)), ((-2, -1, 0, 1, 2), (0.5, 0.5, 0.5)), ((1, 0, 0, 0, 0), (2 / 6, 0, 0))],
)
def test_substencil_values(stencil, expected):
    np.testing.assert_allclose(substencil_values(stencil), expected, rtol=1e-15, atol=1e-15)


@pytest.mark.parametrize("name", ALL_SCHEMES)
def test_linear_and_constant_data_every_transform(name):
    scheme = resolve_scheme(name)
    t = None if name == "weno-js" else scheme.transform
    assert reconstruct_interface((-2, -1, 0, 1, 2), t) == pytest.approx(0.5, abs=1e-14)
    assert reconstruct_interface((7.0,) * 5, t) == pytest.approx(7.0, abs=1e-13)


def test_identity_matches_direct_formula():
    u = np.array([0.3, -0.2, 0.9, 1.4, 0.1])
    w = js_weights(smoothness_indicators(u))
    assert reconstruct_interface(u) == pytest.approx(np.dot(w, substencil_values(u)), rel=1e-15)


@given(stencils)
@settings(max_examples=200, deadline=None)
def test_convexity(u):
    q = substencil_values(u)
    v = reconstruct_interface(u)
    slack = 1e-12 * (1 + np.max(np.abs(u)))
    assert q.min() - slack <= v <= q.max() + slack


@given(stencils, st.sampled_from(["weno-m", "mop-weno-pm6", "mop-weno-acmk"]))
@settings(max_examples=100, deadline=None)
def test_mirror_symmetry(u, name):
    t = resolve_scheme(name).transform
    u = np.asarray(u)
    # right-biased value of the reversed stencil = left-biased value of the original
    assert reconstruct_interface(u[::-1], t, right=True) == reconstruct_interface(u, t)


def test_normalize_fallback():
    np.testing.assert_array_equal(normalize([0.0, 0.0, 0.0]), IDEAL_WEIGHTS)
    np.testing.assert_allclose(normalize([1.0, 1.0, 2.0]), [0.25, 0.25, 0.5])


@pytest.mark.parametrize("name", ["weno-js", "weno-m", "mop-weno-m"])
def test_fifth_order_interface_values(name):
    t = None if name == "weno-js" else resolve_scheme(name).transform
    errs = []
    for n in (40, 80, 160, 320):
        h = 2.0 / n
        xf = -1 + h * np.arange(n)  # left faces
        # exact cell averages of sin(pi x) on cells [xf - 3h, ..., xf + 2h)
        lo = xf[:, None] + h * np.arange(-3, 2)[None, :]
        avg = (np.cos(np.pi * lo) - np.cos(np.pi * (lo + h))) / (np.pi * h)
        errs.append(np.max(np.abs(reconstruct_interface(avg, t) - np.sin(np.pi * xf))))
    orders = np.log2(np.array(errs[:-1]) / np.array(errs[1:]))
    assert orders[-1] >= 4.9


def test_registry_spec_ideal_matches():
    for spec in REGISTRY.values():
        np.testing.assert_array_equal(spec.ideal, IDEAL_WEIGHTS)
