import numpy as np
import pytest

from mopweno.grid import PERIODIC, fill_ghosts
from mopweno.schemes import (
    ALL_SCHEMES,
    MOP_SCHEMES,
    PLAIN_SCHEMES,
    reconstruct_line_reference,
    resolve_scheme,
)
from mopweno.weno_core import reconstruct_interface


def test_names():
    assert len(ALL_SCHEMES) == 17
    assert "mop-weno-acmk" in MOP_SCHEMES and "mop-weno-js" not in ALL_SCHEMES
    assert resolve_scheme("MOP-WENO-M").mop
    assert resolve_scheme("mop-weno-acmk").spec.family == resolve_scheme("mip-weno-acmk").spec.family
    for bad in ("weno-z", "mop-weno-js", ""):
        with pytest.raises(KeyError):
            resolve_scheme(bad)


@pytest.mark.parametrize("name", ALL_SCHEMES)
def test_compiled_line_matches_array_route(name):
    s = resolve_scheme(name)
    rng = np.random.default_rng(7)
    x = np.linspace(-1, 1, 64, endpoint=False)
    # smooth part plus a jump plus noise, so every branch of the weights is visited
    u = np.sin(np.pi * x) + (x > 0.3) + 0.05 * rng.standard_normal(x.size)
    ug = fill_ghosts(u, PERIODIC)
    uL, uR, count = s.reconstruct_line(ug)
    rl, rr = reconstruct_line_reference(ug, s)
    np.testing.assert_allclose(uL, rl, rtol=0, atol=1e-13)
    np.testing.assert_allclose(uR, rr, rtol=0, atol=1e-13)
    assert count >= 0
    if s.mop or name == "weno-js":
        assert count == 0


def test_face_matches_interface_helper():
    s = resolve_scheme("weno-m")
    st = np.array([0.0, 0.1, 1.0, 1.2, 3.0])
    v, _ = s.face(*st, *s.kernel_args())
    assert v == pytest.approx(reconstruct_interface(st, s.transform), abs=1e-14)
    vr, _ = s.face(*st[::-1], *s.kernel_args())
    assert vr == pytest.approx(reconstruct_interface(st, s.transform, right=True), abs=1e-14)


@pytest.mark.parametrize("name", PLAIN_SCHEMES[1:])
def test_non_op_counts_plain_vs_mop(name):
    mop_name = "mop-weno-acmk" if name == "mip-weno-acmk" else "mop-" + name
    ug = fill_ghosts(np.random.default_rng(3).random(4000), PERIODIC)
    assert resolve_scheme(mop_name).reconstruct_line(ug)[2] == 0
    assert resolve_scheme(name).reconstruct_line(ug)[2] > 0
