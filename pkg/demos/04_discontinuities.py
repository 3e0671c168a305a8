# Discontinuous profiles: the SLP and BiCWP tests.
#
# Besides the error norms this counts how many reconstructions over the
# whole run had their weight ordering reversed by the mapping ("non-OP"
# points). MOP schemes never do that by construction.

import numpy as np

from mopweno.advection1d import AdvectionProblem, solve
from mopweno.metrics import error_norms

for ic, t in (("slp", 20.0), ("bicwp", 20.0)):
    print(f"\n=== {ic}, N = 200, t = {t:g} ===")
    for scheme in ("weno-js", "weno-m", "mop-weno-m", "weno-pm6", "mop-weno-pm6"):
        res = solve(AdvectionProblem(ic, 200, t), scheme)
        e = error_norms(res.u, res.exact, 0.01)
        print(f"{scheme:>13s}  L1 {e.l1:.4e}  range [{res.u.min():+.4f}, {res.u.max():.4f}]"
              f"  non-OP reconstructions {res.non_op_count}")

# the last BiCWP run, side by side with the exact profile around x = 0.4
res = solve(AdvectionProblem("bicwp", 200, 20.0), "mop-weno-m")
x = res.problem.grid.centers
sel = np.abs(x - 0.4) < 0.05
for xi, ui, ei in zip(x[sel], res.u[sel], res.exact[sel]):
    print(f"  x = {xi:+.3f}  u = {ui:.4f}  exact = {ei:.1f}")
