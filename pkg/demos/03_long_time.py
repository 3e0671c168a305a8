# Long-time advection of sin^9(pi x).
#
# The critical points of sin^9 are of high order, so small differences in
# how each mapping treats weights near the ideal ones add up over many
# periods. Errors are quoted relative to MIP-WENO-ACMk, whose mapping is
# flat to every order around the ideal weights. t = 200 takes a couple of
# minutes in total; lower T_END to get a quicker look.

from mopweno.advection1d import AdvectionProblem, solve
from mopweno.metrics import error_norms, increased_error_pct

T_END = 50.0
N = 200

schemes = ["mip-weno-acmk", "weno-js", "weno-m", "mop-weno-m", "weno-pm6", "mop-weno-pm6"]
l1 = {}
for scheme in schemes:
    res = solve(AdvectionProblem("sin9", N, T_END), scheme)
    l1[scheme] = error_norms(res.u, res.exact, 2.0 / N).l1
    print(f"{scheme:>14s}  L1 = {l1[scheme]:.5e}   {res.steps} steps in {res.wall_time:.1f}s")

print(f"\nincreased L1 error against MIP-WENO-ACMk at t = {T_END:g}")
for scheme in schemes[1:]:
    print(f"{scheme:>14s}  {increased_error_pct(l1[scheme], l1['mip-weno-acmk']):8.2f}%")
