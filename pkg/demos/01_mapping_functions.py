# Mapping functions and the order-preserving wrapper.
#
# Every mapped scheme pushes the JS weights towards the ideal ones with a
# per-substencil function g_s. Run with: python3 demos/01_mapping_functions.py

import numpy as np

from mopweno.mappings import REGISTRY, make_mapping
from mopweno.op_transform import count_non_op, detect_non_op, mapped_weights, mop_weights

d = REGISTRY["m"].ideal
print("ideal weights:", d)

# each g_s keeps its own ideal weight fixed and flattens around it
w = np.linspace(0.0, 1.0, 6)
for s in range(3):
    g = make_mapping("m", s)
    print(f"g_{s}^M at {w.round(2)} ->", np.round(g(w), 4), " g(d_s) =", float(g(d[s])))

# the catch: substencils with different ideal weights can swap order
triple = np.array([0.15, 0.5, 0.14])
plain = mapped_weights(triple, REGISTRY["m"], mop=False)
print("\nraw weights         ", triple)
print("plain WENO-M alphas ", plain.round(5), detect_non_op(triple, plain).pairs)
# w_0 > w_2 but g_0(w_0) < g_2(w_2): pair (0, 2) is reversed

mop = mapped_weights(triple, REGISTRY["m"], mop=True)
print("MOP-WENO-M alphas   ", mop.round(5), "flagged:", detect_non_op(triple, mop).flagged)
print("normalized          ", mop_weights(triple, REGISTRY["m"]).round(5))

# how often does it happen on random weights?
rng = np.random.default_rng(1)
samples = rng.dirichlet((1, 1, 1), 200_000)
print("\nnon-OP triples out of 200000 random JS weights")
for name in ("m", "im_2_0.1", "pm6", "ppm5", "rm260", "maim1", "acm", "mip_acmk"):
    print(f"  {name:>9s}: plain {count_non_op(samples, REGISTRY[name], mop=False):6d}   "
          f"MOP {count_non_op(samples, REGISTRY[name], mop=True)}")
