"""Step-by-step run of the decision procedure on a 3-Mahler equation of order 2.

    python demos/order2_walkthrough.py
"""
import time

from mahlersys.cli import puiseux_entry_str
from mahlersys.companion import cyclic_gauge, hull_points, ramification_index
from mahlersys.corpus import example_order2
from mahlersys.linalg import MatQ
from mahlersys.regsing import build_MN, compute_X, decide_fixed_d, extend_gauge
from mahlersys.system import residual_threshold, verify_gauge

start = time.perf_counter()
sys_ = example_order2().sys
print("p =", sys_.p, " m =", sys_.m)
print("v0(A) =", sys_.v0A, " v0(A^-1) =", sys_.v0Ainv)

# Companion form, then the Newton hull of the last row gives the ramification.
form = cyclic_gauge(sys_)
print("\nbase point z0 =", form.z0)
print("hull points:", sorted(hull_points(form.q, sys_.p)))
hull = ramification_index(sys_, form)
print("slopes:", [str(s) for s in hull.slopes], " -> d =", hull.d)

pair = build_MN(sys_, hull.d)
b = pair.bounds
print(f"\nnu = {b.nu}, mu = {b.mu}, c = {b.c}")
print("M is", pair.M.shape, "with residue permutation", pair.M_gridded.sigma)
print("N is", pair.N.shape)

X = compute_X(pair)
print("\ndim X =", X.dim)
for v in X.vectors:
    print("  ", [str(x) for x in v])

# Any basis of X works; this one makes R the identity.
v1 = [0, 1, 0, 0, 1, 0, 0, 0, -1, 0, 0, 0, 1, -1, 0, 0, -1, 0, 0, 0]
v2 = [0] * 18 + [-1, 0]
verdict = decide_fixed_d(sys_, hull.d, basis_override=MatQ.from_columns([v1, v2]))
print("\nR =", verdict.R, " Lambda =", verdict.Lambda)

T = 16
G = extend_gauge(sys_, verdict.series, T)
for i in range(2):
    for j in range(2):
        print(f"G[{i + 1},{j + 1}] = {puiseux_entry_str(G, i, j)}")

res = verify_gauge(sys_, G, verdict.Lambda, T)
print("\nresidual starts at index", res, "; guaranteed zero below", residual_threshold(sys_, hull.d, T))
print(f"took {time.perf_counter() - start:.2f} s")
