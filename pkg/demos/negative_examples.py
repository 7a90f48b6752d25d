"""Two automatic-sequence systems that are not regular singular at 0.

For each admissible ramification d the candidate space X is smaller than m,
so no constant system is equivalent to them.

    python demos/negative_examples.py
"""
from mahlersys.corpus import baum_sweet_variant, oracle_dim_naive, rudin_shapiro
from mahlersys.regsing import build_MN, compute_X, decide
from mahlersys.system import ramification_candidates

for named in (rudin_shapiro(), baum_sweet_variant()):
    s = named.sys
    print(f"{named.name}: p = {s.p}, m = {s.m}")
    for d in ramification_candidates(s.p, s.m):
        pair = build_MN(s, d)
        dim = compute_X(pair).dim
        brute = oracle_dim_naive(s, d, 2 * pair.bounds.c)
        print(f"  d = {d}: c = {pair.bounds.c:3d}, dim X = {dim} (brute force {brute})")
    v = decide(s, scan_all_d=True)
    print("  regular singular:", v.regular_singular)
    print()
