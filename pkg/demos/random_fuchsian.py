"""Random systems that are analytic and invertible at 0 always pass.

Also shows how the truncation order controls the length of the gauge.

    python demos/random_fuchsian.py
"""
import random
import time

from mahlersys.exact import Poly
from mahlersys.linalg import MatQ
from mahlersys.regsing import decide
from mahlersys.system import MahlerSystem, RatMatrix

rng = random.Random(5)


def unipotent_product(m):
    L = [[1 if i == j else (rng.randint(-2, 2) if j < i else 0) for j in range(m)] for i in range(m)]
    U = [[1 if i == j else (rng.randint(-2, 2) if j > i else 0) for j in range(m)] for i in range(m)]
    return MatQ.from_rows(L) @ MatQ.from_rows(U)


for trial in range(6):
    m, p = rng.choice([2, 3]), rng.choice([2, 3])
    A0 = unipotent_product(m)
    A = RatMatrix([[Poly([A0[i, j], rng.randint(-2, 2), rng.randint(-2, 2)]) for j in range(m)]
                   for i in range(m)])
    t = time.perf_counter()
    v = decide(MahlerSystem(p, A), truncation_order=6)
    print(f"m={m} p={p}: regular singular={v.regular_singular} d={v.d} "
          f"gauge terms={len(v.gauge.coeffs)} ({time.perf_counter() - t:.2f} s)")
    print("  Lambda rows:", [[str(x) for x in row] for row in v.Lambda.data])
