from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from mahlersys.exact import Poly, RatFun

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

small_q = st.fractions(min_value=-10, max_value=10, max_denominator=6)


@st.composite
def polys(draw, max_deg=4, nonzero=False):
    coeffs = draw(st.lists(small_q, min_size=0, max_size=max_deg + 1))
    f = Poly(coeffs)
    if nonzero and f.is_zero():
        f = Poly([draw(small_q.filter(bool))])
    return f


@st.composite
def ratfuns(draw, max_deg=3, nonzero=False):
    num = draw(polys(max_deg, nonzero=nonzero))
    den = draw(polys(max_deg, nonzero=True))
    shift = draw(st.integers(-2, 2))
    f = RatFun(num, den)
    return f * RatFun.z(shift) if not f.is_zero() else f


def fracs(rows):
    return [[Fraction(x) for x in r] for r in rows]


def random_poly(rng, max_deg, height, max_val=0):
    """Nonzero polynomial of degree at most ``max_deg`` divisible by ``z^v``, ``v <= max_val``."""
    deg = rng.randint(0, max_deg)
    v = rng.randint(0, min(max_val, deg))
    coeffs = [0] * v + [rng.randint(-height, height) for _ in range(deg + 1 - v)]
    coeffs[v] = coeffs[v] or rng.choice([-1, 1]) * rng.randint(1, height)
    return Poly(coeffs)


def random_ratfun(rng, max_deg=6, height=10):
    """Nonzero element of Q(z) with numerator and denominator of degree at most ``max_deg``."""
    num = random_poly(rng, max_deg, height, max_val=4)
    den = random_poly(rng, max_deg, height, max_val=4)
    return RatFun(num, den)


def random_fuchsian(rng, m, max_deg=2, height=2):
    """Polynomial matrix whose constant term has determinant 1."""
    from mahlersys.linalg import MatQ
    from mahlersys.system import RatMatrix

    L = MatQ(m, m, [[1 if i == j else (rng.randint(-2, 2) if j < i else 0) for j in range(m)] for i in range(m)])
    U = MatQ(m, m, [[1 if i == j else (rng.randint(-2, 2) if j > i else 0) for j in range(m)] for i in range(m)])
    A0 = L @ U
    entries = []
    for i in range(m):
        row = []
        for j in range(m):
            higher = [rng.randint(-height, height) for _ in range(max_deg)]
            row.append(Poly([A0[i, j]] + higher))
        entries.append(row)
    return RatMatrix(entries)


_acceptance: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" in report.nodeid and (report.when == "call" or report.failed):
        _acceptance[report.nodeid.split("::")[-1]] = "PASS" if report.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_acceptance):
        k = int(name.split("_")[2])
        terminalreporter.write_line(f"criterion {k:2d}: {_acceptance[name]}  {name}")
