"""Exact test for regular singularity at 0 of p-Mahler systems ``phi_p(Y) = A Y``."""
from .companion import CompanionForm, HullResult, cyclic_gauge, ramification_index
from .exact import Poly, RatFun
from .linalg import MatQ, Subspace
from .regsing import Bounds, Verdict, bounds, build_MN, compute_X, decide, decide_fixed_d, extend_gauge
from .system import INFINITY, MahlerSystem, PuiseuxMatrix, RatMatrix, SingularMatrixError, verify_gauge

__all__ = [
    "Bounds", "CompanionForm", "HullResult", "INFINITY", "MahlerSystem", "MatQ", "Poly",
    "PuiseuxMatrix", "RatFun", "RatMatrix", "SingularMatrixError", "Subspace", "Verdict",
    "bounds", "build_MN", "compute_X", "cyclic_gauge", "decide", "decide_fixed_d",
    "extend_gauge", "ramification_index", "verify_gauge",
]
