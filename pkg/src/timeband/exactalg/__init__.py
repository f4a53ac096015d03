"""Exact-arithmetic foundation: rationals, sparse multivariate polynomials,
rational functions, differential operators, rational antiderivatives, and a
fraction-free affine solver."""

from .antideriv import antiderivative_x, factor_over_atoms
from .diffop import DiffOp, diffop_compose
from .linsolve import AffineSystem, specialized_rank
from .multipoly import MultiPoly, poly_arith
from .ratfun import RatFun, derivative, ratfun_arith
from .scalars import Q, as_q, parse_rational, q_float, q_str

__all__ = [
    "AffineSystem",
    "DiffOp",
    "MultiPoly",
    "Q",
    "RatFun",
    "antiderivative_x",
    "as_q",
    "derivative",
    "diffop_compose",
    "factor_over_atoms",
    "parse_rational",
    "poly_arith",
    "q_float",
    "q_str",
    "ratfun_arith",
    "specialized_rank",
]
