"""Exact arithmetic kernel: Q, Q(a1..a5, b), and rational functions of t."""

from .field import SYMBOLS, ParamRat, free_symbols, is_constant, kcoerce, kstr, ksubs, rat
from .mpoly import MPoly, gcd as mpoly_gcd
from .parse import alpha0, parse_expr, parse_scalar, to_text
from .tpoly import RatFun, TPoly, poly_gcd

__all__ = [
    "SYMBOLS", "ParamRat", "free_symbols", "is_constant", "kcoerce", "kstr", "ksubs",
    "rat", "MPoly", "mpoly_gcd", "alpha0", "parse_expr", "parse_scalar", "to_text",
    "RatFun", "TPoly", "poly_gcd",
]
