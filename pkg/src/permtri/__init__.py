"""Permutation tests and trace conditions for
f(x) = x + alpha x^(q(q-1)+1) + beta x^(2(q-1)+1) over GF(q^2), q = 2^m."""

from .classifier import Condition, classify, cond1, cond2, enumerate_pp_pairs
from .fields import ExtCtx, FieldCtx, Fq2, make_base_field, make_ext, make_tower
from .trinomial import PairAB, is_perm_mu, is_pp_bruteforce

__version__ = "0.1.0"

__all__ = [
    "Condition", "classify", "cond1", "cond2", "enumerate_pp_pairs",
    "ExtCtx", "FieldCtx", "Fq2", "make_base_field", "make_ext", "make_tower",
    "PairAB", "is_perm_mu", "is_pp_bruteforce",
]
