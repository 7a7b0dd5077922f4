"""The trinomial f(x) = x + alpha*x^(q(q-1)+1) + beta*x^(2(q-1)+1) over GF(q^2).

Two independent permutation tests live here: a full image scan over GF(q^2)
and the reduction to the degree-3 rational map

    g(u) = (alpha^q u^3 + u^2 + beta^q) / (beta u^3 + u + alpha)

on the q+1 roots of unity of norm one.  ``plz_check_general`` is the same
reduction for arbitrary x^r h(x^((q-1)/d)) over a single field.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from .errors import BadDivisor, NotOnMu, ZeroCoefficient
from .fields import ExtCtx, FieldCtx, Fq2

ONE = Fq2(1, 0)
ZERO = Fq2(0, 0)


@dataclass(frozen=True, order=True)
class PairAB:
    alpha: Fq2
    beta: Fq2

    def __post_init__(self):
        if self.alpha == ZERO or self.beta == ZERO:
            raise ZeroCoefficient("alpha and beta must both be nonzero")

    @property
    def coords(self) -> tuple[int, int, int, int]:
        """(A, B, C, D) with alpha = A + iB, beta = C + iD."""
        return self.alpha.a, self.alpha.b, self.beta.a, self.beta.b

    @classmethod
    def from_coords(cls, A: int, B: int, C: int, D: int) -> PairAB:
        return cls(Fq2(A, B), Fq2(C, D))


@lru_cache(maxsize=None)
def exponents(q: int) -> tuple[int, int]:
    return q * (q - 1) + 1, 2 * (q - 1) + 1


def eval_f(ext: ExtCtx, pair: PairAB, x: Fq2) -> Fq2:
    e1, e2 = exponents(ext.q)
    t1 = ext.mul(pair.alpha, ext.pow(x, e1))
    t2 = ext.mul(pair.beta, ext.pow(x, e2))
    return ext.add(x, ext.add(t1, t2))


def is_pp_bruteforce(ext: ExtCtx, pair: PairAB) -> bool:
    seen = bytearray(ext.q * ext.q)
    for x in ext.elements():
        v = ext.pack(eval_f(ext, pair, x))
        if seen[v]:
            return False
        seen[v] = 1
    return True


def eval_g(ext: ExtCtx, pair: PairAB, u: Fq2) -> Fq2 | None:
    """g(u) for u of norm one; None where the denominator vanishes."""
    if not ext.on_mu(u):
        raise NotOnMu(f"{u} is not a (q+1)-th root of unity")
    alpha, beta = pair.alpha, pair.beta
    u2 = ext.sqr(u)
    u3 = ext.mul(u2, u)
    den = ext.add(ext.add(ext.mul(beta, u3), u), alpha)
    if den == ZERO:
        return None
    num = ext.add(ext.add(ext.mul(ext.frobenius(alpha), u3), u2), ext.frobenius(beta))
    return ext.div(num, den)


def is_perm_mu(ext: ExtCtx, pair: PairAB) -> bool:
    seen = set()
    for u in ext.mu:
        v = eval_g(ext, pair, u)
        if v is None or v in seen:
            return False
        seen.add(v)
    return True


def has_mu_pole(ext: ExtCtx, pair: PairAB) -> bool:
    """True if beta*u^3 + u + alpha vanishes somewhere on the norm-one group."""
    for u in ext.mu:
        den = ext.add(ext.add(ext.mul(pair.beta, ext.pow(u, 3)), u), pair.alpha)
        if den == ZERO:
            return True
    return False


@dataclass(frozen=True)
class GeneralTrinomialSpec:
    """f(x) = x^r h(x^((q-1)/d)); ``h_coeffs[j]`` is the coefficient of x^j.

    The bound r < (q-1)/d sometimes quoted for this family is not enforced:
    any r >= 1 is accepted.
    """

    r: int
    d: int
    h_coeffs: tuple[int, ...]


def _horner(F: FieldCtx, coeffs, x: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = F.mul(acc, x) ^ c
    return acc


def eval_general(F: FieldCtx, spec: GeneralTrinomialSpec, x: int) -> int:
    s = (F.q - 1) // spec.d
    return F.mul(F.pow(x, spec.r), _horner(F, spec.h_coeffs, F.pow(x, s)))


def is_pp_general_bruteforce(F: FieldCtx, spec: GeneralTrinomialSpec) -> bool:
    return len({eval_general(F, spec, x) for x in F.elements()}) == F.q


def mu_d(F: FieldCtx, d: int) -> list[int]:
    """The d-th roots of unity, as powers of g^((q-1)/d)."""
    if d <= 0 or (F.q - 1) % d:
        raise BadDivisor(f"{d} does not divide q - 1 = {F.q - 1}")
    w = F.pow(F.generator, (F.q - 1) // d)
    out = [1]
    for _ in range(d - 1):
        out.append(F.mul(out[-1], w))
    return out


def plz_check_general(F: FieldCtx, spec: GeneralTrinomialSpec) -> bool:
    """gcd(r, (q-1)/d) = 1 and x^r h(x)^((q-1)/d) permutes mu_d."""
    roots = mu_d(F, spec.d)
    s = (F.q - 1) // spec.d
    if gcd(spec.r, s) != 1:
        return False
    members = set(roots)
    image = set()
    for x in roots:
        v = F.mul(F.pow(x, spec.r), F.pow(_horner(F, spec.h_coeffs, x), s))
        if v not in members or v in image:
            return False
        image.add(v)
    return True
