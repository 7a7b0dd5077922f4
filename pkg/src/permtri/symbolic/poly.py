"""Sparse multivariate polynomials over GF(2) in a fixed set of 13 variables.

A monomial is one int: each variable owns a 16-bit field (15 exponent bits
under a guard bit), with ``x`` in the most significant field.  Integer
order on packed monomials is then lexicographic order, monomial product is
integer addition, and divisibility is a borrow test on the guard bits.  A
polynomial is the frozenset of its monomials, since every coefficient is 1.
"""

from __future__ import annotations

import heapq
import re
from typing import Iterable, Mapping

from ..errors import InexactDivision, NonTerminating, ParseError, ZeroDegree, ZeroLeadingCoefficient

VARS = ("x", "y", "A", "B", "C", "D", "i", "k", "a", "b", "c", "d", "e")
NVARS = len(VARS)
_W = 16
_FIELD = (1 << _W) - 1
_EXP_MAX = (1 << (_W - 1)) - 1
_SHIFT = {v: (NVARS - 1 - j) * _W for j, v in enumerate(VARS)}
_GUARD = sum(1 << (s + _W - 1) for s in _SHIFT.values())


def _exp(mono: int, var: str) -> int:
    return (mono >> _SHIFT[var]) & _FIELD


def _exps(mono: int) -> tuple[int, ...]:
    return tuple((mono >> _SHIFT[v]) & _FIELD for v in VARS)


def _pack(exps: Mapping[str, int]) -> int:
    out = 0
    for v, n in exps.items():
        if n < 0 or n > _EXP_MAX:
            raise OverflowError(f"exponent {n} of {v} out of range")
        out |= n << _SHIFT[v]
    return out


def _divides(d: int, mono: int) -> bool:
    return ((mono | _GUARD) - d) & _GUARD == _GUARD


def _total_degree(mono: int) -> int:
    return sum(_exps(mono))


def _grlex_key(mono: int):
    return (_total_degree(mono), mono)


class MultiPoly:
    """Immutable polynomial; ``+`` is symmetric difference of term sets."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Iterable[int] = ()):
        self.terms = terms if isinstance(terms, frozenset) else frozenset(terms)
        self._hash = None

    # -- construction ---------------------------------------------------
    @classmethod
    def var(cls, name: str, power: int = 1) -> MultiPoly:
        return cls((_pack({name: power}),))

    @classmethod
    def const(cls, c: int) -> MultiPoly:
        return ONE if c & 1 else ZERO

    @classmethod
    def monomial(cls, **exps: int) -> MultiPoly:
        return cls((_pack(exps),))

    @classmethod
    def parse(cls, text: str) -> MultiPoly:
        """Read sums of products like ``A^2*B*k + C + 1``."""
        acc: set[int] = set()
        text = re.sub(r"\s+", "", text)
        if not text:
            raise ParseError("empty polynomial")
        for term in text.split("+"):
            exps: dict[str, int] = {}
            if term == "0":
                continue
            for factor in term.split("*"):
                if factor == "1":
                    continue
                name, _, power = factor.partition("^")
                if name not in _SHIFT:
                    raise ParseError(f"unknown variable {name!r} in {term!r}")
                try:
                    exps[name] = exps.get(name, 0) + (int(power) if power else 1)
                except ValueError:
                    raise ParseError(f"bad exponent in {term!r}") from None
            mono = _pack(exps)
            acc ^= {mono}
        return cls(acc)

    # -- basic protocol ---------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = MultiPoly.const(other)
        return isinstance(other, MultiPoly) and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.terms)
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __repr__(self) -> str:
        return f"MultiPoly({str(self)!r})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms, key=_grlex_key, reverse=True):
            fs = []
            for v, n in zip(VARS, _exps(mono)):
                if n == 1:
                    fs.append(v)
                elif n:
                    fs.append(f"{v}^{n}")
            parts.append("*".join(fs) or "1")
        return " + ".join(parts)

    # -- ring operations --------------------------------------------------
    def _coerce(self, other) -> MultiPoly:
        if isinstance(other, MultiPoly):
            return other
        if isinstance(other, int):
            return MultiPoly.const(other)
        return NotImplemented

    def __add__(self, other) -> MultiPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return MultiPoly(self.terms ^ other.terms)

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __neg__(self) -> MultiPoly:
        return self

    def __mul__(self, other) -> MultiPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        acc: set[int] = set()
        for t in b:
            # toggling shifted copies; a shifted set has no internal repeats
            acc ^= {t + s for s in a}
        return MultiPoly(acc)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> MultiPoly:
        if n < 0:
            raise ValueError("negative power")
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                # squaring is additive in characteristic 2
                base = MultiPoly(t << 1 for t in base.terms) if base.terms else base
        return result

    # -- structure ----------------------------------------------------------
    def degree(self, var: str) -> int:
        """Degree in ``var``; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        sh = _SHIFT[var]
        return max((t >> sh) & _FIELD for t in self.terms)

    def total_degree(self) -> int:
        return max((_total_degree(t) for t in self.terms), default=-1)

    def variables(self) -> tuple[str, ...]:
        used = 0
        for t in self.terms:
            used |= t
        return tuple(v for v in VARS if (used >> _SHIFT[v]) & _FIELD)

    def coeffs_in(self, var: str) -> dict[int, MultiPoly]:
        """Split into {power: coefficient} with ``var`` removed from coefficients."""
        sh = _SHIFT[var]
        buckets: dict[int, set[int]] = {}
        for t in self.terms:
            n = (t >> sh) & _FIELD
            buckets.setdefault(n, set()).add(t - (n << sh))
        return {n: MultiPoly(ts) for n, ts in buckets.items()}

    def leading_term(self) -> int:
        return max(self.terms)

    def evaluate(self, field, values: Mapping[str, int]) -> int:
        """Value in a field with ``mul`` and ``pow``; ints add by xor."""
        acc = 0
        for t in self.terms:
            v = 1
            for name, n in zip(VARS, _exps(t)):
                if n:
                    v = field.mul(v, field.pow(values[name], n))
                    if v == 0:
                        break
            acc ^= v
        return acc

    def partial_eval(self, values: Mapping[str, MultiPoly]) -> MultiPoly:
        """Substitute polynomials for variables simultaneously."""
        names = [v for v in values]
        powers: dict[tuple[str, int], MultiPoly] = {}
        acc = ZERO
        groups: dict[tuple[int, ...], set[int]] = {}
        for t in self.terms:
            key = tuple(_exp(t, v) for v in names)
            rest = t - sum(n << _SHIFT[v] for v, n in zip(names, key))
            groups.setdefault(key, set()).add(rest)
        for key, rest in groups.items():
            term = MultiPoly(rest)
            for v, n in zip(names, key):
                if n:
                    p = powers.get((v, n))
                    if p is None:
                        p = powers[(v, n)] = values[v] ** n
                    term = term * p
            acc = acc + term
        return acc


ZERO = MultiPoly()
ONE = MultiPoly((0,))


def variables(*names: str) -> tuple[MultiPoly, ...]:
    return tuple(MultiPoly.var(n) for n in names)


def poly_add(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    return p + q


def poly_mul(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    return p * q


def substitute(pol: MultiPoly, mono: MultiPoly, rep: MultiPoly) -> MultiPoly:
    """Rewrite every term divisible by ``mono`` as quotient * ``rep`` until none is.

    ``mono`` must be a single monomial, and ``rep`` must have lower degree
    in the variables of ``mono`` than ``mono`` does, otherwise the rewriting
    could run forever.
    """
    if len(mono) != 1:
        raise ValueError("substitution target must be a single monomial")
    (m,) = mono.terms
    mvars = mono.variables()
    mdeg = sum(_exp(m, v) for v in mvars)
    rdeg = max((sum(_exp(t, v) for v in mvars) for t in rep.terms), default=0)
    if rdeg >= mdeg:
        raise NonTerminating(f"{rep} is not smaller than {mono} in {mvars}")
    cur = pol
    while True:
        hit = [t for t in cur.terms if _divides(m, t)]
        if not hit:
            return cur
        keep = cur.terms.difference(hit)
        quot = MultiPoly(t - m for t in hit)
        cur = MultiPoly(keep) + quot * rep


def reduce_i(pol: MultiPoly) -> MultiPoly:
    """Apply the tower relation i^2 = i + k."""
    return substitute(pol, I2, I_PLUS_K)


def coefficients2(pol: MultiPoly, v1: str, v2: str) -> dict[tuple[int, int], MultiPoly]:
    """{(j, l): coefficient of v1^j v2^l}, coefficients free of v1 and v2."""
    s1, s2 = _SHIFT[v1], _SHIFT[v2]
    buckets: dict[tuple[int, int], set[int]] = {}
    for t in pol.terms:
        j, l = (t >> s1) & _FIELD, (t >> s2) & _FIELD
        buckets.setdefault((j, l), set()).add(t - (j << s1) - (l << s2))
    return {key: MultiPoly(ts) for key, ts in buckets.items()}


def reassemble2(coeffs: Mapping[tuple[int, int], MultiPoly], v1: str, v2: str) -> MultiPoly:
    acc = ZERO
    for (j, l), c in coeffs.items():
        acc = acc + c * MultiPoly.monomial(**{v1: j}) * MultiPoly.monomial(**{v2: l})
    return acc


def divexact(p: MultiPoly, d: MultiPoly) -> MultiPoly:
    """p / d, raising InexactDivision unless the remainder is zero."""
    if not d:
        raise ZeroDivisionError("division by the zero polynomial")
    if not p:
        return ZERO
    if len(d) == 1:
        (m,) = d.terms
        if not all(_divides(m, t) for t in p.terms):
            raise InexactDivision(f"{d} does not divide the dividend")
        return MultiPoly(t - m for t in p.terms)
    lead = d.leading_term()
    dterms = tuple(d.terms)
    rem = set(p.terms)
    heap = [-t for t in rem]
    heapq.heapify(heap)
    quot: list[int] = []
    while heap:
        t = -heapq.heappop(heap)
        if t not in rem:
            continue
        if not _divides(lead, t):
            raise InexactDivision(f"{d} does not divide the dividend")
        qm = t - lead
        quot.append(qm)
        for s in dterms:
            u = s + qm
            if u in rem:
                rem.remove(u)
            else:
                rem.add(u)
                heapq.heappush(heap, -u)
    return MultiPoly(quot)


def _sylvester(u: MultiPoly, v: MultiPoly, var: str) -> list[list[MultiPoly]]:
    m, n = u.degree(var), v.degree(var)
    cu, cv = u.coeffs_in(var), v.coeffs_in(var)
    size = m + n
    rows = []
    for r in range(n):
        row = [ZERO] * size
        for j in range(m + 1):
            row[r + j] = cu.get(m - j, ZERO)
        rows.append(row)
    for r in range(m):
        row = [ZERO] * size
        for j in range(n + 1):
            row[r + j] = cv.get(n - j, ZERO)
        rows.append(row)
    return rows


def sylvester_matrix(u: MultiPoly, v: MultiPoly, var: str) -> list[list[MultiPoly]]:
    return _sylvester(u, v, var)


def det_bareiss(matrix: list[list[MultiPoly]]) -> MultiPoly:
    """Fraction-free elimination; every division is exact."""
    M = [row[:] for row in matrix]
    n = len(M)
    if n == 0:
        return ONE
    prev = ONE
    for k in range(n - 1):
        if not M[k][k]:
            for r in range(k + 1, n):
                if M[r][k]:
                    # row swaps change no sign in characteristic 2
                    M[k], M[r] = M[r], M[k]
                    break
            else:
                return ZERO
        pivot = M[k][k]
        for i in range(k + 1, n):
            lead = M[i][k]
            for j in range(k + 1, n):
                num = M[i][j] * pivot + lead * M[k][j]
                M[i][j] = num if prev == ONE else divexact(num, prev)
            M[i][k] = ZERO
        prev = pivot
    return M[n - 1][n - 1]


def det_cofactor(matrix: list[list[MultiPoly]]) -> MultiPoly:
    """Laplace expansion along the first row."""
    n = len(matrix)
    if n == 0:
        return ONE
    if n == 1:
        return matrix[0][0]
    acc = ZERO
    for j, c in enumerate(matrix[0]):
        if c:
            minor = [row[:j] + row[j + 1:] for row in matrix[1:]]
            acc = acc + c * det_cofactor(minor)
    return acc


def resultant(u: MultiPoly, v: MultiPoly, var: str, strict: bool = True) -> MultiPoly:
    """Determinant of the Sylvester matrix of u and v with respect to ``var``.

    With ``strict`` both inputs must have positive degree in ``var``.
    Otherwise the usual conventions apply: Res(0, v) = 0 and
    Res(u, v) = u^deg(v) when u is free of ``var`` (and symmetrically).
    """
    if not u or not v:
        if strict:
            raise ZeroLeadingCoefficient("resultant of the zero polynomial")
        return ZERO
    m, n = u.degree(var), v.degree(var)
    if m == 0 or n == 0:
        if strict:
            raise ZeroDegree(f"both polynomials need positive degree in {var}")
        if m == 0 and n == 0:
            return ONE
        return u ** n if m == 0 else v ** m
    if m + n <= 3:
        return det_cofactor(_sylvester(u, v, var))
    # Row order only flips the sign, which is invisible in characteristic 2.
    # Pivoting on the sparser polynomial's rows first amounts to reducing the
    # denser one modulo it, which keeps the Bareiss minors small.
    if len(v) < len(u):
        u, v = v, u
    return det_bareiss(_sylvester(u, v, var))


X, Y, A, B, C, D, I, K, a, b, c, d, e = variables(*VARS)
I2 = I ** 2
I_PLUS_K = I + K
