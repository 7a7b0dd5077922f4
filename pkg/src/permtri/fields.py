"""Arithmetic in GF(2^m) and in the quadratic tower GF(q^2) = GF(q)[i], i^2 = i + k.

Base-field elements are plain ints: bit j is the coefficient of t^j, and
addition is xor.  Elements of GF(q^2) are ``Fq2(a, b)`` pairs meaning a + i*b.
Contexts are immutable and can be shared freely between workers.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import gcd
from typing import Iterator, NamedTuple

from .errors import (
    BadTrace,
    DegenerateEquation,
    DegreeMismatch,
    DivisionByZero,
    ParseError,
    ReducibleModulus,
)

MAX_M = 24
TABLE_MAX_M = 16


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division."""
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def clmul(a: int, b: int) -> int:
    """Carryless product of two GF(2)[t] bitmasks."""
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def poly_mod(a: int, m: int) -> int:
    """Remainder of a modulo m in GF(2)[t]."""
    dm = m.bit_length()
    while a.bit_length() >= dm:
        a ^= m << (a.bit_length() - dm)
    return a


def is_irreducible(poly: int) -> bool:
    """Trial division by every polynomial of degree 1 .. deg/2."""
    deg = poly.bit_length() - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for f in range(1 << d, 1 << (d + 1)):
            if poly_mod(poly, f) == 0:
                return False
    return True


def fmt_hex(v: int) -> str:
    return hex(v)


def parse_hex(s: str) -> int:
    try:
        return int(s, 16)
    except (TypeError, ValueError):
        raise ParseError(f"not a hex value: {s!r}") from None


class Fq2(NamedTuple):
    """a + i*b with a, b in GF(q)."""

    a: int
    b: int

    def __str__(self) -> str:
        return f"{self.a:#x}+i*{self.b:#x}"

    @classmethod
    def parse(cls, s: str) -> Fq2:
        """Accept ``0x3+i*0x5`` or the CLI form ``3:5``."""
        s = s.strip().lower()
        if ":" in s:
            a, b = s.split(":", 1)
        elif "+i*" in s:
            a, b = s.split("+i*", 1)
        else:
            raise ParseError(f"cannot parse GF(q^2) element {s!r}")
        return cls(parse_hex(a), parse_hex(b))


class _Infinity:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self) -> str:
        return "INFINITY"


# The point of GF(q) u {oo} that phi sends to 1.
INFINITY = _Infinity()


@dataclass(frozen=True)
class FieldCtx:
    """GF(2^m) = GF(2)[t]/(modulus)."""

    m: int
    modulus: int

    @property
    def q(self) -> int:
        return 1 << self.m

    def __repr__(self) -> str:
        return f"FieldCtx(m={self.m}, modulus={self.modulus:#x})"

    def elements(self) -> range:
        return range(self.q)

    @cached_property
    def generator(self) -> int:
        """Smallest-encoding primitive element of GF(q)*."""
        n = self.q - 1
        primes = list(factorize(n))
        for g in range(2, self.q):
            if all(self.pow_clmul(g, n // p) != 1 for p in primes):
                return g
        return 1  # q == 2

    @cached_property
    def _tables(self) -> tuple[list[int], list[int]] | None:
        if self.m > TABLE_MAX_M:
            return None
        n = self.q - 1
        g = self.generator
        exp = [0] * (2 * n)
        log = [0] * self.q
        v = 1
        for j in range(n):
            exp[j] = exp[j + n] = v
            log[v] = j
            v = self.mul_clmul(v, g)
        return exp, log

    def mul_clmul(self, a: int, b: int) -> int:
        """Shift-xor multiply with interleaved reduction."""
        r = 0
        top = 1 << self.m
        mod = self.modulus
        while b:
            if b & 1:
                r ^= a
            b >>= 1
            a <<= 1
            if a & top:
                a ^= mod
        return r

    def pow_clmul(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self.mul_clmul(r, a)
            a = self.mul_clmul(a, a)
            e >>= 1
        return r

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        t = self._tables
        if t is None:
            return self.mul_clmul(a, b)
        exp, log = t
        return exp[log[a] + log[b]]

    def sqr(self, a: int) -> int:
        return self.mul(a, a)

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of 0 in GF(2^m)")
        t = self._tables
        if t is None:
            return self.pow(a, self.q - 2)
        exp, log = t
        return exp[(self.q - 1 - log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        if a == 0:
            return 1 if e == 0 else 0
        t = self._tables
        if t is not None:
            exp, log = t
            return exp[(log[a] * e) % (self.q - 1)]
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def sqrt(self, a: int) -> int:
        # a^(2^(m-1)): the inverse of Frobenius
        for _ in range(self.m - 1):
            a = self.sqr(a)
        return a

    def quartic_root(self, a: int) -> int:
        return self.sqrt(self.sqrt(a))

    def trace(self, a: int) -> int:
        s = a
        x = a
        for _ in range(self.m - 1):
            x = self.sqr(x)
            s ^= x
        return s

    def half_trace(self, a: int) -> int:
        """sum of a^(4^j), j = 0..(m-1)/2; only meaningful for odd m."""
        s = a
        x = a
        for _ in range((self.m - 1) // 2):
            x = self.sqr(self.sqr(x))
            s ^= x
        return s

    @cached_property
    def _as_solver(self) -> tuple[list[int], list[int]]:
        # Echelon basis (distinct leading bits, descending) of the image of
        # the GF(2)-linear map S -> S^2 + S, each paired with a preimage.
        pivots: list[int] = []
        preimages: list[int] = []
        for j in range(self.m):
            img = self.sqr(1 << j) ^ (1 << j)
            pre = 1 << j
            for p, pp in zip(pivots, preimages):
                if img ^ p < img:
                    img ^= p
                    pre ^= pp
            if img:
                pivots.append(img)
                preimages.append(pre)
                order = sorted(range(len(pivots)), key=lambda n: -pivots[n])
                pivots = [pivots[n] for n in order]
                preimages = [preimages[n] for n in order]
        return pivots, preimages

    def artin_schreier_root(self, w: int) -> int | None:
        """One root S of S^2 + S = w, or None when Tr(w) = 1."""
        if self.trace(w):
            return None
        if self.m % 2:
            return self.half_trace(w)
        s = 0
        for p, pp in zip(*self._as_solver):
            if w ^ p < w:
                w ^= p
                s ^= pp
        assert w == 0
        return s

    def solve_quadratic(self, a: int, b: int, c: int) -> set[int]:
        """All roots in GF(q) of a*T^2 + b*T + c."""
        if a == 0 and b == 0:
            raise DegenerateEquation("a = b = 0")
        if a == 0:
            return {self.div(c, b)}
        if b == 0:
            return {self.sqrt(self.div(c, a))}
        # T = (b/a) S turns the equation into S^2 + S = ac/b^2
        w = self.div(self.mul(a, c), self.sqr(b))
        s = self.artin_schreier_root(w)
        if s is None:
            return set()
        scale = self.div(b, a)
        return {self.mul(scale, s), self.mul(scale, s ^ 1)}


def make_base_field(m: int, modulus: int | None = None) -> FieldCtx:
    if not 2 <= m <= MAX_M:
        raise DegreeMismatch(f"m must lie in [2, {MAX_M}], got {m}")
    if modulus is None:
        for cand in range((1 << m) | 1, 1 << (m + 1), 2):
            if is_irreducible(cand):
                modulus = cand
                break
    if modulus.bit_length() - 1 != m:
        raise DegreeMismatch(f"modulus {modulus:#x} does not have degree {m}")
    if not is_irreducible(modulus):
        raise ReducibleModulus(f"modulus {modulus:#x} is reducible over GF(2)")
    return FieldCtx(m, modulus)


@dataclass(frozen=True)
class ExtCtx:
    """GF(q^2) as GF(q)[i] with i^2 = i + k and Tr(k) = 1."""

    base: FieldCtx
    k: int

    @property
    def q(self) -> int:
        return self.base.q

    @property
    def m(self) -> int:
        return self.base.m

    def __repr__(self) -> str:
        return f"ExtCtx(m={self.m}, modulus={self.base.modulus:#x}, k={self.k:#x})"

    def elements(self) -> Iterator[Fq2]:
        q = self.q
        for b in range(q):
            for a in range(q):
                yield Fq2(a, b)

    def nonzero(self) -> Iterator[Fq2]:
        it = self.elements()
        next(it)
        return it

    # Packed form a | b << m, used by the table-driven sweeps.
    def pack(self, z: Fq2) -> int:
        return z.a | (z.b << self.m)

    def unpack(self, v: int) -> Fq2:
        return Fq2(v & (self.q - 1), v >> self.m)

    def add(self, x: Fq2, y: Fq2) -> Fq2:
        return Fq2(x.a ^ y.a, x.b ^ y.b)

    def mul(self, x: Fq2, y: Fq2) -> Fq2:
        F = self.base
        bb = F.mul(x.b, y.b)
        return Fq2(
            F.mul(x.a, y.a) ^ F.mul(self.k, bb),
            F.mul(x.a, y.b) ^ F.mul(y.a, x.b) ^ bb,
        )

    def sqr(self, x: Fq2) -> Fq2:
        F = self.base
        bb = F.sqr(x.b)
        return Fq2(F.sqr(x.a) ^ F.mul(self.k, bb), bb)

    def frobenius(self, x: Fq2) -> Fq2:
        return Fq2(x.a ^ x.b, x.b)

    def norm(self, x: Fq2) -> int:
        F = self.base
        return F.sqr(x.a) ^ F.mul(x.a, x.b) ^ F.mul(self.k, F.sqr(x.b))

    def inv(self, x: Fq2) -> Fq2:
        n = self.norm(x)
        if n == 0:
            raise DivisionByZero("inverse of 0 in GF(q^2)")
        ni = self.base.inv(n)
        c = self.frobenius(x)
        return Fq2(self.base.mul(c.a, ni), self.base.mul(c.b, ni))

    def div(self, x: Fq2, y: Fq2) -> Fq2:
        return self.mul(x, self.inv(y))

    def pow(self, x: Fq2, e: int) -> Fq2:
        if e < 0:
            x, e = self.inv(x), -e
        r = Fq2(1, 0)
        while e:
            if e & 1:
                r = self.mul(r, x)
            x = self.sqr(x)
            e >>= 1
        return r

    def scale(self, c: int, x: Fq2) -> Fq2:
        return Fq2(self.base.mul(c, x.a), self.base.mul(c, x.b))

    def phi(self, x) -> Fq2:
        """(x + i)/(x + i + 1); INFINITY maps to 1."""
        if x is INFINITY:
            return Fq2(1, 0)
        return self.div(Fq2(x, 1), Fq2(x ^ 1, 1))

    @cached_property
    def mu(self) -> tuple[Fq2, ...]:
        """The q+1 elements of norm 1: phi(oo) = 1 first, then phi(0..q-1)."""
        return (Fq2(1, 0),) + tuple(self.phi(x) for x in self.base.elements())

    def on_mu(self, u: Fq2) -> bool:
        return self.norm(u) == 1


def make_ext(ctx: FieldCtx, k: int | None = None) -> ExtCtx:
    if k is None:
        k = next(v for v in ctx.elements() if ctx.trace(v) == 1)
    elif ctx.trace(k) != 1:
        raise BadTrace(f"Tr({k:#x}) = 0; need a trace-one element")
    return ExtCtx(ctx, k)


def make_tower(m: int, modulus: int | None = None, k: int | None = None) -> ExtCtx:
    return make_ext(make_base_field(m, modulus), k)


def is_coprime(a: int, b: int) -> bool:
    return gcd(a, b) == 1
