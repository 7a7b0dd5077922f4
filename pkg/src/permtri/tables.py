"""Log/antilog tables over packed GF(q^2) elements for vectorized sweeps.

An element a + i*b is packed as ``a | b << m``; GF(q) sits inside as the
packed values below q, so the same tables multiply base-field elements.
Zero is given the log ``ZLOG = 2Q - 1``; the antilog array is zero-padded
far enough that any sum involving ``ZLOG`` lands on a zero entry.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .fields import ExtCtx, Fq2, factorize, make_tower

MAX_TABLE_M = 8


class ExtTables:
    def __init__(self, ext: ExtCtx):
        if ext.m > MAX_TABLE_M:
            raise ValueError(f"table sweeps support m <= {MAX_TABLE_M}")
        self.ext = ext
        self.m = m = ext.m
        self.q = q = ext.q
        self.Q = Q = q * q
        self.n = n = Q - 1
        self.zlog = 2 * Q - 1

        g = self._generator()
        exp = np.zeros(4 * Q, dtype=np.int64)
        log = np.empty(Q, dtype=np.int64)
        log[0] = self.zlog
        v = Fq2(1, 0)
        for j in range(n):
            p = ext.pack(v)
            exp[j] = exp[j + n] = p
            log[p] = j
            v = ext.mul(v, g)
        self.exp = exp
        self.log = log

        packed = np.arange(Q, dtype=np.int64)
        a = packed & (q - 1)
        b = packed >> m
        self.frob = (a ^ b) | (b << m)
        # x^(q+1) has log (q+1)*log(x) and lands in GF(q)
        self.norm = np.where(packed == 0, 0, exp[(log * (q + 1)) % n])

        F = ext.base
        self.trace = np.array([F.trace(z) for z in range(q)], dtype=np.int64)
        self.sqrt = np.array([F.sqrt(z) for z in range(q)], dtype=np.int64)
        self.as_root = np.array(
            [-1 if F.trace(w) else F.artin_schreier_root(w) for w in range(q)],
            dtype=np.int64,
        )
        self.mu = np.array([ext.pack(u) for u in ext.mu], dtype=np.int64)

    def _generator(self) -> Fq2:
        ext = self.ext
        n = self.n
        primes = list(factorize(n))
        for v in range(2, self.Q):
            z = ext.unpack(v)
            if all(ext.pow(z, n // p) != Fq2(1, 0) for p in primes):
                return z
        raise AssertionError("GF(q^2)* has no generator")

    def mul(self, x, y):
        return self.exp[self.log[x] + self.log[y]]

    def div(self, x, y):
        """x / y for nonzero y (y = 0 yields garbage; mask it first)."""
        return self.exp[self.log[x] + self.n - self.log[y]]

    def power(self, x, e: int):
        x = np.asarray(x)
        return np.where(x == 0, 0, self.exp[(self.log[x] * e) % self.n])

    def sqr(self, x):
        return self.exp[2 * self.log[x]]


@lru_cache(maxsize=8)
def tables_for(m: int, modulus: int, k: int) -> ExtTables:
    return ExtTables(make_tower(m, modulus, k))


def tables(ext: ExtCtx) -> ExtTables:
    return tables_for(ext.m, ext.base.modulus, ext.k)
