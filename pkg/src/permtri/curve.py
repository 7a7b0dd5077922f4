"""The plane quartic L(x, y) = 0 attached to g: rational points and splitting.

L(x, y) is (F(x) - F(y))/(x - y) with denominators cleared, where F is g
pulled back along x -> (x + i)/(x + i + 1).  Its nine coefficients are
polynomials in A, B, C, D and k; the curve is symmetric in x and y.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass

import numpy as np

from .classifier import CaseParams
from .errors import ZeroCoefficient
from .fields import ExtCtx, FieldCtx
from .tables import ExtTables

GAMMA_KEYS = ((2, 2), (2, 1), (1, 2), (2, 0), (1, 1), (0, 2), (1, 0), (0, 1), (0, 0))


@dataclass(frozen=True)
class CurveCoeffs:
    g22: int
    g21: int
    g12: int
    g20: int
    g11: int
    g02: int
    g10: int
    g01: int
    g00: int

    @property
    def gamma(self) -> dict[tuple[int, int], int]:
        return {(j, l): getattr(self, f"g{j}{l}") for j, l in GAMMA_KEYS}

    def evaluate(self, F: FieldCtx, x: int, y: int) -> int:
        acc = 0
        for (j, l), c in self.gamma.items():
            if c:
                acc ^= F.mul(c, F.mul(F.pow(x, j), F.pow(y, l)))
        return acc


def gamma_coeffs(ext: ExtCtx, A: int, B: int, C: int, D: int) -> CurveCoeffs:
    F = ext.base
    k = ext.k
    m = F.mul

    def prod(*vs):
        r = 1
        for v in vs:
            r = m(r, v)
        return r

    A2, B2, C2, D2, k2 = F.sqr(A), F.sqr(B), F.sqr(C), F.sqr(D), F.sqr(k)
    AB, CD = m(A, B), m(C, D)
    g22 = A2 ^ AB ^ m(B2, k) ^ C2 ^ CD ^ m(D2, k) ^ D ^ 1
    g21 = A2 ^ AB ^ m(B2, k) ^ B ^ C2 ^ CD ^ m(D2, k) ^ 1
    g12 = A2 ^ AB ^ m(B2, k) ^ B ^ C2 ^ CD ^ m(D2, k) ^ 1
    g20 = (m(A2, k) ^ A2 ^ m(AB, k) ^ AB ^ A ^ m(B2, k2) ^ m(B2, k) ^ m(C2, k)
           ^ C2 ^ m(CD, k) ^ CD ^ C ^ m(D2, k2) ^ m(D2, k) ^ m(D, k) ^ D ^ k)
    g02 = (m(A2, k) ^ A2 ^ m(AB, k) ^ AB ^ A ^ m(B2, k2) ^ m(B2, k) ^ m(C2, k)
           ^ C2 ^ m(CD, k) ^ CD ^ C ^ m(D2, k2) ^ m(D2, k) ^ m(D, k) ^ D ^ k)
    g11 = A2 ^ AB ^ m(B2, k) ^ C2 ^ CD ^ m(D2, k) ^ 1
    g10 = (m(A2, k) ^ m(AB, k) ^ A ^ m(B2, k2) ^ m(B, k) ^ m(C2, k) ^ m(CD, k)
           ^ m(D2, k2) ^ k)
    g01 = (m(A2, k) ^ m(AB, k) ^ A ^ m(B2, k2) ^ m(B, k) ^ m(C2, k) ^ m(CD, k)
           ^ m(D2, k2) ^ k)
    g00 = (m(A2, k2) ^ m(AB, k2) ^ prod(B2, k2, k) ^ m(C2, k2) ^ m(CD, k2) ^ C
           ^ prod(D2, k2, k) ^ m(D, k2) ^ m(D, k) ^ D ^ k2)
    return CurveCoeffs(g22, g21, g12, g20, g11, g02, g10, g01, g00)


def count_points_off_diagonal(ctx: FieldCtx, coeffs: CurveCoeffs) -> int:
    """#{(x, y) in GF(q)^2 : L(x, y) = 0, x != y}, by scanning every cell."""
    F = ctx
    c = coeffs
    count = 0
    for x in F.elements():
        x2 = F.sqr(x)
        # L(x, y) = p2 y^2 + p1 y + p0
        p2 = F.mul(c.g22, x2) ^ F.mul(c.g12, x) ^ c.g02
        p1 = F.mul(c.g21, x2) ^ F.mul(c.g11, x) ^ c.g01
        p0 = F.mul(c.g20, x2) ^ F.mul(c.g10, x) ^ c.g00
        for y in F.elements():
            if y != x and F.mul(F.mul(p2, y) ^ p1, y) ^ p0 == 0:
                count += 1
    return count


def gamma_batch(tab: ExtTables, A, B, C, D):
    """Vectorized (g22, g21, g20, g11, g10, g00); the mirrored ones are equal."""
    k = tab.ext.k
    m = tab.m
    na = tab.norm[A | (B << m)]
    nb = tab.norm[C | (D << m)]
    s = na ^ nb
    k1 = k ^ 1
    k2 = int(tab.sqr(k))
    g11 = s ^ 1
    g22 = g11 ^ D
    g21 = g11 ^ B
    g20 = tab.mul(s, k1) ^ A ^ C ^ tab.mul(D, k1) ^ k
    g10 = tab.mul(s, k) ^ A ^ tab.mul(B, k) ^ k
    g00 = tab.mul(s, k2) ^ C ^ tab.mul(D, k2 ^ k ^ 1) ^ k2
    return g22, g21, g20, g11, g10, g00


def count_points_batch(tab: ExtTables, A, B, C, D) -> np.ndarray:
    """Off-diagonal point counts for arrays of (A, B, C, D).

    With s = x + y != 0 and p = xy, symmetry gives
    L = g22 p^2 + (g21 s + g11) p + (g20 s^2 + g10 s + g00),
    and each p with Tr(p/s^2) = 0 is hit by exactly two ordered (x, y),
    x != y.  So the count is twice the number of admissible roots p of a
    quadratic, summed over the q - 1 nonzero s.
    """
    A, B, C, D = np.broadcast_arrays(*(np.atleast_1d(np.asarray(v, dtype=np.int64)) for v in (A, B, C, D)))
    g22, g21, g20, g11, g10, g00 = gamma_batch(tab, A, B, C, D)
    q = tab.q
    s = np.arange(1, q, dtype=np.int64)[None, :]
    s2 = tab.sqr(s)
    P = np.broadcast_to(g22[:, None], (A.size, q - 1))
    Qc = tab.mul(g21[:, None], s) ^ g11[:, None]
    R = tab.mul(g20[:, None], s2) ^ tab.mul(g10[:, None], s) ^ g00[:, None]

    Pn, Qn = P != 0, Qc != 0
    Ps = np.where(Pn, P, 1)
    Qs = np.where(Qn, Qc, 1)

    def admissible(root):
        return tab.trace[tab.div(root, s2)] == 0

    # both nonzero: p = (Qc/P) S with S^2 + S = P R / Qc^2
    w = tab.div(tab.mul(Ps, R), tab.sqr(Qs))
    S0 = tab.as_root[w]
    scale = tab.div(Qs, Ps)
    r0 = tab.mul(scale, np.maximum(S0, 0))
    two = (S0 >= 0) * (admissible(r0).astype(np.int64) + admissible(r0 ^ scale))
    one_sqrt = admissible(tab.sqrt[tab.div(R, Ps)])
    one_lin = admissible(tab.div(R, Qs))
    flat = np.where(R == 0, q // 2, 0)

    per_s = np.where(Pn, np.where(Qn, two, one_sqrt), np.where(Qn, one_lin, flat))
    return 2 * per_s.sum(axis=1)


class SplitType(enum.Enum):
    FOUR_LINES = "FOUR_LINES"
    TWO_CONICS_SWAPPED = "TWO_CONICS_SWAPPED"
    CUBIC_HAS_RATIONAL_COMPONENT = "CUBIC_HAS_RATIONAL_COMPONENT"
    DEGENERATE_CONIC_PAIR = "DEGENERATE_CONIC_PAIR"
    NOT_SPLIT_NONRATIONAL = "NOT_SPLIT_NONRATIONAL"
    HAS_RATIONAL_COMPONENT = "HAS_RATIONAL_COMPONENT"


@dataclass(frozen=True)
class SplitReport:
    """``split_type`` is the verdict; ``shape`` the configuration that was found.

    NOT_SPLIT_NONRATIONAL means the curve breaks into absolutely irreducible
    components none of which is defined over GF(q).
    """

    split_type: SplitType
    shape: SplitType | None = None
    witness: CaseParams | None = None

    @property
    def case_id(self) -> int | None:
        return None if self.witness is None else self.witness.case_id

    def as_dict(self) -> dict:
        return {
            "split_type": self.split_type.value,
            "shape": None if self.shape is None else self.shape.value,
            "case_id": self.case_id,
            "witness_params": None if self.witness is None else self.witness.as_dict(),
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True)


def _nonrational(shape, case_id, A, B, C, D, **params) -> SplitReport:
    return SplitReport(SplitType.NOT_SPLIT_NONRATIONAL, shape,
                       CaseParams(case_id, A, B, C, D, **params))


def _rational(shape=None) -> SplitReport:
    return SplitReport(SplitType.HAS_RATIONAL_COMPONENT, shape)


def split_analysis(ext: ExtCtx, A: int, B: int, C: int, D: int) -> SplitReport:
    """Decide whether L splits into components none of which is GF(q)-rational.

    Each configuration is tested through the closed-form conditions for its
    factorization shape, with rationality of the factors reduced to
    solvability of a quadratic over GF(q).  A configuration with two conics
    both fixed by (x, y) -> (y, x) cannot occur, so it has no branch.
    """
    if (A, B) == (0, 0) or (C, D) == (0, 0):
        raise ZeroCoefficient("alpha and beta must both be nonzero")
    F = ext.base
    k = ext.k
    m = F.mul
    g22 = (F.sqr(A) ^ m(A, B) ^ m(k, F.sqr(B)) ^ F.sqr(C) ^ m(C, D)
           ^ m(k, F.sqr(D)) ^ D ^ 1)

    if g22:
        # four lines g22 (x + a)(x + b)(y + a)(y + b)
        if B == D:
            if B == 0 and F.sqr(A) ^ F.sqr(C) ^ C == 0:
                xi = F.sqrt(C)
                # each factor is (xi+1) T^2 + (xi+1) T + (xi k + xi + k)
                if not F.solve_quadratic(xi ^ 1, xi ^ 1, m(xi, k) ^ xi ^ k):
                    return _nonrational(SplitType.FOUR_LINES, 1, A, B, C, D, xi=xi)
                return _rational(SplitType.FOUR_LINES)
        elif D:
            D2, D3 = F.sqr(D), m(F.sqr(D), D)
            D4 = F.sqr(D2)
            B2, B3 = F.sqr(B), m(F.sqr(B), B)
            B4 = F.sqr(B2)
            if (m(A, D2) == B3 ^ m(m(B, C), D) ^ m(B, D2) ^ m(B, D)
                    and m(k, D4) == B4 ^ m(F.sqr(C), D2) ^ m(C, D3) ^ D2):
                lead = m(D4, D ^ B)
                mid = m(B, D4)
                const = (m(B4, B) ^ m(B4, D) ^ m(B2, D3) ^ m(m(B, F.sqr(C)), D2)
                         ^ m(m(B, C), D3) ^ m(B, D2) ^ m(F.sqr(C), D3) ^ m(D4, D) ^ D4 ^ D3)
                if not F.solve_quadratic(lead, mid, const):
                    return _nonrational(SplitType.FOUR_LINES, 2, A, B, C, D,
                                        xi=F.quartic_root(C), eta=F.quartic_root(D),
                                        kbar=F.quartic_root(k))
                return _rational(SplitType.FOUR_LINES)
        # two conics swapped by (x, y) -> (y, x):
        # (xy + (s + it) x + (s + t + it) y + c)(xy + (s + t + it) x + (s + it) y + c)
        if B == D:
            if B == 0 and C == 1 and F.solve_quadratic(A, A, A ^ 1):
                return _nonrational(SplitType.TWO_CONICS_SWAPPED, 3, A, B, C, D)
        elif B and D:
            if m(A, D) == m(B, C ^ D ^ 1) and m(k, F.sqr(D)) == F.sqr(C) ^ m(C, D) ^ 1:
                B2, D2 = F.sqr(B), F.sqr(D)
                sigma = F.solve_quadratic(B2 ^ D2, B2 ^ m(B, D),
                                          B2 ^ m(B, C) ^ m(B, D) ^ B ^ F.sqr(C) ^ D2 ^ D ^ 1)
                if sigma:
                    return _nonrational(SplitType.TWO_CONICS_SWAPPED, 4, A, B, C, D)
        return _rational()

    # g22 = 0: degree at most three
    if B != D:
        # x^2 y and x y^2 survive; the simple rational ideal point of x = 0
        # lies on a unique, hence GF(q)-rational, component
        return _rational(SplitType.CUBIC_HAS_RATIONAL_COMPONENT)
    if A ^ B ^ C ^ 1 == 0 and B and F.sqr(A) ^ m(A, B) ^ m(k, F.sqr(B)) ^ B == 0:
        # B x^2 + B xy + B y^2 + ... splits over GF(4); lines rational iff GF(4) in GF(q)
        if F.m % 2:
            return _nonrational(SplitType.DEGENERATE_CONIC_PAIR, 5, A, B, C, D)
        return _rational(SplitType.DEGENERATE_CONIC_PAIR)
    return _rational()
