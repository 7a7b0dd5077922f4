"""The two trace conditions and the five parametrized curve cases they split into.

With alpha = A + iB and beta = C + iD:

* COND1: beta = alpha^(q-1) and Tr(1 + 1/alpha^(q+1)) = 0
* COND2: beta(1 + alpha^(q+1) + beta^(q+1)) + alpha^(2q) = 0,
  beta^(q+1) != 1 and Tr(beta^(q+1)/alpha^(q+1)) = 0

COND2 splits into cases 1 and 2 according to whether beta lies in GF(q);
COND1 splits into case 3 (beta in GF(q)), case 4 (B != D) and case 5 (B = D).
Everything is decided with norms and traces; no discrete logarithms.
"""

from __future__ import annotations

import csv
import enum
import io
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import ZeroCoefficient
from .fields import ExtCtx, Fq2
from .sweep import run_sweep
from .trinomial import ZERO, PairAB


class Condition(enum.Enum):
    COND1 = "COND1"
    COND2 = "COND2"
    NONE = "NONE"


@dataclass(frozen=True)
class CaseParams:
    case_id: int
    A: int
    B: int
    C: int
    D: int
    xi: int | None = None
    eta: int | None = None
    kbar: int | None = None

    def as_dict(self) -> dict:
        out = {"case_id": self.case_id}
        for name in ("A", "B", "C", "D", "xi", "eta", "kbar"):
            v = getattr(self, name)
            if v is not None:
                out[name] = hex(v)
        return out


def cond1(ext: ExtCtx, pair: PairAB) -> bool:
    F = ext.base
    alpha, beta = pair.alpha, pair.beta
    # beta = alpha^(q-1)  <=>  beta * alpha = alpha^q
    if ext.mul(beta, alpha) != ext.frobenius(alpha):
        return False
    return F.trace(1 ^ F.inv(ext.norm(alpha))) == 0


def cond2(ext: ExtCtx, pair: PairAB) -> bool:
    F = ext.base
    alpha, beta = pair.alpha, pair.beta
    na, nb = ext.norm(alpha), ext.norm(beta)
    if nb == 1:
        return False
    lhs = ext.add(ext.scale(1 ^ na ^ nb, beta), ext.sqr(ext.frobenius(alpha)))
    if lhs != ZERO:
        return False
    return F.trace(F.div(nb, na)) == 0


# -- parametrized cases -------------------------------------------------------

def _case1(ext: ExtCtx, A, B, C, D) -> CaseParams | None:
    F = ext.base
    if B or D or not A:
        return None
    for xi in F.solve_quadratic(1, 1, A):
        if F.sqr(xi) == C and xi not in (0, 1) and F.trace(F.div(xi, xi ^ 1)) == 0:
            return CaseParams(1, A, B, C, D, xi=xi)
    return None


def _case2(ext: ExtCtx, A, B, C, D) -> CaseParams | None:
    F = ext.base
    k = ext.k
    if not D or not B or B == D:
        return None
    # fourth power of the B formula below: B^4 = k D^4 + C^2 D^2 + C D^3 + D^2
    D2 = F.sqr(D)
    if F.sqr(F.sqr(B)) != F.mul(k, F.sqr(D2)) ^ F.mul(F.sqr(C), D2) ^ F.mul(C, F.mul(D2, D)) ^ D2:
        return None
    xi, eta, kbar = F.quartic_root(C), F.quartic_root(D), F.quartic_root(k)
    eta2 = F.sqr(eta)
    side = F.mul(eta2, kbar) ^ F.sqr(xi) ^ F.mul(xi, eta) ^ 1
    if side in (0, eta2):
        return None
    if B != F.mul(eta2, side):
        return None
    lin = F.mul(eta, kbar) ^ eta ^ xi
    if A != F.mul(F.sqr(lin), side):
        return None
    t = F.div(B, D) ^ 1 ^ F.inv(D2) ^ F.div(D, F.sqr(B))
    if F.trace(t) != 1:
        return None
    return CaseParams(2, A, B, C, D, xi=xi, eta=eta, kbar=kbar)


def _case3(ext: ExtCtx, A, B, C, D) -> CaseParams | None:
    F = ext.base
    if B or D or C != 1 or not A:
        return None
    if F.trace(1 ^ F.inv(A)) != 0:
        return None
    return CaseParams(3, A, B, C, D)


def _case4(ext: ExtCtx, A, B, C, D) -> CaseParams | None:
    F = ext.base
    if not D or not B or B == D:
        return None
    if F.mul(A, D) != F.mul(B, C ^ D ^ 1):
        return None
    if F.mul(ext.k, F.sqr(D)) ^ F.sqr(C) ^ F.mul(C, D) ^ 1:
        return None
    if F.trace(1 ^ F.div(D, F.sqr(B))) != 0:
        return None
    return CaseParams(4, A, B, C, D)


def _case5(ext: ExtCtx, A, B, C, D) -> CaseParams | None:
    F = ext.base
    if ext.m % 2 == 0 or not B or B != D or C != A ^ B ^ 1:
        return None
    if F.sqr(A) ^ F.mul(A, B) ^ F.mul(ext.k, F.sqr(B)) ^ B:
        return None
    return CaseParams(5, A, B, C, D)


_CASES = {1: _case1, 2: _case2, 3: _case3, 4: _case4, 5: _case5}
CASE_IDS = tuple(_CASES)


def case_witness(ext: ExtCtx, case_id: int, A: int, B: int, C: int, D: int) -> CaseParams | None:
    """Parameters exhibiting membership in the case, or None."""
    if (A, B) == (0, 0) or (C, D) == (0, 0):
        raise ZeroCoefficient("alpha and beta must both be nonzero")
    return _CASES[case_id](ext, A, B, C, D)


def case_predicate(ext: ExtCtx, case_id: int, A: int, B: int, C: int, D: int) -> bool:
    return case_witness(ext, case_id, A, B, C, D) is not None


def matching_cases(ext: ExtCtx, A: int, B: int, C: int, D: int) -> list[int]:
    return [c for c in CASE_IDS if _CASES[c](ext, A, B, C, D) is not None]


def _default_params(ext: ExtCtx, case_id: int) -> Iterator[tuple]:
    q = ext.q
    if case_id == 1:
        yield from ((xi,) for xi in range(q))
    elif case_id == 2:
        yield from ((xi, eta) for xi in range(q) for eta in range(1, q))
    elif case_id in (3, 5):
        yield from ((v,) for v in range(1, q))
    elif case_id == 4:
        F = ext.base
        for D in range(1, q):
            # C must satisfy C^2 + C D + (k D^2 + 1) = 0
            for C in sorted(F.solve_quadratic(1, D, F.mul(ext.k, F.sqr(D)) ^ 1)):
                for B in range(1, q):
                    yield (B, C, D)


def case_generate(ext: ExtCtx, case_id: int,
                  free_params: Iterable[tuple] | None = None) -> list[tuple[int, int, int, int]]:
    """Coordinate tuples (A, B, C, D) of a case, by substituting its parameters.

    Free parameters per case: (xi,), (xi, eta), (A,), (B, C, D), (B,).
    ``None`` runs over the whole parameter domain.  Parameter values that
    violate the case's side conditions are skipped.
    """
    F = ext.base
    k = ext.k
    params = _default_params(ext, case_id) if free_params is None else free_params
    out: list[tuple[int, int, int, int]] = []
    if case_id == 1:
        for (xi,) in params:
            if xi in (0, 1) or F.trace(F.div(xi, xi ^ 1)):
                continue
            out.append((F.sqr(xi) ^ xi, 0, F.sqr(xi), 0))
    elif case_id == 2:
        kbar = F.quartic_root(k)
        for xi, eta in params:
            if not eta:
                continue
            eta2 = F.sqr(eta)
            side = F.mul(eta2, kbar) ^ F.sqr(xi) ^ F.mul(xi, eta) ^ 1
            if side in (0, eta2):
                continue
            A = F.mul(F.sqr(F.mul(eta, kbar) ^ eta ^ xi), side)
            B = F.mul(eta2, side)
            C = F.sqr(F.sqr(xi))
            D = F.sqr(eta2)
            t = F.div(B, D) ^ 1 ^ F.inv(F.sqr(D)) ^ F.div(D, F.sqr(B))
            if F.trace(t) == 1:
                out.append((A, B, C, D))
    elif case_id == 3:
        for (A,) in params:
            if A and F.trace(1 ^ F.inv(A)) == 0:
                out.append((A, 0, 1, 0))
    elif case_id == 4:
        for B, C, D in params:
            if not B or not D or B == D:
                continue
            if F.mul(k, F.sqr(D)) ^ F.sqr(C) ^ F.mul(C, D) ^ 1:
                continue
            if F.trace(1 ^ F.div(D, F.sqr(B))):
                continue
            out.append((F.div(F.mul(B, C ^ D ^ 1), D), B, C, D))
    elif case_id == 5:
        if ext.m % 2 == 0:
            return out
        for (B,) in params:
            if not B:
                continue
            for A in sorted(F.solve_quadratic(1, B, F.mul(k, F.sqr(B)) ^ B)):
                out.append((A, B, A ^ B ^ 1, B))
    else:
        raise ValueError(f"no case {case_id}")
    return out


def classify(ext: ExtCtx, pair: PairAB) -> tuple[Condition, int | None]:
    """Which condition holds, and the case it corresponds to."""
    if pair.alpha == ZERO or pair.beta == ZERO:
        raise ZeroCoefficient("alpha and beta must both be nonzero")
    beta_in_base = pair.beta.b == 0
    if cond2(ext, pair):
        return Condition.COND2, 1 if beta_in_base else 2
    if cond1(ext, pair):
        if beta_in_base:
            return Condition.COND1, 3
        # alpha + alpha^q = B and beta + beta^q = D
        return Condition.COND1, 4 if pair.alpha.b != pair.beta.b else 5
    return Condition.NONE, None


ENUM_MODES = ("bruteforce", "mu", "condition")


def enumerate_pp_pairs(ext: ExtCtx, mode: str, workers: int | None = None) -> set[PairAB]:
    """All pairs passing the selected test (condition mode = cond1 or cond2)."""
    if mode not in ENUM_MODES:
        raise ValueError(f"mode must be one of {ENUM_MODES}")
    hits = run_sweep(ext, mode, workers)
    return {PairAB(ext.unpack(a), ext.unpack(b)) for a, b, _ in hits}


CSV_COLUMNS = ("q", "alpha_hex_a", "alpha_hex_b", "beta_hex_a", "beta_hex_b", "condition", "case_id")


def pairs_to_csv(ext: ExtCtx, pairs: Iterable[PairAB]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for p in sorted(pairs):
        tag, case = classify(ext, p)
        w.writerow([ext.q, hex(p.alpha.a), hex(p.alpha.b), hex(p.beta.a), hex(p.beta.b),
                    tag.value, "" if case is None else case])
    return buf.getvalue()


def pairs_from_csv(text: str) -> list[tuple[int, PairAB, str, int | None]]:
    rows = []
    for rec in csv.DictReader(io.StringIO(text)):
        pair = PairAB(Fq2(int(rec["alpha_hex_a"], 16), int(rec["alpha_hex_b"], 16)),
                      Fq2(int(rec["beta_hex_a"], 16), int(rec["beta_hex_b"], 16)))
        case = int(rec["case_id"]) if rec["case_id"] else None
        rows.append((int(rec["q"]), pair, rec["condition"], case))
    return rows
