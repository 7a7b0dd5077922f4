"""Exhaustive (alpha, beta) sweeps over GF(q^2)* x GF(q^2)*.

Every kernel takes one packed alpha and returns a boolean row indexed by
packed beta (index 0, beta = 0, is always False).  ``run_sweep`` fans alpha
out over worker processes; each worker builds its own tables and returns
only the hits, so there is no shared mutable state.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from .fields import ExtCtx
from .tables import ExtTables, tables, tables_for
from .trinomial import exponents

# Columns scanned before the full pass; most non-permutations collide early.
STAGE_MU = 12
STAGE_BRUTE = 64


def _distinct_rows(vals: np.ndarray, width: int) -> np.ndarray:
    """Per-row test that all entries differ, via a presence bitmap."""
    rows, cols = vals.shape
    bm = np.zeros((rows, width), dtype=bool)
    bm[np.arange(rows)[:, None], vals] = True
    return bm.sum(axis=1) == cols


class Kernels:
    def __init__(self, tab: ExtTables):
        self.t = tab
        q, Q = tab.q, tab.Q
        self.beta = np.arange(Q, dtype=np.int64)
        self.beta_log = tab.log[self.beta]
        self.beta_frob = tab.frob[self.beta]
        self.beta_norm = tab.norm[self.beta]

        mu = tab.mu
        self.mu = mu
        self.mu2 = tab.sqr(mu)
        self.mu3 = tab.mul(self.mu2, mu)
        self.mu3_log = tab.log[self.mu3]

        x = np.arange(Q, dtype=np.int64)
        e1, e2 = exponents(q)
        self.x = x
        self.x1 = tab.power(x, e1)
        self.x2_log = tab.log[tab.power(x, e2)]

    # -- g on the norm-one group ------------------------------------------
    def _g_logs(self, alpha: int, rows: np.ndarray, cols: slice):
        t = self.t
        mu3 = self.mu3[cols]
        pu = t.mul(t.frob[alpha], mu3) ^ self.mu2[cols]
        qu = self.mu[cols] ^ alpha
        num = pu[None, :] ^ self.beta_frob[rows][:, None]
        den = qu[None, :] ^ t.exp[self.beta_log[rows][:, None] + self.mu3_log[cols][None, :]]
        pole = (den == 0).any(axis=1)
        # on the group, num/den is g^(j(q-1)); j in [0, q] identifies the value
        ratio = (t.log[num] - t.log[den]) % t.n // (t.q - 1)
        ratio[den == 0] = 0
        return ratio, pole

    def perm_mu(self, alpha: int) -> np.ndarray:
        t = self.t
        rows = self.beta[1:]
        ratio, pole = self._g_logs(alpha, rows, slice(0, STAGE_MU))
        alive = _distinct_rows(ratio, t.q + 1) & ~pole
        rows = rows[alive]
        out = np.zeros(t.Q, dtype=bool)
        if rows.size:
            ratio, pole = self._g_logs(alpha, rows, slice(None))
            out[rows] = _distinct_rows(ratio, t.q + 1) & ~pole
        return out

    def mu_pole(self, alpha: int) -> np.ndarray:
        t = self.t
        den = (self.mu ^ alpha)[None, :] ^ t.exp[self.beta_log[:, None] + self.mu3_log[None, :]]
        out = (den == 0).any(axis=1)
        out[0] = False
        return out

    # -- image scan over GF(q^2) ----------------------------------------------
    def _f_vals(self, alpha: int, rows: np.ndarray, cols: slice):
        t = self.t
        v = self.x[cols] ^ t.mul(alpha, self.x1[cols])
        return v[None, :] ^ t.exp[self.beta_log[rows][:, None] + self.x2_log[cols][None, :]]

    def pp_brute(self, alpha: int) -> np.ndarray:
        t = self.t
        rows = self.beta[1:]
        vals = self._f_vals(alpha, rows, slice(0, STAGE_BRUTE))
        rows = rows[_distinct_rows(vals, t.Q)]
        out = np.zeros(t.Q, dtype=bool)
        for chunk in np.array_split(rows, max(1, rows.size * t.Q // (1 << 22))):
            if chunk.size:
                out[chunk] = _distinct_rows(self._f_vals(alpha, chunk, slice(None)), t.Q)
        return out

    # -- the two trace conditions ----------------------------------------
    def conditions(self, alpha: int) -> tuple[np.ndarray, np.ndarray]:
        t = self.t
        na = int(t.norm[alpha])
        alpha_q = int(t.frob[alpha])
        c1 = np.zeros(t.Q, dtype=bool)
        if t.trace[1 ^ int(t.div(1, na))] == 0:
            c1[int(t.div(alpha_q, alpha))] = True
        nb = self.beta_norm
        lhs = t.mul(self.beta, 1 ^ na ^ nb) ^ int(t.sqr(alpha_q))
        c2 = (lhs == 0) & (nb != 1) & (t.trace[t.div(nb, na)] == 0)
        c2[0] = False
        return c1, c2


_WORKER: dict = {}


def _kernels(m: int, modulus: int, k: int) -> Kernels:
    key = (m, modulus, k)
    if key not in _WORKER:
        _WORKER[key] = Kernels(tables_for(m, modulus, k))
    return _WORKER[key]


def _sweep_chunk(args):
    m, modulus, k, mode, alphas = args
    kern = _kernels(m, modulus, k)
    hits = []
    for a in alphas:
        if mode == "condition":
            c1, c2 = kern.conditions(a)
            for tag, row in ((1, c1), (2, c2)):
                for b in np.flatnonzero(row):
                    hits.append((a, int(b), tag))
        else:
            row = getattr(kern, MODES[mode])(a)
            hits.extend((a, int(b), 0) for b in np.flatnonzero(row))
    return hits


MODES = {"mu": "perm_mu", "bruteforce": "pp_brute", "pole": "mu_pole", "condition": "conditions"}


def default_workers() -> int:
    return os.cpu_count() or 1


def run_sweep(ext: ExtCtx, mode: str, workers: int | None = None,
              alphas=None) -> list[tuple[int, int, int]]:
    """Sorted hits (alpha, beta, tag) with packed alpha, beta.

    ``tag`` is 1 or 2 for the condition mode (which condition fired) and 0
    otherwise.
    """
    if mode not in MODES:
        raise ValueError(f"unknown sweep mode {mode!r}")
    Q = ext.q * ext.q
    alphas = list(range(1, Q)) if alphas is None else list(alphas)
    workers = default_workers() if workers is None else workers
    key = (ext.m, ext.base.modulus, ext.k)
    if workers <= 1 or len(alphas) < 2:
        tables(ext)
        hits = _sweep_chunk((*key, mode, alphas))
    else:
        chunks = [alphas[j::workers * 4] for j in range(workers * 4)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            hits = [h for part in pool.map(_sweep_chunk, [(*key, mode, c) for c in chunks]) for h in part]
    return sorted(hits)
