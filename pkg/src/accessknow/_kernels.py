"""Hot loops of the model validators.

Every condition is a violation predicate over an index space such as
(agent, m, m') or (group, prime filter, m).  A kernel returns one row per
condition: ``[failed, w1, w2, w3, w4]`` where the witness is the first
violating index tuple in C order (unused slots are -1).  The numba loops
stop at that first violation; the numpy fallback builds the whole
violation tensor and takes its first true entry, so both agree exactly.

Set ``ACCESSKNOW_PURE_NUMPY=1`` to skip numba.
"""

from __future__ import annotations

import os

import numpy as np

THM870 = ("B", "C", "D", "E", "F", "G", "H", "I", "Istar", "Kdisj", "Cdisj",
          "intro", "IntCo", "Ktop")
DEF810 = ("ii", "iiia", "iiib", "iiic", "cstar", "iiid", "iiie", "iiif", "cprime", "g",
          "IntCo")

PURE_NUMPY = os.environ.get("ACCESSKNOW_PURE_NUMPY", "").strip().lower() in ("1", "true", "yes")

try:  # pragma: no cover - depends on the environment
    if PURE_NUMPY:
        raise ImportError
    from numba import njit
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

BACKEND = "numba" if HAVE_NUMBA else "numpy"


def _empty(ncond: int) -> np.ndarray:
    out = np.full((ncond, 5), -1, dtype=np.int64)
    out[:, 0] = 0
    return out


# ------------------------------------------------------------------ numpy

def _first(out: np.ndarray, row: int, viol: np.ndarray) -> None:
    flat = np.flatnonzero(viol)
    if len(flat):
        out[row, 0] = 1
        idx = np.unravel_index(flat[0], viol.shape)
        out[row, 1:1 + len(idx)] = idx


def thm870_numpy(leq, join, imp, neg, top, bot, box, K, C, gmem, gsub):
    n = len(leq)
    out = _empty(len(THM870))
    m = np.arange(n)
    want = np.where(m == top, top, bot)
    _first(out, 0, box != want)
    # K (A, n), C (G, n)
    for row, T in ((1, K), (2, C)):
        lhs = T[:, imp]
        rhs = imp[T[:, :, None], T[:, None, :]]
        _first(out, row, ~leq[lhs, rhs])
    # E: (g, i, m)
    _first(out, 3, gmem[:, :, None] & ~leq[C[:, None, :], K[None, :, :]])
    # F: C_g(m) <= C_g(K_i(m))
    ck = C[np.arange(len(C))[:, None, None], K[None, :, :]]
    _first(out, 4, gmem[:, :, None] & ~leq[C[:, None, :], ck])
    # G: (g, h, m), h a subgroup of g
    _first(out, 5, gsub[:, :, None] & ~leq[C[:, None, :], C[None, :, :]])
    _first(out, 6, C[:, top] != top)
    _first(out, 7, ~leq[K, neg[neg][None, :]])
    _first(out, 8, ~leq[K, m[None, :]])
    for row, T in ((9, K), (10, C)):
        lhs = T[:, join]
        rhs = join[T[:, :, None], T[:, None, :]]
        _first(out, row, ~leq[lhs, rhs])
    cc = C[np.arange(len(C))[:, None], C]
    _first(out, 11, ~leq[C, cc])
    _first(out, 12, ~leq[m[None, :], K])
    _first(out, 13, K[:, top] != top)
    return out


def def810_numpy(leq, join, imp, top, bot, box, K, C, gmem, gsub, true_in,
                 prime, ultra, sup):
    n = len(leq)
    out = _empty(len(DEF810))
    m = np.arange(n)
    _first(out, 0, box != np.where(m == top, top, bot))
    # bel[i, p, m]: K_i(m) in prime filter p
    bel = prime[np.arange(len(prime))[None, :, None], K[:, None, :]]
    com = prime[np.arange(len(prime))[None, :, None], C[:, None, :]]
    diag = np.eye(n, dtype=bool)
    at_top = np.zeros((n, n), dtype=bool)
    at_top[top, top] = True
    at_bot = np.zeros((n, n), dtype=bool)
    at_bot[bot, bot] = True

    def closure_viol(S):
        # S (a, p, n): top in S and closed under modus ponens
        mp = S[:, :, :, None] & S[:, :, imp] & ~S[:, :, None, :]
        return mp | (~S[:, :, top])[:, :, None, None] & at_top

    def split_viol(S):
        return S[:, :, join] & ~S[:, :, :, None] & ~S[:, :, None, :]

    _first(out, 1, closure_viol(bel))
    _first(out, 2, closure_viol(com))
    # iiic: (i, p, u, m)
    _first(out, 3, sup[None, :, :, None] & bel[:, :, None, :] & ~ultra[None, None, :, :])
    # cstar: (i, p, m, m') subset on the diagonal, prime split everywhere
    subset = bel & ~prime[None, :, :]
    _first(out, 4, subset[:, :, :, None] & diag | split_viol(bel))
    # iiid / iiie: (g, i, p, m)
    _first(out, 5, gmem[:, :, None, None] & com[:, None, :, :] & ~bel[None, :, :, :])
    g_idx = np.arange(len(C))[:, None, None, None]
    p_idx = np.arange(len(prime))[None, None, :, None]
    com_k = com[g_idx, p_idx, K[None, :, None, :]]
    _first(out, 6, gmem[:, :, None, None] & com[:, None, :, :] & ~com_k)
    # iiif: (g, h, p, m)
    _first(out, 7, gsub[:, :, None, None] & com[:, None, :, :] & ~com[None, :, :, :])
    _first(out, 8, com[:, :, bot][:, :, None, None] & at_bot | split_viol(com))
    com_c = com[np.arange(len(C))[:, None, None], np.arange(len(prime))[None, :, None],
                C[:, None, :]]
    _first(out, 9, com & ~com_c)
    _first(out, 10, prime[None, :, :] & ~bel)
    return out


# ------------------------------------------------------------------ numba

if HAVE_NUMBA:

    @njit(cache=True)
    def _set(out, row, a, b, c, d):
        out[row, 0] = 1
        out[row, 1] = a
        out[row, 2] = b
        out[row, 3] = c
        out[row, 4] = d

    @njit(cache=True)
    def _distrib(out, row, leq, op, imp_or_join, T):
        # T(op(m, m')) <= op(T(m), T(m'))
        n = leq.shape[0]
        for a in range(T.shape[0]):
            for x in range(n):
                for y in range(n):
                    if not leq[T[a, op[x, y]], imp_or_join[T[a, x], T[a, y]]]:
                        _set(out, row, a, x, y, -1)
                        return

    @njit(cache=True)
    def thm870_numba(leq, join, imp, neg, top, bot, box, K, C, gmem, gsub):
        n = leq.shape[0]
        A = K.shape[0]
        NG = C.shape[0]
        out = np.full((14, 5), -1, dtype=np.int64)
        out[:, 0] = 0
        for x in range(n):
            want = top if x == top else bot
            if box[x] != want:
                _set(out, 0, x, -1, -1, -1)
                break
        _distrib(out, 1, leq, imp, imp, K)
        _distrib(out, 2, leq, imp, imp, C)
        done_e = False
        done_f = False
        for g in range(NG):
            for i in range(A):
                if not gmem[g, i]:
                    continue
                for x in range(n):
                    if not done_e and not leq[C[g, x], K[i, x]]:
                        _set(out, 3, g, i, x, -1)
                        done_e = True
                    if not done_f and not leq[C[g, x], C[g, K[i, x]]]:
                        _set(out, 4, g, i, x, -1)
                        done_f = True
        for g in range(NG):
            found = False
            for h in range(NG):
                if not gsub[g, h]:
                    continue
                for x in range(n):
                    if not leq[C[g, x], C[h, x]]:
                        _set(out, 5, g, h, x, -1)
                        found = True
                        break
                if found:
                    break
            if found:
                break
        for g in range(NG):
            if C[g, top] != top:
                _set(out, 6, g, -1, -1, -1)
                break
        done_i = False
        done_s = False
        done_c = False
        for i in range(A):
            for x in range(n):
                if not done_i and not leq[K[i, x], neg[neg[x]]]:
                    _set(out, 7, i, x, -1, -1)
                    done_i = True
                if not done_s and not leq[K[i, x], x]:
                    _set(out, 8, i, x, -1, -1)
                    done_s = True
                if not done_c and not leq[x, K[i, x]]:
                    _set(out, 12, i, x, -1, -1)
                    done_c = True
        _distrib(out, 9, leq, join, join, K)
        _distrib(out, 10, leq, join, join, C)
        for g in range(NG):
            found = False
            for x in range(n):
                if not leq[C[g, x], C[g, C[g, x]]]:
                    _set(out, 11, g, x, -1, -1)
                    found = True
                    break
            if found:
                break
        for i in range(A):
            if K[i, top] != top:
                _set(out, 13, i, -1, -1, -1)
                break
        return out

    @njit(cache=True)
    def _closure(out, row, imp, top, T, prime):
        n = imp.shape[0]
        for a in range(T.shape[0]):
            for p in range(prime.shape[0]):
                for x in range(n):
                    for y in range(n):
                        bad = (prime[p, T[a, x]] and prime[p, T[a, imp[x, y]]]
                               and not prime[p, T[a, y]])
                        if x == top and y == top and not prime[p, T[a, top]]:
                            bad = True
                        if bad:
                            _set(out, row, a, p, x, y)
                            return

    @njit(cache=True)
    def _prime_split(out, row, join, T, prime, diag_sub, bot_check, bot):
        # diag_sub: also flag m in S(p) outside p; bot_check: flag bot in S(p)
        n = join.shape[0]
        for a in range(T.shape[0]):
            for p in range(prime.shape[0]):
                for x in range(n):
                    for y in range(n):
                        sx = prime[p, T[a, x]]
                        bad = (prime[p, T[a, join[x, y]]] and not sx
                               and not prime[p, T[a, y]])
                        if diag_sub and x == y and sx and not prime[p, x]:
                            bad = True
                        if bot_check and x == bot and y == bot and prime[p, T[a, bot]]:
                            bad = True
                        if bad:
                            _set(out, row, a, p, x, y)
                            return

    @njit(cache=True)
    def def810_numba(leq, join, imp, top, bot, box, K, C, gmem, gsub, true_in,
                     prime, ultra, sup):
        n = leq.shape[0]
        A = K.shape[0]
        NG = C.shape[0]
        NP = prime.shape[0]
        NU = ultra.shape[0]
        out = np.full((11, 5), -1, dtype=np.int64)
        out[:, 0] = 0
        for x in range(n):
            want = top if x == top else bot
            if box[x] != want:
                _set(out, 0, x, -1, -1, -1)
                break
        _closure(out, 1, imp, top, K, prime)
        _closure(out, 2, imp, top, C, prime)
        found = False
        for i in range(A):
            for p in range(NP):
                for u in range(NU):
                    if not sup[p, u]:
                        continue
                    for x in range(n):
                        if prime[p, K[i, x]] and not ultra[u, x]:
                            _set(out, 3, i, p, u, x)
                            found = True
                            break
                    if found:
                        break
                if found:
                    break
            if found:
                break
        _prime_split(out, 4, join, K, prime, True, False, bot)
        done_d = False
        done_e = False
        for g in range(NG):
            for i in range(A):
                if not gmem[g, i]:
                    continue
                for p in range(NP):
                    for x in range(n):
                        if prime[p, C[g, x]]:
                            if not done_d and not prime[p, K[i, x]]:
                                _set(out, 5, g, i, p, x)
                                done_d = True
                            if not done_e and not prime[p, C[g, K[i, x]]]:
                                _set(out, 6, g, i, p, x)
                                done_e = True
        found = False
        for g in range(NG):
            for h in range(NG):
                if not gsub[g, h]:
                    continue
                for p in range(NP):
                    for x in range(n):
                        if prime[p, C[g, x]] and not prime[p, C[h, x]]:
                            _set(out, 7, g, h, p, x)
                            found = True
                            break
                    if found:
                        break
                if found:
                    break
            if found:
                break
        _prime_split(out, 8, join, C, prime, False, True, bot)
        found = False
        for g in range(NG):
            for p in range(NP):
                for x in range(n):
                    if prime[p, C[g, x]] and not prime[p, C[g, C[g, x]]]:
                        _set(out, 9, g, p, x, -1)
                        found = True
                        break
                if found:
                    break
            if found:
                break
        found = False
        for i in range(A):
            for p in range(NP):
                for x in range(n):
                    if prime[p, x] and not prime[p, K[i, x]]:
                        _set(out, 10, i, p, x, -1)
                        found = True
                        break
                if found:
                    break
            if found:
                break
        return out


def thm870_kernel(*args):
    if HAVE_NUMBA:
        return thm870_numba(*args)
    return thm870_numpy(*args)


def def810_kernel(*args):
    if HAVE_NUMBA:
        return def810_numba(*args)
    return def810_numpy(*args)
