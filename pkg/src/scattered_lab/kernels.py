"""Hot inner loops in the discrete-log domain.

Every kernel works on int64 arrays of discrete logarithms base the field's
primitive element, with ``-1`` standing for zero.  Addition uses the Zech
table ``zech[k] = log(1 + g^k)``; negation adds ``negshift`` (``N/2`` in odd
characteristic, ``0`` in characteristic 2).

Each public kernel has a numba implementation and a vectorized numpy
implementation with identical results; which one runs is decided by
:data:`scattered_lab._accel.HAS_NUMBA`.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

import numpy as np

from ._accel import HAS_NUMBA, njit

ZERO = -1


# ---------------------------------------------------------------------------
# vectorized numpy helpers (always available)
# ---------------------------------------------------------------------------

def ladd(a, b, zech, N):
    """Elementwise sum of two log arrays."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    a, b = np.broadcast_arrays(a, b)
    out = np.where(a < 0, b, a)
    both = (a >= 0) & (b >= 0)
    if both.any():
        aa = a[both]
        z = zech[(b[both] - aa) % N]
        out[both] = np.where(z < 0, ZERO, (aa + z) % N)
    return out


def lmul(a, b, N):
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    return np.where((a < 0) | (b < 0), ZERO, (a + b) % N)


def lneg(a, negshift, N):
    a = np.asarray(a, dtype=np.int64)
    return np.where(a < 0, ZERO, (a + negshift) % N)


# ---------------------------------------------------------------------------
# scalar helpers for the jitted kernels
# ---------------------------------------------------------------------------

@njit(cache=True, inline="always")
def _add(a, b, zech, N):
    if a < 0:
        return b
    if b < 0:
        return a
    z = zech[(b - a) % N]
    if z < 0:
        return -1
    return (a + z) % N


@njit(cache=True, inline="always")
def _mul(a, b, N):
    if a < 0 or b < 0:
        return -1
    return (a + b) % N


@njit(cache=True, inline="always")
def _neg(a, negshift, N):
    if a < 0:
        return -1
    return (a + negshift) % N


# ---------------------------------------------------------------------------
# q-polynomial evaluation
# ---------------------------------------------------------------------------

@njit(cache=True, nogil=True)
def _eval_nb(coef, qpow, xs, zech, N):
    out = np.empty(xs.shape[0], dtype=np.int64)
    n = coef.shape[0]
    for t in range(xs.shape[0]):
        x = xs[t]
        acc = -1
        if x >= 0:
            for i in range(n):
                if coef[i] >= 0:
                    acc = _add(acc, (coef[i] + qpow[i] * x) % N, zech, N)
        out[t] = acc
    return out


def _eval_np(coef, qpow, xs, zech, N):
    acc = np.full(xs.shape[0], ZERO, dtype=np.int64)
    live = xs >= 0
    xl = xs[live]
    sub = acc[live]
    for i in range(coef.shape[0]):
        if coef[i] >= 0:
            sub = ladd(sub, (coef[i] + qpow[i] * xl) % N, zech, N)
    acc[live] = sub
    return acc


def eval_qpoly(coef, qpow, xs, zech, N):
    """Evaluate ``sum coef[i] * x^(q^i)`` at every log in ``xs``.

    ``qpow[i]`` must hold ``q^i mod N``.
    """
    coef = np.ascontiguousarray(coef, dtype=np.int64)
    xs = np.ascontiguousarray(xs, dtype=np.int64)
    qpow = np.ascontiguousarray(qpow, dtype=np.int64)
    if HAS_NUMBA:
        return _eval_nb(coef, qpow, xs, zech, N)
    return _eval_np(coef, qpow, xs, zech, N)


# ---------------------------------------------------------------------------
# batched rank / determinant
# ---------------------------------------------------------------------------

@njit(cache=True, nogil=True)
def _rank_det_nb(mats, zech, N, negshift):
    nb, R, C = mats.shape
    ranks = np.empty(nb, dtype=np.int64)
    dets = np.empty(nb, dtype=np.int64)
    M = np.empty((R, C), dtype=np.int64)
    for b in range(nb):
        for i in range(R):
            for j in range(C):
                M[i, j] = mats[b, i, j]
        r = 0
        det = 0
        swaps = 0
        for c in range(C):
            if r == R:
                break
            piv = -1
            for i in range(r, R):
                if M[i, c] >= 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for j in range(C):
                    tmp = M[piv, j]
                    M[piv, j] = M[r, j]
                    M[r, j] = tmp
                swaps += 1
            pinv = (N - M[r, c]) % N
            for i in range(r + 1, R):
                if M[i, c] >= 0:
                    nf = (M[i, c] + pinv + negshift) % N
                    for j in range(c, C):
                        if M[r, j] >= 0:
                            M[i, j] = _add(M[i, j], (nf + M[r, j]) % N, zech, N)
            det = (det + M[r, c]) % N
            r += 1
        ranks[b] = r
        if r == R and R == C:
            dets[b] = (det + negshift * (swaps % 2)) % N
        else:
            dets[b] = -1
    return ranks, dets


def _rank_det_np(mats, zech, N, negshift):
    M = np.array(mats, dtype=np.int64, copy=True)
    nb, R, C = M.shape
    r = np.zeros(nb, dtype=np.int64)
    det = np.zeros(nb, dtype=np.int64)
    swaps = np.zeros(nb, dtype=np.int64)
    rows = np.arange(R)
    bidx = np.arange(nb)
    for c in range(C):
        cand = (M[:, :, c] >= 0) & (rows[None, :] >= r[:, None])
        has = cand.any(axis=1)
        if not has.any():
            continue
        piv = np.argmax(cand, axis=1)
        hb = bidx[has]
        pr = piv[has]
        rr = r[has]
        sw = pr != rr
        if sw.any():
            b2, p2, r2 = hb[sw], pr[sw], rr[sw]
            tmp = M[b2, p2, :].copy()
            M[b2, p2, :] = M[b2, r2, :]
            M[b2, r2, :] = tmp
            swaps[b2] += 1
        prow = M[hb, rr, :]
        pval = prow[:, c]
        det[hb] = (det[hb] + pval) % N
        pinv = (N - pval) % N
        sub = M[hb]
        fcol = sub[:, :, c]
        act = (rows[None, :] > rr[:, None]) & (fcol >= 0)
        if act.any():
            nf = np.where(act, (fcol + pinv[:, None] + negshift) % N, ZERO)
            t = lmul(nf[:, :, None], prow[:, None, :], N)
            sub = np.where(act[:, :, None], ladd(sub, t, zech, N), sub)
            M[hb] = sub
        r[hb] += 1
    full = (r == R) & (R == C)
    dets = np.where(full, (det + negshift * (swaps % 2)) % N, ZERO)
    return r, dets


def rank_det(mats, zech, N, negshift, threads=1, chunk=16384):
    """Ranks and log-determinants of a batch of log matrices ``(B, R, C)``.

    Determinants are ``-1`` (zero) for singular or non-square matrices.
    """
    mats = np.ascontiguousarray(mats, dtype=np.int64)
    fn = _rank_det_nb if HAS_NUMBA else _rank_det_np
    nb = mats.shape[0]
    if nb <= chunk:
        return fn(mats, zech, N, negshift)
    pieces = [(lo, min(lo + chunk, nb)) for lo in range(0, nb, chunk)]

    def work(rng):
        return fn(mats[rng[0]:rng[1]], zech, N, negshift)

    with ThreadPoolExecutor(max_workers=max(1, threads)) as ex:
        parts = list(ex.map(work, pieces))
    return (np.concatenate([p[0] for p in parts]), np.concatenate([p[1] for p in parts]))


# ---------------------------------------------------------------------------
# (A, B) pair scan for GL / Gamma-L equivalence
# ---------------------------------------------------------------------------
#
# Row index ``i`` of ``u``/``v`` encodes the element with log ``i - 1``
# (row 0 is zero).  A candidate pair (A, B) is accepted iff
#   u[A] + v[B] = C*e_0 + D*s   for some C, D,  and  A*D - B*C != 0.
# ``k0`` lists the positions k != 0 where s_k = 0 (those coordinates must
# cancel); ``sk`` lists the positions k != 0 where s_k != 0 (they fix D).


@njit(cache=True, nogil=True)
def _pair_scan_nb(u, v, s, k0, sk, a_lo, a_hi, zech, N, negshift, stop_first, out):
    nrows = v.shape[0]
    n = u.shape[1]
    cap = out.shape[0]
    cnt = 0
    negu = np.empty(n, dtype=np.int64)
    for ai in range(a_lo, a_hi):
        for k in range(n):
            negu[k] = _neg(u[ai, k], negshift, N)
        la = ai - 1
        for bi in range(nrows):
            ok = True
            for t in range(k0.shape[0]):
                k = k0[t]
                if v[bi, k] != negu[k]:
                    ok = False
                    break
            if not ok:
                continue
            D = -2
            for t in range(sk.shape[0]):
                k = sk[t]
                w = _add(u[ai, k], v[bi, k], zech, N)
                d = -1
                if w >= 0:
                    d = (w - s[k]) % N
                if D == -2:
                    D = d
                elif D != d:
                    ok = False
                    break
            if not ok:
                continue
            w0 = _add(u[ai, 0], v[bi, 0], zech, N)
            C = _add(w0, _neg(_mul(D, s[0], N), negshift, N), zech, N)
            lb = bi - 1
            det = _add(_mul(la, D, N), _neg(_mul(lb, C, N), negshift, N), zech, N)
            if det < 0:
                continue
            if cnt < cap:
                out[cnt, 0] = ai
                out[cnt, 1] = bi
                out[cnt, 2] = C
                out[cnt, 3] = D
            cnt += 1
            if stop_first:
                return cnt
    return cnt


def _pair_scan_np(u, v, s, k0, sk, a_lo, a_hi, zech, N, negshift, stop_first):
    nrows = v.shape[0]
    a_rows = np.arange(a_lo, a_hi)
    if k0.shape[0]:
        key = v[:, k0[0]]
        order = np.argsort(key, kind="stable")
        skey = key[order]
        target = lneg(u[a_rows, k0[0]], negshift, N)
        lo = np.searchsorted(skey, target, side="left")
        hi = np.searchsorted(skey, target, side="right")
        counts = hi - lo
        ai = np.repeat(a_rows, counts)
        starts = np.repeat(lo - np.concatenate(([0], np.cumsum(counts)[:-1])), counts)
        bi = order[np.arange(ai.shape[0]) + starts]
        for k in k0[1:]:
            keep = v[bi, k] == lneg(u[ai, k], negshift, N)
            ai, bi = ai[keep], bi[keep]
    else:
        ai = np.repeat(a_rows, nrows)
        bi = np.tile(np.arange(nrows), a_rows.shape[0])
    if ai.shape[0] == 0:
        return np.empty((0, 4), dtype=np.int64)
    D = None
    keep = np.ones(ai.shape[0], dtype=bool)
    for k in sk:
        w = ladd(u[ai, k], v[bi, k], zech, N)
        d = np.where(w < 0, ZERO, (w - s[k]) % N)
        if D is None:
            D = d
        else:
            keep &= d == D
    ai, bi, D = ai[keep], bi[keep], D[keep]
    w0 = ladd(u[ai, 0], v[bi, 0], zech, N)
    C = ladd(w0, lneg(lmul(D, s[0], N), negshift, N), zech, N)
    det = ladd(lmul(ai - 1, D, N), lneg(lmul(bi - 1, C, N), negshift, N), zech, N)
    good = det >= 0
    res = np.stack([ai[good], bi[good], C[good], D[good]], axis=1).astype(np.int64)
    # lexicographic (A, B) order, matching the jitted loop
    res = res[np.lexsort((res[:, 1], res[:, 0]))]
    if stop_first:
        res = res[:1]
    return res


def pair_scan(u, v, s, a_lo, a_hi, zech, N, negshift, stop_first=False):
    """Scan rows ``a_lo <= A < a_hi`` against every ``B``.

    Returns an ``(m, 4)`` array of ``(A_row, B_row, log C, log D)`` in
    lexicographic ``(A, B)`` order.
    """
    s = np.ascontiguousarray(s, dtype=np.int64)
    n = s.shape[0]
    k0 = np.array([k for k in range(1, n) if s[k] < 0], dtype=np.int64)
    sk = np.array([k for k in range(1, n) if s[k] >= 0], dtype=np.int64)
    if sk.shape[0] == 0:
        raise ValueError("source polynomial is a scalar map")
    if not HAS_NUMBA:
        # bound the candidate array when no coordinate filters the pairs
        rows = max(1, (1 << 22) // v.shape[0]) if k0.shape[0] == 0 else a_hi - a_lo
        parts = []
        for lo in range(a_lo, a_hi, rows):
            r = _pair_scan_np(u, v, s, k0, sk, lo, min(a_hi, lo + rows), zech, N, negshift, stop_first)
            if r.shape[0]:
                parts.append(r)
                if stop_first:
                    break
        return np.concatenate(parts) if parts else np.empty((0, 4), dtype=np.int64)
    cap = 1024
    while True:
        out = np.empty((cap, 4), dtype=np.int64)
        cnt = _pair_scan_nb(u, v, s, k0, sk, a_lo, a_hi, zech, N, negshift, stop_first, out)
        if cnt <= cap:
            return out[:cnt].copy()
        cap = cnt
