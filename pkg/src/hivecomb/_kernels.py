"""Interior-entry DFS kernels for lattice hive counting.

Two interchangeable implementations: a numba-compiled depth-first scan and a
pure-numpy frontier expansion.  HIVECOMB_NO_NUMBA=1 forces the numpy path;
otherwise numba is used whenever it imports cleanly.  Both consume the same
constraint schedule: per interior entry, CSR lists of bound triples
(a, b, c) meaning entry >= E[a]+E[b]-E[c] (lower) or <= E[a]+E[b]-E[c]
(upper), with all referenced slots filled earlier in the scan.
"""

import os

import numpy as np

_FORCED_OFF = os.environ.get("HIVECOMB_NO_NUMBA", "").lower() in ("1", "true", "yes")

HAVE_NUMBA = False
if not _FORCED_OFF:
    try:
        from numba import njit
        HAVE_NUMBA = True
    except ImportError:
        pass


def _count_py(entries, iidx, lo_ptr, lo_abc, up_ptr, up_abc, exists_only):
    K = iidx.shape[0]
    if K == 0:
        return 1
    hi = np.empty(K, np.int64)
    val = np.empty(K, np.int64)
    count = 0
    k = 0
    descend = True
    while k >= 0:
        if descend:
            l = -(1 << 62)
            h = 1 << 62
            for t in range(lo_ptr[k], lo_ptr[k + 1]):
                b = entries[lo_abc[t, 0]] + entries[lo_abc[t, 1]] - entries[lo_abc[t, 2]]
                if b > l:
                    l = b
            for t in range(up_ptr[k], up_ptr[k + 1]):
                b = entries[up_abc[t, 0]] + entries[up_abc[t, 1]] - entries[up_abc[t, 2]]
                if b < h:
                    h = b
            hi[k] = h
            val[k] = l
        else:
            val[k] += 1
        if val[k] > hi[k]:
            k -= 1
            descend = False
            continue
        entries[iidx[k]] = val[k]
        if k == K - 1:
            count += 1
            if exists_only:
                return 1
            descend = False
        else:
            k += 1
            descend = True
    return count


if HAVE_NUMBA:
    _count_njit = njit(cache=True)(_count_py)
else:
    _count_njit = None


def count_numpy(entries, iidx, lo_ptr, lo_abc, up_ptr, up_abc, exists_only=False):
    """Frontier expansion: one layer of partial assignments per interior entry.

    Width is bounded by the running count, which stays desk-scale for the
    boundaries this package targets.
    """
    K = iidx.shape[0]
    if K == 0:
        return 1
    frontier = entries[np.newaxis, :].copy()
    for k in range(K):
        lo = np.full(frontier.shape[0], -(1 << 62), np.int64)
        for t in range(lo_ptr[k], lo_ptr[k + 1]):
            b = frontier[:, lo_abc[t, 0]] + frontier[:, lo_abc[t, 1]] - frontier[:, lo_abc[t, 2]]
            np.maximum(lo, b, out=lo)
        hi = np.full(frontier.shape[0], 1 << 62, np.int64)
        for t in range(up_ptr[k], up_ptr[k + 1]):
            b = frontier[:, up_abc[t, 0]] + frontier[:, up_abc[t, 1]] - frontier[:, up_abc[t, 2]]
            np.minimum(hi, b, out=hi)
        width = np.clip(hi - lo + 1, 0, None)
        total = int(width.sum())
        if total == 0:
            return 0
        rows = np.repeat(np.arange(frontier.shape[0]), width)
        offs = np.arange(total) - np.repeat(np.cumsum(width) - width, width)
        frontier = frontier[rows]
        frontier[:, iidx[k]] = np.repeat(lo, width) + offs
    return frontier.shape[0]


def count_numba(entries, iidx, lo_ptr, lo_abc, up_ptr, up_abc, exists_only=False):
    return int(_count_njit(entries, iidx, lo_ptr, lo_abc, up_ptr, up_abc, exists_only))


def count_assignments(entries, iidx, lo_ptr, lo_abc, up_ptr, up_abc, exists_only=False):
    if HAVE_NUMBA:
        return count_numba(entries, iidx, lo_ptr, lo_abc, up_ptr, up_abc, exists_only)
    return count_numpy(entries, iidx, lo_ptr, lo_abc, up_ptr, up_abc, exists_only)


def _vertex_scan_py(coefs, consts, sub_rows, sub_adj, sub_det):
    """Index of the first stored subset giving a feasible nonintegral point.

    Rows read coef.x + const >= 0.  For subset s with row list R, the unique
    solution of coef[R].x = -const[R] is x = (adj @ -const[R]) / det with
    det > 0, so x is integral iff det divides every numerator.  Only subsets
    with det >= 2 are stored; everything stays well inside int64.  Returns -1
    when no stored subset yields a feasible nonintegral solution.
    """
    S = sub_rows.shape[0]
    m = coefs.shape[0]
    k = coefs.shape[1]
    numer = np.empty(k, np.int64)
    for s in range(S):
        det = sub_det[s]
        nonint = False
        for i in range(k):
            acc = np.int64(0)
            for j in range(k):
                acc -= sub_adj[s, i, j] * consts[sub_rows[s, j]]
            numer[i] = acc
            if acc % det != 0:
                nonint = True
        if not nonint:
            continue
        feasible = True
        for r in range(m):
            acc = consts[r] * det
            for i in range(k):
                acc += coefs[r, i] * numer[i]
            if acc < 0:
                feasible = False
                break
        if feasible:
            return s
    return -1


if HAVE_NUMBA:
    _vertex_scan_njit = njit(cache=True)(_vertex_scan_py)
else:
    _vertex_scan_njit = None


def vertex_scan_numpy(coefs, consts, sub_rows, sub_adj, sub_det, chunk=1 << 14):
    """Batched variant of the subset scan, chunked to bound memory."""
    S = sub_rows.shape[0]
    for lo in range(0, S, chunk):
        rows = sub_rows[lo:lo + chunk]
        adj = sub_adj[lo:lo + chunk].astype(np.int64)
        det = sub_det[lo:lo + chunk]
        numer = np.einsum("sij,sj->si", adj, -consts[rows])
        cand = np.nonzero((numer % det[:, None] != 0).any(axis=1))[0]
        if cand.size == 0:
            continue
        vals = numer[cand] @ coefs.T + np.outer(det[cand], consts)
        hits = cand[(vals >= 0).all(axis=1)]
        if hits.size:
            return lo + int(hits[0])
    return -1


def vertex_scan_numba(coefs, consts, sub_rows, sub_adj, sub_det):
    return int(_vertex_scan_njit(coefs, consts, sub_rows, sub_adj, sub_det))


def vertex_scan(coefs, consts, sub_rows, sub_adj, sub_det):
    if HAVE_NUMBA:
        return vertex_scan_numba(coefs, consts, sub_rows, sub_adj, sub_det)
    return vertex_scan_numpy(coefs, consts, sub_rows, sub_adj, sub_det)
