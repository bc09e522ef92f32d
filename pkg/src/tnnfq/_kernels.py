"""Hot loops: the pruned RREF enumerator and batched sign variation.

Every kernel is written in the numba-compatible subset of Python.  With
numba available they are compiled with ``@njit(nogil=True)``; setting the
environment variable ``TNN_DISABLE_NUMBA=1`` (or a missing numba install)
runs the identical code under the interpreter on plain numpy arrays.
"""
from __future__ import annotations

import os

import numpy as np

MODE_ALL = 0
MODE_TNN = 1
MODE_TP = 2

# kernel return status
CAP_EXCEEDED = -1


def _want_numba() -> bool:
    flag = os.environ.get("TNN_DISABLE_NUMBA", "").strip().lower()
    return flag not in ("1", "true", "yes", "on")


USE_NUMBA = False
if _want_numba():
    try:
        import numba

        USE_NUMBA = True
    except ImportError:  # pragma: no cover - numba is an optional accelerator
        USE_NUMBA = False


def jit(fn):
    if USE_NUMBA:
        return numba.njit(nogil=True, cache=True)(fn)
    return fn


BACKEND = "numba" if USE_NUMBA else "python"


@jit
def det_small(m, k, add_t, mul_t, neg_t, inv_t):
    """Determinant of a k x k code matrix by elimination; ``m`` is overwritten."""
    if k == 0:
        return 1
    if k == 1:
        return m[0, 0]
    if k == 2:
        return add_t[mul_t[m[0, 0], m[1, 1]], neg_t[mul_t[m[0, 1], m[1, 0]]]]
    det = 1
    for col in range(k):
        piv = -1
        for row in range(col, k):
            if m[row, col] != 0:
                piv = row
                break
        if piv < 0:
            return 0
        if piv != col:
            for j in range(k):
                tmp = m[col, j]
                m[col, j] = m[piv, j]
                m[piv, j] = tmp
            det = neg_t[det]
        pv = m[col, col]
        det = mul_t[det, pv]
        pinv = inv_t[pv]
        for row in range(col + 1, k):
            f = m[row, col]
            if f != 0:
                f = neg_t[mul_t[f, pinv]]
                for j in range(col, k):
                    m[row, j] = add_t[m[row, j], mul_t[f, m[col, j]]]
    return det


@jit
def enumerate_pivot_set(pivots, k, n, order, add_t, mul_t, neg_t, inv_t, sign_t,
                        mode, subsets, sub_start, cap, out):
    """Depth-first fill of the free columns for one pivot set.

    ``subsets[sub_start[c]:sub_start[c + 1]]`` lists the column index sets
    (ascending, last entry ``c``) whose minors become final once column ``c``
    is placed.  A branch is cut as soon as one of them violates ``mode``.

    Returns ``(count, visited)``; ``count == CAP_EXCEEDED`` when more than
    ``cap`` nodes were visited.  When ``out`` has room, accepted matrices are
    written to ``out[count]`` in enumeration order.
    """
    q = order.shape[0]
    mat = np.zeros((k, n), dtype=np.int64)
    nfree = np.zeros(n, dtype=np.int64)
    is_piv = np.zeros(n, dtype=np.bool_)
    npiv = 0
    for c in range(n):
        if npiv < k and pivots[npiv] == c:
            is_piv[c] = True
            mat[npiv, c] = 1
            nfree[c] = 0
            npiv += 1
        else:
            nfree[c] = npiv
    digits = np.zeros((n, k), dtype=np.int64)
    work = np.zeros((k, k), dtype=np.int64)
    store = out.shape[0]

    count = 0
    visited = 0
    pos = 0
    fresh = True
    while pos >= 0:
        if pos == n:
            if count < store:
                for i in range(k):
                    for j in range(n):
                        out[count, i, j] = mat[i, j]
            count += 1
            pos -= 1
            fresh = False
            continue
        f = nfree[pos]
        if fresh:
            for i in range(f):
                digits[pos, i] = 0
                mat[i, pos] = order[0]
        else:
            # odometer step, last free row fastest
            i = f - 1
            while i >= 0:
                digits[pos, i] += 1
                if digits[pos, i] < q:
                    mat[i, pos] = order[digits[pos, i]]
                    break
                digits[pos, i] = 0
                mat[i, pos] = order[0]
                i -= 1
            if i < 0:
                # column exhausted; clear it and backtrack
                for r in range(f):
                    mat[r, pos] = 0
                pos -= 1
                fresh = False
                continue
        visited += 1
        if visited > cap:
            return CAP_EXCEEDED, visited
        ok = True
        if mode != MODE_ALL:
            for s in range(sub_start[pos], sub_start[pos + 1]):
                for a in range(k):
                    for b in range(k):
                        work[a, b] = mat[a, subsets[s, b]]
                d = det_small(work, k, add_t, mul_t, neg_t, inv_t)
                sg = sign_t[d]
                if sg < 0 or (mode == MODE_TP and sg == 0):
                    ok = False
                    break
        if ok:
            pos += 1
            fresh = True
        else:
            fresh = False
    return count, visited


@jit
def sign_variation_batch(vectors, sign_t):
    """Sign variation of each row of a 2-D array of codes (zeros skipped)."""
    m = vectors.shape[0]
    out = np.zeros(m, dtype=np.int64)
    for i in range(m):
        last = 0
        v = 0
        for j in range(vectors.shape[1]):
            s = sign_t[vectors[i, j]]
            if s != 0:
                if last != 0 and s != last:
                    v += 1
                last = s
        out[i] = v
    return out
