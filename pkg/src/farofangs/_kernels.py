"""Compiled inner loops: packed-column costs, Jonker-Volgenant, exhaustive search.

Everything here works on plain numpy arrays so numba can compile it in
nopython mode. The public modules wrap these with validation.

Matrices are handled column-packed: column ``j`` of an ``n x k`` binary
matrix becomes ``W = ceil(n / 64)`` uint64 words, so a column overlap is a
handful of popcounts.
"""

import numpy as np
from numba import njit

BIG = 1e300
EPS = 1e-9

_M1 = np.uint64(0x5555555555555555)
_M2 = np.uint64(0x3333333333333333)
_M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
_H01 = np.uint64(0x0101010101010101)


@njit(cache=True, nogil=True, inline="always")
def popcount64(x):
    x = x - ((x >> np.uint64(1)) & _M1)
    x = (x & _M2) + ((x >> np.uint64(2)) & _M2)
    x = (x + (x >> np.uint64(4))) & _M4
    return np.int64((x * _H01) >> np.uint64(56))


def n_words(n):
    return max(1, (n + 63) // 64)


@njit(cache=True, nogil=True)
def pack_columns(z, out_words, out_ones):
    """Pack the columns of ``z`` (n x k, uint8) into ``out_words[:k]``."""
    n, k = z.shape
    for j in range(k):
        for w in range(out_words.shape[1]):
            out_words[j, w] = np.uint64(0)
        m = 0
        for r in range(n):
            if z[r, j]:
                out_words[j, r >> 6] |= np.uint64(1) << np.uint64(r & 63)
                m += 1
        out_ones[j] = m


@njit(cache=True, nogil=True, inline="always")
def _entry(xw, xm, kx, i, yw, ym, ky, j, a, b):
    if i < kx:
        if j < ky:
            o = 0
            for w in range(xw.shape[1]):
                o += popcount64(xw[i, w] & yw[j, w])
            return a * (xm[i] - o) + b * (ym[j] - o)
        return a * xm[i]
    if j < ky:
        return b * ym[j]
    return 0.0


@njit(cache=True, nogil=True)
def fill_cost(xw, xm, kx, yw, ym, ky, k, a, b, out):
    """Write the k x k generalized-Hamming cost block into ``out``.

    Columns at or beyond ``kx`` (``ky``) are virtual zero columns.
    """
    for i in range(k):
        for j in range(k):
            out[i, j] = _entry(xw, xm, kx, i, yw, ym, ky, j, a, b)


@njit(cache=True, nogil=True)
def fill_cost_row(xw, xm, kx, i, yw, ym, ky, k, a, b, out):
    for j in range(k):
        out[i, j] = _entry(xw, xm, kx, i, yw, ym, ky, j, a, b)


@njit(cache=True, nogil=True)
def lapjv_core(c, n, x, y, v, d, pred, collist, free, matches):
    """Jonker-Volgenant on the leading ``n x n`` block of ``c``.

    On return ``x[i]`` is the column assigned to row ``i`` and ``y`` is its
    inverse. Returns the total cost summed in row order.
    """
    if n == 0:
        return 0.0
    if n == 1:
        x[0] = 0
        y[0] = 0
        return c[0, 0]

    for i in range(n):
        x[i] = -1
        matches[i] = 0

    # column reduction
    for j in range(n - 1, -1, -1):
        imin = 0
        cmin = c[0, j]
        for i in range(1, n):
            if c[i, j] < cmin:
                cmin = c[i, j]
                imin = i
        v[j] = cmin
        matches[imin] += 1
        if matches[imin] == 1:
            x[imin] = j
            y[j] = imin
        else:
            y[j] = -1

    # reduction transfer
    numfree = 0
    for i in range(n):
        if matches[i] == 0:
            free[numfree] = i
            numfree += 1
        elif matches[i] == 1:
            j1 = x[i]
            hmin = BIG
            for j in range(n):
                if j != j1:
                    h = c[i, j] - v[j]
                    if h < hmin:
                        hmin = h
            v[j1] -= hmin

    # augmenting row reduction, two passes
    for _ in range(2):
        k = 0
        prvnumfree = numfree
        numfree = 0
        while k < prvnumfree:
            i = free[k]
            k += 1
            umin = c[i, 0] - v[0]
            j1 = 0
            j2 = -1
            usubmin = BIG
            for j in range(1, n):
                h = c[i, j] - v[j]
                if h < usubmin:
                    if h >= umin:
                        usubmin = h
                        j2 = j
                    else:
                        usubmin = umin
                        umin = h
                        j2 = j1
                        j1 = j
            i0 = y[j1]
            strict = usubmin - umin > EPS
            if strict:
                v[j1] -= usubmin - umin
            elif i0 >= 0:
                j1 = j2
                i0 = y[j2]
            x[i] = j1
            y[j1] = i
            if i0 >= 0:
                x[i0] = -1
                if strict:
                    k -= 1
                    free[k] = i0
                else:
                    free[numfree] = i0
                    numfree += 1

    # shortest augmenting paths
    for f in range(numfree):
        freerow = free[f]
        for j in range(n):
            d[j] = c[freerow, j] - v[j]
            pred[j] = freerow
            collist[j] = j
        low = 0
        up = 0
        last = 0
        dmin = 0.0
        endofpath = -1
        found = False
        while not found:
            if up == low:
                last = low - 1
                dmin = d[collist[up]]
                up += 1
                for kk in range(up, n):
                    j = collist[kk]
                    h = d[j]
                    if h <= dmin:
                        if h < dmin:
                            up = low
                            dmin = h
                        collist[kk] = collist[up]
                        collist[up] = j
                        up += 1
                for kk in range(low, up):
                    if y[collist[kk]] < 0:
                        endofpath = collist[kk]
                        found = True
                        break
            if not found:
                j1 = collist[low]
                low += 1
                i = y[j1]
                h = c[i, j1] - v[j1] - dmin
                for kk in range(up, n):
                    j = collist[kk]
                    v2 = c[i, j] - v[j] - h
                    if v2 < d[j]:
                        pred[j] = i
                        if v2 == dmin:
                            if y[j] < 0:
                                endofpath = j
                                found = True
                                break
                            collist[kk] = collist[up]
                            collist[up] = j
                            up += 1
                        d[j] = v2
        for kk in range(last + 1):
            j1 = collist[kk]
            v[j1] += d[j1] - dmin
        while True:
            i = pred[endofpath]
            y[endofpath] = i
            j1 = endofpath
            endofpath = x[i]
            x[i] = j1
            if i == freerow:
                break

    total = 0.0
    for i in range(n):
        total += c[i, x[i]]
    return total


@njit(cache=True, nogil=True)
def lapjv(c):
    n = c.shape[0]
    x = np.empty(n, np.int64)
    y = np.empty(n, np.int64)
    v = np.empty(n, np.float64)
    d = np.empty(n, np.float64)
    pred = np.empty(n, np.int64)
    collist = np.empty(n, np.int64)
    free = np.empty(n, np.int64)
    matches = np.empty(n, np.int64)
    total = lapjv_core(c, n, x, y, v, d, pred, collist, free, matches)
    return x, total


@njit(cache=True, nogil=True)
def brute_force(c):
    """Exhaustive minimum over all permutations, visited in lexicographic order.

    The first permutation reaching the minimum wins ties.
    """
    n = c.shape[0]
    perm = np.arange(n)
    best = perm.copy()
    best_cost = 0.0
    for i in range(n):
        best_cost += c[i, i]
    if n <= 1:
        return best, best_cost
    while True:
        # next lexicographic permutation
        i = n - 2
        while i >= 0 and perm[i] >= perm[i + 1]:
            i -= 1
        if i < 0:
            break
        j = n - 1
        while perm[j] <= perm[i]:
            j -= 1
        perm[i], perm[j] = perm[j], perm[i]
        lo = i + 1
        hi = n - 1
        while lo < hi:
            perm[lo], perm[hi] = perm[hi], perm[lo]
            lo += 1
            hi -= 1
        total = 0.0
        for r in range(n):
            total += c[r, perm[r]]
        if total < best_cost:
            best_cost = total
            best[:] = perm
    return best, best_cost


@njit(cache=True, nogil=True)
def _scratch(kmax):
    return (
        np.empty(kmax, np.int64),
        np.empty(kmax, np.int64),
        np.empty(kmax, np.float64),
        np.empty(kmax, np.float64),
        np.empty(kmax, np.int64),
        np.empty(kmax, np.int64),
        np.empty(kmax, np.int64),
        np.empty(kmax, np.int64),
    )


@njit(cache=True, nogil=True)
def loss_sum(xw, xm, kx, sw, sm, sk, a, b):
    """Sum over samples (ascending index) of the FARO loss of x against each.

    ``sw``/``sm``/``sk`` are the stacked packed columns, column ones-counts and
    widths of the samples. Each pair is augmented to ``max(kx, sk[s])``.
    """
    kmax = max(kx, sw.shape[1])
    c = np.empty((kmax, kmax), np.float64)
    x, y, v, d, pred, collist, free, matches = _scratch(kmax)
    total = 0.0
    for s in range(sw.shape[0]):
        k = max(kx, sk[s])
        fill_cost(xw, xm, kx, sw[s], sm[s], sk[s], k, a, b, c)
        total += lapjv_core(c, k, x, y, v, d, pred, collist, free, matches)
    return total


@njit(cache=True, nogil=True)
def loss_sums_many(cw, cm, ck, sw, sm, sk, a, b, lo, hi, out):
    """``out[t] = loss_sum(candidate t, samples)`` for t in [lo, hi)."""
    for t in range(lo, hi):
        out[t] = loss_sum(cw[t], cm[t], ck[t], sw, sm, sk, a, b)


@njit(cache=True, nogil=True)
def align_counts(bw, bm, kb, sw, sm, dense, a, b):
    """Align every sample to a baseline and count ones per aligned cell.

    Samples sit in the first (estimate) slot of the cost, the baseline in the
    second. ``dense`` is the stacked (B, n, K) uint8 sample array and every
    sample is treated as exactly K columns wide.
    """
    nb, n, kmax = dense.shape
    k = kmax
    c = np.empty((k, k), np.float64)
    x, y, v, d, pred, collist, free, matches = _scratch(k)
    counts = np.zeros((n, k), np.int64)
    for s in range(nb):
        fill_cost(sw[s], sm[s], k, bw, bm, kb, k, a, b, c)
        lapjv_core(c, k, x, y, v, d, pred, collist, free, matches)
        for i in range(k):
            j = x[i]
            for r in range(n):
                counts[r, j] += dense[s, r, i]
    return counts


@njit(cache=True, nogil=True)
def sweeten_chain(z, sw, sm, sk, a, b, cells, trace_iter, trace_loss):
    """Greedy single-cell flips of ``z`` (modified in place).

    ``cells`` holds the pre-drawn flat cell index for each proposal. A flip
    is kept iff the summed loss strictly drops. Returns (final summed loss,
    number of accepted flips); accepted flips are logged into the trace
    arrays as (iteration, summed loss).
    """
    n, kz = z.shape
    nb = sw.shape[0]
    words = sw.shape[2]
    zw = np.zeros((max(kz, 1), words), np.uint64)
    zm = np.zeros(max(kz, 1), np.int64)
    pack_columns(z, zw, zm)
    kmax = max(kz, sw.shape[1])
    costs = np.empty((nb, kmax, kmax), np.float64)
    saved = np.empty((nb, kmax), np.float64)
    losses = np.empty(nb, np.float64)
    newloss = np.empty(nb, np.float64)
    x, y, v, d, pred, collist, free, matches = _scratch(kmax)

    current = 0.0
    for s in range(nb):
        k = max(kz, sk[s])
        fill_cost(zw, zm, kz, sw[s], sm[s], sk[s], k, a, b, costs[s])
        losses[s] = lapjv_core(costs[s], k, x, y, v, d, pred, collist, free, matches)
        current += losses[s]

    accepted = 0
    for it in range(cells.shape[0]):
        cell = cells[it]
        r = cell // kz
        col = cell % kz
        bit = np.uint64(1) << np.uint64(r & 63)
        zw[col, r >> 6] ^= bit
        if z[r, col]:
            zm[col] -= 1
        else:
            zm[col] += 1

        total = 0.0
        touched = 0
        rejected = False
        for s in range(nb):
            k = max(kz, sk[s])
            for j in range(k):
                saved[s, j] = costs[s, col, j]
            fill_cost_row(zw, zm, kz, col, sw[s], sm[s], sk[s], k, a, b, costs[s])
            touched = s + 1
            newloss[s] = lapjv_core(costs[s], k, x, y, v, d, pred, collist, free, matches)
            total += newloss[s]
            # losses are nonnegative, so the partial sum only grows
            if total >= current:
                rejected = True
                break

        if not rejected and total < current:
            z[r, col] = 1 - z[r, col]
            current = total
            for s in range(nb):
                losses[s] = newloss[s]
            trace_iter[accepted] = it
            trace_loss[accepted] = total
            accepted += 1
        else:
            zw[col, r >> 6] ^= bit
            if z[r, col]:
                zm[col] += 1
            else:
                zm[col] -= 1
            for s in range(touched):
                k = max(kz, sk[s])
                for j in range(k):
                    costs[s, col, j] = saved[s, j]
    return current, accepted
