"""Compiled residue-collision scan behind the exhaustive search."""

import numpy as np
from numba import njit


@njit(cache=True)
def scan_moduli(E, key, flag, need_flag, bounds, n_lo, n_hi):
    """Smallest n in [n_lo, n_hi] and lexicographically first z in {0..n-1}^d.

    Rows of ``E`` are sorted by the index of their last nonzero coordinate;
    ``bounds[j + 1]`` counts the rows whose last nonzero coordinate is <= j
    (``bounds[0]`` counts zero rows). A residue bucket is rejected once it
    holds two distinct ``key`` values and, when ``need_flag`` is set, at least
    one flagged row. Prefixes failing on their own rows are pruned, which
    leaves the lexicographic order of the survivors intact.

    Returns (n, z) or (-1, empty) when nothing in range works.
    """
    m, d = E.shape
    z = np.zeros(d, np.int64)
    pre = np.zeros(m, np.int64)
    val = np.zeros(m, np.int64)
    size = n_hi + 1
    stamp = np.zeros(size, np.int64)
    first = np.zeros(size, np.int64)
    multi = np.zeros(size, np.bool_)
    hasid = np.zeros(size, np.bool_)
    cur = 0
    for n in range(n_lo, n_hi + 1):
        for e in range(m):
            pre[e] = 0
            val[e] = 0
        z[:] = 0
        j = 0
        while True:
            if z[j] >= n:
                j -= 1
                if j < 0:
                    break
                z[j] += 1
                continue
            zeta = z[j]
            for e in range(bounds[j], bounds[j + 1]):
                val[e] = (pre[e] + E[e, j] * zeta) % n
            cur += 1
            ok = True
            for e in range(bounds[j + 1]):
                r = val[e]
                if stamp[r] != cur:
                    stamp[r] = cur
                    first[r] = key[e]
                    multi[r] = False
                    hasid[r] = flag[e]
                else:
                    if key[e] != first[r]:
                        multi[r] = True
                    if flag[e]:
                        hasid[r] = True
                if multi[r] and (hasid[r] or not need_flag):
                    ok = False
                    break
            if ok:
                if j == d - 1:
                    return n, z.copy()
                j += 1
                z[j] = 0
                for e in range(bounds[j], bounds[j + 1]):
                    s = 0
                    for i in range(j):
                        s += E[e, i] * z[i]
                    pre[e] = s
            else:
                z[j] += 1
    return -1, np.zeros(0, np.int64)
