"""Independent reference implementations used to derive and freeze test values.

Nothing here imports the package's admissibility or search code; sets are
passed in as plain lists of tuples.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np


def flips(k):
    out = []
    for signs in itertools.product((1, -1), repeat=len(k)):
        h = tuple(s * x for s, x in zip(signs, k))
        if h not in out:
            out.append(h)
    return out


def brute_mirror(members):
    return {h for k in members for h in flips(k)}


def brute_is_lower(members):
    ms = {tuple(m) for m in members}
    for k in ms:
        if any(x < 0 for x in k):
            return False
        for h in itertools.product(*(range(x + 1) for x in k)):
            if h not in ms:
                return False
    return True


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def brute_admissible(members, n, z, plan):
    """Pairwise evaluation of the defining congruences."""
    members = [tuple(m) for m in members]
    if plan == "0":
        return all(_dot(h, z) % n for k in members for h in flips(k) if any(h))
    if plan == "A":
        M = sorted(brute_mirror(members))
        return all((_dot(a, z) - _dot(b, z)) % n for a, b in itertools.combinations(M, 2))
    for h in members:
        for sh in flips(h):
            for hp in members:
                excluded = (sh == hp) if plan == "B" else (h == hp)
                if not excluded and (_dot(sh, z) - _dot(hp, z)) % n == 0:
                    return False
    return True


def brute_search(members, plan, n_lo, n_hi):
    d = len(members[0])
    for n in range(n_lo, n_hi + 1):
        for z in itertools.product(range(n), repeat=d):
            if brute_admissible(members, n, z, plan):
                return n, z
    return None


def brute_simplex_card(w, N):
    """N smallest <h, w> over a generous box, ties by lex order."""
    w = [Fraction(x) for x in w]
    top = int(max(N, 4))
    box = itertools.product(*(range(int(top / (wi / min(w))) + 2) for wi in w))
    pts = sorted(box, key=lambda h: (sum(a * b for a, b in zip(w, h)), h))
    return sorted(pts[:N])


def brute_mirror_simplex_card(d, k):
    return len(brute_mirror([h for h in itertools.product(range(k + 1), repeat=d) if sum(h) <= k]))


def brute_primes_upto(m):
    sieve = np.ones(m + 1, dtype=bool)
    sieve[:2] = False
    for i in range(2, int(m**0.5) + 1):
        if sieve[i]:
            sieve[i * i::i] = False
    return [int(p) for p in np.nonzero(sieve)[0]]


# --- vectorised existence check in d = 3 --------------------------------------------

def _plan_arrays(members, plan):
    members = [tuple(m) for m in members]
    if plan == "C":
        rows, owner, ident = [], [], []
        for o, k in enumerate(members):
            for i, h in enumerate(flips(k)):
                rows.append(h)
                owner.append(o)
                ident.append(i == 0)
        return np.array(rows, np.int64), np.array(owner), np.array(ident)
    M = sorted(brute_mirror(members))
    mem = set(members)
    flag = np.array([h in mem for h in M])
    return np.array(M, np.int64), np.arange(len(M)), flag


def _violations(R, n, plan, owner, flag):
    """Boolean per column of residues R (rows x cols): does the plan fail?"""
    rows, cols = R.shape
    flat = (R + (np.arange(cols) * n)[None, :]).ravel()
    counts = np.bincount(flat, minlength=cols * n).reshape(cols, n)
    colidx = np.broadcast_to(np.arange(cols)[None, :], R.shape)
    cnt = counts[colidx, R]
    if plan == "A":
        return (cnt >= 2).any(axis=0)
    if plan == "B":
        return (cnt[flag] >= 2).any(axis=0)
    # plan C: identity bucket holding more entries than its own flips
    ids = np.nonzero(flag)[0]
    id_of = ids[np.searchsorted(ids, np.arange(rows), side="right") - 1]
    same = R == R[id_of]
    own = np.zeros((len(ids), cols), np.int64)
    np.add.at(own, np.searchsorted(ids, id_of), same.astype(np.int64))
    return (cnt[ids] > own).any(axis=0)


def exists_z3(members, n, plan):
    """First z in lex order for d = 3 at modulus n, or None.

    Pairs (z1, z2) are filtered on the members with last coordinate 0,
    then all z3 are tested at once.
    """
    E, owner, flag = _plan_arrays(members, plan)
    sub = E[:, 2] == 0
    E2, f2 = E[sub], flag[sub]
    o2 = owner[sub]
    z3 = np.arange(n)
    for z1 in range(n):
        a2 = E2[:, 0] * z1
        R2 = (a2[:, None] + E2[:, 1][:, None] * np.arange(n)[None, :]) % n
        ok2 = ~_violations(R2, n, plan, o2, f2)
        for z2 in np.nonzero(ok2)[0]:
            base = E[:, 0] * z1 + E[:, 1] * z2
            R = (base[:, None] + E[:, 2][:, None] * z3[None, :]) % n
            bad = _violations(R, n, plan, owner, flag)
            if not bad.all():
                return (z1, int(z2), int(np.argmin(bad)))
    return None
