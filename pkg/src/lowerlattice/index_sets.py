"""
Multi-indices and lower (downward closed) index sets.

Multi-indices are plain tuples of Python ints. ``IndexSet`` is an immutable,
lexicographically sorted container of tuples of a fixed dimension, and
``LowerSet`` adds the downward-closure invariant on top of it.

The module also provides the usual set families (blocks, crosses, weighted
simplexes, hyperbolic crosses), mirroring under sign flips, Minkowski sums,
maximal/extremal elements and the projections used by the dimensionwise
lattice search.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, TextIO

import numpy as np

MultiIndex = tuple[int, ...]

MAX_DIM = 16
MAX_MIRROR = 10**7


class CapacityError(ValueError):
    """Raised when a set exceeds the dimension or cardinality caps."""


def _check_dim(d: int) -> None:
    if d < 1:
        raise ValueError(f"dimension must be >= 1, got {d}")
    if d > MAX_DIM:
        raise CapacityError(f"dimension {d} exceeds the cap of {MAX_DIM}")


def l0(k: Sequence[int]) -> int:
    """Number of nonzero coordinates."""
    return sum(1 for x in k if x != 0)


def support(k: Sequence[int]) -> tuple[int, ...]:
    return tuple(j for j, x in enumerate(k) if x != 0)


class IndexSet:
    """Immutable finite set of integer multi-indices of a common dimension.

    Members are stored sorted in ascending lexicographic order, which is the
    canonical order used for iteration and serialization.
    """

    __slots__ = ("dim", "members", "_lookup")

    def __init__(self, members: Iterable[Sequence[int]], dim: int | None = None):
        uniq = {tuple(int(x) for x in m) for m in members}
        if dim is None:
            if not uniq:
                raise ValueError("cannot infer the dimension of an empty set")
            dim = len(next(iter(uniq)))
        _check_dim(dim)
        for m in uniq:
            if len(m) != dim:
                raise ValueError(f"member {m} does not have dimension {dim}")
        self.dim = dim
        self.members: tuple[MultiIndex, ...] = tuple(sorted(uniq))
        self._lookup = frozenset(uniq)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[MultiIndex]:
        return iter(self.members)

    def __contains__(self, k) -> bool:
        return tuple(k) in self._lookup

    def __eq__(self, other) -> bool:
        if not isinstance(other, IndexSet):
            return NotImplemented
        return self.dim == other.dim and self._lookup == other._lookup

    def __hash__(self) -> int:
        return hash((self.dim, self._lookup))

    def __repr__(self) -> str:
        head = ", ".join(map(str, self.members[:6]))
        tail = ", ..." if len(self) > 6 else ""
        return f"{type(self).__name__}(d={self.dim}, n={len(self)}: {head}{tail})"

    def as_set(self) -> frozenset[MultiIndex]:
        return self._lookup

    def is_nonnegative(self) -> bool:
        return all(x >= 0 for m in self.members for x in m)

    def norm_inf(self) -> int:
        return max((abs(x) for m in self.members for x in m), default=0)

    def to_array(self) -> np.ndarray:
        return np.array(self.members, dtype=np.int64).reshape(len(self), self.dim)


class LowerSet(IndexSet):
    """A finite downward closed subset of N_0^d (always contains 0)."""

    __slots__ = ()

    def __init__(self, members: Iterable[Sequence[int]], dim: int | None = None):
        super().__init__(members, dim)
        if not self.members:
            raise ValueError("a lower set cannot be empty")
        if not is_lower(self.members):
            raise ValueError("index set is not downward closed")


class SimplexSet(LowerSet):
    """Lower set S_{w,u} = {h : sum_j w_j h_j <= u}, remembering (w, u)."""

    __slots__ = ("weights", "u")

    def __init__(self, members, weights: tuple[Fraction, ...], u: Fraction):
        super().__init__(members, len(weights))
        self.weights = weights
        self.u = u

    def weighted_norm(self, h: Sequence[int]) -> Fraction:
        return sum((w * abs(x) for w, x in zip(self.weights, h)), Fraction(0))

    @property
    def is_isotropic(self) -> bool:
        return len(set(self.weights)) == 1


def as_lower(s: IndexSet) -> LowerSet:
    """Return ``s`` as a LowerSet, raising ValueError when it is not lower."""
    if isinstance(s, LowerSet):
        return s
    return LowerSet(s.members, s.dim)


# --- predicates ------------------------------------------------------------

def is_lower(s: Iterable[Sequence[int]]) -> bool:
    """Check downward closure via the unit-step characterization.

    Raises ValueError when the members do not share a dimension.
    """
    members = {tuple(m) for m in s}
    dims = {len(m) for m in members}
    if len(dims) > 1:
        raise ValueError(f"members have mixed dimensions {sorted(dims)}")
    for k in members:
        for j, kj in enumerate(k):
            if kj < 0:
                return False
            if kj >= 1 and k[:j] + (kj - 1,) + k[j + 1:] not in members:
                return False
    return True


def is_block(s: IndexSet) -> bool:
    top = tuple(max(c) for c in zip(*s.members))
    return len(s) == math.prod(t + 1 for t in top) and is_lower(s.members)


# --- sign flips and mirroring ------------------------------------------------

def sign_flips(k: Sequence[int]) -> list[MultiIndex]:
    """All 2^{|k|_0} componentwise sign flips of ``k``; identity first."""
    supp = support(k)
    out = []
    for signs in itertools.product((1, -1), repeat=len(supp)):
        h = list(k)
        for j, s in zip(supp, signs):
            h[j] = s * h[j]
        out.append(tuple(h))
    return out


def mirror_cardinality(s: Iterable[Sequence[int]]) -> int:
    return sum(1 << l0(k) for k in s)


def mirror(s: IndexSet) -> IndexSet:
    """Mirrored set M(s): every sign flip of every member."""
    size = mirror_cardinality(s)
    if size > MAX_MIRROR:
        raise CapacityError(f"mirrored set would have {size} points (cap {MAX_MIRROR})")
    return IndexSet((h for k in s for h in sign_flips(k)), s.dim)


def embed_to_sum(h: Sequence[int]) -> MultiIndex:
    """Injective map Z^d -> N_0^d, h_j -> 2|h_j| - [h_j < 0].

    It sends M(L) into L + L for every lower set L.
    """
    return tuple(2 * abs(x) - (1 if x < 0 else 0) for x in h)


# --- sums, projections, special elements ------------------------------------

def sum_sets(a: IndexSet, b: IndexSet) -> IndexSet:
    """Minkowski sum {h + k}. Lower inputs give a LowerSet."""
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    pts = {tuple(x + y for x, y in zip(h, k)) for h in a for k in b}
    if isinstance(a, LowerSet) and isinstance(b, LowerSet):
        return LowerSet(pts, a.dim)
    return IndexSet(pts, a.dim)


def maximal_elements(s: LowerSet) -> list[MultiIndex]:
    out = []
    for k in s:
        if all(k[:j] + (k[j] + 1,) + k[j + 1:] not in s for j in range(s.dim)):
            out.append(k)
    return out


def extremal_elements(s: LowerSet) -> list[MultiIndex]:
    """Members that are not the midpoint of two distinct members.

    Uses the pairwise midpoint scan, skipping any k with k + e_j in the set
    for some j in supp(k) (such k is a midpoint of k +- e_j).
    """
    out = []
    for k in s:
        if any(k[j] > 0 and k[:j] + (k[j] + 1,) + k[j + 1:] in s for j in range(s.dim)):
            continue
        extremal = True
        for h in s:
            if h == k:
                continue
            other = tuple(2 * x - y for x, y in zip(k, h))
            if other in s:
                extremal = False
                break
        if extremal:
            out.append(k)
    return out


def projection(s: LowerSet, j: int) -> LowerSet:
    """Lambda_[j]: the first j coordinates of every member."""
    if not 1 <= j <= s.dim:
        raise ValueError(f"projection index {j} outside 1..{s.dim}")
    if j == s.dim:
        return s
    return LowerSet((k[:j] for k in s), j)


# --- set families ------------------------------------------------------------

def make_block(k: Sequence[int]) -> LowerSet:
    _check_dim(len(k))
    return LowerSet(itertools.product(*(range(x + 1) for x in k)), len(k))


def make_cross(k: Sequence[int]) -> LowerSet:
    d = len(k)
    _check_dim(d)
    pts = {(0,) * d}
    for j, kj in enumerate(k):
        for t in range(1, kj + 1):
            pts.add((0,) * j + (t,) + (0,) * (d - j - 1))
    return LowerSet(pts, d)


def to_fraction(x) -> Fraction:
    """Exact rational from an int, Fraction, decimal string or float.

    Floats go through their shortest repr so 0.9 becomes 9/10.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        return Fraction(repr(x))
    return Fraction(x)


@dataclass(frozen=True)
class Weights:
    """Positive exact weights w (and optionally the radius u) of S_{w,u}."""

    w: tuple[Fraction, ...]
    u: Fraction | None = None

    def __post_init__(self):
        if not self.w:
            raise ValueError("weights must be non-empty")
        if any(x <= 0 for x in self.w):
            raise ValueError("weights must be positive")
        if self.u is not None and self.u <= 0:
            raise ValueError("radius u must be positive")

    @classmethod
    def parse(cls, w, u=None) -> "Weights":
        """Build from a comma separated string or a sequence of numbers."""
        if isinstance(w, str):
            w = [t for t in w.split(",") if t.strip()]
        return cls(tuple(to_fraction(x.strip() if isinstance(x, str) else x) for x in w),
                   None if u is None else to_fraction(u))

    @property
    def dim(self) -> int:
        return len(self.w)

    def dot(self, h: Sequence[int]) -> Fraction:
        return sum((a * b for a, b in zip(self.w, h)), Fraction(0))


def _simplex_points(w: Sequence[Fraction], u: Fraction) -> list[MultiIndex]:
    pts: list[MultiIndex] = []
    d = len(w)

    def rec(j: int, prefix: tuple[int, ...], budget: Fraction) -> None:
        if j == d:
            pts.append(prefix)
            return
        t = 0
        while t * w[j] <= budget:
            rec(j + 1, prefix + (t,), budget - t * w[j])
            t += 1

    rec(0, (), u)
    return pts


def make_simplex(w, u=None) -> SimplexSet:
    """Weighted simplex S_{w,u} with exact rational membership."""
    weights = w if isinstance(w, Weights) else Weights.parse(w, u)
    if u is not None:
        weights = Weights(weights.w, to_fraction(u))
    if weights.u is None:
        raise ValueError("simplex radius u is required")
    _check_dim(weights.dim)
    return SimplexSet(_simplex_points(weights.w, weights.u), weights.w, weights.u)


def make_simplex_iso(d: int, k: int) -> SimplexSet:
    """Isotropic simplex S_{1,k} = {h : |h|_1 <= k}."""
    return make_simplex(Weights((Fraction(1),) * d, Fraction(k)))


def make_simplex_by_cardinality(w, N: int) -> LowerSet:
    """The N indices with smallest <h, w>, ties broken lexicographically."""
    if N < 1:
        raise ValueError("N must be positive")
    weights = w if isinstance(w, Weights) else Weights.parse(w)
    _check_dim(weights.dim)
    u = max(weights.w)
    while True:
        pts = _simplex_points(weights.w, u)
        if len(pts) >= N:
            break
        u *= 2
    pts.sort(key=lambda h: (weights.dot(h), h))
    return LowerSet(pts[:N], weights.dim)


def make_hyperbolic(d: int, N: int) -> LowerSet:
    """Hyperbolic cross {k : prod_j (1 + k_j) <= N}."""
    _check_dim(d)
    if N < 1:
        raise ValueError("N must be >= 1")
    pts: list[MultiIndex] = []

    def rec(prefix: tuple[int, ...], budget: int) -> None:
        if len(prefix) == d:
            pts.append(prefix)
            return
        t = 0
        while t + 1 <= budget:
            rec(prefix + (t,), budget // (t + 1))
            t += 1

    rec((), N)
    return LowerSet(pts, d)


def mirror_simplex_cardinality(d: int, k: int) -> int:
    """#M(S_{1,k}) in dimension d from the dimension recurrence.

    M_1(l) = 2l + 1 and M_{d+1}(l) = M_d(l) + 2 sum_{i<l} M_d(i).
    """
    if d < 1 or k < 0:
        raise ValueError("need d >= 1 and k >= 0")
    limit = 2**63 - 1
    row = [2 * l + 1 for l in range(k + 1)]
    for _ in range(d - 1):
        new, acc = [], 0
        for l in range(k + 1):
            v = row[l] + 2 * acc
            if v > limit:
                raise OverflowError(f"#M(S_k^d) exceeds 64 bits at d={d}, k={k}")
            new.append(v)
            acc += row[l]
        row = new
    return row[k]


# --- enumeration / random sets ----------------------------------------------

def enumerate_lower_sets(d: int, max_size: int) -> list[LowerSet]:
    """All lower sets in N_0^d with at most ``max_size`` elements."""
    start = frozenset({(0,) * d})
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for s in frontier:
            if len(s) == max_size:
                continue
            for k in s:
                for j in range(d):
                    c = k[:j] + (k[j] + 1,) + k[j + 1:]
                    if c in s:
                        continue
                    t = s | {c}
                    if t not in seen and is_lower(t):
                        seen.add(t)
                        nxt.append(t)
        frontier = nxt
    return sorted((LowerSet(s, d) for s in seen), key=lambda s: (len(s), s.members))


def random_lower_set(d: int, size: int, rng: np.random.Generator) -> LowerSet:
    """Grow a random lower set by repeatedly adding an admissible neighbour."""
    members = {(0,) * d}
    while len(members) < size:
        cands = set()
        for k in members:
            for j in range(d):
                c = k[:j] + (k[j] + 1,) + k[j + 1:]
                if c not in members and all(
                    c[:i] + (c[i] - 1,) + c[i + 1:] in members for i in range(d) if c[i] > 0
                ):
                    cands.add(c)
        ordered = sorted(cands)
        members.add(ordered[int(rng.integers(len(ordered)))])
    return LowerSet(members, d)


# --- text format ---------------------------------------------------------------

def format_index_set(s: IndexSet) -> str:
    lines = [f"d {s.dim}"]
    lines += [" ".join(map(str, k)) for k in s]
    return "\n".join(lines) + "\n"


def parse_index_set(text: str) -> IndexSet:
    """Parse the ``d <dim>`` text format; returns a LowerSet when possible."""
    dim = None
    pts = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if dim is None:
            if parts[0] != "d" or len(parts) != 2:
                raise ValueError(f"line {lineno}: expected header 'd <dim>'")
            dim = int(parts[1])
            _check_dim(dim)
            continue
        if len(parts) != dim:
            raise ValueError(f"line {lineno}: expected {dim} integers, got {len(parts)}")
        pts.append(tuple(int(p) for p in parts))
    if dim is None:
        raise ValueError("missing 'd <dim>' header")
    if not pts:
        return IndexSet([], dim)
    if is_lower(pts):
        return LowerSet(pts, dim)
    return IndexSet(pts, dim)


def write_index_set(s: IndexSet, f: TextIO | str) -> None:
    if isinstance(f, str):
        with open(f, "w") as fh:
            fh.write(format_index_set(s))
    else:
        f.write(format_index_set(s))


def read_index_set(f: TextIO | str) -> IndexSet:
    if isinstance(f, str):
        with open(f) as fh:
            return parse_index_set(fh.read())
    return parse_index_set(f.read())
