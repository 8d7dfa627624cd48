"""
Admissibility of rank-1 lattice pairs (n, z) for an index set.

Four plans are supported. Plan 0 asks for exact integration over the
cosine space of the set, plans A, B and C ask for exact reconstruction of the
Chebyshev coefficients with decreasing strictness.

Two independent routes are provided: ``check_direct`` evaluates the defining
congruences over the mirrored set, and the alias-table route
(``table_extend`` / ``check_table``) builds the scalar products one coordinate
at a time the way the dimensionwise searches need them.
"""

from __future__ import annotations

import enum
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from .index_sets import (
    IndexSet,
    LowerSet,
    MultiIndex,
    SimplexSet,
    extremal_elements,
    maximal_elements,
    mirror,
    support,
)

INT64_MAX = 2**63 - 1


class Plan(enum.Enum):
    ZERO = "0"
    A = "A"
    B = "B"
    C = "C"

    @classmethod
    def parse(cls, s) -> "Plan":
        if isinstance(s, Plan):
            return s
        key = str(s).strip().upper()
        if key in ("0", "ZERO", "O"):
            return cls.ZERO
        try:
            return cls(key)
        except ValueError:
            raise ValueError(f"unknown plan {s!r}; expected one of 0, A, B, C") from None

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class LatticeConfig:
    """Modulus ``n`` and generating vector ``z`` of a rank-1 lattice."""

    n: int
    z: tuple[int, ...]

    def __post_init__(self):
        if int(self.n) < 1:
            raise ValueError(f"modulus must be >= 1, got {self.n}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "z", tuple(int(x) for x in self.z))

    @property
    def dim(self) -> int:
        return len(self.z)

    def __str__(self) -> str:
        return " ".join(map(str, (self.n,) + self.z))


def dot(h: Sequence[int], z: Sequence[int]) -> int:
    """Scalar product with every partial result kept inside signed 64 bits."""
    if len(h) != len(z):
        raise ValueError(f"dimension mismatch: {len(h)} vs {len(z)}")
    s = 0
    for a, b in zip(h, z):
        p = a * b
        s += p
        if abs(p) > INT64_MAX or abs(s) > INT64_MAX:
            raise OverflowError(f"scalar product {tuple(h)}.{tuple(z)} leaves 64-bit range")
    return s


def residue(x: int, n: int) -> int:
    if n < 1:
        raise ValueError("modulus must be >= 1")
    return x % n


# --- direct check -------------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    """First offending configuration: sigma(h).z == h_prime.z (mod n).

    For plan 0 ``h_prime`` is None and the congruence is with 0.
    """

    h: MultiIndex
    sigma: tuple[int, ...]
    h_prime: MultiIndex | None
    sigma_prime: tuple[int, ...] | None = None

    def __str__(self) -> str:
        sh = tuple(s * x for s, x in zip(self.sigma, self.h))
        if self.h_prime is None:
            return f"sigma={self.sigma}: {sh}.z = 0 for h={self.h}"
        rhs = self.h_prime
        if self.sigma_prime is not None:
            rhs = tuple(s * x for s, x in zip(self.sigma_prime, self.h_prime))
        return f"h={self.h}, sigma={self.sigma}: {sh}.z = {rhs}.z (h'={self.h_prime})"


def _flips(k: Sequence[int]) -> list[tuple[tuple[int, ...], MultiIndex]]:
    """(sigma, sigma(k)) pairs, identity first; sigma_j = +1 off the support."""
    supp = support(k)
    out = []
    for mask in range(1 << len(supp)):
        sigma = [1] * len(k)
        for b, j in enumerate(supp):
            if mask >> b & 1:
                sigma[j] = -1
        out.append((tuple(sigma), tuple(s * x for s, x in zip(sigma, k))))
    return out


def _validate(s: IndexSet, cfg: LatticeConfig) -> None:
    if cfg.dim != s.dim:
        raise ValueError(f"generating vector has dimension {cfg.dim}, set has {s.dim}")


def first_violation(s: IndexSet, cfg: LatticeConfig, plan) -> Violation | None:
    """Return the first violated congruence of ``plan``, or None if admissible.

    Members are visited in lexicographic order and sign flips in mask order,
    so the reported witness is deterministic.
    """
    plan = Plan.parse(plan)
    _validate(s, cfg)
    n, z = cfg.n, cfg.z

    if plan is Plan.ZERO:
        for k in s:
            for sigma, h in _flips(k):
                if any(h) and dot(h, z) % n == 0:
                    return Violation(k, sigma, None)
        return None

    if plan is Plan.A:
        seen: dict[int, tuple[MultiIndex, tuple[int, ...], MultiIndex]] = {}
        for k in s:
            for sigma, h in _flips(k):
                r = dot(h, z) % n
                prev = seen.get(r)
                if prev is not None and prev[2] != h:
                    return Violation(k, sigma, prev[0], prev[1])
                seen[r] = (k, sigma, h)
        return None

    # plans B and C compare sigma(h) with unflipped members h'
    by_res: dict[int, list[MultiIndex]] = defaultdict(list)
    for k in s:
        by_res[dot(k, z) % n].append(k)
    for k in s:
        for sigma, h in _flips(k):
            for hp in by_res.get(dot(h, z) % n, ()):
                if plan is Plan.B and h != hp:
                    return Violation(k, sigma, hp)
                if plan is Plan.C and k != hp:
                    return Violation(k, sigma, hp)
    return None


def check_direct(s: IndexSet, cfg: LatticeConfig, plan) -> bool:
    """True iff (n, z) is admissible for ``plan`` on ``s``."""
    return first_violation(s, cfg, plan) is None


def aliasing_count_ck(k: Sequence[int], cfg: LatticeConfig) -> int:
    """c_k = #{sigma : sigma(k).z == k.z (mod n)}; at least 1."""
    if len(k) != cfg.dim:
        raise ValueError("dimension mismatch")
    r = dot(k, cfg.z) % cfg.n
    return sum(1 for _, h in _flips(k) if dot(h, cfg.z) % cfg.n == r)


def check_planB_via_extremal(s: LowerSet, cfg: LatticeConfig) -> bool:
    """Plan B through Plan C plus 2 h.z != 0 (mod n) on extremal elements."""
    if not check_direct(s, cfg, Plan.C):
        return False
    return all(2 * dot(h, cfg.z) % cfg.n != 0 for h in extremal_elements(s) if any(h))


# --- alias table --------------------------------------------------------------

@dataclass(frozen=True)
class AliasEntry:
    """Raw products for one key h: v_id = h.z and the other sign flips.

    ``v_other`` is a sorted tuple (a multiset) of unreduced integers.
    """

    v_id: int
    v_other: tuple[int, ...] = ()


_ZERO_ENTRY = AliasEntry(0, ())


class AliasTable:
    """Immutable map from the keys of a j-dimensional lower set to entries."""

    __slots__ = ("dim", "entries")

    def __init__(self, dim: int, entries: Mapping[MultiIndex, AliasEntry]):
        self.dim = dim
        self.entries = MappingProxyType(dict(entries))

    @classmethod
    def empty(cls) -> "AliasTable":
        """Dimension-0 table; the empty key extracts as (0, ())."""
        return cls(0, {(): _ZERO_ENTRY})

    def __getitem__(self, key) -> AliasEntry:
        return self.entries[tuple(key)]

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def keys(self):
        return self.entries.keys()

    def items(self):
        return self.entries.items()

    def max_abs_product(self) -> int:
        return max((max([abs(e.v_id)] + [abs(w) for w in e.v_other]) for e in self.entries.values()),
                   default=0)

    def __repr__(self) -> str:
        return f"AliasTable(dim={self.dim}, keys={len(self)})"


def _reduce(x: int, n: int | None) -> int:
    return x if n is None else x % n


def rejection_condition(plan, entry: AliasEntry, V: set, V_star: set, n: int | None) -> bool:
    """Plan-specific rejection test for one table entry.

    ``V`` and ``V_star`` hold the (reduced) identity and non-identity products
    of the keys processed before this one. An entry with empty ``v_other``
    belongs to the zero key, which plan 0 exempts.
    """
    plan = Plan.parse(plan)
    vid = _reduce(entry.v_id, n)
    others = [_reduce(w, n) for w in entry.v_other]

    if plan is Plan.ZERO:
        if not entry.v_other:
            return False
        return vid == 0 or 0 in others

    other_set = set(others)
    if vid in V or vid in V_star or any(w in V for w in other_set):
        return True
    if plan is Plan.C:
        return False
    if vid in other_set:
        return True
    if plan is Plan.B:
        return False
    return len(other_set) < len(others) or any(w in V_star for w in other_set)


def _new_entry(prev: AliasEntry, hj: int, zeta: int) -> AliasEntry:
    if hj == 0:
        return prev
    step = hj * zeta
    vid = prev.v_id + step
    others = [prev.v_id - step]
    for w in prev.v_other:
        others.append(w + step)
        others.append(w - step)
    for x in [vid] + others:
        if abs(x) > INT64_MAX:
            raise OverflowError("alias table product leaves 64-bit range")
    return AliasEntry(vid, tuple(sorted(others)))


def table_extend(Lj: LowerSet, prev: AliasTable, n: int | None, z: Sequence[int], zeta: int,
                 plan) -> tuple[bool, AliasTable | None]:
    """Extend ``prev`` (keys Lj projected to j-1) by the coordinate ``zeta``.

    Returns ``(True, table)`` when no key of ``Lj`` triggers the rejection
    condition, else ``(False, None)``. With ``n=None`` products are compared as
    exact integers.
    """
    plan = Plan.parse(plan)
    j = Lj.dim
    if prev.dim != j - 1 or len(z) != j - 1:
        raise ValueError(f"table/vector of dimension {prev.dim}/{len(z)} cannot extend to {j}")
    if n is not None and n < 1:
        raise ValueError("modulus must be >= 1")
    if {k[:-1] for k in Lj} != set(prev.keys()):
        raise ValueError("previous table keys differ from the projection of the set")

    V: set[int] = set()
    V_star: set[int] = set()
    out: dict[MultiIndex, AliasEntry] = {}
    for h in Lj:
        entry = _new_entry(prev[h[:-1]], h[-1], zeta)
        if rejection_condition(plan, entry, V, V_star, n):
            return False, None
        V.add(_reduce(entry.v_id, n))
        V_star.update(_reduce(w, n) for w in entry.v_other)
        out[h] = entry
    return True, AliasTable(j, out)


def check_table(table: AliasTable, n: int | None, plan) -> bool:
    """Re-run the rejection conditions over a finished table for modulus ``n``."""
    V: set[int] = set()
    V_star: set[int] = set()
    for h in sorted(table.keys()):
        entry = table[h]
        if rejection_condition(plan, entry, V, V_star, n):
            return False
        V.add(_reduce(entry.v_id, n))
        V_star.update(_reduce(w, n) for w in entry.v_other)
    return True


def build_table(s: LowerSet, z: Sequence[int]) -> AliasTable:
    """Alias table of ``s`` for a fixed ``z`` without any admissibility test."""
    table = AliasTable.empty()
    for j in range(1, s.dim + 1):
        Lj = LowerSet((k[:j] for k in s), j)
        table = AliasTable(j, {h: _new_entry(table[h[:-1]], h[-1], z[j - 1]) for h in Lj})
    return table


def check_chain(s: LowerSet, cfg: LatticeConfig, plan) -> bool:
    """Admissibility through the table route, one coordinate at a time."""
    _validate(s, cfg)
    table = AliasTable.empty()
    for j in range(1, s.dim + 1):
        Lj = LowerSet((k[:j] for k in s), j)
        ok, table = table_extend(Lj, table, cfg.n, cfg.z[: j - 1], cfg.z[j - 1], plan)
        if not ok:
            return False
    return True


# --- reduced checks for simplexes ---------------------------------------------

def _colliding_pairs(items: Iterable[tuple[int, object]]):
    """Yield (a, b) payload pairs sharing a residue key."""
    buckets: dict[int, list] = defaultdict(list)
    for r, payload in items:
        for other in buckets[r]:
            yield other, payload
        buckets[r].append(payload)


def _l1(h) -> int:
    return sum(abs(x) for x in h)


SIMPLEX_MODES = ("maximal", "window", "equiv", "iso-top", "iso-band")


def simplex_reduced_check_planA(s: SimplexSet, cfg: LatticeConfig, mode: str = "auto") -> bool:
    """Plan A on a simplex set from a reduced family of congruences.

    Modes
    -----
    maximal
        h in M(s) against h' in the mirrored maximal elements.
    window
        pairs of M(s) whose weighted norms differ by at most the largest
        weight on their joint support.
    equiv
        Plan C, plus 2 floor(u/w_j) z_j != 0, plus the pairs of M(s) whose
        weighted norms add up to more than 2u minus that largest weight.
    iso-top
        isotropic only: sigma(h) against unflipped h' of top norm k, together
        with 2 k z_j != 0.
    iso-band
        isotropic only: sigma(h) against unflipped h' with norm gap 0 or 1,
        together with 2 m z_j != 0 for m = 1..k.
    auto
        ``iso-top`` for isotropic weights, ``maximal`` otherwise.
    """
    if not isinstance(s, SimplexSet):
        raise TypeError("reduced checks need a set built by make_simplex or make_simplex_iso")
    _validate(s, cfg)
    n, z = cfg.n, cfg.z
    w, u = s.weights, s.u
    if mode == "auto":
        mode = "iso-top" if s.is_isotropic else "maximal"
    if mode not in SIMPLEX_MODES:
        raise ValueError(f"unknown mode {mode!r}")

    M = mirror(s)
    res = {h: dot(h, z) % n for h in M}

    def wnorm(h) -> Fraction:
        return sum((wi * abs(x) for wi, x in zip(w, h)), Fraction(0))

    def alpha(h, hp) -> Fraction:
        supp = set(support(h)) | set(support(hp))
        return max((w[i] for i in supp), default=Fraction(0))

    def axis_condition() -> bool:
        for j in range(s.dim):
            if u >= w[j] and (2 * (u // w[j]) * z[j]) % n == 0:
                return False
        return True

    if mode == "maximal":
        tops = {h for k in maximal_elements(s) for _, h in _flips(k)}
        by_res: dict[int, list] = defaultdict(list)
        for hp in tops:
            by_res[res[hp]].append(hp)
        return not any(hp != h for h in M for hp in by_res.get(res[h], ()))

    if mode == "window":
        norms = {h: wnorm(h) for h in M}
        for a, b in _colliding_pairs((res[h], h) for h in M):
            if abs(norms[a] - norms[b]) <= alpha(a, b):
                return False
        return True

    if mode == "equiv":
        if not check_direct(s, cfg, Plan.C) or not axis_condition():
            return False
        wmax = max(w)
        high = [h for h in M if wnorm(h) > u - wmax]
        for a, b in _colliding_pairs((res[h], h) for h in high):
            if wnorm(a) + wnorm(b) > 2 * u - alpha(a, b):
                return False
        return True

    if not s.is_isotropic:
        raise ValueError(f"mode {mode!r} needs isotropic weights")
    k = int(u // w[0])
    # the shifting argument degenerates on the axes: sigma(m e_j) against m e_j
    axis_mults = ([k] if k else []) if mode == "iso-top" else range(1, k + 1)
    if any((2 * m * zj) % n == 0 for m in axis_mults for zj in z):
        return False
    by_norm: dict[int, dict[int, list]] = defaultdict(lambda: defaultdict(list))
    for hp in s:
        by_norm[_l1(hp)][res[hp]].append(hp)
    for h in s:
        nh = _l1(h)
        targets = [k] if mode == "iso-top" else [nh, nh + 1]
        for _, sh in _flips(h):
            r = res[sh]
            for t in targets:
                for hp in by_norm.get(t, {}).get(r, ()):
                    if hp != h:
                        return False
    return True
