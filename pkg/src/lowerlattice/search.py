"""
Searching for admissible rank-1 lattice pairs (n, z).

Three strategies are provided:

* ``exhaustive_search`` scans n upwards and z lexicographically and is the
  optimality oracle;
* ``cbc_search`` builds z one coordinate at a time, bumping n whenever no
  coordinate value works for the current modulus;
* ``two_step`` first picks z so that no aliasing occurs over the integers
  (``vector_search``) and then the smallest working modulus
  (``modulus_search``).

Closed-form lattices for blocks, 2D simplexes and 2D crosses are included
for reference.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, TextIO

import numpy as np

from .admissibility import (
    AliasTable,
    LatticeConfig,
    Plan,
    check_direct,
    check_table,
    table_extend,
)
from .index_sets import (
    IndexSet,
    LowerSet,
    as_lower,
    mirror,
    mirror_cardinality,
    projection,
    sign_flips,
    sum_sets,
)

ZETA_CAP = 10**9


class NotFoundError(RuntimeError):
    """No admissible pair exists within the requested modulus range."""


@dataclass(frozen=True)
class SearchBounds:
    n_min: int
    n_max: int

    def __post_init__(self):
        if self.n_min > self.n_max:
            raise ValueError(f"empty range [{self.n_min}, {self.n_max}]")


@dataclass
class SearchResult:
    n: int
    z: tuple[int, ...]
    plan: Plan
    algo: str
    elapsed_ms: float
    table: AliasTable | None = field(default=None, repr=False)

    @property
    def cfg(self) -> LatticeConfig:
        return LatticeConfig(self.n, self.z)


# --- primes and bounds --------------------------------------------------------

def is_prime(m: int) -> bool:
    if m < 2:
        return False
    if m % 2 == 0:
        return m == 2
    f = 3
    while f * f <= m:
        if m % f == 0:
            return False
        f += 2
    return True


def smallest_prime_geq(m: int) -> int:
    """Smallest prime >= m (trial division)."""
    if m < 2:
        raise ValueError("m must be >= 2")
    while not is_prime(m):
        m += 1
    return m


def _prime_above(x) -> int:
    """Smallest prime strictly larger than the rational ``x``."""
    return smallest_prime_geq(max(2, math.floor(x) + 1))


def lower_bound(s: IndexSet, plan) -> int:
    """l* for the plan; for lower sets #M, 2#L - 1, 2#L - 2 and 2 for plan 0."""
    plan = Plan.parse(plan)
    has_zero = (0,) * s.dim in s
    card = len(s)
    if plan is Plan.ZERO:
        return 1 if all(not any(k) for k in s) else 2
    if plan is Plan.A:
        return mirror_cardinality(s) + (0 if has_zero else 1)
    if plan is Plan.B:
        return max(1, 2 * card + (-1 if has_zero else 1))
    return max(1, 2 * card - 2)


def upper_bound(s: IndexSet, plan) -> int:
    """p*: smallest prime larger than both plan-specific quantities."""
    plan = Plan.parse(plan)
    inf = s.norm_inf()
    M = mirror(s)
    if plan is Plan.ZERO:
        nonzero = len(M) - (1 if (0,) * s.dim in M else 0)
        return _prime_above(max(Fraction(inf), Fraction(nonzero, 2) + 1))
    if plan is Plan.A:
        return _prime_above(max(Fraction(2 * inf), Fraction(len(sum_sets(M, M)) + 1, 2)))
    if plan is Plan.B:
        return _prime_above(max(2 * inf, len(sum_sets(IndexSet(s.members, s.dim), M))))
    return _prime_above(max(2 * inf, len(s) * len(M)))


def default_bounds(s: IndexSet, plan) -> SearchBounds:
    return SearchBounds(lower_bound(s, plan), upper_bound(s, plan))


# --- exhaustive oracle ----------------------------------------------------------

def _last_nonzero(v: Sequence[int]) -> int:
    for j in range(len(v) - 1, -1, -1):
        if v[j] != 0:
            return j
    return -1


def _kernel_inputs(s: IndexSet, plan: Plan):
    """Rows, bucket keys and flags encoding the plan for the compiled scan."""
    rows: list[tuple[int, ...]] = []
    keys: list[int] = []
    flags: list[bool] = []
    members = s.as_set()
    if plan is Plan.C:
        for o, k in enumerate(s):
            for i, h in enumerate(sign_flips(k)):
                rows.append(h)
                keys.append(o)
                flags.append(i == 0)
    else:
        vecs = list(mirror(s))
        if plan is Plan.ZERO:
            vecs = [(0,) * s.dim] + [v for v in vecs if any(v)]
        for i, v in enumerate(vecs):
            rows.append(v)
            keys.append(i)
            if plan is Plan.B:
                flags.append(v in members)
            else:
                flags.append(plan is Plan.ZERO and not any(v))
    order = sorted(range(len(rows)), key=lambda i: (_last_nonzero(rows[i]), i))
    E = np.array([rows[i] for i in order], dtype=np.int64).reshape(len(rows), s.dim)
    key = np.array([keys[i] for i in order], dtype=np.int64)
    flag = np.array([flags[i] for i in order], dtype=np.bool_)
    levels = np.array([_last_nonzero(rows[i]) for i in order], dtype=np.int64)
    bounds = np.array([int(np.sum(levels <= j - 1)) for j in range(s.dim + 1)], dtype=np.int64)
    return E, key, flag, plan is not Plan.A, bounds


def _python_scan(s: IndexSet, plan: Plan, n_lo: int, n_hi: int):
    """Literal scan over n and lexicographic z; a slow reference."""
    import itertools

    for n in range(n_lo, n_hi + 1):
        for z in itertools.product(range(n), repeat=s.dim):
            if check_direct(s, LatticeConfig(n, z), plan):
                return n, z
    return -1, ()


def exhaustive_search(s: IndexSet, plan, n_lower: int | None = None, n_upper: int | None = None,
                      backend: str = "numba") -> SearchResult:
    """Smallest n in [n_lower, n_upper] admitting some z in {0..n-1}^d.

    The returned z is the lexicographically smallest one for that n. Defaults
    are the plan's lower and upper bounds. Any finite set is accepted.

    Raises
    ------
    NotFoundError
        If no pair exists in the range.
    """
    plan = Plan.parse(plan)
    t0 = time.perf_counter()
    lo = lower_bound(s, plan) if n_lower is None else int(n_lower)
    hi = upper_bound(s, plan) if n_upper is None else int(n_upper)
    lo = max(lo, 1)
    if lo > hi:
        raise ValueError(f"empty modulus range [{lo}, {hi}]")
    if backend == "numba":
        from ._kernels import scan_moduli

        n, z = scan_moduli(*_kernel_inputs(s, plan), lo, hi)
        z = tuple(int(x) for x in z)
    elif backend == "python":
        n, z = _python_scan(s, plan, lo, hi)
    else:
        raise ValueError(f"unknown backend {backend!r}")
    if n < 0:
        raise NotFoundError(f"no plan-{plan} lattice with n in [{lo}, {hi}]")
    return SearchResult(int(n), z, plan, "exhaustive", (time.perf_counter() - t0) * 1e3)


# --- dimensionwise search ---------------------------------------------------------

def cbc_search(s: LowerSet, plan, n_min: int | None = None) -> SearchResult:
    """Dimensionwise construction of (n, z).

    For each coordinate j the values zeta = 0..n-1 are tried against the
    projection of the set onto the first j coordinates; when none works n is
    increased and the scan restarts at zeta = 0.
    """
    plan = Plan.parse(plan)
    s = as_lower(s)
    t0 = time.perf_counter()
    n = lower_bound(s, plan) if n_min is None else int(n_min)
    z: list[int] = []
    table = AliasTable.empty()
    for j in range(1, s.dim + 1):
        Lj = projection(s, j)
        n -= 1
        found = False
        while not found:
            n += 1
            zeta = 0
            while not found and zeta < n:
                ok, new = table_extend(Lj, table, n, z, zeta, plan)
                if ok:
                    found = True
                    table = new
                else:
                    zeta += 1
        z.append(zeta)
    return SearchResult(n, tuple(z), plan, "cbc", (time.perf_counter() - t0) * 1e3, table)


# --- two-step heuristic -----------------------------------------------------------

def vector_search(s: LowerSet, plan, zeta_cap: int = ZETA_CAP) -> tuple[tuple[int, ...], AliasTable]:
    """Per coordinate, the smallest zeta >= 0 with no aliasing over the integers."""
    plan = Plan.parse(plan)
    s = as_lower(s)
    z: list[int] = []
    table = AliasTable.empty()
    for j in range(1, s.dim + 1):
        Lj = projection(s, j)
        zeta = 0
        while True:
            ok, new = table_extend(Lj, table, None, z, zeta, plan)
            if ok:
                table = new
                break
            zeta += 1
            if zeta > zeta_cap:
                raise RuntimeError(f"no coordinate value below {zeta_cap} for dimension {j}")
        z.append(zeta)
    return tuple(z), table


def modulus_bound(table: AliasTable) -> int:
    """2 max |h.z| + 1 over the mirrored set stored in ``table``."""
    return 2 * table.max_abs_product() + 1


def modulus_search(s: LowerSet, table: AliasTable, n_min: int | None, plan,
                   odd_only: bool = False) -> int:
    """Smallest n >= n_min (odd if requested) for which the table stays clean."""
    plan = Plan.parse(plan)
    if set(table.keys()) != s.as_set():
        raise ValueError("table keys do not match the set")
    n = lower_bound(s, plan) if n_min is None else max(1, int(n_min))
    if odd_only and n % 2 == 0:
        n += 1
    step = 2 if odd_only else 1
    limit = max(n, modulus_bound(table))
    while n <= limit + 1:
        if check_table(table, n, plan):
            return n
        n += step
    raise RuntimeError("modulus search passed its termination bound; table is not integer-admissible")


def two_step(s: LowerSet, plan, n_min: int | None = None, odd_only: bool = False) -> SearchResult:
    plan = Plan.parse(plan)
    t0 = time.perf_counter()
    z, table = vector_search(s, plan)
    n = modulus_search(s, table, n_min, plan, odd_only=odd_only)
    algo = "two-step-odd" if odd_only else "two-step"
    return SearchResult(n, z, plan, algo, (time.perf_counter() - t0) * 1e3, table)


# --- closed forms ----------------------------------------------------------------

def closed_form_block(k: Sequence[int]) -> LatticeConfig:
    """n = prod(2k_j + 1), z_i = prod_{j<i}(2k_j + 1)."""
    z, acc = [], 1
    for kj in k:
        z.append(acc)
        acc *= 2 * kj + 1
    return LatticeConfig(acc, tuple(z))


def closed_form_block_unmirrored(k: Sequence[int]) -> LatticeConfig:
    """n = prod(k_j + 1), z_i = prod_{j<i}(k_j + 1); injective on the block."""
    z, acc = [], 1
    for kj in k:
        z.append(acc)
        acc *= kj + 1
    return LatticeConfig(acc, tuple(z))


def closed_form_simplex2d(k: int) -> LatticeConfig:
    return LatticeConfig(2 * k * k + 2 * k + 1, (1, 2 * k + 1))


def closed_form_padua(k: int) -> LatticeConfig:
    return LatticeConfig(2 * k * k + 2 * k + 1, (k, k + 1))


def closed_form_cross2d(k: Sequence[int]) -> LatticeConfig:
    """n = (k1 + 1)(k2 + 1) + 1, z = (1, k1 + 1); needs both arms of length >= 1."""
    k1, k2 = k
    if k1 < 1 or k2 < 1:
        raise ValueError("cross closed form needs k1, k2 >= 1")
    return LatticeConfig((k1 + 1) * (k2 + 1) + 1, (1, k1 + 1))


# --- lattice text format -----------------------------------------------------------

def format_lattice(cfg: LatticeConfig) -> str:
    return str(cfg) + "\n"


def parse_lattice(text: str) -> LatticeConfig:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
    if len(lines) != 1:
        raise ValueError("lattice file must hold exactly one line 'n z1 ... zd'")
    parts = [int(p) for p in lines[0].split()]
    if len(parts) < 2:
        raise ValueError("lattice line needs n and at least one generator entry")
    return LatticeConfig(parts[0], tuple(parts[1:]))


def write_lattice(cfg: LatticeConfig, f: TextIO | str) -> None:
    if isinstance(f, str):
        with open(f, "w") as fh:
            fh.write(format_lattice(cfg))
    else:
        f.write(format_lattice(cfg))


def read_lattice(f: TextIO | str) -> LatticeConfig:
    if isinstance(f, str):
        with open(f) as fh:
            return parse_lattice(fh.read())
    return parse_lattice(f.read())
