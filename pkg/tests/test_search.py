import io
import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lowerlattice.admissibility import LatticeConfig, Plan, build_table, check_direct, check_table
from lowerlattice.index_sets import (
    IndexSet,
    LowerSet,
    make_block,
    make_cross,
    make_simplex_iso,
    random_lower_set,
)
from lowerlattice.search import (
    NotFoundError,
    SearchBounds,
    cbc_search,
    closed_form_block,
    closed_form_block_unmirrored,
    closed_form_cross2d,
    closed_form_padua,
    closed_form_simplex2d,
    exhaustive_search,
    format_lattice,
    is_prime,
    lower_bound,
    modulus_bound,
    modulus_search,
    parse_lattice,
    read_lattice,
    smallest_prime_geq,
    two_step,
    upper_bound,
    vector_search,
    write_lattice,
)

from oracles import brute_mirror, brute_primes_upto, brute_search

PLANS = list(Plan)
PRIMES = brute_primes_upto(20000)


@st.composite
def lower_sets(draw, max_dim=3, max_size=8):
    d = draw(st.integers(1, max_dim))
    size = draw(st.integers(1, max_size))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_lower_set(d, size, np.random.default_rng(seed))


# --- primes ------------------------------------------------------------------------

@pytest.mark.parametrize("m, p", [(2, 2), (9, 11), (150, 151)])
def test_smallest_prime_geq_examples(m, p):
    assert smallest_prime_geq(m) == p


def test_primes_against_sieve():
    assert [m for m in range(20001) if is_prime(m)] == PRIMES
    for m in range(2, 19000, 37):
        assert smallest_prime_geq(m) == next(p for p in PRIMES if p >= m)
    with pytest.raises(ValueError):
        smallest_prime_geq(1)


# --- bounds ------------------------------------------------------------------------

@pytest.mark.parametrize("plan, expected", [("A", 5), ("B", 5), ("C", 4)])
def test_lower_bound_examples(plan, expected):
    assert lower_bound(make_simplex_iso(2, 1), plan) == expected


def test_upper_bound_examples():
    assert upper_bound(make_block((1, 1)), "0") == 7
    assert upper_bound(make_simplex_iso(2, 1), "C") == 17
    assert upper_bound(make_block((1,)), "A") == 5


def _upper_oracle(members, plan):
    """The same quantities evaluated on plain Python sets."""
    inf = max(abs(x) for k in members for x in k)
    M = brute_mirror(members)
    if plan == "0":
        q = max(inf, (len(M) - 1) / 2 + 1)
    elif plan == "A":
        MM = {tuple(a + b for a, b in zip(x, y)) for x in M for y in M}
        q = max(2 * inf, (len(MM) + 1) / 2)
    elif plan == "B":
        LM = {tuple(a + b for a, b in zip(x, y)) for x in members for y in M}
        q = max(2 * inf, len(LM))
    else:
        q = max(2 * inf, len(members) * len(M))
    return next(p for p in PRIMES if p > q)


@given(lower_sets(max_size=10))
@settings(max_examples=100)
def test_upper_bound_against_oracle(s):
    for plan in PLANS:
        assert upper_bound(s, plan) == _upper_oracle(list(s), plan.value)


def test_lower_bound_for_sets_without_zero():
    s = IndexSet([(1,), (2,)])
    assert lower_bound(s, "A") == 5
    assert lower_bound(s, "B") == 5
    assert lower_bound(LowerSet([(0,)]), "0") == 1


def test_search_bounds_validation():
    assert SearchBounds(3, 5).n_max == 5
    with pytest.raises(ValueError):
        SearchBounds(6, 5)


# --- exhaustive oracle --------------------------------------------------------------

@pytest.mark.parametrize("s, n", [
    (make_simplex_iso(2, 1), 5),
    (make_block((1, 1)), 9),
    (make_cross((1, 1)), 5),
])
def test_exhaustive_examples(s, n):
    assert exhaustive_search(s, "A").n == n


@given(lower_sets(max_dim=2, max_size=5))
@settings(max_examples=60, deadline=None)
def test_exhaustive_matches_brute_force(s):
    for plan in PLANS:
        lo, hi = lower_bound(s, plan), upper_bound(s, plan)
        res = exhaustive_search(s, plan)
        assert (res.n, res.z) == brute_search(list(s), plan.value, lo, hi)


def test_exhaustive_backends_agree():
    rng = np.random.default_rng(7)
    for _ in range(30):
        s = random_lower_set(int(rng.integers(1, 4)), int(rng.integers(1, 6)), rng)
        for plan in PLANS:
            a = exhaustive_search(s, plan)
            b = exhaustive_search(s, plan, backend="python")
            assert (a.n, a.z) == (b.n, b.z)


def test_exhaustive_accepts_signed_sets():
    s = IndexSet([(0, 0), (1, -1), (2, 1)])
    for plan in PLANS:
        res = exhaustive_search(s, plan, 1, 60)
        assert (res.n, res.z) == brute_search(list(s), plan.value, 1, 60)


def test_exhaustive_not_found_and_bad_range():
    with pytest.raises(NotFoundError):
        exhaustive_search(make_block((1, 1)), "A", 1, 8)
    with pytest.raises(ValueError):
        exhaustive_search(make_block((1, 1)), "A", 9, 8)
    with pytest.raises(ValueError):
        exhaustive_search(make_block((1, 1)), "A", backend="gpu")


@given(lower_sets(max_size=8))
@settings(max_examples=60, deadline=None)
def test_oracle_is_sound_and_ordered(s):
    ns = {}
    for plan in PLANS:
        res = exhaustive_search(s, plan)
        assert check_direct(s, res.cfg, plan)
        assert lower_bound(s, plan) <= res.n <= upper_bound(s, plan)
        ns[plan] = res.n
    assert ns[Plan.C] <= ns[Plan.B] <= ns[Plan.A]


# --- dimensionwise search -----------------------------------------------------------

def test_cbc_examples():
    assert cbc_search(LowerSet([(0,), (1,), (2,)]), "A").cfg == LatticeConfig(5, (1,))
    for q in range(6):
        res = cbc_search(LowerSet([(i,) for i in range(q + 1)]), "A")
        assert res.cfg == LatticeConfig(2 * q + 1, (1,) if q else (0,))
    assert cbc_search(make_block((1, 1)), "A").cfg == LatticeConfig(9, (1, 3))
    res = cbc_search(LowerSet([(0,)]), "0", n_min=4)
    assert res.cfg == LatticeConfig(4, (0,))


def test_cbc_rejects_non_lower_sets():
    with pytest.raises(ValueError):
        cbc_search(IndexSet([(1,)]), "A")


@given(lower_sets(max_size=10))
@settings(max_examples=80, deadline=None)
def test_heuristics_sound_and_dominated(s):
    for plan in PLANS:
        opt = exhaustive_search(s, plan).n
        c = cbc_search(s, plan)
        t = two_step(s, plan)
        assert check_direct(s, c.cfg, plan) and check_direct(s, t.cfg, plan)
        assert c.n >= opt and t.n >= opt
        assert t.n <= modulus_bound(t.table)


# --- two-step heuristic -------------------------------------------------------------

def test_vector_search_examples():
    assert vector_search(LowerSet([(0,), (1,), (2,)]), "A")[0] == (1,)
    assert vector_search(make_block((1, 1)), "A")[0] == (1, 3)
    assert vector_search(LowerSet([(0,), (1,), (2,), (3,)]), "0")[0] == (1,)


def test_vector_search_first_separating_value():
    # brute force over zeta for B_(1,1): the smallest zeta separating {-1,0,1}^2
    M = list(itertools.product((-1, 0, 1), repeat=2))
    first = next(zeta for zeta in range(10) if len({a + zeta * b for a, b in M}) == len(M))
    assert vector_search(make_block((1, 1)), "A")[0] == (1, first)


def test_vector_search_cap():
    with pytest.raises(RuntimeError):
        vector_search(make_block((1, 1)), "A", zeta_cap=1)


def test_modulus_search_examples():
    s = make_simplex_iso(2, 1)


    assert modulus_search(s, build_table(s, (1, 3)), 5, "A") == 5
    L = LowerSet([(0,), (1,), (2,)])
    assert modulus_search(L, build_table(L, (1,)), 5, "A") == 5
    assert modulus_search(L, build_table(L, (1,)), None, "A") == 5
    with pytest.raises(ValueError):
        modulus_search(L, build_table(make_block((1,)), (1,)), 5, "A")


def test_two_step_example():
    res = two_step(make_block((1, 1)), "A")
    assert res.cfg == LatticeConfig(9, (1, 3)) and res.algo == "two-step"


@given(lower_sets(max_dim=4, max_size=12))
@settings(max_examples=80, deadline=None)
def test_odd_only_gives_planB(s):
    res = two_step(s, "C", odd_only=True)
    assert res.n % 2 == 1
    assert check_direct(s, res.cfg, Plan.B)
    assert res.algo == "two-step-odd"


@given(lower_sets(max_dim=4, max_size=12))
@settings(max_examples=80, deadline=None)
def test_modulus_termination_bound(s):
    for plan in PLANS:
        z, table = vector_search(s, plan)
        assert check_table(table, None, plan)
        n = modulus_search(s, table, None, plan)
        products = [abs(sum(a * b for a, b in zip(h, z))) for h in brute_mirror(list(s))]
        assert n <= 2 * max(products) + 1
        assert check_direct(s, LatticeConfig(n, z), plan)


# --- closed forms ------------------------------------------------------------------

def test_closed_form_examples():
    assert closed_form_block((1, 1)) == LatticeConfig(9, (1, 3))
    assert closed_form_simplex2d(2) == LatticeConfig(13, (1, 5))
    assert closed_form_cross2d((2, 2)) == LatticeConfig(10, (1, 3))
    assert closed_form_padua(2) == LatticeConfig(13, (2, 3))


@pytest.mark.parametrize("k", [(0,), (3,), (1, 2), (2, 0, 1), (1, 1, 1, 1)])
def test_closed_form_block_admissible(k):
    s = make_block(k)
    assert check_direct(s, closed_form_block(k), Plan.A)
    cfg = closed_form_block_unmirrored(k)
    assert len({sum(a * b for a, b in zip(h, cfg.z)) % cfg.n for h in s}) == len(s)


@pytest.mark.parametrize("k", range(1, 7))
def test_closed_form_simplex_and_padua_admissible(k):
    s = make_simplex_iso(2, k)
    assert check_direct(s, closed_form_simplex2d(k), Plan.A)
    assert check_direct(s, closed_form_padua(k), Plan.A)


@pytest.mark.parametrize("k", list(itertools.product(range(1, 4), repeat=2)))
def test_closed_form_cross_admissible(k):
    assert check_direct(make_cross(k), closed_form_cross2d(k), Plan.A)


def test_closed_form_cross_degenerate():
    # a zero arm collapses the cross to a line where the formula undershoots
    with pytest.raises(ValueError):
        closed_form_cross2d((0, 2))
    assert exhaustive_search(make_cross((0, 2)), "A").n == 5


# --- lattice text format -----------------------------------------------------------

def test_lattice_io_roundtrip(tmp_path):
    cfg = LatticeConfig(13, (1, 5))
    assert format_lattice(cfg) == "13 1 5\n"
    assert parse_lattice(format_lattice(cfg)) == cfg
    p = str(tmp_path / "lat.txt")
    write_lattice(cfg, p)
    assert read_lattice(p) == cfg
    buf = io.StringIO()
    write_lattice(cfg, buf)
    buf.seek(0)
    assert read_lattice(buf) == cfg


@pytest.mark.parametrize("text", ["", "5", "5 1\n6 1", "x 1"])
def test_lattice_parse_errors(text):
    with pytest.raises(ValueError):
        parse_lattice(text)
