"""
Lattice cubature in cosine space and Chebyshev coefficient reconstruction.

The rank-1 lattice nodes are t_i = (i z mod n) / n. Composing a function on
[-1, 1]^d with x = cos(2 pi t) turns the lattice rule into a rule for the
Chebyshev measure, which integrates and reconstructs a Chebyshev series
exactly when the lattice is admissible for the corresponding plan.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Mapping, Sequence, TextIO

import numpy as np

from .admissibility import LatticeConfig, aliasing_count_ck, dot
from .index_sets import IndexSet, MultiIndex, l0

DOMAIN_TOL = 1e-12


class Rank1Lattice:
    """Node set {(i z mod n) / n : i = 0..n-1}.

    Parameters
    ----------
    cfg : LatticeConfig
        Modulus and generating vector.
    """

    def __init__(self, cfg: LatticeConfig):
        self.cfg = cfg
        self.dim = cfg.dim
        self.n = cfg.n

    def numerators(self) -> np.ndarray:
        """Integer array (n, d) of i z_j mod n."""
        i = np.arange(self.n, dtype=np.int64)[:, None]
        z = np.array(self.cfg.z, dtype=np.int64)[None, :] % self.n
        return (i * z) % self.n

    def node(self, i: int) -> tuple[Fraction, ...]:
        """Exact rational coordinates of node i."""
        return tuple(Fraction(i * zj % self.n, self.n) for zj in self.cfg.z)

    def nodes(self) -> np.ndarray:
        return self.numerators() / self.n

    def cosine_nodes(self) -> np.ndarray:
        """cos(2 pi t_i), the sampling points in [-1, 1]^d."""
        return np.cos(2 * np.pi * self.nodes())

    def __repr__(self) -> str:
        return f"Rank1Lattice(n={self.n}, z={self.cfg.z})"


def nodes(lat: Rank1Lattice) -> np.ndarray:
    return lat.nodes()


def tent(x):
    """Tent map 1 - |2x - 1| on [0, 1]."""
    arr = np.asarray(x, dtype=float)
    if np.any(arr < -DOMAIN_TOL) or np.any(arr > 1 + DOMAIN_TOL):
        raise ValueError("tent is defined on [0, 1]")
    out = 1.0 - np.abs(2.0 * arr - 1.0)
    return float(out) if out.ndim == 0 else out


def character_sum(h: Sequence[int], cfg: LatticeConfig) -> complex:
    """(1/n) sum_i exp(2 pi i i (h.z) / n), summed directly."""
    n = cfg.n
    m = dot(h, cfg.z) % n
    phase = (np.arange(n, dtype=np.int64) * m) % n
    return complex(np.exp(2j * np.pi * phase / n).sum() / n)


def _check_domain(x: np.ndarray) -> np.ndarray:
    if np.any(np.abs(x) > 1 + DOMAIN_TOL):
        raise ValueError("Chebyshev basis evaluated outside [-1, 1]^d")
    return np.clip(x, -1.0, 1.0)


def eval_cheb_basis(k: Sequence[int], x) -> np.ndarray | float:
    """sqrt(2)^{|k|_0} prod_j T_{k_j}(x_j) with T_m(x) = cos(m arccos x).

    ``x`` is one point of length d or an (m, d) array of points.
    """
    pts = _check_domain(np.asarray(x, dtype=float))
    single = pts.ndim == 1
    pts = np.atleast_2d(pts)
    if pts.shape[1] != len(k):
        raise ValueError(f"points have dimension {pts.shape[1]}, index has {len(k)}")
    theta = np.arccos(pts)
    val = np.full(pts.shape[0], math.sqrt(2.0) ** l0(k))
    for j, kj in enumerate(k):
        if kj:
            val *= np.cos(kj * theta[:, j])
    return float(val[0]) if single else val


def cubature(lat: Rank1Lattice, g: Callable[[np.ndarray], np.ndarray], half: bool = False):
    """(1/n) sum_i g(t_i), with ``g`` mapping an (m, d) node array to m values.

    With ``half=True`` only i = 0..floor(n/2) are evaluated, the interior
    nodes counting twice; this equals the full sum when g(t) = g(1 - t).
    """
    n = lat.n
    t = lat.nodes()
    if not half:
        return np.sum(np.asarray(g(t))) / n
    m = n // 2 + 1
    w = np.full(m, 2.0)
    w[0] = 1.0
    if n % 2 == 0:
        w[-1] = 1.0
    return np.dot(w, np.asarray(g(t[:m]))) / n


class ChebSeries:
    """Finite Chebyshev series sum_k c_k eta_k on [-1, 1]^d."""

    def __init__(self, dim: int, coeffs: Mapping[Sequence[int], float]):
        self.dim = dim
        items = {}
        for k, c in coeffs.items():
            k = tuple(int(x) for x in k)
            if len(k) != dim or any(x < 0 for x in k):
                raise ValueError(f"bad multi-index {k} for dimension {dim}")
            if not math.isfinite(c):
                raise ValueError(f"non-finite coefficient at {k}")
            items[k] = float(c)
        self.coeffs: dict[MultiIndex, float] = dict(sorted(items.items()))

    @classmethod
    def random(cls, s: IndexSet, rng: np.random.Generator) -> "ChebSeries":
        vals = rng.uniform(-1.0, 1.0, size=len(s))
        return cls(s.dim, dict(zip(s.members, vals)))

    @classmethod
    def basis(cls, k: Sequence[int]) -> "ChebSeries":
        return cls(len(k), {tuple(k): 1.0})

    def __call__(self, x) -> np.ndarray:
        pts = np.atleast_2d(np.asarray(x, dtype=float))
        out = np.zeros(pts.shape[0])
        for k, c in self.coeffs.items():
            out += c * eval_cheb_basis(k, pts)
        return out

    def __getitem__(self, k) -> float:
        return self.coeffs.get(tuple(k), 0.0)

    def max_error(self, other: "ChebSeries") -> float:
        keys = set(self.coeffs) | set(other.coeffs)
        return max((abs(self[k] - other[k]) for k in keys), default=0.0)

    def __repr__(self) -> str:
        return f"ChebSeries(d={self.dim}, terms={len(self.coeffs)})"


def format_series(f: ChebSeries) -> str:
    lines = [f"d {f.dim}"]
    lines += [" ".join(map(str, k)) + f" {c:.17g}" for k, c in f.coeffs.items()]
    return "\n".join(lines) + "\n"


def parse_series(text: str) -> ChebSeries:
    dim = None
    coeffs = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if dim is None:
            if parts[0] != "d" or len(parts) != 2:
                raise ValueError(f"line {lineno}: expected header 'd <dim>'")
            dim = int(parts[1])
            continue
        if len(parts) != dim + 1:
            raise ValueError(f"line {lineno}: expected {dim} indices and a coefficient")
        coeffs[tuple(int(p) for p in parts[:-1])] = float(parts[-1])
    if dim is None:
        raise ValueError("missing 'd <dim>' header")
    return ChebSeries(dim, coeffs)


def write_series(f: ChebSeries, out: TextIO | str) -> None:
    if isinstance(out, str):
        with open(out, "w") as fh:
            fh.write(format_series(f))
    else:
        out.write(format_series(f))


def read_series(src: TextIO | str) -> ChebSeries:
    if isinstance(src, str):
        with open(src) as fh:
            return parse_series(fh.read())
    return parse_series(src.read())


def reconstruct(lat: Rank1Lattice, f: Callable[[np.ndarray], np.ndarray], s: IndexSet,
                mode: str = "a") -> ChebSeries:
    """Lattice estimates of the Chebyshev coefficients of ``f`` over ``s``.

    Modes
    -----
    a
        Q(f(cos 2 pi t) eta_k(cos 2 pi t)).
    b
        Q(f(cos 2 pi t) sqrt(2)^{|k|_0} cos(2 pi k.t)).
    c
        mode b divided by the aliasing count c_k.
    """
    if mode not in ("a", "b", "c"):
        raise ValueError(f"unknown mode {mode!r}")
    if s.dim != lat.dim:
        raise ValueError("set and lattice dimensions differ")
    n = lat.n
    x = lat.cosine_nodes()
    fx = np.asarray(f(x), dtype=float)
    idx = np.arange(n, dtype=np.int64)
    out = {}
    for k in s:
        if mode == "a":
            basis = eval_cheb_basis(k, x)
        else:
            m = dot(k, lat.cfg.z) % n
            basis = math.sqrt(2.0) ** l0(k) * np.cos(2 * np.pi * ((idx * m) % n) / n)
        c = float(np.dot(fx, basis)) / n
        if mode == "c":
            c /= aliasing_count_ck(k, lat.cfg)
        out[k] = c
    return ChebSeries(s.dim, out)
