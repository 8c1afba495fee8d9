"""Named matroids and families: whirls, the Q6/P6/U36 chain, K, spikes, matrix Z."""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product

from .core import Matroid, MatroidError, direct_sum, series_parallel_extend, uniform
from .gf2 import BinaryMatrix, graphic, projective_geometry, vector_matroid
from .minors import MinorWitness, minor_witnesses
from .relaxed import RelaxedBinaryMatroid, circuit_hyperplanes, lazy_minor, relax
from .sums import twosum


class UnknownName(MatroidError, KeyError):
    def __str__(self):
        return f"unknown matroid name {self.args[0]!r}"


class BadRank(MatroidError, ValueError):
    pass


class ConstraintUnsatisfiable(MatroidError):
    pass


class WitnessNotFound(MatroidError):
    pass


def wheel_edges(r: int) -> list[tuple[int, int]]:
    """Spokes first (hub 0 to rim vertex i), then rim edges (i, i+1)."""
    spokes = [(0, i) for i in range(1, r + 1)]
    rim = [(i, i % r + 1) for i in range(1, r + 1)]
    return spokes + rim


def wheel(r: int) -> Matroid:
    return graphic(wheel_edges(r))


def rim(r: int) -> int:
    return ((1 << r) - 1) << r


def whirl(r: int) -> Matroid:
    return relax(wheel(r), rim(r))


def mk4() -> Matroid:
    return wheel(3)


def _first_relaxation(m: Matroid) -> Matroid:
    return relax(m, circuit_hyperplanes(m)[0])


@lru_cache(maxsize=None)
def _chain() -> tuple[Matroid, Matroid, Matroid, Matroid]:
    w3 = whirl(3)
    q6 = _first_relaxation(w3)
    p6 = _first_relaxation(q6)
    u36 = _first_relaxation(p6)
    return w3, q6, p6, u36


def q6() -> Matroid:
    return _chain()[1]


def p6() -> Matroid:
    return _chain()[2]


def r6() -> Matroid:
    left = uniform(2, 4, "abcp")
    right = uniform(2, 4, "defq")
    return twosum(left, right, "p", "q")


def k_matroid() -> Matroid:
    """U(2,4) on abcd with e, f, g added parallel to a, b, c."""
    return series_parallel_extend(uniform(2, 4), {"a": (0, 1), "b": (0, 1), "c": (0, 1)}, "efg")


def fano() -> Matroid:
    return vector_matroid(projective_geometry(3))


def fano_minus() -> Matroid:
    return _first_relaxation(fano())


def u24_plus(coloop: bool) -> Matroid:
    extra = Matroid(("e",), [1] if coloop else [0])
    return direct_sum(uniform(2, 4), extra)


# spikes --------------------------------------------------------------------


def spike_matrix(r: int) -> BinaryMatrix:
    """[I_r | J_r - I_r] with columns e1 .. e2r."""
    if r < 4 or r % 2:
        raise BadRank(f"tipless spikes here need an even rank >= 4, got {r}")
    if 2 * r > 32:
        raise BadRank("spike exceeds the lazy column limit")
    full = (1 << r) - 1
    cols = tuple(1 << i for i in range(r)) + tuple(full ^ (1 << i) for i in range(r))
    return BinaryMatrix(r, cols, tuple(f"e{j}" for j in range(1, 2 * r + 1)))


def spike_pair(r: int) -> tuple[int, int]:
    """Masks of {e2, ..., e(r+1)} and its complement."""
    x = ((1 << r) - 1) << 1
    return x, ((1 << 2 * r) - 1) ^ x


def tipless_spike(r: int, lazy: bool = False):
    a = spike_matrix(r)
    if lazy or a.ncols > 16:
        return RelaxedBinaryMatroid(a)
    return vector_matroid(a)


def doubly_relaxed_spike(r: int, lazy: bool = False):
    a = spike_matrix(r)
    x, y = spike_pair(r)
    m = RelaxedBinaryMatroid(a).relax(x).relax(y)
    if lazy or a.ncols > 16:
        return m
    return m.materialize()


# matrix Z ------------------------------------------------------------------


@dataclass(frozen=True)
class SpikeZParams:
    k: int

    def __post_init__(self):
        if self.k < 1 or self.k % 2 == 0:
            raise ConstraintUnsatisfiable(f"k must be odd, got {self.k}")

    @property
    def n(self) -> int:
        return 2**self.k + self.k + 1

    @property
    def t(self) -> int:
        return 2**self.k + self.k - 1


@dataclass(frozen=True)
class Section4Build:
    params: SpikeZParams
    matrix: BinaryMatrix
    alpha: tuple[int, ...]
    beta: tuple[int, ...]
    gamma: int
    pg_columns: tuple[int, ...]  # 0-based positions of the projective-geometry block
    doubly_relaxed: RelaxedBinaryMatroid

    @property
    def left(self) -> int:
        return (1 << self.params.n) - 1

    @property
    def right(self) -> int:
        n = self.params.n
        return ((1 << n) - 1) << n


def section4_matrix(k: int = 3) -> Section4Build:
    """Build the rank-n matrix Z (2n columns) and relax both halves.

    Rows and columns are 1-based in the comments. Columns 1..n-1 are unit
    vectors and column n is their sum, so the left half is a spanning-free
    circuit inside the hyperplane x_n = 0. In the right half, columns
    n+2..2n-1 carry a block W in rows 1..n-2 (the projective geometry sits in
    its top k rows), row n-1 holds alpha_i + 1 and row n holds 1. Column n+1
    is (beta, gamma, 1) and column 2n is e_(n-1) + e_n, which makes every row
    of the right half sum to zero.
    """
    p = SpikeZParams(k)
    n, t = p.n, p.t
    if 2 * n > 32:
        raise ConstraintUnsatisfiable(f"2n = {2 * n} columns exceeds the lazy limit")
    pg = projective_geometry(k).columns
    npg = len(pg)
    # W: rows 0..t-1, columns 0..t-1 (0-based), block [[A, 0], [L, R]]
    w_cols = [0] * t
    for j, v in enumerate(pg):
        w_cols[j] = v  # rows 0..k-1
    units = [j for j, v in enumerate(pg) if v.bit_count() == 1]
    others = [j for j in range(t) if j not in units]
    for row, j in enumerate(others):
        w_cols[j] |= 1 << (k + row)
    if len(others) != t - k:
        raise ConstraintUnsatisfiable("unexpected projective-geometry layout")
    alpha = tuple(c.bit_count() % 2 for c in w_cols)
    beta = tuple(sum(w_cols[i] >> j & 1 for i in range(t)) % 2 for j in range(t))
    gamma = (1 + sum(beta)) % 2
    if sum(beta) % 2 != sum(alpha) % 2:
        raise ConstraintUnsatisfiable("row and column parities disagree")
    row_a, row_b = 1 << (n - 2), 1 << (n - 1)  # rows n-1 and n
    left = [1 << i for i in range(n - 1)] + [(1 << (n - 1)) - 1]
    right = [sum(1 << j for j in range(t) if beta[j]) | (row_a if gamma else 0) | row_b]
    for i in range(t):
        right.append(w_cols[i] | (row_a if alpha[i] ^ 1 else 0) | row_b)
    right.append(row_a | row_b)
    cols = tuple(left + right)
    labels = tuple(f"c{j}" for j in range(1, 2 * n + 1))
    z = BinaryMatrix(n, cols, labels)
    _check_section4(z, n)
    lazy = RelaxedBinaryMatroid(z)
    left_mask = (1 << n) - 1
    right_mask = left_mask << n
    if not lazy.is_circuit_hyperplane(right_mask):
        raise ConstraintUnsatisfiable("right half is not a circuit-hyperplane")
    lazy = lazy.relax(right_mask)
    if not lazy.is_circuit_hyperplane(left_mask):
        raise ConstraintUnsatisfiable("left half is not a circuit-hyperplane after relaxing")
    lazy = lazy.relax(left_mask)
    pg_cols = tuple(n + 1 + j for j in range(npg))
    return Section4Build(p, z, alpha, beta, gamma, pg_cols, lazy)


def _check_section4(z: BinaryMatrix, n: int) -> None:
    even = [c.bit_count() % 2 == 0 for c in z.columns]
    if even != [False] * n + [True] * n:
        raise ConstraintUnsatisfiable("only the right half may lie in the even-weight hyperplane")
    for row in z.row_words():
        if (row >> n).bit_count() % 2:
            raise ConstraintUnsatisfiable("a row of the right half has odd sum")
    if z.rank() != n:
        raise ConstraintUnsatisfiable("Z does not have full row rank")


def pg_minor_witness(build: Section4Build, search: bool = False) -> MinorWitness:
    """Contract/delete sets exhibiting PG(k-1, 2) in the doubly relaxed matroid.

    The first guess contracts the unit columns k+1..n-1 together with column
    2n (together they span every coordinate below row k) and keeps the
    projective-geometry columns. ``search=True`` skips the guess and scans
    contractions of n-k-1 left-half columns plus one right-half column.
    """
    k, n = build.params.k, build.params.n
    m = build.doubly_relaxed
    labels = m.labels
    target = vector_matroid(projective_geometry(k))
    if not search:
        contract = [labels[i] for i in range(k, n - 1)] + [labels[2 * n - 1]]
        keep = [labels[i] for i in build.pg_columns]
        delete = [x for x in labels if x not in contract and x not in keep]
        minor = lazy_minor(m, contract, delete)
        if minor.size <= 16 and minor.r == k:
            from .minors import isomorphic

            phi = isomorphic(target, minor.materialize())
            if phi is not None:
                return MinorWitness(frozenset(contract), frozenset(delete), phi)
    for combo, extra in product(combinations(range(n), n - k - 1), range(n, 2 * n)):
        contract = [labels[i] for i in combo] + [labels[extra]]
        shrunk = lazy_minor(m, contract, ())
        if shrunk.r != k or shrunk.size > 16:
            continue
        explicit = shrunk.materialize()
        w = next(minor_witnesses(explicit, target), None)
        if w is not None:
            return MinorWitness(frozenset(contract) | w.contract, w.delete, w.iso)
    raise WitnessNotFound(f"no PG({k - 1},2) minor found")


# registry ------------------------------------------------------------------


def _uniform_from_name(name: str):
    m = re.fullmatch(r"U(\d+),(\d+)", name) or re.fullmatch(r"U(\d)(\d)", name)
    if m:
        return uniform(int(m.group(1)), int(m.group(2)))
    return None


NAMED = {
    "MK4": mk4,
    "W3": lambda: whirl(3),
    "Q6": q6,
    "P6": p6,
    "R6": r6,
    "U36": lambda: uniform(3, 6),
    "K": k_matroid,
    "K*": lambda: k_matroid().dual(),
    "F7": fano,
    "F7-": fano_minus,
    "U24+U11": lambda: u24_plus(True),
    "U24+U01": lambda: u24_plus(False),
    "Wheel3": lambda: wheel(3),
    "Wheel4": lambda: wheel(4),
    "Wheel5": lambda: wheel(5),
    "Whirl3": lambda: whirl(3),
    "Whirl4": lambda: whirl(4),
    "Whirl5": lambda: whirl(5),
    "M4": lambda: tipless_spike(4),
    "M6": lambda: tipless_spike(6),
    "M4rr": lambda: doubly_relaxed_spike(4),
    "M6rr": lambda: doubly_relaxed_spike(6),
}

ALIASES = {"M(K4)": "MK4", "K4": "MK4", "Kstar": "K*", "F7minus": "F7-", "W^3": "W3"}

# excluded-minor lists of the two classes (D handled separately)
EX_Z_SPORADIC = ("Q6", "P6", "U36", "R6", "U24+U11", "U24+U01")
EX_R_SPORADIC = ("U25", "U35", "K", "K*", "R6", "U24+U11", "U24+U01")


@lru_cache(maxsize=None)
def named(name: str) -> Matroid:
    key = ALIASES.get(name, name)
    if key in NAMED:
        return NAMED[key]()
    u = _uniform_from_name(key)
    if u is not None:
        return u
    raise UnknownName(name)


def names() -> list[str]:
    return list(NAMED)


def list_entries() -> list[tuple[str, Matroid]]:
    """Named matroids plus the small uniform matroids used throughout."""
    out = [(name, named(name)) for name in NAMED]
    for r, n in ((2, 4), (2, 5), (3, 5), (1, 3), (2, 3), (2, 6), (4, 6)):
        out.append((f"U{r}{n}", uniform(r, n)))
    return out
