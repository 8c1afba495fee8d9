"""Explicit matroids given by their basis family on a small labelled ground set.

Subsets of the ground set are int bitmasks: bit ``i`` is the element
``labels[i]``. Ground sets are capped at :data:`MAX_ELEMENTS` so that every
subset fits one word and full rank tables (``2**n`` entries) stay cheap.
"""

from __future__ import annotations

import os
from contextlib import contextmanager
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

MAX_ELEMENTS = 16

# Re-run the exchange axiom on every derived matroid (slow; meant for tests).
CHECK_AXIOMS = os.environ.get("NEARBINARY_CHECK_AXIOMS", "") not in ("", "0")


class MatroidError(Exception):
    pass


class EmptyBases(MatroidError):
    pass


class MixedCardinality(MatroidError):
    pass


class ExchangeFailure(MatroidError):
    def __init__(self, b1, b2, x):
        self.b1, self.b2, self.x = b1, b2, x
        super().__init__(
            f"basis exchange fails: B1={''.join(b1)} B2={''.join(b2)} x={x}"
        )


class ElementNotInGroundSet(MatroidError, KeyError):
    pass


class LabelCollision(MatroidError):
    pass


class GroundSetOverflow(MatroidError):
    pass


@contextmanager
def axiom_checks(enabled: bool = True):
    """Temporarily force exchange-axiom validation of every derived matroid."""
    global CHECK_AXIOMS
    saved = CHECK_AXIOMS
    CHECK_AXIOMS = enabled
    try:
        yield
    finally:
        CHECK_AXIOMS = saved


def bits(mask: int) -> Iterator[int]:
    """Positions of the set bits of ``mask``, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def drop_bit(mask: int, i: int) -> int:
    """Remove position ``i`` from ``mask`` and shift the higher bits down."""
    return ((mask >> (i + 1)) << i) | (mask & ((1 << i) - 1))


def compress(mask: int, keep: Sequence[int]) -> int:
    """Re-index ``mask`` onto the positions listed in ``keep``."""
    out = 0
    for j, i in enumerate(keep):
        if mask >> i & 1:
            out |= 1 << j
    return out


_POPCOUNT: dict[int, np.ndarray] = {}


def _popcounts(n: int) -> np.ndarray:
    pc = _POPCOUNT.get(n)
    if pc is None:
        idx = np.arange(1 << n, dtype=np.int64)
        pc = np.zeros(1 << n, dtype=np.int8)
        for i in range(n):
            pc += ((idx >> i) & 1).astype(np.int8)
        _POPCOUNT[n] = pc
    return pc


def _halves(arr: np.ndarray, n: int, i: int):
    """Views of ``arr`` split on bit ``i``: (masks without i, masks with i)."""
    v = arr.reshape(1 << (n - i - 1), 2, 1 << i)
    return v[:, 0, :], v[:, 1, :]


class Matroid:
    """A matroid on ``labels`` given by a family of bases (int bitmasks).

    Instances are immutable; derived tables are cached on first use.
    """

    __slots__ = ("labels", "bases", "r", "_index", "__dict__")

    def __init__(self, labels: Iterable[str], bases: Iterable[int], *, check: bool = False):
        labels = tuple(str(x) for x in labels)
        if len(set(labels)) != len(labels):
            raise LabelCollision(f"repeated labels in {labels}")
        if len(labels) > MAX_ELEMENTS:
            raise GroundSetOverflow(
                f"{len(labels)} elements exceeds the explicit limit of {MAX_ELEMENTS}"
            )
        bases = frozenset(int(b) for b in bases)
        if not bases:
            raise EmptyBases("a matroid needs at least one basis")
        sizes = {b.bit_count() for b in bases}
        if len(sizes) != 1:
            raise MixedCardinality(f"bases of sizes {sorted(sizes)}")
        full = (1 << len(labels)) - 1
        if any(b & ~full for b in bases):
            raise ValueError("basis mentions a position outside the ground set")
        self.labels = labels
        self.bases = bases
        self.r = sizes.pop()
        self._index = {x: i for i, x in enumerate(labels)}
        if check or CHECK_AXIOMS:
            check_exchange(self)

    # construction helpers -------------------------------------------------

    @classmethod
    def from_sets(cls, labels: Iterable[str], bases: Iterable[Iterable[str]], **kw) -> "Matroid":
        labels = tuple(labels)
        index = {x: i for i, x in enumerate(labels)}
        masks = []
        for b in bases:
            m = 0
            for x in b:
                if x not in index:
                    raise ElementNotInGroundSet(x)
                m |= 1 << index[x]
            masks.append(m)
        return cls(labels, masks, **kw)

    # basic accessors ------------------------------------------------------

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def full(self) -> int:
        return (1 << len(self.labels)) - 1

    @property
    def corank(self) -> int:
        return len(self.labels) - self.r

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise ElementNotInGroundSet(label) from None

    def mask(self, subset: int | str | Iterable[str]) -> int:
        """Normalise a mask, a single label or an iterable of labels to a mask."""
        if isinstance(subset, (int, np.integer)):
            subset = int(subset)
            if subset & ~self.full:
                raise ElementNotInGroundSet(f"mask {subset:#x}")
            return subset
        if isinstance(subset, str):
            return 1 << self.index(subset)
        m = 0
        for x in subset:
            m |= 1 << self.index(x)
        return m

    def subset(self, mask: int) -> tuple[str, ...]:
        return tuple(self.labels[i] for i in bits(mask))

    def word(self, mask: int) -> str:
        return "".join(self.subset(mask))

    def __repr__(self) -> str:
        return f"<Matroid rank {self.r} on {self.size} elements, {len(self.bases)} bases>"

    # equality compares label-level structure, not bit positions
    @cached_property
    def key(self) -> tuple:
        return (
            frozenset(self.labels),
            frozenset(frozenset(self.subset(b)) for b in self.bases),
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matroid):
            return NotImplemented
        return self.r == other.r and len(self.bases) == len(other.bases) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    # tables ---------------------------------------------------------------

    @cached_property
    def bases_array(self) -> np.ndarray:
        return np.array(sorted(self.bases), dtype=np.int64)

    @cached_property
    def independent_table(self) -> np.ndarray:
        n = self.size
        ind = np.zeros(1 << n, dtype=bool)
        ind[self.bases_array] = True
        for i in range(n):
            lo, hi = _halves(ind, n, i)
            lo |= hi
        ind.flags.writeable = False
        return ind

    @cached_property
    def rank_table(self) -> np.ndarray:
        n = self.size
        rk = np.where(self.independent_table, _popcounts(n), 0).astype(np.int8)
        for i in range(n):
            lo, hi = _halves(rk, n, i)
            np.maximum(hi, lo, out=hi)
        rk.flags.writeable = False
        return rk

    def rank(self, subset=None) -> int:
        if subset is None:
            return self.r
        return int(self.rank_table[self.mask(subset)])

    def is_independent(self, subset) -> bool:
        return bool(self.independent_table[self.mask(subset)])

    def is_basis(self, subset) -> bool:
        return self.mask(subset) in self.bases

    def closure(self, subset) -> int:
        a = self.mask(subset)
        rk = self.rank_table
        ra = rk[a]
        out = a
        for i in range(self.size):
            if not a >> i & 1 and rk[a | 1 << i] == ra:
                out |= 1 << i
        return out

    @cached_property
    def _closed_table(self) -> np.ndarray:
        n = self.size
        rk = self.rank_table
        closed = np.ones(1 << n, dtype=bool)
        for i in range(n):
            c_lo, _ = _halves(closed, n, i)
            r_lo, r_hi = _halves(rk, n, i)
            c_lo &= r_hi > r_lo
        return closed

    @cached_property
    def _circuit_masks(self) -> tuple[int, ...]:
        n = self.size
        ind = self.independent_table
        minimal = ~ind
        for i in range(n):
            _, m_hi = _halves(minimal, n, i)
            i_lo, _ = _halves(ind, n, i)
            m_hi &= i_lo
        return tuple(int(x) for x in np.flatnonzero(minimal))

    def circuits(self) -> tuple[int, ...]:
        """All circuits, as masks in increasing order."""
        return self._circuit_masks

    def flats(self) -> tuple[int, ...]:
        return tuple(int(x) for x in np.flatnonzero(self._closed_table))

    def hyperplanes(self) -> tuple[int, ...]:
        sel = self._closed_table & (self.rank_table == self.r - 1)
        return tuple(int(x) for x in np.flatnonzero(sel))

    def cocircuits(self) -> tuple[int, ...]:
        full = self.full
        return tuple(sorted(full ^ h for h in self.hyperplanes()))

    def loops(self) -> int:
        union = 0
        for b in self.bases:
            union |= b
        return self.full ^ union

    def coloops(self) -> int:
        inter = self.full
        for b in self.bases:
            inter &= b
        return inter

    def is_loop(self, label: str) -> bool:
        return bool(self.loops() >> self.index(label) & 1)

    def is_coloop(self, label: str) -> bool:
        return bool(self.coloops() >> self.index(label) & 1)

    def parallel_classes(self) -> list[int]:
        """Rank-one flats minus loops, i.e. the points of the simplification."""
        loops = self.loops()
        seen = loops
        out = []
        for i in range(self.size):
            if seen >> i & 1:
                continue
            cls_ = self.closure(1 << i) & ~loops
            out.append(cls_)
            seen |= cls_
        return out

    def series_classes(self) -> list[int]:
        return self.dual().parallel_classes()

    # derived matroids -----------------------------------------------------

    def dual(self) -> "Matroid":
        full = self.full
        return Matroid(self.labels, (full ^ b for b in self.bases))

    def _remove(self, i: int, bases: Iterable[int]) -> "Matroid":
        labels = self.labels[:i] + self.labels[i + 1:]
        return Matroid(labels, (drop_bit(b, i) for b in bases))

    def delete(self, label: str) -> "Matroid":
        i = self.index(label)
        bit = 1 << i
        kept = [b for b in self.bases if not b & bit]
        if not kept:  # coloop
            kept = [b ^ bit for b in self.bases]
        return self._remove(i, kept)

    def contract(self, label: str) -> "Matroid":
        i = self.index(label)
        bit = 1 << i
        kept = [b ^ bit for b in self.bases if b & bit]
        if not kept:  # loop
            kept = list(self.bases)
        return self._remove(i, kept)

    def minor(self, contract=0, delete=0) -> "Matroid":
        c, d = self.mask(contract), self.mask(delete)
        if c & d:
            raise ValueError("contract and delete sets overlap")
        m = self
        for x in self.subset(c):
            m = m.contract(x)
        for x in self.subset(d):
            m = m.delete(x)
        return m

    def restrict(self, subset) -> "Matroid":
        return self.minor(0, self.full ^ self.mask(subset))

    def relabel(self, mapping: Mapping[str, str]) -> "Matroid":
        return Matroid((mapping.get(x, x) for x in self.labels), self.bases)

    def reorder(self, labels: Sequence[str]) -> "Matroid":
        """Same matroid with bit positions following ``labels``."""
        if sorted(labels) != sorted(self.labels):
            raise ValueError("reorder needs a permutation of the labels")
        pos = [self.index(x) for x in labels]
        return Matroid(labels, (compress(b, pos) for b in self.bases))


# ---------------------------------------------------------------------------


def check_exchange(m: Matroid) -> None:
    """Raise :class:`ExchangeFailure` unless the bases satisfy exchange."""
    bases = m.bases
    arr = m.bases_array
    full = m.full
    for b1 in sorted(bases):
        outside = full & ~b1
        for x in bits(b1):
            s = b1 ^ (1 << x)
            ys = 0
            for y in bits(outside):
                if s | (1 << y) in bases:
                    ys |= 1 << y
            bad = (((arr >> x) & 1) == 0) & ((arr & ys) == 0)
            if bad.any():
                b2 = int(arr[np.argmax(bad)])
                raise ExchangeFailure(m.subset(b1), m.subset(b2), m.labels[x])


def validate(bases: Iterable, ground: Sequence[str]) -> Matroid:
    """Build a matroid from label sets or masks, checking every axiom."""
    bases = list(bases)
    if not bases:
        raise EmptyBases("a matroid needs at least one basis")
    if all(isinstance(b, (int, np.integer)) for b in bases):
        return Matroid(ground, bases, check=True)
    return Matroid.from_sets(ground, bases, check=True)


def uniform(r: int, n: int, labels: Sequence[str] | None = None) -> Matroid:
    if not 0 <= r <= n:
        raise ValueError(f"no uniform matroid U({r},{n})")
    labels = tuple(labels) if labels is not None else default_labels(n)
    return Matroid(labels, (sum(1 << i for i in c) for c in combinations(range(n), r)))


_ALPHABET = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"


def default_labels(n: int) -> tuple[str, ...]:
    if n <= len(_ALPHABET):
        return tuple(_ALPHABET[:n])
    return tuple(f"x{i}" for i in range(1, n + 1))


def fresh_labels(taken: Iterable[str], k: int) -> list[str]:
    """``k`` labels not in ``taken``; single letters first, then ``x1, x2, ...``."""
    taken = set(taken)
    out = [c for c in _ALPHABET if c not in taken][:k]
    i = 1
    while len(out) < k:
        cand = f"x{i}"
        if cand not in taken:
            out.append(cand)
        i += 1
    return out


def direct_sum(m1: Matroid, m2: Matroid) -> Matroid:
    clash = set(m1.labels) & set(m2.labels)
    if clash:
        raise LabelCollision(f"labels {sorted(clash)} occur on both sides")
    shift = m1.size
    return Matroid(
        m1.labels + m2.labels, (b1 | (b2 << shift) for b1 in m1.bases for b2 in m2.bases)
    )


def empty_matroid() -> Matroid:
    return Matroid((), [0])


# connectivity ---------------------------------------------------------------


@dataclass(frozen=True)
class ConnectivityReport:
    is_connected: bool
    is_three_connected: bool
    # (side, k): a k-separation (A, E - A) with lambda(A) = k - 1; the side
    # returned always contains the first element.
    witness_separation: tuple[int, int] | None = None


def connectivity_function(m: Matroid) -> np.ndarray:
    """lambda(A) = r(A) + r(E - A) - r(M) for every mask A."""
    rk = m.rank_table.astype(np.int16)
    return rk + rk[::-1] - m.r  # reversal maps A to E - A


def connectivity(m: Matroid) -> ConnectivityReport:
    n = m.size
    if n <= 1:
        return ConnectivityReport(True, True, None)
    lam = connectivity_function(m)
    pc = _popcounts(n)
    idx = np.arange(1 << n, dtype=np.int64)
    # one representative per separation: sides holding element 0, proper
    side = ((idx & 1) == 1) & (idx != m.full)
    one_sep = side & (lam == 0)
    if one_sep.any():
        a = int(np.flatnonzero(one_sep)[0])
        return ConnectivityReport(False, False, (a, 1))
    two_sep = side & (lam <= 1) & (pc >= 2) & (pc <= n - 2)
    if two_sep.any():
        a = int(np.flatnonzero(two_sep)[0])
        return ConnectivityReport(True, False, (a, 2))
    return ConnectivityReport(True, True, None)


def is_connected(m: Matroid) -> bool:
    return connectivity(m).is_connected


def components(m: Matroid) -> list[int]:
    """Connected components as masks, ordered by their least element."""
    parent = list(range(m.size))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for c in m.circuits():
        first = None
        for i in bits(c):
            if first is None:
                first = find(i)
            else:
                parent[find(i)] = first
    groups: dict[int, int] = {}
    for i in range(m.size):
        groups[find(i)] = groups.get(find(i), 0) | (1 << i)
    return sorted(groups.values(), key=lambda g: g & -g)


def two_separations(m: Matroid) -> list[int]:
    """Sides A (holding element 0) of exact 2-separations, ascending."""
    n = m.size
    if n < 4:
        return []
    lam = connectivity_function(m)
    pc = _popcounts(n)
    idx = np.arange(1 << n, dtype=np.int64)
    sel = ((idx & 1) == 1) & (lam == 1) & (pc >= 2) & (pc <= n - 2)
    return [int(a) for a in np.flatnonzero(sel)]


# series / parallel extension ------------------------------------------------


def add_parallel(m: Matroid, label: str, new: str) -> Matroid:
    """Add ``new`` parallel to ``label`` (a loop gets a new loop)."""
    if new in m._index:
        raise LabelCollision(new)
    if m.size + 1 > MAX_ELEMENTS:
        raise GroundSetOverflow("parallel extension exceeds the explicit limit")
    i = m.index(label)
    nb = 1 << m.size
    out = set(m.bases)
    for b in m.bases:
        if b >> i & 1:
            out.add((b ^ (1 << i)) | nb)
    return Matroid(m.labels + (new,), out)


def add_series(m: Matroid, label: str, new: str) -> Matroid:
    """Add ``new`` in series with ``label`` (a coloop gets a new coloop)."""
    return add_parallel(m.dual(), label, new).dual()


def series_parallel_extend(
    m: Matroid, plan: Mapping[str, tuple[int, int]], names: Iterable[str] | None = None
) -> Matroid:
    """Add ``s`` series and ``p`` parallel mates to each planned element.

    Series mates are added before parallel ones. New labels come from
    ``names`` when given, otherwise from :func:`fresh_labels`.
    """
    total = sum(s + p for s, p in plan.values())
    if any(s < 0 or p < 0 for s, p in plan.values()):
        raise ValueError("extension counts must be non-negative")
    if m.size + total > MAX_ELEMENTS:
        raise GroundSetOverflow(f"{m.size + total} elements exceeds {MAX_ELEMENTS}")
    new = list(names) if names is not None else fresh_labels(m.labels, total)
    if len(new) < total:
        raise ValueError("not enough names for the new elements")
    it = iter(new)
    for x in m.labels:
        if x not in plan:
            continue
        s, p = plan[x]
        for _ in range(s):
            m = add_series(m, x, next(it))
    for x in list(plan):
        for _ in range(plan[x][1]):
            m = add_parallel(m, x, next(it))
    return m
