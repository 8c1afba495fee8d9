"""Circuit-hyperplane relaxation, tightening, and lazily relaxed binary matroids."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import core
from .core import GroundSetOverflow, MAX_ELEMENTS, Matroid, MatroidError, bits, drop_bit
from .gf2 import MAX_LAZY_COLUMNS, BinaryMatrix, gf2_rank, vector_matroid


class NotACircuitHyperplane(MatroidError):
    pass


class NotAFreeBasis(MatroidError):
    pass


def circuit_hyperplanes(m: Matroid) -> tuple[int, ...]:
    circuits = set(m.circuits())
    return tuple(h for h in m.hyperplanes() if h in circuits)


def is_circuit_hyperplane(m: Matroid, subset) -> bool:
    return m.mask(subset) in circuit_hyperplanes(m)


def relax(m: Matroid, subset) -> Matroid:
    h = m.mask(subset)
    if h not in circuit_hyperplanes(m):
        raise NotACircuitHyperplane(f"{m.word(h) or '-'} is not a circuit-hyperplane")
    return Matroid(m.labels, m.bases | {h}, check=True)


def is_free_basis(m: Matroid, subset) -> bool:
    """B is a basis, B + e is a circuit for each e outside B, and B, E - B are nonempty."""
    b = m.mask(subset)
    if b not in m.bases or b == 0 or b == m.full:
        return False
    bases = m.bases
    inside = list(bits(b))
    for e in bits(m.full ^ b):
        eb = 1 << e
        for f in inside:
            if (b ^ (1 << f)) | eb not in bases:
                return False
    return True


def free_bases(m: Matroid) -> tuple[int, ...]:
    if m.r == 0 or m.corank == 0:
        return ()
    return tuple(b for b in sorted(m.bases) if is_free_basis(m, b))


def tighten(m: Matroid, subset) -> Matroid:
    b = m.mask(subset)
    if not is_free_basis(m, b):
        raise NotAFreeBasis(f"{m.word(b) or '-'} is not a free basis")
    return Matroid(m.labels, m.bases - {b}, check=True)


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RelaxedBinaryMatroid:
    """A binary matrix whose listed column sets are relaxed in order.

    ``relaxed[k]`` is a circuit-hyperplane of the matroid obtained by relaxing
    ``relaxed[:k]``. Ranks agree with the matrix except on exactly the
    relaxed sets, whose rank goes up by one.
    """

    base: BinaryMatrix
    relaxed: tuple[int, ...] = ()

    def __post_init__(self):
        if self.base.ncols > MAX_LAZY_COLUMNS:
            raise GroundSetOverflow(f"lazy matroids hold at most {MAX_LAZY_COLUMNS} columns")
        if len(self.relaxed) > 2:
            raise ValueError("at most two relaxed sets")
        if len(self.relaxed) == 2 and self.relaxed[0] & self.relaxed[1]:
            raise ValueError("relaxed sets must be disjoint")

    @property
    def labels(self) -> tuple[str, ...]:
        return self.base.labels

    @property
    def size(self) -> int:
        return self.base.ncols

    @property
    def full(self) -> int:
        return (1 << self.size) - 1

    @property
    def r(self) -> int:
        return self.base.rank()

    def mask(self, subset) -> int:
        if isinstance(subset, int):
            return subset
        if isinstance(subset, str):
            subset = [subset]
        m = 0
        for x in subset:
            if x not in self.labels:
                raise core.ElementNotInGroundSet(x)
            m |= 1 << self.labels.index(x)
        return m

    def word(self, mask: int) -> str:
        return "".join(self.labels[i] for i in bits(mask))

    def rank(self, subset=None, layers: int | None = None) -> int:
        """Rank in the matroid with the first ``layers`` relaxations applied."""
        a = self.full if subset is None else self.mask(subset)
        rk = gf2_rank(self.base.columns[i] for i in bits(a))
        sets = self.relaxed if layers is None else self.relaxed[:layers]
        return rk + 1 if a in sets else rk

    def is_circuit_hyperplane(self, subset, layers: int | None = None) -> bool:
        x = self.mask(subset)
        r = self.rank(None, layers)
        k = x.bit_count()
        if self.rank(x, layers) != k - 1 or k - 1 != r - 1:
            return False
        if any(self.rank(x ^ (1 << f), layers) != k - 1 for f in bits(x)):
            return False
        return all(self.rank(x | (1 << e), layers) == r for e in bits(self.full ^ x))

    def is_free_basis(self, subset) -> bool:
        b = self.mask(subset)
        k = b.bit_count()
        if b in (0, self.full) or k != self.r or self.rank(b) != k:
            return False
        for e in bits(self.full ^ b):
            be = b | (1 << e)
            if self.rank(be) != k:
                return False
            if any(self.rank(be ^ (1 << f)) != k for f in bits(b)):
                return False
        return True

    def is_valid(self) -> bool:
        return all(self.is_circuit_hyperplane(x, k) for k, x in enumerate(self.relaxed))

    def materialize(self) -> Matroid:
        if self.size > MAX_ELEMENTS:
            raise GroundSetOverflow(
                f"{self.size} elements cannot be materialised (limit {MAX_ELEMENTS})"
            )
        m = vector_matroid(self.base)
        if self.relaxed:
            m = Matroid(m.labels, m.bases | set(self.relaxed), check=True)
        return m

    # Kahn's rules, one element at a time ------------------------------------

    def _degenerate(self, keep_basis: int, removed: int) -> "RelaxedBinaryMatroid":
        """The matroid whose only basis is ``keep_basis`` (after dropping ``removed``)."""
        labels = self.labels[:removed] + self.labels[removed + 1:]
        b = drop_bit(keep_basis, removed)
        rows = list(bits(b))
        cols = tuple((1 << rows.index(i)) if b >> i & 1 else 0 for i in range(len(labels)))
        return RelaxedBinaryMatroid(BinaryMatrix(len(rows), cols, labels))

    def _step(self, label: str, contract: bool) -> "RelaxedBinaryMatroid":
        i = self.labels.index(label)
        bit = 1 << i
        if not self.relaxed:
            base = self.base.contract(label) if contract else self.base.delete(label)
            return RelaxedBinaryMatroid(base)
        *inner_sets, outer = self.relaxed
        inner = RelaxedBinaryMatroid(self.base, tuple(inner_sets))
        inside = bool(outer & bit)
        if contract and not inside:
            # M'/e = M/e: the outer relaxation is absorbed
            return inner._step(label, True)
        if not contract and inside:
            return inner._step(label, False)
        if contract:
            if inner.rank(bit) == 0:
                # e is a loop of the inner matroid; only the relaxed basis contains it
                return self._degenerate(outer ^ bit, i)
            shrunk = inner._step(label, True)
            new = drop_bit(outer ^ bit, i)
        else:
            if inner.rank(inner.full ^ bit) < inner.r:
                # e is a coloop of the inner matroid; only the relaxed basis avoids it
                return self._degenerate(outer, i)
            shrunk = inner._step(label, False)
            new = drop_bit(outer, i)
        out = RelaxedBinaryMatroid(shrunk.base, shrunk.relaxed + (new,))
        if not out.is_circuit_hyperplane(new, len(shrunk.relaxed)):
            raise RuntimeError("relaxed set stopped being a circuit-hyperplane")
        return out

    def contract(self, label: str) -> "RelaxedBinaryMatroid":
        return self._step(label, True)

    def delete(self, label: str) -> "RelaxedBinaryMatroid":
        return self._step(label, False)

    def relax(self, subset) -> "RelaxedBinaryMatroid":
        x = self.mask(subset)
        if not self.is_circuit_hyperplane(x):
            raise NotACircuitHyperplane(f"{self.word(x)} is not a circuit-hyperplane")
        return RelaxedBinaryMatroid(self.base, self.relaxed + (x,))


def lazy_minor(m: RelaxedBinaryMatroid, contract=(), delete=()) -> RelaxedBinaryMatroid:
    c = [contract] if isinstance(contract, str) else list(contract)
    d = [delete] if isinstance(delete, str) else list(delete)
    if set(c) & set(d):
        raise ValueError("contract and delete sets overlap")
    for x in c + d:
        if x not in m.labels:
            raise core.ElementNotInGroundSet(x)
    for x in c:
        m = m.contract(x)
    for x in d:
        m = m.delete(x)
    return m


def from_matrix(a: BinaryMatrix, relaxed: Sequence = ()) -> RelaxedBinaryMatroid:
    """Relax the given column sets of ``a`` one after another (each checked)."""
    out = RelaxedBinaryMatroid(a)
    for s in relaxed:
        out = out.relax(s)
    return out
