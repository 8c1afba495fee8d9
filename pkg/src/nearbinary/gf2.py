"""GF(2) matrices, vector matroids and the binarity test."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import GroundSetOverflow, MAX_ELEMENTS, Matroid, bits, default_labels

MAX_LAZY_COLUMNS = 32


def gf2_rank(vectors: Iterable[int]) -> int:
    """Rank over GF(2) of vectors packed as ints."""
    pivots: dict[int, int] = {}
    rank = 0
    for v in vectors:
        while v:
            top = v.bit_length() - 1
            p = pivots.get(top)
            if p is None:
                pivots[top] = v
                rank += 1
                break
            v ^= p
    return rank


@dataclass(frozen=True)
class BinaryMatrix:
    """An ``rows x len(columns)`` matrix over GF(2).

    Each column is an int whose bit ``i`` is the entry in row ``i``.
    """

    rows: int
    columns: tuple[int, ...]
    labels: tuple[str, ...]

    def __post_init__(self):
        if len(self.columns) != len(self.labels):
            raise ValueError("one label per column")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("column labels must be distinct")
        if any(c >> self.rows for c in self.columns):
            raise ValueError("column has entries below the last row")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int] | str], labels: Sequence[str] | None = None):
        rows = [[int(ch) for ch in row] for row in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(row) != ncols for row in rows):
            raise ValueError("ragged matrix")
        if any(x not in (0, 1) for row in rows for x in row):
            raise ValueError("entries must be 0 or 1")
        cols = tuple(
            sum(1 << i for i, row in enumerate(rows) if row[j]) for j in range(ncols)
        )
        labels = tuple(labels) if labels is not None else default_labels(ncols)
        return cls(len(rows), cols, labels)

    def to_rows(self) -> list[str]:
        return [
            "".join("1" if c >> i & 1 else "0" for c in self.columns) for i in range(self.rows)
        ]

    def row_words(self) -> list[int]:
        """Rows packed as ints, bit ``j`` being column ``j``."""
        return [
            sum(1 << j for j, c in enumerate(self.columns) if c >> i & 1)
            for i in range(self.rows)
        ]

    @property
    def ncols(self) -> int:
        return len(self.columns)

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def rank(self, mask: int | None = None) -> int:
        if mask is None:
            return gf2_rank(self.columns)
        return gf2_rank(self.columns[i] for i in bits(mask))

    def select(self, keep: Sequence[int]) -> "BinaryMatrix":
        return BinaryMatrix(
            self.rows, tuple(self.columns[i] for i in keep), tuple(self.labels[i] for i in keep)
        )

    def delete(self, label: str) -> "BinaryMatrix":
        i = self.index(label)
        return self.select([j for j in range(self.ncols) if j != i])

    def contract(self, label: str) -> "BinaryMatrix":
        """Quotient by the column ``label`` and drop it (a zero column is deleted)."""
        i = self.index(label)
        v = self.columns[i]
        if v == 0:
            return self.delete(label)
        p = (v & -v).bit_length() - 1
        low = (1 << p) - 1
        cols = []
        for j, c in enumerate(self.columns):
            if j == i:
                continue
            if c >> p & 1:
                c ^= v
            cols.append(((c >> (p + 1)) << p) | (c & low))
        labels = self.labels[:i] + self.labels[i + 1:]
        return BinaryMatrix(self.rows - 1, tuple(cols), labels)

    def relabel(self, labels: Sequence[str]) -> "BinaryMatrix":
        return BinaryMatrix(self.rows, self.columns, tuple(labels))


def _bases_of_columns(cols: Sequence[int]) -> list[int]:
    n = len(cols)
    r = gf2_rank(cols)
    out: list[int] = []

    def extend(start: int, chosen: int, count: int, pivots: dict[int, int]):
        if count == r:
            out.append(chosen)
            return
        for j in range(start, n - (r - count) + 1):
            v = cols[j]
            while v:
                top = v.bit_length() - 1
                p = pivots.get(top)
                if p is None:
                    break
                v ^= p
            if not v:
                continue
            pivots[v.bit_length() - 1] = v
            extend(j + 1, chosen | (1 << j), count + 1, pivots)
            del pivots[v.bit_length() - 1]

    extend(0, 0, 0, {})
    return out


def vector_matroid(a: BinaryMatrix) -> Matroid:
    if a.ncols > MAX_ELEMENTS:
        raise GroundSetOverflow(f"{a.ncols} columns exceeds the explicit limit {MAX_ELEMENTS}")
    return Matroid(a.labels, _bases_of_columns(a.columns))


def fundamental_matrix(m: Matroid, basis: int | None = None) -> BinaryMatrix:
    """Fundamental-circuit incidence matrix of ``m`` with respect to a basis.

    Rows follow the basis elements in label order. Without ``basis`` the
    lexicographically least basis is used.
    """
    if basis is None:
        basis = min(m.bases, key=lambda b: tuple(bits(b)))
    rows = list(bits(basis))
    row_of = {i: k for k, i in enumerate(rows)}
    bases = m.bases
    cols = []
    for e in range(m.size):
        if basis >> e & 1:
            cols.append(1 << row_of[e])
            continue
        col = 0
        for f in rows:
            if (basis ^ (1 << f)) | (1 << e) in bases:
                col |= 1 << row_of[f]
        cols.append(col)
    return BinaryMatrix(len(rows), tuple(cols), m.labels)


def is_binary(m: Matroid) -> tuple[bool, BinaryMatrix | None]:
    """Decide binarity; on success also return a representing matrix.

    A binary matroid is represented over GF(2) by its fundamental-circuit
    matrix with respect to any basis, so one comparison is decisive.
    """
    a = fundamental_matrix(m)
    cand = _bases_of_columns(a.columns)
    if len(cand) == len(m.bases) and m.bases.issuperset(cand):
        return True, a
    return False, None


def binary(m: Matroid) -> bool:
    return is_binary(m)[0]


def graphic(edges: Sequence[tuple], labels: Sequence[str] | None = None) -> Matroid:
    """Cycle matroid of a multigraph given as an edge list (loops allowed)."""
    return vector_matroid(incidence_matrix(edges, labels))


def incidence_matrix(edges: Sequence[tuple], labels: Sequence[str] | None = None) -> BinaryMatrix:
    vertices: dict = {}
    for u, v in edges:
        vertices.setdefault(u, len(vertices))
        vertices.setdefault(v, len(vertices))
    cols = tuple((1 << vertices[u]) ^ (1 << vertices[v]) for u, v in edges)
    labels = tuple(labels) if labels is not None else default_labels(len(edges))
    return BinaryMatrix(len(vertices), cols, labels)


def projective_geometry(k: int, labels: Sequence[str] | None = None) -> BinaryMatrix:
    """All ``2**k - 1`` nonzero vectors of GF(2)^k, read top row first, ascending."""
    if k < 1:
        raise ValueError("projective geometry needs k >= 1")
    cols = []
    for v in range(1, 1 << k):
        # top row carries the most significant bit of v
        cols.append(sum(1 << i for i in range(k) if v >> (k - 1 - i) & 1))
    labels = tuple(labels) if labels is not None else default_labels(len(cols))
    return BinaryMatrix(k, tuple(cols), labels)


def identity_matrix(r: int, labels: Sequence[str] | None = None) -> BinaryMatrix:
    labels = tuple(labels) if labels is not None else default_labels(r)
    return BinaryMatrix(r, tuple(1 << i for i in range(r)), labels)


def standard_form(a: BinaryMatrix) -> BinaryMatrix:
    """Row-reduce to rank-many rows (same vector matroid)."""
    pivots: dict[int, int] = {}
    order = []
    for c in a.columns:
        v = c
        while v:
            top = v.bit_length() - 1
            p = pivots.get(top)
            if p is None:
                pivots[top] = v
                order.append(top)
                break
            v ^= p
    r = len(order)
    cols = []
    for c in a.columns:
        coords = 0
        v = c
        for t in sorted(pivots, reverse=True):
            if v >> t & 1:
                v ^= pivots[t]
                coords |= 1 << order.index(t)
        cols.append(coords)
    return BinaryMatrix(r, tuple(cols), a.labels)


def basis_coordinates(a: BinaryMatrix) -> tuple[list[int], list[int]]:
    """Greedy column basis and each column's coordinates in it (bit k = k-th basis column)."""
    pivots: dict[int, tuple[int, int]] = {}  # top bit -> (vector, coordinate word)
    basis: list[int] = []
    coords: list[int] = []
    for j, c in enumerate(a.columns):
        v, w = c, 0
        while v:
            top = v.bit_length() - 1
            p = pivots.get(top)
            if p is None:
                break
            v ^= p[0]
            w ^= p[1]
        if v:
            k = len(basis)
            basis.append(j)
            pivots[v.bit_length() - 1] = (v, w | (1 << k))
            coords.append(1 << k)
        else:
            coords.append(w)
    return basis, coords


def matrix_components(a: BinaryMatrix) -> list[int]:
    """Connected components of M[a] via the fundamental bipartite graph."""
    basis, coords = basis_coordinates(a)
    parent = list(range(a.ncols))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    in_basis = set(basis)
    for j, w in enumerate(coords):
        if j in in_basis:
            continue
        for k in bits(w):
            parent[find(basis[k])] = find(j)
    groups: dict[int, int] = {}
    for j in range(a.ncols):
        groups[find(j)] = groups.get(find(j), 0) | (1 << j)
    return sorted(groups.values(), key=lambda g: g & -g)


def matrix_is_connected(a: BinaryMatrix) -> bool:
    return len(matrix_components(a)) <= 1
