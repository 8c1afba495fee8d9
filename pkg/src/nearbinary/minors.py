"""Isomorphism, minor search and fragility for explicit matroids."""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Sequence

import numpy as np

from .core import Matroid, bits, compress, is_connected


@dataclass(frozen=True)
class MinorWitness:
    """``minor(M, contract, delete)`` relabelled by ``iso`` (N-label -> M-label) is N."""

    contract: frozenset[str]
    delete: frozenset[str]
    iso: dict[str, str] = field(hash=False)

    def survivors(self) -> frozenset[str]:
        return frozenset(self.iso.values())

    def apply(self, m: Matroid) -> Matroid:
        """The witnessed minor of ``m``, carrying the target's labels."""
        back = {v: k for k, v in self.iso.items()}
        return m.minor(self.contract, self.delete).relabel(back)


# invariants -----------------------------------------------------------------


def _refine(m: Matroid) -> tuple[tuple, list[int]]:
    """Iterated colour refinement of elements along circuits.

    Returns a fingerprint (equal for isomorphic matroids) and the final colour
    of each element; colours are comparable between matroids whose
    fingerprints agree.
    """
    n = m.size
    arr = m.bases_array
    deg = [int(((arr >> i) & 1).sum()) for i in range(n)]
    circuits = m.circuits()
    by_elem: list[list[int]] = [[] for _ in range(n)]
    for c in circuits:
        for i in bits(c):
            by_elem[i].append(c)
    sig = [(deg[i],) for i in range(n)]
    history = []
    colours = _ids(sig)
    history.append(tuple(sorted(sig)))
    classes = len(set(colours))
    for _ in range(n):
        sig = []
        for i in range(n):
            parts = sorted(
                (c.bit_count(), tuple(sorted(colours[j] for j in bits(c) if j != i)))
                for c in by_elem[i]
            )
            sig.append((colours[i], tuple(parts)))
        colours = _ids(sig)
        history.append(hash(tuple(sorted(sig))))
        new_classes = len(set(colours))
        if new_classes == classes:
            break
        classes = new_classes
    sizes = tuple(sorted(c.bit_count() for c in circuits))
    fp = (n, m.r, len(m.bases), hash(sizes), tuple(history))
    return fp, colours


def _ids(sig: list) -> list[int]:
    order = {s: k for k, s in enumerate(sorted(set(sig)))}
    return [order[s] for s in sig]


def _invariants(m: Matroid):
    cached = m.__dict__.get("_iso_invariants")
    if cached is None:
        cached = _refine(m)
        m.__dict__["_iso_invariants"] = cached
    return cached


def fingerprint(m: Matroid) -> tuple:
    """Isomorphism invariant; equal fingerprints are necessary for isomorphism."""
    return _invariants(m)[0]


def isomorphic(m1: Matroid, m2: Matroid) -> dict[str, str] | None:
    """A bijection ``E(m1) -> E(m2)`` carrying bases onto bases, or ``None``."""
    if m1.size != m2.size or m1.r != m2.r or len(m1.bases) != len(m2.bases):
        return None
    if m1.key == m2.key:
        return {x: x for x in m1.labels}
    fp1, col1 = _invariants(m1)
    fp2, col2 = _invariants(m2)
    if fp1 != fp2:
        return None
    phi = _match(m1, m2, col1, col2)
    if phi is None:
        return None
    return {m1.labels[i]: m2.labels[j] for i, j in enumerate(phi)}


def _match(m1: Matroid, m2: Matroid, col1, col2) -> list[int] | None:
    n = m1.size
    class_size: dict[int, int] = {}
    for c in col1:
        class_size[c] = class_size.get(c, 0) + 1
    # most constrained first, then stay close to already placed elements
    order: list[int] = []
    placed = 0
    circ1 = m1.circuits()
    remaining = set(range(n))
    while remaining:
        def score(i):
            touch = sum(1 for c in circ1 if c >> i & 1 and c & placed)
            return (class_size[col1[i]], -touch, i)

        i = min(remaining, key=score)
        order.append(i)
        placed |= 1 << i
        remaining.discard(i)
    pos = {i: k for k, i in enumerate(order)}
    closing: list[list[int]] = [[] for _ in range(n)]
    for c in circ1:
        last = max(bits(c), key=pos.__getitem__)
        closing[pos[last]].append(c)
    circ2 = set(m2.circuits())
    by2: list[list[int]] = [[] for _ in range(n)]
    for c in circ2:
        for j in bits(c):
            by2[j].append(c)
    cand: dict[int, list[int]] = {}
    for j, c in enumerate(col2):
        cand.setdefault(c, []).append(j)

    phi = [-1] * n
    used = 0

    def image(c: int) -> int:
        out = 0
        for i in bits(c):
            out |= 1 << phi[i]
        return out

    def search(k: int, used_mask: int) -> bool:
        if k == n:
            return True
        x = order[k]
        for y in cand.get(col1[x], ()):
            if used_mask >> y & 1:
                continue
            phi[x] = y
            img_prefix = used_mask | (1 << y)
            ok = True
            for c in closing[k]:
                if image(c) not in circ2:
                    ok = False
                    break
            if ok:
                count2 = sum(1 for c in by2[y] if c & ~img_prefix == 0)
                ok = count2 == len(closing[k])
            if ok and search(k + 1, img_prefix):
                return True
            phi[x] = -1
        return False

    return list(phi) if search(0, used) else None


class IsoIndex:
    """Maps isomorphism classes to values (bucketed by fingerprint)."""

    def __init__(self):
        self._buckets: dict[tuple, list[tuple[Matroid, object]]] = {}
        self._lock = threading.Lock()

    def find(self, m: Matroid):
        """(representative, value, iso m->rep) or ``None``."""
        for rep, value in self._buckets.get(fingerprint(m), ()):
            phi = isomorphic(m, rep)
            if phi is not None:
                return rep, value, phi
        return None

    def add(self, m: Matroid, value=None) -> bool:
        """Insert unless an isomorphic copy is present; True if inserted."""
        if self.find(m) is not None:
            return False
        with self._lock:
            self._buckets.setdefault(fingerprint(m), []).append((m, value))
        return True

    def items(self) -> Iterator[tuple[Matroid, object]]:
        for bucket in self._buckets.values():
            yield from bucket

    def __len__(self) -> int:
        return sum(len(b) for b in self._buckets.values())


# minor search ---------------------------------------------------------------


def _subset_masks(positions: Sequence[int], k: int) -> np.ndarray:
    masks = [sum(1 << i for i in combo) for combo in combinations(positions, k)]
    return np.array(masks, dtype=np.int64)


def _degree_sequence(m: Matroid) -> tuple[int, ...]:
    arr = m.bases_array
    return tuple(sorted(int(((arr >> i) & 1).sum()) for i in range(m.size)))


def minor_witnesses(m: Matroid, n: Matroid, using: int = 0) -> Iterator[MinorWitness]:
    """Every (contract, delete) pair giving an N-minor whose survivors include ``using``.

    Contract sets range over independent sets and delete sets over sets
    whose removal keeps the contraction spanning, which loses no minor.
    """
    c_size = m.r - n.r
    d_size = m.corank - n.corank
    if c_size < 0 or d_size < 0:
        return
    nb = len(n.bases)
    if nb > len(m.bases):
        return
    target_deg = _degree_sequence(n)
    bs = m.bases_array
    ind = m.independent_table
    free_pos = [i for i in range(m.size) if not using >> i & 1]
    for c_combo in combinations(free_pos, c_size):
        cm = sum(1 << i for i in c_combo)
        if not ind[cm]:
            continue
        sub = bs[(bs & cm) == cm]
        if len(sub) < nb:
            continue
        rest = [i for i in free_pos if not cm >> i & 1]
        ds = _subset_masks(rest, d_size)
        if len(ds) == 0:
            continue
        hits = (sub[None, :] & ds[:, None]) == 0
        counts = hits.sum(axis=1)
        for k in np.flatnonzero(counts == nb):
            dm = int(ds[k])
            sel = sub[hits[k]]
            keep = [i for i in range(m.size) if not (cm | dm) >> i & 1]
            deg = tuple(sorted(int(((sel >> i) & 1).sum()) for i in keep))
            if deg != target_deg:
                continue
            minor = Matroid(
                (m.labels[i] for i in keep), (compress(int(b) ^ cm, keep) for b in sel)
            )
            phi = isomorphic(n, minor)
            if phi is None:
                continue
            yield MinorWitness(frozenset(m.subset(cm)), frozenset(m.subset(dm)), phi)


class MinorCache:
    """Memo of minor-existence answers keyed by isomorphism class."""

    def __init__(self):
        self._store: dict[tuple, IsoIndex] = {}
        self._lock = threading.Lock()

    def lookup(self, m: Matroid, n: Matroid):
        index = self._store.get(n.key)
        if index is None:
            return None
        hit = index.find(m)
        return None if hit is None else hit[1]

    def record(self, m: Matroid, n: Matroid, value: bool) -> None:
        with self._lock:
            index = self._store.setdefault(n.key, IsoIndex())
        index.add(m, value)

    def clear(self) -> None:
        self._store.clear()


CACHE = MinorCache()


def has_minor(m: Matroid, n: Matroid) -> MinorWitness | None:
    """First witness in search order, or ``None``."""
    return next(minor_witnesses(m, n), None)


def contains_minor(m: Matroid, n: Matroid, cache: MinorCache | None = CACHE) -> bool:
    """Memoised yes/no form of :func:`has_minor`."""
    if m.size < n.size or m.r < n.r or m.corank < n.corank:
        return False
    if cache is not None:
        hit = cache.lookup(m, n)
        if hit is not None:
            return hit
    found = has_minor(m, n) is not None
    if cache is not None:
        cache.record(m, n, found)
    return found


def contains_any(m: Matroid, family: Iterable[Matroid], cache: MinorCache | None = CACHE) -> bool:
    return any(contains_minor(m, n, cache) for n in family)


def has_minor_using(m: Matroid, n: Matroid, e: str) -> MinorWitness | None:
    bit = m.mask(e)
    return next(minor_witnesses(m, n, using=bit), None)


def covered_elements(m: Matroid, family: Iterable[Matroid]) -> int:
    """Mask of elements used by at least one family minor of ``m``."""
    covered = 0
    for n in family:
        for i in range(m.size):
            if covered >> i & 1:
                continue
            w = next(minor_witnesses(m, n, using=1 << i), None)
            if w is not None:
                covered |= m.mask(w.survivors())
        if covered == m.full:
            break
    return covered


def is_fragile(m: Matroid, n: Matroid, cache: MinorCache | None = CACHE) -> bool:
    """True iff for every element one of M\\e, M/e has no N-minor."""
    for e in m.labels:
        if contains_minor(m.delete(e), n, cache) and contains_minor(m.contract(e), n, cache):
            return False
    return True


@dataclass
class RoundednessReport:
    family: tuple[str, ...]
    checked: int = 0
    with_minor: int = 0
    violations: list[tuple[Matroid, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def roundedness_check(family, corpus: Iterable[Matroid], names: Sequence[str] = ()) -> RoundednessReport:
    """Check that connected corpus matroids with a family minor have one through every element."""
    family = list(family)
    if not all(is_connected(f) for f in family):
        raise ValueError("roundedness is only defined for connected families")
    report = RoundednessReport(tuple(names))
    for m in corpus:
        if not is_connected(m):
            continue
        report.checked += 1
        if not contains_any(m, family):
            continue
        report.with_minor += 1
        covered = covered_elements(m, family)
        for i in range(m.size):
            if not covered >> i & 1:
                report.violations.append((m, m.labels[i]))
    return report
