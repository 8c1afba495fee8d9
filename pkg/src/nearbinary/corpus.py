"""Deterministic test corpus of small matroids, one per isomorphism class."""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache

from . import catalog
from .core import GroundSetOverflow, Matroid, default_labels, direct_sum, uniform
from .gf2 import BinaryMatrix, binary, vector_matroid
from .minors import IsoIndex
from .relaxed import circuit_hyperplanes, relax
from .sums import BasepointDegenerate, twosum


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    matroid: Matroid


SMALL_UNIFORM = [(0, 1), (1, 1), (1, 2), (1, 3), (2, 3), (1, 4), (3, 4), (2, 4), (2, 5), (3, 5)]


def _canon(m: Matroid) -> Matroid:
    """Relabel to a, b, c, ... so entries from different sources look alike."""
    return Matroid(default_labels(m.size), m.bases)


def _random_binary(rng: random.Random, max_elements: int) -> Matroid:
    n = rng.randint(4, max_elements)
    r = rng.randint(2, min(n - 1, 6))
    if rng.random() < 0.7 and n < (1 << r):
        # simple: distinct nonzero columns, which tend to be well connected
        cols = rng.sample(range(1, 1 << r), n)
    else:
        cols = [rng.randrange(0, 1 << r) if rng.random() < 0.08 else rng.randrange(1, 1 << r)
                for _ in range(n)]
    return vector_matroid(BinaryMatrix(r, tuple(cols), default_labels(n)))


def _pieces(m: Matroid) -> list[tuple[str, Matroid]]:
    """Single- and two-element minors."""
    out = []
    for e in m.labels:
        for op, one in (("\\", m.delete(e)), ("/", m.contract(e))):
            out.append((f"{op}{e}", one))
            for f in one.labels:
                if f > e:
                    out.append((f"{op}{e}\\{f}", one.delete(f)))
                    out.append((f"{op}{e}/{f}", one.contract(f)))
    return out


def _glue(m1: Matroid, m2: Matroid):
    a = _canon(m1)
    labels = [f"x{i}" for i in range(m2.size)]
    b = Matroid(labels, m2.bases)
    yield "+", direct_sum(a, b)
    for p1 in {a.labels[0], a.labels[-1]}:
        for p2 in {b.labels[0], b.labels[-1]}:
            try:
                yield "(+)2", twosum(a, b, p1, p2)
            except (BasepointDegenerate, GroundSetOverflow):
                continue


@lru_cache(maxsize=4)
def _build(seed: int, max_elements: int) -> tuple[CorpusEntry, ...]:
    index = IsoIndex()
    entries: list[CorpusEntry] = []

    def add(name: str, m: Matroid) -> bool:
        if m.size == 0 or m.size > max_elements:
            return False
        m = _canon(m)
        if index.add(m, name):
            entries.append(CorpusEntry(name, m))
            return True
        return False

    cat = [(n, m) for n, m in catalog.list_entries() if m.size <= max_elements]
    for n in range(1, min(max_elements, 8) + 1):
        for r in range(n + 1):
            cat.append((f"U{r},{n}", uniform(r, n)))
    for name, m in cat:
        add(name, m)
    # minors and duals of catalog members
    for name, m in cat:
        for tag, piece in _pieces(m):
            add(name + tag, piece)
    for e in list(entries):
        add(e.name + "*", e.matroid.dual())
    # relaxations of catalog binary matroids
    for name, m in cat:
        if binary(m):
            for h in circuit_hyperplanes(m):
                add(f"{name}[relax {m.word(h)}]", relax(m, h))
    # sums of small pieces
    small = [(n, m) for n, m in cat if 1 <= m.size <= 6]
    small += [(f"U{r},{n}", uniform(r, n)) for r, n in SMALL_UNIFORM]
    for n1, m1 in small:
        for n2, m2 in small:
            if m1.size + m2.size > max_elements + 2:
                continue
            for op, s in _glue(m1, m2):
                add(f"{n1}{op}{n2}", s)
    # random binary matroids and their relaxations
    rng = random.Random(seed)
    made = 0
    for k in range(4000):
        if made >= 400:
            break
        m = _random_binary(rng, max_elements)
        if add(f"rand{seed}.{k}", m):
            made += 1
        for h in circuit_hyperplanes(m)[:3]:
            add(f"rand{seed}.{k}[relax {m.word(h)}]", relax(m, h))
    # relaxations of whatever non-binary members have circuit-hyperplanes
    for e in list(entries):
        if e.matroid.size >= 5 and not binary(e.matroid):
            for h in circuit_hyperplanes(e.matroid)[:2]:
                add(f"{e.name}[relax {e.matroid.word(h)}]", relax(e.matroid, h))
    entries.sort(key=lambda e: (e.matroid.size, e.matroid.r, sorted(e.matroid.bases), e.name))
    return tuple(entries)


def corpus(seed: int = 0, max_elements: int = 10) -> list[CorpusEntry]:
    if max_elements > 12:
        raise ValueError("corpus is limited to 12 elements")
    return list(_build(seed, max_elements))


def corpus_matroids(seed: int = 0, max_elements: int = 10) -> list[Matroid]:
    return [e.matroid for e in corpus(seed, max_elements)]
