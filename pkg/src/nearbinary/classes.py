"""Deciders for Z, R and D, the structural classifier for Z, and minor-based cross-checks."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator

from . import catalog
from .core import (
    Matroid,
    MatroidError,
    bits,
    check_exchange,
    is_connected,
    series_parallel_extend,
    uniform,
)
from .gf2 import BinaryMatrix, binary, fundamental_matrix, matrix_is_connected, vector_matroid
from .minors import MinorWitness, contains_minor, has_minor, isomorphic
from .relaxed import (
    RelaxedBinaryMatroid,
    free_bases,
    is_circuit_hyperplane,
    is_free_basis,
    relax,
    tighten,
)

DEFAULT_BUDGET = 12


class BudgetExceeded(MatroidError):
    pass


class PreconditionViolated(MatroidError):
    pass


def search_budget() -> int:
    return int(os.environ.get("NEARBINARY_BUDGET", DEFAULT_BUDGET))


# Z and R -------------------------------------------------------------------


def in_Z(m: Matroid) -> tuple[bool, str | None]:
    """(True, None), or (False, e) with both M\\e and M/e non-binary."""
    for e in m.labels:
        if not binary(m.delete(e)) and not binary(m.contract(e)):
            return False, e
    return True, None


def in_R(m: Matroid) -> tuple[bool, tuple[Matroid, int] | None]:
    """Binary, or a free basis whose tightening is binary (returned with it)."""
    if binary(m):
        return True, None
    for b in free_bases(m):
        p = tighten(m, b)
        if binary(p):
            return True, (p, b)
    return False, None


# D --------------------------------------------------------------------------


@dataclass(frozen=True)
class DMembership:
    X: int
    Y: int
    parent: Matroid | BinaryMatrix
    orders: tuple[str, ...] = ()  # tightening orders that re-verified


def _tighten_pair(m: Matroid, first: int, second: int) -> Matroid | None:
    if not is_free_basis(m, first):
        return None
    mid = tighten(m, first)
    if not is_free_basis(mid, second):
        return None
    return tighten(mid, second)


def _verify_parent(m: Matroid, p: Matroid, x: int, y: int) -> bool:
    check_exchange(p)
    if not binary(p) or not is_connected(p):
        return False
    if not (is_circuit_hyperplane(p, x) and is_circuit_hyperplane(p, y)):
        return False
    return relax(relax(p, x), y) == m


def in_D(m) -> DMembership | None:
    """Recover a connected binary parent with complementary relaxed circuit-hyperplanes."""
    if isinstance(m, RelaxedBinaryMatroid):
        if m.size <= 16:
            return in_D(m.materialize())
        return _in_D_lazy(m)
    if m.size == 0 or m.size != 2 * m.r:
        return None
    fb = free_bases(m)
    fb_set = set(fb)
    for x in fb:
        y = m.full ^ x
        if y < x or y not in fb_set:
            continue
        parent = None
        orders = []
        for first, second, tag in ((x, y, "XY"), (y, x, "YX")):
            p = _tighten_pair(m, first, second)
            if p is not None and _verify_parent(m, p, x, y):
                orders.append(tag)
                parent = parent or p
        if parent is not None:
            return DMembership(x, y, parent, tuple(orders))
    return None


def _in_D_lazy(m: RelaxedBinaryMatroid) -> DMembership | None:
    """Too large to enumerate bases: test the recorded relaxations with the rank oracle."""
    if len(m.relaxed) != 2 or m.relaxed[0] ^ m.relaxed[1] != m.full:
        return None
    x, y = m.relaxed
    if not (m.is_free_basis(x) and m.is_free_basis(y)):
        return None
    parent = RelaxedBinaryMatroid(m.base)
    if not (parent.is_circuit_hyperplane(x) and parent.is_circuit_hyperplane(y)):
        return None
    # the second relaxation has to be valid whichever set goes first
    if not (
        RelaxedBinaryMatroid(m.base, (y,)).is_circuit_hyperplane(x)
        and RelaxedBinaryMatroid(m.base, (x,)).is_circuit_hyperplane(y)
    ):
        return None
    if not matrix_is_connected(m.base):
        return None
    return DMembership(x, y, m.base, ("XY", "YX"))


def d_minors(m: Matroid) -> Iterator[tuple[frozenset, frozenset, Matroid, DMembership]]:
    """Minors of ``m`` (including ``m``) that pass :func:`in_D`."""
    for r in range(4, m.r + 1):
        size = 2 * r
        if size > m.size or size - r > m.corank:
            continue
        for c, d, minor in minors_of_shape(m, size, r):
            hit = in_D(minor)
            if hit is not None:
                yield c, d, minor, hit


def minors_of_shape(m: Matroid, size: int, rank: int):
    """All minors with the given size and rank, as (contract, delete, minor)."""
    c_size = m.r - rank
    d_size = m.size - size - c_size
    if c_size < 0 or d_size < 0:
        return
    ind = m.independent_table
    for c in combinations(range(m.size), c_size):
        cm = sum(1 << i for i in c)
        if not ind[cm]:
            continue
        rest = [i for i in range(m.size) if not cm >> i & 1]
        contracted = m.minor(cm, 0)
        for d in combinations(range(len(rest)), d_size):
            dm = sum(1 << i for i in d)
            if contracted.rank(contracted.full ^ dm) != rank:
                continue
            minor = contracted.minor(0, dm)
            yield frozenset(m.subset(cm)), frozenset(contracted.subset(dm)), minor


# minor-based deciders --------------------------------------------------------


def _budget(m: Matroid) -> None:
    limit = search_budget()
    if m.size > limit:
        raise BudgetExceeded(f"{m.size} elements exceeds the search budget {limit}")


def excluded_minor_hit(m: Matroid, sporadic) -> str | None:
    """Name of a listed excluded minor (or 'D') found in ``m``, else ``None``."""
    _budget(m)
    if binary(m):
        # binary matroids only have binary minors; every listed one is non-binary
        return None
    for name in sporadic:
        if contains_minor(m, catalog.named(name)):
            return name
    if next(d_minors(m), None) is not None:
        return "D"
    return None


def in_Z_by_minors(m: Matroid) -> bool:
    return excluded_minor_hit(m, catalog.EX_Z_SPORADIC) is None


def in_R_by_minors(m: Matroid) -> bool:
    return excluded_minor_hit(m, catalog.EX_R_SPORADIC) is None


def in_class(m: Matroid, cls: str) -> bool:
    if cls == "binary":
        return binary(m)
    if cls == "Z":
        return in_Z(m)[0]
    if cls == "R":
        return in_R(m)[0]
    if cls == "D":
        return in_D(m) is not None
    raise ValueError(f"unknown class {cls!r}")


@dataclass
class ExcludedMinorReport:
    cls: str
    in_class: bool
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.in_class and not self.failures


def excluded_minor_check(m: Matroid, cls: str) -> ExcludedMinorReport:
    """M is outside ``cls`` while each single deletion and contraction is inside."""
    report = ExcludedMinorReport(cls, in_class(m, cls))
    for e in m.labels:
        if not in_class(m.delete(e), cls):
            report.failures.append(f"M\\{e} not in {cls}")
        if not in_class(m.contract(e), cls):
            report.failures.append(f"M/{e} not in {cls}")
    return report


# classification -------------------------------------------------------------

BINARY = "binary"
RELAXATION = "relaxation of binary"  # case (i)
PARALLEL_U2N = "parallel extension of U2,n"  # case (ii)
SERIES_UN2N = "series extension of Un-2,n"  # case (iii)
U24_SP = "series-parallel extension of U2,4"  # case (iv)
NOT_IN_Z = "not in Z"
UNMATCHED = "unmatched"

PRIORITY = (PARALLEL_U2N, SERIES_UN2N, U24_SP, RELAXATION)


@dataclass
class ClassificationResult:
    case: str
    matched: tuple[str, ...] = ()
    n: int | None = None
    parent: BinaryMatrix | None = None
    X: int | None = None
    S: tuple[str, ...] = ()  # U2,4 elements extended in series
    T: tuple[str, ...] = ()  # U2,4 elements (or U2,n points) extended in parallel
    core_labels: tuple[str, ...] = ()
    element: str | None = None
    witnesses: dict = field(default_factory=dict)

    def reconstruct(self, m: Matroid) -> Matroid:
        """Rebuild ``m`` from the witness (raises if the witness is incomplete)."""
        return _rebuild(self.case, self.witnesses[self.case], m)


def _parallel_witness(m: Matroid):
    if m.r != 2 or m.loops():
        return None
    classes = m.parallel_classes()
    if len(classes) < 5:
        return None
    return {"classes": tuple(classes)}


def _series_witness(m: Matroid):
    w = _parallel_witness(m.dual())
    return None if w is None else {"classes": w["classes"]}


def _u24_witness(m: Matroid):
    if m.loops() or m.coloops():
        return None
    par = [c for c in m.parallel_classes() if c.bit_count() > 1]
    ser = [c for c in m.series_classes() if c.bit_count() > 1]
    if any(p & s for p in par for s in ser):
        return None
    contract = delete = 0
    for s in ser:
        contract |= s ^ (s & -s)
    for p in par:
        delete |= p ^ (p & -p)
    core = m.minor(contract, delete)
    if core.size != 4 or core.r != 2 or len(core.bases) != 6:
        return None
    return {"series": tuple(ser), "parallel": tuple(par), "core": core.labels}


def _relaxation_witness(m: Matroid):
    if m.r <= 2 or m.corank <= 2:
        return None
    for b in free_bases(m):
        p = tighten(m, b)
        if binary(p) and is_connected(p):
            return {"parent": fundamental_matrix(p), "X": b}
    return None


MATCHERS = {
    PARALLEL_U2N: _parallel_witness,
    SERIES_UN2N: _series_witness,
    U24_SP: _u24_witness,
    RELAXATION: _relaxation_witness,
}


def _extend_classes(m: Matroid, classes, kind: str) -> Matroid:
    """Rebuild from the core on class representatives by adding mates back."""
    reps = [c & -c for c in classes]
    core_mask = sum(reps)
    plan = {}
    names = []
    order = sorted(classes, key=lambda c: c & -c)
    for c in order:
        rep = m.labels[(c & -c).bit_length() - 1]
        mates = [m.labels[i] for i in bits(c ^ (c & -c))]
        if mates:
            plan[rep] = (len(mates), 0) if kind == "series" else (0, len(mates))
            names.extend(mates)
    return core_mask, plan, names


def _rebuild(case: str, w: dict, m: Matroid) -> Matroid:
    if case in (PARALLEL_U2N, SERIES_UN2N):
        kind = "parallel" if case == PARALLEL_U2N else "series"
        core_mask, plan, names = _extend_classes(m, w["classes"], kind)
        n = core_mask.bit_count()
        r = 2 if kind == "parallel" else n - 2
        core = uniform(r, n, m.subset(core_mask))
        out = series_parallel_extend(core, plan, names)
    elif case == U24_SP:
        core = uniform(2, 4, w["core"])
        _, splan, snames = _extend_classes(m, w["series"], "series")
        _, pplan, pnames = _extend_classes(m, w["parallel"], "parallel")
        plan = {x: (splan.get(x, (0, 0))[0], pplan.get(x, (0, 0))[1]) for x in core.labels}
        plan = {x: v for x, v in plan.items() if v != (0, 0)}
        # series mates are consumed first (in core order), then parallel ones
        snames = [n for x in core.labels if x in splan for n in _mates(m, w["series"], x)]
        pnames = [n for x in plan if x in pplan for n in _mates(m, w["parallel"], x)]
        out = series_parallel_extend(core, plan, snames + pnames)
    elif case == RELAXATION:
        out = relax(vector_matroid(w["parent"]), w["X"])
    else:
        raise ValueError(f"case {case!r} carries no reconstruction")
    return out.reorder(m.labels)


def _mates(m: Matroid, classes, rep: str) -> list[str]:
    for c in classes:
        if m.labels[(c & -c).bit_length() - 1] == rep:
            return [m.labels[i] for i in bits(c ^ (c & -c))]
    return []


def classify_Z(m: Matroid) -> ClassificationResult:
    """Which structural case applies; every matching case is recorded in ``matched``."""
    if binary(m):
        return ClassificationResult(BINARY)
    ok, e = in_Z(m)
    if not ok:
        return ClassificationResult(NOT_IN_Z, element=e)
    witnesses = {}
    for case in PRIORITY:
        w = MATCHERS[case](m)
        if w is None:
            continue
        try:
            rebuilt = _rebuild(case, w, m)
        except MatroidError:
            continue
        if rebuilt == m:
            witnesses[case] = w
    if not witnesses:
        return ClassificationResult(UNMATCHED)
    case = next(c for c in PRIORITY if c in witnesses)
    w = witnesses[case]
    res = ClassificationResult(case, tuple(c for c in PRIORITY if c in witnesses), witnesses=witnesses)
    if case in (PARALLEL_U2N, SERIES_UN2N):
        res.n = len(w["classes"])
        res.core_labels = tuple(m.labels[(c & -c).bit_length() - 1] for c in w["classes"])
        res.T = tuple(
            m.labels[(c & -c).bit_length() - 1] for c in w["classes"] if c.bit_count() > 1
        )
        if case == SERIES_UN2N:
            res.S, res.T = res.T, ()
    elif case == U24_SP:
        res.core_labels = tuple(w["core"])
        res.S = tuple(m.labels[(c & -c).bit_length() - 1] for c in w["series"])
        res.T = tuple(m.labels[(c & -c).bit_length() - 1] for c in w["parallel"])
    else:
        res.parent = w["parent"]
        res.X = w["X"]
    return res


def matching_cases(m: Matroid) -> tuple[str, ...]:
    """Cases whose witness rebuilds ``m`` exactly, regardless of Z-membership."""
    out = []
    for case in PRIORITY:
        w = MATCHERS[case](m)
        if w is None:
            continue
        try:
            if _rebuild(case, w, m) == m:
                out.append(case)
        except MatroidError:
            pass
    return tuple(out)


# relaxing a non-binary matroid ----------------------------------------------


@dataclass
class DichotomyReport:
    relaxed: Matroid
    disjunct: str | None = None
    witness: MinorWitness | None = None
    d_minor: tuple | None = None  # (contract, delete, minor, membership)

    @property
    def ok(self) -> bool:
        return self.disjunct is not None


def relaxation_of_nonbinary_dichotomy(n: Matroid, x) -> DichotomyReport:
    """Relax ``x`` in non-binary ``n``; find a U2,5 / U3,5 minor or a member of D."""
    x = n.mask(x)
    if binary(n):
        raise PreconditionViolated("N must be non-binary")
    if not is_circuit_hyperplane(n, x):
        raise PreconditionViolated(f"{n.word(x)} is not a circuit-hyperplane of N")
    relaxed = relax(n, x)
    report = DichotomyReport(relaxed)
    for name in ("U25", "U35"):
        w = has_minor(relaxed, catalog.named(name))
        if w is not None:
            report.disjunct, report.witness = name, w
            return report
    hit = next(d_minors(relaxed), None)
    if hit is not None:
        report.disjunct, report.d_minor = "D", hit
    return report


def witness_rechecks(m: Matroid, res: ClassificationResult) -> bool:
    """Rebuild check for every case recorded in ``res``."""
    return all(_rebuild(c, res.witnesses[c], m) == m for c in res.matched)


def isomorphic_to_named(m: Matroid, name: str) -> bool:
    return isomorphic(m, catalog.named(name)) is not None
