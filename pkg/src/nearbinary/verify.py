"""Verification suites: each check is one PASS/FAIL line."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from itertools import product

from . import catalog
from .catalog import EX_R_SPORADIC, EX_Z_SPORADIC
from .classes import (
    NOT_IN_Z,
    UNMATCHED,
    BINARY,
    classify_Z,
    excluded_minor_check,
    in_D,
    in_R,
    in_R_by_minors,
    in_Z,
    in_Z_by_minors,
    matching_cases,
    relaxation_of_nonbinary_dichotomy,
    witness_rechecks,
)
from .core import (
    Matroid,
    check_exchange,
    connectivity,
    direct_sum,
    is_connected,
    uniform,
)
from .corpus import corpus
from .gf2 import binary, fundamental_matrix, gf2_rank
from .minors import IsoIndex, contains_minor, has_minor, isomorphic, roundedness_check
from .relaxed import (
    RelaxedBinaryMatroid,
    circuit_hyperplanes,
    lazy_minor,
    relax,
)
from .sums import canonical_violations, reconstruct, tree_decompose


@dataclass
class Check:
    suite: str
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        head = "PASS" if self.ok else "FAIL"
        tail = f" ({self.detail})" if self.detail else ""
        return f"{head} [{self.suite}] {self.name}{tail}"


@dataclass
class SuiteResult:
    checks: list[Check] = field(default_factory=list)
    timings: dict[str, float] = field(default_factory=dict)
    stats: dict[str, dict] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def lines(self) -> list[str]:
        return [c.line() for c in self.checks]


# criterion 1 -----------------------------------------------------------------


def excluded_minor_checks() -> list[Check]:
    out = []
    targets = [(n, "Z") for n in EX_Z_SPORADIC] + [(n, "R") for n in EX_R_SPORADIC]
    targets += [("M4rr", "Z"), ("M4rr", "R")]
    for name, cls in targets:
        rep = excluded_minor_check(catalog.named(name), cls)
        detail = "; ".join(rep.failures[:3]) if rep.failures else ""
        if rep.in_class:
            detail = f"{name} lies in {cls}"
        out.append(Check("excluded-minors", f"{name} is an excluded minor for {cls}", rep.ok, detail))
    return out


# criterion 2 -----------------------------------------------------------------


def cross_check(seed: int = 0, max_elements: int = 10, stats: dict | None = None) -> list[Check]:
    entries = [e for e in corpus(seed, max_elements) if e.matroid.size <= max_elements]
    z_bad, r_bad = [], []
    z_yes = r_yes = 0
    for e in entries:
        m = e.matroid
        z = in_Z(m)[0]
        if z != in_Z_by_minors(m):
            z_bad.append(e.name)
        r = in_R(m)[0]
        if r != in_R_by_minors(m):
            r_bad.append(e.name)
        z_yes += z
        r_yes += r
    if stats is not None:
        stats.update(entries=len(entries), in_Z=z_yes, in_R=r_yes)
    n = len(entries)
    return [
        Check("cross-check", "corpus has at least 500 isomorphism classes", n >= 500, f"{n}"),
        Check("cross-check", "in_Z agrees with the excluded-minor scan", not z_bad,
              f"{n - len(z_bad)}/{n}" + (f", first {z_bad[0]}" if z_bad else "")),
        Check("cross-check", "in_R agrees with the excluded-minor scan", not r_bad,
              f"{n - len(r_bad)}/{n}" + (f", first {r_bad[0]}" if r_bad else "")),
    ]


def closure_checks(seed: int = 0, max_elements: int = 9) -> list[Check]:
    """Minor and dual closure of Z and R, and R inside Z."""
    bad_z, bad_r, r_not_z = [], [], []
    for e in corpus(seed, max_elements):
        m = e.matroid
        z = in_Z(m)[0]
        r = in_R(m)[0]
        if r and not z:
            r_not_z.append(e.name)
        if z and not (in_Z(m.dual())[0] and all(
            in_Z(m.delete(x))[0] and in_Z(m.contract(x))[0] for x in m.labels
        )):
            bad_z.append(e.name)
        if r and not (in_R(m.dual())[0] and all(
            in_R(m.delete(x))[0] and in_R(m.contract(x))[0] for x in m.labels
        )):
            bad_r.append(e.name)
    return [
        Check("lemmas", "Z closed under minors and duality", not bad_z, ", ".join(bad_z[:3])),
        Check("lemmas", "R closed under minors and duality", not bad_r, ", ".join(bad_r[:3])),
        Check("lemmas", "every member of R lies in Z", not r_not_z, ", ".join(r_not_z[:3])),
    ]


# criterion 3 -----------------------------------------------------------------


def classifier_checks(seed: int = 0, max_elements: int = 10, stats: dict | None = None) -> list[Check]:
    sound, unsound, leaks = 0, [], []
    cases: dict[str, int] = {}
    overlaps = 0
    for e in corpus(seed, max_elements):
        m = e.matroid
        if binary(m):
            continue
        if in_Z(m)[0]:
            res = classify_Z(m)
            if res.case in (UNMATCHED, NOT_IN_Z, BINARY) or not witness_rechecks(m, res):
                unsound.append(e.name)
            else:
                sound += 1
                cases[res.case] = cases.get(res.case, 0) + 1
                overlaps += len(res.matched) > 1
        elif matching_cases(m):
            leaks.append(e.name)
    if stats is not None:
        stats.update(cases=cases, overlaps=overlaps)
    return [
        Check("lemmas", "non-binary members of Z are classified with a rebuilding witness",
              not unsound, f"{sound} classified" + (f", failed {unsound[:3]}" if unsound else "")),
        Check("lemmas", "no case matches a matroid outside Z", not leaks, ", ".join(leaks[:3])),
    ]


# criterion 4 -----------------------------------------------------------------


def _kahn_pairs():
    for name, m in catalog.list_entries():
        if m.size <= 12 and binary(m):
            for x in circuit_hyperplanes(m):
                yield name, m, x
    for n, k in product(range(1, 4), repeat=2):
        m = direct_sum(uniform(n - 1, n), uniform(1, k, [f"y{i}" for i in range(k)]))
        for x in circuit_hyperplanes(m):
            yield f"U{n - 1},{n}+U1,{k}", m, x


def _single_basis(labels, basis_labels) -> Matroid:
    return Matroid.from_sets(labels, [basis_labels])


def kahn_checks() -> list[Check]:
    failures = []
    pairs = 0
    for name, m, x in _kahn_pairs():
        pairs += 1
        mp = relax(m, x)
        comp = m.full ^ x
        if mp.dual() != relax(m.dual(), comp):
            failures.append(f"{name}: duality clause")
        lazy = RelaxedBinaryMatroid(fundamental_matrix(m), (x,))
        for i, e in enumerate(m.labels):
            inside = bool(x >> i & 1)
            d, c = mp.delete(e), mp.contract(e)
            if not inside:
                if c != m.contract(e):
                    failures.append(f"{name}: M'/{e} = M/{e}")
                if m.is_coloop(e):
                    want = _single_basis(d.labels, m.subset(x))
                else:
                    md = m.delete(e)
                    want = relax(md, md.mask(m.subset(x)))
            else:
                if d != m.delete(e):
                    failures.append(f"{name}: M'\\{e} = M\\{e}")
                if m.is_loop(e):
                    want = _single_basis(c.labels, ())
                else:
                    mc = m.contract(e)
                    want = relax(mc, mc.mask([y for y in m.subset(x) if y != e]))
            got = d if not inside else c
            if got != want:
                failures.append(f"{name}: relaxation clause at {e}")
            if lazy_minor(lazy, (), e).materialize() != d or lazy_minor(lazy, e, ()).materialize() != c:
                failures.append(f"{name}: lazy minor at {e}")
    return [
        Check("lemmas", "relaxation commutes with duality, deletion and contraction",
              not failures, f"{pairs} pairs" + (f", {failures[:3]}" if failures else "")),
    ]


# criterion 5 -----------------------------------------------------------------


def _is_enlarged_wheel(m: Matroid) -> bool:
    """Isomorphic to U(n-1,n) + U(1,k) for some n, k >= 1."""
    for n in range(1, m.size):
        k = m.size - n
        cand = direct_sum(uniform(n - 1, n), uniform(1, k, [f"y{i}" for i in range(k)]))
        if isomorphic(cand, m) is not None:
            return True
    return False


def disconnected_checks(seed: int = 0, max_elements: int = 10, stats: dict | None = None) -> list[Check]:
    entries = [e for e in corpus(seed, max_elements) if not is_connected(e.matroid)]
    mismatch, nonbinary_relax, bad_cor = [], [], []
    ex = {"Z": [], "R": []}
    for e in entries:
        m = e.matroid
        chs = circuit_hyperplanes(m)
        wheelish = _is_enlarged_wheel(m)
        if bool(chs) != wheelish:
            mismatch.append(e.name)
        for h in chs:
            if not binary(relax(m, h)):
                nonbinary_relax.append(e.name)
        for cls in ex:
            if excluded_minor_check(m, cls).ok:
                ex[cls].append(m)
    # a binary matroid stays binary under relaxation exactly in the wheel-like case
    for e in corpus(seed, max_elements):
        m = e.matroid
        if not binary(m):
            continue
        for h in circuit_hyperplanes(m):
            if binary(relax(m, h)) != _is_enlarged_wheel(m):
                bad_cor.append(e.name)
    sporadic = [catalog.named("U24+U11"), catalog.named("U24+U01")]
    out = [
        Check("lemmas", "disconnected matroids with a circuit-hyperplane are exactly U(n-1,n)+U(1,k)",
              not mismatch, f"{len(entries)} disconnected" + (f", {mismatch[:3]}" if mismatch else "")),
        Check("lemmas", "relaxing such a matroid gives a binary matroid", not nonbinary_relax,
              ", ".join(nonbinary_relax[:3])),
        Check("lemmas", "binary relaxation happens exactly for U(n-1,n)+U(1,k)", not bad_cor,
              ", ".join(bad_cor[:3])),
    ]
    for cls, found in ex.items():
        ok = len(found) == 2 and all(
            any(isomorphic(f, s) is not None for f in found) for s in sporadic
        )
        out.append(Check("lemmas", f"disconnected excluded minors for {cls} are U24+U11 and U24+U01",
                         ok, f"{len(found)} found"))
    if stats is not None:
        stats.update(disconnected=len(entries))
    return out


# criterion 6 -----------------------------------------------------------------

ROUNDED_FAMILIES = (("U24",), ("MK4", "U24"), ("W3", "P6", "Q6", "U36"))


def roundedness_checks(seed: int = 0, max_elements: int = 10, stats: dict | None = None) -> list[Check]:
    ms = [e.matroid for e in corpus(seed, max_elements)]
    out = []
    for fam in ROUNDED_FAMILIES:
        rep = roundedness_check([catalog.named(n) for n in fam], ms, fam)
        if stats is not None:
            stats["{" + ",".join(fam) + "}"] = (rep.checked, rep.with_minor)
        detail = f"{rep.with_minor}/{rep.checked} connected with a family minor"
        if rep.violations:
            m, e = rep.violations[0]
            detail += f", {len(rep.violations)} violations, first {m!r} at {e}"
        out.append(Check("lemmas", "{" + ", ".join(fam) + "} is 1-rounded", rep.ok, detail))
    return out


# criterion 7 -----------------------------------------------------------------


def three_connected_checks(seed: int = 0, max_elements: int = 10, stats: dict | None = None) -> list[Check]:
    k4 = catalog.named("MK4")
    small = [catalog.named(n) for n in ("W3", "Q6", "P6", "U36")]
    trio = [catalog.named(n) for n in ("P6", "Q6", "U36")]
    u25, u35 = catalog.named("U25"), catalog.named("U35")
    bad_struct, bad_equiv = [], []
    count = 0
    for e in corpus(seed, max_elements):
        m = e.matroid
        if m.r < 3 or m.corank < 3 or not connectivity(m).is_three_connected:
            continue
        count += 1
        if binary(m):
            if has_minor(m, k4) is None:
                bad_struct.append(e.name)
        elif not any(has_minor(m, n) is not None for n in small):
            bad_struct.append(e.name)
        a = contains_minor(m, u25)
        b = contains_minor(m, u35)
        c = any(contains_minor(m, n) for n in trio)
        if not (a == b == c):
            bad_equiv.append(e.name)
    if stats is not None:
        stats.update(three_connected=count)
    return [
        Check("lemmas", "3-connected binary have M(K4), non-binary have W3/Q6/P6/U36", not bad_struct,
              f"{count} matroids" + (f", {bad_struct[:3]}" if bad_struct else "")),
        Check("lemmas", "U25 minor iff U35 minor iff P6/Q6/U36 minor", not bad_equiv,
              ", ".join(bad_equiv[:3])),
    ]


# criterion 8 -----------------------------------------------------------------


def _node_tally(tree, index: IsoIndex) -> dict[int, int] | None:
    """Count nodes per isomorphism class; classes are numbered as first seen in ``index``."""
    tally: dict[int, int] = {}
    for node in tree.nodes:
        stripped = Matroid([f"v{i}" for i in range(node.size)], node.bases)
        hit = index.find(stripped)
        if hit is None:
            key = len(index)
            index.add(stripped, key)
        else:
            key = hit[1]
        tally[key] = tally.get(key, 0) + 1
    return tally


def _same_node_multiset(t1, t2) -> bool:
    index = IsoIndex()
    return _node_tally(t1, index) == _node_tally(t2, index)


def tree_checks(seed: int = 0, max_elements: int = 12, stats: dict | None = None) -> list[Check]:
    rng = random.Random(seed)
    bad_round, bad_canon, bad_perm = [], [], []
    count = 0
    nodes_hist: dict[int, int] = {}
    for e in corpus(seed, max_elements):
        m = e.matroid
        if not is_connected(m):
            continue
        count += 1
        tree = tree_decompose(m)
        nodes_hist[len(tree.nodes)] = nodes_hist.get(len(tree.nodes), 0) + 1
        if reconstruct(tree) != m:
            bad_round.append(e.name)
        if canonical_violations(tree):
            bad_canon.append(e.name)
        order = list(m.labels)
        rng.shuffle(order)
        renamed = m.reorder(order)
        if not _same_node_multiset(tree, tree_decompose(renamed)):
            bad_perm.append(e.name)
    if stats is not None:
        stats.update(connected=count, nodes=nodes_hist)
    return [
        Check("lemmas", "reconstructing from the tree decomposition gives the matroid back",
              not bad_round, f"{count} connected" + (f", {bad_round[:3]}" if bad_round else "")),
        Check("lemmas", "tree decompositions are canonical", not bad_canon, ", ".join(bad_canon[:3])),
        Check("lemmas", "node isomorphism classes do not depend on element order", not bad_perm,
              ", ".join(bad_perm[:3])),
    ]


# criterion 9 -----------------------------------------------------------------


def spike_checks() -> list[Check]:
    out = []
    for r in (4, 6):
        spike = catalog.tipless_spike(r)
        x, y = catalog.spike_pair(r)
        chs = set(circuit_hyperplanes(spike))
        ok = x in chs and y in chs and binary(spike) and is_connected(spike)
        out.append(Check("axioms", f"M{r}: {{e2..e{r + 1}}} and its complement are circuit-hyperplanes",
                         ok, f"{len(chs)} circuit-hyperplanes"))
    m4rr = catalog.doubly_relaxed_spike(4)
    hit = in_D(m4rr)
    ok = hit is not None and {hit.X, hit.Y} == set(catalog.spike_pair(4))
    out.append(Check("axioms", "doubly relaxed M4 is in D", ok,
                     f"{len(m4rr.bases)} bases" + (f", orders {','.join(hit.orders)}" if hit else "")))
    ok = len(m4rr.bases) == len(catalog.tipless_spike(4).bases) + 2
    out.append(Check("axioms", "doubly relaxed M4 has two more bases than M4", ok))
    m6rr = catalog.doubly_relaxed_spike(6, lazy=True)
    out.append(Check("axioms", "doubly relaxed M6 is in D (materialised)", in_D(m6rr.materialize()) is not None))
    return out


# criterion 10 ----------------------------------------------------------------


def section4_checks(k: int = 3, stats: dict | None = None) -> list[Check]:
    out = []
    build = catalog.section4_matrix(k)
    n, t = build.params.n, build.params.t
    z = build.matrix
    out.append(Check("section4", f"k={k}: n={n}, t={t}", (n, t) == (2**k + k + 1, 2**k + k - 1)))
    even = [j + 1 for j, c in enumerate(z.columns) if c.bit_count() % 2 == 0]
    out.append(Check("section4", f"exactly columns {n + 1}..{2 * n} have zero coordinate sum",
                     even == list(range(n + 1, 2 * n + 1)), f"{len(even)} such columns"))
    out.append(Check("section4", "sum of beta equals sum of alpha (mod 2)",
                     sum(build.beta) % 2 == sum(build.alpha) % 2,
                     f"{sum(build.beta)} vs {sum(build.alpha)}"))
    plain = RelaxedBinaryMatroid(z)
    out.append(Check("section4", f"columns {n + 1}..{2 * n} form a circuit-hyperplane of M[Z]",
                     plain.is_circuit_hyperplane(build.right)))
    out.append(Check("section4", f"columns 1..{n} form a circuit-hyperplane of M[Z]",
                     plain.is_circuit_hyperplane(build.left)))
    hit = in_D(build.doubly_relaxed)
    out.append(Check("section4", "the doubly relaxed matroid is in D", hit is not None))
    t0 = time.perf_counter()
    w = catalog.pg_minor_witness(build)
    dt = time.perf_counter() - t0
    from .gf2 import projective_geometry, vector_matroid

    target = vector_matroid(projective_geometry(k))
    minor = lazy_minor(build.doubly_relaxed, sorted(w.contract), sorted(w.delete)).materialize()
    back = {v: key for key, v in w.iso.items()}
    ok = minor.relabel(back) == target
    out.append(Check("section4", f"PG({k - 1},2) is a minor of the doubly relaxed matroid", ok,
                     f"contract {len(w.contract)}, delete {len(w.delete)}"))
    # the same sets give a PG restriction in the unrelaxed matrix too
    base_minor = lazy_minor(plain, sorted(w.contract), sorted(w.delete)).materialize()
    out.append(Check("section4", "the witness also works in M[Z]", base_minor.relabel(back) == target))
    if stats is not None:
        stats.update(witness_seconds=dt, rank=gf2_rank(z.columns))
    return out


# criterion 11 ----------------------------------------------------------------


def dichotomy_checks(seed: int = 0, max_elements: int = 10, stats: dict | None = None) -> list[Check]:
    tally: dict[str, int] = {}
    failed = []
    for e in corpus(seed, max_elements):
        m = e.matroid
        if binary(m):
            continue
        for h in circuit_hyperplanes(m):
            rep = relaxation_of_nonbinary_dichotomy(m, h)
            if not rep.ok:
                failed.append(f"{e.name} at {m.word(h)}")
            else:
                tally[rep.disjunct] = tally.get(rep.disjunct, 0) + 1
    if stats is not None:
        stats.update(disjuncts=tally)
    total = sum(tally.values()) + len(failed)
    return [
        Check("lemmas", "relaxing a non-binary matroid yields U25/U35 or a member of D",
              not failed and total > 0, f"{total} relaxations {tally}" + (f", {failed[:3]}" if failed else "")),
    ]


# axioms ----------------------------------------------------------------------


def axiom_checks_catalog() -> list[Check]:
    out = []
    bad = []
    for name, m in catalog.list_entries():
        try:
            check_exchange(m)
        except Exception as exc:  # noqa: BLE001
            bad.append(f"{name}: {exc}")
    out.append(Check("axioms", "every catalog matroid satisfies basis exchange", not bad, "; ".join(bad[:3])))
    w3, q6, p6, u36 = catalog._chain()
    tri = [sum(1 for c in m.circuits() if c.bit_count() == 3) for m in (q6, p6, u36)]
    out.append(Check("axioms", "Q6, P6, U36 have 2, 1, 0 triangles", tri == [2, 1, 0], f"{tri}"))
    chain_ok = all(
        any(relax(a, h) == b for h in circuit_hyperplanes(a)) for a, b in ((w3, q6), (q6, p6), (p6, u36))
    )
    out.append(Check("axioms", "each of Q6, P6, U36 relaxes its predecessor", chain_ok))
    out.append(Check("axioms", "U36 from the chain is uniform", isomorphic(u36, uniform(3, 6)) is not None))
    p6 = catalog.named("P6")
    nonspanning = [c for c in p6.circuits() if p6.rank(c) < p6.r]
    out.append(Check("axioms", "P6 has one non-spanning circuit, a triangle",
                     len(nonspanning) == 1 and nonspanning[0].bit_count() == 3))
    k = catalog.named("K")
    out.append(Check("axioms", "K has 7 elements and rank 2", (k.size, k.r) == (7, 2)))
    dual_bad = []
    for name, m in catalog.list_entries():
        for h in circuit_hyperplanes(m):
            if relax(m, h).dual() != relax(m.dual(), m.full ^ h):
                dual_bad.append(name)
    out.append(Check("axioms", "relaxing then dualising equals dualising then relaxing the complement",
                     not dual_bad, ", ".join(dual_bad[:3])))
    return out


# suites ----------------------------------------------------------------------

SUITES = ("axioms", "lemmas", "excluded-minors", "cross-check", "section4")


def run_suite(suite: str, seed: int = 0, max_elements: int = 10) -> SuiteResult:
    names = SUITES if suite == "all" else (suite,)
    if any(n not in SUITES for n in names):
        raise ValueError(f"unknown suite {suite!r}")
    res = SuiteResult()

    def timed(label, fn, *args, **kw):
        t0 = time.perf_counter()
        checks = fn(*args, **kw)
        res.timings[label] = time.perf_counter() - t0
        res.checks.extend(checks)

    for name in names:
        if name == "axioms":
            timed("catalog axioms", axiom_checks_catalog)
            timed("spikes", spike_checks)
        elif name == "lemmas":
            small = min(max_elements, 10)
            timed("Kahn", kahn_checks)
            timed("closure", closure_checks, seed, min(max_elements, 9))
            timed("classifier", classifier_checks, seed, small, res.stats.setdefault("classifier", {}))
            timed("disconnected", disconnected_checks, seed, small, res.stats.setdefault("disconnected", {}))
            timed("roundedness", roundedness_checks, seed, small, res.stats.setdefault("roundedness", {}))
            timed("3-connected", three_connected_checks, seed, small, res.stats.setdefault("3-connected", {}))
            # tree decompositions are cheap enough to cover the 12-element corpus
            tree_max = 12 if max_elements >= 10 else max_elements
            timed("tree decomposition", tree_checks, seed, tree_max,
                  res.stats.setdefault("tree", {}))
            timed("dichotomy", dichotomy_checks, seed, small, res.stats.setdefault("dichotomy", {}))
        elif name == "excluded-minors":
            timed("excluded minors", excluded_minor_checks)
        elif name == "cross-check":
            timed("cross-check", cross_check, seed, min(max_elements, 10), res.stats.setdefault("cross-check", {}))
        elif name == "section4":
            timed("section4", section4_checks, 3, res.stats.setdefault("section4", {}))
    return res
