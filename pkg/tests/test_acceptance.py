"""One test per acceptance criterion; each prints a single PASS/FAIL line."""

import pytest

from nearbinary import catalog, verify
from nearbinary.classes import in_D
from nearbinary.corpus import corpus
from nearbinary.gf2 import projective_geometry, vector_matroid
from nearbinary.minors import isomorphic
from nearbinary.relaxed import RelaxedBinaryMatroid, lazy_minor


@pytest.fixture
def report(capsys):
    def emit(number, title, checks, extra_ok=True):
        failed = [c for c in checks if not c.ok]
        ok = not failed and extra_ok and bool(checks)
        with capsys.disabled():
            status = "PASS" if ok else "FAIL"
            print(f"\n{status} criterion {number}: {title} ({len(checks) - len(failed)}/{len(checks)} checks)")
        assert not failed, "\n".join(c.line() for c in failed)
        assert extra_ok and checks
    return emit


def test_criterion_01_excluded_minors(report):
    checks = verify.excluded_minor_checks()
    names = {c.name for c in checks}
    expected = {f"{n} is an excluded minor for Z" for n in catalog.EX_Z_SPORADIC}
    expected |= {f"{n} is an excluded minor for R" for n in catalog.EX_R_SPORADIC}
    expected |= {"M4rr is an excluded minor for Z", "M4rr is an excluded minor for R"}
    report(1, "excluded-minor minimality", checks, names == expected)


def test_criterion_02_cross_check(report):
    stats = {}
    checks = verify.cross_check(0, 10, stats)
    report(2, "in_Z / in_R agree with minor scans on the corpus", checks, len(corpus(0, 10)) >= 500)


def test_criterion_03_classifier(report):
    report(3, "classifier soundness", verify.classifier_checks(0, 10, {}))


def test_criterion_04_kahn(report):
    report(4, "relaxation identities", verify.kahn_checks())


def test_criterion_05_disconnected(report):
    report(5, "disconnected structure", verify.disconnected_checks(0, 10, {}))


def test_criterion_06_roundedness(report):
    stats = {}
    checks = verify.roundedness_checks(0, 10, stats)
    report(6, "roundedness of the three families", checks, len(checks) == len(verify.ROUNDED_FAMILIES))


def test_criterion_07_three_connected(report):
    report(7, "3-connected structure", verify.three_connected_checks(0, 10, {}))


def test_criterion_08_tree_decomposition(report):
    report(8, "tree decomposition round trip and invariants", verify.tree_checks(0, 12, {}))


def test_criterion_09_spikes(report):
    checks = verify.spike_checks()
    checks += [c for c in verify.excluded_minor_checks() if c.name.startswith("M4rr")]
    m4rr = catalog.doubly_relaxed_spike(4)
    report(9, "spike family", checks, in_D(m4rr) is not None)


def test_criterion_10_section4(report):
    checks = verify.section4_checks(3, {})
    b = catalog.section4_matrix(3)
    w = catalog.pg_minor_witness(b)
    f7 = vector_matroid(projective_geometry(3))
    minor = lazy_minor(b.doubly_relaxed, sorted(w.contract), sorted(w.delete)).materialize()
    plain = RelaxedBinaryMatroid(b.matrix)
    exact = (
        (b.params.n, b.params.t) == (12, 10)
        and [j + 1 for j, c in enumerate(b.matrix.columns) if c.bit_count() % 2 == 0] == list(range(13, 25))
        and plain.is_circuit_hyperplane(b.left)
        and plain.is_circuit_hyperplane(b.right)
        and in_D(b.doubly_relaxed) is not None
        and isomorphic(minor, f7) is not None
    )
    report(10, "matrix Z at k=3", checks, exact)


def test_criterion_11_dichotomy(report):
    report(11, "relaxation dichotomy", verify.dichotomy_checks(0, 10, {}))
