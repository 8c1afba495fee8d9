import pytest

from nearbinary import catalog
from nearbinary.catalog import BadRank, ConstraintUnsatisfiable, UnknownName
from nearbinary.core import check_exchange, uniform
from nearbinary.gf2 import binary, projective_geometry, vector_matroid
from nearbinary.minors import isomorphic
from nearbinary.relaxed import RelaxedBinaryMatroid, circuit_hyperplanes, lazy_minor


def test_names_and_aliases():
    assert catalog.named("U2,4") == uniform(2, 4)
    assert catalog.named("U24") == uniform(2, 4)
    assert catalog.named("M(K4)") == catalog.named("MK4")
    with pytest.raises(UnknownName):
        catalog.named("nope")


def test_every_entry_is_a_matroid():
    for name, m in catalog.list_entries():
        check_exchange(m)


def test_p6_has_one_non_spanning_circuit():
    p6 = catalog.p6()
    nonspanning = [c for c in p6.circuits() if p6.rank(c) < p6.r]
    assert [c.bit_count() for c in nonspanning] == [3]


def test_k_shape():
    k = catalog.named("K")
    assert (k.size, k.r) == (7, 2)
    assert catalog.named("K*") == k.dual()


def test_chain_triangle_counts():
    counts = [sum(1 for c in m.circuits() if c.bit_count() == 3) for m in catalog._chain()]
    assert counts == [3, 2, 1, 0]
    assert isomorphic(catalog._chain()[3], uniform(3, 6))


def test_base_counts():
    # frozen from the brute-force oracle in tests/oracles.py
    counts = {n: len(catalog.named(n).bases) for n in ("W3", "Q6", "P6", "R6", "K", "F7-", "Whirl4")}
    assert counts == {"W3": 17, "Q6": 18, "P6": 19, "R6": 18, "K": 18, "F7-": 29, "Whirl4": 46}


def test_spikes():
    for r in (4, 6):
        m = catalog.tipless_spike(r)
        x, y = catalog.spike_pair(r)
        chs = set(circuit_hyperplanes(m))
        assert x in chs and y in chs
        assert m.labels[0] == "e1" and m.labels[-1] == f"e{2 * r}"
    m4 = catalog.tipless_spike(4)
    assert m4.word(catalog.spike_pair(4)[0]) == "e2e3e4e5"
    assert len(catalog.doubly_relaxed_spike(4).bases) == len(m4.bases) + 2
    with pytest.raises(BadRank):
        catalog.tipless_spike(5)
    assert isinstance(catalog.tipless_spike(10), RelaxedBinaryMatroid)


def test_section4_shape():
    b = catalog.section4_matrix(3)
    assert (b.params.n, b.params.t) == (12, 10)
    z = b.matrix
    assert (z.rows, z.ncols) == (12, 24)
    even = [j for j, c in enumerate(z.columns) if c.bit_count() % 2 == 0]
    assert even == list(range(12, 24))
    assert sum(b.beta) % 2 == sum(b.alpha) % 2
    assert b.gamma == (1 + sum(b.beta)) % 2
    # the projective-geometry block sits in the top three rows
    pg = projective_geometry(3).columns
    assert [z.columns[j] & 0b111 for j in b.pg_columns] == list(pg)
    plain = RelaxedBinaryMatroid(z)
    assert plain.is_circuit_hyperplane(b.left) and plain.is_circuit_hyperplane(b.right)
    assert b.doubly_relaxed.relaxed == (b.right, b.left)


def test_section4_needs_odd_k():
    with pytest.raises(ConstraintUnsatisfiable):
        catalog.section4_matrix(2)


def test_pg_witness():
    b = catalog.section4_matrix(3)
    w = catalog.pg_minor_witness(b)
    f7 = vector_matroid(projective_geometry(3))
    got = lazy_minor(b.doubly_relaxed, sorted(w.contract), sorted(w.delete)).materialize()
    assert isomorphic(got, f7)
    # the same sets work on the matrix before relaxing
    base = lazy_minor(RelaxedBinaryMatroid(b.matrix), sorted(w.contract), sorted(w.delete))
    assert isomorphic(base.materialize(), f7) and binary(base.materialize())


@pytest.mark.slow
def test_pg_witness_by_search():
    b = catalog.section4_matrix(3)
    w = catalog.pg_minor_witness(b, search=True)
    got = lazy_minor(b.doubly_relaxed, sorted(w.contract), sorted(w.delete)).materialize()
    assert isomorphic(got, vector_matroid(projective_geometry(3)))


def test_k1_analogue():
    # one nonzero vector: PG(0,2) is a single non-loop element
    a = projective_geometry(1)
    assert a.columns == (1,)
    assert vector_matroid(a) == uniform(1, 1, ["a"])
