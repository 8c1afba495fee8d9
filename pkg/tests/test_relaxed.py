import pytest
from hypothesis import given, strategies as st

import oracles as O
from conftest import binary_matrices, binary_matroids
from nearbinary import catalog
from nearbinary.core import uniform
from nearbinary.gf2 import BinaryMatrix, fundamental_matrix, vector_matroid
from nearbinary.relaxed import (
    NotACircuitHyperplane,
    NotAFreeBasis,
    RelaxedBinaryMatroid,
    circuit_hyperplanes,
    free_bases,
    from_matrix,
    is_free_basis,
    lazy_minor,
    relax,
    tighten,
)


def test_whirl_is_a_relaxed_wheel():
    w3 = catalog.whirl(3)
    assert len(w3.bases) == 17
    assert free_bases(w3) == (w3.mask(list("def")),)
    assert tighten(w3, list("def")) == catalog.mk4()


def test_relax_rejects_non_circuit_hyperplanes():
    with pytest.raises(NotACircuitHyperplane):
        relax(catalog.mk4(), list("abc"))
    with pytest.raises(NotAFreeBasis):
        tighten(catalog.mk4(), list("abc"))


def test_u24_free_bases():
    # every basis of U2,4 is free
    assert len(free_bases(uniform(2, 4))) == 6


@given(binary_matroids(max_cols=7))
def test_relax_then_tighten(m):
    for h in circuit_hyperplanes(m):
        mp = relax(m, h)
        assert len(mp.bases) == len(m.bases) + 1
        assert is_free_basis(mp, h)
        assert tighten(mp, h) == m


@given(binary_matroids(max_cols=6))
def test_free_bases_match_oracle(m):
    got = {frozenset(m.subset(b)) for b in free_bases(m)}
    assert got == O.free_bases(O.sets_of(m), m.labels)


def test_lazy_rank_on_the_relaxed_set():
    a = fundamental_matrix(catalog.mk4())
    lazy = from_matrix(a, [list("def")])
    assert lazy.rank(list("def")) == 3
    assert lazy.rank(list("abd")) == 2
    assert lazy.materialize() == catalog.whirl(3)


def test_lazy_fano_minus_deletion_clause():
    f7 = catalog.fano()
    line = circuit_hyperplanes(f7)[0]
    lazy = RelaxedBinaryMatroid(fundamental_matrix(f7), (line,))
    outside = next(x for i, x in enumerate(f7.labels) if not line >> i & 1)
    got = lazy.delete(outside)
    assert len(got.relaxed) == 1
    deleted = f7.delete(outside)
    assert got.materialize() == relax(deleted, deleted.mask(f7.subset(line)))


def test_lazy_coloop_caveat():
    # X = {a, b} in U1,2 + U1,1; c is a coloop outside X
    a = BinaryMatrix.from_rows(["110", "001"], ["a", "b", "c"])
    m = vector_matroid(a)
    lazy = from_matrix(a, [["a", "b"]])
    got = lazy.delete("c").materialize()
    assert got.bases == {0b11}
    assert relax(m, ["a", "b"]).delete("c") == got


@given(binary_matrices(max_cols=7), st.data())
def test_lazy_minors_agree_with_explicit(a, data):
    m = vector_matroid(a)
    chs = circuit_hyperplanes(m)
    if not chs:
        return
    x = chs[data.draw(st.integers(0, len(chs) - 1))]
    lazy = from_matrix(a, [x])
    explicit = relax(m, x)
    c = data.draw(st.sets(st.sampled_from(m.labels), max_size=2))
    rest = [y for y in m.labels if y not in c]
    d = data.draw(st.sets(st.sampled_from(rest), max_size=2)) if rest else set()
    assert lazy_minor(lazy, sorted(c), sorted(d)).materialize() == explicit.minor(c, d)


def test_doubly_relaxed_spike_contraction():
    lazy = catalog.doubly_relaxed_spike(4, lazy=True)
    got = lazy_minor(lazy, ["e2"])
    # contracting inside X keeps X - e2 relaxed and absorbs Y
    assert len(got.relaxed) == 1
    assert got.word(got.relaxed[0]) == "e3e4e5"
    assert got.materialize() == catalog.doubly_relaxed_spike(4).contract("e2")
