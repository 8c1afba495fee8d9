import pytest
from hypothesis import given, strategies as st

import oracles as O
from conftest import small_matroids
from nearbinary import catalog
from nearbinary.core import (
    ElementNotInGroundSet,
    EmptyBases,
    ExchangeFailure,
    GroundSetOverflow,
    Matroid,
    MixedCardinality,
    add_parallel,
    add_series,
    components,
    connectivity,
    connectivity_function,
    direct_sum,
    is_connected,
    series_parallel_extend,
    two_separations,
    uniform,
    validate,
)


def test_exchange_failure_on_two_disjoint_pairs():
    with pytest.raises(ExchangeFailure):
        validate([{"a", "b"}, {"c", "d"}], "abcd")


def test_all_pairs_give_u24():
    m = validate([set(p) for p in ("ab", "ac", "ad", "bc", "bd", "cd")], "abcd")
    assert m == uniform(2, 4, "abcd")


def test_bad_inputs():
    with pytest.raises(EmptyBases):
        Matroid("ab", [], check=True)
    with pytest.raises(MixedCardinality):
        Matroid("abc", [0b1, 0b110], check=True)
    with pytest.raises(GroundSetOverflow):
        uniform(1, 17)
    with pytest.raises(ElementNotInGroundSet):
        uniform(2, 4).delete("z")


def test_u24_basics():
    m = uniform(2, 4)
    assert m.r == 2 and m.corank == 2
    assert len(m.circuits()) == 4
    assert all(h.bit_count() == 1 for h in m.hyperplanes())
    assert m.dual() == m


def test_mk4_circuits_and_rim():
    m = catalog.mk4()
    assert len(m.bases) == 16
    triangles = {m.word(c) for c in m.circuits() if c.bit_count() == 3}
    assert triangles == {"abd", "bce", "acf", "def"}


@given(small_matroids())
def test_rank_matches_bases(m):
    b = O.sets_of(m)
    for mask in range(0, 1 << m.size, 3):
        assert m.rank(mask) == O.rank(b, m.subset(mask))


@given(small_matroids(max_cols=6))
def test_circuits_match_oracle(m):
    got = {frozenset(m.subset(c)) for c in m.circuits()}
    assert got == O.circuits(O.sets_of(m), m.labels)


@given(small_matroids())
def test_dual_is_an_involution(m):
    assert m.dual().dual() == m
    assert m.dual().r == m.corank


@given(small_matroids(), st.data())
def test_delete_contract_duality(m, data):
    if m.size == 0:
        return
    e = data.draw(st.sampled_from(m.labels))
    assert m.delete(e).dual() == m.dual().contract(e)
    assert m.contract(e).dual() == m.dual().delete(e)


@given(small_matroids(max_cols=6), st.data())
def test_minor_matches_oracle(m, data):
    c = data.draw(st.sets(st.sampled_from(m.labels))) if m.size else set()
    rest = [x for x in m.labels if x not in c]
    d = data.draw(st.sets(st.sampled_from(rest))) if rest else set()
    got = m.minor(c, d)
    want, keep = O.minor(O.sets_of(m), m.labels, c, d)
    assert set(got.labels) == keep
    assert O.sets_of(got) == want


@given(small_matroids())
def test_rank_is_submodular(m):
    full = m.full
    for a in range(0, full + 1, 5):
        for b in range(0, full + 1, 7):
            assert m.rank(a | b) + m.rank(a & b) <= m.rank(a) + m.rank(b)


@given(small_matroids(max_cols=6))
def test_components_match_oracle(m):
    got = {frozenset(m.subset(c)) for c in components(m)}
    assert got == O.components(O.sets_of(m), m.labels)
    assert is_connected(m) == (len(got) <= 1)


def test_connectivity_levels():
    assert connectivity(uniform(2, 4)).is_three_connected
    r6 = catalog.r6()
    rep = connectivity(r6)
    assert rep.is_connected and not rep.is_three_connected
    side, k = rep.witness_separation
    assert k == 2 and connectivity_function(r6)[side] == 1
    d = direct_sum(uniform(2, 4), uniform(1, 1, ["e"]))
    assert not is_connected(d)
    assert two_separations(r6)[0] == r6.mask(list("abc"))


def test_series_and_parallel():
    m = add_parallel(uniform(2, 4), "a", "x")
    assert m.mask(["a", "x"]) in m.parallel_classes()
    m = add_series(uniform(2, 4), "a", "y")
    assert m.mask(["a", "y"]) in m.series_classes()
    k = series_parallel_extend(uniform(2, 4), {"a": (0, 1), "b": (0, 1), "c": (0, 1)}, "efg")
    assert k == catalog.k_matroid()
    assert (k.size, k.r) == (7, 2)
