from hypothesis import given, settings

import oracles as O
from conftest import small_matroids
from nearbinary import catalog
from nearbinary.core import Matroid, uniform
from nearbinary.minors import (
    IsoIndex,
    MinorCache,
    contains_minor,
    covered_elements,
    fingerprint,
    has_minor,
    has_minor_using,
    is_fragile,
    isomorphic,
    roundedness_check,
)


def test_u24_minor_in_whirl_not_in_k4():
    u24 = uniform(2, 4)
    w = has_minor(catalog.whirl(3), u24)
    assert w is not None
    assert w.apply(catalog.whirl(3)) == u24
    assert has_minor(catalog.mk4(), u24) is None
    assert has_minor(catalog.fano(), u24) is None


def test_self_dual():
    phi = isomorphic(uniform(2, 4), uniform(2, 4).dual())
    assert phi is not None


def test_k_and_dual_not_isomorphic():
    k = catalog.k_matroid()
    assert isomorphic(k, k.dual()) is None


@given(small_matroids(max_cols=5), small_matroids(max_cols=5))
@settings(max_examples=60)
def test_isomorphism_matches_brute_force(a, b):
    if a.size != b.size:
        return
    b = Matroid([f"z{i}" for i in range(b.size)], b.bases)
    phi = isomorphic(a, b)
    want = O.isomorphic(O.sets_of(a), a.labels, O.sets_of(b), b.labels)
    assert (phi is not None) == want
    if phi is not None:
        assert a.relabel(phi) == b


@given(small_matroids(max_cols=6))
def test_isomorphic_copy_found(m):
    shuffled = list(reversed(m.labels))
    copy = m.reorder(shuffled).relabel({x: x.upper() for x in m.labels})
    assert fingerprint(copy) == fingerprint(m)
    assert isomorphic(m, copy) is not None


@given(small_matroids(max_cols=6))
@settings(max_examples=25)
def test_u24_minor_matches_brute_force(m):
    u24 = uniform(2, 4)
    want = O.has_minor(O.sets_of(m), m.labels, O.sets_of(u24), u24.labels)
    w = has_minor(m, u24)
    assert (w is not None) == want
    if w is not None:
        assert w.apply(m) == u24


def test_minor_using_every_element_of_whirl():
    w3 = catalog.whirl(3)
    for e in w3.labels:
        w = has_minor_using(w3, uniform(2, 4), e)
        assert w is not None and e in w.survivors()
    assert covered_elements(w3, [uniform(2, 4)]) == w3.full


def test_cache_and_index():
    cache = MinorCache()
    assert contains_minor(catalog.r6(), uniform(2, 4), cache)
    assert contains_minor(catalog.r6(), uniform(2, 4), cache)
    index = IsoIndex()
    assert index.add(uniform(2, 4))
    assert not index.add(uniform(2, 4).dual())
    assert len(index) == 1


def test_fragility():
    assert is_fragile(catalog.whirl(3), uniform(2, 4))
    # contracting drops U2,6 to rank one
    assert is_fragile(uniform(2, 6), uniform(2, 4))
    assert not is_fragile(uniform(3, 6), uniform(2, 4))


def test_roundedness_on_a_few():
    rep = roundedness_check([uniform(2, 4)], [catalog.whirl(3), catalog.r6(), catalog.mk4()])
    assert rep.ok and rep.checked == 3 and rep.with_minor == 2
