import pytest
from hypothesis import given

import oracles as O
from conftest import small_matroids
from nearbinary import catalog
from nearbinary.core import direct_sum, is_connected, uniform
from nearbinary.minors import isomorphic
from nearbinary.sums import (
    BasepointDegenerate,
    InvalidTree,
    LabelCollision,
    NotConnected,
    TreeDecomposition,
    canonical_violations,
    reconstruct,
    render,
    tree_decompose,
    tree_minor_check,
    twosum,
)


def _circuit_sets(m):
    return {frozenset(m.subset(c)) for c in m.circuits()}


def test_r6_from_two_u24():
    r6 = catalog.r6()
    assert (r6.size, r6.r, len(r6.bases)) == (6, 3, 18)
    want = O.twosum_circuits(
        _circuit_sets(uniform(2, 4, "abcp")), _circuit_sets(uniform(2, 4, "defq")), "p", "q"
    )
    assert _circuit_sets(r6) == want


@given(small_matroids(max_cols=5), small_matroids(max_cols=5))
def test_twosum_matches_circuit_description(a, b):
    b = b.relabel({x: x.upper() for x in b.labels})
    if a.size < 3 or b.size < 3:
        return
    p1, p2 = a.labels[0], b.labels[0]
    if a.is_loop(p1) or a.is_coloop(p1) or b.is_loop(p2) or b.is_coloop(p2):
        with pytest.raises(BasepointDegenerate):
            twosum(a, b, p1, p2)
        return
    s = twosum(a, b, p1, p2)
    assert _circuit_sets(s) == O.twosum_circuits(_circuit_sets(a), _circuit_sets(b), p1, p2)


def test_twosum_errors():
    with pytest.raises(LabelCollision):
        twosum(uniform(2, 4, "abcp"), uniform(2, 4, "abdq"), "p", "q")
    with pytest.raises(BasepointDegenerate):
        twosum(uniform(1, 2, "ap"), uniform(2, 4, "defq"), "p", "q")


def test_tree_of_r6_has_two_u24_nodes():
    tree = tree_decompose(catalog.r6())
    assert len(tree.nodes) == 2 and len(tree.edges) == 1
    assert all(isomorphic(n, uniform(2, 4)) for n in tree.nodes)
    assert reconstruct(tree) == catalog.r6()
    assert canonical_violations(tree) == []


def test_tree_of_k():
    k = catalog.k_matroid()
    tree = tree_decompose(k)
    kinds = sorted((n.r, n.size) for n in tree.nodes)
    assert kinds == [(1, 3), (1, 3), (1, 3), (2, 4)]
    assert reconstruct(tree) == k
    assert "node 0" in render(tree)


def test_tree_of_three_connected_is_a_single_node():
    tree = tree_decompose(catalog.mk4())
    assert len(tree.nodes) == 1 and tree.edges == []


def test_parallel_class_merges_into_one_node():
    # U1,5 has no exact 2-separation to split on after merging
    tree = tree_decompose(uniform(1, 5))
    assert len(tree.nodes) == 1


def test_circuit_gives_one_corank_one_node():
    tree = tree_decompose(uniform(5, 6))
    assert len(tree.nodes) == 1


def test_disconnected_rejected():
    with pytest.raises(NotConnected):
        tree_decompose(direct_sum(uniform(2, 4), uniform(1, 1, ["e"])))


def test_bad_tree_rejected():
    with pytest.raises(InvalidTree):
        reconstruct(TreeDecomposition([uniform(2, 4), uniform(2, 4, "efgh")], []))


@given(small_matroids(max_cols=7))
def test_round_trip(m):
    if m.size == 0 or not is_connected(m):
        return
    tree = tree_decompose(m)
    assert reconstruct(tree) == m
    assert canonical_violations(tree) == []


def test_tree_minor_check_on_r6():
    r6 = catalog.r6()
    out = tree_minor_check(tree_decompose(r6), r6)
    assert [w is not None for _, _, w in out] == [True]
