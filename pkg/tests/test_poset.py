import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cofiltree.errors import CycleInRelation, EmptyExtent, UnknownElement
from cofiltree.poset import UpperSet, grid_poset, is_upper_set, poset_from_covers


def test_single_element():
    P = poset_from_covers(["a"], [])
    assert P.leq("a", "a")
    assert len(P) == 1


def test_transitive_closure():
    P = poset_from_covers(["a", "b", "c"], [("a", "b"), ("b", "c")])
    assert P.leq("a", "c")
    assert not P.leq("c", "a")


def test_cycle_rejected():
    with pytest.raises(CycleInRelation):
        poset_from_covers(["a", "b"], [("a", "b"), ("b", "a")])


def test_cover_with_unknown_element():
    with pytest.raises(UnknownElement):
        poset_from_covers(["a"], [("a", "z")])


def test_grid_2x2():
    P = grid_poset((2, 2))
    assert len(P) == 4
    assert P.leq((0, 0), (1, 1))


def test_grid_antichain():
    P = grid_poset((3, 3))
    assert not P.comparable((1, 0), (0, 1))


def test_grid_single_chain_element():
    P = grid_poset((1,))
    assert P.elements == ((0,),)


def test_empty_extent():
    with pytest.raises(EmptyExtent):
        grid_poset((2, 0))


def test_is_upper_set_examples():
    P = grid_poset((2, 2))
    assert is_upper_set(P, {(1, 1)})
    assert not is_upper_set(P, {(0, 0)})


def test_union_of_principal_upper_sets():
    P = grid_poset((3, 3))
    S = P.up((0, 2)) | P.up((2, 1))
    # exhaustive scan of the closure condition
    closed = all(q in S for a in S for q in P.elements if all(x <= y for x, y in zip(a, q)))
    assert closed
    assert is_upper_set(P, S)
    assert UpperSet(P, S).generators == [(0, 2), (2, 1)]


def test_unknown_element():
    P = grid_poset((2,))
    with pytest.raises(UnknownElement):
        P.is_upper_set({(5,)})


def test_linear_extension_respects_order():
    P = poset_from_covers(["c", "b", "a"], [("a", "b"), ("b", "c")])
    assert P.linear_extension() == ("a", "b", "c")


def test_covers_of_grid():
    P = grid_poset((2, 2))
    assert sorted(P.covers()) == [
        ((0, 0), (0, 1)), ((0, 0), (1, 0)), ((0, 1), (1, 1)), ((1, 0), (1, 1))
    ]


@st.composite
def random_dag(draw):
    n = draw(st.integers(1, 7))
    pairs = draw(st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))))
    return n, [(a, b) for a, b in pairs if a < b]


@settings(max_examples=60, deadline=None)
@given(random_dag())
def test_order_axioms(dag):
    n, covers = dag
    P = poset_from_covers(list(range(n)), covers)
    E = P.elements
    for p in E:
        assert P.leq(p, p)
    for p, q, r in itertools.product(E, repeat=3):
        if P.leq(p, q) and P.leq(q, r):
            assert P.leq(p, r)
    for p, q in itertools.product(E, repeat=2):
        if P.leq(p, q) and P.leq(q, p):
            assert p == q


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_unions_and_intersections_of_upper_sets(data):
    P = grid_poset((3, 3))
    gens_a = data.draw(st.sets(st.sampled_from(P.elements)))
    gens_b = data.draw(st.sets(st.sampled_from(P.elements)))
    A, B = P.upper_closure(gens_a), P.upper_closure(gens_b)
    assert P.is_upper_set(A | B)
    assert P.is_upper_set(A & B)
