import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cofiltree import fixtures
from cofiltree.complex import (
    OrderedSimplicialComplex,
    Ordering,
    SimplicialMap,
    apply_simplicial_map,
    complex_from_simplices,
    dim,
    lex_compare,
    n_difference,
    skeleton,
)
from cofiltree.errors import (
    DuplicateVertexInSimplex,
    InvalidSimplicialOrder,
    NotASubcomplex,
    VertexNotInDomain,
)


def test_face_closure_counts():
    assert len(complex_from_simplices([(1, 2, 3)])) == 7
    assert len(complex_from_simplices([(1,), (2,)])) == 2
    assert len(complex_from_simplices([(1, 2), (2, 3), (1, 3)])) == 6


def test_duplicate_vertex():
    with pytest.raises(DuplicateVertexInSimplex):
        complex_from_simplices([(1, 1, 2)])


def test_face_closure_idempotent():
    X = fixtures.tetrahedron_boundary()
    assert complex_from_simplices(X.simplices) == X


def test_default_order_conditions():
    for X in (fixtures.full_triangle(), fixtures.tetrahedron_boundary(), fixtures.complete_graph(5)):
        # faces precede cofaces, checked exhaustively
        for s, t in itertools.product(X, repeat=2):
            if set(s) < set(t):
                assert X.rank(s) < X.rank(t)
        assert len({X.rank(s) for s in X}) == len(X)


def test_custom_order_validated():
    with pytest.raises(InvalidSimplicialOrder):
        OrderedSimplicialComplex([(1,), (2,), (1, 2)], order=[(1, 2), (1,), (2,)])
    X = OrderedSimplicialComplex([(1,), (2,), (3,), (1, 2), (2, 3)], order=[(2,), (3,), (2, 3), (1,), (1, 2)])
    assert X.edges == [(2, 3), (1, 2)]


def test_missing_face_rejected():
    with pytest.raises(NotASubcomplex):
        OrderedSimplicialComplex([(1, 2)])


def test_skeleton():
    full = fixtures.full_triangle()
    assert skeleton(full, 1) == fixtures.hollow_triangle()
    X = fixtures.tetrahedron_boundary()
    assert skeleton(X, X.dim) == X
    assert skeleton(fixtures.hollow_triangle(), 0).simplices == ((1,), (2,), (3,))


def test_n_difference():
    X = fixtures.hollow_triangle()
    A = X.subcomplex([(1,), (2,), (3,), (1, 2), (1, 3)])
    D = n_difference(X, A, 1)
    assert set(D) == {(1,), (2,), (3,), (2, 3)}
    assert n_difference(X, X, 1) == skeleton(X, 0)
    full = fixtures.full_triangle()
    assert n_difference(full, skeleton(full, 0), 1) == skeleton(full, 1)


def test_n_difference_keeps_lower_skeleton():
    X = fixtures.tetrahedron_boundary()
    A = X.subcomplex(skeleton(X, 1).simplices + ((1, 2, 3),))
    D = n_difference(X, A, 2)
    assert skeleton(D, 1) == skeleton(X, 1)
    assert D.of_dim(2) == [(1, 2, 4), (1, 3, 4), (2, 3, 4)]


def test_n_difference_requires_subcomplex():
    with pytest.raises(NotASubcomplex):
        n_difference(fixtures.hollow_triangle(), [(1, 4)], 1)


# rows/columns: empty, 1, 2, 3, 12, 13, 23, 123; upper triangle of the
# reference relation table ("<=" means row <= column)
LEX_LABELS = [(), (1,), (2,), (3,), (1, 2), (1, 3), (2, 3), (1, 2, 3)]
LEX_TABLE = [
    ">>>>>>>",
    "<<>><>",
    "<>>>>",
    ">>>>",
    "<<>",
    "<>",
    ">",
]


def test_lex_examples():
    key = {1: 1, 2: 2, 3: 3}.__getitem__
    assert lex_compare({1, 2}, {1, 3}, key) is Ordering.LT
    assert lex_compare({1, 3}, {2, 3}, key) is Ordering.LT
    assert lex_compare({1}, {1, 2}, key) is Ordering.GT
    assert lex_compare({2}, {2}, key) is Ordering.EQ


def test_lex_table():
    key = {1: 1, 2: 2, 3: 3}.__getitem__
    count = 0
    for i, row in enumerate(LEX_TABLE):
        for k, sym in enumerate(row):
            j = i + 1 + k
            want = Ordering.LT if sym == "<" else Ordering.GT
            assert lex_compare(set(LEX_LABELS[i]), set(LEX_LABELS[j]), key) is want, (i, j)
            count += 1
    assert count == 28


@settings(max_examples=100, deadline=None)
@given(st.lists(st.frozensets(st.integers(0, 6)), min_size=3, max_size=3))
def test_lex_total_order(sets):
    A, B, C = sets
    key = lambda x: x  # noqa: E731
    ab, ba = lex_compare(A, B, key), lex_compare(B, A, key)
    assert ab == -ba
    assert (ab == Ordering.EQ) == (A == B)
    if ab <= 0 and lex_compare(B, C, key) <= 0:
        assert lex_compare(A, C, key) <= 0


def test_subsets_come_later_in_lex_order():
    key = lambda x: x  # noqa: E731
    rng = random.Random(3)
    for _ in range(50):
        B = {x for x in range(8) if rng.random() < 0.5}
        A = {x for x in B if rng.random() < 0.5}
        if A != B:
            assert lex_compare(B, A, key) is Ordering.LT


def test_simplicial_map_identity_and_collapse():
    X = fixtures.full_triangle()
    ident = SimplicialMap(X, X, {1: 1, 2: 2, 3: 3})
    assert apply_simplicial_map(ident, (1, 2, 3)) == (1, 2, 3)
    Y = complex_from_simplices([("a", "b")])
    f = SimplicialMap(complex_from_simplices([(1, 2)]), Y, {1: "a", 2: "a"})
    assert f((1, 2)) == ("a",)
    assert dim(f((1, 2))) == 0


def test_simplicial_map_missing_vertex():
    X = complex_from_simplices([(1, 2)])
    with pytest.raises(VertexNotInDomain):
        SimplicialMap(X, X, {1: 1})


def test_wedge_fold_map():
    f = fixtures.wedge_fold_map()
    for t in f.source.of_dim(2):
        assert f(t) == ("a", "b", "c")
    assert f.is_order_preserving()
    assert f.is_dimension_preserving()
    assert not f.is_injective()
