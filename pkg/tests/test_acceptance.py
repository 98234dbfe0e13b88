"""Acceptance criteria. Each test appends one PASS/FAIL line to the summary.

All tolerances are exact; the wall-clock budget is part of each criterion.
"""
import functools
import itertools
import random
import time
from contextlib import contextmanager

from cofiltree import fixtures, oracle
from cofiltree.chains import GF, QQ, ZZ, Chain, leading_simplex
from cofiltree.complex import Ordering, SimplicialMap, lex_compare, skeleton
from cofiltree.persistence import (
    check_tau1_functoriality,
    cofiltration_of_spanning_trees,
    is_cofiltration,
    precover,
    precover_map_and_check,
    subfiltration_of_spanning_trees,
)
from cofiltree.spanning import (
    cycle_basis_rel_tree,
    edge_exchange_candidates,
    is_spanning_tree,
    n_spanning_complex,
    order_minimal_spanning_tree,
)

from conftest import ACCEPTANCE_RESULTS
from test_complex import LEX_LABELS, LEX_TABLE


@contextmanager
def criterion(number, title, budget):
    start = time.perf_counter()
    status = "FAIL"
    try:
        yield
        elapsed = time.perf_counter() - start
        status = "PASS" if elapsed < budget else "FAIL"
    finally:
        elapsed = time.perf_counter() - start
        ACCEPTANCE_RESULTS.append(
            f"[{number}] {status} {title} ({elapsed:.2f}s, budget {budget:g}s, exact)"
        )
    assert elapsed < budget, f"criterion {number} took {elapsed:.2f}s (budget {budget}s)"


def test_c1_triangle_tree():
    with criterion(1, "triangle order-minimal tree is the lex minimum", 1):
        X = fixtures.hollow_triangle()
        T = order_minimal_spanning_tree(X)
        trees = [set(c) for c in itertools.combinations(X.edges, 2) if is_spanning_tree(X, set(c))]
        assert len(trees) == 3
        least = min(trees, key=functools.cmp_to_key(lambda a, b: lex_compare(a, b, X)))
        assert T.edges == {(1, 2), (1, 3)} == least


def test_c2_lex_table():
    with criterion(2, "lex relation table on subsets of {1,2,3}", 1):
        key = {1: 1, 2: 2, 3: 3}.__getitem__
        checked = 0
        for i, row in enumerate(LEX_TABLE):
            for k, sym in enumerate(row):
                j = i + 1 + k
                want = Ordering.LT if sym == "<" else Ordering.GT
                assert lex_compare(set(LEX_LABELS[i]), set(LEX_LABELS[j]), key) is want
                checked += 1
        assert checked == 28


def test_c3_grid_counterexample(grid_square):
    with criterion(3, "3x3 grid: no nested trees, cofiltration exists", 5):
        assert subfiltration_of_spanning_trees(grid_square) is None
        cof = cofiltration_of_spanning_trees(grid_square)
        assert is_cofiltration(grid_square, cof)


def test_c4_epimorphism(grid_square):
    with criterion(4, "precover maps onto 1-cycles over Z, Q, Z/2", 60):
        rng = random.Random(404)
        filtrations = [grid_square] + [fixtures.random_filtration(rng, 8, extents=(3, 3)) for _ in range(100)]
        for ring in (ZZ, QQ, GF(2)):
            for F in filtrations:
                P = precover(F, ring=ring)
                for r in precover_map_and_check(P, strict=False):
                    assert r.surjective, (ring, r)
                    assert r.image_rank == oracle.cycle_rank(F.at(r.grade), 1, ring)


def test_c5_tree_characterization():
    with criterion(5, "exchange pairs, candidates, leading simplices", 30):
        rng = random.Random(505)
        for _ in range(100):
            X = fixtures.random_graph(rng, 10)
            T = order_minimal_spanning_tree(X)
            # brute force every exchange, judged only by the tree predicate
            for sigma in T.complement:
                for tau in T.edges:
                    if X.rank(sigma) < X.rank(tau):
                        assert not is_spanning_tree(X, (T.edges - {tau}) | {sigma})
                for tau in edge_exchange_candidates(T, sigma):
                    assert is_spanning_tree(X, T.exchange(sigma, tau))
            basis = [z for _, z in cycle_basis_rel_tree(X, T)]
            if not basis:
                continue
            made = 0
            while made < 20:
                z = sum((b.scale(rng.randint(-5, 5)) for b in basis), Chain.zero(1))
                if z.is_zero():
                    continue
                assert oracle.is_cycle(z, X)
                assert leading_simplex(z, X) not in T.edges
                made += 1


def _recheck(X, A, n, ring):
    """Independent verification of the spanning conditions from matrices."""
    dA = oracle.boundary_matrix(A.complex, n, ring)
    dX = oracle.boundary_matrix(X, n, ring)
    k = len(A.top_simplices)
    injective = k == 0 or oracle.rank(dA, ring) == k
    if k == 0:
        equal = oracle.rank(dX, ring) == 0 if dX and dX[0] else True
    else:
        equal = oracle.image_submodule_equal(dA, dX, ring)
    return injective and equal and skeleton(A.complex, n - 1) == skeleton(X, n - 1)


def test_c6_n_spanning():
    with criterion(6, "2-spanning complexes verified or flagged", 60):
        X = fixtures.tetrahedron_boundary()
        A = n_spanning_complex(X, 2)
        assert len(A.top_simplices) == 3
        assert oracle.cycle_rank(A.complex, 2) == 0
        assert oracle.image_submodule_equal(oracle.boundary_matrix(A.complex, 2), oracle.boundary_matrix(X, 2))
        assert not A.flagged
        rng = random.Random(606)
        seen = 0
        while seen < 50:
            X = fixtures.random_complex(rng, 6)
            if not X.of_dim(2):
                continue
            seen += 1
            A = n_spanning_complex(X, 2, ZZ)
            assert A.flagged == (not _recheck(X, A, 2, ZZ))
            if not A.flagged:
                assert len(A.excluded) == oracle.cycle_rank(X, 2, ZZ)


def _is_divisibility_chain(d):
    k = sum(1 for x in d if x != 0)
    if any(x == 0 for x in d[:k]) or any(x != 0 for x in d[k:]):
        return False
    return all(d[i + 1] % d[i] == 0 for i in range(k - 1))


def test_c7_oracle():
    with criterion(7, "Smith normal form and fixture homology", 30):
        rng = random.Random(707)
        for _ in range(200):
            m, n = rng.randint(1, 8), rng.randint(1, 8)
            M = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)]
            U, S, V = oracle.smith_normal_form(M)
            assert oracle.matmul(oracle.matmul(U, M), V) == S
            assert abs(oracle.determinant(U)) == 1 and abs(oracle.determinant(V)) == 1
            assert oracle.is_smith_normal_form(S)
            assert _is_divisibility_chain(oracle.diagonal(S))
        h = oracle.homology(fixtures.hollow_triangle(), 1)
        assert (h.betti, h.torsion) == (1, ())
        h = oracle.homology(fixtures.tetrahedron_boundary(), 2)
        assert (h.betti, h.torsion) == (1, ())
        h = oracle.homology(fixtures.full_triangle(), 1)
        assert (h.betti, h.torsion) == (0, ())


def test_c8_functoriality():
    with criterion(8, "tau1 on inclusions and the wedge fold", 10):
        rng = random.Random(808)
        for _ in range(50):
            X = fixtures.random_complex(rng, 6)
            A = fixtures.random_subcomplex(rng, X)
            inc = SimplicialMap(A, X, {v: v for v in A.vertices})
            assert check_tau1_functoriality(inc, A, X)
        f = fixtures.wedge_fold_map()
        assert f.is_order_preserving() and f.is_dimension_preserving() and not f.is_injective()
        assert check_tau1_functoriality(f, f.source, f.target)
