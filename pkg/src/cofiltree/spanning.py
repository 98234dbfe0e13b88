"""Homological spanning trees, order-minimal trees and n-spanning complexes."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from . import oracle
from .chains import ZZ, Chain, Ring, boundary_of_simplex
from .complex import OrderedSimplicialComplex, Simplex, dim, skeleton
from .errors import NoPath, SpanVerificationFailed


class DisjointSet:
    """Union-find with path halving and union by size."""

    def __init__(self, items: Iterable = ()):
        self._parent = {}
        self._size = {}
        for x in items:
            self.add(x)

    def add(self, x):
        if x not in self._parent:
            self._parent[x] = x
            self._size[x] = 1

    def find(self, x):
        parent = self._parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self._size[ra] < self._size[rb]:
            ra, rb = rb, ra
        self._parent[rb] = ra
        self._size[ra] += self._size[rb]
        return True

    def connected(self, a, b) -> bool:
        return self.find(a) == self.find(b)

    def partition(self) -> set:
        groups = {}
        for x in self._parent:
            groups.setdefault(self.find(x), set()).add(x)
        return {frozenset(g) for g in groups.values()}


@dataclass(frozen=True)
class SpanningTree:
    """All vertices of ``host`` plus the 1-simplices in ``edges``."""

    host: OrderedSimplicialComplex
    edges: frozenset

    @property
    def complement(self) -> list:
        """Non-tree edges of the host, in simplicial order."""
        return [e for e in self.host.edges if e not in self.edges]

    def sorted_edges(self) -> list:
        return self.host.sort(self.edges)

    def as_complex(self) -> OrderedSimplicialComplex:
        return self.host.subcomplex(self.host.of_dim(0) + list(self.edges))

    def __contains__(self, edge):
        return edge in self.edges

    def __len__(self):
        return len(self.edges)

    def exchange(self, sigma: Simplex, tau: Simplex) -> SpanningTree:
        """T + sigma - tau (no validity check)."""
        return SpanningTree(self.host, (self.edges - {tau}) | {sigma})


def _tree_edges(T) -> frozenset:
    if isinstance(T, SpanningTree):
        return T.edges
    if isinstance(T, OrderedSimplicialComplex):
        return frozenset(s for s in T if dim(s) >= 1)
    return frozenset(tuple(s) for s in T)


def spanning_tree_defect(X: OrderedSimplicialComplex, T) -> str | None:
    """Reason code why ``T`` is not a spanning tree of ``X``, or None.

    ``T`` is a SpanningTree, a subcomplex, or a set of edges (vertices of X
    implied). Codes: ``not-a-subcomplex``, ``vertices``, ``cycle``,
    ``components``.
    """
    if isinstance(T, OrderedSimplicialComplex):
        if not X.is_subcomplex(T):
            return "not-a-subcomplex"
        if set(T.of_dim(0)) != set(X.of_dim(0)):
            return "vertices"
        if T.dim >= 2:
            return "cycle"
    simplices = _tree_edges(T)
    if any(s not in X or dim(s) != 1 for s in simplices):
        return "not-a-subcomplex"
    verts = X.vertices
    tree = DisjointSet(verts)
    for u, v in simplices:
        if not tree.union(u, v):
            return "cycle"
    host = DisjointSet(verts)
    for u, v in X.edges:
        host.union(u, v)
    if tree.partition() != host.partition():
        return "components"
    return None


def is_spanning_tree(X: OrderedSimplicialComplex, T) -> bool:
    return spanning_tree_defect(X, T) is None


def order_minimal_spanning_tree(X: OrderedSimplicialComplex) -> SpanningTree:
    """Kruskal in simplicial order: keep an edge iff it joins two components."""
    ds = DisjointSet(X.vertices)
    kept = [e for e in X.edges if ds.union(*e)]
    return SpanningTree(X, frozenset(kept))


def all_spanning_trees(X: OrderedSimplicialComplex) -> list:
    """Every spanning tree of X, by include/exclude branching over the edges.

    Exponential; intended for small complexes.
    """
    edges = X.edges
    ds = DisjointSet(X.vertices)
    for e in edges:
        ds.union(*e)
    target = len(X.vertices) - len(ds.partition())
    out = []

    def rec(i, chosen, forest):
        if len(chosen) == target:
            out.append(SpanningTree(X, frozenset(chosen)))
            return
        if len(edges) - i < target - len(chosen):
            return
        u, v = edges[i]
        if forest.find(u) != forest.find(v):
            snapshot = (dict(forest._parent), dict(forest._size))
            forest.union(u, v)
            rec(i + 1, chosen + [edges[i]], forest)
            forest._parent, forest._size = snapshot
        rec(i + 1, chosen, forest)

    rec(0, [], DisjointSet(X.vertices))
    return out


def tree_path_chain(T: SpanningTree, sigma: Simplex, ring: Ring = ZZ) -> Chain:
    """The unique 1-chain of T with the same boundary as the edge ``sigma``."""
    u, v = sigma
    adj = {}
    for a, b in T.edges:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    prev = {u: None}
    queue = deque([u])
    while queue and v not in prev:
        x = queue.popleft()
        for y in adj.get(x, ()):
            if y not in prev:
                prev[y] = x
                queue.append(y)
    if v not in prev:
        raise NoPath(f"{u!r} and {v!r} lie in different components of the tree")
    terms = []
    x = v
    while prev[x] is not None:
        a = prev[x]
        edge = T.host.canonical((a, x))
        # walking a -> x along [a, x] contributes +[a, x]
        terms.append((edge, 1 if edge == (a, x) else -1))
        x = a
    return Chain(1, terms, ring)


def edge_exchange_candidates(T: SpanningTree, sigma: Simplex) -> set:
    return set(tree_path_chain(T, sigma).support)


def fundamental_cycle(T: SpanningTree, sigma: Simplex, ring: Ring = ZZ) -> Chain:
    """sigma minus its tree path: the cycle that maps to sigma in C_1(X, T)."""
    return Chain.simplex(sigma, 1, ring) - tree_path_chain(T, sigma, ring)


def cycle_basis_rel_tree(X: OrderedSimplicialComplex, T: SpanningTree, ring: Ring = ZZ) -> list:
    """``[(sigma, z_sigma)]`` over the non-tree edges, in simplicial order."""
    return [(s, fundamental_cycle(T, s, ring)) for s in X.edges if s not in T.edges]


def bad_exchange_pairs(X: OrderedSimplicialComplex, T: SpanningTree) -> list:
    """Edge-exchange pairs (sigma, tau) with sigma strictly before tau."""
    bad = []
    for sigma in X.edges:
        if sigma in T.edges:
            continue
        for tau in edge_exchange_candidates(T, sigma):
            if X.rank(sigma) < X.rank(tau):
                bad.append((sigma, tau))
    return bad


# -- n-spanning complexes --------------------------------------------------------
@dataclass(frozen=True)
class NSpanningComplex:
    host: OrderedSimplicialComplex
    n: int
    complex: OrderedSimplicialComplex
    ring: Ring
    injective: bool
    span_verified: bool

    @property
    def top_simplices(self) -> list:
        return self.complex.of_dim(self.n)

    @property
    def excluded(self) -> list:
        return [s for s in self.host.of_dim(self.n) if s not in self.complex]

    @property
    def flagged(self) -> bool:
        return not (self.injective and self.span_verified)


class _IncrementalRank:
    """Echelon basis over a field; ``insert`` reports whether rank grew."""

    def __init__(self, ring: Ring):
        self.field = ring if ring.is_field else None
        self.p = ring.p if ring.tag == "Zp" else None
        self.rows = {}  # pivot -> reduced vector (dict index -> value)

    def _norm(self, x):
        return x % self.p if self.p else x

    def _inv(self, x):
        return pow(x, -1, self.p) if self.p else 1 / Fraction(x)

    def insert(self, vec: dict) -> bool:
        v = {k: self._norm(x) for k, x in vec.items() if self._norm(x) != 0}
        while v:
            piv = min(v)
            if piv not in self.rows:
                inv = self._inv(v[piv])
                self.rows[piv] = {k: self._norm(x * inv) for k, x in v.items()}
                return True
            f = v[piv]
            for k, x in self.rows[piv].items():
                v[k] = self._norm(v.get(k, 0) - f * x)
                if v[k] == 0:
                    del v[k]
        return False


def n_spanning_complex(
    X: OrderedSimplicialComplex, n: int, ring: Ring = ZZ, strict: bool = False
) -> NSpanningComplex:
    """Greedy n-spanning complex: keep an n-simplex iff its boundary column is
    independent of those kept so far (over the fraction field for Z).

    Both defining properties are re-checked with the oracle. A failed
    boundary-span check is recorded in ``span_verified``; with ``strict=True``
    it raises ``SpanVerificationFailed`` instead.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    rows = {s: i for i, s in enumerate(X.of_dim(n - 1))}
    elim = _IncrementalRank(ring)
    kept = []
    for s in X.of_dim(n):
        col = {rows[f]: c for f, c in boundary_of_simplex(s, ring)}
        if elim.insert(col):
            kept.append(s)
    A = X.subcomplex(skeleton(X, n - 1).simplices + tuple(kept))

    dA = oracle.boundary_matrix(A, n, ring)
    dX = oracle.boundary_matrix(X, n, ring)
    injective = oracle.rank(dA, ring) == len(kept) if kept else True
    span_ok = oracle.image_submodule_equal(dA, dX, ring)
    result = NSpanningComplex(X, n, A, ring, injective, span_ok)
    if strict and result.flagged:
        raise SpanVerificationFailed(
            f"greedy {n}-spanning complex fails verification over {ring}"
            f" (injective={injective}, boundary span equal={span_ok})"
        )
    return result
