"""Finite ordered simplicial complexes.

A simplex is a tuple of vertex ids sorted by the complex's vertex order.
Every complex carries a total simplicial order in which faces precede their
cofaces; by default simplices are ranked by dimension and then
lexicographically by the ranks of their vertices.
"""
from __future__ import annotations

import enum
import itertools
from typing import Hashable, Iterable, Mapping, Sequence

from .errors import (
    DuplicateVertexInSimplex,
    InvalidSimplicialOrder,
    NotASimplicialMap,
    NotASubcomplex,
    VertexNotInDomain,
)

Vertex = Hashable
Simplex = tuple


class Ordering(enum.IntEnum):
    LT = -1
    EQ = 0
    GT = 1


def dim(simplex: Simplex) -> int:
    return len(simplex) - 1


def facets(simplex: Simplex):
    """Codimension-one faces, in the order the boundary formula visits them."""
    if len(simplex) == 1:
        return []
    return [simplex[:i] + simplex[i + 1:] for i in range(len(simplex))]


def faces(simplex: Simplex):
    """All nonempty faces, including the simplex itself."""
    for k in range(1, len(simplex) + 1):
        yield from itertools.combinations(simplex, k)


def _default_vertex_order(vertices):
    try:
        return sorted(vertices)
    except TypeError:
        return sorted(vertices, key=repr)


class OrderedSimplicialComplex:
    """Immutable face-closed simplex set with a simplicial order."""

    def __init__(
        self,
        simplices: Iterable[Iterable[Vertex]],
        vertex_order: Sequence[Vertex] | None = None,
        order: Sequence[Iterable[Vertex]] | None = None,
    ):
        raw = [tuple(s) for s in simplices]
        if vertex_order is None:
            vertex_order = _default_vertex_order({v for s in raw for v in s})
        self.vertex_order = tuple(vertex_order)
        self._vrank = {v: i for i, v in enumerate(self.vertex_order)}
        if len(self._vrank) != len(self.vertex_order):
            raise ValueError("vertex order lists a vertex twice")

        members = {self.canonical(s) for s in raw}
        for s in members:
            for f in facets(s):
                if f not in members:
                    raise NotASubcomplex(f"face {f} of {s} is missing")

        if order is None:
            ranked = sorted(members, key=self._default_key)
        else:
            ranked = [self.canonical(s) for s in order]
            if len(ranked) != len(set(ranked)) or set(ranked) != members:
                raise InvalidSimplicialOrder("order must list every simplex exactly once")
        self.simplices = tuple(ranked)
        self._rank = {s: i for i, s in enumerate(self.simplices)}
        if order is not None:
            for s in self.simplices:
                for f in facets(s):
                    if self._rank[f] > self._rank[s]:
                        raise InvalidSimplicialOrder(f"face {f} comes after its coface {s}")
        self._by_dim = {}
        for s in self.simplices:
            self._by_dim.setdefault(dim(s), []).append(s)

    def _default_key(self, s):
        return (len(s), tuple(self._vrank[v] for v in s))

    def canonical(self, vertices: Iterable[Vertex]) -> Simplex:
        vs = tuple(vertices)
        if not vs:
            raise ValueError("empty simplex")
        if len(set(vs)) != len(vs):
            raise DuplicateVertexInSimplex(f"repeated vertex in {vs}")
        try:
            return tuple(sorted(vs, key=self._vrank.__getitem__))
        except KeyError as exc:
            raise VertexNotInDomain(f"vertex {exc.args[0]!r} not in vertex order") from None

    # -- container protocol ---------------------------------------------------
    def __contains__(self, s):
        return s in self._rank

    def __iter__(self):
        return iter(self.simplices)

    def __len__(self):
        return len(self.simplices)

    def __eq__(self, other):
        return (
            isinstance(other, OrderedSimplicialComplex)
            and self.simplices == other.simplices
        )

    def __hash__(self):
        return hash(self.simplices)

    def __repr__(self):
        counts = [len(self.of_dim(k)) for k in range(self.dim + 1)]
        return f"OrderedSimplicialComplex(f-vector={counts})"

    @property
    def dim(self) -> int:
        return max(self._by_dim, default=-1)

    def of_dim(self, n: int) -> list:
        return list(self._by_dim.get(n, ()))

    @property
    def vertices(self) -> list:
        return [s[0] for s in self.of_dim(0)]

    @property
    def edges(self) -> list:
        return self.of_dim(1)

    def rank(self, s: Simplex) -> int:
        """Position of ``s`` in the simplicial order."""
        return self._rank[s]

    def key(self, s: Simplex) -> int:
        return self._rank[s]

    def precedes(self, a: Simplex, b: Simplex) -> bool:
        return self._rank[a] <= self._rank[b]

    def sort(self, simplices: Iterable[Simplex]) -> list:
        return sorted(simplices, key=self._rank.__getitem__)

    # -- derived complexes ----------------------------------------------------
    def subcomplex(self, simplices: Iterable[Simplex]) -> OrderedSimplicialComplex:
        """The sub-complex on ``simplices`` with the restricted order."""
        chosen = set(simplices)
        missing = chosen - self._rank.keys()
        if missing:
            raise NotASubcomplex(f"{sorted(missing, key=repr)[:3]} not in the complex")
        return OrderedSimplicialComplex(
            chosen,
            vertex_order=self.vertex_order,
            order=[s for s in self.simplices if s in chosen],
        )

    def is_subcomplex(self, other: OrderedSimplicialComplex) -> bool:
        return all(s in self for s in other)


def complex_from_simplices(generators, vertex_order=None) -> OrderedSimplicialComplex:
    """Face closure of ``generators`` with the default simplicial order."""
    gens = [tuple(g) for g in generators]
    for g in gens:
        if len(set(g)) != len(g):
            raise DuplicateVertexInSimplex(f"repeated vertex in {g}")
    closure = {f for g in gens for f in faces(g)}
    return OrderedSimplicialComplex(closure, vertex_order=vertex_order)


def skeleton(X: OrderedSimplicialComplex, n: int) -> OrderedSimplicialComplex:
    if n < 0:
        raise ValueError("skeleton dimension must be >= 0")
    return X.subcomplex(s for s in X if dim(s) <= n)


def n_difference(X: OrderedSimplicialComplex, A, n: int) -> OrderedSimplicialComplex:
    """X with the n-simplices of A removed, everything above dimension n dropped."""
    a_simplices = set(A)
    if not all(s in X for s in a_simplices):
        raise NotASubcomplex("A is not contained in X")
    keep = [s for s in X if dim(s) < n or (dim(s) == n and s not in a_simplices)]
    return X.subcomplex(keep)


def lex_compare(A, B, order) -> Ordering:
    """Compare simplex sets: A < B iff the order-minimum of A △ B lies in A.

    ``order`` is a sort key (e.g. ``X.key``) or an OrderedSimplicialComplex.
    """
    key = order.key if isinstance(order, OrderedSimplicialComplex) else order
    A, B = set(A), set(B)
    diff = A ^ B
    if not diff:
        return Ordering.EQ
    return Ordering.LT if min(diff, key=key) in A else Ordering.GT


class SimplicialMap:
    """Vertex map X -> Y that sends simplices to simplices."""

    def __init__(
        self,
        source: OrderedSimplicialComplex,
        target: OrderedSimplicialComplex,
        vertex_map: Mapping[Vertex, Vertex],
    ):
        self.source = source
        self.target = target
        self.vertex_map = dict(vertex_map)
        for s in source:
            image = self(s)
            if image not in target:
                raise NotASimplicialMap(f"image {image} of {s} is not a simplex of the target")

    def __call__(self, s: Simplex) -> Simplex:
        try:
            image = {self.vertex_map[v] for v in s}
        except KeyError as exc:
            raise VertexNotInDomain(f"vertex {exc.args[0]!r} has no image") from None
        return self.target.canonical(image)

    def is_dimension_preserving(self) -> bool:
        return all(dim(self(s)) == dim(s) for s in self.source)

    def is_order_preserving(self) -> bool:
        # consecutive pairs suffice since the target order is transitive
        images = [self.target.rank(self(s)) for s in self.source.simplices]
        return all(a <= b for a, b in zip(images, images[1:]))

    def is_injective(self) -> bool:
        return len(set(self.vertex_map.values())) == len(self.vertex_map)


def apply_simplicial_map(f: SimplicialMap, simplex: Simplex) -> Simplex:
    return f(simplex)
