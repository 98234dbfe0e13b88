"""Poset-indexed filtrations, cofiltrations of spanning trees and the upper
set precover of the 1-cycle persistence module."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping

from . import oracle
from .chains import ZZ, Chain, Ring, leading_simplex
from .complex import OrderedSimplicialComplex, Simplex, dim, facets
from .errors import (
    EdgeNeverExcluded,
    EpimorphismFailed,
    FaceGradeViolation,
    NotDimensionPreserving,
    NotInjective,
    NotOrderPreserving,
    SearchBudgetExceeded,
    UnknownGrade,
)
from .poset import Poset, UpperSet
from .spanning import (
    DisjointSet,
    SpanningTree,
    all_spanning_trees,
    fundamental_cycle,
    is_spanning_tree,
    order_minimal_spanning_tree,
)

Grade = Hashable


class Filtration:
    """Subcomplexes X^q of a total ordered complex, given by entry grades.

    ``entry[s]`` is the antichain of minimal grades at which ``s`` is present;
    ``s`` belongs to X^q iff some entry grade is <= q. Grades listed that are
    not minimal are dropped.
    """

    def __init__(
        self,
        poset: Poset,
        complex: OrderedSimplicialComplex,
        entry: Mapping[Simplex, Iterable[Grade]],
    ):
        self.poset = poset
        self.complex = complex
        self.entry = {}
        for s in complex:
            if s not in entry:
                raise FaceGradeViolation(f"simplex {list(s)} has no entry grade")
            grades = list(entry[s])
            for g in grades:
                if g not in poset:
                    raise UnknownGrade(f"entry grade {g!r} of {list(s)} is not in the poset")
            if not grades:
                raise FaceGradeViolation(f"simplex {list(s)} has an empty entry grade list")
            self.entry[s] = tuple(poset.minimal(grades))
        extra = [s for s in entry if tuple(s) not in complex]
        if extra:
            raise FaceGradeViolation(f"entry grades given for simplices outside the complex: {extra[:3]}")
        for s in complex:
            for f in facets(s):
                for g in self.entry[s]:
                    if not any(poset.leq(h, g) for h in self.entry[f]):
                        raise FaceGradeViolation(
                            f"face {list(f)} enters after its coface {list(s)} (at grade {g!r})"
                        )
        self._cache = {}

    def __eq__(self, other):
        return (
            isinstance(other, Filtration)
            and self.poset == other.poset
            and self.complex == other.complex
            and {s: frozenset(g) for s, g in self.entry.items()}
            == {s: frozenset(g) for s, g in other.entry.items()}
        )

    __hash__ = None

    @property
    def grades(self) -> tuple:
        """Grades in the poset's fixed linear extension."""
        return self.poset.linear_extension()

    def contains(self, s: Simplex, q: Grade) -> bool:
        return any(self.poset.leq(g, q) for g in self.entry[s])

    def at(self, q: Grade) -> OrderedSimplicialComplex:
        if q not in self.poset:
            raise UnknownGrade(f"{q!r} is not a grade of the filtration")
        if q not in self._cache:
            self._cache[q] = self.complex.subcomplex(s for s in self.complex if self.contains(s, q))
        return self._cache[q]

    def is_monotone(self) -> bool:
        return all(
            set(self.at(p)) <= set(self.at(q)) for p, q in self.poset.comparable_pairs()
        )


def filtration_at(F: Filtration, q: Grade) -> OrderedSimplicialComplex:
    return F.at(q)


# -- cofiltrations ---------------------------------------------------------------------
@dataclass
class SpanningCofiltration:
    filtration: Filtration
    trees: dict  # grade -> SpanningTree

    def __getitem__(self, q) -> SpanningTree:
        return self.trees[q]

    def complement(self, q) -> list:
        return self.trees[q].complement

    def excluded_edges(self) -> list:
        """Edges left out of the tree at some grade, in simplicial order."""
        out = set()
        for T in self.trees.values():
            out.update(T.complement)
        return self.filtration.complex.sort(out)


def cofiltration_of_spanning_trees(F: Filtration) -> SpanningCofiltration:
    """Order-minimal spanning tree of every X^q."""
    return SpanningCofiltration(F, {q: order_minimal_spanning_tree(F.at(q)) for q in F.grades})


def _edge_set(T) -> frozenset:
    if isinstance(T, SpanningTree):
        return T.edges
    if isinstance(T, OrderedSimplicialComplex):
        return frozenset(s for s in T if dim(s) == 1)
    return frozenset(tuple(s) for s in T)


def cofiltration_defects(F: Filtration, trees: Mapping) -> list:
    """``[(kind, p, q)]``: per-grade tree failures and complement inclusions that fail."""
    defects = []
    complements = {}
    for q in F.grades:
        if q not in trees:
            defects.append(("missing", q, None))
            continue
        X = F.at(q)
        edges = _edge_set(trees[q])
        if not is_spanning_tree(X, edges):
            defects.append(("not-a-spanning-tree", q, None))
        complements[q] = set(X.edges) - edges
    for p, q in F.poset.comparable_pairs():
        if p in complements and q in complements and not complements[p] <= complements[q]:
            defects.append(("complement-not-monotone", p, q))
    return defects


def is_cofiltration(F: Filtration, trees) -> bool:
    if isinstance(trees, SpanningCofiltration):
        trees = trees.trees
    return not cofiltration_defects(F, trees)


def subfiltration_of_spanning_trees(F: Filtration, budget: int = 100_000) -> dict | None:
    """A nested family of spanning trees (T^p within T^q for p <= q), or None.

    Exact backtracking over all spanning trees per grade, visiting grades in
    a linear extension. ``budget`` caps the number of candidate trees tried.
    """
    grades = list(F.grades)
    candidates = {q: all_spanning_trees(F.at(q)) for q in grades}
    below = {q: [p for p in grades if p != q and F.poset.leq(p, q)] for q in grades}
    chosen = {}
    used = 0

    def rec(i):
        nonlocal used
        if i == len(grades):
            return True
        q = grades[i]
        required = set()
        for p in below[q]:
            required |= chosen[p].edges
        for T in candidates[q]:
            if not required <= T.edges:
                continue
            used += 1
            if used > budget:
                raise SearchBudgetExceeded(used, budget)
            chosen[q] = T
            if rec(i + 1):
                return True
            del chosen[q]
        return False

    return dict(chosen) if rec(0) else None


# -- persistent sets --------------------------------------------------------------------
class PersistentSet:
    """Finite set-valued functor on a poset.

    With ``maps=None`` the structure maps are inclusions of element keys.
    Otherwise ``maps[(p, q)]`` (for p < q, typically covers) sends each
    element of fiber(p) to an element of fiber(q).
    """

    def __init__(self, poset: Poset, fibers: Mapping, maps: Mapping | None = None):
        self.poset = poset
        self.fibers = {q: frozenset(fibers.get(q, ())) for q in poset.linear_extension()}
        self.maps = None if maps is None else {k: dict(v) for k, v in maps.items()}
        if maps is None:
            for p, q in poset.comparable_pairs():
                if not self.fibers[p] <= self.fibers[q]:
                    raise ValueError(f"fiber at {p!r} is not contained in fiber at {q!r}")

    def __getitem__(self, q) -> frozenset:
        return self.fibers[q]

    def structure_pairs(self):
        if self.maps is None:
            for p, q in self.poset.comparable_pairs():
                yield p, q, {x: x for x in self.fibers[p]}
        else:
            for (p, q), m in self.maps.items():
                yield p, q, m


@dataclass
class Colimit:
    classes: list  # canonical representative per class
    projections: dict  # grade -> {element: class index}

    def is_injective(self, q) -> bool:
        images = list(self.projections[q].values())
        return len(images) == len(set(images))


def colimit_persistent_set(B: PersistentSet) -> Colimit:
    """Disjoint union of fibers modulo the structure maps (union-find)."""
    ds = DisjointSet((q, x) for q in B.poset.linear_extension() for x in B.fibers[q])
    for p, q, m in B.structure_pairs():
        for x, y in m.items():
            ds.union((p, x), (q, y))
    order = [(q, x) for q in B.poset.linear_extension() for x in sorted(B.fibers[q], key=repr)]
    index, classes = {}, []
    for node in order:
        root = ds.find(node)
        if root not in index:
            index[root] = len(classes)
            classes.append(node[1])
    projections = {
        q: {x: index[ds.find((q, x))] for x in B.fibers[q]} for q in B.poset.linear_extension()
    }
    return Colimit(classes, projections)


def upper_set_decompose(B: PersistentSet) -> dict:
    """Map each colimit class to the upper set of grades where it is present.

    Raises ``NotInjective`` at the first grade whose colimit projection
    identifies two elements.
    """
    colim = colimit_persistent_set(B)
    for q in B.poset.linear_extension():
        if not colim.is_injective(q):
            raise NotInjective(q)
    support = {i: set() for i in range(len(colim.classes))}
    for q, proj in colim.projections.items():
        for cls in proj.values():
            support[cls].add(q)
    return {colim.classes[i]: UpperSet(B.poset, frozenset(qs)) for i, qs in support.items()}


def rebuild_from_upper_sets(poset: Poset, decomposition: Mapping) -> PersistentSet:
    fibers = {q: {x for x, U in decomposition.items() if q in U} for q in poset}
    return PersistentSet(poset, fibers)


def representative_persistent_set(
    F: Filtration, cof: SpanningCofiltration, sigma: Simplex, ring: Ring = ZZ
) -> PersistentSet:
    """Fiber at q: the fundamental cycles of ``sigma`` in T^{q'} over grades
    q' <= q at which ``sigma`` is present but not in the tree."""
    admissible = {}
    for q in F.grades:
        X = F.at(q)
        if sigma in X and sigma not in cof[q].edges:
            admissible[q] = fundamental_cycle(cof[q], sigma, ring)
    if not admissible:
        raise EdgeNeverExcluded(f"edge {list(sigma)} is in the spanning tree wherever it is present")
    fibers = {
        q: {z for p, z in admissible.items() if F.poset.leq(p, q)} for q in F.grades
    }
    return PersistentSet(F.poset, fibers)


@dataclass
class Summand:
    edge: Simplex
    cycle: Chain
    upper_set: UpperSet


@dataclass
class Precover:
    filtration: Filtration
    cofiltration: SpanningCofiltration
    ring: Ring
    sets: dict  # edge -> PersistentSet
    summands: list = field(default_factory=list)  # Summand, in edge then grade order

    @property
    def evaluation(self) -> dict:
        return {(s.edge, s.cycle): s.cycle for s in self.summands}

    @property
    def decomposition(self) -> dict:
        return {(s.edge, s.cycle): s.upper_set for s in self.summands}

    def generators_at(self, q) -> list:
        return [s for s in self.summands if q in s.upper_set]


def precover(F: Filtration, cof: SpanningCofiltration | None = None, ring: Ring = ZZ) -> Precover:
    cof = cof if cof is not None else cofiltration_of_spanning_trees(F)
    grade_rank = {q: i for i, q in enumerate(F.grades)}
    sets, summands = {}, []
    for sigma in cof.excluded_edges():
        B = representative_persistent_set(F, cof, sigma, ring)
        sets[sigma] = B
        parts = upper_set_decompose(B)
        ordered = sorted(parts.items(), key=lambda kv: min(grade_rank[q] for q in kv[1].members))
        summands.extend(Summand(sigma, z, U) for z, U in ordered)
    return Precover(F, cof, ring, sets, summands)


@dataclass(frozen=True)
class GradeCheck:
    grade: Grade
    precover_rank: int
    image_rank: int
    z1_rank: int
    h1_rank: int
    torsion: tuple
    cycles_valid: bool
    saturated: bool | None  # Z only: image is a pure sublattice
    surjective: bool

    def as_dict(self) -> dict:
        return {
            "precover_rank": self.precover_rank,
            "image_rank": self.image_rank,
            "z1_rank": self.z1_rank,
            "h1_rank": self.h1_rank,
            "h1_torsion": list(self.torsion),
            "cycles_valid": self.cycles_valid,
            "saturated": self.saturated,
            "surjective": self.surjective,
        }


def precover_map_and_check(P: Precover, strict: bool = True) -> list:
    """Evaluate the generators present at each grade and compare with the oracle.

    Surjectivity at q means: every evaluated generator is a 1-cycle of X^q,
    the rank of their span equals the oracle nullity of the first boundary
    map of X^q, and, over Z, the span is saturated (so it is all of Z_1, not
    a finite-index sublattice).
    """
    F, ring = P.filtration, P.ring
    report = []
    for q in F.grades:
        X = F.at(q)
        gens = P.generators_at(q)
        cycles = [s.cycle for s in gens]
        valid = all(oracle.is_cycle(z, X) for z in cycles)
        edges = X.edges
        M = oracle.chains_to_matrix(cycles, edges, ring) if cycles else []
        image_rank = oracle.rank(M, ring) if cycles else 0
        z1 = oracle.cycle_rank(X, 1, ring)
        h1 = oracle.homology(X, 1, ring)
        saturated = None
        if ring.tag == "Z":
            saturated = oracle.is_saturated(M) if cycles else True
        ok = valid and image_rank == z1 and saturated is not False
        report.append(GradeCheck(q, len(gens), image_rank, z1, h1.betti, h1.torsion, valid, saturated, ok))
        if strict and not ok:
            raise EpimorphismFailed(q, f"image rank {image_rank}, Z1 rank {z1}, cycles valid {valid}")
    return report


# -- functoriality ----------------------------------------------------------------------
def check_tau1_functoriality(f, X: OrderedSimplicialComplex, Y: OrderedSimplicialComplex) -> bool:
    """Does ``f`` map every non-tree edge of X to a non-tree edge of Y
    (order-minimal trees on both sides)?"""
    if f.source is not X and f.source != X or f.target is not Y and f.target != Y:
        raise ValueError("map does not go from X to Y")
    if not f.is_order_preserving():
        raise NotOrderPreserving("simplicial map does not preserve the simplicial orders")
    if not f.is_dimension_preserving():
        raise NotDimensionPreserving("simplicial map collapses a simplex")
    TX = order_minimal_spanning_tree(X)
    TY = order_minimal_spanning_tree(Y)
    return all(f(e) not in TY.edges for e in TX.complement)


def leading_simplices_outside_tree(T: SpanningTree, cycles) -> bool:
    return all(leading_simplex(z, T.host) not in T.edges for z in cycles if z)
