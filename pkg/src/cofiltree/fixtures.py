"""Small named complexes and seeded random instances used by tests and ``verify``."""
from __future__ import annotations

import itertools
import random
from importlib import resources

from .complex import OrderedSimplicialComplex, complex_from_simplices
from .fileformat import parse_filtration
from .persistence import Filtration
from .poset import Poset, grid_poset


def load(name: str) -> Filtration:
    """One of the shipped ``.filt`` files, e.g. ``load("grid_square")``."""
    text = resources.files("cofiltree").joinpath("data", f"{name}.filt").read_text("utf-8")
    return parse_filtration(text)


def fixture_path(name: str):
    return resources.files("cofiltree").joinpath("data", f"{name}.filt")


def hollow_triangle() -> OrderedSimplicialComplex:
    return complex_from_simplices([(1, 2), (2, 3), (1, 3)])


def full_triangle() -> OrderedSimplicialComplex:
    return complex_from_simplices([(1, 2, 3)])


def tetrahedron_boundary() -> OrderedSimplicialComplex:
    return complex_from_simplices(itertools.combinations((1, 2, 3, 4), 3))


def complete_graph(n: int) -> OrderedSimplicialComplex:
    return complex_from_simplices(itertools.combinations(range(1, n + 1), 2))


def path_graph(n: int) -> OrderedSimplicialComplex:
    return complex_from_simplices((i, i + 1) for i in range(1, n))


def wedge_of_triangles() -> OrderedSimplicialComplex:
    """Two filled triangles 0-1-3 and 0-2-4 glued at vertex 0."""
    return complex_from_simplices([(0, 1, 3), (0, 2, 4)])


def wedge_fold_map():
    """Vertex map folding both wedge triangles onto triangle a-b-c.

    With the default orders it preserves order and dimension but is not
    injective.
    """
    from .complex import SimplicialMap

    X = wedge_of_triangles()
    Y = complex_from_simplices([("a", "b", "c")])
    return SimplicialMap(X, Y, {0: "a", 1: "b", 2: "b", 3: "c", 4: "c"})


# -- random instances -------------------------------------------------------------
def random_graph(rng: random.Random, max_vertices: int = 10, p: float | None = None):
    n = rng.randint(1, max_vertices)
    p = rng.uniform(0.2, 0.9) if p is None else p
    edges = [e for e in itertools.combinations(range(n), 2) if rng.random() < p]
    return complex_from_simplices([(v,) for v in range(n)] + edges)


def random_complex(rng: random.Random, max_vertices: int = 6, p_edge=None, p_tri=None):
    """Random 2-complex: random graph plus random triangles over present edges."""
    n = rng.randint(1, max_vertices)
    p_edge = rng.uniform(0.3, 1.0) if p_edge is None else p_edge
    p_tri = rng.uniform(0.2, 0.9) if p_tri is None else p_tri
    edges = {e for e in itertools.combinations(range(n), 2) if rng.random() < p_edge}
    tris = [
        t for t in itertools.combinations(range(n), 3)
        if all(e in edges for e in itertools.combinations(t, 2)) and rng.random() < p_tri
    ]
    return complex_from_simplices([(v,) for v in range(n)] + sorted(edges) + tris)


def _join(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def random_filtration(
    rng: random.Random,
    max_vertices: int = 8,
    extents=(3, 3),
    p_edge=None,
    p_tri: float = 0.3,
    max_critical: int = 2,
) -> Filtration:
    """Random filtration over a grid with antichain (multi-critical) entry grades."""
    poset = grid_poset(extents)
    X = random_complex(rng, max_vertices, p_edge=p_edge, p_tri=p_tri)
    entry = {}
    for s in X:
        grades = []
        for _ in range(rng.randint(1, max_critical)):
            g = tuple(rng.randrange(e) for e in extents)
            for i in range(len(s)):
                face = s[:i] + s[i + 1:]
                if face:
                    g = _join(g, rng.choice(entry[face]))
            grades.append(g)
        entry[s] = poset.minimal(grades)
    return Filtration(poset, X, entry)


def random_subcomplex(rng: random.Random, X: OrderedSimplicialComplex, keep: float = 0.6):
    """Random face-closed subset of X, with the restricted order."""
    chosen = set()
    for s in X:  # faces come first, so closure is checked incrementally
        if len(s) == 1 or all(s[:i] + s[i + 1:] in chosen for i in range(len(s))):
            if rng.random() < keep:
                chosen.add(s)
    return X.subcomplex(chosen)


def chain_poset(n: int) -> Poset:
    return grid_poset((n,))
