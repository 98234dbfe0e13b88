"""Reading and writing the line-based filtration file format.

See ``docs/FORMAT.md`` for the grammar. In short::

    cofiltree-filtration 1
    poset grid 3 3
    vertices 1 2 3 4
    simplex 1 : 0,0
    simplex 1 2 : 0,1
    simplex 1 4 : 0,2 2,0
"""
from __future__ import annotations

from .complex import OrderedSimplicialComplex, facets
from .errors import (
    CofiltreeError,
    FaceGradeViolation,
    ParseError,
    UnknownPosetElement,
)
from .persistence import Filtration
from .poset import Poset, grid_poset, poset_from_covers

HEADER = "cofiltree-filtration"
VERSION = "1"


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse_filtration(text: str) -> Filtration:
    lines = [(i + 1, _strip(raw)) for i, raw in enumerate(text.splitlines())]
    lines = [(n, s) for n, s in lines if s]
    if not lines:
        raise ParseError("empty input; expected header line", 1)
    n0, first = lines[0]
    if first.split() != [HEADER, VERSION]:
        raise ParseError(f"expected header '{HEADER} {VERSION}'", n0)

    poset = None
    poset_kind = None
    elements, covers = [], []
    vertices = None
    simplex_lines = []  # (line, vertices, grade tokens)
    order_lines = []

    for n, line in lines[1:]:
        words = line.split()
        head = words[0]
        if head == "poset":
            if poset_kind is not None:
                raise ParseError("poset declared twice", n)
            if len(words) >= 2 and words[1] == "grid":
                try:
                    extents = [int(w) for w in words[2:]]
                except ValueError:
                    raise ParseError("grid extents must be integers", n) from None
                if not extents:
                    raise ParseError("grid needs at least one extent", n)
                try:
                    poset = grid_poset(extents)
                except CofiltreeError as exc:
                    raise ParseError(str(exc), n) from None
                poset_kind = "grid"
            elif words[1:] == ["explicit"]:
                poset_kind = "explicit"
            else:
                raise ParseError("expected 'poset grid <extents>' or 'poset explicit'", n)
        elif head in ("element", "cover"):
            if poset_kind != "explicit":
                raise ParseError(f"'{head}' is only allowed after 'poset explicit'", n)
            if simplex_lines:
                raise ParseError(f"'{head}' must precede simplex lines", n)
            if head == "element":
                if len(words) != 2:
                    raise ParseError("expected 'element <id>'", n)
                if words[1] in elements:
                    raise ParseError(f"element {words[1]!r} declared twice", n)
                elements.append(words[1])
            else:
                if len(words) != 3:
                    raise ParseError("expected 'cover <lower> <upper>'", n)
                for w in words[1:]:
                    if w not in elements:
                        raise UnknownPosetElement(f"cover uses undeclared element {w!r}", n)
                covers.append((words[1], words[2]))
        elif head == "vertices":
            if vertices is not None:
                raise ParseError("vertices declared twice", n)
            vertices = words[1:]
            if len(set(vertices)) != len(vertices):
                raise ParseError("a vertex is listed twice", n)
            bad = [v for v in vertices if ":" in v or "," in v]
            if bad:
                raise ParseError(f"vertex ids may not contain ':' or ',': {bad[0]!r}", n)
        elif head == "simplex":
            if ":" not in words:
                raise ParseError("expected 'simplex <vertices> : <grades>'", n)
            k = words.index(":")
            simplex_lines.append((n, words[1:k], words[k + 1:]))
        elif head == "order":
            order_lines.append((n, words[1:]))
        else:
            raise ParseError(f"unknown directive {head!r}", n)

    if poset_kind is None:
        raise ParseError("missing 'poset' line")
    if vertices is None:
        raise ParseError("missing 'vertices' line")
    if poset_kind == "explicit":
        if not elements:
            raise ParseError("explicit poset has no elements")
        try:
            poset = poset_from_covers(elements, covers)
        except CofiltreeError as exc:
            raise ParseError(f"invalid poset: {exc}") from None

    vset = set(vertices)
    vrank = {v: i for i, v in enumerate(vertices)}

    def canon(vs, n):
        if not vs:
            raise ParseError("empty simplex", n)
        for v in vs:
            if v not in vset:
                raise ParseError(f"undeclared vertex {v!r}", n)
        if len(set(vs)) != len(vs):
            raise ParseError("repeated vertex in simplex", n)
        return tuple(sorted(vs, key=vrank.__getitem__))

    entry, where = {}, {}
    for n, vs, gtoks in simplex_lines:
        s = canon(vs, n)
        if s in entry:
            raise ParseError(f"simplex {' '.join(s)} listed twice (first on line {where[s]})", n)
        if not gtoks:
            raise ParseError("simplex needs at least one grade", n)
        entry[s] = [_parse_grade(t, poset, poset_kind, n) for t in gtoks]
        where[s] = n

    for s, n in where.items():
        for f in facets(s):
            if f not in entry:
                raise FaceGradeViolation(
                    f"face {' '.join(f)} of {' '.join(s)} is never declared", n
                )
            for g in entry[s]:
                if not any(poset.leq(h, g) for h in entry[f]):
                    raise FaceGradeViolation(
                        f"face {' '.join(f)} enters after its coface {' '.join(s)}"
                        f" (coface grade {_format_grade(g)})",
                        n,
                    )

    order = None
    if order_lines:
        order = []
        for n, vs in order_lines:
            s = canon(vs, n)
            if s not in entry:
                raise ParseError(f"order lists unknown simplex {' '.join(s)}", n)
            order.append(s)
    try:
        X = OrderedSimplicialComplex(entry.keys(), vertex_order=vertices, order=order)
        return Filtration(poset, X, entry)
    except ParseError:
        raise
    except CofiltreeError as exc:
        line = order_lines[0][0] if order_lines else None
        raise ParseError(str(exc), line) from None


def _parse_grade(token: str, poset: Poset, kind: str, line: int):
    if kind == "grid":
        try:
            g = tuple(int(x) for x in token.split(","))
        except ValueError:
            raise UnknownPosetElement(f"bad grid grade {token!r}", line) from None
    else:
        g = token
    if g not in poset:
        raise UnknownPosetElement(f"grade {token!r} is not in the poset", line)
    return g


def _format_grade(g) -> str:
    return ",".join(str(x) for x in g) if isinstance(g, tuple) else str(g)


def format_filtration(F: Filtration) -> str:
    """Serialize ``F``; ``parse_filtration`` inverts this exactly."""
    out = [f"{HEADER} {VERSION}"]
    P = F.poset
    if getattr(P, "extents", None):
        out.append("poset grid " + " ".join(str(e) for e in P.extents))
    else:
        out.append("poset explicit")
        out.extend(f"element {e}" for e in P.elements)
        out.extend(f"cover {a} {b}" for a, b in P.covers())
    X = F.complex
    out.append("vertices " + " ".join(str(v) for v in X.vertex_order))
    for s in X:
        grades = " ".join(_format_grade(g) for g in F.entry[s])
        out.append(f"simplex {' '.join(str(v) for v in s)} : {grades}")
    default = sorted(X.simplices, key=X._default_key)
    if list(X.simplices) != default:
        out.extend("order " + " ".join(str(v) for v in s) for s in X)
    return "\n".join(out) + "\n"


def read_filtration(path) -> Filtration:
    with open(path, encoding="utf-8") as fh:
        return parse_filtration(fh.read())
