"""Finite posets with a dense reachability table, grid posets and upper sets."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence

from .errors import CycleInRelation, EmptyExtent, UnknownElement

Element = Hashable


class Poset:
    """A finite partial order.

    ``leq`` is stored as one bitmask per element (bit ``j`` of ``_up[i]`` is
    set iff ``elements[i] <= elements[j]``), so order queries are O(1).
    The declared element order is kept; ``linear_extension`` is derived from
    it and is what reports use to sort grades.
    """

    def __init__(self, elements: Sequence[Element], up_masks: Sequence[int]):
        self.elements = tuple(elements)
        self._index = {e: i for i, e in enumerate(self.elements)}
        if len(self._index) != len(self.elements):
            raise ValueError("duplicate poset elements")
        self._up = tuple(up_masks)
        self._check_axioms()
        self._linear = self._compute_linear_extension()

    # -- construction -----------------------------------------------------
    @classmethod
    def from_covers(cls, elements, covers) -> Poset:
        elements = list(elements)
        index = {e: i for i, e in enumerate(elements)}
        up = [1 << i for i in range(len(elements))]
        for a, b in covers:
            if a not in index or b not in index:
                missing = a if a not in index else b
                raise UnknownElement(f"cover references undeclared element {missing!r}")
            up[index[a]] |= 1 << index[b]
        # Warshall closure on bit rows
        for k in range(len(elements)):
            bit = 1 << k
            row_k = up[k]
            for i in range(len(elements)):
                if up[i] & bit:
                    up[i] |= row_k
        for i in range(len(elements)):
            for j in range(i + 1, len(elements)):
                if up[i] >> j & 1 and up[j] >> i & 1:
                    raise CycleInRelation(
                        f"{elements[i]!r} <= {elements[j]!r} <= {elements[i]!r}"
                    )
        return cls(elements, up)

    def _check_axioms(self):
        n = len(self.elements)
        for i in range(n):
            if not self._up[i] >> i & 1:
                raise ValueError("relation is not reflexive")
            for j in _bits(self._up[i]):
                if self._up[j] & ~self._up[i]:
                    raise ValueError("relation is not transitive")
                if j != i and self._up[j] >> i & 1:
                    raise CycleInRelation(f"{self.elements[i]!r} and {self.elements[j]!r}")

    def _compute_linear_extension(self):
        # Kahn's algorithm, ties broken by declaration order
        n = len(self.elements)
        below = [bin(self.down_mask(i)).count("1") - 1 for i in range(n)]
        done = 0
        order = []
        while len(order) < n:
            for i in range(n):
                if not done >> i & 1 and below[i] == 0:
                    break
            order.append(i)
            done |= 1 << i
            for j in _bits(self._up[i] & ~(1 << i)):
                below[j] -= 1
        return tuple(self.elements[i] for i in order)

    # -- queries ------------------------------------------------------------
    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        try:
            return x in self._index
        except TypeError:
            return False

    def __eq__(self, other):
        return (
            isinstance(other, Poset)
            and set(self.elements) == set(other.elements)
            and all(
                self.leq(a, b) == other.leq(a, b) for a in self.elements for b in self.elements
            )
        )

    def __hash__(self):
        return hash(frozenset(self.elements))

    def __repr__(self):
        return f"Poset({len(self)} elements)"

    def index(self, x: Element) -> int:
        try:
            return self._index[x]
        except (KeyError, TypeError):
            raise UnknownElement(f"{x!r} is not an element of the poset") from None

    def leq(self, a: Element, b: Element) -> bool:
        return bool(self._up[self.index(a)] >> self.index(b) & 1)

    def lt(self, a: Element, b: Element) -> bool:
        return a != b and self.leq(a, b)

    def comparable(self, a, b) -> bool:
        return self.leq(a, b) or self.leq(b, a)

    def down_mask(self, i: int) -> int:
        bit = 1 << i
        return sum(1 << j for j in range(len(self.elements)) if self._up[j] & bit)

    def up(self, a: Element) -> frozenset:
        """Principal upper set of ``a``."""
        return frozenset(self.elements[j] for j in _bits(self._up[self.index(a)]))

    def down(self, a: Element) -> frozenset:
        return frozenset(self.elements[j] for j in _bits(self.down_mask(self.index(a))))

    def upper_closure(self, subset: Iterable[Element]) -> frozenset:
        mask = 0
        for a in subset:
            mask |= self._up[self.index(a)]
        return frozenset(self.elements[j] for j in _bits(mask))

    def is_upper_set(self, subset: Iterable[Element]) -> bool:
        members = set(subset)
        for a in members:
            self.index(a)
        return all(self.up(a) <= members for a in members)

    def minimal(self, subset: Iterable[Element]) -> list:
        """Minimal elements of ``subset`` in linear-extension order."""
        members = set(subset)
        mins = {a for a in members if not any(b != a and self.leq(b, a) for b in members)}
        return [e for e in self._linear if e in mins]

    def is_antichain(self, subset: Iterable[Element]) -> bool:
        items = list(subset)
        return all(not self.comparable(a, b) for a, b in itertools.combinations(items, 2))

    def linear_extension(self) -> tuple:
        return self._linear

    def sort_key(self):
        rank = {e: i for i, e in enumerate(self._linear)}
        return rank.__getitem__

    def comparable_pairs(self):
        """All pairs ``(p, q)`` with ``p < q``."""
        for i, p in enumerate(self.elements):
            for j in _bits(self._up[i] & ~(1 << i)):
                yield p, self.elements[j]

    def covers(self):
        """Hasse diagram edges."""
        for p, q in self.comparable_pairs():
            if not any(
                r not in (p, q) and self.leq(p, r) and self.leq(r, q) for r in self.elements
            ):
                yield p, q

    def maximum(self):
        tops = [e for e in self.elements if self.up(e) == {e}]
        return tops[0] if len(tops) == 1 else None


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def poset_from_covers(elements, covers) -> Poset:
    return Poset.from_covers(elements, covers)


def grid_poset(extents: Sequence[int]) -> Poset:
    """Product of chains ``{0..e-1}`` with the componentwise order."""
    extents = tuple(int(e) for e in extents)
    if not extents or any(e <= 0 for e in extents):
        raise EmptyExtent(f"grid extents must be positive, got {extents}")
    elements = list(itertools.product(*(range(e) for e in extents)))
    index = {e: i for i, e in enumerate(elements)}
    up = []
    for p in elements:
        mask = 0
        for q in itertools.product(*(range(a, e) for a, e in zip(p, extents))):
            mask |= 1 << index[q]
        up.append(mask)
    poset = Poset(elements, up)
    poset.extents = extents
    return poset


def is_upper_set(poset: Poset, subset) -> bool:
    return poset.is_upper_set(subset)


@dataclass(frozen=True)
class UpperSet:
    poset: Poset
    members: frozenset

    def __post_init__(self):
        if not self.poset.is_upper_set(self.members):
            raise ValueError("not an upper set")

    @classmethod
    def generated_by(cls, poset: Poset, generators) -> UpperSet:
        return cls(poset, poset.upper_closure(generators))

    @property
    def generators(self) -> list:
        return self.poset.minimal(self.members)

    def __contains__(self, q):
        return q in self.members

    def __len__(self):
        return len(self.members)

    def sorted(self) -> list:
        return [q for q in self.poset.linear_extension() if q in self.members]
