"""Sparse chains with exact coefficients in Z, Q or Z/p."""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .complex import Simplex, dim, facets
from .errors import DimensionMismatch, DimensionZero, RingMismatch, ZeroChain


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class Ring:
    """Coefficient ring tag: ``Z``, ``Q`` or ``Zp`` with a prime ``p``."""

    tag: str
    p: int | None = None

    def __post_init__(self):
        if self.tag not in ("Z", "Q", "Zp"):
            raise ValueError(f"unknown ring {self.tag!r}")
        if self.tag == "Zp" and not (isinstance(self.p, int) and _is_prime(self.p)):
            raise ValueError(f"Z/p needs a prime p, got {self.p!r}")
        if self.tag != "Zp" and self.p is not None:
            raise ValueError("only Z/p takes a modulus")

    @classmethod
    def parse(cls, text: str) -> Ring:
        """``z``, ``q`` or ``zp:<p>`` (case-insensitive)."""
        t = text.strip().lower()
        if t == "z":
            return ZZ
        if t == "q":
            return QQ
        if t.startswith("zp:"):
            try:
                return cls("Zp", int(t[3:]))
            except ValueError as exc:
                raise ValueError(f"bad coefficient ring {text!r}: {exc}") from None
        raise ValueError(f"bad coefficient ring {text!r}; expected z, q or zp:<p>")

    def __str__(self):
        return f"Z/{self.p}" if self.tag == "Zp" else self.tag

    @property
    def is_field(self) -> bool:
        return self.tag != "Z"

    def __call__(self, value):
        """Coerce ``value`` into the ring."""
        if self.tag == "Z":
            if isinstance(value, Fraction):
                if value.denominator != 1:
                    raise ValueError(f"{value} is not an integer")
                return value.numerator
            return int(value)
        if self.tag == "Q":
            return Fraction(value)
        if isinstance(value, Fraction):
            return value.numerator * pow(value.denominator, -1, self.p) % self.p
        return int(value) % self.p

    def inverse(self, value):
        if self.tag == "Q":
            return 1 / Fraction(value)
        if self.tag == "Zp":
            return pow(value, -1, self.p)
        if value in (1, -1):
            return value
        raise ZeroDivisionError(f"{value} is not a unit in Z")


ZZ = Ring("Z")
QQ = Ring("Q")


def GF(p: int) -> Ring:
    return Ring("Zp", p)


class Chain:
    """Formal linear combination of n-simplices; zero coefficients never stored."""

    __slots__ = ("dimension", "ring", "_terms", "_hash")

    def __init__(self, dimension: int, terms: Mapping[Simplex, object] | Iterable = (), ring: Ring = ZZ):
        self.dimension = dimension
        self.ring = ring
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict = {}
        for s, c in items:
            s = tuple(s)
            if dim(s) != dimension:
                raise DimensionMismatch(f"{s} has dimension {dim(s)}, expected {dimension}")
            acc[s] = ring(acc.get(s, 0) + ring(c))
        self._terms = {s: c for s, c in acc.items() if c != 0}
        self._hash = None

    @classmethod
    def simplex(cls, s: Simplex, coefficient=1, ring: Ring = ZZ) -> Chain:
        return cls(dim(s), {tuple(s): coefficient}, ring)

    @classmethod
    def zero(cls, dimension: int, ring: Ring = ZZ) -> Chain:
        return cls(dimension, {}, ring)

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    @property
    def support(self) -> frozenset:
        return frozenset(self._terms)

    def __getitem__(self, s):
        return self._terms.get(tuple(s), 0)

    def __iter__(self):
        return iter(self._terms.items())

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self._terms
        return (
            isinstance(other, Chain)
            and self.ring == other.ring
            and self.dimension == other.dimension
            and self._terms == other._terms
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, self.dimension, frozenset(self._terms.items())))
        return self._hash

    def _check(self, other: Chain):
        if self.ring != other.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")
        if self.dimension != other.dimension:
            raise DimensionMismatch(f"{self.dimension} vs {other.dimension}")

    def __add__(self, other: Chain) -> Chain:
        if isinstance(other, int) and other == 0:
            return self
        self._check(other)
        return Chain(self.dimension, list(self) + list(other), self.ring)

    __radd__ = __add__

    def __neg__(self) -> Chain:
        return self.scale(-1)

    def __sub__(self, other: Chain) -> Chain:
        return self + (-other)

    def scale(self, factor) -> Chain:
        lam = self.ring(factor)
        return Chain(self.dimension, {s: lam * c for s, c in self}, self.ring)

    def __rmul__(self, factor) -> Chain:
        return self.scale(factor)

    def with_ring(self, ring: Ring) -> Chain:
        return Chain(self.dimension, self._terms, ring)

    def sorted_terms(self, key) -> list:
        return sorted(self._terms.items(), key=lambda t: key(t[0]))

    def __repr__(self):
        if not self._terms:
            return f"Chain(0, dim={self.dimension})"
        parts = []
        for s, c in sorted(self._terms.items(), key=lambda t: repr(t[0])):
            label = "".join(str(v) for v in s)
            parts.append(f"{c:+}*[{label}]" if not isinstance(c, Fraction) else f"({c})*[{label}]")
        return "Chain(" + " ".join(parts) + ")"


def chain_add(c: Chain, d: Chain) -> Chain:
    return c + d


def chain_scale(c: Chain, factor) -> Chain:
    return c.scale(factor)


def boundary_of_simplex(s: Simplex, ring: Ring = ZZ) -> Chain:
    return Chain(dim(s) - 1, [(f, (-1) ** i) for i, f in enumerate(facets(s))], ring)


def boundary(c: Chain) -> Chain:
    """Alternating-sign boundary, extended linearly.

    A 0-chain has the zero chain (of dimension -1) as boundary; a
    ``DimensionZero`` warning is emitted instead of raising.
    """
    if c.dimension == 0:
        warnings.warn("boundary of a 0-chain is zero", DimensionZero, stacklevel=2)
        return Chain.zero(-1, c.ring)
    terms = []
    for s, coeff in c:
        for i, f in enumerate(facets(s)):
            terms.append((f, coeff if i % 2 == 0 else -coeff))
    return Chain(c.dimension - 1, terms, c.ring)


def leading_simplex(c: Chain, order) -> Simplex:
    """Order-maximal simplex of the support. ``order`` is a sort key or a complex."""
    if not c:
        raise ZeroChain("leading simplex of the zero chain is undefined")
    key = order if callable(order) else order.key
    return max(c.support, key=key)
