"""Exact linear algebra used to check every other module.

Matrices are plain lists of row lists. Integer work never leaves Python
ints; over Q entries are ``Fraction``; over Z/p entries are reduced ints.
Nothing here reuses the union-find or greedy machinery of ``spanning``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .chains import QQ, ZZ, Chain, Ring
from .complex import OrderedSimplicialComplex, facets

Matrix = list


def zeros(m: int, n: int) -> Matrix:
    return [[0] * n for _ in range(m)]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(M: Matrix, ncols: int | None = None) -> Matrix:
    if not M:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*M)]


def matmul(A: Matrix, B: Matrix, ring: Ring = ZZ) -> Matrix:
    inner = len(B)
    ncols = len(B[0]) if B else 0
    out = []
    for row in A:
        out.append([ring(sum(row[k] * B[k][j] for k in range(inner))) for j in range(ncols)])
    return out


def _coerce(M: Matrix, ring: Ring) -> Matrix:
    return [[ring(x) for x in row] for row in M]


# -- boundary matrices ---------------------------------------------------------
def boundary_matrix(X: OrderedSimplicialComplex, n: int, ring: Ring = ZZ) -> Matrix:
    """Matrix of the n-th boundary map: rows (n-1)-simplices, columns n-simplices."""
    rows = X.of_dim(n - 1)
    cols = X.of_dim(n)
    if n <= 0:
        return [[] for _ in rows] if n == 0 else []
    r = {s: i for i, s in enumerate(rows)}
    M = zeros(len(rows), len(cols))
    for j, s in enumerate(cols):
        for i, f in enumerate(facets(s)):
            M[r[f]][j] = ring((-1) ** i)
    return M


def chains_to_matrix(chains, basis, ring: Ring = ZZ) -> Matrix:
    """Columns are the coefficient vectors of ``chains`` in ``basis``."""
    idx = {s: i for i, s in enumerate(basis)}
    M = zeros(len(basis), len(chains))
    for j, c in enumerate(chains):
        for s, coeff in c:
            M[idx[s]][j] = ring(coeff)
    return M


# -- Smith normal form -----------------------------------------------------------
def _size(x, ring):
    if ring.tag == "Z":
        return abs(x)
    return 0 if x == 0 else 1


def _quo(a, b, ring):
    if ring.tag == "Z":
        return a // b
    if ring.tag == "Q":
        return Fraction(a) / b
    return a * pow(b, -1, ring.p) % ring.p


def smith_normal_form(M: Matrix, ring: Ring = ZZ):
    """Return ``(U, S, V)`` with ``U @ M @ V == S`` and S in Smith form.

    U and V are invertible over the ring. The pivot is always the nonzero
    entry of least absolute value in the remaining block.
    """
    m = len(M)
    n = len(M[0]) if m else 0
    S = _coerce(M, ring)
    U = identity(m)
    V = identity(n)

    def row_op(i, k, q):  # row_i -= q * row_k
        S[i] = [ring(a - q * b) for a, b in zip(S[i], S[k])]
        U[i] = [ring(a - q * b) for a, b in zip(U[i], U[k])]

    def col_op(j, k, q):  # col_j -= q * col_k
        for row in S:
            row[j] = ring(row[j] - q * row[k])
        for row in V:
            row[j] = ring(row[j] - q * row[k])

    def swap_rows(i, k):
        S[i], S[k] = S[k], S[i]
        U[i], U[k] = U[k], U[i]

    def swap_cols(j, k):
        for row in S:
            row[j], row[k] = row[k], row[j]
        for row in V:
            row[j], row[k] = row[k], row[j]

    for t in range(min(m, n)):
        cands = [(i, j) for i in range(t, m) for j in range(t, n) if S[i][j] != 0]
        if not cands:
            break
        i, j = min(cands, key=lambda ij: (_size(S[ij[0]][ij[1]], ring), ij))
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            for i in range(t + 1, m):
                if S[i][t] != 0:
                    row_op(i, t, _quo(S[i][t], S[t][t], ring))
            for j in range(t + 1, n):
                if S[t][j] != 0:
                    col_op(j, t, _quo(S[t][j], S[t][t], ring))
            rest = [(i, t) for i in range(t + 1, m) if S[i][t] != 0]
            rest += [(t, j) for j in range(t + 1, n) if S[t][j] != 0]
            if rest:
                i, j = min(rest, key=lambda ij: (_size(S[ij[0]][ij[1]], ring), ij))
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n)
                 if ring.tag == "Z" and S[i][j] % S[t][t] != 0),
                None,
            )
            if bad is None:
                break
            # pull the offending row into row t; the next pass shrinks the pivot
            S[t] = [ring(a + b) for a, b in zip(S[t], S[bad])]
            U[t] = [ring(a + b) for a, b in zip(U[t], U[bad])]
        d = S[t][t]
        if ring.tag == "Z" and d < 0:
            S[t] = [-x for x in S[t]]
            U[t] = [-x for x in U[t]]
        elif ring.is_field and d != 1:
            inv = ring.inverse(d)
            S[t] = [ring(x * inv) for x in S[t]]
            U[t] = [ring(x * inv) for x in U[t]]
    return U, S, V


def diagonal(S: Matrix) -> list:
    return [S[i][i] for i in range(min(len(S), len(S[0]) if S else 0))]


def is_smith_normal_form(S: Matrix, ring: Ring = ZZ) -> bool:
    m = len(S)
    n = len(S[0]) if m else 0
    for i in range(m):
        for j in range(n):
            if i != j and S[i][j] != 0:
                return False
    d = diagonal(S)
    nonzero = [x for x in d if x != 0]
    if d[: len(nonzero)] != nonzero:
        return False
    if ring.tag == "Z":
        if any(x < 0 for x in nonzero):
            return False
        return all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))
    return all(x == 1 for x in nonzero)


def invariant_factors(M: Matrix, ring: Ring = ZZ) -> list:
    _, S, _ = smith_normal_form(M, ring)
    return [x for x in diagonal(S) if x != 0]


def determinant(M: Matrix) -> int:
    """Integer determinant by Bareiss elimination."""
    A = [list(map(int, row)) for row in M]
    n = len(A)
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[-1][-1] if n else 1


# -- rank --------------------------------------------------------------------------
def rank(M: Matrix, ring: Ring = ZZ) -> int:
    """Rank over the fraction field of ``ring`` (Q for Z)."""
    if not M or not M[0]:
        return 0
    if ring.tag == "Zp":
        return _rank_mod_p(M, ring.p)
    if ring.tag == "Q":
        # clear denominators row by row; rank is unchanged
        rows = []
        for row in M:
            row = [Fraction(x) for x in row]
            den = 1
            for x in row:
                den = den * x.denominator // _gcd(den, x.denominator)
            rows.append([int(x * den) for x in row])
        M = rows
    return _rank_bareiss(M)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


def _rank_bareiss(M: Matrix) -> int:
    A = [list(map(int, row)) for row in M]
    m, n = len(A), len(A[0])
    r, prev = 0, 1
    for c in range(n):
        piv = next((i for i in range(r, m) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        for i in range(r + 1, m):
            for j in range(c + 1, n):
                A[i][j] = (A[i][j] * A[r][c] - A[i][c] * A[r][j]) // prev
            A[i][c] = 0
        prev = A[r][c]
        r += 1
        if r == m:
            break
    return r


def _rank_mod_p(M: Matrix, p: int) -> int:
    A = [[x % p for x in row] for row in M]
    m, n = len(A), len(A[0])
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = pow(A[r][c], -1, p)
        A[r] = [x * inv % p for x in A[r]]
        for i in range(m):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [(a - f * b) % p for a, b in zip(A[i], A[r])]
        r += 1
        if r == m:
            break
    return r


# -- canonical span forms ------------------------------------------------------------
def row_hermite_form(M: Matrix, ring: Ring = ZZ) -> Matrix:
    """Canonical basis of the row span of ``M``.

    Over Z: Hermite normal form (positive pivots, entries above a pivot
    reduced into ``[0, pivot)``), zero rows removed. Over a field: reduced
    row echelon form.
    """
    A = _coerce(M, ring)
    m = len(A)
    n = len(A[0]) if m else 0
    p = 0
    for c in range(n):
        if p == m:
            break
        while True:
            nz = [i for i in range(p, m) if A[i][c] != 0]
            if not nz:
                break
            k = min(nz, key=lambda i: (_size(A[i][c], ring), i))
            A[p], A[k] = A[k], A[p]
            clean = True
            for i in range(p + 1, m):
                if A[i][c] != 0:
                    q = _quo(A[i][c], A[p][c], ring)
                    A[i] = [ring(a - q * b) for a, b in zip(A[i], A[p])]
                    clean = clean and A[i][c] == 0
            if clean:
                break
        if A[p][c] == 0:
            continue
        if ring.tag == "Z":
            if A[p][c] < 0:
                A[p] = [-x for x in A[p]]
        else:
            inv = ring.inverse(A[p][c])
            A[p] = [ring(x * inv) for x in A[p]]
        for i in range(p):
            if A[i][c] != 0:
                q = _quo(A[i][c], A[p][c], ring)
                A[i] = [ring(a - q * b) for a, b in zip(A[i], A[p])]
        p += 1
    return [row for row in A[:p]]


def column_hermite_form(M: Matrix, ring: Ring = ZZ) -> Matrix:
    """Canonical generators of the column span, returned as rows."""
    return row_hermite_form(transpose(M), ring)


def image_submodule_equal(M: Matrix, N: Matrix, ring: Ring = ZZ) -> bool:
    """True iff the column spans of M and N coincide as submodules."""
    if len(M) != len(N):
        raise ValueError("matrices must have the same number of rows")
    return column_hermite_form(M, ring) == column_hermite_form(N, ring)


def is_saturated(M: Matrix) -> bool:
    """Column span over Z is a pure sublattice (all invariant factors are 1)."""
    return all(d == 1 for d in invariant_factors(M, ZZ))


# -- homology ------------------------------------------------------------------------
@dataclass(frozen=True)
class HomologySummary:
    n: int
    betti: int
    torsion: tuple = field(default=())
    ring: Ring = ZZ

    def as_dict(self) -> dict:
        return {"n": self.n, "betti": self.betti, "torsion": list(self.torsion)}


def _snf_rank(M: Matrix, ring: Ring) -> tuple[int, list]:
    if not M or not M[0]:
        return 0, []
    d = invariant_factors(M, ring)
    return len(d), d


def homology(X: OrderedSimplicialComplex, n: int, ring: Ring = ZZ) -> HomologySummary:
    """Betti number and torsion of the n-th homology, from Smith forms."""
    if n < 0:
        raise ValueError("n must be >= 0")
    cells = len(X.of_dim(n))
    rank_n, _ = _snf_rank(boundary_matrix(X, n, ring), ring) if n > 0 else (0, [])
    rank_up, factors = _snf_rank(boundary_matrix(X, n + 1, ring), ring)
    torsion = tuple(d for d in factors if d > 1) if ring.tag == "Z" else ()
    return HomologySummary(n, cells - rank_n - rank_up, torsion, ring)


def cycle_rank(X: OrderedSimplicialComplex, n: int, ring: Ring = ZZ) -> int:
    """Rank of the n-cycle module (nullity of the n-th boundary map)."""
    cells = len(X.of_dim(n))
    if n == 0:
        return cells
    return cells - rank(boundary_matrix(X, n, ring), ring)


def chains_rank(chains, basis, ring: Ring = ZZ) -> int:
    if not chains:
        return 0
    return rank(chains_to_matrix(chains, basis, ring), ring)


def is_cycle(c: Chain, X: OrderedSimplicialComplex | None = None) -> bool:
    """``c`` is supported on ``X`` (if given) and has zero boundary."""
    if X is not None and not all(s in X for s in c.support):
        return False
    acc = {}
    for s, coeff in c:
        for i, f in enumerate(facets(s)):
            acc[f] = c.ring(acc.get(f, 0) + (coeff if i % 2 == 0 else -coeff))
    return all(v == 0 for v in acc.values())
