"""Exact integer and rational linear algebra.

Everything here works on Python ints and :class:`fractions.Fraction`, so
results never overflow or round.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Vector = tuple


@dataclass(frozen=True)
class IntegerMatrix:
    """A ``d x n`` integer matrix stored row-major as nested tuples."""

    rows: tuple[tuple[int, ...], ...]
    ncols: int

    def __init__(self, rows: Iterable[Iterable[int]], ncols: int | None = None):
        data = tuple(tuple(int(v) for v in row) for row in rows)
        if ncols is None:
            if not data:
                raise ValueError("cannot infer the column count of a matrix with no rows")
            ncols = len(data[0])
        for i, row in enumerate(data):
            if len(row) != ncols:
                raise ValueError(f"row {i} has length {len(row)}, expected {ncols}")
        object.__setattr__(self, "rows", data)
        object.__setattr__(self, "ncols", ncols)

    @property
    def d(self) -> int:
        return len(self.rows)

    @property
    def n(self) -> int:
        return self.ncols

    @property
    def shape(self) -> tuple[int, int]:
        return (self.d, self.n)

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.rows)

    @property
    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.n)]

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def __matmul__(self, v: Sequence) -> tuple:
        if len(v) != self.n:
            raise ValueError("dimension mismatch")
        return tuple(sum(a * b for a, b in zip(row, v)) for row in self.rows)

    def __str__(self) -> str:
        return str(self.to_lists())


def _as_fraction_rows(rows) -> list[list[Fraction]]:
    return [[Fraction(v) for v in row] for row in rows]


def row_reduce(rows, ncols: int | None = None) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over the rationals.

    Returns the nonzero rows of the RREF and the pivot column of each.
    """
    m = _as_fraction_rows(rows)
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(A) -> int:
    """Rank over the rationals of an :class:`IntegerMatrix` or nested list."""
    rows = A.rows if isinstance(A, IntegerMatrix) else A
    if not rows:
        return 0
    return len(row_reduce(rows)[1])


def rational_nullspace(rows, ncols: int) -> list[tuple[Fraction, ...]]:
    """Basis of ``{x : M x = 0}`` over the rationals (one vector per free column)."""
    reduced, pivots = row_reduce(rows, ncols) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(reduced, pivots):
            v[p] = -row[f]
        basis.append(tuple(v))
    return basis


def solve_rational(rows, rhs: Sequence) -> tuple[Fraction, ...] | None:
    """One rational solution of ``M x = rhs``, or ``None`` if inconsistent."""
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    reduced, pivots = row_reduce(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, p in zip(reduced, pivots):
        x[p] = row[ncols]
    return tuple(x)


def rowspan_contains_ones(A: IntegerMatrix) -> bool:
    """Whether the all-ones row of length ``n`` is a rational combination of the rows of ``A``."""
    transposed = [list(col) for col in A.columns]
    return solve_rational(transposed, [1] * A.n) is not None


def column_submatrix(A: IntegerMatrix, indices: Iterable[int]) -> IntegerMatrix:
    """The ``d x |indices|`` matrix of the selected columns, in increasing index order."""
    idx = sorted(set(indices))
    for j in idx:
        if not 0 <= j < A.n:
            raise IndexError(f"column index {j} out of range for {A.d}x{A.n} matrix")
    return IntegerMatrix([[row[j] for j in idx] for row in A.rows], ncols=len(idx))


def _identity(k: int) -> list[list[int]]:
    return [[int(i == j) for j in range(k)] for i in range(k)]


def smith_normal_form(A) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Smith normal form ``S = U A V`` with unimodular ``U`` and ``V``.

    Pivots are chosen as the entry of smallest nonzero absolute value in the
    remaining block, which keeps intermediate entries small on desk-sized
    inputs.  Returns ``(S, U, V)`` as lists of lists.
    """
    rows = A.rows if isinstance(A, IntegerMatrix) else A
    m = len(rows)
    n = A.n if isinstance(A, IntegerMatrix) else (len(rows[0]) if rows else 0)
    S = [list(r) for r in rows]
    U = _identity(m)
    V = _identity(n)

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (S, V):
            for row in M:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):  # row dst += k * row src
        S[dst] = [a + k * b for a, b in zip(S[dst], S[src])]
        U[dst] = [a + k * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, k):  # col dst += k * col src
        for M in (S, V):
            for row in M:
                row[dst] += k * row[src]

    for t in range(min(m, n)):
        while True:
            nonzero = [(abs(S[i][j]), i, j) for i in range(t, m) for j in range(t, n) if S[i][j]]
            if not nonzero:
                return S, U, V
            _, pi, pj = min(nonzero)
            swap_rows(t, pi)
            swap_cols(t, pj)
            p = S[t][t]
            clean = True
            for i in range(t + 1, m):
                if S[i][t]:
                    add_row(i, t, -(S[i][t] // p))
                    clean = clean and S[i][t] == 0
            for j in range(t + 1, n):
                if S[t][j]:
                    add_col(j, t, -(S[t][j] // p))
                    clean = clean and S[t][j] == 0
            if not clean:
                continue
            # divisibility condition: p must divide the whole remaining block
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if S[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if S[t][t] < 0:
            S[t] = [-v for v in S[t]]
            U[t] = [-v for v in U[t]]
    return S, U, V


def kernel_lattice_basis(A: IntegerMatrix) -> list[tuple[int, ...]]:
    """A basis of the saturated lattice ``{u in Z^n : A u = 0}``.

    If ``S = U A V`` is the Smith form with ``r`` nonzero diagonal entries,
    the last ``n - r`` columns of ``V`` form a lattice basis of the kernel.
    """
    S, _, V = smith_normal_form(A)
    r = sum(1 for i in range(min(A.d, A.n)) if S[i][i] != 0)
    basis = [tuple(V[i][j] for i in range(A.n)) for j in range(r, A.n)]
    for v in basis:
        if any(A @ v):
            raise ArithmeticError("Smith transform produced a non-kernel vector")
    return basis


def in_integer_span(basis: Sequence[Sequence[int]], u: Sequence[int]) -> bool:
    """Whether ``u`` is an integer combination of ``basis`` (exact test via Smith form)."""
    if not basis:
        return not any(u)
    # columns of B are the basis vectors; solve B c = u over Z
    n = len(u)
    B = [[basis[j][i] for j in range(len(basis))] for i in range(n)]
    S, U, V = smith_normal_form(B)
    Uu = [sum(a * b for a, b in zip(row, u)) for row in U]
    for i in range(n):
        s = S[i][i] if i < len(basis) else 0
        if s == 0:
            if Uu[i] != 0:
                return False
        elif Uu[i] % s:
            return False
    return True


def clear_denominators(v: Sequence[Fraction]) -> tuple[int, ...]:
    """Scale a rational vector to a primitive integer vector with the same direction."""
    from math import gcd, lcm

    den = 1
    for x in v:
        den = lcm(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return tuple(x // g for x in ints) if g else tuple(ints)
