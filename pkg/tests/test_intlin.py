import random
from fractions import Fraction

import oracles
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gkzcert.intlin import (
    IntegerMatrix,
    clear_denominators,
    column_submatrix,
    in_integer_span,
    kernel_lattice_basis,
    rank,
    rational_nullspace,
    rowspan_contains_ones,
    smith_normal_form,
    solve_rational,
)

small_matrices = st.integers(1, 3).flatmap(
    lambda d: st.integers(1, 5).flatmap(
        lambda n: st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n), min_size=d, max_size=d)
    )
)


def matmul(X, Y):
    return [[sum(X[i][k] * Y[k][j] for k in range(len(Y))) for j in range(len(Y[0]))] for i in range(len(X))]


@pytest.mark.parametrize(
    "rows, expected",
    [
        ([[1, 1, 1], [0, 1, 2]], 2),
        ([[0, 0, 0], [0, 0, 0]], 0),
        ([[1, 1, 1, 1], [0, 1, 2, 3]], 2),
        ([[1, 2], [2, 4]], 1),
    ],
)
def test_rank_examples(rows, expected):
    assert rank(IntegerMatrix(rows)) == expected


def test_ragged_rows_rejected():
    with pytest.raises(ValueError):
        IntegerMatrix([[1, 2], [3]])


def test_kernel_of_identity_is_empty():
    assert kernel_lattice_basis(IntegerMatrix([[1, 0], [0, 1]])) == []


@pytest.mark.parametrize("rows, expected", [([[1, 1, 1], [0, 1, 2]], (1, -2, 1)), ([[1, 2]], (2, -1))])
def test_kernel_one_dimensional(rows, expected):
    (v,) = kernel_lattice_basis(IntegerMatrix(rows))
    assert v in (expected, tuple(-x for x in expected))


def test_kernel_matches_rational_oracle_and_is_saturated():
    A = IntegerMatrix([[2, 4, 6]])
    basis = kernel_lattice_basis(A)
    assert len(basis) == len(oracles.sympy_nullspace(A.rows))
    assert in_integer_span(basis, (1, 1, -1))
    assert in_integer_span(basis, (2, -1, 0))


@pytest.mark.parametrize(
    "rows, expected",
    [([[1, 1, 1], [0, 1, 2]], True), ([[1, 2]], False), ([[2, 2], [0, 1]], True), ([[1, 2], [0, 1]], True)],
)
def test_rowspan_contains_ones(rows, expected):
    assert rowspan_contains_ones(IntegerMatrix(rows)) is expected


def test_column_submatrix():
    A = IntegerMatrix([[1, 1, 1], [0, 1, 2]])
    assert column_submatrix(A, {0, 2}).to_lists() == [[1, 1], [0, 2]]
    assert column_submatrix(A, range(3)) == A
    empty = column_submatrix(A, [])
    assert empty.shape == (2, 0)
    with pytest.raises(IndexError):
        column_submatrix(A, [3])


def test_solve_rational():
    assert solve_rational([[1, 1], [0, 2]], [3, 4]) == (Fraction(1), Fraction(2))
    assert solve_rational([[1, 1], [1, 1]], [0, 1]) is None


def test_clear_denominators_is_primitive():
    assert clear_denominators([Fraction(1, 2), Fraction(-1, 3)]) == (3, -2)


@settings(max_examples=60, deadline=None)
@given(small_matrices)
def test_smith_normal_form_is_a_factorisation(rows):
    S, U, V = smith_normal_form(rows)
    assert matmul(matmul(U, rows), V) == S
    diag = [S[i][i] for i in range(min(len(S), len(S[0])))]
    nonzero = [x for x in diag if x]
    assert all(x > 0 for x in nonzero)
    assert all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))
    assert len(nonzero) == oracles.sympy_rank(rows)
    assert all(S[i][j] == 0 for i in range(len(S)) for j in range(len(S[0])) if i != j)


@settings(max_examples=60, deadline=None)
@given(small_matrices)
def test_kernel_basis_properties(rows):
    A = IntegerMatrix(rows)
    basis = kernel_lattice_basis(A)
    assert rank(A) == oracles.sympy_rank(rows)
    assert len(basis) == A.n - rank(A)
    assert all(not any(A @ v) for v in basis)
    # saturation: random integer kernel vectors are integer combinations of the basis
    rng = random.Random(len(basis))
    rational = oracles.sympy_nullspace(rows)
    for _ in range(5):
        if not rational:
            break
        combo = [Fraction(0)] * A.n
        for q in rational:
            c = Fraction(rng.randint(-5, 5), rng.randint(1, 5))
            combo = [x + c * y for x, y in zip(combo, q)]
        if any(combo):
            assert in_integer_span(basis, clear_denominators(combo))


@settings(max_examples=40, deadline=None)
@given(small_matrices, st.sets(st.integers(0, 4)))
def test_submatrix_rank_is_monotone(rows, subset):
    A = IntegerMatrix(rows)
    S = [j for j in subset if j < A.n]
    assert rank(column_submatrix(A, S)) <= rank(A)


def test_rational_nullspace_vectors_are_in_kernel():
    rows = [[1, 2, 3], [2, 4, 7]]
    for v in rational_nullspace(rows, 3):
        assert all(sum(a * x for a, x in zip(r, v)) == 0 for r in rows)
