"""Toric ideals of integer matrices and the homogenized matrix."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ZeroColumnError
from .groebner import Ideal, initial_ideal, saturate, saturate_variable
from .intlin import IntegerMatrix, kernel_lattice_basis, rowspan_contains_ones
from .poly import GREVLEX, Polynomial


def check_nonzero_columns(A: IntegerMatrix) -> None:
    for j, col in enumerate(A.columns):
        if not any(col):
            raise ZeroColumnError(f"column {j + 1} of A is zero")


def kernel_binomial(v) -> Polynomial:
    """``xi^{v+} - xi^{v-}`` for an integer vector ``v``."""
    plus = tuple(max(x, 0) for x in v)
    minus = tuple(max(-x, 0) for x in v)
    return Polynomial.binomial(plus, minus)


def ideal_from_basis(gb, nvars: int, order=GREVLEX) -> Ideal:
    """Wrap an already-reduced Groebner basis, seeding the cache for ``order``."""
    I = Ideal(gb, nvars=nvars)
    I._gb[order] = tuple(gb)
    return I


@dataclass(frozen=True)
class ToricData:
    matrix: IntegerMatrix
    kernel_basis: tuple
    gb: tuple  # reduced grevlex Groebner basis of I_A in Q[u1..un]
    _ideal: Ideal | None = field(default=None, compare=False, repr=False)

    @property
    def n(self) -> int:
        return self.matrix.n

    @property
    def ideal(self) -> Ideal:
        if self._ideal is None:
            object.__setattr__(self, "_ideal", ideal_from_basis(self.gb, self.n))
        return self._ideal


def toric_ideal(A: IntegerMatrix, method: str = "auxiliary") -> ToricData:
    """The toric ideal ``I_A`` as a reduced grevlex Groebner basis.

    Built from the lattice-basis binomials of ``ker_Z(A)`` and saturated at
    the product of all variables, which recovers every binomial
    ``xi^u - xi^v`` with ``Au = Av``.  ``"auxiliary"`` saturates with one
    extra variable ``t``; ``"per_variable"`` saturates one variable at a
    time under a positive grading and serves as a cross-check.
    """
    if method not in ("auxiliary", "per_variable"):
        raise ValueError(f"unknown saturation method {method!r}")
    check_nonzero_columns(A)
    basis = tuple(kernel_lattice_basis(A))
    n = A.n
    if not basis:
        return ToricData(A, basis, ())
    lattice = Ideal([kernel_binomial(v) for v in basis], nvars=n)
    w = positive_grading(A) if method == "per_variable" else None
    if w is None:
        sat = saturate(lattice, (1,) * n)
    else:
        sat = lattice
        for i in range(n):
            sat = saturate_variable(sat, i, w)
    return ToricData(A, basis, sat.groebner_basis(GREVLEX))


def positive_grading(A: IntegerMatrix) -> tuple[int, ...] | None:
    """A strictly positive vector in the row span of ``A``, if a cheap one exists.

    Tries each row and the column sums.  The lattice ideal is homogeneous
    for any such vector, which allows saturating one variable at a time.
    """
    candidates = list(A.rows) + [tuple(sum(c) for c in A.columns)]
    for w in candidates:
        if all(v > 0 for v in w):
            return tuple(w)
    return None


def is_standard_graded(A: IntegerMatrix) -> bool:
    return rowspan_contains_ones(A)


@dataclass(frozen=True)
class HomogenizedMatrix:
    matrix: IntegerMatrix
    source: IntegerMatrix

    def is_consistent(self) -> bool:
        rows = self.matrix.rows
        return (
            all(v == 1 for v in rows[0])
            and self.matrix.column(0) == (1,) + (0,) * self.source.d
            and tuple(r[1:] for r in rows[1:]) == self.source.rows
        )


def homogenize(A: IntegerMatrix) -> HomogenizedMatrix:
    """Prepend a row of ones, then a leftmost column ``(1, 0, ..., 0)``."""
    rows = [[1] * (A.n + 1)]
    rows += [[0] + list(r) for r in A.rows]
    return HomogenizedMatrix(IntegerMatrix(rows), A)


def initial_toric_ideal(T: ToricData) -> Ideal:
    """``in(I_A)`` for the all-ones weight on the symbol variables, refined by grevlex."""
    if not T.gb:
        return Ideal([], nvars=T.n)
    return initial_ideal(T.ideal, (1,) * T.n, GREVLEX)


def contract_first_variable(ideal: Ideal) -> Ideal:
    """``<J, v0>`` with ``v0`` set to zero, as an ideal in the remaining variables."""
    N = ideal.nvars
    v0 = Polynomial.variable(0, N)
    gb = Ideal(list(ideal.generators) + [v0], nvars=N).groebner_basis(GREVLEX)
    rest = [g.restrict(range(1, N)) for g in gb if g != v0]
    return Ideal(rest, nvars=N - 1)


def homogenized_initial_ideal(A: IntegerMatrix) -> Ideal:
    """``<I_Ahat, xi0>`` in ``Q[xi0..xin]`` pushed down to ``Q[xi1..xin]``."""
    Ahat = homogenize(A).matrix
    That = toric_ideal(Ahat)
    return contract_first_variable(That.ideal)


@dataclass(frozen=True)
class HomogeneityAudit:
    passed: bool
    checked: int
    counterexample: dict | None = None


def a_homogeneity_audit(T: ToricData) -> HomogeneityAudit:
    """Check that every basis element is a binomial ``xi^u - xi^v`` with ``Au = Av``."""
    A = T.matrix
    for g in T.gb:
        mons = list(g.terms)
        if len(mons) != 2 or not g.is_binomial():
            return HomogeneityAudit(False, len(T.gb), {"element": mons, "reason": "not a binomial"})
        u, v = mons
        if A @ u != A @ v:
            return HomogeneityAudit(
                False,
                len(T.gb),
                {"u": list(u), "v": list(v), "Au": list(A @ u), "Av": list(A @ v)},
            )
    return HomogeneityAudit(True, len(T.gb))
