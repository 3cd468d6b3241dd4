"""Buchberger engine over the rationals.

Provides the division algorithm, reduced Groebner bases (both Buchberger
criteria, normal selection strategy), elimination, saturation by a monomial,
initial ideals under weights, and dimension counts of quotient rings.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Sequence

from ._engine import Engine
from .poly import (
    GREVLEX,
    BlockElimination,
    MonomialOrder,
    Polynomial,
    RevLex,
    WeightOrder,
    divides,
    weight_leading_form,
)

EMPTY = "empty"
INFINITE = "infinite"


def _common_nvars(polys: Iterable[Polynomial], nvars: int | None = None) -> int:
    for f in polys:
        if nvars is None:
            nvars = f.nvars
        elif f.nvars != nvars:
            raise ValueError(f"ring mismatch: {f.nvars} vs {nvars} variables")
    if nvars is None:
        raise ValueError("cannot determine the ambient ring of an empty generator list")
    return nvars


def reduce(f: Polynomial, basis: Sequence[Polynomial], order: MonomialOrder = GREVLEX) -> Polynomial:
    """Fully reduced remainder of ``f`` on division by ``basis``.

    No term of the result is divisible by a leading monomial of ``basis``.
    """
    _common_nvars(basis, f.nvars)
    eng = Engine(f.nvars, order)
    reducers = [eng.reducer(eng.from_poly(g)) for g in basis if g]
    return eng.to_poly(eng.normal_form(eng.from_poly(f), reducers))


def buchberger(gens: Sequence[Polynomial], order: MonomialOrder = GREVLEX, nvars: int | None = None) -> tuple[Polynomial, ...]:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    Pairs are pruned with Buchberger's coprime and chain criteria (in the
    Gebauer-Moeller form) and selected by smallest lcm.  The result is
    canonical: monic, pairwise reduced, and sorted by descending leading
    monomial, so two generating sets of the same ideal give identical tuples.
    """
    nvars = _common_nvars(gens, nvars)
    eng = Engine(nvars, order)
    gb = eng.groebner([eng.from_poly(g) for g in gens if g])
    return tuple(eng.to_poly(p) for p in gb)


def is_groebner_basis(G: Sequence[Polynomial], order: MonomialOrder = GREVLEX) -> bool:
    """Check Buchberger's S-pair criterion directly, every pair, no shortcuts."""
    G = [g for g in G if g]
    if not G:
        return True
    eng = Engine(G[0].nvars, order)
    reducers = [eng.reducer(eng.from_poly(g)) for g in G]
    for a, b in combinations(reducers, 2):
        if eng.normal_form(eng.spoly(a, b), reducers):
            return False
    return True


class Ideal:
    """An ideal of ``Q[v1..vN]`` with write-once cached reduced Groebner bases."""

    def __init__(self, generators: Iterable[Polynomial], nvars: int | None = None):
        gens = tuple(generators)
        self.nvars = _common_nvars(gens, nvars)
        self.generators = tuple(g for g in gens if g)
        self._gb: dict[MonomialOrder, tuple[Polynomial, ...]] = {}

    def groebner_basis(self, order: MonomialOrder = GREVLEX) -> tuple[Polynomial, ...]:
        gb = self._gb.get(order)
        if gb is None:
            gb = buchberger(self.generators, order, self.nvars)
            self._gb.setdefault(order, gb)
        return gb

    def is_unit(self) -> bool:
        gb = self.groebner_basis()
        return len(gb) == 1 and sum(gb[0].leading_monomial(GREVLEX)) == 0

    def is_zero(self) -> bool:
        return not self.generators

    def contains(self, f: Polynomial, order: MonomialOrder = GREVLEX) -> bool:
        return reduce(f, self.groebner_basis(order), order).is_zero()

    def equals(self, other: Ideal, order: MonomialOrder = GREVLEX) -> bool:
        return self.nvars == other.nvars and self.groebner_basis(order) == other.groebner_basis(order)

    def leading_monomials(self, order: MonomialOrder = GREVLEX) -> list[tuple]:
        return [g.leading_monomial(order) for g in self.groebner_basis(order)]

    def __repr__(self) -> str:
        return f"Ideal({len(self.generators)} generators in {self.nvars} variables)"


def eliminate(ideal: Ideal, front_block: int) -> Ideal:
    """``I`` intersected with the subring of the last ``nvars - front_block`` variables.

    The result lives in that smaller ring.
    """
    if not 0 <= front_block < ideal.nvars:
        raise ValueError("front block must leave at least one variable")
    if front_block == 0:
        return ideal
    order = BlockElimination(front_block)
    keep = range(front_block, ideal.nvars)
    gb = ideal.groebner_basis(order)
    survivors = [g.restrict(keep) for g in gb if not any(any(m[:front_block]) for m in g.terms)]
    return Ideal(survivors, nvars=ideal.nvars - front_block)


def saturate(ideal: Ideal, m: Sequence[int]) -> Ideal:
    """``I : m^infinity`` via one auxiliary variable ``t`` and the relation ``t*m - 1``."""
    m = tuple(m)
    if len(m) != ideal.nvars:
        raise ValueError("monomial length does not match the ring")
    if not any(m):
        return ideal
    N = ideal.nvars + 1
    gens = [g.embed(N, 1) for g in ideal.generators]
    gens.append(Polynomial({(1,) + m: 1, (0,) * N: -1}, nvars=N))
    return eliminate(Ideal(gens, nvars=N), 1)


def is_weighted_homogeneous(f: Polynomial, weights: Sequence) -> bool:
    return len({sum(w * e for w, e in zip(weights, m)) for m in f.terms}) <= 1


def saturate_variable(ideal: Ideal, i: int, weights: Sequence) -> Ideal:
    """``I : v_i^infinity`` for ``I`` homogeneous under strictly positive ``weights``.

    Uses weighted reverse lex with ``v_i`` last: then ``v_i`` divides a
    leading monomial only if it divides the whole element, and dividing each
    basis element by its largest power of ``v_i`` generates the saturation.
    """
    N = ideal.nvars
    if len(weights) != N or any(w <= 0 for w in weights):
        raise ValueError("need one strictly positive weight per variable")
    if not all(is_weighted_homogeneous(g, weights) for g in ideal.generators):
        raise ValueError("ideal is not homogeneous for the given weights")
    order = WeightOrder(tuple(weights), RevLex(tuple(j for j in range(N) if j != i) + (i,)))
    gens = []
    for g in ideal.groebner_basis(order):
        k = min(m[i] for m in g.terms)
        if k:
            g = Polynomial._raw({m[:i] + (m[i] - k,) + m[i + 1 :]: c for m, c in g.terms.items()}, N)
        gens.append(g)
    return Ideal(gens, nvars=N)


def initial_ideal(ideal: Ideal, weights: Sequence, tiebreak: MonomialOrder = GREVLEX) -> Ideal:
    """``in_w(I)``: weight-leading forms of a Groebner basis under ``w`` refined by ``tiebreak``."""
    order = WeightOrder(tuple(weights), tiebreak)
    gb = ideal.groebner_basis(order)
    return Ideal([weight_leading_form(g, order.weights) for g in gb], nvars=ideal.nvars)


def _support_mask(m) -> int:
    mask = 0
    for i, e in enumerate(m):
        if e:
            mask |= 1 << i
    return mask


def maximal_independent_set(ideal: Ideal, order: MonomialOrder = GREVLEX) -> tuple[int, ...] | None:
    """Largest variable set with no leading monomial supported inside it.

    ``None`` for the unit ideal.
    """
    gb = ideal.groebner_basis(order)
    if any(sum(g.leading_monomial(order)) == 0 for g in gb):
        return None
    masks = {_support_mask(g.leading_monomial(order)) for g in gb}
    N = ideal.nvars
    for size in range(N, -1, -1):
        for subset in combinations(range(N), size):
            s = 0
            for i in subset:
                s |= 1 << i
            if all(mk & ~s for mk in masks):
                return subset
    return ()


def krull_dimension(ideal: Ideal, order: MonomialOrder = GREVLEX):
    """Krull dimension of the quotient ring, or :data:`EMPTY` for the unit ideal."""
    s = maximal_independent_set(ideal, order)
    return EMPTY if s is None else len(s)


def standard_monomials(ideal: Ideal, order: MonomialOrder = GREVLEX) -> list[tuple] | None:
    """All monomials outside the initial ideal, or ``None`` if there are infinitely many."""
    gb = ideal.groebner_basis(order)
    lms = [g.leading_monomial(order) for g in gb]
    N = ideal.nvars
    if any(sum(m) == 0 for m in lms):
        return []
    bound = [None] * N
    for m in lms:
        sup = [i for i, e in enumerate(m) if e]
        if len(sup) == 1:
            i = sup[0]
            bound[i] = m[i] if bound[i] is None else min(bound[i], m[i])
    if any(b is None for b in bound):
        return None
    out = []

    def walk(prefix: list[int]):
        k = len(prefix)
        if k == N:
            mono = tuple(prefix)
            if not any(divides(lm, mono) for lm in lms):
                out.append(mono)
            return
        for e in range(bound[k]):
            prefix.append(e)
            # prune on leading monomials living entirely in the prefix
            if not any(all(lm[i] == 0 for i in range(k + 1, N)) and divides(lm[: k + 1], prefix) for lm in lms):
                walk(prefix)
            prefix.pop()

    walk([])
    return out


def quotient_vector_space_dimension(ideal: Ideal, order: MonomialOrder = GREVLEX):
    """Number of standard monomials, or :data:`INFINITE`."""
    std = standard_monomials(ideal, order)
    return INFINITE if std is None else len(std)


# --------------------------------------------------------------------------
# ideals linear in a block of variables


def linear_coefficients(f: Polynomial, nlinear: int) -> list[Polynomial]:
    """Write ``f = sum_j c_j(y) x_j`` for ``f`` in ``Q[x_1..x_k, y]`` with ``k = nlinear``.

    The coefficients live in ``Q[y]``.  Raises ``ValueError`` unless every
    term has degree exactly one in the ``x`` block.
    """
    N = f.nvars
    parts: list[dict] = [{} for _ in range(nlinear)]
    for m, c in f.terms.items():
        xs = [j for j in range(nlinear) if m[j]]
        if len(xs) != 1 or m[xs[0]] != 1:
            raise ValueError("form is not linear homogeneous in the leading block")
        parts[xs[0]][m[nlinear:]] = c
    return [Polynomial(p, nvars=N - nlinear) for p in parts]


def determinant(M: Sequence[Sequence[Polynomial]], nvars: int) -> Polynomial:
    """Laplace expansion along the first row; fine for the small sizes used here."""
    k = len(M)
    if k == 0:
        return Polynomial.constant(1, nvars)
    total = Polynomial.zero(nvars)
    for j, entry in enumerate(M[0]):
        if entry.is_zero():
            continue
        sub = [row[:j] + row[j + 1 :] for row in M[1:]]
        term = entry * determinant(sub, nvars)
        total = total + term if j % 2 == 0 else total - term
    return total


def minors(M: Sequence[Sequence[Polynomial]], size: int, nvars: int) -> list[Polynomial]:
    rows, cols = len(M), len(M[0]) if M else 0
    out = []
    for R in combinations(range(rows), size):
        for C in combinations(range(cols), size):
            det = determinant([[M[i][j] for j in C] for i in R], nvars)
            if not det.is_zero():
                out.append(det)
    return out


def linear_fiber_dimension(base: Ideal, forms: Sequence[Polynomial], nlinear: int):
    """Krull dimension of ``Q[x, y] / (base + <forms>)`` for forms linear in ``x``.

    ``base`` lives in ``Q[y]`` and each form in ``Q[x_1..x_k, y]`` is
    ``sum_j c_ij(y) x_j``.  Over a point ``y`` the fibre is the kernel of the
    matrix ``C(y)``, so stratifying ``V(base)`` by rank gives

        dim = max over r of  dim V(base + (r+1)-minors of C) + k - r.

    Only ideals in the ``y`` variables are ever handed to Buchberger.
    Returns :data:`EMPTY` when ``V(base)`` is empty.
    """
    C = [linear_coefficients(f, nlinear) for f in forms]
    for f in forms:
        if f.nvars != base.nvars + nlinear:
            raise ValueError("forms do not live in the x-extended ring of the base ideal")
    top = min(len(C), nlinear)
    best = EMPTY
    for r in range(top + 1):
        gens = list(base.generators)
        if r < top:
            gens += minors(C, r + 1, base.nvars)
        d = krull_dimension(Ideal(gens, nvars=base.nvars))
        if d == EMPTY:
            continue
        cand = d + nlinear - r
        best = cand if best == EMPTY else max(best, cand)
    return best
