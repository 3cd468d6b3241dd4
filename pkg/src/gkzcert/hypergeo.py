"""Certification pipeline for A-hypergeometric systems.

Everything happens in the commutative model: the ring ``Q[x, u]`` with
``u_i`` standing for the symbol of ``d/dx_i``.  The characteristic model is
``R = Q[x, u] / <in(I_A), A x u>`` where ``in`` takes top-degree forms in
``u``.  Parameters ``beta`` never enter any ideal; they are only echoed.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .cone import enumerate_faces, orbit_dimension
from .errors import OrbitBoundaryError, RankDeficientError
from .groebner import (
    INFINITE,
    Ideal,
    EMPTY,
    krull_dimension,
    linear_fiber_dimension,
    quotient_vector_space_dimension,
)
from .intlin import IntegerMatrix, column_submatrix, rank
from .poly import GREVLEX, Polynomial, evaluate_partial, render, xi_names, xu_names
from .toric import (
    ToricData,
    a_homogeneity_audit,
    check_nonzero_columns,
    homogenize,
    homogenized_initial_ideal,
    initial_toric_ideal,
    is_standard_graded,
    toric_ideal,
)
from .transversal import (
    TransversalityInstance,
    certify_transversality,
    random_rational,
    sample_face_instance,
    sample_orbit_point,
)

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"
FIBER_RESAMPLES = 3
METHODS = ("direct", "stratified")


def bilinear_dimension(base_gb: Sequence[Polynomial], forms: Sequence[Polynomial], n: int, method: str = "direct"):
    """Krull dimension of ``Q[x, u] / (base + forms)`` with ``base`` in ``Q[u]``.

    ``"direct"`` takes a grevlex Groebner basis of the whole ``2n``-variable
    ideal.  ``"stratified"`` splits by the rank of the coefficient matrix of
    the forms and only needs Groebner bases in the ``u`` variables; it is an
    independent cross-check.
    """
    if method == "stratified":
        return linear_fiber_dimension(Ideal(base_gb, nvars=n), forms, n)
    if method == "direct":
        gens = [embed_xi(g, n) for g in base_gb] + list(forms)
        return krull_dimension(Ideal(gens, nvars=2 * n), GREVLEX)
    raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")


def validate(A: IntegerMatrix, full_rank: bool = True) -> None:
    check_nonzero_columns(A)
    if full_rank and rank(A) != A.d:
        raise RankDeficientError(f"A has rank {rank(A)} but {A.d} rows")


@lru_cache(maxsize=256)
def cached_toric_ideal(A: IntegerMatrix) -> ToricData:
    return toric_ideal(A)


@dataclass
class Verdict:
    check: str
    status: str
    details: dict = field(default_factory=dict)
    reason: str = ""

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self) -> dict:
        out = {"check": self.check, "status": self.status, "details": self.details}
        if self.reason:
            out["reason"] = self.reason
        return out


def _status(ok: bool) -> str:
    return PASS if ok else FAIL


def _render_all(polys, names) -> list[str]:
    return [render(p, names) for p in polys]


# --------------------------------------------------------------------------
# Euler symbols and the parameter theorem


@dataclass(frozen=True)
class EulerSymbols:
    n: int
    forms: tuple  # d polynomials in Q[x1..xn, u1..un]

    def coefficient_matrix(self) -> list[list[Fraction]]:
        """Row ``i`` holds the coefficients of ``x_j u_j`` in form ``i``."""
        n = self.n
        mons = [tuple(int(k == j) + int(k == n + j) for k in range(2 * n)) for j in range(n)]
        return [[f.terms.get(m, Fraction(0)) for m in mons] for f in self.forms]


def euler_symbol_forms(A: IntegerMatrix) -> EulerSymbols:
    """The bilinear forms ``sum_j a_ij x_j u_j``, one per row of ``A``."""
    n = A.n
    forms = []
    for row in A.rows:
        terms = {}
        for j, a in enumerate(row):
            if a:
                m = [0] * (2 * n)
                m[j] = 1
                m[n + j] = 1
                terms[tuple(m)] = a
        forms.append(Polynomial(terms, nvars=2 * n))
    return EulerSymbols(n, tuple(forms))


def embed_xi(f: Polynomial, n: int) -> Polynomial:
    """Move a polynomial in ``Q[u1..un]`` into the u-block of ``Q[x, u]``."""
    return f.embed(2 * n, n)


def parameter_theorem_ideal(A: IntegerMatrix) -> Ideal:
    """``I_A + <A x u>`` in ``2n`` variables."""
    check_nonzero_columns(A)
    T = cached_toric_ideal(A)
    n = A.n
    gens = [embed_xi(g, n) for g in T.gb] + list(euler_symbol_forms(A).forms)
    return Ideal(gens, nvars=2 * n)


def verify_parameter_theorem(A: IntegerMatrix, method: str = "direct") -> Verdict:
    """Dimension before and after adding the Euler forms to ``Q[x] (x) S_A``."""
    check_nonzero_columns(A)
    n, r = A.n, rank(A)
    T = cached_toric_ideal(A)
    before = krull_dimension(T.ideal) + n
    after = bilinear_dimension(T.gb, euler_symbol_forms(A).forms, n, method)
    drop = before - after
    details = {
        "n": n,
        "rank": r,
        "forms": A.d,
        "dim_before": before,
        "dim_after": after,
        "drop": drop,
        "method": method,
    }
    ok = after == n and before == n + r
    if r == A.d:
        details["system_of_parameters"] = drop == r == A.d
        ok = ok and details["system_of_parameters"]
    else:
        details["system_of_parameters"] = SKIPPED
    return Verdict("parameter_theorem", _status(ok), details)


# --------------------------------------------------------------------------
# characteristic model


@dataclass
class CharacteristicModel:
    matrix: IntegerMatrix
    initial_gb: tuple  # in(I_A), reduced grevlex basis in Q[u1..un]
    forms: EulerSymbols
    graded_path: str  # "direct" or "homogenized"
    cross_check_gb: tuple  # in(I_A) by the other route
    ideal: Ideal = field(init=False)
    _dimension: object = field(default=None, init=False, repr=False)

    def __post_init__(self):
        n = self.matrix.n
        gens = [embed_xi(g, n) for g in self.initial_gb] + list(self.forms.forms)
        self.ideal = Ideal(gens, nvars=2 * n)

    @property
    def n(self) -> int:
        return self.matrix.n

    @property
    def paths_agree(self) -> bool:
        return self.initial_gb == self.cross_check_gb

    @property
    def dimension(self):
        if self._dimension is None:
            self._dimension = krull_dimension(self.ideal, GREVLEX)
        return self._dimension

    def stratified_dimension(self):
        """Same number from rank strata of the Euler forms, without a 2n-variable basis."""
        return bilinear_dimension(self.initial_gb, self.forms.forms, self.n, "stratified")

    def generator_origins(self) -> list[str]:
        """Tag each generator as ``"initial"`` (u-only, from in(I_A)) or ``"euler"``."""
        n = self.n
        initial = {embed_xi(g, n) for g in self.initial_gb}
        euler = set(self.forms.forms)
        tags = []
        for g in self.ideal.generators:
            if g in initial and g.support() <= set(range(n, 2 * n)):
                tags.append("initial")
            elif g in euler:
                tags.append("euler")
            else:
                tags.append("other")
        return tags


def _direct_initial_gb(T: ToricData) -> tuple:
    return initial_toric_ideal(T).groebner_basis(GREVLEX)


@lru_cache(maxsize=256)
def characteristic_ideal(A: IntegerMatrix) -> CharacteristicModel:
    """Build ``<in(I_A), A x u>``.

    Standard-graded ``A`` uses ``I_A`` itself; otherwise ``in(I_A)`` comes from
    the homogenized matrix.  The other route is always computed as well and
    kept for cross-checking.
    """
    validate(A)
    T = cached_toric_ideal(A)
    via_hat = homogenized_initial_ideal(A).groebner_basis(GREVLEX)
    forms = euler_symbol_forms(A)
    if is_standard_graded(A):
        return CharacteristicModel(A, T.gb, forms, "direct", via_hat)
    return CharacteristicModel(A, via_hat, forms, "homogenized", _direct_initial_gb(T))


def verify_holonomicity(A: IntegerMatrix) -> Verdict:
    model = characteristic_ideal(A)
    dim = model.dimension
    details = {
        "n": A.n,
        "char_dim": dim,
        "path": model.graded_path,
        "paths_agree": model.paths_agree,
        "initial_ideal": _render_all(model.initial_gb, xi_names(A.n)),
    }
    ok = dim != EMPTY and dim <= A.n and model.paths_agree
    return Verdict("holonomicity", _status(ok), details)


def homogenization_reduction(A: IntegerMatrix) -> Verdict:
    """Compare ``in(I_A)`` with ``<I_Ahat, u0>`` after ``u0 -> 0``, plus the x-extended rings.

    The extended comparison is made at the level of Krull dimension: the
    ring on the ``Ahat`` side also carries the top Euler form ``sum_j x_j u_j``,
    so the two ideals differ, but its dimension bounds the other from below.
    """
    validate(A)
    n = A.n
    graded = is_standard_graded(A)
    T = cached_toric_ideal(A)
    left = _direct_initial_gb(T)
    right = homogenized_initial_ideal(A).groebner_basis(GREVLEX)
    equal = left == right

    # x-extended: left in Q[x0..xn, u1..un] (x0 free), right in Q[x0..xn, u0..un]
    left_dim = bilinear_dimension(left, euler_symbol_forms(A).forms, n) + 1

    Ahat = homogenize(A).matrix
    That = cached_toric_ideal(Ahat)
    m = n + 1
    base = list(That.gb) + [Polynomial.variable(0, m)]  # u0
    right_dim = bilinear_dimension(base, euler_symbol_forms(Ahat).forms, m)

    details = {
        "standard_graded": graded,
        "left": _render_all(left, xi_names(n)),
        "right": _render_all(right, xi_names(n)),
        "gb_equal": equal,
        "extended_left_dim": left_dim,
        "extended_right_dim": right_dim,
        "expected_dim": n + 1,
    }
    ok = equal and left_dim == n + 1 and right_dim <= left_dim
    reason = "trivially consistent: A is standard graded" if graded else ""
    return Verdict("homogenization", _status(ok), details, reason)


# --------------------------------------------------------------------------
# generic fibres over x-space


def fiber_ideal(model: CharacteristicModel, p: Sequence) -> Ideal:
    """Specialise ``x := p``: ``<in(I_A), A diag(p) u>`` in ``Q[u1..un]``."""
    n = model.n
    if len(p) != n:
        raise ValueError(f"sample point needs {n} coordinates")
    if any(Fraction(v) == 0 for v in p):
        raise ValueError("fibre sample point must have all coordinates nonzero")
    assignment = {j: Fraction(v) for j, v in enumerate(p)}
    keep = range(n, 2 * n)
    gens = [evaluate_partial(g, assignment).restrict(keep) for g in model.ideal.generators]
    return Ideal(gens, nvars=n)


def random_point(n: int, rng: random.Random) -> tuple[Fraction, ...]:
    return tuple(random_rational(rng, signed=True) for _ in range(n))


def fiber_degree(A: IntegerMatrix, p: Sequence | None = None, seed: int = 0):
    """Vector-space dimension of the fibre of ``R`` over ``x = p``.

    This counts standard monomials of the specialised ideal.  It is an
    invariant of the commutative model, not the holonomic rank.
    """
    model = characteristic_ideal(A)
    if p is None:
        p = random_point(A.n, random.Random(seed))
    return quotient_vector_space_dimension(fiber_ideal(model, p))


def family_check(A: IntegerMatrix, samples: int = 3, seed: int = 0) -> Verdict:
    """Finite fibres at random points, all agreeing, and no parameter variables anywhere."""
    if samples < 1:
        raise ValueError("need at least one sample")
    model = characteristic_ideal(A)
    n = A.n
    structural = model.ideal.nvars == 2 * n and all(
        g.nvars == 2 * n for g in model.ideal.generators
    )
    rng = random.Random(seed)
    log = []
    degrees = []
    for _ in range(samples):
        for attempt in range(FIBER_RESAMPLES + 1):
            p = random_point(n, rng)
            deg = quotient_vector_space_dimension(fiber_ideal(model, p))
            log.append({"point": [str(v) for v in p], "degree": deg})
            if deg != INFINITE:
                break
        degrees.append(deg)
    finite = all(d != INFINITE for d in degrees)
    agree = finite and len(set(degrees)) == 1
    details = {
        "parameter_free_generators": structural,
        "parameter_variables": 0,
        "degrees": degrees,
        "generic_degree": degrees[0] if agree else None,
        "samples": log,
        "note": "fibre degree of the commutative model; not claimed to be the holonomic rank",
    }
    ok = structural and agree
    reason = "" if finite else "infinite fibre after resampling: engine bug or non-generic samples, try another seed"
    return Verdict("family", _status(ok), details, reason)


# --------------------------------------------------------------------------
# per-face audit and transversality sampling


def face_dimension_audit(A: IntegerMatrix) -> Verdict:
    """For every nonempty face, ``dim Q[x_tau, u_tau]/(I_{A_tau} + A_tau x u) == |tau|``."""
    check_nonzero_columns(A)
    rows = []
    ok = True
    for face in enumerate_faces(A):
        size = len(face.columns)
        entry = {"face": face.label(), "size": size, "orbit_dim": orbit_dimension(A, face)}
        if size == 0:
            entry.update(dim=0, status=PASS)
        else:
            sub = column_submatrix(A, face.columns)
            dim = bilinear_dimension(cached_toric_ideal(sub).gb, euler_symbol_forms(sub).forms, size)
            entry.update(dim=dim, status=_status(dim == size))
            ok = ok and dim == size
        rows.append(entry)
    return Verdict("face_audit", _status(ok), {"faces": rows})


def transversality_sampling(A: IntegerMatrix, samples: int = 3, seed: int = 0) -> Verdict:
    """Certify sampled points on every face; make sure boundary points are refused."""
    check_nonzero_columns(A)
    rng = random.Random(seed)
    rows = []
    ok = True
    for face in enumerate_faces(A):
        passed = 0
        for _ in range(samples):
            inst = sample_face_instance(A, face, rng)
            if certify_transversality(inst).verified:
                passed += 1
        refused = None
        if len(face.columns) < A.n:
            q = sample_orbit_point(A, face, [random_rational(rng) for _ in range(A.d)])
            try:
                certify_transversality(TransversalityInstance(A.rows, [0] * A.n, q))
                refused = False
            except OrbitBoundaryError:
                refused = True
        good = passed == samples and refused is not False
        ok = ok and good
        rows.append({"face": face.label(), "certified": passed, "samples": samples, "boundary_refused": refused})
    return Verdict("transversality", _status(ok), {"faces": rows})


def toric_summary(A: IntegerMatrix) -> Verdict:
    T = cached_toric_ideal(A)
    audit = a_homogeneity_audit(T)
    dim = krull_dimension(T.ideal)
    details = {
        "kernel_basis": [list(v) for v in T.kernel_basis],
        "gb": _render_all(T.gb, xi_names(A.n)),
        "a_homogeneous": audit.passed,
        "dim_S_A": dim,
        "rank": rank(A),
        "standard_graded": is_standard_graded(A),
    }
    if audit.counterexample:
        details["counterexample"] = audit.counterexample
    return Verdict("toric", _status(audit.passed and dim == rank(A)), details)


# --------------------------------------------------------------------------
# full report


@dataclass
class VerificationReport:
    matrix: IntegerMatrix
    verdicts: list[Verdict]
    label: str | None = None
    beta: tuple | None = None
    seed: int = 0
    samples: int = 3
    timings: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(v.status != FAIL for v in self.verdicts)

    def to_dict(self, timings: bool = True) -> dict:
        out = {
            "input": {
                "matrix": self.matrix.to_lists(),
                "label": self.label,
                "beta": None if self.beta is None else [str(b) for b in self.beta],
            },
            "seed": self.seed,
            "samples": self.samples,
            "verdicts": [v.to_dict() for v in self.verdicts],
            "status": PASS if self.passed else FAIL,
        }
        if timings:
            out["timings"] = dict(self.timings)
        return out


STAGES = {
    "toric": lambda A, s, seed: toric_summary(A),
    "parameter": lambda A, s, seed: verify_parameter_theorem(A),
    "holonomic": lambda A, s, seed: verify_holonomicity(A),
    "faces": lambda A, s, seed: face_dimension_audit(A),
    "homogenization": lambda A, s, seed: homogenization_reduction(A),
    "family": lambda A, s, seed: family_check(A, s, seed),
    "transversality": lambda A, s, seed: transversality_sampling(A, s, seed),
}


def verify(
    A: IntegerMatrix,
    stages: Sequence[str] | None = None,
    *,
    beta=None,
    label: str | None = None,
    seed: int = 0,
    samples: int = 3,
) -> VerificationReport:
    """Run the requested stages (all by default) and collect their verdicts."""
    validate(A)
    if beta is not None:
        beta = tuple(Fraction(b) for b in beta)
        if len(beta) != A.d:
            raise ValueError(f"beta needs {A.d} entries, got {len(beta)}")
    report = VerificationReport(A, [], label, beta, seed, samples)
    for name in stages or STAGES:
        start = time.perf_counter()
        report.verdicts.append(STAGES[name](A, samples, seed))
        report.timings[name] = round(time.perf_counter() - start, 6)
    return report


def characteristic_summary(A: IntegerMatrix, with_gb: bool = False) -> dict:
    model = characteristic_ideal(A)
    names = xu_names(A.n)
    out = {
        "generators": _render_all(model.ideal.generators, names),
        "dimension": model.dimension,
        "path": model.graded_path,
        "paths_agree": model.paths_agree,
    }
    if with_gb:
        out["gb"] = _render_all(model.ideal.groebner_basis(GREVLEX), names)
    return out
