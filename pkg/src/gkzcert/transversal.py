"""Pointwise transversality certificates for ``Var(L x xi)`` against ``k^n x X``.

At a point ``(p, q)`` of ``Var(L x xi)`` with every ``q_i`` nonzero, each
direction ``eta`` in xi-space lifts to a tangent vector ``(y, eta)`` of
``Var(L x xi)`` by ``y_i = -p_i eta_i / q_i``.  Doing this for the standard
basis shows the tangent space maps onto xi-space, and together with
``k^n x {0}`` (tangent to ``k^n x X``) the two tangent spaces fill ``k^{2n}``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .cone import Face, one_tau
from .errors import InvalidInstanceError, OrbitBoundaryError
from .intlin import IntegerMatrix, column_submatrix, rational_nullspace

ASSUMPTIONS = (
    "k^n x X is smooth at the sampled point: q lies on a torus orbit, and orbits are smooth",
)


def scale_columns(L: Sequence[Sequence], v: Sequence) -> list[list[Fraction]]:
    """Multiply column ``j`` of ``L`` by ``v[j]``."""
    out = []
    for row in L:
        if len(row) != len(v):
            raise ValueError(f"matrix has {len(row)} columns but vector has length {len(v)}")
        out.append([Fraction(a) * Fraction(b) for a, b in zip(row, v)])
    return out


def _matvec(M, v) -> list[Fraction]:
    return [sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in M]


@dataclass(frozen=True)
class TransversalityInstance:
    L: tuple
    p: tuple
    q: tuple
    face: Face | None = None

    def __init__(self, L, p, q, face: Face | None = None):
        L = tuple(tuple(Fraction(v) for v in row) for row in L)
        p = tuple(Fraction(v) for v in p)
        q = tuple(Fraction(v) for v in q)
        if len(p) != len(q) or any(len(row) != len(p) for row in L):
            raise ValueError("L, p and q have inconsistent sizes")
        object.__setattr__(self, "L", L)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "face", face)
        residual = _matvec(L, [a * b for a, b in zip(p, q)])
        if any(residual):
            raise InvalidInstanceError(f"(p, q) is not on Var(L x xi): residual {residual}")

    @property
    def n(self) -> int:
        return len(self.p)


def _require_torus_point(q) -> None:
    zeros = [i + 1 for i, v in enumerate(q) if v == 0]
    if zeros:
        raise OrbitBoundaryError(f"orbit-boundary point: xi-coordinates {zeros} vanish")


def kernel_lift(inst: TransversalityInstance, eta: Sequence) -> tuple[Fraction, ...]:
    """The x-part ``y`` making ``(y, eta)`` a kernel vector of ``[L(q) L(p)]``."""
    _require_torus_point(inst.q)
    eta = [Fraction(e) for e in eta]
    if len(eta) != inst.n:
        raise ValueError("eta has the wrong length")
    y = tuple(-pi * ei / qi for pi, ei, qi in zip(inst.p, eta, inst.q))
    lhs = [a + b for a, b in zip(_matvec(scale_columns(inst.L, inst.q), y), _matvec(scale_columns(inst.L, inst.p), eta))]
    if any(lhs):
        raise ArithmeticError("lift failed the kernel check")
    return y


@dataclass
class TransversalityCertificate:
    n: int
    lifts: list = field(default_factory=list)  # (y, eta) pairs
    verified: bool = False
    assumptions: tuple = ASSUMPTIONS

    @property
    def conclusion(self) -> str:
        if not self.verified:
            return "not certified"
        return (
            f"xi-projection of ker[L(q) L(p)] is all of k^{self.n}; with k^{self.n} x 0 "
            f"the tangent spaces span k^{2 * self.n}"
        )

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "verified": self.verified,
            "lifts": [[[str(v) for v in y], [str(v) for v in eta]] for y, eta in self.lifts],
            "assumptions": list(self.assumptions),
            "conclusion": self.conclusion,
        }


def certify_transversality(inst: TransversalityInstance) -> TransversalityCertificate:
    """Lift every standard basis direction and check each lift exactly."""
    _require_torus_point(inst.q)
    n = inst.n
    Lq = scale_columns(inst.L, inst.q)
    Lp = scale_columns(inst.L, inst.p)
    cert = TransversalityCertificate(n)
    for i in range(n):
        eta = tuple(Fraction(int(j == i)) for j in range(n))
        y = kernel_lift(inst, eta)
        if any(a + b for a, b in zip(_matvec(Lq, y), _matvec(Lp, eta))):
            return cert
        cert.lifts.append((y, eta))
    # eta-parts are the standard basis, so they span xi-space
    cert.verified = len(cert.lifts) == n
    return cert


def sample_orbit_point(A: IntegerMatrix, face: Face, t: Sequence) -> tuple[Fraction, ...]:
    """``t . 1^tau``: coordinate ``i`` is ``prod_k t_k^{a_ki}`` on the face and 0 off it."""
    t = [Fraction(v) for v in t]
    if len(t) != A.d:
        raise ValueError("torus point must have one coordinate per row of A")
    if any(v == 0 for v in t):
        raise ValueError("torus coordinates must be nonzero")
    ind = one_tau(face, A.n)
    q = []
    for i, col in enumerate(A.columns):
        if not ind[i]:
            q.append(Fraction(0))
            continue
        v = Fraction(1)
        for tk, a in zip(t, col):
            v *= tk**a
        q.append(v)
    return tuple(q)


def random_rational(rng: random.Random, signed: bool = False) -> Fraction:
    v = Fraction(rng.randint(1, 10), rng.randint(1, 10))
    return -v if signed and rng.random() < 0.5 else v


def sample_variety_point(L, q, rng: random.Random) -> tuple[Fraction, ...]:
    """Random ``p`` with ``L diag(q) p = 0``: a random combination of a kernel basis."""
    n = len(q)
    M = scale_columns(L, q) if L else []
    basis = rational_nullspace(M, n) if M else [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
    p = [Fraction(0)] * n
    for b in basis:
        c = random_rational(rng, signed=True)
        p = [x + c * y for x, y in zip(p, b)]
    return tuple(p)


def sample_face_instance(A: IntegerMatrix, face: Face, rng: random.Random) -> TransversalityInstance:
    """An instance on ``k^tau x k^tau`` with ``L = A_tau`` and ``q`` on the orbit of the face."""
    t = [random_rational(rng) for _ in range(A.d)]
    q_full = sample_orbit_point(A, face, t)
    q = [q_full[j] for j in face.columns]
    L = column_submatrix(A, face.columns).rows
    p = sample_variety_point(L, q, rng)
    return TransversalityInstance(L, p, q, face)
