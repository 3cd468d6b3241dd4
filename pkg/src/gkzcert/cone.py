"""Faces of the real cone spanned by the columns of an integer matrix.

Each face is identified with the set of columns lying on it and carries a
supporting functional ``c`` with ``c . a_i = 0`` on the face and ``> 0`` off it
(``c = 0`` for the whole cone).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .intlin import IntegerMatrix, column_submatrix, rank, rational_nullspace
from .toric import check_nonzero_columns


@dataclass(frozen=True)
class Face:
    columns: tuple[int, ...]  # 0-based column indices, increasing
    normal: tuple[Fraction, ...]
    dim: int

    def __contains__(self, j: int) -> bool:
        return j in self.columns

    def label(self) -> str:
        return "{" + ",".join(str(j + 1) for j in self.columns) + "}"


def _independent_rows(A: IntegerMatrix) -> list[int]:
    chosen: list[int] = []
    for i in range(A.d):
        if rank([A.rows[k] for k in chosen + [i]]) > len(chosen):
            chosen.append(i)
    return chosen


def facet_normals(A: IntegerMatrix) -> tuple[list[int], list[tuple[Fraction, ...]]]:
    """Supporting functionals of the facets, in coordinates of an independent row subset.

    Returns the chosen row indices and one primitive-direction normal per facet.
    """
    rows = _independent_rows(A)
    r = len(rows)
    B = [A.rows[i] for i in rows]
    cols = [tuple(B[k][j] for k in range(r)) for j in range(A.n)]
    seen: dict[frozenset, tuple[Fraction, ...]] = {}
    for S in combinations(range(A.n), r - 1):
        sub = [cols[j] for j in S]
        if sub and rank(sub) != r - 1:
            continue
        null = rational_nullspace(sub, r)
        if len(null) != 1:
            continue
        g = null[0]
        values = [sum(a * b for a, b in zip(g, c)) for c in cols]
        if all(v >= 0 for v in values):
            pass
        elif all(v <= 0 for v in values):
            g = tuple(-x for x in g)
            values = [-v for v in values]
        else:
            continue
        zero = frozenset(j for j, v in enumerate(values) if v == 0)
        seen.setdefault(zero, g)
    return rows, list(seen.values())


def _lift(rows: list[int], g, d: int) -> tuple[Fraction, ...]:
    c = [Fraction(0)] * d
    for i, v in zip(rows, g):
        c[i] = Fraction(v)
    return tuple(c)


def enumerate_faces(A: IntegerMatrix) -> list[Face]:
    """All faces of ``R>=0 A``, smallest first.

    Faces are intersections of facets; the whole cone is the empty
    intersection.  Non-pointed cones need no special casing: the smallest
    face found is the lineality face.
    """
    check_nonzero_columns(A)
    rows, normals = facet_normals(A)
    zero_sets = []
    for g in normals:
        c = _lift(rows, g, A.d)
        zs = frozenset(j for j, col in enumerate(A.columns) if sum(a * b for a, b in zip(c, col)) == 0)
        zero_sets.append((zs, c))

    full = frozenset(range(A.n))
    faces: dict[frozenset, tuple[Fraction, ...]] = {full: (Fraction(0),) * A.d}
    frontier = [full]
    while frontier:
        nxt = []
        for F in frontier:
            for zs, c in zero_sets:
                G = F & zs
                if G not in faces:
                    faces[G] = tuple(a + b for a, b in zip(faces[F], c))
                    nxt.append(G)
        frontier = nxt

    out = [
        Face(tuple(sorted(F)), normal, rank(column_submatrix(A, F)) if F else 0)
        for F, normal in faces.items()
    ]
    out.sort(key=lambda f: (len(f.columns), f.columns))
    return out


def certificate_holds(A: IntegerMatrix, face: Face) -> bool:
    """``c . a_i == 0`` exactly on the face and ``> 0`` elsewhere (or ``c == 0`` for the whole cone)."""
    if not any(face.normal):
        return len(face.columns) == A.n
    for j, col in enumerate(A.columns):
        v = sum(a * b for a, b in zip(face.normal, col))
        if (j in face.columns) != (v == 0) or v < 0:
            return False
    return True


def one_tau(face: Face, n: int) -> tuple[int, ...]:
    """Indicator vector of the face's columns."""
    return tuple(int(j in face.columns) for j in range(n))


def orbit_dimension(A: IntegerMatrix, face: Face) -> int:
    return rank(column_submatrix(A, face.columns)) if face.columns else 0
