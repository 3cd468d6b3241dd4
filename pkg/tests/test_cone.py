from fractions import Fraction

import oracles
import pytest

from gkzcert.cone import certificate_holds, enumerate_faces, facet_normals, one_tau, orbit_dimension
from gkzcert.errors import ZeroColumnError
from gkzcert.intlin import IntegerMatrix, column_submatrix, rank

CONIC = IntegerMatrix([[1, 1, 1], [0, 1, 2]])
CUBIC = IntegerMatrix([[1, 1, 1, 1], [0, 1, 2, 3]])


def column_sets(A):
    return [f.columns for f in enumerate_faces(A)]


def face_with(A, cols):
    return next(f for f in enumerate_faces(A) if f.columns == cols)


@pytest.mark.parametrize(
    "A, expected",
    [
        (IntegerMatrix([[1, 0], [0, 1]]), [(), (0,), (1,), (0, 1)]),
        (CONIC, [(), (0,), (2,), (0, 1, 2)]),
        (CUBIC, [(), (0,), (3,), (0, 1, 2, 3)]),
    ],
)
def test_face_examples(A, expected):
    assert column_sets(A) == expected


def test_conic_facet_normals_up_to_scale():
    rows, normals = facet_normals(CONIC)
    assert rows == [0, 1]
    scaled = set()
    for c in normals:
        k = next(x for x in c if x)
        scaled.add(tuple(x / abs(k) for x in c))
    assert scaled == {(Fraction(0), Fraction(1)), (Fraction(1), Fraction(-1, 2))}


def test_zero_column_rejected():
    with pytest.raises(ZeroColumnError):
        enumerate_faces(IntegerMatrix([[1, 0]]))


def test_one_tau_and_orbit_dimension():
    full = face_with(CONIC, (0, 1, 2))
    assert one_tau(full, 3) == (1, 1, 1)
    assert one_tau(face_with(CONIC, ()), 3) == (0, 0, 0)
    assert one_tau(face_with(CONIC, (0,)), 3) == (1, 0, 0)
    assert orbit_dimension(CONIC, full) == 2
    assert orbit_dimension(CONIC, face_with(CONIC, ())) == 0
    assert orbit_dimension(CONIC, face_with(CONIC, (0,))) == 1


def test_labels_are_one_based():
    assert face_with(CONIC, (0, 1, 2)).label() == "{1,2,3}"
    assert face_with(CONIC, ()).label() == "{}"


def test_duplicate_columns_share_faces():
    A = IntegerMatrix([[1, 1, 0], [0, 0, 1]])
    assert column_sets(A) == [(), (2,), (0, 1), (0, 1, 2)]


def test_non_pointed_cone():
    # a line through the origin plus a ray: the lineality face is the smallest face
    A = IntegerMatrix([[1, -1, 0], [0, 0, 1]])
    assert column_sets(A) == [(0, 1), (0, 1, 2)]
    assert oracles.faces_by_lp(A.rows) == {frozenset(c) for c in column_sets(A)}


def test_faces_match_oracles(full_battery):
    for name, A in full_battery:
        got = {frozenset(c) for c in column_sets(A)}
        assert got == oracles.faces_by_lp(A.rows), name
        if rank(A) == A.d:
            assert got == oracles.faces_by_candidate_normals(A.rows), name


def test_face_invariants(full_battery):
    for _, A in full_battery:
        faces = enumerate_faces(A)
        sets = {frozenset(f.columns) for f in faces}
        assert len(sets) == len(faces)
        for f in faces:
            assert certificate_holds(A, f)
            assert f.dim == rank(column_submatrix(A, f.columns))
            for g in faces:
                assert frozenset(f.columns) & frozenset(g.columns) in sets
                if set(f.columns) <= set(g.columns):
                    assert f.dim <= g.dim
