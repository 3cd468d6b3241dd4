from fractions import Fraction

import oracles
import pytest

from gkzcert.errors import RankDeficientError, ZeroColumnError
from gkzcert.groebner import INFINITE, krull_dimension
from gkzcert.hypergeo import (
    PASS,
    STAGES,
    bilinear_dimension,
    characteristic_ideal,
    euler_symbol_forms,
    face_dimension_audit,
    family_check,
    fiber_degree,
    fiber_ideal,
    homogenization_reduction,
    parameter_theorem_ideal,
    verify,
    verify_holonomicity,
    verify_parameter_theorem,
)
from gkzcert.intlin import IntegerMatrix
from gkzcert.poly import GREVLEX, LEX, parse, xu_names
from gkzcert.toric import toric_ideal

I2 = IntegerMatrix([[1, 0], [0, 1]])
ONE_TWO = IntegerMatrix([[1, 2]])
TWO_THREE = IntegerMatrix([[2, 3]])
CONIC = IntegerMatrix([[1, 1, 1], [0, 1, 2]])
CUBIC = IntegerMatrix([[1, 1, 1, 1], [0, 1, 2, 3]])


def polys(texts, n):
    return [parse(t, xu_names(n)) for t in texts]


@pytest.mark.parametrize(
    "A, expected",
    [
        (CONIC, ["x1*u1 + x2*u2 + x3*u3", "x2*u2 + 2*x3*u3"]),
        (I2, ["x1*u1", "x2*u2"]),
        (ONE_TWO, ["x1*u1 + 2*x2*u2"]),
    ],
)
def test_euler_symbol_forms(A, expected):
    E = euler_symbol_forms(A)
    assert list(E.forms) == polys(expected, A.n)
    assert oracles.sympy_rank(E.coefficient_matrix()) == A.d


@pytest.mark.parametrize("A, before, after", [(CONIC, 5, 3), (I2, 4, 2), (CUBIC, 6, 4)])
def test_parameter_theorem_examples(A, before, after):
    v = verify_parameter_theorem(A)
    assert v.passed
    assert (v.details["dim_before"], v.details["dim_after"], v.details["drop"]) == (before, after, before - after)
    assert v.details["system_of_parameters"] is True
    assert v.details["method"] == "direct"
    stratified = verify_parameter_theorem(A, method="stratified")
    assert stratified.details == {**v.details, "method": "stratified"}


def test_parameter_theorem_ideal_layout():
    I = parameter_theorem_ideal(CONIC)
    assert I.nvars == 6
    assert parse("u2^2 - u1*u3", xu_names(3)).monic(GREVLEX) in I.generators


def test_unknown_dimension_method():
    with pytest.raises(ValueError, match="unknown method"):
        verify_parameter_theorem(CONIC, method="guess")


def test_characteristic_ideal_conic():
    model = characteristic_ideal(CONIC)
    expected = polys(["u2^2 - u1*u3", "x1*u1 + x2*u2 + x3*u3", "x2*u2 + 2*x3*u3"], 3)
    assert set(model.ideal.generators) == {g.monic(GREVLEX) if i == 0 else g for i, g in enumerate(expected)}
    assert model.dimension == 3
    assert model.graded_path == "direct"


def test_characteristic_ideal_one_two():
    model = characteristic_ideal(ONE_TWO)
    assert set(model.ideal.generators) == set(polys(["u1^2", "x1*u1 + 2*x2*u2"], 2))
    assert model.dimension == 2 == model.stratified_dimension()
    assert model.graded_path == "homogenized" and model.paths_agree


def test_characteristic_ideal_identity():
    model = characteristic_ideal(I2)
    assert set(model.ideal.generators) == set(polys(["x1*u1", "x2*u2"], 2))
    assert model.dimension == 2


def test_generator_origins_are_tagged():
    assert characteristic_ideal(CONIC).generator_origins() == ["initial", "euler", "euler"]


@pytest.mark.parametrize("A, path", [(CONIC, "direct"), (CUBIC, "direct"), (ONE_TWO, "homogenized")])
def test_holonomicity_examples(A, path):
    v = verify_holonomicity(A)
    assert v.passed
    assert v.details["char_dim"] == A.n
    assert v.details["path"] == path


def test_validation_errors():
    with pytest.raises(RankDeficientError, match="full rank"):
        characteristic_ideal(IntegerMatrix([[1, 2], [2, 4]]))
    with pytest.raises(ZeroColumnError):
        verify(IntegerMatrix([[1, 0], [1, 0]]))


def test_homogenization_examples():
    v = homogenization_reduction(ONE_TWO)
    assert v.passed and v.details["left"] == ["u1^2"] == v.details["right"]
    assert v.details["extended_left_dim"] == 3
    w = homogenization_reduction(TWO_THREE)
    assert w.passed and w.details["left"] == ["u1^3"]
    g = homogenization_reduction(CONIC)
    assert g.passed and "trivially consistent" in g.reason


def test_homogenized_toric_ideal_of_one_two_is_conic():
    from gkzcert.toric import homogenize

    assert toric_ideal(homogenize(ONE_TWO).matrix).gb == toric_ideal(CONIC).gb


def test_fiber_degree_examples():
    assert fiber_degree(I2, (1, 1)) == 1
    assert fiber_degree(ONE_TWO, (1, 1)) == 2
    degs = {fiber_degree(CONIC, seed=s) for s in range(3)}
    assert degs == {2}


def test_fiber_ideal_rejects_zero_coordinates():
    with pytest.raises(ValueError, match="nonzero"):
        fiber_ideal(characteristic_ideal(CONIC), (1, 0, 1))


@pytest.mark.parametrize("A, degree", [(CONIC, 2), (I2, 1), (CUBIC, 3)])
def test_family_check_examples(A, degree):
    v = family_check(A, samples=3, seed=0)
    assert v.passed
    assert v.details["generic_degree"] == degree
    assert len(v.details["samples"]) >= 3


def test_family_check_needs_samples():
    with pytest.raises(ValueError):
        family_check(CONIC, samples=0)


def test_face_audit_examples():
    rows = {r["face"]: r for r in face_dimension_audit(CONIC).details["faces"]}
    assert rows["{1}"]["dim"] == 1
    assert rows["{1,2,3}"]["dim"] == 3
    cubic = {r["face"]: r for r in face_dimension_audit(CUBIC).details["faces"]}
    assert cubic["{4}"]["dim"] == 1


def test_stratified_dimension_matches_direct_groebner(full_battery):
    for name, A in full_battery:
        T = toric_ideal(A)
        forms = euler_symbol_forms(A).forms
        assert bilinear_dimension(T.gb, forms, A.n) == bilinear_dimension(T.gb, forms, A.n, "stratified"), name
        model = characteristic_ideal(A)
        assert model.dimension == model.stratified_dimension() == A.n, name


def test_characteristic_dimension_is_order_independent():
    for A in (CONIC, ONE_TWO, IntegerMatrix([[1, 2, 1]])):
        assert krull_dimension(characteristic_ideal(A).ideal, LEX) == A.n


def test_characteristic_model_is_beta_independent():
    a = verify(CONIC, ["holonomic"], beta=[1, 2])
    b = verify(CONIC, ["holonomic"], beta=[Fraction(-1, 3), 0])
    assert a.verdicts[0].to_dict() == b.verdicts[0].to_dict()
    assert a.to_dict()["input"]["beta"] == ["1", "2"]
    with pytest.raises(ValueError, match="beta"):
        verify(CONIC, beta=[1])


def test_full_report_is_deterministic():
    first = verify(CUBIC, seed=4).to_dict(timings=False)
    second = verify(CUBIC, seed=4).to_dict(timings=False)
    assert first == second
    assert [v["check"] for v in first["verdicts"]] == [
        "toric",
        "parameter_theorem",
        "holonomicity",
        "face_audit",
        "homogenization",
        "family",
        "transversality",
    ]
    assert first["status"] == PASS
    assert set(verify(CUBIC).timings) == set(STAGES)


def test_infinite_fibre_would_fail():
    # the forms alone (no initial ideal) leave a positive-dimensional fibre
    from gkzcert.groebner import Ideal, quotient_vector_space_dimension
    from gkzcert.poly import Polynomial, evaluate_partial

    n = 3
    forms = euler_symbol_forms(CONIC).forms
    gens = [evaluate_partial(f, {0: 1, 1: 2, 2: 3}).restrict(range(n, 2 * n)) for f in forms]
    assert quotient_vector_space_dimension(Ideal(gens, nvars=n)) == INFINITE
    assert isinstance(gens[0], Polynomial)
