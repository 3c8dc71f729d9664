import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from spinroot.scalars import (
    DEFAULT_EQ_TOL,
    INV_SQRT2,
    QT_ONE,
    QT_ZERO,
    QuadTower,
    SIGMA,
    SQRT2,
    SQRT5,
    SQRT10,
    TAU,
    eq_scalar,
    galois_conjugate,
    scalar_str,
    to_float,
)

small_fractions = st.fractions(
    min_value=-9, max_value=9, max_denominator=9
)


def qt_elements():
    return st.builds(QuadTower, small_fractions, small_fractions,
                     small_fractions, small_fractions)


# -- fixed arithmetic fixtures -------------------------------------------------


def test_golden_ratio_quadratic():
    assert TAU * TAU == TAU + 1
    assert SIGMA * SIGMA == SIGMA + 1


def test_sqrt2_squares_to_two():
    assert SQRT2 * SQRT2 == 2


def test_inverse_of_tau():
    assert TAU.inverse() == TAU - 1
    assert QT_ONE / TAU == TAU - 1


def test_tau_sigma_relations():
    assert TAU * SIGMA == -1
    assert TAU + SIGMA == 1


def test_sqrt_products():
    assert SQRT2 * SQRT5 == SQRT10
    assert SQRT10 * SQRT10 == 10
    assert INV_SQRT2 * SQRT2 == 1


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        QT_ZERO.inverse()
    with pytest.raises(ZeroDivisionError):
        QT_ONE / QT_ZERO


def test_mixed_backend_is_an_error():
    with pytest.raises(TypeError):
        TAU + 0.5
    with pytest.raises(TypeError):
        0.5 * TAU
    with pytest.raises(TypeError):
        TAU / 2.0


# -- galois conjugation ---------------------------------------------------------


def test_galois_sends_tau_to_sigma():
    assert galois_conjugate(TAU) == SIGMA


def test_galois_fixes_rationals():
    x = QuadTower(Fraction(3, 7))
    assert galois_conjugate(x) == x


def test_galois_respects_squaring():
    assert galois_conjugate(TAU * TAU) == SIGMA * SIGMA == SIGMA + 1


def test_galois_fixes_sqrt2():
    assert galois_conjugate(SQRT2) == SQRT2
    assert galois_conjugate(SQRT10) == -SQRT10


@given(qt_elements(), qt_elements())
def test_galois_is_ring_homomorphism(x, y):
    assert galois_conjugate(x + y) == galois_conjugate(x) + galois_conjugate(y)
    assert galois_conjugate(x * y) == galois_conjugate(x) * galois_conjugate(y)


@given(qt_elements())
def test_galois_is_involution(x):
    assert galois_conjugate(galois_conjugate(x)) == x


# -- field axioms ------------------------------------------------------------------


@given(qt_elements(), qt_elements(), qt_elements())
def test_field_associativity_distributivity(x, y, z):
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert (x + y) + z == x + (y + z)


@given(qt_elements())
def test_multiplicative_inverse(x):
    if not x.is_zero():
        assert x * x.inverse() == QT_ONE


@given(qt_elements(), qt_elements())
def test_commutativity(x, y):
    assert x * y == y * x
    assert x + y == y + x


def test_representation_is_canonical():
    a = QuadTower(Fraction(1, 2), 0, Fraction(1, 2), 0)
    b = (QuadTower(1) + SQRT5) * QuadTower(Fraction(1, 2))
    assert a == b == TAU
    assert hash(a) == hash(b)


# -- float embedding ------------------------------------------------------------------


def test_to_float_constants():
    import mpmath

    mpmath.mp.dps = 40
    assert abs(to_float(TAU) - float((1 + mpmath.sqrt(5)) / 2)) < 1e-12
    assert abs(to_float(SQRT10) - float(mpmath.sqrt(10))) < 1e-12
    assert to_float(QT_ZERO) == 0.0


@given(qt_elements(), qt_elements())
def test_to_float_respects_products(x, y):
    lhs = to_float(x * y)
    rhs = to_float(x) * to_float(y)
    assert abs(lhs - rhs) <= 1e-10 * max(1.0, abs(lhs), abs(rhs))


def test_eq_scalar_backends():
    assert eq_scalar(TAU, TAU)
    assert eq_scalar(0.5, 0.5 + 1e-12)
    assert not eq_scalar(0.5, 0.5 + 1e-6)
    with pytest.raises(TypeError):
        eq_scalar(TAU, 1.618)
    assert DEFAULT_EQ_TOL == 1e-9


def test_eq_tol_is_run_configurable():
    from spinroot.scalars import eq_tol, set_eq_tol
    from spinroot.clifford import Multivector, make_versor

    assert eq_tol() == DEFAULT_EQ_TOL
    slightly_off = Multivector.from_vector([1.0 + 5e-7, 0.0, 0.0])
    with pytest.raises(ValueError):
        make_versor(slightly_off)
    set_eq_tol(1e-5)
    try:
        assert make_versor(slightly_off).parity == "odd"
    finally:
        set_eq_tol(DEFAULT_EQ_TOL)
    with pytest.raises(ValueError):
        set_eq_tol(0.0)


def test_serialization_strings():
    assert scalar_str(TAU) == "1/2+1/2*r5"
    assert scalar_str(QT_ZERO) == "0"
    assert scalar_str(QuadTower(0, Fraction(-1, 2))) == "-1/2*r2"
    assert scalar_str(0.5) == "0.5"
    assert len(scalar_str(math.pi)) <= 22
