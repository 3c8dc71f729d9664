import math

import pytest

from spinroot.clifford import Multivector
from spinroot.rootsys import (
    ClosureCapError,
    SimpleRootSet,
    UnknownSystemError,
    cartan_matrix,
    catalog,
    display_name,
    dot,
    generate_roots,
    parse_name,
    root_system,
    rotation_orders,
    validate_root_system,
)
from spinroot.scalars import INV_SQRT2, QT_HALF, QT_ZERO, QuadTower, TAU

EXPECTED_COUNTS = {
    ("A1^3", None): 6, ("A3", None): 12, ("B3", None): 18, ("H3", None): 30,
    ("A1^4", None): 8, ("A4", None): 20, ("B4", None): 32, ("D4", None): 24,
    ("F4", None): 48, ("H4", None): 120,
}


def test_name_parsing():
    assert parse_name("H3") == ("H3", None)
    assert parse_name("I2(7)") == ("I2", 7)
    assert parse_name("A1xI2(3)") == ("A1xI2", 3)
    assert parse_name("I2(5)xI2(5)") == ("I2xI2", 5)
    assert parse_name("I2xI2", 4) == ("I2xI2", 4)
    assert parse_name("A1^3") == ("A1^3", None)
    with pytest.raises(UnknownSystemError):
        parse_name("G2")
    with pytest.raises(UnknownSystemError):
        parse_name("I2(3)xI2(4)")
    with pytest.raises(UnknownSystemError):
        catalog("I2")  # family parameter missing
    assert display_name("I2xI2", 6) == "I2(6)xI2(6)"


def test_catalog_fixtures():
    h3 = catalog("H3")
    want = Multivector.from_vector(
        [-(TAU * QT_HALF), -QT_HALF, -((TAU - 1) * QT_HALF)]
    )
    assert h3.roots[1] == want

    i2 = catalog("I2", 5)
    got = i2.roots[1].vector_coords()
    assert abs(got[0] + math.cos(math.pi / 5)) < 1e-15
    assert abs(got[1] - math.sin(math.pi / 5)) < 1e-15

    d4 = catalog("D4")
    want = Multivector.from_vector([-QT_HALF, -QT_HALF, -QT_HALF, QT_HALF])
    assert d4.roots[3] == want


def test_all_catalog_roots_unit():
    names = list(EXPECTED_COUNTS) + [("I2", 7), ("A1xI2", 3), ("I2xI2", 4)]
    for key, n in names:
        for r in catalog(key, n).roots:
            assert abs(float(r.norm_sq()) - 1.0) < 1e-12


def test_root_counts():
    for (key, n), want in EXPECTED_COUNTS.items():
        assert root_system(key, n).count == want
    for n in range(2, 13):
        assert root_system("I2", n).count == 2 * n
        assert root_system("A1xI2", n).count == 2 * n + 2
        assert root_system("I2xI2", n).count == 4 * n


def test_float_key_stability():
    # closure counts must not depend on the dedup rounding (6 vs 7 decimals)
    for key, n in [("I2", 7), ("I2", 12), ("A1xI2", 9), ("I2xI2", 11), ("B4", None)]:
        simple = catalog(key, n)
        c6 = generate_roots(simple, key_decimals=6).count
        c7 = generate_roots(simple, key_decimals=7).count
        assert c6 == c7


def test_cartan_fixtures():
    cm = cartan_matrix(catalog("D4"))
    want = [[2, 0, 0, -1], [0, 2, 0, -1], [0, 0, 2, -1], [-1, -1, -1, 2]]
    for row, wrow in zip(cm, want):
        for v, w in zip(row, wrow):
            assert v == QuadTower(w)

    cm = cartan_matrix(catalog("H4"))
    t = TAU
    want = [[QuadTower(2), QuadTower(-1), QT_ZERO, QT_ZERO],
            [QuadTower(-1), QuadTower(2), QuadTower(-1), QT_ZERO],
            [QT_ZERO, QuadTower(-1), QuadTower(2), -t],
            [QT_ZERO, QT_ZERO, -t, QuadTower(2)]]
    assert [list(r) for r in cm] == [list(r) for r in want]

    cm = cartan_matrix(catalog("A1^3"))
    for i in range(3):
        for j in range(3):
            assert cm[i][j] == QuadTower(2 if i == j else 0)


def test_cartan_offdiagonal_nonpositive():
    for key, n in [("A3", None), ("B3", None), ("H3", None), ("A4", None),
                   ("F4", None), ("H4", None), ("I2", 9)]:
        cm = cartan_matrix(catalog(key, n))
        k = len(cm)
        for i in range(k):
            for j in range(k):
                if i != j:
                    assert float(cm[i][j]) <= 1e-12


def test_rotation_orders():
    assert rotation_orders(catalog("H3")) == (2, 3, 5)
    assert rotation_orders(catalog("A3")) == (2, 3, 3)
    assert rotation_orders(catalog("B3")) == (2, 3, 4)
    assert rotation_orders(catalog("I2", 7)) == 7
    for n in range(2, 13):
        assert rotation_orders(catalog("A1xI2", n)) == tuple(sorted((2, 2, n)))


def test_rotation_orders_permutation_invariant():
    base = catalog("B3")
    for perm in ((1, 0, 2), (2, 1, 0), (1, 2, 0)):
        shuffled = SimpleRootSet(
            name="B3*", key="B3", rank=3,
            roots=tuple(base.roots[i] for i in perm),
            backend=base.backend,
        )
        assert rotation_orders(shuffled) == rotation_orders(base)


def test_rotation_orders_rejects_non_coxeter_pair():
    bad = SimpleRootSet(
        name="bad", key="bad", rank=2,
        roots=(
            Multivector.from_vector([1.0, 0.0]),
            Multivector.from_vector([-math.cos(1.0), math.sin(1.0)]),
        ),
        backend="float",
    )
    with pytest.raises(ValueError):
        rotation_orders(bad, cap=100)


def test_validate_catalog_systems():
    # every catalog entry closes to a valid root system
    names = list(EXPECTED_COUNTS) + [("I2", 6), ("A1xI2", 4), ("I2xI2", 7)]
    for key, n in names:
        rep = validate_root_system(root_system(key, n).roots)
        assert rep.ok, (key, n)


def test_validate_missing_negative():
    e1 = Multivector.basis_vector(3, 0)
    rep = validate_root_system([e1])
    assert not rep.ok
    assert rep.missing_negatives


def test_validate_reflection_violation():
    e1 = Multivector.basis_vector(2, 0)
    diag = Multivector.from_vector([INV_SQRT2, INV_SQRT2])
    rep = validate_root_system([e1, -e1, diag, -diag])
    assert not rep.ok
    assert rep.reflection_violations  # reflecting the diagonal in e1 escapes


def test_validate_parallel_duplicate():
    e1 = Multivector.basis_vector(3, 0)
    two_e1 = 2 * e1
    rep = validate_root_system([e1, -e1, two_e1, -two_e1])
    assert rep.parallel_violations


def test_generation_cap():
    bad = SimpleRootSet(
        name="bad", key="bad", rank=2,
        roots=(
            Multivector.from_vector([1.0, 0.0]),
            Multivector.from_vector([-math.cos(1.0), math.sin(1.0)]),
        ),
        backend="float",
    )
    with pytest.raises(ClosureCapError):
        generate_roots(bad, cap=50)


def test_float_backend_override():
    simple = catalog("D4", backend="float")
    assert simple.backend == "float"
    assert generate_roots(simple).count == 24
    with pytest.raises(UnknownSystemError):
        catalog("I2", 5, backend="exact")


def test_dot_is_symmetric_bilinear():
    a = catalog("H3").roots[0]
    b = catalog("H3").roots[1]
    assert dot(a, b) == dot(b, a)
    assert dot(a + a, b) == dot(a, b) * 2
