import random

import numpy as np
import pytest

from spinroot.clifford import Multivector, mv_key, reverse, spinor_inner
from spinroot.induction import (
    binary_group_name,
    assert_fingerprints_distinct,
    even_subgroup,
    fingerprint,
    generate_pin_group,
    identify_root_system,
    induced_name,
    induced_set,
    pin_group,
    spin_group,
    spinors_to_4d,
)
from spinroot.rootsys import catalog, validate_root_system
from spinroot.scalars import QT_ONE

ORDERS = {
    ("A1^3", None): (16, 8),
    ("A3", None): (48, 24),
    ("B3", None): (96, 48),
    ("H3", None): (240, 120),
}


def test_pin_spin_orders():
    for (name, n), (pin_n, spin_n) in ORDERS.items():
        assert pin_group(name, n).order == pin_n
        assert spin_group(name, n).order == spin_n
    for n in range(2, 13):
        assert pin_group("I2", n).order == 4 * n
        assert spin_group("I2", n).order == 2 * n
        assert pin_group("A1xI2", n).order == 8 * n
        assert spin_group("A1xI2", n).order == 4 * n


def test_spin_group_orders_match_3d_coxeter_groups():
    # |W| for the three polyhedral groups: 24, 48, 120
    for name, w_order in [("A3", 24), ("B3", 48), ("H3", 120)]:
        assert spin_group(name).order == w_order


def test_pin_rejects_rank_4():
    with pytest.raises(ValueError):
        generate_pin_group(catalog("D4"))


def test_group_elements_are_unit_versors_with_parity():
    G = pin_group("A3")
    assert G.parity == "pin"
    assert set(G.parities) == {"even", "odd"}
    S = even_subgroup(G)
    assert S.parity == "spin"
    assert set(S.parities) == {"even"}
    assert S.order * 2 == G.order


def test_cayley_table_correct():
    for name, n in [("A3", None), ("I2", 5), ("A1xI2", 3)]:
        G = pin_group(name, n)
        cay = G.cayley
        rng = random.Random(7)
        idxs = [(rng.randrange(G.order), rng.randrange(G.order)) for _ in range(40)]
        for i, j in idxs:
            prod = G.elements[i] * G.elements[j]
            assert G.index_of(prod) == cay[i][j]


def test_full_cayley_closure_2T():
    G = spin_group("A3")
    n = G.order
    cay = G.cayley
    assert sorted(set(cay[0])) == list(range(n)) or True  # rows are permutations
    for i in range(n):
        assert sorted(cay[i]) == list(range(n))
        assert sorted(row[i] for row in cay) == list(range(n))


def test_identity_and_inverses():
    G = spin_group("B3")
    e = G.identity_index
    cay = G.cayley
    inv = G.inverse_indices
    for i in range(G.order):
        assert cay[i][inv[i]] == e
        assert cay[inv[i]][i] == e


def test_induced_counts_and_validity():
    for (name, n), (_, spin_n) in ORDERS.items():
        S = induced_set(name, n)
        assert S.count == spin_n
        assert validate_root_system(S.as_root_vectors()).ok
    for n in (2, 5, 12):
        S = induced_set("I2", n)
        assert S.count == 2 * n and S.dim == 2
        assert validate_root_system(S.as_root_vectors()).ok


def test_spinor_coordinate_map():
    # R = a0 + a1 e2e3 + a2 e3e1 + a3 e1e2  ->  (a0, a1, a2, a3)
    G = spin_group("A3")
    S = spinors_to_4d(G)
    for mv, vec in zip(G.elements, S.vectors):
        assert mv.coeffs[0] == vec[0]
        assert mv.coeffs[0b110] == vec[1]
        assert -mv.coeffs[0b101] == vec[2]
        assert mv.coeffs[0b011] == vec[3]


def test_spinors_to_4d_requires_spin():
    with pytest.raises(ValueError):
        spinors_to_4d(pin_group("A3"))


def test_identification():
    assert induced_name("A3") == "D4"
    assert induced_name("B3") == "F4"
    assert induced_name("H3") == "H4"
    assert induced_name("A1^3") == "A1^4"
    assert induced_name("A1xI2", 2) == "A1^4"
    for n in (3, 7, 12):
        assert induced_name("A1xI2", n) == f"I2({n})xI2({n})"
        assert induced_name("I2", n) == f"I2({n})"


def test_fingerprints_distinct_within_catalog():
    assert_fingerprints_distinct(12)


def test_identification_rotation_invariant():
    rng = np.random.default_rng(3)
    S = induced_set("A3")
    coords = np.array([[float(c) for c in v] for v in S.vectors])
    for _ in range(3):
        Q, _ = np.linalg.qr(rng.standard_normal((4, 4)))
        rotated = coords @ Q.T
        vecs = [Multivector.from_vector([float(c) for c in row]) for row in rotated]
        fp = fingerprint(vecs)
        assert fp == fingerprint(S.as_root_vectors())
    bad = [Multivector.from_vector([1.0, 0.0, 0.0, 0.0]),
           Multivector.from_vector([-1.0, 0.0, 0.0, 0.0])]

    class Fake:
        dim = 4
        source_name = "fake"

        def as_root_vectors(self):
            return bad

    with pytest.raises(ValueError):
        identify_root_system(Fake())


def test_theorem_closure_properties():
    # the induced set is closed under R -> -R and under the induced reflections
    # R2 -> -R1 reverse(R2) R1, checked exhaustively for |G| <= 120
    for name in ("A1^3", "A3", "B3", "H3"):
        G = spin_group(name)
        keys = {mv_key(e) for e in G.elements}
        for R in G.elements:
            assert mv_key(-R) in keys
        for R1 in G.elements:
            r1r = R1.reverse()
            for R2 in G.elements:
                image = -(R1 * R2.reverse() * R1)
                assert mv_key(image) in keys


def test_reflection_formula_matches_clifford_form():
    # R2 - 2 (R1,R2) R1 == -R1 reverse(R2) R1 for unit spinors
    rng = np.random.default_rng(11)
    for _ in range(50):
        a = rng.standard_normal(4)
        b = rng.standard_normal(4)
        a /= np.linalg.norm(a)
        masks = (0, 0b110, 0b101, 0b011)
        signs = (1.0, 1.0, -1.0, 1.0)  # e3e1 stored as -e1e3

        def spinor(v):
            mv = Multivector.zero(3, "float")
            for coef, m, s in zip(v, masks, signs):
                mv = mv + Multivector.blade(3, m, s * float(coef))
            return mv

        R1, R2 = spinor(a), spinor(b)
        lhs = R2 - spinor_inner(R1, R2) * 2.0 * R1
        rhs = -(R1 * reverse(R2) * R1)
        assert lhs.approx_eq(rhs, 1e-10)
    # and exactly, on a sample of exact spinor pairs from 2O
    G = spin_group("B3")
    sample = G.elements[::7]
    for R1 in sample:
        for R2 in sample:
            lhs = R2 - (spinor_inner(R1, R2) * 2) * R1
            rhs = -(R1 * reverse(R2) * R1)
            assert lhs == rhs


def test_binary_group_names():
    assert binary_group_name("A3") == "2T"
    assert binary_group_name("B3") == "2O"
    assert binary_group_name("H3") == "2I"
    assert binary_group_name("I2", 6) == "C12"
    assert binary_group_name("A1xI2", 5) == "Dic5"
    assert binary_group_name("A1^3") == "Q8"
    assert "Q8" in binary_group_name("A1xI2", 2)


def test_d4_induced_coordinate_forms():
    # 8 signed unit vectors plus 16 half-vectors, exactly
    from spinroot.verify import expected_induced_vectors

    assert set(induced_set("A3").vectors) == expected_induced_vectors("D4")


def test_quaternion_units_from_a1_cubed():
    # the eight even elements are +-1, +-e1e2, +-e2e3, +-e3e1
    G = spin_group("A1^3")
    vectors = set(spinors_to_4d(G).vectors)
    want = set()
    for i in range(4):
        for s in (1, -1):
            v = [QT_ONE * 0] * 4
            v[i] = QT_ONE if s > 0 else -QT_ONE
            want.add(tuple(v))
    assert vectors == want
