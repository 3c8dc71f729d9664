import numpy as np
import pytest

from spinroot.induction import spin_group
from spinroot.mckay import (
    MatchError,
    McKayGraph,
    affine_core,
    affine_marks,
    affine_template,
    character_table,
    character_table_csv,
    class_matrices,
    conjugacy_classes,
    match_affine_ade,
    mckay_graph,
    mckay_graph_dot,
    spinor_character,
)

CLASS_COUNTS = {
    ("A3", None): 7,   # 2T
    ("B3", None): 8,   # 2O
    ("H3", None): 9,   # 2I
}


def test_class_counts_polyhedral():
    for (name, n), k in CLASS_COUNTS.items():
        assert conjugacy_classes(spin_group(name, n)).count == k


def test_class_counts_families():
    for n in range(2, 13):
        assert conjugacy_classes(spin_group("I2", n)).count == 2 * n
        assert conjugacy_classes(spin_group("A1xI2", n)).count == n + 3


def test_class_structure():
    G = spin_group("B3")
    classes = conjugacy_classes(G)
    assert sum(classes.sizes) == G.order
    assert classes.classes[0] == (G.identity_index,)
    # inverse-class map is an involution
    for ci, inv_ci in enumerate(classes.inverse_class):
        assert classes.inverse_class[inv_ci] == ci


def test_character_dims_2T():
    table = character_table(spin_group("A3"))
    assert table.dims == (1, 1, 1, 2, 2, 2, 3)
    assert sum(table.dims) == 12
    assert sum(d * d for d in table.dims) == 24


def test_character_dims_2I():
    table = character_table(spin_group("H3"))
    assert sum(table.dims) == 30
    assert sum(d * d for d in table.dims) == 120


def test_cyclic_groups_all_linear():
    table = character_table(spin_group("I2", 3))  # C6
    assert table.dims == (1,) * 6


def test_row_and_column_orthogonality():
    for name, n in [("A3", None), ("H3", None), ("A1xI2", 4)]:
        G = spin_group(name, n)
        classes = conjugacy_classes(G)
        table = character_table(G, classes)
        k = classes.count
        sizes = np.array(table.sizes, float)
        gram = (table.chars * sizes) @ table.chars.conj().T / G.order
        assert np.allclose(gram, np.eye(k), atol=1e-6)
        # column orthogonality: sum_i chi_i(c) conj(chi_i(c')) = |G|/|c| delta
        for s in range(k):
            for t in range(k):
                val = np.sum(table.chars[:, s] * np.conj(table.chars[:, t]))
                want = G.order / sizes[s] if s == t else 0.0
                assert abs(val - want) < 1e-6


def test_dims_divide_group_order():
    for name, n in [("A3", None), ("B3", None), ("H3", None), ("A1xI2", 6)]:
        G = spin_group(name, n)
        for d in character_table(G).dims:
            assert G.order % d == 0


def test_spinor_character_values():
    G = spin_group("H3")
    classes = conjugacy_classes(G)
    chi = spinor_character(G, classes)
    assert chi[0] == 2.0  # identity
    assert min(chi) == -2.0  # the central element -1
    tau = (1 + 5 ** 0.5) / 2
    vals = sorted(round(float(v), 6) for v in chi)
    for v in (round(tau, 6), round(-tau, 6), round(tau - 1, 6), round(1 - tau, 6)):
        assert v in vals


def test_spinor_character_needs_spin():
    from spinroot.induction import pin_group

    with pytest.raises(ValueError):
        spinor_character(pin_group("A3"))


def test_spinor_character_is_an_irreducible_row():
    # the 2D spinor representation is itself irreducible for the binary
    # polyhedral and dicyclic groups, so its character is a table row; for
    # cyclic groups it splits into two linear characters and is not one
    for name, n in [("A3", None), ("B3", None), ("H3", None), ("A1xI2", 4)]:
        G = spin_group(name, n)
        classes = conjugacy_classes(G)
        table = character_table(G, classes)
        chi = spinor_character(G, classes)
        assert any(np.allclose(row, chi, atol=1e-8) for row in table.chars)
    G = spin_group("I2", 5)
    classes = conjugacy_classes(G)
    table = character_table(G, classes)
    chi = spinor_character(G, classes)
    assert not any(np.allclose(row, chi, atol=1e-8) for row in table.chars)


def test_mckay_graphs_match_affine_templates():
    fixtures = [("A3", None, "E~6"), ("B3", None, "E~7"), ("H3", None, "E~8"),
                ("I2", 4, "A~7"), ("A1xI2", 3, "D~5"), ("A1xI2", 2, "D~4")]
    for name, n, want in fixtures:
        G = spin_group(name, n)
        classes = conjugacy_classes(G)
        table = character_table(G, classes)
        graph = mckay_graph(table, spinor_character(G, classes))
        assert match_affine_ade(graph) == want


def test_mckay_graph_is_cycle_for_cyclic_groups():
    G = spin_group("I2", 5)  # C10
    table = character_table(G)
    graph = mckay_graph(table, spinor_character(G))
    degrees = graph.adjacency.sum(axis=1)
    assert set(degrees) == {2}
    assert match_affine_ade(graph) == "A~9"


def test_marks_in_adjacency_kernel():
    for name, n in [("A3", None), ("B3", None), ("H3", None), ("A1xI2", 7)]:
        G = spin_group(name, n)
        table = character_table(G)
        graph = mckay_graph(table, spinor_character(G))
        lab = np.array(graph.labels, float)
        assert np.abs(2 * lab - graph.adjacency @ lab).max() < 1e-6


def test_character_columns_are_adjacency_eigenvectors():
    G = spin_group("B3")
    classes = conjugacy_classes(G)
    table = character_table(G, classes)
    chi = spinor_character(G, classes)
    graph = mckay_graph(table, chi)
    for t in range(classes.count):
        col = table.chars[:, t]
        assert np.abs(graph.adjacency @ col - chi[t] * col).max() < 1e-6


def test_seed_independence():
    G = spin_group("A1xI2", 5)
    classes = conjugacy_classes(G)
    mats = class_matrices(G, classes)
    tables = [character_table(G, classes, seed=s, mats=mats) for s in range(12)]
    for t in tables[1:]:
        assert t.dims == tables[0].dims
        assert np.allclose(t.chars, tables[0].chars, atol=1e-8)


def test_affine_templates_and_marks():
    adj, marks = affine_template("E~8")
    assert adj.shape == (9, 9)
    assert sorted(marks) == [1, 2, 2, 3, 3, 4, 4, 5, 6]
    assert sum(marks) == 30
    adj, marks = affine_template("D~4")
    assert sorted(marks) == [1, 1, 1, 1, 2]
    adj, marks = affine_template("A~5")
    assert marks == (1,) * 6
    assert affine_marks(adj) == marks
    assert affine_core("E~8") == "E8"
    with pytest.raises(MatchError):
        affine_template("A~1")


def test_match_rejects_wrong_labels():
    adj, marks = affine_template("E~6")
    wrong = McKayGraph(labels=tuple([9] * 7), adjacency=adj.copy())
    with pytest.raises(MatchError):
        match_affine_ade(wrong)


def test_match_rejects_unknown_graph():
    adj = np.zeros((6, 6), dtype=int)
    for i in range(5):
        adj[i, i + 1] = adj[i + 1, i] = 1  # a plain path is not affine
    with pytest.raises(MatchError):
        match_affine_ade(McKayGraph(labels=(1,) * 6, adjacency=adj))


def test_serialization():
    G = spin_group("A3")
    classes = conjugacy_classes(G)
    table = character_table(G, classes)
    csv = character_table_csv(table)
    assert csv.startswith("class_size,")
    assert len(csv.strip().split("\n")) == classes.count + 1
    graph = mckay_graph(table, spinor_character(G, classes))
    dot = mckay_graph_dot(graph)
    assert dot.count("--") == graph.adjacency.sum() // 2
