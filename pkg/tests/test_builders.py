import pytest
from hypothesis import given, settings, strategies as st

from hopfgal.builders import (
    EXAMPLE_RELATIVE_BASIS, circle_hopf, example_algebra, example_generators, example_index,
    finite_field_ext, is_irreducible_mod_p, paper_example,
)
from hopfgal.errors import InputError
from hopfgal.extensions import invariants
from hopfgal.fields import QQi
from hopfgal.hopf import verify_structure
from hopfgal.linalg import span
from hopfgal.subobjects import close_subalgebra

F = QQi


def has_root(coeffs, p):
    return any(sum(c * x**k for k, c in enumerate(coeffs)) % p == 0 for x in range(p))


@settings(max_examples=150, deadline=None)
@given(st.sampled_from([2, 3, 5, 7]), st.lists(st.integers(0, 6), min_size=2, max_size=3), st.integers(1, 6))
def test_irreducibility_low_degree(p, low, lead):
    coeffs = low + [lead]
    if lead % p == 0:
        return
    # a polynomial of degree 2 or 3 is irreducible iff it has no root
    expected = not has_root(coeffs, p) if len(coeffs) > 2 else True
    assert is_irreducible_mod_p(coeffs, p) == expected


def test_irreducibility_degree_four():
    # x^4 + x^2 + 1 = (x^2 + x + 1)^2 over GF(2) has no root
    assert not is_irreducible_mod_p([1, 0, 1, 0, 1], 2)
    assert is_irreducible_mod_p([1, 1, 0, 0, 1], 2)


@pytest.mark.parametrize("p,poly,n", [(2, [1, 1, 1], 2), (2, [1, 1, 0, 1], 3), (3, [1, 0, 1], 2)])
def test_frobenius_generates_the_galois_group(p, poly, n):
    fe = finite_field_ext(p, poly)
    assert fe.group.order == n == fe.e.dim
    x = xp = {1: fe.e.field.one}
    for _ in range(p - 1):
        xp = fe.e.mul(xp, x)
    assert fe.action[1][1] == xp
    assert len({tuple(sorted(fe.action[g][1].items())) for g in range(n)}) == n
    assert invariants(fe.module).dim == 1


def test_reducible_modulus_is_rejected():
    with pytest.raises(InputError):
        finite_field_ext(2, [1, 0, 1])


def test_circle_variants_verify():
    for commuting in (False, True):
        assert verify_structure("hopf", circle_hopf(F, commuting)).ok


def test_example_algebra_relations():
    a = example_algebra()
    J, X, Z = ({example_index(*e): F.one} for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1)))
    assert a.mul(X, Z) == {k: F.i * v for k, v in a.mul(Z, X).items()}
    assert a.mul(J, J) == {0: -F.one}
    assert a.mul(J, X) == a.mul(X, J)


# ------------------------------------------------------------- worked example

def mono(name):
    exps = {"J": 0, "X": 0, "Z": 0}
    i = 0
    while i < len(name):
        sym = name[i]
        i += 1
        e = 1
        if i < len(name) and name[i] == "^":
            j = i + 1
            while j < len(name) and name[j].isdigit():
                j += 1
            e = int(name[i + 1:j])
            i = j
        exps[sym] += e
    return {example_index(exps["J"], exps["X"], exps["Z"]): F.one}


def generated(alg, names):
    return close_subalgebra(alg, span(F, alg.dim, [mono(n) for n in names]))


# reference invariant-image poset: A at the bottom, B at the top
IMAGE_REFERENCE_NODES = {
    "A": ["J", "X", "Z"], "<X,Z>": ["X", "Z"], "<X,JZ>": ["X", "JZ"], "<J,X,Z^2>": ["J", "X", "Z^2"],
    "<X,Z^2>": ["X", "Z^2"], "<J,X,Z^4>": ["J", "X", "Z^4"], "<X,JZ^2>": ["X", "JZ^2"], "B": ["X", "Z^4"],
}
IMAGE_REFERENCE_EDGES = {
    ("A", "<X,Z>"), ("A", "<X,JZ>"), ("A", "<J,X,Z^2>"),
    ("<X,Z>", "<X,Z^2>"), ("<X,JZ>", "<X,Z^2>"), ("<J,X,Z^2>", "<X,Z^2>"),
    ("<J,X,Z^2>", "<J,X,Z^4>"), ("<J,X,Z^2>", "<X,JZ^2>"),
    ("<X,Z^2>", "B"), ("<J,X,Z^4>", "B"), ("<X,JZ^2>", "B"),
}

# the 8 x 8 table of can(1 (x) u) evaluated at h, divided by the monomial u
CAN_TABLE = {
    "1":    [1, 1, 1, 1, 1, 1, 1, 1],
    "t":    [1, -1, 1, -1, 1, -1, 1, -1],
    "c":    [1, 1, 0, 0, -1, -1, 0, 0],
    "s":    [0, 0, -1, -1, 0, 0, 1, 1],
    "c^2":  [1, 1, 0, 0, 1, 1, 0, 0],
    "ct":   [1, -1, 0, 0, -1, 1, 0, 0],
    "st":   [0, 0, -1, 1, 0, 0, 1, -1],
    "c^2t": [1, -1, 0, 0, 1, -1, 0, 0],
}


def test_literal_dihedral_relation_is_not_a_module():
    with pytest.raises(InputError) as ex:
        paper_example(literal_d8=True, verify=True)
    assert ex.value.witness


@pytest.mark.slow
def test_action_table_has_no_mismatches(example):
    assert example.table_mismatches == []


@pytest.mark.slow
def test_table_entries(example):
    a = example.a
    # c . Z^2 = -Z^2, s . Z = -Z, t . J = -J
    assert a.act({2: F.one}, mono("Z^2")) == {k: -v for k, v in mono("Z^2").items()}
    assert a.act({3: F.one}, mono("Z")) == {k: -v for k, v in mono("Z").items()}
    assert a.act({1: F.one}, mono("J")) == {k: -v for k, v in mono("J").items()}


@pytest.mark.slow
def test_invariants_are_x_and_z4(example, example_run):
    b = example_run["b"]
    assert b.dim == 16 and example_run["b_matches"]
    assert b == generated(example.a.alg, ["X", "Z^4"])


@pytest.mark.slow
def test_can_determinants(example_run):
    assert example_run["standard"]["det"] == F(-1024)
    assert example_run["labelled_rows"]["det"] == F(-256)
    assert example_run["labelled_rows"]["bijective"]


@pytest.mark.slow
def test_can_matrix_matches_the_table(example_run):
    rows = [[int(x.re) for x in row] for row in example_run["labelled_rows"]["matrix"].rows]
    assert all(x.im == 0 for row in example_run["labelled_rows"]["matrix"].rows for x in row)
    assert rows == list(CAN_TABLE.values())
    assert tuple(EXAMPLE_RELATIVE_BASIS) == ("1", "J", "Z", "JZ", "Z^2", "JZ^2", "Z^3", "JZ^3")


@pytest.mark.slow
def test_example_is_not_a_domain(example):
    x, y = example.domain.witness
    assert x and y and not example.a.alg.mul(x, y)


@pytest.mark.slow
def test_named_coideal_invariants(example):
    m, alg = example.a, example.a.alg
    h = m.hopf
    k1 = close_subalgebra(h.alg, span(F, 8, [h.unit, {4: F.one}]))  # c^2 - s^2
    assert invariants(m, k1) == generated(alg, ["J", "X", "Z^2"])
    k2 = close_subalgebra(h.alg, span(F, 8, [h.unit, {5: F.one}, {6: F.one}]))  # ct, st
    assert invariants(m, k2) == generated(alg, ["X", "JZ^2"])


@pytest.mark.slow
def test_image_poset_matches_reference(example, example_run):
    alg = example.a.alg
    named = {k: generated(alg, v) for k, v in IMAGE_REFERENCE_NODES.items()}
    images = example_run["images"]
    assert len(images) == len(named) == 8
    index = {}
    for i, x in enumerate(images):
        match = [k for k, v in named.items() if v == x]
        assert len(match) == 1
        index[i] = match[0]
    # larger subalgebras sit lower in the drawing
    covers = {(index[b], index[a]) for a, b in example_run["image_poset"].covers()}
    assert covers == IMAGE_REFERENCE_EDGES


@pytest.mark.slow
def test_image_labels_are_generators(example, example_run):
    labels = [example_generators(example.a.alg, x) for x in example_run["images"]]
    assert all(lab is not None for lab in labels)
    for x, lab in zip(example_run["images"], labels):
        assert generated(example.a.alg, lab) == x
