import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from hopfgal.errors import InputError
from hopfgal.lattice import (
    CompleteLattice, FinitePoset, NoAdjoint, adjoint_from, check_modular_distributive,
    closed_elements, export_dot, is_anti_isomorphism, reflects_suprema,
)
from random_lattices import random_pair


def chain(n):
    return CompleteLattice.from_relation(range(n), lambda a, b: a <= b)


def boolean(k):
    return CompleteLattice.from_relation(range(1 << k), lambda a, b: a & b == a)


N5 = CompleteLattice.from_relation(
    ["0", "a", "b", "c", "1"],
    lambda x, y: x == y or x == "0" or y == "1" or (x, y) == ("a", "c"))
M3 = CompleteLattice.from_relation(
    ["0", "a", "b", "c", "1"], lambda x, y: x == y or x == "0" or y == "1")


def test_poset_axioms_are_checked():
    with pytest.raises(InputError):
        FinitePoset.from_relation([0, 1], lambda a, b: True)
    with pytest.raises(InputError):
        FinitePoset.from_relation([0, 1, 2], lambda a, b: a == b or (a, b) in {(0, 1), (1, 2)})


def test_non_lattice_is_rejected():
    with pytest.raises(InputError):
        CompleteLattice.from_relation(["a", "b"], lambda x, y: x == y)


def test_boolean_lattice_joins():
    b = boolean(3)
    for x in range(8):
        for y in range(8):
            assert b.elements[b.join[x][y]] == b.elements[x] | b.elements[y]
            assert b.elements[b.meet[x][y]] == b.elements[x] & b.elements[y]


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_adjoint_from_random_pairs(seed):
    P, Q, phi = random_pair(random.Random(seed))
    g = adjoint_from(phi, P, Q.poset)
    assert g, g
    assert g.is_valid()
    assert all(g.phi[g.psi[g.phi[a]]] == g.phi[a] for a in range(len(P)))
    assert all(g.psi[g.phi[g.psi[b]]] == g.psi[b] for b in range(len(Q)))
    pc, qc = closed_elements(g)
    assert sorted(g.phi[a] for a in pc) == sorted(qc)
    assert reflects_suprema(phi, P, Q) is None


def test_no_adjoint_carries_a_witness():
    # phi({a} v {b}) = 0 but phi({a}) meet phi({b}) = 2
    P = boolean(2)
    Q = chain(3)
    phi = [2, 2, 2, 0]
    res = adjoint_from(phi, P, Q.poset)
    assert isinstance(res, NoAdjoint) and not res
    assert res.witness
    assert reflects_suprema(phi, P, Q) is not None


def test_non_antitone_map_is_an_input_error():
    with pytest.raises(InputError):
        adjoint_from([0, 1, 2], chain(3), chain(3).poset)


def test_modular_and_distributive_witnesses():
    r = check_modular_distributive(N5)
    assert not r["modular"]["holds"] and r["distributive"]["kind"] == "N5"
    r = check_modular_distributive(M3)
    assert r["modular"]["holds"] and not r["distributive"]["holds"]
    assert r["distributive"]["kind"] == "M3" and len(r["distributive"]["witness"]) == 5
    r = check_modular_distributive(boolean(3))
    assert r["modular"]["holds"] and r["distributive"]["holds"]


def test_dot_export_lists_covers_only():
    dot = export_dot(chain(3).poset, ["a", "b", "c"], "c3")
    assert dot.splitlines() == ['digraph c3 {', '  rankdir=BT;', '  "a";', '  "b";', '  "c";',
                                '  "a" -> "b";', '  "b" -> "c";', '}']
    with pytest.raises(InputError):
        export_dot(chain(2).poset, ["x", "x"])


def test_dot_escapes_quotes():
    assert '"a\\"b"' in export_dot(chain(1).poset, ['a"b'])


def test_anti_isomorphism():
    c = chain(3).poset
    assert is_anti_isomorphism(c, c, [2, 1, 0])
    assert not is_anti_isomorphism(c, c, [0, 1, 2])


def test_poset_json_dump():
    d = json.loads(chain(2).poset.to_json())
    assert d == {"elements": ["0", "1"], "leq": [[1, 1], [0, 1]]}
