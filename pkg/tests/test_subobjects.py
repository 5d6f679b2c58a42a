from itertools import combinations

import pytest

from hopfgal.builders import circle_hopf, dual_group_algebra, group_algebra
from hopfgal.errors import InputError, TransportViolation
from hopfgal.fields import GF, QQ, QQi
from hopfgal.groups import GroupTable, cyclic, dihedral8, klein, named_group, symmetric3
from hopfgal.linalg import span
from hopfgal.subobjects import (
    close_coideal_subalgebra, close_right_coideal_subalgebra, group_subobjects, h_coinvariants,
    has_kind, is_normal_subalgebra, k_plus_h, perp_transport, quotient_leq, scan_quot_gen,
    scan_sub_gen, takeuchi_check,
)

GROUPS = {"Z2": cyclic(2), "Z4": cyclic(4), "S3": symmetric3(), "D8": dihedral8(), "V4": klein()}


def brute_subgroups(g: GroupTable):
    out = []
    for r in range(1, g.order + 1):
        for s in combinations(range(g.order), r):
            s = set(s)
            if g.identity in s and all(g.mul(a, g.inverse(b)) in s for a in s for b in s):
                out.append(frozenset(s))
    return out


@pytest.mark.parametrize("name", sorted(GROUPS))
def test_subgroups_match_brute_force(name):
    g = GROUPS[name]
    assert sorted(g.subgroups(), key=sorted) == sorted(brute_subgroups(g), key=sorted)


def test_subgroup_counts():
    assert [len(GROUPS[n].subgroups()) for n in ("Z2", "S3", "D8", "V4")] == [2, 6, 10, 5]


def test_bad_group_table():
    with pytest.raises(InputError):
        GroupTable.from_table([[0, 1], [1, 1]])
    with pytest.raises(InputError):
        named_group("Q8")


# reference Hasse diagram of D8: nodes by generators, edges bottom to top
D8_REFERENCE_NODES = {
    "1": [], "<t>": ["t"], "<s2t>": ["s2t"], "<s2>": ["s2"], "<st>": ["st"], "<s3t>": ["s3t"],
    "<s2,t>": ["s2", "t"], "<s>": ["s"], "<s2,st>": ["s2", "st"], "D8": ["s", "t"],
}
D8_REFERENCE_EDGES = {
    ("1", "<t>"), ("1", "<s2t>"), ("1", "<s2>"), ("1", "<st>"), ("1", "<s3t>"),
    ("<t>", "<s2,t>"), ("<s2t>", "<s2,t>"), ("<s2>", "<s2,t>"), ("<s2>", "<s>"), ("<s2>", "<s2,st>"),
    ("<st>", "<s2,st>"), ("<s3t>", "<s2,st>"),
    ("<s2,t>", "D8"), ("<s>", "D8"), ("<s2,st>", "D8"),
}
D8_ELEMENT = {"s": 1, "s2": 2, "s3": 3, "t": 4, "st": 5, "s2t": 6, "s3t": 7}


def d8_reference_subgroups(g):
    return {name: g.closure({D8_ELEMENT[x] for x in gens}) for name, gens in D8_REFERENCE_NODES.items()}


def test_d8_element_names_follow_the_presentation():
    g = dihedral8()
    s, t = 1, 4
    assert g.mul(g.mul(t, s), t) == 3
    assert g.mul(s, t) == D8_ELEMENT["st"]


def test_d8_hasse_diagram_matches_reference():
    g = dihedral8()
    gs = group_subobjects(g, group_algebra(g), dual_group_algebra(g))
    named = d8_reference_subgroups(g)
    assert len(set(named.values())) == 10 == len(gs.subgroups)
    index = {v: k for k, v in named.items()}
    covers = {(index[gs.subgroups[a]], index[gs.subgroups[b]]) for a, b in gs.subgroup_poset.covers()}
    assert covers == D8_REFERENCE_EDGES
    assert gs.anti_isomorphic and gs.dual_isomorphic and gs.coset_kernels_match


@pytest.mark.parametrize("name", sorted(GROUPS))
def test_group_subobject_flags(name):
    g = GROUPS[name]
    gs = group_subobjects(g, group_algebra(g), dual_group_algebra(g))
    assert gs.anti_isomorphic and gs.dual_isomorphic and gs.coset_kernels_match
    for K, Q, G0 in zip(gs.sub_gen, gs.quot_gen, gs.subgroups):
        assert K.dim == len(G0) and Q.dim * K.dim == g.order
        assert not K.violations()
        assert not Q.check_projection()


def test_quotient_order_reverses_subgroup_order():
    g = symmetric3()
    gs = group_subobjects(g, group_algebra(g), dual_group_algebra(g))
    for a in range(6):
        for b in range(6):
            assert (gs.subgroups[a] <= gs.subgroups[b]) == quotient_leq(gs.quot_gen[b], gs.quot_gen[a])


def test_takeuchi_on_group_algebra():
    g = symmetric3()
    h = group_algebra(g)
    gs = group_subobjects(g, h, dual_group_algebra(g))
    r = takeuchi_check(h, gs.sub_gen, gs.quot_gen)
    assert r["ok"] and r["checked"] == 12
    assert all(row["free_rank_consistent"] for row in r["rows"])


def test_takeuchi_on_dual_klein():
    g = klein()
    hd = dual_group_algebra(g)
    gs = group_subobjects(g, group_algebra(g), hd)
    subs = [h_coinvariants(hd, q) for q in gs.quot_gen_dual]
    r = takeuchi_check(hd, subs, gs.quot_gen_dual)
    assert r["ok"] and r["checked"] == 10


@pytest.mark.parametrize("p,name,expected", [(3, "Z2", 2), (2, "Z2", 2), (3, "V4", 5), (2, "Z3", 2)])
def test_gf_scans_find_subgroup_algebras(p, name, expected):
    h = group_algebra(named_group(name), GF(p))
    assert len(scan_sub_gen(h)) == expected
    assert len(scan_quot_gen(h)) == expected


def test_scan_refuses_infinite_fields():
    with pytest.raises(InputError):
        scan_sub_gen(group_algebra(cyclic(2)))


def test_normal_subalgebras_follow_normal_subgroups():
    g = symmetric3()
    h = group_algebra(g)
    for G0 in g.subgroups():
        k = span(QQ, 6, [{x: QQ.one} for x in G0])
        assert is_normal_subalgebra(h, k) == g.is_normal(G0)


def test_perp_round_trip():
    g = symmetric3()
    h = group_algebra(g)
    for G0 in g.subgroups():
        k = span(QQ, 6, [{x: QQ.one} for x in G0])
        y = perp_transport(h, k, "left_coideal_subalgebra")
        hd = dual_group_algebra(g)
        assert has_kind(hd, y, "left_ideal_coideal")
        assert perp_transport(hd, y, "left_ideal_coideal") == k
    with pytest.raises(TransportViolation):
        perp_transport(h, span(QQ, 6, [{1: QQ.one}]), "subalgebra")


def test_coideal_closures_in_circle():
    h = circle_hopf(QQi)
    for i in range(h.dim):
        seed = span(h.field, h.dim, [{i: h.field.one}])
        k = close_coideal_subalgebra(h, seed)
        assert has_kind(h, k.space, "left_coideal_subalgebra")
        assert h_coinvariants(h, k_plus_h(k)) == k
        r = close_right_coideal_subalgebra(h, seed)
        assert has_kind(h, r, "right_coideal_subalgebra")
