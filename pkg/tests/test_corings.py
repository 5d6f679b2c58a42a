from itertools import combinations

import pytest

from hopfgal.builders import finite_field_ext, group_algebra, poly_algebra, sign_action
from hopfgal.corings import (
    congruence_submonoid_bridges, coring_can, coring_can_morphism_check,
    coring_connection_transport, domain_certificate, field_ext_galois_check, fixed_subalgebra,
    hom_coring, map_coring, module_algebra_connection, mono_action_cert, sweedler_coring,
)
from hopfgal.errors import InputError, NotMonoActionError, ZeroDivisorError
from hopfgal.extensions import ModuleAlgebra
from hopfgal.fields import GF, QQ
from hopfgal.groups import cyclic, klein, symmetric3
from hopfgal.hopf import AlgebraStr
from hopfgal.linalg import span

FIELDS = [(2, [1, 1, 1]), (2, [1, 1, 0, 1]), (3, [1, 0, 1])]


@pytest.mark.parametrize("p,poly", FIELDS)
def test_field_extension_corings(p, poly):
    fe = finite_field_ext(p, poly)
    n, order = fe.e.dim, fe.group.order
    r = field_ext_galois_check(fe.group, fe.e, fe.action)
    assert r["bijective"] and r["rank"] == n * n == r["target_dim"]
    assert r["fixed_dim"] == 1
    assert r["coring_morphism_violations"] == []
    assert r["map_coring_dim"] == order * n
    sw = sweedler_coring(fe.e, span(fe.e.field, n, [fe.e.unit]))
    assert sw.dim == n * n and not sw.violations()
    assert not map_coring(fe.group, fe.e, fe.action).violations()


def test_trivial_group_on_dual_numbers_is_not_galois():
    e = poly_algebra(QQ, [0, 0, 1])
    r = field_ext_galois_check(cyclic(1), e, [[{0: QQ.one}, {1: QQ.one}]])
    assert not r["bijective"] and r["rank"] < r["source_dim"]


def test_non_automorphism_is_rejected():
    e = poly_algebra(QQ, [-2, 0, 1])
    with pytest.raises(InputError):
        field_ext_galois_check(cyclic(2), e, [[{0: QQ.one}, {1: QQ.one}], [{0: QQ.one}, {0: QQ.one}]])


def test_fixed_subalgebra_of_sign_action():
    m = sign_action(QQ, 2)
    assert fixed_subalgebra(m.alg, m.action) == span(QQ, 2, [{0: QQ.one}])


def test_domain_certificates():
    assert domain_certificate(poly_algebra(GF(2), [1, 1, 1])).domain is True
    c = domain_certificate(poly_algebra(QQ, [-2, 0, 1]))
    assert c.domain is True and c.method == "minimal polynomial"
    c = domain_certificate(poly_algebra(QQ, [0, 0, 1]))
    assert c.domain is False
    x, y = c.witness
    assert not poly_algebra(QQ, [0, 0, 1]).mul(x, y)
    assert domain_certificate(poly_algebra(QQ, [-1, 0, 1])).domain is False


def test_sign_action_hom_coring():
    m = sign_action(QQ, 2)
    assert not mono_action_cert(m).failures()
    hc = hom_coring(m)
    assert hc.dim == 4 and hc._info["alpha_rank"] == 8
    assert not hc.violations()
    r = coring_can(m)
    assert r["bijective"] and r["rank"] == 4
    assert coring_can_morphism_check(m) == []


def test_zero_divisors_block_the_hom_coring():
    with pytest.raises(ZeroDivisorError):
        hom_coring(sign_action(QQ, 1))


def test_trivial_action_on_a_domain_is_mono():
    h = group_algebra(cyclic(2))
    alg = poly_algebra(QQ, [-2, 0, 1])
    m = ModuleAlgebra.build(alg, h, [[{0: QQ.one}, {1: QQ.one}], [{0: QQ.one}, {1: QQ.one}]])
    assert not mono_action_cert(m).failures()


def test_module_connection_and_transport():
    m = sign_action(QQ, 2)
    ks = [span(QQ, 2, [{0: QQ.one}]), span(QQ, 2, [{0: QQ.one}, {1: QQ.one}])]
    mc = module_algebra_connection(m, ks)
    assert mc.conn.is_valid()
    t = coring_connection_transport(m, mc.ks)
    assert t["ok"] and t["injective"]


def brute_submonoids(g):
    out = 0
    for r in range(1, g.order + 1):
        for s in combinations(range(g.order), r):
            s = set(s)
            if g.identity in s and all(g.mul(a, b) in s for a in s for b in s):
                out += 1
    return out


@pytest.mark.parametrize("g", [cyclic(1), cyclic(2), cyclic(3), klein(), symmetric3()])
def test_bridges_on_groups(g):
    r = congruence_submonoid_bridges(g)
    assert r["submonoids"] == brute_submonoids(g)
    normal = sum(1 for s in g.subgroups() if g.is_normal(s))
    assert r["congruences"] == normal
    assert r["ok"] and r["coideals_match_submonoids"]
    assert r["dot"]["submonoids"].startswith("digraph submonoids")


def test_bridge_over_gf8():
    fe = finite_field_ext(2, [1, 1, 0, 1])
    r = congruence_submonoid_bridges(fe.group, fe.e, fe.action)
    assert r["ok"]
    flags = {tuple(row["classes"]): row["sub_bimodule"] for row in r["ge1"]}
    assert flags[(0, 0, 0)] is False and flags[(0, 1, 2)] is True


def test_mono_action_failure_is_reported():
    h = group_algebra(cyclic(2))
    b = AlgebraStr.build(QQ, 2, [[{0: 1}, {}], [{}, {1: 1}]], {0: 1, 1: 1})
    act = [[{0: QQ.one}, {1: QQ.one}], [{1: QQ.one}, {0: QQ.one}]]
    m = ModuleAlgebra.build(b, h, act)
    with pytest.raises((NotMonoActionError, ZeroDivisorError)):
        hom_coring(m)
