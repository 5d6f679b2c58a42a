import pytest

from hopfgal.builders import (
    circle_hopf, dual_group_algebra, finite_field_ext, group_algebra, is_strongly_graded,
    z2_graded_quadratic,
)
from hopfgal.errors import CocycleNotInvertible, ConditionViolation, InputError
from hopfgal.extensions import (
    ComoduleAlgebra, CrossedData, ModuleAlgebra, base_inclusion, can_full, can_q, can_s,
    check_can_linearity, cleft_witness_check, closedness_certificates, coextension_can,
    coinvariants, crossed_product, ell_construction, extension_connection, hopf_as_module_coalgebra,
    invariants, module_to_comodule, phi, psi, regular_comodule, relative_tensor, smash_data,
    translation_identity_failures,
)
from hopfgal.fields import QQ, QQi
from hopfgal.groups import cyclic, klein, symmetric3
from hopfgal.hopf import AlgebraStr, find_group_likes, verify_structure
from hopfgal.linalg import span, tensor
from hopfgal.subobjects import close_coideal_subalgebra, group_subobjects, k_plus_h

F = QQ


def graded(square):
    """k[x]/(x^2 - square) with x in degree g of Z2, as a k[Z2]-comodule algebra."""
    h = group_algebra(cyclic(2))
    alg = AlgebraStr.build(F, 2, [[{0: 1}, {1: 1}], [{1: 1}, {0: square} if square else {}]], {0: 1})
    return ComoduleAlgebra.build(alg, h, [{0: 1}, {3: 1}])


def test_graded_dichotomy():
    # A (x)_k A and A (x) H are both 4-dimensional; x (x) x -> x^2 (x) g loses rank when x^2 = 0
    r1 = can_full(graded(1))
    assert (r1.rank, r1.source_dim, r1.target_dim, r1.bijective) == (4, 4, 4, True)
    r0 = can_full(graded(0))
    assert (r0.rank, r0.source_dim, r0.target_dim, r0.bijective) == (3, 4, 4, False)


@pytest.mark.parametrize("square,strong", [(1, True), (0, False), (-1, True)])
def test_strong_grading_matches_can(square, strong):
    g, alg, degrees = z2_graded_quadratic(F, square)
    assert is_strongly_graded(g, alg, degrees) == strong
    assert can_full(graded(square)).bijective == strong


def test_bad_coaction_is_rejected():
    h = group_algebra(cyclic(2))
    alg = AlgebraStr.build(F, 2, [[{0: 1}, {1: 1}], [{1: 1}, {0: 1}]], {0: 1})
    # delta(x) = x (x) 1 + x (x) g breaks counitality and coassociativity
    with pytest.raises(InputError) as ex:
        ComoduleAlgebra.build(alg, h, [{0: 1}, {2: 1, 3: 1}])
    assert ex.value.witness


def test_regular_coinvariants_are_scalars():
    for h in (group_algebra(symmetric3()), circle_hopf(QQi)):
        a = regular_comodule(h)
        assert coinvariants(a) == span(h.field, h.dim, [h.unit])
        assert can_full(a).bijective
        assert not check_can_linearity(a)


def test_relative_tensor_dimension_over_free_base():
    g = symmetric3()
    h = group_algebra(g)
    gs = group_subobjects(g, h, dual_group_algebra(g))
    for K in gs.sub_gen:
        rt = relative_tensor(h.alg, K.space)
        assert rt.dim == h.dim * h.dim // K.dim


def test_module_invariants_are_comodule_coinvariants():
    fe = finite_field_ext(2, [1, 1, 1])
    a = module_to_comodule(fe.module)
    assert coinvariants(a) == invariants(fe.module)
    assert invariants(fe.module).dim == 1


def test_field_extension_comodule_is_galois():
    for p, poly in [(2, [1, 1, 1]), (2, [1, 1, 0, 1]), (3, [1, 0, 1])]:
        fe = finite_field_ext(p, poly)
        assert can_full(fe.comodule).bijective


def test_connection_on_regular_s3():
    h = group_algebra(symmetric3())
    a = regular_comodule(h)
    seeds = [close_coideal_subalgebra(h, span(F, 6, [h.unit, {i: F.one}])).space for i in range(6)]
    ec = extension_connection(a, sub_candidates=seeds)
    qc, sc = ec.conn.closed
    assert len(ec.quots) == len(ec.subs) == len(qc) == len(sc) == 5
    for q in ec.quots:
        assert phi(a, q) in ec.subs
        assert psi(a, phi(a, q)) == q
        assert can_q(a, q).bijective
    for s in ec.subs:
        assert can_s(a, s).bijective


def test_closedness_equivalence_on_circle():
    h = circle_hopf(QQi)
    a = regular_comodule(h)
    seeds = [close_coideal_subalgebra(h, span(QQi, 8, [h.unit, {i: QQi.one}])).space for i in range(8)]
    ec = extension_connection(a, sub_candidates=seeds)
    for q in ec.quots:
        c = closedness_certificates(a, q=q)
        assert c["q_galois"] == c["closed"]


def swap_module():
    """k x k with Z2 swapping the idempotents; the smash product is M_2(k)."""
    h = group_algebra(cyclic(2))
    b = AlgebraStr.build(F, 2, [[{0: 1}, {}], [{}, {1: 1}]], {0: 1, 1: 1})
    act = [[{0: F.one}, {1: F.one}], [{1: F.one}, {0: F.one}]]
    return ModuleAlgebra.build(b, h, act)


def test_smash_product_is_cleft_and_galois():
    d = smash_data(swap_module())
    a = crossed_product(d)
    assert a.dim == 4
    assert not a.alg.is_commutative()
    b = base_inclusion(d)
    assert coinvariants(a) == b
    assert can_full(a, b).bijective
    gamma = [tensor(d.b.unit, {i: F.one}, 2) for i in range(2)]
    assert cleft_witness_check(a, gamma)["cleft"]


def test_smash_product_closed_iff_q_galois():
    a = crossed_product(smash_data(swap_module()))
    h = a.hopf
    quots = [k_plus_h(close_coideal_subalgebra(h, span(F, 2, vs)))
             for vs in ([h.unit], [h.unit, {1: F.one}])]
    for q in quots:
        c = closedness_certificates(a, q=q, crossed=True)
        assert c["q_galois"] == c["closed"]


def trivial_crossed(sig):
    h = group_algebra(cyclic(2))
    b = AlgebraStr.build(F, 1, [[{0: 1}]], {0: 1})
    act = (({0: F.one},), ({0: F.one},))
    return CrossedData(b, h, act, (({0: F.one}, {0: F.one}), ({0: F.one}, {0: F(sig)} if sig else {})))


def test_twisted_group_algebra():
    a = crossed_product(trivial_crossed(-1))
    assert a.alg.mult[1][1] == {0: F(-1)}
    assert can_full(a, base_inclusion(trivial_crossed(-1))).bijective


def test_zero_cocycle_is_not_invertible():
    with pytest.raises(CocycleNotInvertible):
        crossed_product(trivial_crossed(0))


def test_cocycle_condition_violation_is_named():
    h = group_algebra(cyclic(3))
    b = AlgebraStr.build(F, 1, [[{0: 1}]], {0: 1})
    act = tuple(({0: F.one},) for _ in range(3))
    sig = [[{0: F.one} for _ in range(3)] for _ in range(3)]
    sig[1][1] = {0: F(2)}
    with pytest.raises(ConditionViolation) as ex:
        crossed_product(CrossedData(b, h, act, tuple(map(tuple, sig))))
    assert ex.value.condition


def test_ell_of_graded_z2():
    a = graded(1)
    e = ell_construction(a)
    assert e.hopf.dim == 2 and e.report.ok
    assert verify_structure("hopf", e.hopf).ok
    assert len(find_group_likes(e.hopf)) == 2
    assert translation_identity_failures(a, e.translation) == []


def test_ell_of_circle():
    h = circle_hopf(QQi)
    a = regular_comodule(h)
    e = ell_construction(a)
    assert e.hopf.dim == 8 and verify_structure("hopf", e.hopf).ok
    assert translation_identity_failures(a, e.translation) == []


def test_coextension_can_on_circle():
    h = circle_hopf(QQi)
    c, act = hopf_as_module_coalgebra(h)
    for i in range(h.dim):
        k = close_coideal_subalgebra(h, span(QQi, 8, [h.unit, {i: QQi.one}])).space
        assert coextension_can(c, h, act, k).bijective


def test_klein_dual_regular_is_galois():
    h = dual_group_algebra(klein())
    assert can_full(regular_comodule(h)).bijective
