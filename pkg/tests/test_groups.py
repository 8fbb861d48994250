from __future__ import annotations

import pytest

from twistcoh import catalog as C
from twistcoh.errors import BudgetError
from twistcoh.groups import (GroupError, MatrixRep, OrderLimitError, RelationError, ZExtension,
                             build_group, compose, coset_representative, cyclic_group, direct_product,
                             identity_hom, index, inversion_aut, make_hom, quaternion_group,
                             restrict_extension, semidirect_z2, swap_aut, verify_matrix_rep)
from twistcoh.linalg import IntMatrix


ALL_GROUPS = [C.Z2, C.Z4, C.Q8, C.Z4xZ2, C.Z4xZ4, C.Z4xZ4_sd_Z2, C.trivial]


@pytest.mark.parametrize("make", ALL_GROUPS, ids=lambda f: f.__name__)
def test_group_axioms(make):
    G = make()
    G.validate()
    e = G.identity
    for g in range(G.order):
        assert G.mul(g, G.inv(g)) == e
        assert G.power(g, G.element_order(g)) == e
    assert sorted(G.closure(list(G.generators.values()))) == list(range(G.order))


def test_orders_and_shapes():
    assert [C.Z4().order, C.Q8().order, C.Z4xZ2().order, C.Z4xZ4_sd_Z2().order] == [4, 8, 8, 32]
    assert C.Z4().is_cyclic() and not C.Q8().is_abelian()
    Q = C.Q8()
    assert sorted(Q.center()) == sorted([Q.identity, Q.power(Q["i"], 2)])
    assert C.Z4xZ2().is_abelian() and not C.Z4xZ2().is_cyclic()


def test_quaternion_relations():
    Q = quaternion_group()
    i, j, k = Q["i"], Q["j"], Q["k"]
    m1 = Q.power(i, 2)
    assert Q.power(j, 2) == Q.power(k, 2) == m1
    assert Q.mul(i, j) == k
    assert Q.mul(j, i) == Q.mul(m1, k)


def test_automorphisms():
    Z = C.Z4xZ4()
    inv, sw = inversion_aut(Z), swap_aut(Z)
    for f in (inv, sw):
        f.check()
        assert f.is_bijective
        assert compose(f, f).images == identity_hom(Z).images
    assert compose(inv, sw).images == compose(sw, inv).images


def test_make_hom_rejects_bad_images():
    Z4, Z2 = C.Z4(), C.Z2()
    t = next(iter(Z2.generators))
    with pytest.raises(RelationError):
        make_hom(Z2, Z4, {t: "b"})
    with pytest.raises(GroupError):
        make_hom(Z4, Z4, {})
    f = make_hom(Z4, Z2, {"b": t})
    assert len(f.kernel()) == 2
    assert f.is_surjective and not f.is_injective


def test_subgroups_and_cosets():
    inc = C.quaternion_cyclic()
    assert index(inc) == 2
    s = coset_representative(inc)
    assert s not in inc.images
    assert index(C.normal_z4xz4()) == 2


def test_semidirect_and_products():
    G = semidirect_z2(C.Z4xZ4(), swap_aut(C.Z4xZ4()))
    assert G.order == 32 and not G.is_abelian()
    P = direct_product(cyclic_group(4), cyclic_group(2))
    assert P.order == 8 and P.factors is not None


@pytest.mark.parametrize("spec,order", [
    ("Z4", 4), ("Q8", 8), ("Cyclic(6)", 6), ("Product(Cyclic(4), Cyclic(2))", 8),
    ("SemidirectZ2(Product(Cyclic(4), Cyclic(4)), swap)", 32), ("Quaternion8", 8),
    ('{"op": "Product", "args": [{"op": "Cyclic", "args": [2]}, {"op": "Cyclic", "args": [3]}]}', 6),
])
def test_build_group(spec, order):
    assert build_group(spec).order == order


@pytest.mark.parametrize("spec", ["Foo", "Cyclic(", "Product(Z4)", "SemidirectZ2(Z4, twist)", "Z4 Z4"])
def test_build_group_errors(spec):
    with pytest.raises(GroupError):
        build_group(spec)


def test_order_budget():
    with pytest.raises(OrderLimitError):
        build_group("Cyclic(65)")
    with pytest.raises(BudgetError):
        build_group("Product(Q8, Cyclic(16))")


def test_extensions():
    E = C.Z4_Z()
    assert isinstance(E, ZExtension)
    assert E.fiber.labels[E.theta(E.fiber["b"])] == "b^3"
    sub, incl = restrict_extension(C.P_Z(), C.z4xz2_embedding())
    assert sub.theta.images == C.Z4xZ2_Z().theta.images
    with pytest.raises(GroupError):
        ZExtension(C.Z4(), make_hom(C.Z4(), C.Z4(), {"b": "b^2"}))


@pytest.mark.parametrize("make", [C.rep_A, C.rep_A2, C.rep_Q8, C.rep_Z4xZ2, C.rep_A_fiber])
def test_catalog_reps(make):
    rep = make()
    r = verify_matrix_rep(rep)
    assert r.ok
    assert r.orthogonal and r.signed_permutation


def test_bad_rep_is_rejected():
    Z4 = C.Z4()
    bad = MatrixRep(Z4, 2, {"b": IntMatrix.from_rows([[1, 1], [0, 1]])}, name="shear")
    with pytest.raises(RelationError):
        bad.all_images()
    assert not verify_matrix_rep(bad).ok
