from __future__ import annotations

from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twistcoh import catalog as C
from twistcoh.errors import BudgetError
from twistcoh.groups import compose, conjugation_aut, identity_hom, inversion_aut
from twistcoh.homology import (AbGroup, HMap, cap, cap_map, cohomology, cohomology_pullback, cup,
                               degree_two_generator, euler_class_cyclic, homology, identity_map,
                               induced_map, scalar_map)
from twistcoh.linalg import IntMatrix
from twistcoh.modules import character_module
from twistcoh.resolutions import best_resolution


@pytest.mark.parametrize("make,values", [
    (C.Z2, ["Z", "Z/2", "0", "Z/2", "0", "Z/2"]),
    (C.Z4, ["Z", "Z/4", "0", "Z/4", "0", "Z/4"]),
    (C.Q8, ["Z", "Z/2 + Z/2", "0", "Z/8", "0", "Z/2 + Z/2"]),
    (C.Z4xZ2, ["Z", "Z/2 + Z/4", "Z/2", "Z/2 + Z/2 + Z/4", "Z/2 + Z/2", "Z/2 + Z/2 + Z/2 + Z/4"]),
    (C.trivial, ["Z", "0", "0", "0", "0", "0"]),
], ids=["Z2", "Z4", "Q8", "Z4xZ2", "1"])
def test_integral_homology(make, values):
    G = make()
    assert [homology(G, None, q).describe() for q in range(6)] == values


def test_integral_cohomology_z4():
    assert [cohomology(C.Z4(), None, q).describe() for q in range(6)] == \
        ["Z", "0", "Z/4", "0", "Z/4", "0"]


def test_sign_coefficients_z4():
    M = character_module(C.Z4(), {"b": -1})
    assert [homology(C.Z4(), M, q).describe() for q in range(5)] == ["Z/2", "0", "Z/2", "0", "Z/2"]


def test_degree_budget():
    with pytest.raises(BudgetError):
        homology(C.Z4(), None, 8)


def test_class_representatives_roundtrip():
    H = homology(C.Q8(), None, 3)
    for x in H.elements():
        assert H.class_of(H.representative(x)) == x


@pytest.mark.parametrize("q", range(6))
def test_functoriality(q):
    sub, inc = C.z2_in_z4(), C.z4_in_z4xz2()
    assert induced_map(compose(inc, sub), q) == induced_map(inc, q) @ induced_map(sub, q)
    G = C.Z4xZ2()
    assert induced_map(identity_hom(G), q) == identity_map(homology(G, None, q))


@pytest.mark.parametrize("q", range(1, 6))
def test_automorphism_actions(q):
    f = induced_map(inversion_aut(C.Z4xZ2()), q)
    assert (f @ f) == identity_map(f.source)
    for g in ("i", "j"):
        c = induced_map(conjugation_aut(C.Q8(), g), q)
        assert c == identity_map(c.source)


def test_hmap_algebra():
    A = AbGroup((4,))
    double = scalar_map(A, 2)
    K, k = double.kernel()
    Q, _ = double.cokernel()
    assert K.describe() == Q.describe() == "Z/2"
    assert k.is_injective()
    assert not double.is_injective() and not double.is_surjective()
    assert scalar_map(A, 3).is_isomorphism()
    assert (double + double) == scalar_map(A, 0)
    assert HMap(A, A, IntMatrix.from_rows([[1]])).is_well_defined()


def test_ill_defined_map_detected():
    A, B = AbGroup((2,)), AbGroup((4,))
    assert not HMap(A, B, IntMatrix.from_rows([[1]])).is_well_defined()
    assert HMap(A, B, IntMatrix.from_rows([[2]])).is_well_defined()


@given(st.lists(st.integers(-20, 20), min_size=2, max_size=2),
       st.lists(st.integers(-20, 20), min_size=2, max_size=2))
@settings(max_examples=100, deadline=None)
def test_class_arithmetic(a, b):
    A = AbGroup((2, 4))
    x, y = A.element(a), A.element(b)
    assert x + y == y + x
    assert (x + y) - y == x
    assert (x - x).is_zero()
    assert 4 * x == A.zero()
    assert x.order() in (1, 2, 4)


def test_cohomology_pullback_functorial():
    inc = C.quaternion_cyclic()
    tau = C.quaternion_deck()
    for q in (2, 4):
        f = cohomology_pullback(inc, q)
        g = cohomology_pullback(tau, q)
        # contravariance: (inc o tau)^* = tau^* o inc^*
        assert g @ f == cohomology_pullback(compose(inc, tau), q)


@pytest.mark.parametrize("make", [C.Z4, C.Z4xZ2, C.Q8], ids=["Z4", "Z4xZ2", "Q8"])
def test_cup_graded_commutative(make):
    G = make()
    R = best_resolution(G, 8)
    for p1, p2 in product(range(1, 4), repeat=2):
        if p1 + p2 > 5:
            continue
        for c1, c2 in product(cohomology(G, None, p1, R).gens(), cohomology(G, None, p2, R).gens()):
            sign = -1 if p1 * p2 % 2 else 1
            assert cup(c1, c2) == sign * cup(c2, c1)


def test_cup_associative_z4xz2():
    G = C.Z4xZ2()
    R = best_resolution(G, 8)
    gens = [c for p in (1, 2) for c in cohomology(G, None, p, R).gens()]
    for a, b, c in product(gens, repeat=3):
        if a.home.degree + b.home.degree + c.home.degree <= 6:
            assert cup(cup(a, b), c) == cup(a, cup(b, c))


def test_periodicity_generator():
    e = degree_two_generator(C.Z4())
    assert e.order() == 4
    ee = cup(e, e)
    assert ee.order() == 4
    for q in (3, 5, 7):
        f = cap_map(e, q)
        assert f.is_isomorphism(), q


def test_cap_unit():
    G = C.Q8()
    R = best_resolution(G, 8)
    one = cohomology(G, None, 0, R).gens()[0]
    for q in range(4):
        for x in homology(G, None, q, R).gens():
            assert cap(x, one) == x


def test_euler_class_weights():
    E = euler_class_cyclic(C.rep_A_fiber())
    assert E.weight in (1, -1) and E.is_generator()


def test_cap_rejects_wrong_degrees():
    e = degree_two_generator(C.Z4())
    x = homology(C.Z4(), None, 1, e.home.resolution).gens()[0]
    with pytest.raises(ValueError):
        cap(x, e)
    with pytest.raises(TypeError):
        cap(e, e)
