from __future__ import annotations

import pytest

from twistcoh import catalog as C
from twistcoh.groups import GroupError, RelationError, compose
from twistcoh.linalg import IntMatrix
from twistcoh.modules import (GModule, GRingElement, character_module, orientation_module,
                              parse_module, restrict_module, sign_module, tensor, trivial_module,
                              twisted)


def test_trivial_and_sign():
    E = C.Z4_Z()
    Z, Ztw = trivial_module(E), sign_module(E)
    assert Z.is_trivial() and not Ztw.is_trivial()
    assert Ztw.theta_sign() == -1
    assert Ztw.character() == [1, 1, 1, 1]
    assert Ztw.fiber_module().name == "Z"


def test_twisted_powers_have_period_two():
    E = C.Z4_Z()
    assert twisted(E, 0).name == "Z"
    assert twisted(E, 1).name == "Ztw"
    assert twisted(E, 2).same_action(trivial_module(E))
    assert twisted(E, 3).same_action(sign_module(E))
    assert tensor(sign_module(E), sign_module(E)).name == "Ztw^2"


def test_module_functoriality():
    # restricting along a composite equals restricting twice
    M = character_module(C.Z4xZ2(), {"b": -1, "t": 1})
    inc = C.z4_in_z4xz2()
    sub = C.z2_in_z4()
    once = restrict_module(restrict_module(M, inc), sub)
    direct = restrict_module(M, compose(inc, sub))
    assert once.matrices == direct.matrices


def test_restrict_along_extension_map():
    E = C.Z4xZ4_Z()
    M = twisted(E, 1)
    R = restrict_module(M, C.ext_diagonal())
    assert R.group is C.Z4_Z()
    assert R.theta_sign() == -1


def test_orientation_modules():
    assert orientation_module(C.rep_A()).name == "Ztw"
    assert orientation_module(C.rep_A_fiber()).is_trivial()


def test_rejects_inconsistent_actions():
    Z2 = C.Z2()
    t = next(iter(Z2.generators))
    quarter_turn = IntMatrix.from_rows([[0, -1], [1, 0]])
    with pytest.raises(RelationError):
        GModule(Z2, 2, {t: quarter_turn})
    with pytest.raises(GroupError):
        GModule(C.Z4(), 1, {"b": IntMatrix.from_rows([[2]])})
    with pytest.raises(GroupError):
        GModule(C.Z4_Z(), 1, {"b": IntMatrix.from_rows([[1]])})


def test_sign_character_of_z4():
    M = GModule(C.Z4(), 1, {"b": IntMatrix.from_rows([[-1]])})
    G = C.Z4()
    assert M.character()[G["b"]] == -1
    assert M.character()[G.power(G["b"], 2)] == 1


def test_parse_module():
    E = C.Z4_Z()
    assert parse_module("Ztw^2", E).same_action(trivial_module(E))
    with pytest.raises(GroupError):
        parse_module("Ztw", C.Z4())
    with pytest.raises(GroupError):
        parse_module("Q", E)


def test_group_ring_arithmetic():
    G = C.Z4()
    b = G["b"]
    x = GRingElement.basis(G, b) + GRingElement.basis(G, G.identity, -1)
    assert x.augmentation() == 0
    N = sum((GRingElement.basis(G, g) for g in range(G.order)), GRingElement(G, [0] * 4))
    assert (x * N).is_zero()
    M = sign_module(C.Z4_Z()).fiber_module()
    assert x.act(M).tolist() == [[0]]
