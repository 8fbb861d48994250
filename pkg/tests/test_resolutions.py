from __future__ import annotations

import json

import pytest

from twistcoh import catalog as C
from twistcoh.errors import BudgetError
from twistcoh.groups import identity_hom, inversion_aut
from twistcoh.resolutions import (MAX_LENGTH, FreeResolution, ResolutionCache, best_resolution,
                                  diagonal_approx, generic_resolution, lift_chain_map,
                                  periodic_resolution, restrict_resolution, tensor_resolution)

BUILDERS = [
    ("periodic-Z4", lambda: periodic_resolution(C.Z4(), 8)),
    ("periodic-Z2", lambda: periodic_resolution(C.Z2(), 8)),
    ("generic-Z4", lambda: generic_resolution(C.Z4(), 6, seed=1)),
    ("generic-Q8", lambda: generic_resolution(C.Q8(), 6)),
    ("generic-Z4xZ2", lambda: generic_resolution(C.Z4xZ2(), 6)),
    ("tensor-Z4xZ2", lambda: tensor_resolution(periodic_resolution(C.Z4(), 6),
                                               periodic_resolution(C.Z2(), 6), C.Z4xZ2())),
    ("tensor-Z4xZ4", lambda: best_resolution(C.Z4xZ4(), 6)),
    ("generic-P", lambda: best_resolution(C.Z4xZ4_sd_Z2(), 4)),
    ("restricted-Q8-to-Z4", lambda: restrict_resolution(generic_resolution(C.Q8(), 5),
                                                        C.quaternion_cyclic())),
]


@pytest.mark.parametrize("name,make", BUILDERS, ids=[b[0] for b in BUILDERS])
def test_resolution_is_exact(name, make):
    R = make()
    assert R.check_dd()
    assert R.check_exact()


def test_periodic_ranks_are_minimal():
    assert periodic_resolution(C.Z4(), 5).ranks == [1] * 6


def test_budget_on_length():
    with pytest.raises(BudgetError):
        periodic_resolution(C.Z4(), MAX_LENGTH + 1)
    with pytest.raises(BudgetError):
        best_resolution(C.Z4(), MAX_LENGTH + 2)


def test_budget_on_width():
    with pytest.raises(BudgetError):
        generic_resolution(C.Z4xZ4_sd_Z2(), 8)


def test_json_roundtrip():
    R = generic_resolution(C.Q8(), 4, seed=2)
    doc = json.loads(json.dumps(R.to_json()))
    S = FreeResolution.from_json(C.Q8(), doc)
    assert S.ranks == R.ranks
    assert all(S.flat(q) == R.flat(q) for q in range(R.length + 1))
    with pytest.raises(ValueError):
        FreeResolution.from_json(C.Z4xZ2(), doc)


def test_disk_cache(tmp_path):
    cache = ResolutionCache(tmp_path)
    G = C.Q8()
    assert cache.get(G, "generic", 4, None) is None
    R = generic_resolution(G, 4)
    cache.put(R, 4)
    S = cache.get(G, "generic", 4, None)
    assert S is not None and S.ranks == R.ranks
    # a corrupt file reads as a miss
    for p in tmp_path.iterdir():
        p.write_text("{not json")
    assert cache.get(G, "generic", 4, None) is None


def test_generic_is_deterministic():
    a = generic_resolution(C.Q8(), 5)
    b = generic_resolution(C.Q8(), 5)
    assert a.to_json() == b.to_json()


@pytest.mark.parametrize("seed", [None, 4, 17])
def test_chain_map_lifts(seed):
    G = C.Z4()
    P = periodic_resolution(G, 6)
    Gn = generic_resolution(G, 6, seed=1)
    for phi in (identity_hom(G), inversion_aut(G)):
        assert lift_chain_map(phi, P, Gn, 6, seed).check()
        assert lift_chain_map(phi, Gn, P, 6, seed).check()
    f = lift_chain_map(C.quaternion_cyclic(), P, generic_resolution(C.Q8(), 6), 6, seed)
    assert f.check()


@pytest.mark.parametrize("make,length", [
    (lambda: periodic_resolution(C.Z4(), 7), 7),
    (lambda: generic_resolution(C.Q8(), 5), 5),
    (lambda: best_resolution(C.Z4xZ4(), 5), 5),
], ids=["Z4", "Q8", "Z4xZ4"])
def test_diagonal_approximation(make, length):
    D = diagonal_approx(make(), length)
    assert D.check()


def test_diagonal_budget():
    with pytest.raises(BudgetError):
        diagonal_approx(best_resolution(C.Z4xZ4_sd_Z2(), 3), 3)
