"""Acceptance criteria 1-10.  Every test is tagged with its criterion; the
terminal summary prints one pass/fail line per criterion.

Pinned tolerances: all comparisons are exact integer or string equality.
The only non-exact quantities are wall-clock limits, listed here.
"""

from __future__ import annotations

import json
import random
import subprocess
import sys
import time
from fractions import Fraction
from itertools import combinations, product

import pytest

from twistcoh import catalog as C
from twistcoh import homology as H
from twistcoh import resolutions as RS
from twistcoh.groups import inversion_aut
from twistcoh.homology import (cap, cohomology, cohomology_pullback, cup, deck_map,
                               homology, identity_map, induced_map, transfer_index2)
from twistcoh.linalg import IntMatrix, smith_normal_form
from twistcoh.modules import sign_module, trivial_module, twisted
from twistcoh.suites import run_all, run_suite, run_theorem3
from twistcoh.wang import (euler_class, extension_map, fiber_restriction, mapping_torus_homology,
                           torus_transfer, wang_cap, wang_cap_map, wang_cohomology, wang_deck,
                           wang_homology, wang_induced)

# wall-clock limits, seconds
LIMIT_Z4_HOMOLOGY = 1.0      # criterion 1
LIMIT_THEOREM3 = 1.0         # criterion 7, replay alone with dependencies warm
LIMIT_FULL_RUN = 300.0       # every criterion must finish well inside five minutes

SNF_SAMPLES = 200
SNF_MAX_DIM = 6
SNF_MAX_ENTRY = 9


def unit_mod4(a: int) -> bool:
    return a % 4 in (1, 3)


# -- 1 ---------------------------------------------------------------------------

@pytest.mark.criterion(1)
def test_z4_homology_values(fresh_caches):
    t0 = time.perf_counter()
    got = {q: homology(C.Z4(), None, q).describe() for q in range(1, 8)}
    elapsed = time.perf_counter() - t0
    assert got == {1: "Z/4", 2: "0", 3: "Z/4", 4: "0", 5: "Z/4", 6: "0", 7: "Z/4"}
    assert elapsed < LIMIT_Z4_HOMOLOGY


# -- 2 ---------------------------------------------------------------------------

@pytest.mark.criterion(2)
@pytest.mark.parametrize("q,sign", [(1, -1), (3, 1), (5, -1), (7, 1)])
def test_inversion_sign(q, sign):
    f = induced_map(inversion_aut(C.Z4()), q)
    assert f.matrix.shape == (1, 1)
    assert f.matrix.data[0][0] % 4 == sign % 4


# -- 3 ---------------------------------------------------------------------------

@pytest.mark.criterion(3)
@pytest.mark.parametrize("m", [0, 1])
@pytest.mark.parametrize("twist,offset", [(1, 1), (0, 3)])
def test_extension_groups_and_edge_iso(m, twist, offset):
    E = C.Z4_Z()
    M = twisted(E, twist)
    q = 4 * m + offset
    W = wang_homology(E, M, q)
    assert W.total_description() == "Z/4"
    assert mapping_torus_homology(E, M, q).describe() == "Z/4"
    i = wang_induced(E, M, q)
    assert i.source.describe() == "Z/4"
    assert i.is_isomorphism()


# -- 4 ---------------------------------------------------------------------------

@pytest.mark.criterion(4)
def test_restriction_h2_and_euler_generator():
    E = C.Z4_Z()
    Ztw = sign_module(E)
    assert wang_cohomology(E, Ztw, 2).total_description() == "Z/4"
    res = fiber_restriction(E, Ztw, 2)
    assert res.target.describe() == "Z/4"
    assert res.is_isomorphism()
    e = euler_class(C.rep_A())
    assert e.module.name == "Ztw"
    assert e.fiber_class.order() == 4


@pytest.mark.criterion(4)
@pytest.mark.parametrize("q,src,dst", [(5, "Ztw", "Z"), (3, "Z", "Ztw")])
def test_cap_with_euler_class_is_iso(q, src, dst):
    E = C.Z4_Z()
    M = sign_module(E) if src == "Ztw" else trivial_module(E)
    W = wang_homology(E, M, q)
    f = wang_cap_map(W, euler_class(C.rep_A()))
    assert W.left.describe() == f.target.describe() == "Z/4"
    assert unit_mod4(f.matrix.data[0][0])
    assert f.is_isomorphism() and (-f).is_isomorphism()
    N = twisted(E, 0 if src == "Ztw" else 1)
    assert N.name == dst
    assert wang_homology(E, N, q - 2).total_description() == "Z/4"


# -- 5 ---------------------------------------------------------------------------

@pytest.mark.criterion(5)
def test_quaternion_deck_is_minus_one():
    tau = C.quaternion_deck()
    assert induced_map(tau, 1).matrix.tolist() == [[3]]
    assert cohomology_pullback(tau, 2).matrix.tolist() == [[3]]
    assert deck_map(C.quaternion_cyclic(), 1).matrix.tolist() == [[3]]


@pytest.mark.criterion(5)
@pytest.mark.parametrize("q", range(6))
def test_diagonal_deck_is_identity(q):
    d = deck_map(C.z4_in_z4xz2(), q)
    assert d == identity_map(d.source)
    sub = C.ext_z4_in_z4xz2()
    for k in (0, 1):
        assert wang_deck(sub, q, twisted(sub.target, k)).is_identity()


# -- 6 ---------------------------------------------------------------------------

def _e0_pair():
    e0 = euler_class(C.rep_A()).pullback(C.ext_first_projection())
    return e0, e0.pullback(C.ext_swap())


@pytest.mark.criterion(6)
@pytest.mark.parametrize("q,k", list(product((3, 5, 7), (0, 1))))
def test_quaternion_transfer_caps_anticommute(q, k):
    E = C.Z4xZ4_Z()
    e0, te0 = _e0_pair()
    W = wang_homology(E, twisted(E, k), q)
    I1 = W.edge @ induced_map(C.antidiagonal(), q)
    xs = {I1(u) for u in I1.source.elements()}
    assert len(xs) > 1
    for x in xs:
        assert wang_cap(x, W, te0, strict=False) == -wang_cap(x, W, e0, strict=False)


@pytest.mark.criterion(6)
@pytest.mark.parametrize("q,k", list(product((3, 5, 7), (0, 1))))
def test_diagonal_transfer_caps_agree_and_images_even(q, k):
    E = C.Z4xZ4_Z()
    e0, te0 = _e0_pair()
    M = twisted(E, k)
    W = wang_homology(E, M, q)
    I2 = extension_map(C.ext_diagonal(), q, M).left
    ys = {I2(v) for v in I2.source.elements()}
    assert len(ys) > 1
    for y in ys:
        assert wang_cap(y, W, te0, strict=False) == wang_cap(y, W, e0, strict=False)
    sub = C.ext_z4_in_z4xz2()
    tt = torus_transfer(sub, q, twisted(sub.target, k))
    for z in tt.big.elements():
        assert tt.transfer(z).is_even()


@pytest.mark.criterion(6)
@pytest.mark.parametrize("name", ["corQ", "corDiagA", "corDiagB"])
def test_corollary_suites(name):
    r = run_suite(name)
    assert r.passed, [c.to_json() for c in r.claims if not c.passed] or r.error


# -- 7 ---------------------------------------------------------------------------

@pytest.mark.criterion(7)
def test_theorem_replay():
    reports = run_theorem3()
    assert [r.suite for r in reports] == ["corQ", "corDiagB", "lemma1d", "theorem3"]
    assert all(r.passed for r in reports)
    final = reports[-1]
    concl = {c.id: c for c in final.claims}["conclusion"]
    assert concl.computed == "even"
    assert {c.id: c for c in final.claims}["eta-even"].computed == [0, 2]
    # dependencies are now warm; time the replay by itself
    t0 = time.perf_counter()
    again = run_suite("theorem3")
    assert again.passed
    assert time.perf_counter() - t0 < LIMIT_THEOREM3


@pytest.mark.criterion(7)
def test_enumeration_branches():
    adm = [(u, w) for u in range(4) for w in (0, 2) if (u + w) % 4 == (-u + w) % 4]
    assert sorted({u for u, _ in adm}) == [0, 2]
    assert (1, 0) not in adm and (1, 2) not in adm
    assert (2, 0) in adm and (2 + 0) % 4 == (-2 + 0) % 4 == 2


# -- 8 ---------------------------------------------------------------------------

@pytest.mark.criterion(8)
@pytest.mark.parametrize("name", ["reps", "qEmbed", "groupIdentity"])
def test_representation_suites(name):
    r = run_suite(name)
    assert r.passed, [c.to_json() for c in r.claims if not c.passed] or r.error


@pytest.mark.criterion(8)
def test_quaternion_embedding_direct():
    f = C.q8_embedding()
    Q, P = f.source, f.target
    f.check()
    assert f.is_injective
    assert P.mul(f(Q["i"]), f(Q["j"])) == f(Q["k"])


# -- 9 ---------------------------------------------------------------------------

def _det(rows) -> int:
    a = [[Fraction(x) for x in r] for r in rows]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c] != 0), None)
        if p is None:
            return 0
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            for k in range(c, n):
                a[r][k] -= f * a[c][k]
    return int(det)


def naive_invariant_factors(rows) -> list[int]:
    """Determinantal divisors: d_k = gcd of all k x k minors, factors d_k / d_{k-1}."""
    from math import gcd
    m, n = len(rows), len(rows[0])
    out, prev = [], 1
    for k in range(1, min(m, n) + 1):
        g = 0
        for rs in combinations(range(m), k):
            for cs in combinations(range(n), k):
                g = gcd(g, _det([[rows[i][j] for j in cs] for i in rs]))
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return out


@pytest.mark.criterion(9)
def test_snf_against_determinantal_divisors():
    rng = random.Random(20240917)
    agree = 0
    for _ in range(SNF_SAMPLES):
        m, n = rng.randint(1, SNF_MAX_DIM), rng.randint(1, SNF_MAX_DIM)
        rows = [[rng.randint(-SNF_MAX_ENTRY, SNF_MAX_ENTRY) for _ in range(n)] for _ in range(m)]
        A = IntMatrix.from_rows(rows)
        S = smith_normal_form(A)
        ok = S.invariant_factors == naive_invariant_factors(rows) and S.P @ A @ S.Q == S.D
        agree += ok
    assert agree == SNF_SAMPLES


@pytest.mark.criterion(9)
def test_every_emitted_resolution_is_a_resolution():
    reports = run_all()
    assert all(r.passed for r in reports)
    seen = {}
    for G, R in RS._memory.values():
        seen[id(R)] = R
    for R, _, restricted in H._restrictions.values():
        seen[id(R)] = R
        seen[id(restricted)] = restricted
    assert len(seen) >= 6
    for R in seen.values():
        assert R.check_dd(), R
        assert R.check_exact(), R


@pytest.mark.criterion(9)
@pytest.mark.parametrize("q", range(7))
def test_builder_independence_z4(q):
    G = C.Z4()
    P = RS.periodic_resolution(G, 8)
    Gn = RS.generic_resolution(G, 8, seed=3)
    assert Gn.builder == "generic"
    for M in (None,):
        assert homology(G, M, q, P).describe() == homology(G, M, q, Gn).describe()
        assert cohomology(G, M, q, P).describe() == cohomology(G, M, q, Gn).describe()


LIFT_CASES = [
    ("inversion-Z4", lambda: inversion_aut(C.Z4()), 7),
    ("quaternion-deck", C.quaternion_deck, 7),
    ("swap-Z4xZ4", C.swap, 5),
    ("diagonal", C.diagonal, 5),
    ("Z4-in-Q8", C.quaternion_cyclic, 5),
]


@pytest.mark.criterion(9)
@pytest.mark.parametrize("name,make,top", LIFT_CASES, ids=[c[0] for c in LIFT_CASES])
def test_lift_independence(name, make, top):
    phi = make()
    for q in range(top + 1):
        a = induced_map(phi, q, seed=11)
        b = induced_map(phi, q, seed=29)
        assert a == b, (name, q)


TRANSFER_PAIRS = [
    ("Z4<Q8", C.quaternion_cyclic, 5),
    ("Z4<Z4xZ2", C.z4_in_z4xz2, 5),
    ("Z2<Z4", C.z2_in_z4, 5),
    ("Z4xZ4<(Z4xZ4):Z2", C.normal_z4xz4, 3),
]


@pytest.mark.criterion(9)
@pytest.mark.parametrize("name,make,top", TRANSFER_PAIRS, ids=[p[0] for p in TRANSFER_PAIRS])
def test_transfer_contracts(name, make, top):
    inc = make()
    for q in range(top + 1):
        tr = transfer_index2(inc, q)
        up = induced_map(inc, q)
        assert up @ tr == identity_map(up.target).scale(2), (name, q)
        assert tr @ up == identity_map(up.source) + deck_map(inc, q), (name, q)


def _primary(factors) -> list[int]:
    out = []
    for n in factors:
        p = 2
        while n > 1:
            k = 1
            while n % p == 0:
                n //= p
                k *= p
            if k > 1:
                out.append(k)
            p += 1
    return sorted(out)


def _kunneth(a: list, b: list, q: int) -> tuple[int, list[int]]:
    """a[i], b[i] = (free rank, torsion list) of H_i of the two factors."""
    from math import gcd
    free, tors = 0, []
    for i in range(q + 1):
        (fa, ta), (fb, tb) = a[i], b[q - i]
        free += fa * fb
        tors += [x for x in ta for _ in range(fb)] + [y for y in tb for _ in range(fa)]
        tors += [gcd(x, y) for x in ta for y in tb]
    for i in range(q):
        (_, ta), (_, tb) = a[i], b[q - 1 - i]
        tors += [gcd(x, y) for x in ta for y in tb]
    return free, _primary(tors)


@pytest.mark.criterion(9)
def test_kunneth_z4xz2():
    G = C.Z4xZ2()
    R = RS.generic_resolution(G, 7, seed=5)

    def data(K, i):
        X = homology(K, None, i)
        return X.free_rank, [d for d in X.invariant_factors if d > 1]

    a = [data(C.Z4(), i) for i in range(6)]
    b = [data(C.Z2(), i) for i in range(6)]
    for q in range(6):
        X = homology(G, None, q, R)
        assert (X.free_rank, _primary(X.invariant_factors)) == _kunneth(a, b, q), q


CAP_GROUPS = [("Z4", C.Z4), ("Z4xZ2", C.Z4xZ2), ("Q8", C.Q8)]


@pytest.mark.criterion(9)
@pytest.mark.parametrize("name,make", CAP_GROUPS, ids=[g[0] for g in CAP_GROUPS])
def test_cap_cup_compatibility(name, make):
    G = make()
    R = RS.best_resolution(G, 8)
    checked = 0
    for p1, p2 in product(range(1, 4), repeat=2):
        for c1, c2 in product(cohomology(G, None, p1, R).gens(), cohomology(G, None, p2, R).gens()):
            for q in range(p1 + p2, 6):
                for x in homology(G, None, q, R).gens():
                    assert cap(cap(x, c1), c2).coords == cap(x, cup(c1, c2)).coords
                    checked += 1
    assert checked > 0


# -- 10 --------------------------------------------------------------------------

def _verify_all_json(tmp_path, tag) -> bytes:
    out = tmp_path / ("run-%s.json" % tag)
    proc = subprocess.run([sys.executable, "-m", "twistcoh", "verify", "--suite", "all",
                           "--format", "json", "--output", str(out),
                           "--cache-dir", str(tmp_path / ("cache-" + tag))],
                          capture_output=True, timeout=LIMIT_FULL_RUN)
    assert proc.returncode == 0, proc.stderr.decode()
    return out.read_bytes()


@pytest.mark.criterion(10)
@pytest.mark.slow
def test_two_runs_byte_identical(tmp_path):
    a = _verify_all_json(tmp_path, "a")
    b = _verify_all_json(tmp_path, "b")
    assert a == b
    doc = json.loads(a)
    assert doc["verdict"] == "pass"
    assert json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=True) + "\n" == a.decode()
