from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Matrix
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from twistcoh.linalg import (AbelianPresentation, IntMatrix, Lattice, cokernel_presentation,
                             hermite_normal_form, hom_kernel, kernel_basis, rank,
                             smith_normal_form, solve_integer)


@st.composite
def matrices(draw, max_dim=6, max_entry=9):
    m = draw(st.integers(1, max_dim))
    n = draw(st.integers(1, max_dim))
    rows = draw(st.lists(st.lists(st.integers(-max_entry, max_entry), min_size=n, max_size=n),
                         min_size=m, max_size=m))
    return IntMatrix.from_rows(rows)


def is_unimodular(U: IntMatrix) -> bool:
    return abs(U.det()) == 1


def test_shape_checks():
    with pytest.raises(ValueError):
        IntMatrix(2, 2, [[1, 2]])
    A = IntMatrix.from_rows([[1, 2], [3, 4]])
    with pytest.raises(ValueError):
        A @ IntMatrix.identity(3)


def test_basic_arithmetic():
    A = IntMatrix.from_rows([[1, 2], [3, 4]])
    assert A.det() == -2
    assert (A @ IntMatrix.identity(2)) == A
    assert A.T.tolist() == [[1, 3], [2, 4]]
    assert (A - A).is_zero()
    assert A.kron(IntMatrix.identity(1)) == A
    assert A.apply([1, 1]) == [3, 7]


@given(matrices())
@settings(max_examples=150, deadline=None)
def test_hnf_properties(A):
    H, U = hermite_normal_form(A)
    assert U @ A == H
    assert is_unimodular(U)
    pivots = []
    seen_zero = False
    for row in H.data:
        nz = [j for j, x in enumerate(row) if x]
        if not nz:
            seen_zero = True
            continue
        assert not seen_zero, "zero rows must be at the bottom"
        p = nz[0]
        assert row[p] > 0
        if pivots:
            assert p > pivots[-1]
        pivots.append(p)
    for i, p in enumerate(pivots):
        for r in range(i):
            assert 0 <= H.data[r][p] < H.data[i][p]


@given(matrices())
@settings(max_examples=150, deadline=None)
def test_snf_properties(A):
    S = smith_normal_form(A)
    assert S.P @ A @ S.Q == S.D
    assert is_unimodular(S.P) and is_unimodular(S.Q)
    assert S.P @ S.P_inv == IntMatrix.identity(A.rows)
    d = [x for x in S.diagonal if x]
    for a, b in zip(d, d[1:]):
        assert a > 0 and b % a == 0
    for i in range(S.D.rows):
        for j in range(S.D.cols):
            if i != j:
                assert S.D.data[i][j] == 0


@given(matrices(max_dim=5))
@settings(max_examples=60, deadline=None)
def test_snf_matches_sympy(A):
    ours = [x for x in smith_normal_form(A).diagonal if x]
    M = Matrix(A.tolist())
    D = sympy_snf(M)
    theirs = sorted(abs(D[i, i]) for i in range(min(D.shape)) if D[i, i] != 0)
    assert sorted(ours) == theirs
    assert rank(A) == M.rank()


@given(matrices())
@settings(max_examples=150, deadline=None)
def test_kernel_basis(A):
    K = kernel_basis(A)
    assert (A @ K).is_zero()
    assert K.cols == A.cols - rank(A)
    # saturated: the kernel basis spans a primitive sublattice
    if K.cols:
        assert [x for x in smith_normal_form(K).diagonal if x] == [1] * K.cols


@given(matrices(), st.lists(st.integers(-5, 5), min_size=6, max_size=6))
@settings(max_examples=150, deadline=None)
def test_solve_consistent_rhs(A, x):
    x = x[:A.cols]
    b = A.apply(x)
    y = solve_integer(A, b)
    assert y is not None
    assert A.apply(y) == b


def test_solve_detects_no_integer_solution():
    A = IntMatrix.from_rows([[2, 0], [0, 2]])
    assert solve_integer(A, [1, 0]) is None
    assert solve_integer(A, [2, 4]) == [1, 2]


def test_cokernel_presentation_cyclic():
    P = cokernel_presentation(2, IntMatrix.from_rows([[2, 0], [0, 6]]))
    assert isinstance(P, AbelianPresentation)
    assert P.invariant_factors == (2, 6)
    assert P.describe() == "Z/2 + Z/6"
    assert P.order() == 12
    free = cokernel_presentation(3, IntMatrix.from_rows([[4], [0], [0]]))
    assert free.describe() == "Z/4 + Z^2"
    assert free.order() is None


def test_hom_kernel_of_doubling_on_z4():
    pres, incl = hom_kernel(IntMatrix.from_rows([[2]]), (4,), (4,))
    assert pres.describe() == "Z/2"
    assert incl.tolist() in ([[2]], [[-2]])


def test_lattice_membership():
    L = Lattice(2)
    assert L.add([2, 0])
    assert L.add([0, 3])
    assert not L.add([4, 6])
    assert [2, 3] in L
    assert [1, 0] not in L
    L.add_many([[1, 0]])
    assert [1, 3] in L and len(L) == 2
