"""The concrete family: Z4, Q8, Z4xZ2, Z4xZ4, (Z4xZ4)x|Z2, their Z-extensions,
the maps between them, and their signed-permutation representations.

Notation for elements of (Z4xZ4)x|Z2 is ((x,y),s); the Z2 generator t swaps
the two Z4 factors, and the Z generator inverts both of them.
"""

from __future__ import annotations

from functools import lru_cache

from .groups import (ExtensionHom, FiniteGroup, GroupHom, MatrixRep, ZExtension,
                     conjugation_aut, cyclic_group, direct_product, inversion_aut,
                     make_hom, quaternion_group, restrict_hom, semidirect_z2,
                     swap_aut, trivial_group)
from .linalg import IntMatrix


@lru_cache(maxsize=None)
def Z2() -> FiniteGroup:
    return cyclic_group(2, "t")


@lru_cache(maxsize=None)
def Z4() -> FiniteGroup:
    return cyclic_group(4, "b")


@lru_cache(maxsize=None)
def Q8() -> FiniteGroup:
    return quaternion_group()


@lru_cache(maxsize=None)
def Z4xZ2() -> FiniteGroup:
    labels = ["(%d,%d)" % divmod(x, 2) for x in range(8)]
    return direct_product(Z4(), Z2(), gen_names=["b", "t"], name="Z4xZ2", labels=labels)


@lru_cache(maxsize=None)
def Z4xZ4() -> FiniteGroup:
    labels = ["(%d,%d)" % divmod(x, 4) for x in range(16)]
    return direct_product(Z4(), Z4(), gen_names=["b1", "b2"], name="Z4xZ4", labels=labels)


@lru_cache(maxsize=None)
def Z4xZ4_sd_Z2() -> FiniteGroup:
    N = Z4xZ4()
    labels = ["((%d,%d),%d)" % (x // 8, (x // 2) % 4, x % 2) for x in range(32)]
    return semidirect_z2(N, swap_aut(N), gen="t", name="(Z4xZ4):Z2", labels=labels)


def trivial() -> FiniteGroup:
    return trivial_group()


GROUP_PRESETS = {
    "1": trivial,
    "Z2": Z2,
    "Z4": Z4,
    "Q8": Q8,
    "Z4xZ2": Z4xZ2,
    "Z4xZ4": Z4xZ4,
    "Z4xZ4_sd_Z2": Z4xZ4_sd_Z2,
}


def pelt(x: int, y: int, s: int) -> int:
    """Index of ((x,y),s) in (Z4xZ4)x|Z2."""
    return 2 * ((x % 4) * 4 + (y % 4)) + s


def zz(x: int, y: int) -> int:
    """Index of (x,y) in Z4xZ4."""
    return (x % 4) * 4 + (y % 4)


# -- extensions by Z ----------------------------------------------------------

@lru_cache(maxsize=None)
def Z4_Z() -> ZExtension:
    G = Z4()
    return ZExtension(G, inversion_aut(G), name="Z4:Z")


@lru_cache(maxsize=None)
def Z4xZ2_Z() -> ZExtension:
    G = Z4xZ2()
    return ZExtension(G, make_hom(G, G, {"b": "(3,0)", "t": "t"}, name="theta"), name="(Z4xZ2):Z")


@lru_cache(maxsize=None)
def Z4xZ4_Z() -> ZExtension:
    G = Z4xZ4()
    return ZExtension(G, inversion_aut(G), name="(Z4xZ4):Z")


@lru_cache(maxsize=None)
def P_Z() -> ZExtension:
    G = Z4xZ4_sd_Z2()
    theta = make_hom(G, G, {"b1": pelt(3, 0, 0), "b2": pelt(0, 3, 0), "t": "t"}, name="theta")
    return ZExtension(G, theta, name="((Z4xZ4):Z2):Z")


EXTENSION_PRESETS = {
    "Z4:Z": Z4_Z,
    "(Z4xZ2):Z": Z4xZ2_Z,
    "(Z4xZ4):Z": Z4xZ4_Z,
    "((Z4xZ4):Z2):Z": P_Z,
}

EXTENSION_ALIASES = {
    "Z4⋊Z": "Z4:Z", "Z4sdZ": "Z4:Z",
    "(Z4xZ2)⋊Z": "(Z4xZ2):Z", "Z4xZ2sdZ": "(Z4xZ2):Z",
    "(Z4xZ4)⋊Z": "(Z4xZ4):Z", "Z4xZ4sdZ": "(Z4xZ4):Z",
    "((Z4xZ4)⋊Z2)⋊Z": "((Z4xZ4):Z2):Z", "Z4xZ4_sd_Z2sdZ": "((Z4xZ4):Z2):Z",
}


def lookup_extension(name: str) -> ZExtension | None:
    name = EXTENSION_ALIASES.get(name.strip(), name.strip())
    f = EXTENSION_PRESETS.get(name)
    return f() if f else None


# -- homomorphisms and subgroups ------------------------------------------------

@lru_cache(maxsize=None)
def q8_embedding() -> GroupHom:
    """Q8 -> (Z4xZ4)x|Z2:  i -> ((1,-1),0),  j -> ((1,1),1)."""
    return make_hom(Q8(), Z4xZ4_sd_Z2(), {"i": pelt(1, -1, 0), "j": pelt(1, 1, 1)}, name="I1")


@lru_cache(maxsize=None)
def z4xz2_embedding() -> GroupHom:
    """Z4xZ2 -> (Z4xZ4)x|Z2:  b -> ((1,1),0),  t -> ((0,0),1)."""
    return make_hom(Z4xZ2(), Z4xZ4_sd_Z2(), {"b": pelt(1, 1, 0), "t": pelt(0, 0, 1)}, name="I2")


@lru_cache(maxsize=None)
def normal_z4xz4() -> GroupHom:
    """Z4xZ4 as the index-2 subgroup of (Z4xZ4)x|Z2."""
    return make_hom(Z4xZ4(), Z4xZ4_sd_Z2(), {"b1": pelt(1, 0, 0), "b2": pelt(0, 1, 0)}, name="N")


@lru_cache(maxsize=None)
def quaternion_cyclic() -> GroupHom:
    """<i> = Z4 inside Q8."""
    return make_hom(Z4(), Q8(), {"b": "i"}, name="<i>")


@lru_cache(maxsize=None)
def quaternion_deck() -> GroupHom:
    """Conjugation by j restricted to <i>."""
    inc = quaternion_cyclic()
    return restrict_hom(conjugation_aut(Q8(), "j"), inc, inc)


@lru_cache(maxsize=None)
def antidiagonal() -> GroupHom:
    """Z4 -> Z4xZ4, b -> (1,-1): the lift of <i> to the double cover."""
    return make_hom(Z4(), Z4xZ4(), {"b": zz(1, -1)}, name="I1bar")


@lru_cache(maxsize=None)
def diagonal() -> GroupHom:
    """Z4 -> Z4xZ4, b -> (1,1)."""
    return make_hom(Z4(), Z4xZ4(), {"b": zz(1, 1)}, name="I2bar")


@lru_cache(maxsize=None)
def first_projection() -> GroupHom:
    return make_hom(Z4xZ4(), Z4(), {"b1": "b", "b2": "e"}, name="pr1")


@lru_cache(maxsize=None)
def swap() -> GroupHom:
    """Deck involution of Z4xZ4 inside (Z4xZ4)x|Z2 (conjugation by t)."""
    c = conjugation_aut(Z4xZ4_sd_Z2(), "t")
    inc = normal_z4xz4()
    return restrict_hom(c, inc, inc)


@lru_cache(maxsize=None)
def z4_in_z4xz2() -> GroupHom:
    return make_hom(Z4(), Z4xZ2(), {"b": "b"}, name="pi")


@lru_cache(maxsize=None)
def z4xz2_to_z4() -> GroupHom:
    """The quotient killing Z2; a retraction of z4_in_z4xz2."""
    return make_hom(Z4xZ2(), Z4(), {"b": "b", "t": "e"}, name="s")


@lru_cache(maxsize=None)
def z2_in_z4() -> GroupHom:
    return make_hom(Z2(), Z4(), {"t": "b^2"}, name="Z2<Z4")


# -- extension maps -------------------------------------------------------------

@lru_cache(maxsize=None)
def ext_diagonal() -> ExtensionHom:
    return ExtensionHom(Z4_Z(), Z4xZ4_Z(), diagonal(), name="I2bar")


@lru_cache(maxsize=None)
def ext_first_projection() -> ExtensionHom:
    return ExtensionHom(Z4xZ4_Z(), Z4_Z(), first_projection(), name="pr1")


@lru_cache(maxsize=None)
def ext_swap() -> ExtensionHom:
    return ExtensionHom(Z4xZ4_Z(), Z4xZ4_Z(), swap(), name="tau")


@lru_cache(maxsize=None)
def ext_z4_in_z4xz2() -> ExtensionHom:
    return ExtensionHom(Z4_Z(), Z4xZ2_Z(), z4_in_z4xz2(), name="pi")


@lru_cache(maxsize=None)
def ext_z4xz2_to_z4() -> ExtensionHom:
    return ExtensionHom(Z4xZ2_Z(), Z4_Z(), z4xz2_to_z4(), name="s")


@lru_cache(maxsize=None)
def ext_z4xz2_in_P() -> ExtensionHom:
    return ExtensionHom(Z4xZ2_Z(), P_Z(), z4xz2_embedding(), name="I2")


@lru_cache(maxsize=None)
def ext_normal_in_P() -> ExtensionHom:
    return ExtensionHom(Z4xZ4_Z(), P_Z(), normal_z4xz4(), name="cover")


# -- representations --------------------------------------------------------------

ROT = IntMatrix.from_rows([[0, -1], [1, 0]])
FLIP = IntMatrix.from_rows([[0, 1], [1, 0]])


def rep_A() -> MatrixRep:
    """The plane representation of Z4 x| Z: b is a quarter turn, the Z generator a reflection."""
    return MatrixRep(Z4_Z(), 2, {"b": ROT}, theta_image=FLIP, name="A")


def _block(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    rows = [r + [0, 0] for r in a.data] + [[0, 0] + r for r in b.data]
    return IntMatrix.from_rows(rows)


I2 = IntMatrix.identity(2)
SWAP4 = IntMatrix.from_rows([[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]])


def rep_A2() -> MatrixRep:
    """The 4-dimensional representation of ((Z4xZ4)x|Z2)x|Z."""
    return MatrixRep(P_Z(), 4, {
        "b1": IntMatrix.from_rows([[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]),
        "b2": IntMatrix.from_rows([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]]),
        "t": SWAP4,
    }, theta_image=IntMatrix.from_rows([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]),
        name="A2")


QUATERNION_MATRICES = {
    "i": IntMatrix.from_rows([[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]]),
    "j": IntMatrix.from_rows([[0, 0, 0, -1], [0, 0, 1, 0], [0, -1, 0, 0], [1, 0, 0, 0]]),
    "k": IntMatrix.from_rows([[0, 0, -1, 0], [0, 0, 0, -1], [1, 0, 0, 0], [0, 1, 0, 0]]),
}


def rep_Q8() -> MatrixRep:
    return MatrixRep(Q8(), 4, {"i": QUATERNION_MATRICES["i"], "j": QUATERNION_MATRICES["j"]},
                     name="A2|Q8")


def rep_Z4xZ2() -> MatrixRep:
    return MatrixRep(Z4xZ2(), 4, {
        "b": IntMatrix.from_rows([[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]]),
        "t": SWAP4,
    }, name="A2|Z4xZ2")


def rep_A_fiber() -> MatrixRep:
    """A restricted to the fiber Z4."""
    return MatrixRep(Z4(), 2, {"b": ROT}, name="A|Z4")
