"""Coefficient modules: integer lattices with a group action.

A module over a Z-extension stores the fiber action and the action of the Z
generator separately; nothing ever needs the infinite action table.
"""

from __future__ import annotations

from typing import Mapping

from .groups import (ExtensionHom, FiniteGroup, GroupError, GroupHom, MatrixRep,
                     RelationError, ZExtension)
from .linalg import IntMatrix


class GModule:
    def __init__(self, group: FiniteGroup | ZExtension, rank: int,
                 action: Mapping[str, IntMatrix], theta_action: IntMatrix | None = None,
                 name: str = "M"):
        self.group = group
        self.rank = rank
        self.action = dict(action)
        self.theta_action = theta_action
        self.name = name
        G = self.fiber
        if set(self.action) != set(G.generators):
            raise GroupError("module must give a matrix for each generator of %s" % G.name)
        for k, M in self.action.items():
            if M.shape != (rank, rank) or M.det() not in (1, -1):
                raise GroupError("action of %s is not a unimodular %dx%d matrix" % (k, rank, rank))
        self.matrices = self._extend()
        if isinstance(group, ZExtension):
            T = theta_action
            if T is None or T.shape != (rank, rank) or T.det() not in (1, -1):
                raise GroupError("a module over an extension needs a unimodular theta action")
            th = group.theta
            for g in range(G.order):
                if T @ self.matrices[g] != self.matrices[th(g)] @ T:
                    raise RelationError("theta action is incompatible with the fiber action at %s"
                                        % G.labels[g])
        elif theta_action is not None:
            raise GroupError("theta action given for a module over a finite group")

    def _extend(self) -> list[IntMatrix]:
        G = self.fiber
        gen = {G[k]: v for k, v in self.action.items()}
        out: list[IntMatrix | None] = [None] * G.order
        out[G.identity] = IntMatrix.identity(self.rank)
        for y, x, g in G.bfs_words():
            out[y] = out[x] @ gen[g]
        for x in range(G.order):
            for k, g in G.generators.items():
                if out[G.mult[x][g]] != out[x] @ gen[g]:
                    raise RelationError("module action violates a relation at %s*%s"
                                        % (G.labels[x], k))
        return out  # type: ignore[return-value]

    @property
    def fiber(self) -> FiniteGroup:
        return self.group.fiber if isinstance(self.group, ZExtension) else self.group

    def __repr__(self):
        return "GModule(%s over %s, rank %d)" % (self.name, getattr(self.group, "name", "?"), self.rank)

    def matrix(self, g: int) -> IntMatrix:
        return self.matrices[g]

    def character(self) -> list[int]:
        """For a rank-1 module, the sign by which each fiber element acts."""
        if self.rank != 1:
            raise GroupError("character of a module of rank %d" % self.rank)
        return [M.data[0][0] for M in self.matrices]

    def theta_sign(self) -> int:
        if self.rank != 1 or self.theta_action is None:
            raise GroupError("theta sign needs a rank-1 module over an extension")
        return self.theta_action.data[0][0]

    def same_action(self, other: GModule) -> bool:
        return (self.rank == other.rank and self.matrices == other.matrices
                and self.theta_action == other.theta_action)

    def is_trivial(self) -> bool:
        ident = IntMatrix.identity(self.rank)
        return (all(M == ident for M in self.matrices)
                and (self.theta_action is None or self.theta_action == ident))

    def fiber_module(self) -> GModule:
        if not isinstance(self.group, ZExtension):
            return self
        out = GModule(self.fiber, self.rank, self.action, name=self.name + "|fiber")
        if out.is_trivial():
            out.name = "Z"
        return out


def _scalar(x: int) -> IntMatrix:
    return IntMatrix.from_rows([[x]])


def trivial_module(G: FiniteGroup | ZExtension) -> GModule:
    F = G.fiber if isinstance(G, ZExtension) else G
    theta = _scalar(1) if isinstance(G, ZExtension) else None
    return GModule(G, 1, {k: _scalar(1) for k in F.generators}, theta, name="Z")


def sign_module(E: ZExtension) -> GModule:
    """Rank one, fiber acting trivially, the Z generator acting by -1."""
    return GModule(E, 1, {k: _scalar(1) for k in E.fiber.generators}, _scalar(-1), name="Ztw")


def character_module(G: FiniteGroup, signs: Mapping[str, int], name: str = "Z-") -> GModule:
    return GModule(G, 1, {k: _scalar(signs.get(k, 1)) for k in G.generators}, name=name)


def tensor(M: GModule, N: GModule) -> GModule:
    if M.group is not N.group:
        raise GroupError("modules live over different groups")
    theta = None
    if M.theta_action is not None:
        theta = M.theta_action.kron(N.theta_action)
    name = "%s(x)%s" % (M.name, N.name)
    if M.rank == 1 and N.rank == 1:
        name = _rank_one_name(M, N)
    return GModule(M.group, M.rank * N.rank, {k: M.action[k].kron(N.action[k]) for k in M.action},
                   theta, name=name)


def _rank_one_name(M: GModule, N: GModule) -> str:
    def power(X):
        if X.name == "Z":
            return 0
        if X.name == "Ztw":
            return 1
        if X.name.startswith("Ztw^") and X.name[4:].isdigit():
            return int(X.name[4:])
        return None
    a, b = power(M), power(N)
    if a is None or b is None:
        return "%s(x)%s" % (M.name, N.name)
    return tw_name(a + b)


def tw_name(k: int) -> str:
    return "Z" if k == 0 else ("Ztw" if k == 1 else "Ztw^%d" % k)


def tensor_power(M: GModule, k: int) -> GModule:
    if k < 0:
        raise ValueError("tensor power must be nonnegative")
    out = trivial_module(M.group)
    for _ in range(k):
        out = tensor(out, M)
    if M.name == "Ztw":
        out.name = tw_name(k)
    return out


def twisted(E: ZExtension, k: int) -> GModule:
    """(Ztw)^k as a module over E."""
    return tensor_power(sign_module(E), k)


def restrict_module(M: GModule, phi: GroupHom | ExtensionHom) -> GModule:
    """Pull the action back along phi (whose target carries M)."""
    if isinstance(phi, ExtensionHom):
        if phi.target is not M.group:
            raise GroupError("extension map does not land in the module's group")
        inner = restrict_module(M.fiber_module(), phi.fiber_map)
        return GModule(phi.source, M.rank, inner.action, M.theta_action, name=M.name)
    if isinstance(M.group, ZExtension):
        if phi.target is not M.group.fiber:
            raise GroupError("map does not land in the fiber")
        M = M.fiber_module()
    if phi.target is not M.group:
        raise GroupError("map does not land in the module's group")
    G = phi.source
    return GModule(G, M.rank, {k: M.matrices[phi(g)] for k, g in G.generators.items()},
                   name=M.name)


def orientation_module(rep: MatrixRep) -> GModule:
    """The rank-one module g -> det(rep(g))."""
    G = rep.fiber
    mats = rep.all_images()
    action = {k: _scalar(mats[g].det()) for k, g in G.generators.items()}
    theta = None
    if isinstance(rep.group, ZExtension):
        theta = _scalar(rep.theta_image.det())
    out = GModule(rep.group, 1, action, theta, name="o(%s)" % rep.name)
    if out.is_trivial():
        out.name = "Z"
    elif theta is not None and all(x == 1 for x in out.character()) and theta.data[0][0] == -1:
        out.name = "Ztw"
    return out


def parse_module(name: str, group: FiniteGroup | ZExtension) -> GModule:
    """Resolve the names Z, Ztw, Ztw^k against a group."""
    s = name.strip()
    if s == "Z":
        return trivial_module(group)
    if s == "Ztw" or s.startswith("Ztw^"):
        if not isinstance(group, ZExtension):
            raise GroupError("Ztw is defined only over an extension by Z")
        k = 1 if s == "Ztw" else int(s[4:])
        return twisted(group, k)
    raise GroupError("unknown module %r (expected Z, Ztw or Ztw^k)" % name)


class GRingElement:
    """Element of the integral group ring, as a dense coefficient vector."""

    __slots__ = ("group", "coeffs")

    def __init__(self, group: FiniteGroup, coeffs):
        if len(coeffs) != group.order:
            raise ValueError("need one coefficient per group element")
        self.group = group
        self.coeffs = tuple(int(c) for c in coeffs)

    @classmethod
    def basis(cls, group: FiniteGroup, g: int, coef: int = 1) -> GRingElement:
        v = [0] * group.order
        v[g] = coef
        return cls(group, v)

    def __eq__(self, other):
        return isinstance(other, GRingElement) and self.group is other.group and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        terms = ["%d*%s" % (c, self.group.labels[g]) for g, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) if terms else "0"

    def __add__(self, other: GRingElement) -> GRingElement:
        return GRingElement(self.group, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> GRingElement:
        return GRingElement(self.group, [-a for a in self.coeffs])

    def __sub__(self, other: GRingElement) -> GRingElement:
        return self + (-other)

    def __mul__(self, other: GRingElement) -> GRingElement:
        m = self.group.mult
        out = [0] * self.group.order
        for g, a in enumerate(self.coeffs):
            if a:
                row = m[g]
                for h, b in enumerate(other.coeffs):
                    if b:
                        out[row[h]] += a * b
        return GRingElement(self.group, out)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def augmentation(self) -> int:
        return sum(self.coeffs)

    def act(self, M: GModule) -> IntMatrix:
        """The matrix by which this element acts on M."""
        out = IntMatrix.zeros(M.rank, M.rank)
        for g, a in enumerate(self.coeffs):
            if a:
                out = out + M.matrices[g].scale(a)
        return out
