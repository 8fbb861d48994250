"""Homology of G x| Z through the Wang sequence

    0 -> H_q(G; M)_theta -> H_q(G x| Z; M) -> H_{q-1}(G; M)^theta -> 0

and, as an independent oracle, through the algebraic mapping torus of the
chain-level theta map.  The first term is called ``left`` and the last
``right``; a result is resolved when one of them vanishes.

Cohomology runs the same way with the roles swapped:

    0 -> H^{q-1}(G; N)_theta -> H^q(G x| Z; N) -> H^q(G; N)^theta -> 0

where the right map is restriction to the fiber.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ExtensionAmbiguous
from .groups import (ExtensionHom, GroupError, MatrixRep, ZExtension, conjugation_aut,
                     coset_representative, index, restrict_hom)
from .homology import (AbGroup, ChainHomology, HClass, HMap, chain_boundary,
                       chain_induced, chain_map, cap, cohomology, cohomology_pullback, cup,
                       euler_class_cyclic, homology, induced_map, transfer_index2, working_resolution,
                       _restricted)
from .linalg import IntMatrix, Solver, hom_cokernel, hom_kernel
from .modules import GModule, restrict_module, tensor
from .resolutions import restrict_chain_map


def _inverse(T: IntMatrix) -> IntMatrix:
    solver = Solver(T)
    n = T.rows
    cols = [solver.solve([int(i == j) for i in range(n)]) for j in range(n)]
    return IntMatrix.from_columns(cols, n)


def _ext_module(E: ZExtension, M: GModule | None) -> GModule:
    from .modules import trivial_module
    if M is None:
        return trivial_module(E)
    if M.group is not E:
        raise GroupError("module %s is not over %s" % (M.name, E.name))
    return M


class WangResult:
    """One degree of the Wang sequence for (E, M)."""

    def __init__(self, E: ZExtension, M: GModule, q: int, kind: str = "homology"):
        self.extension = E
        self.module = M
        self.degree = q
        self.kind = kind
        F = E.fiber
        MF = M.fiber_module()
        if kind == "homology":
            low = q - 1
            self.fiber_high = homology(F, MF, q)
            self.theta_high = induced_map(E.theta, q, MF, MF, M.theta_action)
            if low >= 0:
                self.fiber_low = homology(F, MF, low)
                self.theta_low = induced_map(E.theta, low, MF, MF, M.theta_action)
            else:
                self.fiber_low = None
                self.theta_low = None
            coker_of, ker_of = self.theta_high, self.theta_low
        elif kind == "cohomology":
            nu = _inverse(M.theta_action)
            self.fiber_high = cohomology(F, MF, q)
            self.theta_high = cohomology_pullback(E.theta, q, MF, MF, nu)
            if q >= 1:
                self.fiber_low = cohomology(F, MF, q - 1)
                self.theta_low = cohomology_pullback(E.theta, q - 1, MF, MF, nu)
            else:
                self.fiber_low = None
                self.theta_low = None
            coker_of, ker_of = self.theta_low, self.theta_high
        else:
            raise ValueError("kind must be homology or cohomology")

        sym = "H_%d" if kind == "homology" else "H^%d"
        label = "%s(%s; %s)" % (sym % q, E.name, M.name)
        if coker_of is None:
            self.left = AbGroup((), "left " + label)
            self.left_source = None
            self.edge = None
            self._left_section = None
        else:
            src = coker_of.source
            pres = hom_cokernel(_minus_one(coker_of).matrix, src.moduli, src.moduli)
            self.left = AbGroup(pres.moduli, "left " + label)
            self.left_source = src
            self.edge = HMap(src, self.left, pres.projection, "edge")
            self._left_section = pres.section
        if ker_of is None:
            self.right = AbGroup((), "right " + label)
            self.right_target = None
            self.right_incl = None
        else:
            tgt = ker_of.source
            pres, incl = hom_kernel(_minus_one(ker_of).matrix, tgt.moduli, tgt.moduli)
            self.right = AbGroup(pres.moduli, "right " + label)
            self.right_target = tgt
            self.right_incl = HMap(self.right, tgt, incl, "incl")
        self.label = label

    def __repr__(self):
        return "WangResult(%s: left %s, right %s)" % (self.label, self.left.describe(),
                                                      self.right.describe())

    @property
    def resolved(self) -> bool:
        return self.left.is_trivial() or self.right.is_trivial()

    @property
    def resolved_side(self) -> str | None:
        if self.right.is_trivial():
            return "left"
        if self.left.is_trivial():
            return "right"
        return None

    def total_order(self) -> int | None:
        a, b = self.left.order(), self.right.order()
        return None if a is None or b is None else a * b

    def total_description(self) -> str:
        side = self.resolved_side
        if side == "left":
            return self.left.describe()
        if side == "right":
            return self.right.describe()
        return "extension of %s by %s" % (self.right.describe(), self.left.describe())

    def lift_left(self, x: HClass) -> HClass:
        """A fiber class whose edge image is x."""
        if x.home is not self.left:
            raise ValueError("class is not in the left term")
        return self.left_source.element(self._left_section.apply(x.coords))

    def right_coords(self, y: HClass) -> HClass:
        """The class of the right term that includes onto the fiber class y."""
        if y.home is not self.right_target:
            raise ValueError("class is not in the fiber group of the right term")
        incl = self.right_incl.matrix
        mods = IntMatrix.diagonal([d for d in self.right_target.moduli]) if self.right_target.ngens \
            else IntMatrix(0, 0, [])
        big = incl.hstack(mods) if self.right.ngens else mods
        sol = Solver(big).solve(list(y.coords))
        if sol is None:
            raise ValueError("fiber class is not invariant")
        return self.right.element(sol[:self.right.ngens])

    def to_json(self) -> dict:
        return {"extension": self.extension.name, "module": self.module.name, "degree": self.degree,
                "kind": self.kind, "left": self.left.to_json(), "right": self.right.to_json(),
                "resolved": self.resolved, "total": self.total_description()}


def _minus_one(f: HMap) -> HMap:
    return HMap(f.source, f.target, f.matrix - IntMatrix.identity(f.source.ngens), f.label + "-1")


_results: dict = {}


def wang_homology(E: ZExtension, M: GModule | None, q: int) -> WangResult:
    return _wang(E, _ext_module(E, M), q, "homology")


def wang_cohomology(E: ZExtension, N: GModule | None, q: int) -> WangResult:
    return _wang(E, _ext_module(E, N), q, "cohomology")


def _wang(E, M, q, kind) -> WangResult:
    key = (id(E), _mkey(M), q, kind)
    hit = _results.get(key)
    if hit is not None and hit[0] is E:
        return hit[1]
    W = WangResult(E, M, q, kind)
    _results[key] = (E, W)
    return W


def _mkey(M: GModule) -> tuple:
    th = M.theta_action.tolist() if M.theta_action is not None else None
    return (M.rank, tuple(tuple(map(tuple, A.data)) for A in M.matrices), str(th))


def clear_cache() -> None:
    _results.clear()


# -- maps ------------------------------------------------------------------------

def wang_induced(E: ZExtension, M: GModule | None, q: int, strict: bool = True) -> HMap:
    """i_*: H_q(fiber; M) -> H_q(E; M), landing in the left term."""
    W = wang_homology(E, M, q)
    if strict and W.resolved_side != "left":
        raise ExtensionAmbiguous("%s is not resolved on the fiber side" % W.label)
    return W.edge


def fiber_restriction(E: ZExtension, N: GModule | None, q: int, strict: bool = True) -> HMap:
    """i^*: H^q(E; N) -> H^q(fiber; N), defined on the right term."""
    W = wang_cohomology(E, N, q)
    if strict and W.resolved_side != "right":
        raise ExtensionAmbiguous("%s is not resolved on the fiber side" % W.label)
    return W.right_incl


def _left_map(W1: WangResult, W2: WangResult, fiber_map: HMap, label: str) -> HMap:
    if W1.left.is_trivial():
        return HMap(W1.left, W2.left, IntMatrix(W2.left.ngens, 0, [[] for _ in range(W2.left.ngens)]), label)
    cols = [W2.edge(fiber_map(W1.lift_left(g))).coords for g in W1.left.gens()]
    out = HMap(W1.left, W2.left, IntMatrix.from_columns(cols, W2.left.ngens), label)
    if not out.is_well_defined():
        raise ArithmeticError("fiber map does not descend to coinvariants")
    return out


def _right_map(W1: WangResult, W2: WangResult, fiber_map: HMap, label: str) -> HMap:
    cols = [W2.right_coords(fiber_map(W1.right_incl(g))).coords for g in W1.right.gens()]
    return HMap(W1.right, W2.right, IntMatrix.from_columns(cols, W2.right.ngens), label)


@dataclass
class WangMap:
    """A map of Wang sequences: its effect on the left and right terms."""

    left: HMap
    right: HMap | None

    def is_identity(self) -> bool:
        ok = self.left.source is self.left.target and self.left.matrix == IntMatrix.identity(self.left.source.ngens)
        if self.right is not None:
            ok = ok and self.right.matrix == IntMatrix.identity(self.right.source.ngens)
        return ok

    def to_json(self) -> dict:
        return {"left": self.left.to_json(), "right": self.right.to_json() if self.right else None}


def extension_map(f: ExtensionHom, q: int, M: GModule | None = None, M_src: GModule | None = None,
                  mu: IntMatrix | None = None) -> WangMap:
    """f_* on H_q for a map of extensions; M lives over the target."""
    M = _ext_module(f.target, M)
    if M_src is None:
        M_src = restrict_module(M, f)
    W1 = wang_homology(f.source, M_src, q)
    W2 = wang_homology(f.target, M, q)
    phi = f.fiber_map
    MF = M.fiber_module()
    MsF = M_src.fiber_module()
    left = _left_map(W1, W2, induced_map(phi, q, MF, MsF, mu), f.name)
    right = None
    if q >= 1:
        right = _right_map(W1, W2, induced_map(phi, q - 1, MF, MsF, mu), f.name)
    return WangMap(left, right)


def wang_transfer(sub: ExtensionHom, q: int, M: GModule | None = None) -> WangMap:
    """Transfer H_q(G x| Z; M) -> H_q(H x| Z; M) for an index-2, theta-invariant fiber subgroup."""
    E = sub.target
    M = _ext_module(E, M)
    incl = sub.fiber_map
    if index(incl) != 2:
        raise GroupError("wang_transfer needs an index-2 fiber subgroup")
    MH = restrict_module(M, sub)
    W1 = wang_homology(E, M, q)
    W2 = wang_homology(sub.source, MH, q)
    MF = M.fiber_module()
    left = _left_map(W1, W2, transfer_index2(incl, q, MF), "tr")
    right = None
    if q >= 1:
        right = _right_map(W1, W2, transfer_index2(incl, q - 1, MF), "tr")
    return WangMap(left, right)


def wang_deck(sub: ExtensionHom, q: int, M: GModule | None = None) -> WangMap:
    """Deck transformation of the double cover H x| Z -> G x| Z on H_q(H x| Z; M|)."""
    E = sub.target
    M = _ext_module(E, M)
    s = coset_representative(sub.fiber_map)
    if E.theta(s) != s:
        raise GroupError("the coset representative is not fixed by theta")
    c = restrict_hom(conjugation_aut(E.fiber, s), sub.fiber_map, sub.fiber_map)
    deck = ExtensionHom(sub.source, sub.source, c, name="deck")
    MH = restrict_module(M, sub)
    return extension_map(deck, q, MH, MH, M.matrices[s])


# -- cohomology classes and caps -------------------------------------------------

class ExtensionClass:
    """A class in H^p(E; N) recorded by its restriction to the fiber.

    Restriction is injective on H^p(E; N) whenever H^{p-1}(fiber; N) has no
    coinvariants, which holds for p = 2.  Caps with classes in the left term
    depend only on the restriction, by the projection formula.
    """

    def __init__(self, E: ZExtension, N: GModule, degree: int, fiber_class: HClass, name: str = ""):
        self.extension = E
        self.module = N
        self.degree = degree
        self.fiber_class = fiber_class
        self.name = name
        W = wang_cohomology(E, N, degree)
        W.right_coords(fiber_class)  # raises unless theta-invariant
        self.wang = W

    def __repr__(self):
        return "ExtensionClass(%s, %s)" % (self.name, self.fiber_class)

    def determined(self) -> bool:
        """Whether the fiber restriction pins the class down."""
        return self.wang.left.is_trivial()

    def __eq__(self, other) -> bool:
        return (isinstance(other, ExtensionClass) and other.extension is self.extension
                and other.fiber_class == self.fiber_class)

    __hash__ = None  # type: ignore[assignment]

    def __neg__(self) -> ExtensionClass:
        return ExtensionClass(self.extension, self.module, self.degree, -self.fiber_class, "-" + self.name)

    def __add__(self, other: ExtensionClass) -> ExtensionClass:
        return ExtensionClass(self.extension, self.module, self.degree,
                              self.fiber_class + other.fiber_class, "%s+%s" % (self.name, other.name))

    def pullback(self, f: ExtensionHom) -> ExtensionClass:
        if f.target is not self.extension:
            raise GroupError("class does not live on the target of the map")
        N_src = restrict_module(self.module, f)
        phi_star = cohomology_pullback(f.fiber_map, self.degree, self.module.fiber_module(),
                                       N_src.fiber_module())
        return ExtensionClass(f.source, N_src, self.degree, phi_star(self.fiber_class),
                              "%s^*%s" % (f.name, self.name))

    def cup(self, other: ExtensionClass) -> ExtensionClass:
        """Cup product, again recorded by its restriction to the fiber."""
        if other.extension is not self.extension:
            raise GroupError("classes live over different extensions")
        return ExtensionClass(self.extension, tensor(self.module, other.module), self.degree + other.degree,
                              cup(self.fiber_class, other.fiber_class),
                              "%s.%s" % (self.name, other.name))

    def to_json(self) -> dict:
        return {"name": self.name, "degree": self.degree, "module": self.module.name,
                "fiber_class": list(self.fiber_class.coords),
                "fiber_group": self.fiber_class.home.describe()}


def euler_class(rep: MatrixRep) -> ExtensionClass:
    """Euler class of a 2-dimensional representation of a Z-extension with cyclic fiber,
    in H^2(E; orientation module)."""
    from .modules import orientation_module
    E = rep.group
    if not isinstance(E, ZExtension):
        raise GroupError("euler_class needs a representation of a Z-extension")
    fiber_rep = MatrixRep(E.fiber, rep.dimension, dict(rep.images), name=rep.name + "|fiber")
    e = euler_class_cyclic(fiber_rep)
    return ExtensionClass(E, orientation_module(rep), 2, e.cls, "e(%s)" % rep.name)


def wang_cap(x: HClass, W: WangResult, c: ExtensionClass, strict: bool = True) -> HClass:
    """x n c for x in the left term of W, landing in the left term two degrees lower.

    Uses i_*(u) n c = i_*(u n i^*c).  With strict set, both Wang results must
    be resolved on the fiber side, so the answer is the whole class.
    """
    if x.home is not W.left:
        raise ValueError("class is not in the left term of %s" % W.label)
    if c.extension is not W.extension:
        raise GroupError("class and cohomology class live over different extensions")
    target = wang_homology(W.extension, tensor(W.module, c.module), W.degree - c.degree)
    if strict and (W.resolved_side != "left" or target.resolved_side != "left"):
        raise ExtensionAmbiguous("cap from %s to %s is not resolved" % (W.label, target.label))
    u = W.lift_left(x)
    return target.edge(cap(u, c.fiber_class))


def wang_cap_map(W: WangResult, c: ExtensionClass, strict: bool = True) -> HMap:
    imgs = [wang_cap(g, W, c, strict) for g in W.left.gens()]
    target = wang_homology(W.extension, tensor(W.module, c.module), W.degree - c.degree)
    cols = [y.coords for y in imgs]
    return HMap(W.left, target.left, IntMatrix.from_columns(cols, target.left.ngens), "cap " + c.name)


# -- the mapping torus oracle -----------------------------------------------------

class TorusHomology(ChainHomology):
    """H_q(E; M) from Tot_q = C_q + C_{q-1}, D(a, b) = (da + (Phi - 1) b, -db)."""

    def __init__(self, E: ZExtension, M: GModule, q: int, complex_data):
        self.extension = E
        self.module = M
        self.degree = q
        self._data = complex_data
        super().__init__(complex_data.total(q), complex_data.total(q + 1),
                         "H_%d(%s; %s) [torus]" % (q, E.name, M.name))

    def left_inclusion(self, fiber_chain: list[int]) -> list[int]:
        return list(fiber_chain) + [0] * self._data.rank(self.degree - 1)


class _TorusComplex:
    def __init__(self, R, MF: GModule, phi_chain):
        self.R = R
        self.M = MF
        self.phi_chain = phi_chain
        self._phi: dict = {}

    def rank(self, q: int) -> int:
        return self.R.ranks[q] * self.M.rank if q >= 0 else 0

    def phi(self, q: int) -> IntMatrix:
        if q not in self._phi:
            self._phi[q] = self.phi_chain(q)
        return self._phi[q]

    def total(self, q: int) -> IntMatrix:
        rows = self.rank(q - 1) + self.rank(q - 2)
        cols = self.rank(q) + self.rank(q - 1)
        D = IntMatrix.zeros(rows, cols)
        a0 = self.rank(q)
        if q >= 1:
            d = chain_boundary(self.R, self.M, q)
            for r in range(d.rows):
                D.data[r][:a0] = d.data[r][:]
            P = self.phi(q - 1)
            for r in range(P.rows):
                for c in range(P.cols):
                    D.data[r][a0 + c] = P.data[r][c] - (1 if r == c else 0)
        if q >= 2:
            d = chain_boundary(self.R, self.M, q - 1)
            base = self.rank(q - 1)
            for r in range(d.rows):
                for c in range(d.cols):
                    D.data[base + r][a0 + c] = -d.data[r][c]
        return D


def _torus_data(E: ZExtension, M: GModule, R=None):
    F = E.fiber
    MF = M.fiber_module()
    R = R or working_resolution(F, 8)
    T = M.theta_action

    def phi_chain(q):
        f = chain_map(E.theta, R, R, q)
        return chain_induced(f, MF, MF, T, q)
    return _TorusComplex(R, MF, phi_chain)


def mapping_torus_homology(E: ZExtension, M: GModule | None, q: int) -> TorusHomology:
    M = _ext_module(E, M)
    F = E.fiber
    R = working_resolution(F, q + 1)
    return TorusHomology(E, M, q, _torus_data(E, M, R))


@dataclass
class TorusTransfer:
    """Chain-level transfer between mapping tori of a double cover, computed on
    the restricted resolution so that it commutes with the theta maps exactly."""

    big: TorusHomology
    small: TorusHomology
    transfer: HMap
    push: HMap


def torus_transfer(sub: ExtensionHom, q: int, M: GModule | None = None) -> TorusTransfer:
    E = sub.target
    M = _ext_module(E, M)
    incl = sub.fiber_map
    if index(incl) != 2:
        raise GroupError("torus transfer needs an index-2 fiber subgroup")
    G = E.fiber
    R = working_resolution(G, q + 1)
    Rres = _restricted(R, incl)
    MF = M.fiber_module()
    MH = restrict_module(M, sub)
    MHF = MH.fiber_module()
    T = M.theta_action
    big_data = _torus_data(E, M, R)

    def phi_small(k):
        f = chain_map(E.theta, R, R, k)
        fr = restrict_chain_map(f, Rres, Rres)
        return chain_induced(fr, MHF, MHF, T, k)
    small_data = _TorusComplex(Rres, MHF, phi_small)
    big = TorusHomology(E, M, q, big_data)
    small = TorusHomology(sub.source, MH, q, small_data)

    m = MF.rank
    s = Rres.coset_rep
    rho_s = MF.matrices[s]
    rho_s_inv = MF.matrices[G.inverse[s]]

    def tr_chain(k):
        A = IntMatrix.zeros(2 * R.ranks[k] * m, R.ranks[k] * m) if k >= 0 else IntMatrix(0, 0, [])
        for i in range(R.ranks[k] if k >= 0 else 0):
            for r in range(m):
                A.data[2 * i * m + r][i * m + r] = 1
                for c in range(m):
                    A.data[(2 * i + 1) * m + r][i * m + c] = rho_s.data[r][c]
        return A

    def push_chain(k):
        A = IntMatrix.zeros(R.ranks[k] * m, 2 * R.ranks[k] * m) if k >= 0 else IntMatrix(0, 0, [])
        for i in range(R.ranks[k] if k >= 0 else 0):
            for r in range(m):
                A.data[i * m + r][2 * i * m + r] = 1
                for c in range(m):
                    A.data[i * m + r][(2 * i + 1) * m + c] = rho_s_inv.data[r][c]
        return A

    def block(f, k):
        a, b = f(k), f(k - 1)
        D = IntMatrix.zeros(a.rows + b.rows, a.cols + b.cols)
        for r in range(a.rows):
            D.data[r][:a.cols] = a.data[r][:]
        for r in range(b.rows):
            D.data[a.rows + r][a.cols:] = b.data[r][:]
        return D

    def lift(A, S, Tg, label):
        cols = [Tg.coords_of(A.apply(S.representative(g))) for g in S.gens()]
        return HMap(S, Tg, IntMatrix.from_columns(cols, Tg.ngens), label)

    tr = lift(block(tr_chain, q), big, small, "tr")
    push = lift(block(push_chain, q), small, big, "push")
    return TorusTransfer(big, small, tr, push)
