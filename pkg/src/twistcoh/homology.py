"""Homology and cohomology of finite groups with coefficients in a GModule,
maps between them, transfers, cup and cap products, Euler classes.

Chain level conventions (R a free resolution, M a left module):

* homology uses M (x)_G R, with m (x) g e = rho(g)^-1 m (x) e;
* cohomology uses Hom_G(R, M) with (delta f) = f o d, no sign;
* cap is front-face evaluation, x n c = sum c(x') x'';
* cup is (c1 u c2)(x) = sum c1(x') (x) c2(x'').
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import BudgetError
from .groups import (FiniteGroup, GroupError, GroupHom, MatrixRep, ZExtension, conjugation_aut,
                     coset_representative, identity_hom, restrict_hom, rotation_weight)
from .linalg import (IntMatrix, Solver, cokernel_presentation, describe_group, hom_cokernel,
                     hom_kernel, kernel_basis)
from .modules import GModule, restrict_module, tensor, trivial_module
from .resolutions import (MAX_LENGTH, ChainMap, DiagonalApprox, FreeResolution, best_resolution,
                          diagonal_approx, lift_chain_map, restrict_resolution)


# -- abstract groups and elements -----------------------------------------------

class AbGroup:
    """Z/d1 + ... + Z/dk + Z^r in canonical coordinates; ``moduli`` lists the d_i
    followed by a 0 for each free summand."""

    def __init__(self, moduli: Sequence[int], label: str = ""):
        self.moduli = tuple(int(d) for d in moduli)
        self.label = label

    def __repr__(self):
        return "<%s %s>" % (self.label or "group", self.describe())

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return tuple(d for d in self.moduli if d)

    @property
    def free_rank(self) -> int:
        return sum(1 for d in self.moduli if d == 0)

    @property
    def ngens(self) -> int:
        return len(self.moduli)

    def describe(self) -> str:
        return describe_group(self.invariant_factors, self.free_rank)

    def order(self) -> int | None:
        if self.free_rank:
            return None
        out = 1
        for d in self.moduli:
            out *= d
        return out

    def is_trivial(self) -> bool:
        return not self.moduli

    def reduce(self, coords: Sequence[int]) -> tuple[int, ...]:
        return tuple(c % d if d else c for c, d in zip(coords, self.moduli))

    def element(self, coords: Sequence[int]) -> HClass:
        if len(coords) != self.ngens:
            raise ValueError("expected %d coordinates" % self.ngens)
        return HClass(self, self.reduce(coords))

    def zero(self) -> HClass:
        return HClass(self, (0,) * self.ngens)

    def gens(self) -> list[HClass]:
        return [self.element([int(i == j) for j in range(self.ngens)]) for i in range(self.ngens)]

    def elements(self) -> Iterator[HClass]:
        if self.free_rank:
            raise ValueError("cannot enumerate an infinite group")

        def rec(i, prefix):
            if i == self.ngens:
                yield HClass(self, tuple(prefix))
                return
            for c in range(self.moduli[i]):
                yield from rec(i + 1, prefix + [c])
        yield from rec(0, [])

    def to_json(self) -> dict:
        return {"invariant_factors": list(self.invariant_factors), "free_rank": self.free_rank,
                "name": self.describe()}


class HClass:
    __slots__ = ("home", "coords")

    def __init__(self, home: AbGroup, coords: Sequence[int]):
        self.home = home
        self.coords = tuple(coords)

    def __repr__(self):
        return "%s in %s" % (list(self.coords), self.home.describe())

    def _same(self, other: HClass) -> None:
        if other.home is not self.home:
            raise ValueError("classes live in different groups")

    def __add__(self, other: HClass) -> HClass:
        self._same(other)
        return self.home.element([a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other: HClass) -> HClass:
        self._same(other)
        return self.home.element([a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self) -> HClass:
        return self.home.element([-a for a in self.coords])

    def __mul__(self, k: int) -> HClass:
        return self.home.element([k * a for a in self.coords])

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, HClass) and other.home is self.home and other.coords == self.coords

    def __hash__(self):
        return hash((id(self.home), self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def order(self) -> int | None:
        out = 1
        for c, d in zip(self.coords, self.home.moduli):
            if not c:
                continue
            if not d:
                return None
            k = d // _gcd(c, d)
            out = out * k // _gcd(out, k)
        return out

    def is_even(self) -> bool:
        """Whether the class is twice some class."""
        return all(c % 2 == 0 for c, d in zip(self.coords, self.home.moduli) if d % 2 == 0)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


class HMap:
    """Homomorphism given by an integer matrix in canonical coordinates."""

    def __init__(self, source: AbGroup, target: AbGroup, matrix: IntMatrix, label: str = ""):
        if matrix.shape != (target.ngens, source.ngens):
            raise ValueError("matrix shape %s does not match %d -> %d generators"
                             % (matrix.shape, source.ngens, target.ngens))
        self.source = source
        self.target = target
        self.label = label
        cols = [target.reduce(c) for c in matrix.columns()]
        self.matrix = IntMatrix.from_columns(cols, target.ngens)

    def __repr__(self):
        return "HMap(%s: %s -> %s, %s)" % (self.label, self.source.describe(), self.target.describe(),
                                          self.matrix.tolist())

    def __call__(self, x: HClass) -> HClass:
        if x.home is not self.source:
            raise ValueError("class is not in the source of %s" % self.label)
        return self.target.element(self.matrix.apply(x.coords))

    def __matmul__(self, other: HMap) -> HMap:
        if other.target is not self.source:
            raise ValueError("maps do not compose")
        return HMap(other.source, self.target, self.matrix @ other.matrix,
                    "%s*%s" % (self.label, other.label))

    def __add__(self, other: HMap) -> HMap:
        if other.source is not self.source or other.target is not self.target:
            raise ValueError("maps have different source or target")
        return HMap(self.source, self.target, self.matrix + other.matrix, "%s+%s" % (self.label, other.label))

    def __neg__(self) -> HMap:
        return HMap(self.source, self.target, -self.matrix, "-" + self.label)

    def scale(self, k: int) -> HMap:
        return HMap(self.source, self.target, self.matrix.scale(k), "%d*%s" % (k, self.label))

    def __eq__(self, other) -> bool:
        return (isinstance(other, HMap) and other.source is self.source
                and other.target is self.target and other.matrix == self.matrix)

    __hash__ = None  # type: ignore[assignment]

    def is_well_defined(self) -> bool:
        for j, d in enumerate(self.source.moduli):
            if d and any(self.target.reduce([d * x for x in self.matrix.column(j)])):
                return False
        return True

    def kernel(self) -> tuple[AbGroup, HMap]:
        pres, incl = hom_kernel(self.matrix, self.source.moduli, self.target.moduli)
        K = AbGroup(pres.moduli, "ker " + self.label)
        return K, HMap(K, self.source, incl, "incl")

    def cokernel(self) -> tuple[AbGroup, HMap]:
        pres = hom_cokernel(self.matrix, self.source.moduli, self.target.moduli)
        C = AbGroup(pres.moduli, "coker " + self.label)
        return C, HMap(self.target, C, pres.projection, "proj")

    def is_injective(self) -> bool:
        return self.kernel()[0].is_trivial()

    def is_surjective(self) -> bool:
        return self.cokernel()[0].is_trivial()

    def is_isomorphism(self) -> bool:
        return self.is_injective() and self.is_surjective()

    def image(self) -> list[HClass]:
        return sorted({self(x) for x in self.source.elements()}, key=lambda c: c.coords)

    def to_json(self) -> dict:
        return {"label": self.label, "source": self.source.to_json(), "target": self.target.to_json(),
                "matrix": self.matrix.tolist()}


def identity_map(A: AbGroup) -> HMap:
    return HMap(A, A, IntMatrix.identity(A.ngens), "id")


def scalar_map(A: AbGroup, k: int) -> HMap:
    return HMap(A, A, IntMatrix.identity(A.ngens).scale(k), "x%d" % k)


# -- chain complexes ---------------------------------------------------------

def _block_sum(pairs, mats: list[IntMatrix], m: int) -> list[list[int]]:
    out = [[0] * m for _ in range(m)]
    for g, c in pairs:
        A = mats[g].data
        for r in range(m):
            row, src = out[r], A[r]
            for s in range(m):
                if src[s]:
                    row[s] += c * src[s]
    return out


def _place(target: list[list[int]], block: list[list[int]], r0: int, c0: int) -> None:
    for r, row in enumerate(block):
        t = target[r0 + r]
        for s, x in enumerate(row):
            if x:
                t[c0 + s] += x


def chain_boundary(R: FreeResolution, M: GModule, q: int) -> IntMatrix:
    """d_q on M (x)_G R_q; block (j, i) = sum_k a_ij[k] rho(k^-1)."""
    m = M.rank
    if q == 0:
        return IntMatrix(0, R.ranks[0] * m, [])
    if q > R.length:
        raise BudgetError("resolution of %s is too short for degree %d" % (R.group.name, q))
    G = R.group
    inv_mats = [M.matrices[G.inverse[g]] for g in range(G.order)]
    D = IntMatrix.zeros(R.ranks[q - 1] * m, R.ranks[q] * m)
    for i, images in enumerate(R.boundaries[q]):
        for j, a in enumerate(images):
            pairs = [(k, c) for k, c in enumerate(a) if c]
            if pairs:
                _place(D.data, _block_sum(pairs, inv_mats, m), j * m, i * m)
    return D


def cochain_coboundary(R: FreeResolution, M: GModule, q: int) -> IntMatrix:
    """delta^q on Hom_G(R_q, M); block (i, j) = sum_k a_ij[k] rho(k), a from d_{q+1}."""
    m = M.rank
    if q < 0:
        return IntMatrix(R.ranks[0] * m, 0, [[] for _ in range(R.ranks[0] * m)])
    if q + 1 > R.length:
        raise BudgetError("resolution of %s is too short for degree %d" % (R.group.name, q + 1))
    D = IntMatrix.zeros(R.ranks[q + 1] * m, R.ranks[q] * m)
    for i, images in enumerate(R.boundaries[q + 1]):
        for j, a in enumerate(images):
            pairs = [(k, c) for k, c in enumerate(a) if c]
            if pairs:
                _place(D.data, _block_sum(pairs, M.matrices, m), i * m, j * m)
    return D


class ChainHomology(AbGroup):
    """ker(d_out) / im(d_in) for integer matrices, with chain-level lookups."""

    def __init__(self, d_out: IntMatrix, d_in: IntMatrix, label: str = ""):
        dim = d_out.cols
        Z = kernel_basis(d_out) if d_out.rows else IntMatrix.identity(dim)
        self.cycles = Z
        self._solver = Solver(Z)
        rels = []
        for col in d_in.columns():
            c = self._solver.solve(col)
            if c is None:
                raise ArithmeticError("boundary is not a cycle; complex is broken")
            rels.append(c)
        self.presentation = cokernel_presentation(Z.cols, IntMatrix.from_columns(rels, Z.cols))
        super().__init__(self.presentation.moduli, label)
        self.d_out = d_out
        self.chain_rank = dim
        self._reps = (Z @ self.presentation.section) if Z.cols else IntMatrix(dim, 0, [[] for _ in range(dim)])

    def coords_of(self, chain: Sequence[int]) -> tuple[int, ...]:
        chain = list(chain)
        if any(self.d_out.apply(chain)) if self.d_out.rows else False:
            raise ValueError("chain is not a cycle")
        z = self._solver.solve(chain)
        if z is None:
            raise ArithmeticError("cycle is not in the cycle lattice")
        return self.reduce(self.presentation.projection.apply(z))

    def class_of(self, chain: Sequence[int]) -> HClass:
        return HClass(self, self.coords_of(chain))

    def representative(self, x: HClass | Sequence[int]) -> list[int]:
        coords = x.coords if isinstance(x, HClass) else tuple(x)
        return self._reps.apply(coords) if coords else [0] * self.chain_rank

class HomologyGroup(ChainHomology):
    """A computed (co)homology group of a finite group together with its chain-level data."""

    def __init__(self, kind: str, group: FiniteGroup, module: GModule, degree: int,
                 resolution: FreeResolution, d_out: IntMatrix, d_in: IntMatrix):
        sym = "H^%d" if kind == "cohomology" else "H_%d"
        super().__init__(d_out, d_in, "%s(%s; %s)" % (sym % degree, group.name, module.name))
        self.kind = kind
        self.group = group
        self.module = module
        self.degree = degree
        self.resolution = resolution

    def to_json(self) -> dict:
        out = super().to_json()
        out.update({"kind": self.kind, "group": self.group.name, "module": self.module.name,
                    "degree": self.degree})
        return out


# -- caches and resolution choice ------------------------------------------

_groups: dict = {}
_chain_maps: dict = {}
_diagonals: dict = {}


def clear_caches() -> None:
    _groups.clear()
    _chain_maps.clear()
    _diagonals.clear()
    _restrictions.clear()


_seed: int | None = None


def set_seed(seed: int | None) -> None:
    """Pivot seed for generic resolutions and chain-map lifts; results on
    homology do not depend on it."""
    global _seed
    if seed != _seed:
        clear_caches()
    _seed = seed


def working_resolution(G: FiniteGroup, need: int) -> FreeResolution:
    if need > MAX_LENGTH:
        raise BudgetError("degree needs a resolution of length %d; the budget is %d" % (need, MAX_LENGTH))
    if G.order <= 16:
        return best_resolution(G, MAX_LENGTH, _seed)
    return best_resolution(G, need, _seed)


def _module_key(M: GModule) -> tuple:
    return (M.rank, tuple(tuple(map(tuple, A.data)) for A in M.matrices))


def _fiber_module(G: FiniteGroup, M: GModule | None) -> GModule:
    if M is None:
        return trivial_module(G)
    if isinstance(M.group, ZExtension):
        M = M.fiber_module()
    if M.group is not G:
        raise GroupError("module %s is not over %s" % (M.name, G.name))
    return M


def homology(G: FiniteGroup, M: GModule | None = None, q: int = 0,
             R: FreeResolution | None = None) -> HomologyGroup:
    M = _fiber_module(G, M)
    if q < 0:
        raise ValueError("degree must be nonnegative")
    R = R or working_resolution(G, q + 1)
    key = ("h", id(R), _module_key(M), q)
    hit = _groups.get(key)
    if hit is not None and hit[0] is R:
        return hit[1]
    H = HomologyGroup("homology", G, M, q, R, chain_boundary(R, M, q), chain_boundary(R, M, q + 1))
    _groups[key] = (R, H)
    return H


def cohomology(G: FiniteGroup, M: GModule | None = None, q: int = 0,
               R: FreeResolution | None = None) -> HomologyGroup:
    M = _fiber_module(G, M)
    if q < 0:
        raise ValueError("degree must be nonnegative")
    R = R or working_resolution(G, q + 1)
    key = ("c", id(R), _module_key(M), q)
    hit = _groups.get(key)
    if hit is not None and hit[0] is R:
        return hit[1]
    H = HomologyGroup("cohomology", G, M, q, R, cochain_coboundary(R, M, q),
                      cochain_coboundary(R, M, q - 1))
    _groups[key] = (R, H)
    return H


def chain_map(phi: GroupHom, source: FreeResolution, target: FreeResolution, q: int,
              seed: int | None = None) -> ChainMap:
    if seed is None:
        seed = _seed
    key = (id(phi), id(source), id(target), seed)
    hit = _chain_maps.get(key)
    if hit is not None and hit[0] is phi and hit[1].length >= q:
        return hit[1]
    f = lift_chain_map(phi, source, target, q, seed)
    _chain_maps[key] = (phi, f)
    return f


def chain_induced(f: ChainMap, M_src: GModule, M_tgt: GModule, mu: IntMatrix | None, q: int) -> IntMatrix:
    """Chain matrix of m (x) e_i -> mu(m) (x) f(e_i); block (j, i) = sum_h c_ij[h] rho(h^-1) mu."""
    T = f.target.group
    n = T.order
    m_src, m = M_src.rank, M_tgt.rank
    inv_mats = [M_tgt.matrices[T.inverse[h]] for h in range(n)]
    A = IntMatrix.zeros(f.target.ranks[q] * m, f.source.ranks[q] * m_src)
    for i, y in enumerate(f.maps[q]):
        for j in range(f.target.ranks[q]):
            pairs = [(h, y[j * n + h]) for h in range(n) if y[j * n + h]]
            if pairs:
                block = IntMatrix(m, m, _block_sum(pairs, inv_mats, m))
                if mu is not None:
                    block = block @ mu
                _place(A.data, block.data, j * m, i * m_src)
    return A


def cochain_pullback(f: ChainMap, N_tgt: GModule, N_src: GModule, nu: IntMatrix | None, q: int) -> IntMatrix:
    """Chain matrix of F -> nu o F o f; block (i, j) = nu sum_h c_ij[h] rho(h)."""
    T = f.target.group
    n = T.order
    m, m_src = N_tgt.rank, N_src.rank
    A = IntMatrix.zeros(f.source.ranks[q] * m_src, f.target.ranks[q] * m)
    for i, y in enumerate(f.maps[q]):
        for j in range(f.target.ranks[q]):
            pairs = [(h, y[j * n + h]) for h in range(n) if y[j * n + h]]
            if pairs:
                block = IntMatrix(m, m, _block_sum(pairs, N_tgt.matrices, m))
                if nu is not None:
                    block = nu @ block
                _place(A.data, block.data, i * m_src, j * m)
    return A


def map_from_chain(A: IntMatrix, S: HomologyGroup, T: HomologyGroup, label: str = "") -> HMap:
    cols = [T.coords_of(A.apply(S.representative(g))) for g in S.gens()]
    return HMap(S, T, IntMatrix.from_columns(cols, T.ngens), label)


def induced_map(phi: GroupHom, q: int, M: GModule | None = None, M_src: GModule | None = None,
                mu: IntMatrix | None = None, seed: int | None = None) -> HMap:
    """phi_*: H_q(source; M_src) -> H_q(target; M), the module map mu intertwining
    rho_src(g) and rho(phi g).  By default M_src is M pulled back along phi."""
    M = _fiber_module(phi.target, M)
    M_src = restrict_module(M, phi) if M_src is None else _fiber_module(phi.source, M_src)
    if mu is None and M_src.rank != M.rank:
        raise ValueError("a module map is needed between modules of different rank")
    S = homology(phi.source, M_src, q)
    T = homology(phi.target, M, q)
    f = chain_map(phi, S.resolution, T.resolution, q, seed)
    return map_from_chain(chain_induced(f, M_src, M, mu, q), S, T, phi.name or "phi")


def cohomology_pullback(phi: GroupHom, q: int, N: GModule | None = None, N_src: GModule | None = None,
                        nu: IntMatrix | None = None, seed: int | None = None) -> HMap:
    """phi^*: H^q(target; N) -> H^q(source; N_src), with nu rho(phi g) = rho_src(g) nu."""
    N = _fiber_module(phi.target, N)
    N_src = restrict_module(N, phi) if N_src is None else _fiber_module(phi.source, N_src)
    S = cohomology(phi.source, N_src, q)
    T = cohomology(phi.target, N, q)
    f = chain_map(phi, S.resolution, T.resolution, q, seed)
    return map_from_chain(cochain_pullback(f, N, N_src, nu, q), T, S, (phi.name or "phi") + "^*")


def automorphism_map(phi: GroupHom, q: int, M: GModule, T: IntMatrix | None = None,
                     seed: int | None = None) -> HMap:
    """(phi, T)_* on H_q(G; M) for an automorphism phi and T rho(g) = rho(phi g) T."""
    M = _fiber_module(phi.source, M)
    return induced_map(phi, q, M, M, T, seed)


# -- transfer --------------------------------------------------------------

def transfer_index2(inclusion: GroupHom, q: int, M: GModule | None = None,
                    seed: int | None = None) -> HMap:
    """H_q(G; M) -> H_q(H; M|H) for an index-2 subgroup H.

    On M (x)_G F it is m (x) e -> m (x) e + rho(s) m (x) s e, read in the
    restricted resolution and carried to the standard one for H by a lift.
    """
    G, H = inclusion.target, inclusion.source
    if not inclusion.is_injective or 2 * H.order != G.order:
        raise GroupError("transfer_index2 needs a subgroup of index 2")
    M = _fiber_module(G, M)
    MH = restrict_module(M, inclusion)
    S = homology(G, M, q)
    RG = S.resolution
    Rres = _restricted(RG, inclusion)
    T = homology(H, MH, q)
    m = M.rank
    s = Rres.coset_rep
    tr = IntMatrix.zeros(2 * RG.ranks[q] * m, RG.ranks[q] * m)
    rho_s = M.matrices[s].data
    for i in range(RG.ranks[q]):
        for r in range(m):
            tr.data[2 * i * m + r][i * m + r] = 1
            for c in range(m):
                tr.data[(2 * i + 1) * m + r][i * m + c] = rho_s[r][c]
    f = chain_map(identity_hom(H), Rres, T.resolution, q, seed)
    A = chain_induced(f, MH, MH, None, q) @ tr
    return map_from_chain(A, S, T, "tr")


_restrictions: dict = {}


def _restricted(R: FreeResolution, inclusion: GroupHom) -> FreeResolution:
    key = (id(R), id(inclusion))
    hit = _restrictions.get(key)
    if hit is not None and hit[0] is R and hit[1] is inclusion:
        return hit[2]
    out = restrict_resolution(R, inclusion)
    _restrictions[key] = (R, inclusion, out)
    return out


def deck_map(inclusion: GroupHom, q: int, M: GModule | None = None, seed: int | None = None) -> HMap:
    """(c_s, rho(s))_* on H_q(H; M|H), c_s conjugation by a coset representative."""
    G = inclusion.target
    M = _fiber_module(G, M)
    s = coset_representative(inclusion)
    c = restrict_hom(conjugation_aut(G, s), inclusion, inclusion)
    MH = restrict_module(M, inclusion)
    return automorphism_map(c, q, MH, M.matrices[s], seed)


# -- products ----------------------------------------------------------------

def diagonal_for(R: FreeResolution, length: int, seed: int | None = None) -> DiagonalApprox:
    if seed is None:
        seed = _seed
    key = (id(R), seed)
    hit = _diagonals.get(key)
    if hit is not None and hit[0] is R and hit[1].length >= length:
        return hit[1]
    D = diagonal_approx(R, length, seed)
    _diagonals[key] = (R, D)
    return D


def _kron_vec(a: Sequence[int], b: Sequence[int]) -> list[int]:
    return [x * y for x in a for y in b]


def cap(x: HClass, c: HClass, seed: int | None = None) -> HClass:
    """x n c in H_{q-p}(G; M (x) N), by front-face evaluation on a diagonal."""
    X, C = x.home, c.home
    if not (isinstance(X, HomologyGroup) and X.kind == "homology"):
        raise TypeError("cap needs a homology class on the left")
    if not (isinstance(C, HomologyGroup) and C.kind == "cohomology"):
        raise TypeError("cap needs a cohomology class on the right")
    if X.group is not C.group:
        raise ValueError("classes live over different groups")
    q, p = X.degree, C.degree
    if p > q:
        raise ValueError("cannot cap a degree-%d class with a degree-%d class" % (q, p))
    R = X.resolution
    if C.resolution is not R:
        raise ValueError("classes were computed on different resolutions")
    M, N = X.module, C.module
    MN = tensor(M, N)
    target = homology(X.group, MN, q - p, R)
    out = _cap_chain(R, M, N, X.representative(x), C.representative(c), q, p, seed)
    return target.class_of(out)


def _cap_chain(R, M, N, xs, cs, q, p, seed) -> list[int]:
    G = R.group
    D = diagonal_for(R, q, seed)
    m, nn = M.rank, N.rank
    mn = m * nn
    out = [0] * (R.ranks[q - p] * mn)
    inv = G.inverse
    for i, terms in enumerate(D.terms[q]):
        mi = xs[i * m:(i + 1) * m]
        if not any(mi):
            continue
        for (pp, k, g, l, h), coef in terms.items():
            if pp != p:
                continue
            ck = cs[k * nn:(k + 1) * nn]
            if not any(ck):
                continue
            hi = inv[h]
            a = M.matrices[hi].apply(mi)
            b = N.matrices[hi].apply(N.matrices[g].apply(ck))
            v = _kron_vec(a, b)
            base = l * mn
            for t, val in enumerate(v):
                if val:
                    out[base + t] += coef * val
    return out


def cup(c1: HClass, c2: HClass, seed: int | None = None) -> HClass:
    """(c1 u c2)(x) = sum c1(x') (x) c2(x'') in H^{p1+p2}(G; N1 (x) N2)."""
    A, B = c1.home, c2.home
    for X in (A, B):
        if not (isinstance(X, HomologyGroup) and X.kind == "cohomology"):
            raise TypeError("cup needs cohomology classes")
    if A.group is not B.group or A.resolution is not B.resolution:
        raise ValueError("classes live over different groups or resolutions")
    R = A.resolution
    p1, p2 = A.degree, B.degree
    q = p1 + p2
    N1, N2 = A.module, B.module
    N = tensor(N1, N2)
    target = cohomology(A.group, N, q, R)
    D = diagonal_for(R, q, seed)
    a_rep, b_rep = A.representative(c1), B.representative(c2)
    n1, n2 = N1.rank, N2.rank
    out = [0] * (R.ranks[q] * n1 * n2)
    for i, terms in enumerate(D.terms[q]):
        for (pp, k, g, l, h), coef in terms.items():
            if pp != p1:
                continue
            u = a_rep[k * n1:(k + 1) * n1]
            w = b_rep[l * n2:(l + 1) * n2]
            if not any(u) or not any(w):
                continue
            v = _kron_vec(N1.matrices[g].apply(u), N2.matrices[h].apply(w))
            base = i * n1 * n2
            for t, val in enumerate(v):
                if val:
                    out[base + t] += coef * val
    return target.class_of(out)


def cap_map(c: HClass, q: int, M: GModule | None = None, seed: int | None = None) -> HMap:
    """The homomorphism - n c from H_q(G; M)."""
    C = c.home
    G = C.group
    X = homology(G, M, q, C.resolution)
    imgs = [cap(g, c, seed) for g in X.gens()]
    T = imgs[0].home if imgs else homology(G, tensor(X.module, C.module), q - C.degree, C.resolution)
    cols = [y.coords for y in imgs]
    return HMap(X, T, IntMatrix.from_columns(cols, T.ngens), "cap")


# -- Euler classes -----------------------------------------------------------

@dataclass(frozen=True, eq=False)
class EulerClass:
    rep: MatrixRep
    weight: int
    cls: HClass

    def is_generator(self) -> bool:
        H = self.cls.home
        return self.cls.order() == H.order() and len(H.moduli) == 1


def degree_two_generator(G: FiniteGroup) -> HClass:
    """The class of the cocycle e_2 -> 1 on the periodic resolution of a cyclic group."""
    H2 = cohomology(G, trivial_module(G), 2)
    if H2.resolution.builder != "periodic":
        raise GroupError("degree-two generator needs a cyclic group")
    return H2.class_of([1])


def euler_class_cyclic(rep: MatrixRep) -> EulerClass:
    """w times the canonical generator of H^2(G; Z) for a plane rotation
    representation of a cyclic group, w the rotation weight of the generator."""
    G = rep.fiber
    if rep.dimension != 2 or not G.is_cyclic():
        raise GroupError("Euler classes are defined here for 2-dimensional reps of cyclic groups")
    R = working_resolution(G, 3)
    gen = None
    for g in G.generators.values():
        if G.element_order(g) == G.order:
            gen = g
            break
    mats = rep.all_images()
    w = rotation_weight(mats[gen], G.order)
    if w is None:
        raise GroupError("representation is not of rotation type")
    if R.builder != "periodic":
        raise GroupError("unexpected resolution for a cyclic group")
    return EulerClass(rep, w, w * degree_two_generator(G))
