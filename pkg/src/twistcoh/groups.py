"""Finite groups stored as multiplication tables, their homomorphisms, and
semidirect extensions G x| Z described by a single automorphism.

Elements are integers 0..order-1.  Every constructor validates the table
exhaustively, which is cheap at the sizes used here (order <= 64).
"""

from __future__ import annotations

import json
import re
from collections import deque
from dataclasses import dataclass
from typing import Any, Mapping, Sequence

from .errors import BudgetError
from .linalg import IntMatrix

MAX_ORDER = 64


class GroupError(ValueError):
    pass


class OrderLimitError(GroupError, BudgetError):
    """The requested group is larger than the supported maximum."""


class RelationError(GroupError):
    """A proposed map fails a defining relation."""


class FiniteGroup:
    def __init__(self, mult: Sequence[Sequence[int]], generators: Mapping[str, int],
                 labels: Sequence[str] | None = None, name: str = "G",
                 factors: tuple[FiniteGroup, FiniteGroup] | None = None,
                 validate: bool = True):
        n = len(mult)
        if n > MAX_ORDER:
            raise OrderLimitError("order %d exceeds the supported maximum %d" % (n, MAX_ORDER))
        self.order = n
        self.mult = [list(r) for r in mult]
        self.name = name
        self.labels = list(labels) if labels is not None else [str(i) for i in range(n)]
        self.generators = dict(generators)
        self.factors = factors
        ident = [e for e in range(n) if all(self.mult[e][g] == g and self.mult[g][e] == g
                                             for g in range(n))]
        if len(ident) != 1:
            raise GroupError("table has no two-sided identity")
        self.identity = ident[0]
        inv = [-1] * n
        for g in range(n):
            row = self.mult[g]
            for h in range(n):
                if row[h] == self.identity:
                    inv[g] = h
                    break
        if -1 in inv:
            raise GroupError("some element has no inverse")
        self.inverse = inv
        if validate:
            self.validate()
        self._index = {lab: i for i, lab in enumerate(self.labels)}
        self._cyclic_gen: int | None = None
        for g in list(self.generators.values()) + list(range(n)):
            if self.element_order(g) == n:
                self._cyclic_gen = g
                break

    def validate(self) -> None:
        n, m, e = self.order, self.mult, self.identity
        for g in range(n):
            if m[g][self.inverse[g]] != e or m[self.inverse[g]][g] != e:
                raise GroupError("inverse table inconsistent at %s" % self.labels[g])
            if sorted(m[g]) != list(range(n)):
                raise GroupError("row %s is not a permutation" % self.labels[g])
        for a in range(n):
            ma = m[a]
            for b in range(n):
                mab = m[ma[b]]
                mb = m[b]
                for c in range(n):
                    if mab[c] != ma[mb[c]]:
                        raise GroupError("associativity fails at (%s,%s,%s)"
                                         % (self.labels[a], self.labels[b], self.labels[c]))
        if sorted(self.closure(self.generators.values())) != list(range(n)):
            raise GroupError("named generators do not generate the group")

    def __repr__(self):
        return "FiniteGroup(%s, order=%d)" % (self.name, self.order)

    def __len__(self):
        return self.order

    def mul(self, *elts: int) -> int:
        out = self.identity
        for x in elts:
            out = self.mult[out][x]
        return out

    def inv(self, g: int) -> int:
        return self.inverse[g]

    def power(self, g: int, k: int) -> int:
        if k < 0:
            g, k = self.inverse[g], -k
        out = self.identity
        for _ in range(k):
            out = self.mult[out][g]
        return out

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != self.identity:
            x = self.mult[x][g]
            k += 1
        return k

    def __getitem__(self, key: str | int) -> int:
        """Look up an element by generator name, label, or index."""
        if isinstance(key, int):
            if not 0 <= key < self.order:
                raise GroupError("no element %d" % key)
            return key
        if key in self.generators:
            return self.generators[key]
        if key in self._index:
            return self._index[key]
        raise GroupError("%s has no element named %r" % (self.name, key))

    def label(self, g: int) -> str:
        return self.labels[g]

    def closure(self, gens) -> list[int]:
        seen = {self.identity}
        queue = deque([self.identity])
        gens = list(gens)
        while queue:
            x = queue.popleft()
            for g in gens:
                y = self.mult[x][g]
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return sorted(seen)

    def is_abelian(self) -> bool:
        m = self.mult
        return all(m[a][b] == m[b][a] for a in range(self.order) for b in range(a))

    @property
    def cyclic_generator(self) -> int | None:
        return self._cyclic_gen

    def is_cyclic(self) -> bool:
        return self._cyclic_gen is not None

    def center(self) -> list[int]:
        m = self.mult
        return [a for a in range(self.order) if all(m[a][b] == m[b][a] for b in range(self.order))]

    def bfs_words(self) -> list[tuple[int, int, int]]:
        """Spanning tree of the Cayley graph: triples (element, parent, generator)
        with element = parent * generator, in BFS order from the identity."""
        gens = list(self.generators.values())
        seen = {self.identity}
        out = []
        queue = deque([self.identity])
        while queue:
            x = queue.popleft()
            for g in gens:
                y = self.mult[x][g]
                if y not in seen:
                    seen.add(y)
                    out.append((y, x, g))
                    queue.append(y)
        return out


# -- constructions ----------------------------------------------------------

def cyclic_group(n: int, gen: str = "b") -> FiniteGroup:
    if n < 1:
        raise GroupError("cyclic group needs n >= 1")
    mult = [[(a + b) % n for b in range(n)] for a in range(n)]
    labels = ["e"] + [gen if k == 1 else "%s^%d" % (gen, k) for k in range(1, n)]
    gens = {gen: 1 % n} if n > 1 else {}
    return FiniteGroup(mult, gens, labels, name="Z%d" % n)


def trivial_group() -> FiniteGroup:
    return FiniteGroup([[0]], {}, ["e"], name="1")


def direct_product(A: FiniteGroup, B: FiniteGroup, gen_names: Sequence[str] | None = None,
                   name: str | None = None, labels: Sequence[str] | None = None) -> FiniteGroup:
    """Elements (a, b) are stored at index a * |B| + b."""
    nb = B.order
    n = A.order * nb
    mult = [[A.mult[x // nb][y // nb] * nb + B.mult[x % nb][y % nb] for y in range(n)]
            for x in range(n)]
    gens = [(k, g * nb + B.identity) for k, g in A.generators.items()]
    gens += [(k, A.identity * nb + g) for k, g in B.generators.items()]
    if gen_names is not None:
        gens = [(new, idx) for new, (_, idx) in zip(gen_names, gens)]
    elif len({k for k, _ in gens}) < len(gens):
        gens = [("%s%d" % (k, 1 if i < len(A.generators) else 2), idx)
                for i, (k, idx) in enumerate(gens)]
    if labels is None:
        labels = ["(%s,%s)" % (A.labels[x // nb], B.labels[x % nb]) for x in range(n)]
    return FiniteGroup(mult, dict(gens), labels, name=name or "%sx%s" % (A.name, B.name),
                       factors=(A, B))


def semidirect_z2(N: FiniteGroup, sigma: GroupHom, gen: str = "t", name: str | None = None,
                  labels: Sequence[str] | None = None) -> FiniteGroup:
    """N x| Z2 with the Z2 generator acting by the involution sigma.

    Element (n, s) sits at index 2 n + s and (n,s)(n',s') = (n sigma^s(n'), s+s').
    """
    if sigma.source is not N or sigma.target is not N or not sigma.is_bijective:
        raise GroupError("sigma must be an automorphism of N")
    if compose(sigma, sigma).images != list(range(N.order)) or sigma.images == list(range(N.order)):
        raise GroupError("automorphism is not of order 2")
    n = 2 * N.order
    sig = [list(range(N.order)), sigma.images]
    mult = [[0] * n for _ in range(n)]
    for x in range(n):
        a, s = divmod(x, 2)
        for y in range(n):
            b, t = divmod(y, 2)
            mult[x][y] = 2 * N.mult[a][sig[s][b]] + (s + t) % 2
    gens = {k: 2 * g for k, g in N.generators.items()}
    gens[gen] = 2 * N.identity + 1
    if labels is None:
        labels = ["(%s,%d)" % (N.labels[x // 2], x % 2) for x in range(n)]
    return FiniteGroup(mult, gens, labels, name=name or "%s:Z2" % N.name)


def quaternion_group() -> FiniteGroup:
    """Q8 = {+-1, +-i, +-j, +-k}; element 2u + s is (-1)^s times unit u in (1, i, j, k)."""
    # unit products: table[u][v] = (sign, unit)
    table = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }
    mult = [[0] * 8 for _ in range(8)]
    for x in range(8):
        u, s = divmod(x, 2)
        for y in range(8):
            v, t = divmod(y, 2)
            sign, w = table[u, v]
            neg = (s + t + (sign < 0)) % 2
            mult[x][y] = 2 * w + neg
    names = ["1", "i", "j", "k"]
    labels = [("-" if x % 2 else "") + names[x // 2] for x in range(8)]
    return FiniteGroup(mult, {"i": 2, "j": 4}, labels, name="Q8")


# -- homomorphisms ------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class GroupHom:
    source: FiniteGroup
    target: FiniteGroup
    images: list[int]
    name: str = ""

    def __call__(self, g: int) -> int:
        return self.images[g]

    @property
    def is_injective(self) -> bool:
        return len(set(self.images)) == self.source.order

    @property
    def is_surjective(self) -> bool:
        return len(set(self.images)) == self.target.order

    @property
    def is_bijective(self) -> bool:
        return self.is_injective and self.is_surjective

    def kernel(self) -> list[int]:
        return [g for g in range(self.source.order) if self.images[g] == self.target.identity]

    def image(self) -> list[int]:
        return sorted(set(self.images))

    def inverse(self) -> GroupHom:
        if not self.is_bijective:
            raise GroupError("homomorphism is not invertible")
        inv = [0] * self.source.order
        for g, h in enumerate(self.images):
            inv[h] = g
        return GroupHom(self.target, self.source, inv, name=self.name + "^-1")

    def check(self) -> None:
        G, H = self.source, self.target
        if len(self.images) != G.order:
            raise GroupError("image table has wrong length")
        im = self.images
        for a in range(G.order):
            for b in range(G.order):
                if im[G.mult[a][b]] != H.mult[im[a]][im[b]]:
                    raise RelationError("phi(%s*%s) != phi(%s)*phi(%s)"
                                        % (G.labels[a], G.labels[b], G.labels[a], G.labels[b]))


GroupAut = GroupHom


def make_hom(G: FiniteGroup, H: FiniteGroup, generator_images: Mapping[str | int, str | int],
             name: str = "") -> GroupHom:
    """Extend an assignment on the generators of G to a homomorphism G -> H."""
    gen_img = {}
    for k, v in generator_images.items():
        gen_img[G[k]] = H[v]
    missing = [k for k, g in G.generators.items() if g not in gen_img]
    if missing:
        raise GroupError("no image given for generator(s) %s" % ", ".join(missing))
    images = [-1] * G.order
    images[G.identity] = H.identity
    for y, x, g in G.bfs_words():
        images[y] = H.mult[images[x]][gen_img[g]]
    # every Cayley-graph edge must agree with the tree assignment
    for x in range(G.order):
        for gname, g in G.generators.items():
            y = G.mult[x][g]
            if images[y] != H.mult[images[x]][gen_img[g]]:
                raise RelationError("relation violated: phi(%s)*phi(%s) != phi(%s*%s)"
                                    % (G.labels[x], gname, G.labels[x], gname))
    hom = GroupHom(G, H, images, name)
    hom.check()
    return hom


def identity_hom(G: FiniteGroup) -> GroupHom:
    return GroupHom(G, G, list(range(G.order)), name="id")


def compose(phi: GroupHom, psi: GroupHom) -> GroupHom:
    """phi after psi."""
    if psi.target is not phi.source:
        raise GroupError("cannot compose: target of inner map is not the source of the outer")
    return GroupHom(psi.source, phi.target, [phi.images[x] for x in psi.images],
                    name="%s.%s" % (phi.name, psi.name))


def conjugation_aut(G: FiniteGroup, g: int | str) -> GroupHom:
    """x -> g x g^-1."""
    g = G[g]
    gi = G.inverse[g]
    aut = GroupHom(G, G, [G.mul(g, x, gi) for x in range(G.order)],
                   name="conj(%s)" % G.labels[g])
    aut.check()
    return aut


def inversion_aut(G: FiniteGroup) -> GroupHom:
    if not G.is_abelian():
        raise GroupError("inversion is an automorphism only of abelian groups")
    return GroupHom(G, G, list(G.inverse), name="inv")


def swap_aut(G: FiniteGroup) -> GroupHom:
    if G.factors is None or G.factors[0].order != G.factors[1].order:
        raise GroupError("swap needs a product of two groups of equal order")
    A, B = G.factors
    if A.mult != B.mult:
        raise GroupError("swap needs two identical factors")
    nb = B.order
    aut = GroupHom(G, G, [(x % nb) * nb + x // nb for x in range(G.order)], name="swap")
    aut.check()
    return aut


def restrict_hom(phi: GroupHom, sub: GroupHom, target_sub: GroupHom | None = None) -> GroupHom:
    """phi restricted along an inclusion sub: H -> source, landing in target_sub if given."""
    out = compose(phi, sub)
    if target_sub is None:
        return out
    back = {v: i for i, v in enumerate(target_sub.images)}
    try:
        images = [back[x] for x in out.images]
    except KeyError:
        raise GroupError("image does not lie in the given subgroup") from None
    return GroupHom(sub.source, target_sub.source, images, name=phi.name)


def subgroup(G: FiniteGroup, generators: Mapping[str, int | str], name: str = "H") -> GroupHom:
    """Subgroup generated by the named elements, returned as its inclusion map."""
    gens = {k: G[v] for k, v in generators.items()}
    elts = G.closure(gens.values())
    pos = {g: i for i, g in enumerate(elts)}
    mult = [[pos[G.mult[a][b]] for b in elts] for a in elts]
    H = FiniteGroup(mult, {k: pos[g] for k, g in gens.items()}, [G.labels[g] for g in elts],
                    name=name)
    return GroupHom(H, G, elts, name="incl")


def index(sub: GroupHom) -> int:
    if not sub.is_injective:
        raise GroupError("not a subgroup inclusion")
    return sub.target.order // sub.source.order


def coset_representative(sub: GroupHom) -> int:
    """Smallest element of the target outside an index-2 subgroup."""
    if index(sub) != 2:
        raise GroupError("subgroup has index %d, not 2" % index(sub))
    inside = set(sub.images)
    return min(g for g in range(sub.target.order) if g not in inside)


# -- extensions by Z --------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ZExtension:
    """fiber x| Z where the generator of Z conjugates by theta: a g a^-1 = theta(g)."""

    fiber: FiniteGroup
    theta: GroupHom
    name: str = ""

    def __post_init__(self):
        if self.theta.source is not self.fiber or self.theta.target is not self.fiber:
            raise GroupError("theta must be an endomorphism of the fiber")
        if not self.theta.is_bijective:
            raise GroupError("theta must be an automorphism")
        self.theta.check()

    def __repr__(self):
        return "ZExtension(%s)" % (self.name or self.fiber.name + ":Z")


@dataclass(frozen=True, eq=False)
class ExtensionHom:
    """A map of extensions that is phi on fibers and the identity on Z."""

    source: ZExtension
    target: ZExtension
    fiber_map: GroupHom
    name: str = ""

    def __post_init__(self):
        phi = self.fiber_map
        if phi.source is not self.source.fiber or phi.target is not self.target.fiber:
            raise GroupError("fiber map does not match the extensions")
        left = compose(phi, self.source.theta).images
        right = compose(self.target.theta, phi).images
        if left != right:
            raise GroupError("fiber map does not intertwine the two automorphisms")


def restrict_extension(E: ZExtension, inclusion: GroupHom, name: str = "") -> tuple[ZExtension, ExtensionHom]:
    """Sub-extension H x| Z for a theta-invariant subgroup H of the fiber."""
    if inclusion.target is not E.fiber or not inclusion.is_injective:
        raise GroupError("inclusion must be an injective map into the fiber")
    pos = {g: i for i, g in enumerate(inclusion.images)}
    try:
        images = [pos[E.theta.images[g]] for g in inclusion.images]
    except KeyError:
        raise GroupError("subgroup is not invariant under theta") from None
    H = inclusion.source
    sub = ZExtension(H, GroupHom(H, H, images, name="theta|"), name=name)
    return sub, ExtensionHom(sub, E, inclusion, name="incl")


def extension_deck(E: ZExtension, sub: ExtensionHom) -> GroupHom:
    """Conjugation by the chosen coset representative, restricted to an index-2 fiber subgroup."""
    s = coset_representative(sub.fiber_map)
    c = conjugation_aut(E.fiber, s)
    return restrict_hom(c, sub.fiber_map, sub.fiber_map)


# -- matrix representations -------------------------------------------------

@dataclass
class MatrixRep:
    """Integer matrix representation: images of the fiber generators and, for
    an extension, of the Z generator."""

    group: FiniteGroup | ZExtension
    dimension: int
    images: dict[str, IntMatrix]
    theta_image: IntMatrix | None = None
    name: str = ""

    @property
    def fiber(self) -> FiniteGroup:
        return self.group.fiber if isinstance(self.group, ZExtension) else self.group

    def all_images(self) -> list[IntMatrix]:
        """Images of every fiber element, or raises RelationError."""
        G = self.fiber
        gen_img = {G[k]: v for k, v in self.images.items()}
        out: list[IntMatrix | None] = [None] * G.order
        out[G.identity] = IntMatrix.identity(self.dimension)
        for y, x, g in G.bfs_words():
            out[y] = out[x] @ gen_img[g]
        for x in range(G.order):
            for gname, g in G.generators.items():
                if out[G.mult[x][g]] != out[x] @ gen_img[g]:
                    raise RelationError("relation violated at %s*%s" % (G.labels[x], gname))
        return out  # type: ignore[return-value]


@dataclass
class RepReport:
    relations_hold: bool
    failed_relation: str | None
    signed_permutation: bool
    orthogonal: bool
    det_character: dict[str, int]
    theta_compatible: bool | None
    rotation_weight: int | None

    @property
    def ok(self) -> bool:
        return self.relations_hold and self.orthogonal and self.theta_compatible is not False


def _is_signed_permutation(M: IntMatrix) -> bool:
    for r in M.data:
        nz = [x for x in r if x]
        if len(nz) != 1 or abs(nz[0]) != 1:
            return False
    return all(sum(1 for r in M.data if r[j]) == 1 for j in range(M.cols))


def rotation_weight(M: IntMatrix, n: int) -> int | None:
    """w with M = rotation by 2 pi w / n, if M is an integral plane rotation."""
    if M.shape != (2, 2):
        return None
    J = IntMatrix.from_rows([[0, -1], [1, 0]])
    P = IntMatrix.identity(2)
    for r in range(4):
        if P == M:
            # rotation by r * pi/2 = 2 pi w / n
            if (r * n) % 4:
                return None
            return (r * n // 4) % n
        P = P @ J
    return None


def verify_matrix_rep(rep: MatrixRep) -> RepReport:
    G = rep.fiber
    failed = None
    try:
        mats = rep.all_images()
        relations = True
    except RelationError as exc:
        mats, relations, failed = None, False, str(exc)
    gens = list(rep.images.values())
    if rep.theta_image is not None:
        gens.append(rep.theta_image)
    signed = all(_is_signed_permutation(M) for M in gens)
    orth = all(M @ M.T == IntMatrix.identity(rep.dimension) for M in gens)
    dets = {k: M.det() for k, M in rep.images.items()}
    theta_ok = None
    if isinstance(rep.group, ZExtension):
        A = rep.theta_image
        dets["theta"] = A.det()
        theta_ok = False
        if mats is not None and A is not None and A.det() in (1, -1):
            th = rep.group.theta
            # a g a^-1 = theta(g)  <=>  A M_g = M_theta(g) A
            theta_ok = all(A @ mats[g] == mats[th(g)] @ A for g in range(G.order))
    weight = None
    if rep.dimension == 2 and G.is_cyclic() and mats is not None:
        weight = rotation_weight(mats[G.cyclic_generator], G.order)
    return RepReport(relations, failed, signed, orth, dets, theta_ok, weight)


def det_character(rep: MatrixRep) -> list[int]:
    """g -> det(rep(g)) on the fiber."""
    return [M.det() for M in rep.all_images()]


# -- group expressions --------------------------------------------------------

_TOKEN = re.compile(r"\s*([A-Za-z_][A-Za-z0-9_]*|\d+|[(),])")


def _parse_expr(text: str) -> Any:
    tokens = _TOKEN.findall(text)
    if "".join(tokens) != re.sub(r"\s+", "", text):
        raise GroupError("malformed group expression %r" % text)
    pos = 0

    def parse():
        nonlocal pos
        if pos >= len(tokens):
            raise GroupError("unexpected end of group expression")
        head = tokens[pos]
        pos += 1
        if pos < len(tokens) and tokens[pos] == "(":
            pos += 1
            args = []
            while True:
                if tokens[pos].isdigit():
                    args.append(int(tokens[pos]))
                    pos += 1
                elif tokens[pos] in ("swap", "inversion"):
                    args.append(tokens[pos])
                    pos += 1
                else:
                    args.append(parse())
                if tokens[pos] == ",":
                    pos += 1
                    continue
                if tokens[pos] == ")":
                    pos += 1
                    break
                raise GroupError("malformed group expression %r" % text)
            return {"op": head, "args": args}
        return {"op": head, "args": []}

    try:
        out = parse()
    except IndexError:
        raise GroupError("unexpected end of group expression %r" % text) from None
    if pos != len(tokens):
        raise GroupError("trailing input in group expression %r" % text)
    return out


def build_group(spec: str | Mapping[str, Any]) -> FiniteGroup:
    """Build a group from an expression.

    Accepted forms: preset names (Z4, Q8, Z4xZ2, Z4xZ4, Z4xZ4_sd_Z2), the
    expression grammar Cyclic(n) | Product(A, B) | SemidirectZ2(A, swap|inversion)
    | Quaternion8, or the same tree as JSON, e.g.
    {"op": "Product", "args": [{"op": "Cyclic", "args": [4]}, ...]}.
    """
    from . import catalog

    if isinstance(spec, str):
        s = spec.strip()
        if s.startswith("{"):
            return build_group(json.loads(s))
        if s in catalog.GROUP_PRESETS:
            return catalog.GROUP_PRESETS[s]()
        return build_group(_parse_expr(s))
    op = spec.get("op")
    args = spec.get("args", [])
    if op in catalog.GROUP_PRESETS and not args:
        return catalog.GROUP_PRESETS[op]()
    if op == "Cyclic":
        if len(args) != 1 or not isinstance(args[0], int):
            raise GroupError("Cyclic takes one integer")
        if args[0] > MAX_ORDER:
            raise OrderLimitError("order %d exceeds the supported maximum %d" % (args[0], MAX_ORDER))
        return cyclic_group(args[0])
    if op == "Quaternion8":
        return quaternion_group()
    if op == "Trivial":
        return trivial_group()
    if op == "Product":
        if len(args) != 2:
            raise GroupError("Product takes two groups")
        A, B = build_group(args[0]), build_group(args[1])
        if A.order * B.order > MAX_ORDER:
            raise OrderLimitError("order %d exceeds the supported maximum %d" % (A.order * B.order, MAX_ORDER))
        return direct_product(A, B)
    if op == "SemidirectZ2":
        if len(args) != 2 or args[1] not in ("swap", "inversion"):
            raise GroupError("SemidirectZ2 takes a group and an automorphism name (swap|inversion)")
        N = build_group(args[0])
        if 2 * N.order > MAX_ORDER:
            raise OrderLimitError("order %d exceeds the supported maximum %d" % (2 * N.order, MAX_ORDER))
        sigma = swap_aut(N) if args[1] == "swap" else inversion_aut(N)
        return semidirect_z2(N, sigma)
    raise GroupError("unknown group constructor %r" % (op,))
