"""Free resolutions of Z over integral group rings, chain maps between them,
and diagonal approximations.

A resolution stores, for each degree q >= 1, the images of the free
generators: ``boundaries[q][i][j]`` is the coefficient vector (indexed by
group elements) of the group-ring element a_ij with d(e_i) = sum_j a_ij e_j.
Z-flattened vectors index the summand g * e_i at position i * |G| + g.
"""

from __future__ import annotations

import hashlib
import json
import os
import random
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

from .errors import BudgetError, LiftError
from .groups import (FiniteGroup, GroupError, GroupHom, coset_representative, direct_product,
                     restrict_hom)
from .linalg import IntMatrix, Lattice, Solver, kernel_basis, rank, smith_normal_form
from .modules import GRingElement

MAX_LENGTH = 8
# widest Z-flattened boundary the generic builder will take a kernel of
MAX_FLAT_COLUMNS = 256


def translate(G: FiniteGroup, vec: list[int], x: int) -> list[int]:
    """Left multiplication by x on a flattened vector."""
    n = G.order
    row = G.mult[x]
    out = [0] * len(vec)
    for idx, c in enumerate(vec):
        if c:
            j, h = divmod(idx, n)
            out[j * n + row[h]] = c
    return out


def _add_scaled(acc: list[int], vec: list[int], c: int) -> None:
    for idx, v in enumerate(vec):
        if v:
            acc[idx] += c * v


class FreeResolution:
    def __init__(self, group: FiniteGroup, ranks: list[int], boundaries: list,
                 augmentation: list[int] | None = None, builder: str = "", seed: int | None = None,
                 parts: tuple[FreeResolution, FreeResolution] | None = None):
        self.group = group
        self.ranks = list(ranks)
        self.boundaries = boundaries
        self.augmentation = list(augmentation) if augmentation is not None else [1] * ranks[0]
        self.builder = builder
        self.seed = seed
        self.parts = parts
        self._flat: dict[int, IntMatrix] = {}
        self._solvers: dict[int, Solver] = {}

    @property
    def length(self) -> int:
        return len(self.ranks) - 1

    def __repr__(self):
        return "FreeResolution(%s, %s, ranks=%s)" % (self.group.name, self.builder, self.ranks)

    def boundary_element(self, q: int, i: int, j: int) -> GRingElement:
        return GRingElement(self.group, self.boundaries[q][i][j])

    def flat(self, q: int) -> IntMatrix:
        """Z-matrix of d_q (for q = 0, of the augmentation)."""
        if q in self._flat:
            return self._flat[q]
        G = self.group
        n = G.order
        if q == 0:
            row = []
            for a in self.augmentation:
                row += [a] * n
            D = IntMatrix.from_rows([row], self.ranks[0] * n)
        else:
            D = IntMatrix.zeros(self.ranks[q - 1] * n, self.ranks[q] * n)
            data = D.data
            for i, images in enumerate(self.boundaries[q]):
                for g in range(n):
                    col = i * n + g
                    row = G.mult[g]
                    for j, a in enumerate(images):
                        base = j * n
                        for k, c in enumerate(a):
                            if c:
                                data[base + row[k]][col] += c
        self._flat[q] = D
        return D

    def solver(self, q: int) -> Solver:
        if q not in self._solvers:
            self._solvers[q] = Solver(self.flat(q))
        return self._solvers[q]

    def check_dd(self) -> bool:
        """d o d = 0, computed with group-ring arithmetic."""
        G = self.group
        for q in range(2, self.length + 1):
            for i in range(self.ranks[q]):
                for l in range(self.ranks[q - 2]):
                    acc = GRingElement(G, [0] * G.order)
                    for j in range(self.ranks[q - 1]):
                        acc = acc + self.boundary_element(q, i, j) * self.boundary_element(q - 1, j, l)
                    if not acc.is_zero():
                        return False
        if self.length >= 1:
            for i in range(self.ranks[1]):
                if sum(sum(a) * e for a, e in zip(self.boundaries[1][i], self.augmentation)):
                    return False
        return True

    def check_exact(self) -> bool:
        """The augmented complex of free Z-lattices is exact below the top degree."""
        n = self.group.order
        ranks_of = [rank(self.flat(q)) for q in range(self.length + 1)]
        if ranks_of[0] != 1 or _saturated(self.flat(0)) is False:
            return False
        for q in range(self.length):
            if ranks_of[q] + ranks_of[q + 1] != self.ranks[q] * n:
                return False
            if not _saturated(self.flat(q + 1)):
                return False
        return True

    def validate(self) -> None:
        if not self.check_dd():
            raise ArithmeticError("boundary of boundary is nonzero in %r" % self)
        if not self.check_exact():
            raise ArithmeticError("resolution %r is not exact" % self)

    def to_json(self) -> dict:
        return {"group": group_fingerprint(self.group), "builder": self.builder, "seed": self.seed,
                "ranks": self.ranks, "augmentation": self.augmentation,
                "boundaries": [None] + [[[list(a) for a in row] for row in self.boundaries[q]]
                                        for q in range(1, self.length + 1)]}

    @classmethod
    def from_json(cls, G: FiniteGroup, doc: dict) -> FreeResolution:
        if doc["group"] != group_fingerprint(G):
            raise ValueError("cached resolution belongs to a different group")
        bd = [None] + [[[tuple(a) for a in row] for row in doc["boundaries"][q]]
                       for q in range(1, len(doc["ranks"]))]
        return cls(G, doc["ranks"], bd, doc["augmentation"], doc["builder"], doc["seed"])


def _saturated(A: IntMatrix) -> bool:
    """The column span of A is a direct summand (all invariant factors are 1)."""
    return all(d == 1 for d in smith_normal_form(A).invariant_factors)


def group_fingerprint(G: FiniteGroup) -> str:
    payload = json.dumps([G.mult, sorted(G.generators.items())], separators=(",", ":"))
    return hashlib.sha256(payload.encode()).hexdigest()[:16]


def _check_length(length: int) -> None:
    if length < 0:
        raise ValueError("length must be nonnegative")
    if length > MAX_LENGTH:
        raise BudgetError("resolution length %d exceeds the budget %d" % (length, MAX_LENGTH))


# -- builders -----------------------------------------------------------------

def trivial_resolution(G: FiniteGroup, length: int) -> FreeResolution:
    if G.order != 1:
        raise GroupError("trivial resolution needs the trivial group")
    return FreeResolution(G, [1] + [0] * length, [None] + [[] for _ in range(length)],
                          builder="trivial")


def periodic_resolution(G: FiniteGroup, length: int, gen: int | None = None) -> FreeResolution:
    """... -> ZG --N--> ZG --(g-1)--> ZG -> Z for G cyclic on g."""
    _check_length(length)
    if G.order == 1:
        return trivial_resolution(G, length)
    if gen is None:
        gen = G.cyclic_generator
    if gen is None or G.element_order(gen) != G.order:
        raise GroupError("%s is not cyclic on the chosen generator" % G.name)
    n = G.order
    diff = [0] * n
    diff[gen] += 1
    diff[G.identity] -= 1
    norm = [1] * n
    bd = [None] + [[[tuple(diff if q % 2 else norm)]] for q in range(1, length + 1)]
    return FreeResolution(G, [1] * (length + 1), bd, builder="periodic")


def tensor_basis(R1: FreeResolution, R2: FreeResolution, q: int) -> list[tuple[int, int, int]]:
    out = []
    for p in range(q + 1):
        if p > R1.length or q - p > R2.length:
            continue
        for k in range(R1.ranks[p]):
            for l in range(R2.ranks[q - p]):
                out.append((p, k, l))
    return out


def tensor_resolution(R1: FreeResolution, R2: FreeResolution, group: FiniteGroup | None = None,
                      length: int | None = None) -> FreeResolution:
    """Total complex of R1 (x) R2 over G1 x G2, with
    d(x (x) y) = dx (x) y + (-1)^|x| x (x) dy."""
    G1, G2 = R1.group, R2.group
    if length is None:
        length = min(R1.length, R2.length)
    if length > min(R1.length, R2.length):
        raise ValueError("inputs are too short for a tensor resolution of length %d" % length)
    _check_length(length)
    if group is None:
        group = direct_product(G1, G2)
    if group.order != G1.order * G2.order:
        raise GroupError("group does not match the product of the factors")
    n2 = G2.order
    e1, e2 = G1.identity, G2.identity
    N = group.order
    bases = [tensor_basis(R1, R2, q) for q in range(length + 1)]
    index = [{b: t for t, b in enumerate(B)} for B in bases]
    bd: list = [None]
    for q in range(1, length + 1):
        rows = []
        for p, k, l in bases[q]:
            images = [[0] * N for _ in bases[q - 1]]
            if p >= 1:
                for k2, a in enumerate(R1.boundaries[p][k]):
                    tgt = images[index[q - 1][(p - 1, k2, l)]]
                    for g, c in enumerate(a):
                        if c:
                            tgt[g * n2 + e2] += c
            if q - p >= 1:
                sign = -1 if p % 2 else 1
                for l2, b in enumerate(R2.boundaries[q - p][l]):
                    tgt = images[index[q - 1][(p, k, l2)]]
                    for h, c in enumerate(b):
                        if c:
                            tgt[e1 * n2 + h] += sign * c
            rows.append([tuple(v) for v in images])
        bd.append(rows)
    aug = [a * b for a in R1.augmentation for b in R2.augmentation]
    R = FreeResolution(group, [len(B) for B in bases], bd, aug, builder="tensor",
                       parts=(R1, R2))
    R.bases = bases
    R.index = index
    return R


_PRIME = (1 << 61) - 1


class _ModPEchelon:
    """Row echelon form over F_p, used only to steer generator choice."""

    def __init__(self):
        self.rows: dict[int, list[int]] = {}

    def add(self, vec: list[int]) -> bool:
        v = [x % _PRIME for x in vec]
        for j, x in enumerate(v):
            if not x:
                continue
            row = self.rows.get(j)
            if row is None:
                inv = pow(x, -1, _PRIME)
                self.rows[j] = [(y * inv) % _PRIME for y in v]
                return True
            for t in range(j, len(v)):
                if row[t]:
                    v[t] = (v[t] - x * row[t]) % _PRIME
        return False


def generic_resolution(G: FiniteGroup, length: int, seed: int | None = None) -> FreeResolution:
    """Degree by degree: take a Z-basis of the kernel of the previous boundary
    and adjoin group-ring generators greedily until their translates span it.

    A first pass keeps only candidates whose translates raise the rank; a
    second pass adds whatever is still missing from the lattice.
    """
    _check_length(length)
    if G.order == 1:
        return trivial_resolution(G, length)
    n = G.order
    rng = random.Random(seed) if seed is not None else None
    R = FreeResolution(G, [1], [None], builder="generic", seed=seed)
    for q in range(1, length + 1):
        if R.ranks[q - 1] * n > MAX_FLAT_COLUMNS:
            raise BudgetError("generic resolution of %s would need a kernel of width %d in degree %d"
                              % (G.name, R.ranks[q - 1] * n, q - 1))
        K = kernel_basis(R.flat(q - 1))
        cands = K.columns()
        cands.sort(key=lambda v: (sum(1 for x in v if x), sum(abs(x) for x in v)))
        if rng is not None:
            rng.shuffle(cands)
        ech = _ModPEchelon()
        chosen = []
        for v in cands:
            if len(ech.rows) == K.cols:
                break
            grew = False
            for x in range(n):
                grew = ech.add(translate(G, v, x)) or grew
            if grew:
                chosen.append(v)
        lat = Lattice(K.rows)
        lat.add_many([translate(G, v, x) for v in chosen for x in range(n)])
        for v in cands:
            if v in lat:
                continue
            chosen.append(v)
            lat.add_many([translate(G, v, x) for x in range(n)])
        r_prev = R.ranks[q - 1]
        rows = [[tuple(v[j * n:(j + 1) * n]) for j in range(r_prev)] for v in chosen]
        R.ranks.append(len(chosen))
        R.boundaries.append(rows)
    return R


def restrict_resolution(R: FreeResolution, inclusion: GroupHom) -> FreeResolution:
    """A free G-resolution viewed over an index-2 subgroup H.

    Generator (i, 0) is e_i and (i, 1) is s e_i for the coset representative s;
    they sit at index 2 i and 2 i + 1.
    """
    G, H = R.group, inclusion.source
    if inclusion.target is not G or not inclusion.is_injective or 2 * H.order != G.order:
        raise GroupError("restriction needs an index-2 subgroup")
    s = coset_representative(inclusion)
    pos = {g: h for h, g in enumerate(inclusion.images)}
    s_inv = G.inverse[s]
    split = []
    for g in range(G.order):
        if g in pos:
            split.append((0, pos[g]))
        else:
            split.append((1, pos[G.mult[g][s_inv]]))
    nH = H.order
    bd: list = [None]
    for q in range(1, R.length + 1):
        rows = []
        for i, images in enumerate(R.boundaries[q]):
            for eps in (0, 1):
                out = [[0] * nH for _ in range(2 * R.ranks[q - 1])]
                for j, a in enumerate(images):
                    for k, c in enumerate(a):
                        if c:
                            kk = G.mult[s][k] if eps else k
                            e2, h = split[kk]
                            out[2 * j + e2][h] += c
                rows.append([tuple(v) for v in out])
        bd.append(rows)
    aug = [a for a in R.augmentation for _ in (0, 1)]
    out = FreeResolution(H, [2 * r for r in R.ranks], bd, aug, builder="restricted")
    out.parent = R
    out.inclusion = inclusion
    out.coset_rep = s
    out.split = split
    return out


def to_restricted(Rres: FreeResolution, vec: list[int]) -> list[int]:
    """Rewrite a flattened vector of the parent resolution in the restricted basis."""
    nG = Rres.parent.group.order
    nH = Rres.group.order
    out = [0] * (len(vec) // nG * 2 * nH)
    for idx, c in enumerate(vec):
        if c:
            j, g = divmod(idx, nG)
            eps, h = Rres.split[g]
            out[(2 * j + eps) * nH + h] += c
    return out


# -- resolution choice and caching -----------------------------------------

class ResolutionCache:
    """Write-once JSON store for generically built resolutions."""

    def __init__(self, directory: str | os.PathLike):
        self.directory = Path(directory)

    def _path(self, G: FiniteGroup, builder: str, length: int, seed: int | None) -> Path:
        return self.directory / ("%s-%s-L%d-s%s.json" % (group_fingerprint(G), builder, length, seed))

    def get(self, G, builder, length, seed) -> FreeResolution | None:
        p = self._path(G, builder, length, seed)
        if not p.exists():
            return None
        try:
            with open(p) as fh:
                return FreeResolution.from_json(G, json.load(fh))
        except (ValueError, KeyError, OSError):
            return None

    def put(self, R: FreeResolution, length: int) -> None:
        p = self._path(R.group, R.builder, length, R.seed)
        if p.exists():
            return
        self.directory.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            json.dump(R.to_json(), fh, sort_keys=True, separators=(",", ":"))
        os.replace(tmp, p)


_disk_cache: ResolutionCache | None = None
_memory: dict = {}


def set_cache_dir(directory: str | os.PathLike | None) -> None:
    global _disk_cache
    _disk_cache = ResolutionCache(directory) if directory else None


def default_cache_dir() -> str | None:
    return os.environ.get("HERBERT_CACHE") or None


def best_resolution(G: FiniteGroup, length: int, seed: int | None = None) -> FreeResolution:
    """Periodic for cyclic groups, tensor for direct products, generic otherwise."""
    _check_length(length)
    key = (id(G), seed)
    hit = _memory.get(key)
    if hit is not None and hit[0] is G and hit[1].length >= length:
        return hit[1]
    if G.order == 1:
        R = trivial_resolution(G, length)
    elif G.is_cyclic():
        gen = None
        for g in G.generators.values():
            if G.element_order(g) == G.order:
                gen = g
                break
        R = periodic_resolution(G, length, gen)
    elif G.factors is not None:
        A, B = G.factors
        R = tensor_resolution(best_resolution(A, length, seed), best_resolution(B, length, seed),
                              G, length)
    else:
        cache = _disk_cache
        if cache is None and default_cache_dir():
            cache = ResolutionCache(default_cache_dir())
        R = cache.get(G, "generic", length, seed) if cache else None
        if R is None:
            R = generic_resolution(G, length, seed)
            if cache:
                cache.put(R, length)
    _memory[key] = (G, R)
    return R


# -- chain maps -----------------------------------------------------------------

@dataclass(eq=False)
class ChainMap:
    """``maps[q][i]`` is the image of generator e_i of the source in degree q,
    as a flattened vector of the target; other basis elements follow by
    equivariance through ``hom``."""

    source: FreeResolution
    target: FreeResolution
    hom: GroupHom
    maps: list = field(default_factory=list)

    @property
    def length(self) -> int:
        return len(self.maps) - 1

    def image(self, q: int, i: int, g: int) -> list[int]:
        return translate(self.target.group, self.maps[q][i], self.hom(g))

    def flat(self, q: int) -> IntMatrix:
        n = self.source.group.order
        cols = [self.image(q, i, g) for i in range(self.source.ranks[q]) for g in range(n)]
        return IntMatrix.from_columns(cols, self.target.ranks[q] * self.target.group.order)

    def check(self) -> bool:
        for q in range(1, self.length + 1):
            if self.target.flat(q) @ self.flat(q) != self.flat(q - 1) @ self.source.flat(q):
                return False
        return self.target.flat(0) @ self.flat(0) == self.source.flat(0)


def lift_chain_map(phi: GroupHom, source: FreeResolution, target: FreeResolution,
                   length: int | None = None, seed: int | None = None) -> ChainMap:
    """Comparison theorem: lift the identity of Z through phi, degree by degree.

    A seed adds random kernel vectors to each solution, giving a different
    (chain-homotopic) lift.
    """
    if phi.source is not source.group or phi.target is not target.group:
        raise GroupError("resolutions do not match the homomorphism")
    if length is None:
        length = min(source.length, target.length)
    if length > min(source.length, target.length):
        raise ValueError("resolutions are shorter than %d" % length)
    rng = random.Random(seed) if seed is not None else None
    T = target.group
    nT = T.order
    maps: list = []
    for q in range(length + 1):
        solver = target.solver(q)
        kvecs = solver.kernel_vectors() if rng is not None else []
        level = []
        for i in range(source.ranks[q]):
            if q == 0:
                rhs = [source.augmentation[i]]
            else:
                rhs = [0] * (target.ranks[q - 1] * nT)
                for j, a in enumerate(source.boundaries[q][i]):
                    for k, c in enumerate(a):
                        if c:
                            _add_scaled(rhs, translate(T, maps[q - 1][j], phi(k)), c)
            y = solver.solve(rhs)
            if y is None:
                raise LiftError("no lift in degree %d for generator %d" % (q, i))
            for kv in kvecs[:3]:
                c = rng.choice((-1, 0, 1, 2))
                if c:
                    _add_scaled(y, kv, c)
            level.append(y)
        maps.append(level)
    return ChainMap(source, target, phi, maps)


def restrict_chain_map(f: ChainMap, source: FreeResolution, target: FreeResolution) -> ChainMap:
    """Restrict a chain map to restricted resolutions of index-2 subgroups it preserves."""
    phi = restrict_hom(f.hom, source.inclusion, target.inclusion)
    s = source.coset_rep
    maps = []
    for q in range(f.length + 1):
        level = []
        for i in range(f.source.ranks[q]):
            y = f.maps[q][i]
            level.append(to_restricted(target, y))
            level.append(to_restricted(target, translate(f.target.group, y, f.hom(s))))
        maps.append(level)
    return ChainMap(source, target, phi, maps)


# -- diagonal approximations ---------------------------------------------------

@dataclass(eq=False)
class DiagonalApprox:
    """``terms[q][i]`` maps (p, k, g, l, h) to the coefficient of
    (g e_k) (x) (h e_l), with e_k in degree p and e_l in degree q - p."""

    resolution: FreeResolution
    terms: list

    @property
    def length(self) -> int:
        return len(self.terms) - 1

    def check(self) -> bool:
        R = self.resolution
        G = R.group
        for i in range(R.ranks[0]):
            tot = sum(c * R.augmentation[k] * R.augmentation[l]
                      for (p, k, g, l, h), c in self.terms[0][i].items())
            if tot != R.augmentation[i]:
                return False
        for q in range(1, self.length + 1):
            for i in range(R.ranks[q]):
                lhs: dict = {}
                for (p, k, g, l, h), c in self.terms[q][i].items():
                    if p >= 1:
                        for k2, a in enumerate(R.boundaries[p][k]):
                            for t, x in enumerate(a):
                                if x:
                                    key = (p - 1, k2, G.mult[g][t], l, h)
                                    lhs[key] = lhs.get(key, 0) + c * x
                    if q - p >= 1:
                        sign = -1 if p % 2 else 1
                        for l2, b in enumerate(R.boundaries[q - p][l]):
                            for t, x in enumerate(b):
                                if x:
                                    key = (p, k, g, l2, G.mult[h][t])
                                    lhs[key] = lhs.get(key, 0) + sign * c * x
                rhs: dict = {}
                for j, a in enumerate(R.boundaries[q][i]):
                    for t, x in enumerate(a):
                        if x:
                            row = G.mult[t]
                            for (p, k, g, l, h), c in self.terms[q - 1][j].items():
                                key = (p, k, row[g], l, row[h])
                                rhs[key] = rhs.get(key, 0) + x * c
                if {k: v for k, v in lhs.items() if v} != {k: v for k, v in rhs.items() if v}:
                    return False
        return True


def diagonal_hom(G: FiniteGroup, GG: FiniteGroup) -> GroupHom:
    n = G.order
    return GroupHom(G, GG, [g * n + g for g in range(n)], name="diag")


def diagonal_approx(R: FreeResolution, length: int | None = None,
                    seed: int | None = None) -> DiagonalApprox:
    if length is None:
        length = R.length
    if length > R.length:
        raise ValueError("resolution is shorter than %d" % length)
    if R.parts is not None:
        return _product_diagonal(R, length, seed)
    G = R.group
    n = G.order
    if n == 1:
        return DiagonalApprox(R, [[{(0, 0, 0, 0, 0): 1}]] + [[] for _ in range(length)])
    if n * n > 64:
        raise BudgetError("diagonal of %s needs a group of order %d" % (G.name, n * n))
    GG = direct_product(G, G)
    RR = tensor_resolution(R, R, GG, length)
    f = lift_chain_map(diagonal_hom(G, GG), R, RR, length, seed)
    N = GG.order
    terms = []
    for q in range(length + 1):
        level = []
        for y in f.maps[q]:
            d = {}
            for idx, c in enumerate(y):
                if c:
                    b, x = divmod(idx, N)
                    p, k, l = RR.bases[q][b]
                    g, h = divmod(x, n)
                    d[(p, k, g, l, h)] = c
            level.append(d)
        terms.append(level)
    return DiagonalApprox(R, terms)


def _product_diagonal(R: FreeResolution, length: int, seed: int | None) -> DiagonalApprox:
    """Delta(x (x) y) = sum (-1)^{|x''||y'|} (x' (x) y') (x) (x'' (x) y'')."""
    R1, R2 = R.parts
    D1 = diagonal_approx(R1, length, seed)
    D2 = diagonal_approx(R2, length, seed)
    n2 = R2.group.order
    terms = []
    for q in range(length + 1):
        level = []
        for P, K, L in R.bases[q]:
            d: dict = {}
            for (p1, k1, g1, l1, h1), c1 in D1.terms[P][K].items():
                for (p2, k2, g2, l2, h2), c2 in D2.terms[q - P][L].items():
                    sign = -1 if ((P - p1) * p2) % 2 else 1
                    a = R.index[p1 + p2][(p1, k1, k2)]
                    b = R.index[q - p1 - p2][(P - p1, l1, l2)]
                    key = (p1 + p2, a, g1 * n2 + g2, b, h1 * n2 + h2)
                    d[key] = d.get(key, 0) + sign * c1 * c2
            level.append({k: v for k, v in d.items() if v})
        terms.append(level)
    return DiagonalApprox(R, terms)
