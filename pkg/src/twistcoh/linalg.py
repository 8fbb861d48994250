"""Exact integer linear algebra.

Everything here works on Python ints, so there is no overflow and no
floating point.  Pivoting is deterministic: the nonzero entry of smallest
magnitude wins, ties go to the lowest index.  Downstream canonical
coordinates depend on that.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence


class IntMatrix:
    """Dense matrix of Python integers, stored row-major as a list of rows."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data: list[list[int]] | None = None):
        self.rows = rows
        self.cols = cols
        if data is None:
            data = [[0] * cols for _ in range(rows)]
        if len(data) != rows or any(len(r) != cols for r in data):
            raise ValueError("entry count does not match %dx%d" % (rows, cols))
        self.data = data

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
        data = [[int(x) for x in r] for r in rows]
        if cols is None:
            cols = len(data[0]) if data else 0
        return cls(len(data), cols, data)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> IntMatrix:
        data = [[int(c[i]) for c in columns] for i in range(rows)]
        return cls(rows, len(columns), data)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        m = cls(n, n)
        for i in range(n):
            m.data[i][i] = 1
        return m

    @classmethod
    def diagonal(cls, entries: Sequence[int]) -> IntMatrix:
        n = len(entries)
        m = cls(n, n)
        for i, x in enumerate(entries):
            m.data[i][i] = int(x)
        return m

    def copy(self) -> IntMatrix:
        return IntMatrix(self.rows, self.cols, [r[:] for r in self.data])

    def tolist(self) -> list[list[int]]:
        return [r[:] for r in self.data]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def T(self) -> IntMatrix:
        return IntMatrix(self.cols, self.rows, [list(c) for c in zip(*self.data)] if self.rows else
                         [[] for _ in range(self.cols)])

    def column(self, j: int) -> list[int]:
        return [r[j] for r in self.data]

    def columns(self) -> list[list[int]]:
        return [self.column(j) for j in range(self.cols)]

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.data[i][j]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self.data == other.data

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(map(tuple, self.data))))

    def __repr__(self) -> str:
        return "IntMatrix(%r)" % (self.data,) if self.rows else "IntMatrix(0x%d)" % self.cols

    def __add__(self, other: IntMatrix) -> IntMatrix:
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix(self.rows, self.cols,
                         [[a + b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)])

    def __sub__(self, other: IntMatrix) -> IntMatrix:
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix(self.rows, self.cols,
                         [[a - b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)])

    def __neg__(self) -> IntMatrix:
        return IntMatrix(self.rows, self.cols, [[-a for a in r] for r in self.data])

    def scale(self, k: int) -> IntMatrix:
        return IntMatrix(self.rows, self.cols, [[k * a for a in r] for r in self.data])

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ValueError("cannot multiply %dx%d by %dx%d" % (self.shape + other.shape))
        out = []
        ocols = other.cols
        odata = other.data
        for r in self.data:
            acc = [0] * ocols
            for k, a in enumerate(r):
                if a:
                    orow = odata[k]
                    for j in range(ocols):
                        b = orow[j]
                        if b:
                            acc[j] += a * b
            out.append(acc)
        return IntMatrix(self.rows, ocols, out)

    def apply(self, vec: Sequence[int]) -> list[int]:
        if len(vec) != self.cols:
            raise ValueError("vector length %d, expected %d" % (len(vec), self.cols))
        return [sum(a * b for a, b in zip(r, vec) if a and b) for r in self.data]

    def kron(self, other: IntMatrix) -> IntMatrix:
        rows = []
        for r in self.data:
            for s in other.data:
                rows.append([a * b for a in r for b in s])
        return IntMatrix(self.rows * other.rows, self.cols * other.cols, rows)

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.data)

    def hstack(self, other: IntMatrix) -> IntMatrix:
        if self.rows != other.rows:
            raise ValueError("row count mismatch")
        return IntMatrix(self.rows, self.cols + other.cols,
                         [r + s for r, s in zip(self.data, other.data)])

    def vstack(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.cols:
            raise ValueError("column count mismatch")
        return IntMatrix(self.rows + other.rows, self.cols, self.tolist() + other.tolist())

    def select_columns(self, idx: Iterable[int]) -> IntMatrix:
        idx = list(idx)
        return IntMatrix(self.rows, len(idx), [[r[j] for j in idx] for r in self.data])

    def select_rows(self, idx: Iterable[int]) -> IntMatrix:
        rows = [self.data[i][:] for i in idx]
        return IntMatrix(len(rows), self.cols, rows)

    def det(self) -> int:
        """Bareiss fraction-free determinant."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        a = self.tolist()
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k]:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]


# -- row operation helpers on raw lists -------------------------------------

def _sub_row(target: list[int], source: list[int], q: int, start: int = 0) -> None:
    for j in range(start, len(target)):
        s = source[j]
        if s:
            target[j] -= q * s


def _first_nonzero(row: Sequence[int]) -> int:
    for j, x in enumerate(row):
        if x:
            return j
    return -1


def hermite_normal_form(A: IntMatrix, transform: bool = True) -> tuple[IntMatrix, IntMatrix | None]:
    """Row-style HNF: returns (H, U) with U @ A == H.

    H is in row echelon form with positive pivots, and entries above each
    pivot reduced into [0, pivot).  Zero rows sit at the bottom.
    """
    m, n = A.rows, A.cols
    H = [r[:] for r in A.data]
    U = [[int(i == j) for j in range(m)] for i in range(m)] if transform else None
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            piv, best = -1, 0
            for i in range(r, m):
                v = H[i][c]
                if v and (piv < 0 or abs(v) < best):
                    piv, best = i, abs(v)
            if piv < 0:
                break
            if piv != r:
                H[r], H[piv] = H[piv], H[r]
                if U is not None:
                    U[r], U[piv] = U[piv], U[r]
            p = H[r][c]
            clean = True
            for i in range(r + 1, m):
                v = H[i][c]
                if v:
                    q = v // p
                    _sub_row(H[i], H[r], q, c)
                    if U is not None:
                        _sub_row(U[i], U[r], q)
                    if H[i][c]:
                        clean = False
            if clean:
                break
        if H[r][c] == 0:
            continue
        if H[r][c] < 0:
            H[r] = [-x for x in H[r]]
            if U is not None:
                U[r] = [-x for x in U[r]]
        p = H[r][c]
        for i in range(r):
            q = H[i][c] // p
            if q:
                _sub_row(H[i], H[r], q, c)
                if U is not None:
                    _sub_row(U[i], U[r], q)
        r += 1
    return IntMatrix(m, n, H), (IntMatrix(m, m, U) if U is not None else None)


@dataclass(frozen=True)
class SmithDecomposition:
    D: IntMatrix
    P: IntMatrix
    Q: IntMatrix
    P_inv: IntMatrix

    @property
    def diagonal(self) -> list[int]:
        return [self.D.data[i][i] for i in range(min(self.D.rows, self.D.cols))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)

    @property
    def invariant_factors(self) -> list[int]:
        return [d for d in self.diagonal if d]


def smith_normal_form(A: IntMatrix) -> SmithDecomposition:
    """P @ A @ Q == D with D diagonal, d1 | d2 | ..., P and Q unimodular."""
    m, n = A.rows, A.cols
    D = [r[:] for r in A.data]
    P = [[int(i == j) for j in range(m)] for i in range(m)]
    Pi = [[int(i == j) for j in range(m)] for i in range(m)]
    Q = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        P[i], P[j] = P[j], P[i]
        for row in Pi:
            row[i], row[j] = row[j], row[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in Q:
            row[i], row[j] = row[j], row[i]

    def row_sub(i, k, q):
        # row_i -= q * row_k
        _sub_row(D[i], D[k], q)
        _sub_row(P[i], P[k], q)
        for row in Pi:
            row[k] += q * row[i]

    def col_sub(j, k, q):
        # col_j -= q * col_k
        for row in D:
            if row[k]:
                row[j] -= q * row[k]
        for row in Q:
            if row[k]:
                row[j] -= q * row[k]

    for t in range(min(m, n)):
        piv, best = None, 0
        for i in range(t, m):
            Di = D[i]
            for j in range(t, n):
                v = Di[j]
                if v and (piv is None or abs(v) < best):
                    piv, best = (i, j), abs(v)
        if piv is None:
            break
        if piv[0] != t:
            swap_rows(t, piv[0])
        if piv[1] != t:
            swap_cols(t, piv[1])
        while True:
            p = D[t][t]
            for i in range(t + 1, m):
                if D[i][t]:
                    row_sub(i, t, D[i][t] // p)
            for j in range(t + 1, n):
                if D[t][j]:
                    col_sub(j, t, D[t][j] // p)
            # smallest leftover in row t / column t moves into the pivot
            cand, best = None, abs(p)
            for i in range(t + 1, m):
                v = D[i][t]
                if v and abs(v) < best:
                    cand, best = ("r", i), abs(v)
            for j in range(t + 1, n):
                v = D[t][j]
                if v and abs(v) < best:
                    cand, best = ("c", j), abs(v)
            if cand is not None:
                if cand[0] == "r":
                    swap_rows(t, cand[1])
                else:
                    swap_cols(t, cand[1])
                continue
            bad = None
            for i in range(t + 1, m):
                Di = D[i]
                for j in range(t + 1, n):
                    if Di[j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            # row_t += row_bad
            row_sub(t, bad, -1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            P[t] = [-x for x in P[t]]
            for row in Pi:
                row[t] = -row[t]
    return SmithDecomposition(IntMatrix(m, n, D), IntMatrix(m, m, P), IntMatrix(n, n, Q),
                              IntMatrix(m, m, Pi))


def kernel_basis(A: IntMatrix) -> IntMatrix:
    """Columns form the HNF-canonical Z-basis of {x : A x = 0}."""
    n = A.cols
    H, U = hermite_normal_form(A.T)
    rank = sum(1 for r in H.data if any(r))
    kernel_rows = U.data[rank:]
    if not kernel_rows:
        return IntMatrix(n, 0, [[] for _ in range(n)])
    K, _ = hermite_normal_form(IntMatrix(len(kernel_rows), n, kernel_rows), transform=False)
    return IntMatrix.from_columns(K.data, n)


def rank(A: IntMatrix) -> int:
    H, _ = hermite_normal_form(A, transform=False)
    return sum(1 for r in H.data if any(r))


class Solver:
    """Precomputed HNF data for repeatedly solving A x = b over the integers."""

    def __init__(self, A: IntMatrix):
        self.A = A
        H, U = hermite_normal_form(A.T)
        self.rank = sum(1 for r in H.data if any(r))
        self._rows = H.data[: self.rank]
        self._pivots = [_first_nonzero(r) for r in self._rows]
        self._U = U.data[: self.rank]
        self._kernel_rows = U.data[self.rank:]

    def solve(self, b: Sequence[int]) -> list[int] | None:
        if len(b) != self.A.rows:
            raise ValueError("right-hand side has length %d, expected %d" % (len(b), self.A.rows))
        res = list(b)
        x = [0] * self.A.cols
        for row, p, urow in zip(self._rows, self._pivots, self._U):
            v = res[p]
            if not v:
                continue
            y, rem = divmod(v, row[p])
            if rem:
                return None
            _sub_row(res, row, y, p)
            for j, u in enumerate(urow):
                if u:
                    x[j] += y * u
        if any(res):
            return None
        return x

    def kernel_vectors(self) -> list[list[int]]:
        return [r[:] for r in self._kernel_rows]


def solve_integer(A: IntMatrix, b: Sequence[int]) -> list[int] | None:
    return Solver(A).solve(b)


@dataclass(frozen=True)
class AbelianPresentation:
    """Z^n / relations, rewritten as Z/d1 + ... + Z/dk + Z^free.

    ``projection`` sends ambient coordinates to canonical coordinates (to be
    reduced modulo the factors); ``section`` sends canonical generators back
    to ambient representatives.
    """

    invariant_factors: tuple[int, ...]
    free_rank: int
    projection: IntMatrix
    section: IntMatrix

    @property
    def moduli(self) -> tuple[int, ...]:
        return self.invariant_factors + (0,) * self.free_rank

    @property
    def ngens(self) -> int:
        return len(self.invariant_factors) + self.free_rank

    @property
    def ambient_rank(self) -> int:
        return self.projection.cols

    def order(self) -> int | None:
        if self.free_rank:
            return None
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    def is_trivial(self) -> bool:
        return self.ngens == 0

    def reduce(self, coords: Sequence[int]) -> list[int]:
        return [c % d if d else c for c, d in zip(coords, self.moduli)]

    def coords(self, ambient: Sequence[int]) -> list[int]:
        return self.reduce(self.projection.apply(ambient))

    def describe(self) -> str:
        return describe_group(self.invariant_factors, self.free_rank)


def describe_group(invariant_factors: Sequence[int], free_rank: int) -> str:
    parts = ["Z/%d" % d for d in invariant_factors]
    if free_rank == 1:
        parts.append("Z")
    elif free_rank > 1:
        parts.append("Z^%d" % free_rank)
    return " + ".join(parts) if parts else "0"


def cokernel_presentation(ambient_rank: int, relations: IntMatrix) -> AbelianPresentation:
    if relations.rows != ambient_rank:
        raise ValueError("relations must have %d rows" % ambient_rank)
    if relations.cols == 0:
        ident = IntMatrix.identity(ambient_rank)
        return AbelianPresentation((), ambient_rank, ident, ident.copy())
    snf = smith_normal_form(relations)
    diag = snf.diagonal + [0] * (ambient_rank - min(relations.rows, relations.cols))
    torsion = [i for i, d in enumerate(diag) if d > 1]
    free = [i for i, d in enumerate(diag) if d == 0]
    keep = torsion + free
    projection = snf.P.select_rows(keep)
    section = snf.P_inv.select_columns(keep)
    return AbelianPresentation(tuple(diag[i] for i in torsion), len(free), projection, section)


def modulus_relations(moduli: Sequence[int]) -> IntMatrix:
    """Columns d_i e_i for every nonzero modulus."""
    cols = []
    k = len(moduli)
    for i, d in enumerate(moduli):
        if d:
            v = [0] * k
            v[i] = d
            cols.append(v)
    return IntMatrix.from_columns(cols, k)


def hom_cokernel(A: IntMatrix, source_moduli: Sequence[int],
                 target_moduli: Sequence[int]) -> AbelianPresentation:
    """Cokernel of a homomorphism between groups given in canonical coordinates."""
    rel = A.hstack(modulus_relations(target_moduli))
    return cokernel_presentation(len(target_moduli), rel)


def hom_kernel(A: IntMatrix, source_moduli: Sequence[int],
               target_moduli: Sequence[int]) -> tuple[AbelianPresentation, IntMatrix]:
    """Kernel of a homomorphism between groups given in canonical coordinates.

    Returns the kernel presentation and the matrix sending its canonical
    generators into source coordinates.
    """
    k = len(source_moduli)
    T = modulus_relations(target_moduli)
    big = A.hstack(T)
    K = kernel_basis(big)
    # the kernel lattice in source coordinates
    L_rows = [K.data[i][:] for i in range(k)]
    L = IntMatrix(k, K.cols, L_rows)
    H, _ = hermite_normal_form(L.T, transform=False)
    basis_rows = [r for r in H.data if any(r)]
    B = IntMatrix.from_columns(basis_rows, k)
    solver = Solver(B)
    rels = []
    for col in modulus_relations(source_moduli).columns():
        c = solver.solve(col)
        if c is None:
            raise ArithmeticError("source relations are not in the kernel; map is ill-defined")
        rels.append(c)
    pres = cokernel_presentation(B.cols, IntMatrix.from_columns(rels, B.cols))
    return pres, B @ pres.section


class Lattice:
    """Incrementally built sublattice of Z^n kept in row Hermite form."""

    def __init__(self, n: int):
        self.n = n
        self.basis: list[list[int]] = []
        self._pivot_row: dict[int, int] = {}

    def __len__(self):
        return len(self.basis)

    def _reduce(self, vec: list[int]) -> list[int]:
        v = list(vec)
        for j in range(self.n):
            x = v[j]
            if not x:
                continue
            r = self._pivot_row.get(j)
            if r is None:
                return v
            row = self.basis[r]
            q = x // row[j]
            if q:
                _sub_row(v, row, q, j)
            if v[j]:
                return v
        return v

    def __contains__(self, vec: Sequence[int]) -> bool:
        return not any(self._reduce(list(vec)))

    def add(self, vec: Sequence[int]) -> bool:
        """Add a vector; returns False if it was already in the lattice."""
        if vec in self:
            return False
        rows = self.basis + [list(vec)]
        H, _ = hermite_normal_form(IntMatrix(len(rows), self.n, rows), transform=False)
        self.basis = [r for r in H.data if any(r)]
        self._pivot_row = {_first_nonzero(r): i for i, r in enumerate(self.basis)}
        return True

    def add_many(self, vecs: Iterable[Sequence[int]]) -> None:
        fresh = [list(v) for v in vecs if v not in self]
        if not fresh:
            return
        rows = self.basis + fresh
        H, _ = hermite_normal_form(IntMatrix(len(rows), self.n, rows), transform=False)
        self.basis = [r for r in H.data if any(r)]
        self._pivot_row = {_first_nonzero(r): i for i, r in enumerate(self.basis)}


def vec_gcd(vec: Iterable[int]) -> int:
    g = 0
    for x in vec:
        g = gcd(g, x)
    return g
