"""Exact linear algebra over the integers and over GF(2).

Everything here works on Python ints, so entries never overflow.  The main
entry points are :func:`snf` (Smith normal form with transforms),
:func:`cokernel`, :func:`skew_normal_form` and :func:`gf2_nullspace`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence


class IntMatrix:
    """Immutable integer matrix stored row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable[int]):
        entries = tuple(int(e) for e in entries)
        if len(entries) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(entries)}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("IntMatrix is immutable")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), cols, (e for r in rows for e in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int | None = None) -> IntMatrix:
        columns = [list(c) for c in columns]
        if rows is None:
            rows = len(columns[0]) if columns else 0
        return cls.from_rows([[c[i] for c in columns] for i in range(rows)], len(columns))

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(n, n, (1 if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> IntMatrix:
        cols = rows if cols is None else cols
        return cls(rows, cols, [0] * (rows * cols))

    @classmethod
    def diagonal(cls, diag: Sequence[int]) -> IntMatrix:
        n = len(diag)
        return cls(n, n, (diag[i] if i == j else 0 for i in range(n) for j in range(n)))

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, idx: tuple[int, int]) -> int:
        i, j = idx
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple[int, ...]:
        return self.entries[j::self.cols] if self.cols else ()

    def to_lists(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def T(self) -> IntMatrix:
        return IntMatrix(self.cols, self.rows, (self[i, j] for j in range(self.cols) for i in range(self.rows)))

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"IntMatrix({self.to_lists()})"

    def _check_same_shape(self, other: IntMatrix):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: IntMatrix) -> IntMatrix:
        self._check_same_shape(other)
        return IntMatrix(self.rows, self.cols, (a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: IntMatrix) -> IntMatrix:
        self._check_same_shape(other)
        return IntMatrix(self.rows, self.cols, (a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> IntMatrix:
        return IntMatrix(self.rows, self.cols, (-a for a in self.entries))

    def scale(self, c: int) -> IntMatrix:
        return IntMatrix(self.rows, self.cols, (c * a for a in self.entries))

    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            if self.cols != other.rows:
                raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
            ocols = [other.col(j) for j in range(other.cols)]
            out = []
            for i in range(self.rows):
                r = self.row(i)
                out.extend(sum(a * b for a, b in zip(r, c)) for c in ocols)
            return IntMatrix(self.rows, other.cols, out)
        return self.apply(other)

    def apply(self, vector: Sequence[int]) -> tuple[int, ...]:
        """Matrix times column vector."""
        if len(vector) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(sum(a * b for a, b in zip(self.row(i), vector)) for i in range(self.rows))

    def __pow__(self, k: int) -> IntMatrix:
        if self.rows != self.cols:
            raise ValueError("power of non-square matrix")
        if k < 0:
            return self.inverse() ** (-k)
        result, base = IntMatrix.identity(self.rows), self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def is_zero(self) -> bool:
        return not any(self.entries)

    def det(self) -> int:
        """Determinant by fraction-free (Bareiss) elimination."""
        n = self.rows
        if n != self.cols:
            raise ValueError("determinant of non-square matrix")
        if n == 0:
            return 1
        a = self.to_lists()
        sign, prev = 1, 1
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

    def inverse(self) -> IntMatrix:
        """Inverse of a unimodular matrix; raises ValueError otherwise."""
        n = self.rows
        if n != self.cols:
            raise ValueError("inverse of non-square matrix")
        a = [[Fraction(x) for x in self.row(i)] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        for k in range(n):
            piv = next((i for i in range(k, n) if a[i][k] != 0), None)
            if piv is None:
                raise ValueError("matrix is singular")
            a[k], a[piv] = a[piv], a[k]
            inv = 1 / a[k][k]
            a[k] = [x * inv for x in a[k]]
            for i in range(n):
                if i != k and a[i][k] != 0:
                    f = a[i][k]
                    a[i] = [x - f * y for x, y in zip(a[i], a[k])]
        out = [x for i in range(n) for x in a[i][n:]]
        if any(x.denominator != 1 for x in out):
            raise ValueError("matrix is not unimodular")
        return IntMatrix(n, n, (int(x) for x in out))

    def rank(self) -> int:
        """Rank over the rationals."""
        a = self.to_lists()
        r = 0
        for c in range(self.cols):
            piv = next((i for i in range(r, self.rows) if a[i][c]), None)
            if piv is None:
                continue
            a[r], a[piv] = a[piv], a[r]
            for i in range(r + 1, self.rows):
                if a[i][c]:
                    f, g = a[i][c], a[r][c]
                    a[i] = [g * x - f * y for x, y in zip(a[i], a[r])]
                    cont = 0
                    for x in a[i]:
                        cont = gcd(cont, x)
                    if cont > 1:
                        a[i] = [x // cont for x in a[i]]
            r += 1
            if r == self.rows:
                break
        return r

    def is_skew_symmetric(self) -> bool:
        return self.rows == self.cols and self == -self.T


def hstack(*mats: IntMatrix) -> IntMatrix:
    rows = mats[0].rows
    return IntMatrix.from_rows([[x for m in mats for x in m.row(i)] for i in range(rows)],
                               sum(m.cols for m in mats))


# --------------------------------------------------------------------------
# Abelian groups


@dataclass(frozen=True)
class AbelianGroup:
    """Z^free_rank + Z/m_1 + ... + Z/m_k with m_1 | m_2 | ... and m_i >= 2."""

    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        torsion = tuple(int(m) for m in self.torsion)
        object.__setattr__(self, "torsion", torsion)
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        if any(m < 2 for m in torsion):
            raise ValueError("torsion coefficients must be >= 2")
        if any(b % a for a, b in zip(torsion, torsion[1:])):
            raise ValueError(f"torsion {torsion} is not a divisibility chain")

    @classmethod
    def from_diagonal(cls, diag: Iterable[int], ambient: int) -> AbelianGroup:
        """Cokernel of a diagonal map into Z^ambient (diag in divisibility order)."""
        diag = [abs(d) for d in diag]
        nonzero = [d for d in diag if d]
        return cls(ambient - len(nonzero), tuple(d for d in nonzero if d > 1))

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self):
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{m}" for m in self.torsion)
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"rank": self.free_rank, "torsion": list(self.torsion)}


def groups_isomorphic(g: AbelianGroup, h: AbelianGroup) -> bool:
    return g.free_rank == h.free_rank and g.torsion == h.torsion


# --------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SnfResult:
    U: IntMatrix
    S: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.S[i, i] for i in range(min(self.S.rows, self.S.cols)))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


def _snf_lists(a: list[list[int]], m: int, n: int, track: bool):
    u = [[int(i == j) for j in range(m)] for i in range(m)] if track else None
    v = [[int(i == j) for j in range(n)] for i in range(n)] if track else None

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        if track:
            u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        if track:
            for r in v:
                r[i], r[j] = r[j], r[i]

    def add_row(dst, src, c):  # row_dst += c * row_src
        a[dst] = [x + c * y for x, y in zip(a[dst], a[src])]
        if track:
            u[dst] = [x + c * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, c):  # col_dst += c * col_src
        for r in a:
            r[dst] += c * r[src]
        if track:
            for r in v:
                r[dst] += c * r[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                row = a[i]
                for j in range(t, n):
                    x = row[j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
            if best is None:
                return u, v
            _, pi, pj = best
            if pi != t:
                swap_rows(t, pi)
            if pj != t:
                swap_cols(t, pj)
            p = a[t][t]
            dirty = False
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // p
                    add_row(i, t, -q)
                    dirty = dirty or a[i][t] != 0
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // p
                    add_col(j, t, -q)
                    dirty = dirty or a[t][j] != 0
            if dirty:
                continue
            bad = next((i for i in range(t + 1, m) if any(a[i][j] % p for j in range(t + 1, n))), None)
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            if track:
                u[t] = [-x for x in u[t]]
    return u, v


def snf(A: IntMatrix) -> SnfResult:
    """Smith normal form U*A*V = S with U, V unimodular.

    Pivots are chosen of minimal absolute value; the diagonal of S is
    nonnegative and satisfies d_i | d_{i+1}.
    """
    m, n = A.shape
    a = A.to_lists()
    u, v = _snf_lists(a, m, n, track=True)
    return SnfResult(IntMatrix.from_rows(u, m), IntMatrix.from_rows(a, n), IntMatrix.from_rows(v, n))


def invariant_factors(A: IntMatrix) -> tuple[int, ...]:
    """Diagonal of the Smith normal form (transforms not tracked)."""
    m, n = A.shape
    a = A.to_lists()
    _snf_lists(a, m, n, track=False)
    return tuple(a[i][i] for i in range(min(m, n)))


def cokernel(A: IntMatrix) -> AbelianGroup:
    """Structure of Z^rows / A(Z^cols)."""
    return AbelianGroup.from_diagonal(invariant_factors(A), A.rows)


class CokernelMap:
    """The quotient map Z^n -> coker(A), with coordinates in SNF form.

    ``image(y)`` returns the free coordinates followed by the torsion
    coordinates (each reduced modulo its invariant factor), matching the
    order of ``group``.
    """

    def __init__(self, A: IntMatrix):
        self.matrix = A
        self.snf = snf(A)
        diag = self.snf.diagonal
        self.rank = sum(1 for d in diag if d)
        self._torsion_idx = [i for i, d in enumerate(diag) if d > 1]
        self._free_idx = list(range(self.rank, A.rows))
        self.group = AbelianGroup(len(self._free_idx), tuple(diag[i] for i in self._torsion_idx))

    def image(self, y: Sequence[int]) -> tuple[int, ...]:
        uy = self.snf.U.apply(y)
        diag = self.snf.diagonal
        return tuple(uy[i] for i in self._free_idx) + tuple(uy[i] % diag[i] for i in self._torsion_idx)

    def is_zero(self, y: Sequence[int]) -> bool:
        return not any(self.image(y))


def kernel_basis(A: IntMatrix) -> list[tuple[int, ...]]:
    """Z-basis of {x : Ax = 0}; the span is saturated in Z^cols."""
    res = snf(A)
    return [res.V.col(j) for j in range(res.rank, A.cols)]


def solve(A: IntMatrix, b: Sequence[int]) -> tuple[int, ...] | None:
    """An integer solution of Ax = b, or None if there is none."""
    res = snf(A)
    ub = res.U.apply(b)
    diag = res.diagonal
    y = [0] * A.cols
    for i, c in enumerate(ub):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if c:
                return None
        elif c % d:
            return None
        else:
            y[i] = c // d
    return res.V.apply(y)


def subgroup_generated(gens: Sequence[Sequence[int]], relations: IntMatrix) -> AbelianGroup:
    """Subgroup of Z^n / relations(Z^k) generated by the images of ``gens``."""
    if not gens:
        return AbelianGroup()
    g = IntMatrix.from_columns(gens, relations.rows)
    ker = kernel_basis(hstack(g, -relations))
    rel = IntMatrix.from_columns([v[:len(gens)] for v in ker], len(gens)) if ker else IntMatrix.zeros(len(gens), 0)
    return cokernel(rel)


# --------------------------------------------------------------------------
# Skew normal form


@dataclass(frozen=True)
class SkewNormalForm:
    """U^T * S * U = diag(0_r, [[0, m_1], [-m_1, 0]], ..., [[0, m_s], [-m_s, 0]])."""

    U: IntMatrix
    zero_block: int
    pair_invariants: tuple[int, ...]

    def normal_form(self) -> IntMatrix:
        n = self.zero_block + 2 * len(self.pair_invariants)
        rows = [[0] * n for _ in range(n)]
        for k, m in enumerate(self.pair_invariants):
            i = self.zero_block + 2 * k
            rows[i][i + 1] = m
            rows[i + 1][i] = -m
        return IntMatrix.from_rows(rows, n)

    @property
    def group(self) -> AbelianGroup:
        tors = tuple(m for m in self.pair_invariants for _ in range(2) if m > 1)
        return AbelianGroup(self.zero_block, tors)


def skew_normal_form(S: IntMatrix) -> SkewNormalForm:
    """Congruence normal form of a skew-symmetric integer matrix.

    Works by simultaneous row/column operations, so skew-symmetry is kept at
    every step.
    """
    if not S.is_skew_symmetric():
        raise ValueError("matrix is not skew-symmetric")
    n = S.rows
    a = S.to_lists()
    u = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap(i, j):
        if i == j:
            return
        a[i], a[j] = a[j], a[i]
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in u:
            r[i], r[j] = r[j], r[i]

    def add(dst, src, c):  # e_dst -> e_dst + c*e_src, applied as a congruence
        a[dst] = [x + c * y for x, y in zip(a[dst], a[src])]
        for r in a:
            r[dst] += c * r[src]
        for r in u:
            r[dst] += c * r[src]

    pairs = []
    k = 0
    while k + 1 < n:
        best = None
        for i in range(k, n):
            for j in range(i + 1, n):
                x = a[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        _, bi, bj = best
        swap(k, bi)
        swap(k + 1, bj)
        if a[k][k + 1] < 0:
            swap(k, k + 1)
        m = a[k][k + 1]
        dirty = False
        for l in range(k + 2, n):
            if a[k][l]:
                add(l, k + 1, -(a[k][l] // m))
                dirty = dirty or a[k][l] != 0
            if a[k + 1][l]:
                add(l, k, a[k + 1][l] // m)
                dirty = dirty or a[k + 1][l] != 0
        if dirty:
            continue
        bad = next((i for i in range(k + 2, n) if any(a[i][j] % m for j in range(k + 2, n))), None)
        if bad is not None:
            # pull the offending row into row k; the next pass shrinks the pivot
            add(k, bad, 1)
            continue
        pairs.append(m)
        k += 2
    # move the zero block to the front
    r = n - 2 * len(pairs)
    perm = list(range(2 * len(pairs), n)) + list(range(2 * len(pairs)))
    u = [[row[p] for p in perm] for row in u]
    return SkewNormalForm(IntMatrix.from_rows(u, n), r, tuple(pairs))


# --------------------------------------------------------------------------
# GF(2)


@dataclass(frozen=True)
class GF2Matrix:
    rows: int
    cols: int
    bits: tuple[tuple[int, ...], ...] = field(default=())

    def __post_init__(self):
        bits = tuple(tuple(int(b) & 1 for b in r) for r in self.bits)
        if len(bits) != self.rows or any(len(r) != self.cols for r in bits):
            raise ValueError("bit matrix shape mismatch")
        object.__setattr__(self, "bits", bits)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> GF2Matrix:
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, tuple(tuple(r) for r in rows))

    @classmethod
    def reduce(cls, A: IntMatrix) -> GF2Matrix:
        return cls.from_rows([[x % 2 for x in A.row(i)] for i in range(A.rows)], A.cols)

    def apply(self, vector: Sequence[int]) -> tuple[int, ...]:
        return tuple(sum(a * b for a, b in zip(r, vector)) % 2 for r in self.bits)


def gf2_nullspace(A: GF2Matrix) -> list[tuple[int, ...]]:
    """Basis of {x : Ax = 0 over GF(2)} from the reduced row echelon form."""
    a = [list(r) for r in A.bits]
    pivots = []
    r = 0
    for c in range(A.cols):
        piv = next((i for i in range(r, A.rows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(A.rows):
            if i != r and a[i][c]:
                a[i] = [x ^ y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(A.cols) if c not in pivots]
    basis = []
    for f in free:
        x = [0] * A.cols
        x[f] = 1
        for i, pc in enumerate(pivots):
            x[pc] = a[i][f]
        basis.append(tuple(x))
    return basis
