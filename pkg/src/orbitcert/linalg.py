"""Dense exact linear algebra over a scalar tower.

Everything here is plain Gaussian elimination with deterministic pivoting
(first usable row/column wins), which keeps canonical forms reproducible
across runs.  Vectors are plain lists of scalars; matrices are immutable
row-major wrappers.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .scalars import Scalar, Tower, TowerError

__all__ = [
    "Matrix", "Subspace", "rank", "kernel", "column_echelon",
    "column_space_equal", "hermitian_signature", "congruence_diagonalize",
    "vec_add", "vec_sub", "vec_scale", "vec_is_zero",
]

Entry = Union[Scalar, int, Fraction]


def _as_scalar(tower: Tower, x: Entry) -> Scalar:
    if isinstance(x, Scalar):
        return tower._lift(x)
    return tower.scalar(x)


def vec_add(u: Sequence[Scalar], v: Sequence[Scalar]) -> list:
    return [a + b for a, b in zip(u, v)]


def vec_sub(u: Sequence[Scalar], v: Sequence[Scalar]) -> list:
    return [a - b for a, b in zip(u, v)]


def vec_scale(c: Scalar, v: Sequence[Scalar]) -> list:
    return [c * a for a in v]


def vec_is_zero(v: Sequence[Scalar]) -> bool:
    return all(a.is_zero() for a in v)


class Matrix:
    """Immutable dense matrix of tower scalars."""

    __slots__ = ("tower", "rows", "cols", "_e")

    def __init__(self, tower: Tower, entries: Sequence[Sequence[Scalar]],
                 cols: Optional[int] = None) -> None:
        self.tower = tower
        self._e = tuple(tuple(row) for row in entries)
        self.rows = len(self._e)
        if self.rows:
            self.cols = len(self._e[0])
            if any(len(r) != self.cols for r in self._e):
                raise ValueError("ragged matrix rows")
        else:
            self.cols = 0 if cols is None else cols

    # -- constructors ---------------------------------------------------------

    @staticmethod
    def from_rows(tower: Tower, rows: Sequence[Sequence[Entry]]) -> Matrix:
        return Matrix(tower, [[_as_scalar(tower, x) for x in row] for row in rows])

    @staticmethod
    def from_cols(tower: Tower, cols: Sequence[Sequence[Entry]]) -> Matrix:
        if not cols:
            return Matrix(tower, [])
        n = len(cols[0])
        return Matrix(tower, [[_as_scalar(tower, c[i]) for c in cols]
                              for i in range(n)])

    @staticmethod
    def identity(tower: Tower, n: int) -> Matrix:
        one, zero = tower.one(), tower.zero()
        return Matrix(tower, [[one if i == j else zero for j in range(n)]
                              for i in range(n)])

    @staticmethod
    def zeros(tower: Tower, rows: int, cols: int) -> Matrix:
        zero = tower.zero()
        return Matrix(tower, [[zero] * cols for _ in range(rows)], cols=cols)

    @staticmethod
    def diag(tower: Tower, entries: Sequence[Entry]) -> Matrix:
        zero = tower.zero()
        es = [_as_scalar(tower, x) for x in entries]
        n = len(es)
        return Matrix(tower, [[es[i] if i == j else zero for j in range(n)]
                              for i in range(n)])

    # -- access ----------------------------------------------------------------

    def __getitem__(self, ij) -> Scalar:
        i, j = ij
        return self._e[i][j]

    def row(self, i: int) -> list:
        return list(self._e[i])

    def col(self, j: int) -> list:
        return [self._e[i][j] for i in range(self.rows)]

    def col_list(self) -> list:
        return [self.col(j) for j in range(self.cols)]

    def to_lists(self) -> list:
        return [list(r) for r in self._e]

    # -- algebra ----------------------------------------------------------------

    def __add__(self, other: Matrix) -> Matrix:
        self._check_shape(other, same=True)
        return Matrix(self.tower,
                      [[a + b for a, b in zip(r1, r2)]
                       for r1, r2 in zip(self._e, other._e)], cols=self.cols)

    def __sub__(self, other: Matrix) -> Matrix:
        self._check_shape(other, same=True)
        return Matrix(self.tower,
                      [[a - b for a, b in zip(r1, r2)]
                       for r1, r2 in zip(self._e, other._e)], cols=self.cols)

    def __neg__(self) -> Matrix:
        return Matrix(self.tower, [[-a for a in r] for r in self._e],
                      cols=self.cols)

    def scale(self, c: Entry) -> Matrix:
        c = _as_scalar(self.tower, c)
        return Matrix(self.tower, [[c * a for a in r] for r in self._e],
                      cols=self.cols)

    def __mul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise ValueError("shape mismatch %dx%d * %dx%d"
                                 % (self.rows, self.cols, other.rows, other.cols))
            zero = self.tower.zero()
            out = [[zero] * other.cols for _ in range(self.rows)]
            for i in range(self.rows):
                srow = self._e[i]
                orow = out[i]
                for k in range(self.cols):
                    a = srow[k]
                    if a.is_zero():
                        continue
                    brow = other._e[k]
                    for j in range(other.cols):
                        b = brow[j]
                        if not b.is_zero():
                            orow[j] = orow[j] + a * b
            return Matrix(self.tower, out, cols=other.cols)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def apply(self, v: Sequence[Scalar]) -> list:
        if len(v) != self.cols:
            raise ValueError("vector length %d does not match %d columns"
                             % (len(v), self.cols))
        zero = self.tower.zero()
        out = []
        for i in range(self.rows):
            acc = zero
            row = self._e[i]
            for k in range(self.cols):
                x = v[k]
                if not (row[k].is_zero() or (isinstance(x, Scalar) and x.is_zero())):
                    acc = acc + row[k] * x
            out.append(acc)
        return out

    def transpose(self) -> Matrix:
        return Matrix(self.tower,
                      [[self._e[i][j] for i in range(self.rows)]
                       for j in range(self.cols)], cols=self.rows)

    def conj(self) -> Matrix:
        return Matrix(self.tower, [[a.conj() for a in r] for r in self._e],
                      cols=self.cols)

    def conj_transpose(self) -> Matrix:
        return self.transpose().conj()

    def trace(self) -> Scalar:
        t = self.tower.zero()
        for i in range(min(self.rows, self.cols)):
            t = t + self._e[i][i]
        return t

    def is_zero(self) -> bool:
        return all(a.is_zero() for r in self._e for a in r)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.rows != other.rows or self.cols != other.cols:
            return False
        return all(a == b for r1, r2 in zip(self._e, other._e)
                   for a, b in zip(r1, r2))

    __hash__ = None

    def hstack(self, other: Matrix) -> Matrix:
        if self.rows != other.rows:
            raise ValueError("row count mismatch in hstack")
        return Matrix(self.tower, [r1 + r2 for r1, r2 in zip(self._e, other._e)],
                      cols=self.cols + other.cols)

    def vstack(self, other: Matrix) -> Matrix:
        if self.cols != other.cols:
            raise ValueError("column count mismatch in vstack")
        return Matrix(self.tower, self._e + other._e, cols=self.cols)

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> Matrix:
        return Matrix(self.tower,
                      [[self._e[i][j] for j in col_idx] for i in row_idx],
                      cols=len(col_idx))

    def flatten(self) -> list:
        """Row-major vector of all entries."""
        return [a for r in self._e for a in r]

    def _check_shape(self, other: Matrix, same: bool = False) -> None:
        if same and (self.rows != other.rows or self.cols != other.cols):
            raise ValueError("shape mismatch %dx%d vs %dx%d"
                             % (self.rows, self.cols, other.rows, other.cols))

    # -- elimination-based queries ----------------------------------------------

    def det(self) -> Scalar:
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        a = self.to_lists()
        det = self.tower.one()
        for k in range(n):
            piv = None
            for i in range(k, n):
                if not a[i][k].is_zero():
                    piv = i
                    break
            if piv is None:
                return self.tower.zero()
            if piv != k:
                a[k], a[piv] = a[piv], a[k]
                det = -det
            det = det * a[k][k]
            inv = a[k][k].inv()
            for i in range(k + 1, n):
                if a[i][k].is_zero():
                    continue
                f = a[i][k] * inv
                for j in range(k, n):
                    a[i][j] = a[i][j] - f * a[k][j]
        return det

    def inverse(self) -> Matrix:
        if self.rows != self.cols:
            raise ValueError("inverse of a non-square matrix")
        n = self.rows
        a = [self.row(i) + Matrix.identity(self.tower, n).row(i)
             for i in range(n)]
        for k in range(n):
            piv = None
            for i in range(k, n):
                if not a[i][k].is_zero():
                    piv = i
                    break
            if piv is None:
                raise ZeroDivisionError("matrix is singular")
            a[k], a[piv] = a[piv], a[k]
            inv = a[k][k].inv()
            a[k] = [x * inv for x in a[k]]
            for i in range(n):
                if i != k and not a[i][k].is_zero():
                    f = a[i][k]
                    a[i] = [x - f * y for x, y in zip(a[i], a[k])]
        return Matrix(self.tower, [r[n:] for r in a], cols=n)

    # -- serialization ------------------------------------------------------------

    def to_json(self):
        depth = 0
        for r in self._e:
            for a in r:
                depth = max(depth, a._level())
        entries = []
        for r in self._e:
            row = []
            for a in r:
                lvl = a._level()
                row.append(a.to_text() if lvl == 0 else a.coords(lvl))
            entries.append(row)
        return {
            "rows": self.rows,
            "cols": self.cols,
            "radicands": self.tower.serialize_prefix(depth),
            "entries": entries,
        }

    @staticmethod
    def from_json(obj, tower: Optional[Tower] = None) -> Matrix:
        if tower is None:
            tower = Tower.deserialize(obj["radicands"])
        else:
            Scalar.from_json({"radicands": obj["radicands"], "coords": ["0/1+0/1*i"]},
                             tower)
        rows = []
        for r in obj["entries"]:
            row = []
            for cell in r:
                if isinstance(cell, str):
                    row.append(Scalar.from_text(tower, cell))
                else:
                    row.append(Scalar.from_coords(tower, cell))
            rows.append(row)
        m = Matrix(tower, rows, cols=obj["cols"])
        if m.rows != obj["rows"] or m.cols != obj["cols"]:
            raise TowerError("matrix entry grid does not match declared shape")
        return m

    def __repr__(self) -> str:
        return "Matrix(%dx%d)" % (self.rows, self.cols)


def _rref(tower: Tower, rows: list) -> tuple:
    """In-place reduced row echelon; returns (rows, pivot column list)."""
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(rows)):
            if not rows[i][c].is_zero():
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][c].inv()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(m: Matrix) -> int:
    _, pivots = _rref(m.tower, m.to_lists())
    return len(pivots)


def kernel(m: Matrix) -> list:
    """Deterministic basis of the right kernel, as a list of vectors."""
    rows, pivots = _rref(m.tower, m.to_lists())
    zero, one = m.tower.zero(), m.tower.one()
    free = [c for c in range(m.cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [zero] * m.cols
        v[fc] = one
        for r, pc in enumerate(pivots):
            v[pc] = -rows[r][fc]
        basis.append(v)
    return basis


def column_echelon(m: Matrix) -> Matrix:
    """Canonical reduced column echelon form of the column space.

    Columns are ordered by pivot row (topmost first), pivots are 1, and
    pivot rows are cleared across the other columns, so two matrices have
    equal column space iff their canonical forms are equal.
    """
    rows, pivots = _rref(m.tower, m.transpose().to_lists())
    keep = rows[:len(pivots)]
    return Matrix(m.tower, keep, cols=m.rows).transpose()


def column_space_equal(a: Matrix, b: Matrix) -> bool:
    if a.rows != b.rows:
        raise ValueError("ambient dimensions differ")
    return column_echelon(a) == column_echelon(b)


class Subspace:
    """A linear subspace held via its canonical column-echelon basis."""

    __slots__ = ("tower", "ambient_dim", "matrix")

    def __init__(self, tower: Tower, ambient_dim: int, basis: Matrix) -> None:
        if basis.rows != ambient_dim:
            raise ValueError("basis rows do not match ambient dimension")
        self.tower = tower
        self.ambient_dim = ambient_dim
        self.matrix = column_echelon(basis)

    @staticmethod
    def from_vectors(tower: Tower, ambient_dim: int,
                     vectors: Iterable[Sequence[Entry]]) -> Subspace:
        vecs = [[_as_scalar(tower, x) for x in v] for v in vectors]
        for v in vecs:
            if len(v) != ambient_dim:
                raise ValueError("vector length does not match ambient dimension")
        if not vecs:
            return Subspace(tower, ambient_dim,
                            Matrix.zeros(tower, ambient_dim, 0))
        return Subspace(tower, ambient_dim, Matrix.from_cols(tower, vecs))

    @property
    def dim(self) -> int:
        return self.matrix.cols

    def basis_vectors(self) -> list:
        return self.matrix.col_list()

    def contains(self, v: Sequence[Scalar]) -> bool:
        if len(v) != self.ambient_dim:
            raise ValueError("vector length does not match ambient dimension")
        aug = self.matrix.hstack(Matrix.from_cols(self.tower, [list(v)]))
        return rank(aug) == self.dim

    def contains_subspace(self, other: Subspace) -> bool:
        joined = self.matrix.hstack(other.matrix)
        return rank(joined) == self.dim

    def intersect(self, other: Subspace) -> Subspace:
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimensions differ")
        if self.dim == 0 or other.dim == 0:
            return Subspace.from_vectors(self.tower, self.ambient_dim, [])
        joined = self.matrix.hstack(other.matrix)
        vecs = []
        for k in kernel(joined):
            v = self.matrix.apply(k[:self.dim])
            if not vec_is_zero(v):
                vecs.append(v)
        return Subspace.from_vectors(self.tower, self.ambient_dim, vecs)

    def add(self, other: Subspace) -> Subspace:
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimensions differ")
        return Subspace(self.tower, self.ambient_dim,
                        self.matrix.hstack(other.matrix))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.ambient_dim == other.ambient_dim
                and self.matrix == other.matrix)

    __hash__ = None

    def __repr__(self) -> str:
        return "Subspace(dim=%d, ambient=%d)" % (self.dim, self.ambient_dim)


def congruence_diagonalize(g: Matrix) -> tuple:
    """Exact congruence diagonalization of a Hermitian Gram matrix.

    Returns (d, s) with s.T * g * conj(s) diagonal with real diagonal d
    (a list of scalars).  No square roots are taken, so the diagonal is not
    normalized to +-1; its signs carry the signature.  Works unchanged for
    real symmetric matrices.
    """
    n = g.rows
    if g.cols != n:
        raise ValueError("Gram matrix must be square")
    if not g == g.conj_transpose():
        raise ValueError("Gram matrix is not hermitian-symmetric")
    tower = g.tower
    a = g.to_lists()
    s = Matrix.identity(tower, n).to_lists()

    def col_op(i, j, lam):
        # basis change u_i <- u_i + lam * u_j
        for t in range(n):
            s[t][i] = s[t][i] + lam * s[t][j]
        cl = lam.conj()
        for t in range(n):
            a[i][t] = a[i][t] + lam * a[j][t]
        for t in range(n):
            a[t][i] = a[t][i] + cl * a[t][j]

    def swap(i, j):
        for t in range(n):
            s[t][i], s[t][j] = s[t][j], s[t][i]
        a[i], a[j] = a[j], a[i]
        for t in range(n):
            a[t][i], a[t][j] = a[t][j], a[t][i]

    for k in range(n):
        if a[k][k].is_zero():
            piv = None
            for j in range(k + 1, n):
                if not a[j][j].is_zero():
                    piv = j
                    break
            if piv is not None:
                swap(k, piv)
            else:
                found = None
                for i in range(k, n):
                    for j in range(i + 1, n):
                        if not a[i][j].is_zero():
                            found = (i, j)
                            break
                    if found:
                        break
                if found is None:
                    break  # remaining block is identically zero
                i, j = found
                col_op(i, j, a[i][j])  # Q(u_i + a_ij u_j) = 2|a_ij|^2 > 0
                if i != k:
                    swap(k, i)
        pivot = a[k][k]
        pinv = pivot.inv()
        for j in range(k + 1, n):
            if not a[k][j].is_zero():
                col_op(j, k, -(a[j][k] * pinv))
    d = [a[k][k] for k in range(n)]
    for x in d:
        if not x.is_real():
            raise TowerError("hermitian diagonalization produced a non-real "
                             "diagonal entry")
    return d, Matrix(tower, s, cols=n)


def hermitian_signature(g: Matrix) -> tuple:
    """(positives, negatives, zeros) of a Hermitian Gram matrix."""
    d, _ = congruence_diagonalize(g)
    pos = sum(1 for x in d if x.sign() > 0)
    neg = sum(1 for x in d if x.sign() < 0)
    return pos, neg, len(d) - pos - neg
