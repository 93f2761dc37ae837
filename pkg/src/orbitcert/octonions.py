"""Split octonions, their derivation algebra, and its orthogonal embedding.

The algebra is realized in the paired vector-matrix model: an element is
(a, v; w, b) with scalars a, b and 3-vectors v, w, multiplied by

    (a1, v1; w1, b1)(a2, v2; w2, b2) =
        (a1 a2 + v1.w2,  a1 v2 + b2 v1 - w1 x w2;
         a2 w1 + b1 w2 + v1 x v2,  b1 b2 + w1.v2)

with the right-handed cross product.  The norm N(a, v; w, b) = a b - v.w
is multiplicative, which pins down the sign conventions; the constructor
re-verifies composition and alternativity on a deterministic sample.

The stored basis diagonalizes the norm form from the start (the raw
vector-matrix basis would produce half-integer structure constants):

    e0 = unit,
    e1..e3 = p_i = (0, v_i; -w_i, 0)   norm +1,
    e4     = g   = (1, 0; 0, -1)       norm -1,
    e5..e7 = m_i = (0, v_i; w_i, 0)    norm -1.

All structure constants are integers (validated), the norm Gram is
exactly diag(1, 1,1,1, -1, -1,-1,-1), and the trace-zero part e1..e7
carries the quadric Gram diag(1,1,1,-1,-1,-1,-1) with the positive
vectors first.  ``imaginary_embedding`` therefore only has to strip the
unit coordinate, after re-verifying that the Gram really is the target
one, and returns the derivations as 7x7 matrices inside the orthogonal
algebra of that form.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence

from .linalg import Matrix, hermitian_signature
from .scalars import Scalar, Tower
from .groups import LieAlgebraBasis, solve_linear_constraints

__all__ = ["OctonionAlgebra", "DerivationBasis", "split_octonions",
           "derivations", "imaginary_embedding"]


def _cross(u, v):
    return [u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0]]


def _dot(u, v):
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def _zorn_mul(x, y):
    a1, v1, w1, b1 = x
    a2, v2, w2, b2 = y
    c1 = _cross(w1, w2)
    c2 = _cross(v1, v2)
    return (
        a1 * a2 + _dot(v1, w2),
        [a1 * v2[i] + b2 * v1[i] - c1[i] for i in range(3)],
        [a2 * w1[i] + b1 * w2[i] + c2[i] for i in range(3)],
        b1 * b2 + _dot(w1, v2),
    )


def _zorn_norm(x):
    a, v, w, b = x
    return a * b - _dot(v, w)


# basis element k as a vector-matrix tuple over Fractions
def _basis_tuple(k: int):
    z = Fraction(0)
    a, b = z, z
    v = [z, z, z]
    w = [z, z, z]
    if k == 0:
        a, b = Fraction(1), Fraction(1)
    elif 1 <= k <= 3:           # p_i
        v[k - 1] = Fraction(1)
        w[k - 1] = Fraction(-1)
    elif k == 4:                # g
        a, b = Fraction(1), Fraction(-1)
    else:                       # m_i
        v[k - 5] = Fraction(1)
        w[k - 5] = Fraction(1)
    return (a, v, w, b)


def _tuple_coords(x) -> list:
    # invert e0 = (1,0;0,1), p = (0,v;-w,0), g = (1,0;0,-1), m = (0,v;w,0)
    a, v, w, b = x
    half = Fraction(1, 2)
    out = [(a + b) * half]
    out += [(v[i] - w[i]) * half for i in range(3)]
    out.append((a - b) * half)
    out += [(v[i] + w[i]) * half for i in range(3)]
    return out


class OctonionAlgebra:
    """The split octonions with integer structure constants."""

    dim = 8
    unit_index = 0

    def __init__(self, tower: Tower) -> None:
        self.tower = tower
        table = []
        for i in range(8):
            ti = _basis_tuple(i)
            row = []
            for j in range(8):
                prod = _zorn_mul(ti, _basis_tuple(j))
                row.append(_tuple_coords(prod))
            table.append(row)
        for row in table:
            for cell in row:
                if any(c.denominator != 1 for c in cell):
                    raise AssertionError(
                        "structure constants must be integers")
        self.structure_constants = [
            [[int(c) for c in cell] for cell in row] for row in table]
        gram = [[Fraction(0)] * 8 for _ in range(8)]
        norms = [_zorn_norm(_basis_tuple(i)) for i in range(8)]
        for i in range(8):
            for j in range(8):
                s = _zorn_norm(_zorn_mul_add(i, j))
                gram[i][j] = Fraction(s - norms[i] - norms[j], 2)
        self.norm_gram = Matrix(tower,
                                [[tower.scalar(c) for c in r] for r in gram],
                                cols=8)
        self._self_check()

    def basis_vector(self, k: int) -> list:
        t = self.tower
        return [t.one() if i == k else t.zero() for i in range(8)]

    def multiply(self, x: Sequence[Scalar], y: Sequence[Scalar]) -> list:
        t = self.tower
        out = [t.zero()] * 8
        for i in range(8):
            if x[i].is_zero():
                continue
            row = self.structure_constants[i]
            for j in range(8):
                if y[j].is_zero():
                    continue
                xy = x[i] * y[j]
                for k in range(8):
                    c = row[j][k]
                    if c:
                        out[k] = out[k] + xy * t.scalar(c)
        return out

    def conj(self, x: Sequence[Scalar]) -> list:
        return [x[0]] + [-a for a in x[1:]]

    def norm(self, x: Sequence[Scalar]) -> Scalar:
        gx = self.norm_gram.apply(list(x))
        acc = self.tower.zero()
        for a, b in zip(x, gx):
            if not (a.is_zero() or b.is_zero()):
                acc = acc + a * b
        return acc

    def table_json(self) -> dict:
        return {"schema": "octonion-structure-constants/1",
                "dim": 8, "unit_index": 0,
                "table": self.structure_constants}

    def _self_check(self) -> None:
        t = self.tower
        one = self.basis_vector(0)
        # unital
        for k in range(8):
            e = self.basis_vector(k)
            if self.multiply(one, e) != e or self.multiply(e, one) != e:
                raise AssertionError("unit law fails in octonion table")
        # x * conj(x) = N(x) e0, composition, alternativity on a
        # deterministic integer sample
        samples = []
        state = 1
        for _ in range(6):
            vec = []
            for _k in range(8):
                state = (state * 1103515245 + 12345) % (1 << 31)
                vec.append(t.scalar(state % 7 - 3))
            samples.append(vec)
        for x in samples:
            n = self.norm(x)
            xc = self.multiply(x, self.conj(x))
            if xc != [n if i == 0 else t.zero() for i in range(8)]:
                raise AssertionError("norm law fails in octonion table")
            for y in samples[:3]:
                if self.norm(self.multiply(x, y)) != n * self.norm(y):
                    raise AssertionError("composition fails in octonion table")
                xx = self.multiply(x, x)
                if self.multiply(xx, y) != self.multiply(x, self.multiply(x, y)):
                    raise AssertionError("left alternativity fails")
                if self.multiply(y, xx) != self.multiply(self.multiply(y, x), x):
                    raise AssertionError("right alternativity fails")


def _zorn_mul_add(i: int, j: int):
    a1, v1, w1, b1 = _basis_tuple(i)
    a2, v2, w2, b2 = _basis_tuple(j)
    return (a1 + a2, [v1[k] + v2[k] for k in range(3)],
            [w1[k] + w2[k] for k in range(3)], b1 + b2)


class DerivationBasis:
    """The 14 split-g2 derivations of the octonions, plus (after
    ``imaginary_embedding``) their restriction to the imaginary part."""

    def __init__(self, algebra: LieAlgebraBasis,
                 octonions: OctonionAlgebra) -> None:
        self.algebra = algebra
        self.octonions = octonions
        self.restricted: Optional[LieAlgebraBasis] = None

    @property
    def dim(self) -> int:
        return self.algebra.dim


def split_octonions(tower: Optional[Tower] = None) -> OctonionAlgebra:
    return OctonionAlgebra(tower if tower is not None else Tower())


def derivations(alg: OctonionAlgebra,
                verify_closure: bool = True) -> DerivationBasis:
    """Solve D(x y) = D(x) y + x D(y) on all basis pairs; dim must be 14."""
    t = alg.tower
    basis = [alg.basis_vector(k) for k in range(8)]
    products = [[alg.multiply(basis[i], basis[j]) for j in range(8)]
                for i in range(8)]

    def condition(x: Matrix) -> list:
        cols = [x.col(k) for k in range(8)]
        rows = []
        for i in range(8):
            for j in range(8):
                lhs = x.apply(products[i][j])
                rhs1 = alg.multiply(cols[i], basis[j])
                rhs2 = alg.multiply(basis[i], cols[j])
                rows.extend(a - b - c for a, b, c in zip(lhs, rhs1, rhs2))
        return rows

    sol = solve_linear_constraints(t, 8, [condition],
                                   over_real_structure=True,
                                   real_entries_only=True,
                                   verify_closure=verify_closure,
                                   name="g2-derivations")
    if sol.dim != 14:
        raise AssertionError(
            "derivation algebra has dimension %d, expected 14 — "
            "the multiplication table is wrong" % sol.dim)
    unit = alg.basis_vector(0)
    for d in sol.matrices:
        if any(not s.is_zero() for s in d.apply(unit)):
            raise AssertionError("a derivation fails to kill the unit")
    return DerivationBasis(sol, alg)


def imaginary_embedding(der: DerivationBasis) -> LieAlgebraBasis:
    """Restrict the derivations to the imaginary part, in coordinates
    where the norm Gram is exactly diag(1,1,1,-1,-1,-1,-1).

    The stored basis is already diagonalizing (positive vectors first),
    which is re-verified here; a failure signals a broken construction.
    """
    alg = der.octonions
    t = alg.tower
    for d in der.algebra.matrices:
        if any(not d[0, j].is_zero() for j in range(8)) or \
           any(not d[i, 0].is_zero() for i in range(8)):
            raise AssertionError(
                "a derivation does not preserve the imaginary part")
    g_im = alg.norm_gram.submatrix(range(1, 8), range(1, 8))
    target = Matrix.diag(t, [1, 1, 1, -1, -1, -1, -1])
    if not g_im == target:
        sig = hermitian_signature(g_im)
        raise AssertionError(
            "imaginary norm form not in quadric coordinates "
            "(signature %r)" % (sig,))
    restricted = []
    for d in der.algebra.matrices:
        x = d.submatrix(range(1, 8), range(1, 8))
        if not (x.transpose() * target + target * x).is_zero():
            raise AssertionError(
                "restricted derivation leaves the orthogonal algebra")
        restricted.append(x)
    out = LieAlgebraBasis(t, 7, restricted, "real", name="g2-restricted")
    if out.dim != 14:
        raise AssertionError("restriction is not injective")
    der.restricted = out
    return out
