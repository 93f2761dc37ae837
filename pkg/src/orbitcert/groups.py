"""Matrix groups cut out by exact constraints, and their Lie algebras.

A group is described by a list of constraint tags (preserve a bilinear
form, preserve a hermitian form, determinant one, fix a vector, real
entries).  Each tag knows how to test a group element exactly and how to
linearize itself at the identity.  ``GroupSpec.lie_algebra`` assembles the
linearized conditions into one linear system and solves it by exact
kernel computation.

Ground fields.  Conditions coming from bilinear forms, determinant and
fixed vectors are complex-linear; hermitian and reality conditions only
real-linear.  When any of the latter appear the algebra is solved as a
real Lie algebra (basis over R, ``ground == "real"``); otherwise over C.
Membership, intersections and spans of a real algebra always work with
doubled real coordinates so that only real linear combinations count.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence, Union

from .forms import FormSpec
from .linalg import Matrix, Subspace, _rref, kernel
from .scalars import Scalar, Tower

__all__ = [
    "PreservesBilinear", "PreservesHermitian", "DetOne", "FixesVector",
    "RealEntries", "GroupSpec", "LieAlgebraBasis", "solve_linear_constraints",
    "lie_algebra_of", "isotropy_subalgebra", "check_onishchik_triple",
    "exp_nilpotent", "outer", "nilpotent_orthogonal", "nilpotent_symplectic",
    "nilpotent_unitary",
]


class PreservesBilinear:
    """g^T G g = G for a symmetric or antisymmetric Gram G."""

    antilinear = False

    def __init__(self, form: FormSpec) -> None:
        if form.kind == "hermitian":
            raise ValueError("use PreservesHermitian for hermitian forms")
        self.form = form

    def holds(self, g: Matrix) -> bool:
        return g.transpose() * self.form.gram * g == self.form.gram

    def linearized(self, x: Matrix) -> list:
        g = self.form.gram
        return (x.transpose() * g + g * x).flatten()

    def describe(self) -> str:
        return "preserves %s form %r" % (self.form.kind, self.form.name)


class PreservesHermitian:
    """g^T G conj(g) = G, so that h(gz, gw) = h(z, w)."""

    antilinear = True

    def __init__(self, form: FormSpec) -> None:
        if form.kind != "hermitian":
            raise ValueError("PreservesHermitian needs a hermitian form")
        self.form = form

    def holds(self, g: Matrix) -> bool:
        return g.transpose() * self.form.gram * g.conj() == self.form.gram

    def linearized(self, x: Matrix) -> list:
        g = self.form.gram
        return (x.transpose() * g + g * x.conj()).flatten()

    def describe(self) -> str:
        return "preserves hermitian form %r" % (self.form.name,)


class DetOne:
    antilinear = False

    def holds(self, g: Matrix) -> bool:
        return g.det().is_one()

    def linearized(self, x: Matrix) -> list:
        return [x.trace()]

    def describe(self) -> str:
        return "determinant one"


class FixesVector:
    antilinear = False

    def __init__(self, v: Sequence[Scalar]) -> None:
        self.v = list(v)

    def holds(self, g: Matrix) -> bool:
        gv = g.apply(self.v)
        return all((a - b).is_zero() for a, b in zip(gv, self.v))

    def linearized(self, x: Matrix) -> list:
        return x.apply(self.v)

    def describe(self) -> str:
        return "fixes a marked vector"


class RealEntries:
    """Entries of g (and of algebra elements) are real."""

    antilinear = True

    def holds(self, g: Matrix) -> bool:
        return all(g[i, j].is_real()
                   for i in range(g.rows) for j in range(g.cols))

    def linearized(self, x: Matrix) -> list:
        # handled structurally: real ground solves use real matrix units only
        return []

    def describe(self) -> str:
        return "real entries"


Constraint = Union[PreservesBilinear, PreservesHermitian, DetOne,
                   FixesVector, RealEntries]


class GroupSpec:
    """A matrix group inside GL(dim, C) cut out by constraint tags."""

    def __init__(self, tower: Tower, dim: int,
                 constraints: Sequence[Constraint], name: str = "") -> None:
        self.tower = tower
        self.dim = dim
        self.constraints = list(constraints)
        self.name = name

    @property
    def ground(self) -> str:
        if any(c.antilinear for c in self.constraints):
            return "real"
        return "complex"

    def violations(self, g: Matrix) -> list:
        if g.rows != self.dim or g.cols != self.dim:
            return ["element has wrong shape"]
        return [c.describe() for c in self.constraints if not c.holds(g)]

    def contains(self, g: Matrix) -> bool:
        return not self.violations(g)

    def lie_algebra(self, verify_closure: bool = True,
                    name: str = "") -> "LieAlgebraBasis":
        """Solve the linearized constraints at the identity."""
        conds = [c.linearized for c in self.constraints
                 if not isinstance(c, RealEntries)]
        alg = solve_linear_constraints(
            self.tower, self.dim, conds,
            over_real_structure=(self.ground == "real"),
            real_entries_only=any(isinstance(c, RealEntries)
                                  for c in self.constraints),
            verify_closure=verify_closure,
            name=name or (self.name and self.name + "-alg"))
        return alg

    def __repr__(self) -> str:
        return "GroupSpec(%s, dim=%d, %d constraints)" % (
            self.name or "?", self.dim, len(self.constraints))


def lie_algebra_of(group: GroupSpec, verify_closure: bool = True,
                   name: str = "") -> "LieAlgebraBasis":
    return group.lie_algebra(verify_closure=verify_closure, name=name)


def solve_linear_constraints(tower: Tower, m: int, conditions,
                             over_real_structure: bool = False,
                             real_entries_only: bool = False,
                             verify_closure: bool = False,
                             name: str = "") -> "LieAlgebraBasis":
    """Solve homogeneous linear conditions on an m-by-m matrix unknown.

    Each condition is a callable mapping a Matrix to a list of Scalars and
    must be linear over the ground field: complex-linear by default, or
    merely real-linear when ``over_real_structure`` is set (then the
    unknown ranges over real combinations of E_jk and i E_jk, and every
    output scalar is split into real and imaginary part).  With
    ``real_entries_only`` the unknown is further confined to real matrices.
    """
    t = tower
    units = []
    for j in range(m):
        for k in range(m):
            units.append(_unit(t, m, j, k, t.one()))
    if over_real_structure and not real_entries_only:
        ii = t.i()
        for j in range(m):
            for k in range(m):
                units.append(_unit(t, m, j, k, ii))
    columns = []
    for u in units:
        col = []
        for c in conditions:
            col.extend(c(u))
        if over_real_structure:
            split = []
            for s in col:
                split.append(s.real_part())
                split.append(t.zero() + s.imag_part())
            col = split
        columns.append(col)
    nrows = len(columns[0]) if columns else 0
    if nrows == 0:
        solutions = [[t.one() if i == j else t.zero()
                      for j in range(len(units))]
                     for i in range(len(units))]
    else:
        coeff = Matrix(t, [[columns[j][i] for j in range(len(units))]
                           for i in range(nrows)], cols=len(units))
        solutions = kernel(coeff)
    mats = []
    for sol in solutions:
        acc = Matrix.zeros(t, m, m)
        for cu, u in zip(sol, units):
            if not cu.is_zero():
                acc = acc + u.scale(cu)
        mats.append(acc)
    ground = "real" if over_real_structure else "complex"
    return LieAlgebraBasis(t, m, mats, ground, name=name,
                           verify_closure=verify_closure)


def _unit(t: Tower, m: int, j: int, k: int, value: Scalar) -> Matrix:
    rows = [[t.zero()] * m for _ in range(m)]
    rows[j][k] = value
    return Matrix(t, rows, cols=m)


class LieAlgebraBasis:
    """An exact basis of a matrix Lie algebra.

    ``ground == "complex"``: basis of a complex Lie algebra, membership
    means complex linear combination.  ``ground == "real"``: basis of a
    real Lie algebra, membership means real linear combination; coordinates
    are doubled (real and imaginary parts) so all span computations stay
    honest about which combinations are allowed.
    """

    def __init__(self, tower: Tower, ambient: int, matrices: Sequence[Matrix],
                 ground: str, name: str = "",
                 verify_closure: bool = False) -> None:
        if ground not in ("complex", "real"):
            raise ValueError("ground must be 'complex' or 'real'")
        self.tower = tower
        self.ambient = ambient
        self.matrices = list(matrices)
        self.ground = ground
        self.name = name
        coords = [self._flatten(x) for x in self.matrices]
        self._coord_len = 2 * ambient * ambient if ground == "real" \
            else ambient * ambient
        rows, pivots = _rref(tower, [list(c) for c in coords])
        if len(pivots) != len(self.matrices):
            raise ValueError("algebra basis is linearly dependent")
        self._rref_rows = rows[:len(pivots)]
        self._pivots = pivots
        if verify_closure:
            self.verify_bracket_closure()

    @property
    def dim(self) -> int:
        return len(self.matrices)

    def _flatten(self, x: Matrix) -> list:
        flat = x.flatten()
        if self.ground == "complex":
            return flat
        out = []
        zero = self.tower.zero()
        for s in flat:
            out.append(s.real_part())
            out.append(zero + s.imag_part())
        return out

    def _residual(self, vec: list) -> list:
        v = list(vec)
        for row, piv in zip(self._rref_rows, self._pivots):
            c = v[piv]
            if not c.is_zero():
                for idx, r in enumerate(row):
                    if not r.is_zero():
                        v[idx] = v[idx] - c * r
        return v

    def contains(self, x: Matrix) -> bool:
        if x.rows != self.ambient or x.cols != self.ambient:
            return False
        return all(s.is_zero() for s in self._residual(self._flatten(x)))

    def verify_bracket_closure(self) -> None:
        for i in range(self.dim):
            xi = self.matrices[i]
            for j in range(i + 1, self.dim):
                xj = self.matrices[j]
                br = xi * xj - xj * xi
                if not self.contains(br):
                    raise ValueError(
                        "bracket of basis elements %d, %d leaves the span"
                        % (i, j))

    def coord_subspace(self) -> Subspace:
        coords = [self._flatten(m) for m in self.matrices]
        return Subspace.from_vectors(self.tower, self._coord_len, coords)

    def _unflatten(self, vec: list) -> Matrix:
        m = self.ambient
        t = self.tower
        if self.ground == "complex":
            rows = [[vec[i * m + j] for j in range(m)] for i in range(m)]
            return Matrix(t, rows, cols=m)
        ii = t.i()
        rows = []
        for i in range(m):
            row = []
            for j in range(m):
                re = vec[2 * (i * m + j)]
                im = vec[2 * (i * m + j) + 1]
                row.append(re + ii * im)
            rows.append(row)
        return Matrix(t, rows, cols=m)

    def intersect(self, other: "LieAlgebraBasis",
                  name: str = "") -> "LieAlgebraBasis":
        if self.ground != other.ground or self.ambient != other.ambient:
            raise ValueError("algebras live in different settings")
        inter = self.coord_subspace().intersect(other.coord_subspace())
        mats = [self._unflatten(v) for v in inter.basis_vectors()]
        return LieAlgebraBasis(self.tower, self.ambient, mats, self.ground,
                               name=name)

    def same_span(self, other: "LieAlgebraBasis") -> bool:
        if self.ground != other.ground or self.ambient != other.ambient:
            return False
        return self.coord_subspace() == other.coord_subspace()

    def complexify(self, name: str = "") -> "LieAlgebraBasis":
        """Complex span of a real algebra (complex algebras pass through)."""
        if self.ground == "complex":
            return self
        t = self.tower
        cand = list(self.matrices) + [x.scale(t.i()) for x in self.matrices]
        keep, chosen, seen = [], [], 0
        for x in cand:
            chosen.append(x.flatten())
            _, pivots = _rref(t, [list(v) for v in chosen])
            if len(pivots) > seen:
                seen = len(pivots)
                keep.append(x)
            else:
                chosen.pop()
        return LieAlgebraBasis(t, self.ambient, keep, "complex", name=name)

    def __repr__(self) -> str:
        return "LieAlgebraBasis(%s, dim=%d over %s)" % (
            self.name or "?", self.dim, self.ground)


def isotropy_subalgebra(alg: LieAlgebraBasis, stab,
                        name: str = "",
                        verify_closure: bool = False) -> LieAlgebraBasis:
    """{X in alg : X(stab) is contained in stab}.

    ``stab`` is a Subspace, or a plain vector which is read as the line it
    spans.  Works for lines and higher-dimensional subspaces alike: the
    condition is that the canonical-complement coordinates of X.v vanish
    for every basis vector v.
    """
    t = alg.tower
    if isinstance(stab, Subspace):
        space = stab
    else:
        space = Subspace.from_vectors(t, alg.ambient, [list(stab)])
    basis = space.basis_vectors()
    pivots = _space_pivots(space)

    def residual(w: list) -> list:
        v = list(w)
        for b, piv in zip(basis, pivots):
            c = v[piv]
            if not c.is_zero():
                for idx, s in enumerate(b):
                    if not s.is_zero():
                        v[idx] = v[idx] - c * s
        return v

    columns = []
    for x in alg.matrices:
        col = []
        for bv in basis:
            col.extend(residual(x.apply(bv)))
        if alg.ground == "real":
            split = []
            for s in col:
                split.append(s.real_part())
                split.append(t.zero() + s.imag_part())
            col = split
        columns.append(col)
    nrows = len(columns[0]) if columns else 0
    if nrows == 0:
        sols = [[t.one() if i == j else t.zero() for j in range(alg.dim)]
                for i in range(alg.dim)]
    else:
        coeff = Matrix(t, [[columns[j][i] for j in range(alg.dim)]
                           for i in range(nrows)], cols=alg.dim)
        sols = kernel(coeff)
    mats = []
    for sol in sols:
        acc = Matrix.zeros(t, alg.ambient, alg.ambient)
        for c, x in zip(sol, alg.matrices):
            if not c.is_zero():
                acc = acc + x.scale(c)
        mats.append(acc)
    return LieAlgebraBasis(t, alg.ambient, mats, alg.ground, name=name,
                           verify_closure=verify_closure)


def _space_pivots(space: Subspace) -> list:
    pivots = []
    for v in space.basis_vectors():
        for idx, s in enumerate(v):
            if not s.is_zero():
                pivots.append(idx)
                break
    return pivots


def check_onishchik_triple(sub: LieAlgebraBasis, amb: LieAlgebraBasis,
                           point) -> dict:
    """Certify a triple (g, ghat, point): g sits inside ghat, both act on
    the flag point with the same orbit codimension, and the isotropy of g
    is exactly the trace of the ambient isotropy, q = qhat intersect g.

    Returns a report dict; the "ok" entry is the conjunction of the three
    checks (inclusion, equal codimension, isotropy equality).
    """
    included = all(amb.contains(x) for x in sub.matrices)
    q_sub = isotropy_subalgebra(sub, point, name="isotropy-sub")
    q_amb = isotropy_subalgebra(amb, point, name="isotropy-amb")
    codim_sub = sub.dim - q_sub.dim
    codim_amb = amb.dim - q_amb.dim
    trace = q_amb.intersect(sub, name="trace")
    isotropy_match = trace.same_span(q_sub)
    return {
        "included": included,
        "dim_sub": sub.dim,
        "dim_amb": amb.dim,
        "isotropy_dim_sub": q_sub.dim,
        "isotropy_dim_amb": q_amb.dim,
        "codim_sub": codim_sub,
        "codim_amb": codim_amb,
        "codims_equal": codim_sub == codim_amb,
        "isotropy_is_trace": isotropy_match,
        "ok": included and codim_sub == codim_amb and isotropy_match,
    }


# -- nilpotents and exponentials ------------------------------------------------


def outer(tower: Tower, u: Sequence[Scalar], v: Sequence[Scalar]) -> Matrix:
    """The rank-one matrix u v^T."""
    return Matrix(tower, [[a * b for b in v] for a in u], cols=len(v))


def exp_nilpotent(x: Matrix, t) -> Matrix:
    """exp(t x) for nilpotent x, as a finite exact sum."""
    tow = x.tower
    if not isinstance(t, Scalar):
        t = tow.scalar(Fraction(t))
    acc = Matrix.identity(tow, x.rows)
    term = Matrix.identity(tow, x.rows)
    fact = Fraction(1)
    for k in range(1, x.rows + 1):
        term = term * x
        if term.is_zero():
            return acc
        fact = fact * k
        acc = acc + term.scale(t ** k * tow.scalar(Fraction(1, 1) / fact))
    raise ValueError("matrix is not nilpotent")


def nilpotent_orthogonal(form: FormSpec, u: Sequence[Scalar],
                         v: Sequence[Scalar]) -> Matrix:
    """X = (u v^T - v u^T) G for b-isotropic u, v with b(u, v) = 0.

    Then X^2 = 0 and X lies in the orthogonal algebra of G.
    """
    if form.kind != "symmetric":
        raise ValueError("orthogonal nilpotents need a symmetric form")
    if not (form.norm(u).is_zero() and form.norm(v).is_zero()
            and form.value(u, v).is_zero()):
        raise ValueError("need an isotropic orthogonal pair")
    t = form.tower
    x = (outer(t, u, v) - outer(t, v, u)) * form.gram
    if not (x * x).is_zero():
        raise ValueError("internal: orthogonal nilpotent is not square-zero")
    return x

def nilpotent_symplectic(form: FormSpec, u: Sequence[Scalar]) -> Matrix:
    """X = u u^T J; always square-zero since omega(u, u) = 0."""
    if form.kind != "antisymmetric":
        raise ValueError("symplectic nilpotents need an antisymmetric form")
    t = form.tower
    x = outer(t, u, u) * form.gram
    if not (x * x).is_zero():
        raise ValueError("internal: symplectic nilpotent is not square-zero")
    return x


def nilpotent_unitary(form: FormSpec, u: Sequence[Scalar]) -> Matrix:
    """X = i u conj(u)^T E for h-isotropic u; traceless and square-zero."""
    if form.kind != "hermitian":
        raise ValueError("unitary nilpotents need a hermitian form")
    if not form.norm(u).is_zero():
        raise ValueError("need an h-isotropic vector")
    t = form.tower
    x = outer(t, u, [a.conj() for a in u]).scale(t.i()) * form.gram
    if not (x * x).is_zero():
        raise ValueError("internal: unitary nilpotent is not square-zero")
    return x
