"""Bilinear and sesquilinear forms, and the standard geometric models.

Conventions.  A form with Gram matrix G evaluates as

* symmetric / antisymmetric: value(z, w) = z^T G w  (bilinear),
* hermitian: value(z, w) = z^T G conj(w)  (linear in z, conjugate-linear
  in w, so Gram diagonals are the h-norms of the basis vectors).

``perp`` always uses the second slot.  For hermitian forms the two slots
give conjugate subspaces, so the choice matters and is fixed here once.

The model constructors package the three geometries:

* ``projective_split(n)`` / ``projective_signature(p, q)``: C^{2n} with the
  symplectic form omega(z, w) = z^T J w, the symmetric form b(z, w) = z^T w,
  the hermitian form of Gram E (split: diag(+1^n, -1^n); signature:
  diag(E_pq, E_pq)), and the antilinear map phi(z) = -J E conj(z).
* ``quadric7()``: C^7 with b and h of common Gram diag(1,1,1,-1,-1,-1,-1),
  the ambient of the 5-dimensional quadric.
* ``isotropic(p, q)``: C^{2n}, p + q = 2n - 1, carrying the symmetric form
  b(z, w) = z^T w, the hermitian form hhat of Gram diag(E_pq, eps) with
  eps = -1 for p even and +1 for p odd, the distinguished last basis
  vector, and a documented diagonal change of basis to the "signature
  presentation" in which both Grams coincide and the relevant real group
  consists of literally real matrices.
"""

from __future__ import annotations

from typing import Optional, Sequence

from .linalg import Matrix, Subspace, kernel
from .scalars import Scalar, Tower

__all__ = ["FormSpec", "StandardModel"]

KINDS = ("symmetric", "antisymmetric", "hermitian")


class FormSpec:
    """A nondegenerate form given by kind and Gram matrix."""

    __slots__ = ("kind", "gram", "name")

    def __init__(self, kind: str, gram: Matrix, name: str = "") -> None:
        if kind not in KINDS:
            raise ValueError("unknown form kind %r" % (kind,))
        if gram.rows != gram.cols:
            raise ValueError("Gram matrix must be square")
        t = gram.transpose()
        if kind == "symmetric" and not t == gram:
            raise ValueError("symmetric form needs a symmetric Gram")
        if kind == "antisymmetric" and not t == -gram:
            raise ValueError("antisymmetric form needs an antisymmetric Gram")
        if kind == "hermitian" and not t == gram.conj():
            raise ValueError("hermitian form needs a hermitian-symmetric Gram")
        if gram.det().is_zero():
            raise ValueError("Gram matrix is singular")
        self.kind = kind
        self.gram = gram
        self.name = name or kind

    @property
    def dim(self) -> int:
        return self.gram.rows

    @property
    def tower(self) -> Tower:
        return self.gram.tower

    def value(self, z: Sequence[Scalar], w: Sequence[Scalar]) -> Scalar:
        if len(z) != self.dim or len(w) != self.dim:
            raise ValueError("vector length does not match form dimension")
        ww = [x.conj() for x in w] if self.kind == "hermitian" else list(w)
        gw = self.gram.apply(ww)
        acc = self.tower.zero()
        for a, b in zip(z, gw):
            if not (a.is_zero() or b.is_zero()):
                acc = acc + a * b
        return acc

    def norm(self, z: Sequence[Scalar]) -> Scalar:
        return self.value(z, z)

    def gram_of(self, vectors: Sequence[Sequence[Scalar]]) -> Matrix:
        """Pairwise value matrix of a list of vectors."""
        return Matrix(self.tower,
                      [[self.value(u, v) for v in vectors] for u in vectors],
                      cols=len(vectors))

    def restrict(self, s: Subspace) -> Matrix:
        """Gram of the form on the canonical basis of ``s``."""
        return self.gram_of(s.basis_vectors())

    def perp(self, s: Subspace) -> Subspace:
        """{v : value(x, v) = 0 for all x in s} (second-slot perp)."""
        if s.ambient_dim != self.dim:
            raise ValueError("subspace ambient does not match form dimension")
        rows = [self.gram.transpose().apply(x) for x in s.basis_vectors()]
        constraint = Matrix(self.tower, rows, cols=self.dim)
        if self.kind == "hermitian":
            constraint = constraint.conj()
        return Subspace.from_vectors(self.tower, self.dim, kernel(constraint))

    def is_isotropic(self, s: Subspace) -> bool:
        return self.restrict(s).is_zero()

    def __repr__(self) -> str:
        return "FormSpec(%s, dim=%d)" % (self.name, self.dim)


def _e(tower: Tower, n: int, idx: int):
    v = [tower.zero()] * n
    v[idx] = tower.one()
    return v


def _epq(p: int, q: int) -> list:
    return [1] * p + [-1] * q


class StandardModel:
    """One of the explicit geometries, with its forms and reference data."""

    def __init__(self, case: str, tower: Tower, ambient_dim: int, **data):
        self.case = case
        self.tower = tower
        self.ambient_dim = ambient_dim
        self.__dict__.update(data)

    # -- constructors ----------------------------------------------------------

    @staticmethod
    def projective_split(tower: Tower, n: int) -> StandardModel:
        if n < 1:
            raise ValueError("n must be positive")
        return StandardModel._projective(tower, n, [1] * n + [-1] * n, "split",
                                         p=None, q=None)

    @staticmethod
    def projective_signature(tower: Tower, p: int, q: int) -> StandardModel:
        if p < 0 or q < 0 or p + q < 1:
            raise ValueError("need p, q >= 0 with p + q >= 1")
        return StandardModel._projective(tower, p + q,
                                         _epq(p, q) + _epq(p, q), "signature",
                                         p=p, q=q)

    @staticmethod
    def _projective(tower: Tower, n: int, e_diag: list, variant: str,
                    p: Optional[int], q: Optional[int]) -> StandardModel:
        m = 2 * n
        zero, one = tower.zero(), tower.one()
        # J e_i = e_{n+i} (i <= n), J e_i = -e_{i-n} (i > n)
        jrows = [[zero] * m for _ in range(m)]
        for i in range(n):
            jrows[n + i][i] = one
            jrows[i][n + i] = -one
        j = Matrix(tower, jrows, cols=m)
        e = Matrix.diag(tower, e_diag)
        case = "projective-split" if variant == "split" else "projective-pq"
        return StandardModel(
            case, tower, m,
            n=n, p=p, q=q, variant=variant,
            J=j, E=e,
            b=FormSpec("symmetric", Matrix.identity(tower, m), "b"),
            omega=FormSpec("antisymmetric", j, "omega"),
            h=FormSpec("hermitian", e, "h"),
            phi_mat=-(j * e),
            flag_dim_complex=m - 1,
        )

    @staticmethod
    def quadric7(tower: Tower) -> StandardModel:
        g = Matrix.diag(tower, [1, 1, 1, -1, -1, -1, -1])
        i = tower.i()
        z_plus = [tower.scalar(1), i, tower.zero(), tower.zero(),
                  tower.zero(), tower.zero(), tower.zero()]
        z_minus = [tower.zero()] * 3 + [tower.scalar(1), i,
                                        tower.zero(), tower.zero()]
        real_rep = [tower.zero(), tower.zero(), tower.scalar(1),
                    tower.scalar(1), tower.zero(), tower.zero(), tower.zero()]
        # on the quadric, h-null, and not proportional to a real vector
        null_nonreal = [tower.zero(), i, tower.scalar(1), tower.scalar(1), i,
                        tower.zero(), tower.zero()]
        return StandardModel(
            "quadric7", tower, 7,
            b=FormSpec("symmetric", g, "b"),
            h=FormSpec("hermitian", g, "h"),
            z_plus=z_plus, z_minus=z_minus,
            stratum_representatives={
                "positive": z_plus,
                "negative": z_minus,
                "null-real": real_rep,
                "null-nonreal": null_nonreal,
            },
            flag_dim_complex=5,
        )

    @staticmethod
    def isotropic(tower: Tower, p: int, q: int) -> StandardModel:
        if p < 1 or q < 1 or (p + q) % 2 == 0:
            raise ValueError("need p, q >= 1 with p + q odd")
        n = (p + q + 1) // 2
        m = 2 * n
        eps = -1 if p % 2 == 0 else 1
        hhat_diag = _epq(p, q) + [eps]
        s_change = Matrix.diag(tower,
                               [1 if d == 1 else tower.i() for d in hhat_diag])
        return StandardModel(
            "isotropic", tower, m,
            n=n, p=p, q=q, eps=eps,
            b=FormSpec("symmetric", Matrix.identity(tower, m), "b"),
            hhat=FormSpec("hermitian", Matrix.diag(tower, hhat_diag), "hhat"),
            # in signature coordinates both Grams coincide and the real
            # isometry groups consist of real matrices; std_vec = S * sig_vec
            b_sig=FormSpec("symmetric", Matrix.diag(tower, hhat_diag), "b_sig"),
            hhat_sig=FormSpec("hermitian", Matrix.diag(tower, hhat_diag),
                              "hhat_sig"),
            sig_change=s_change,
            fixed_index=m - 1,
            open_signature=((p // 2, (q + 1) // 2) if p % 2 == 0
                            else ((p + 1) // 2, q // 2)),
            flag_dim_complex=n * (n - 1) // 2,
        )

    # -- projective-model operations -------------------------------------------

    def phi(self, z: Sequence[Scalar]) -> list:
        """The antilinear map phi(z) = -J E conj(z) (projective models)."""
        if self.case not in ("projective-split", "projective-pq"):
            raise ValueError("phi is defined for the projective models only")
        return self.phi_mat.apply([x.conj() for x in z])

    # -- isotropic-model reference subspaces -----------------------------------

    def normal_form_complex(self) -> Subspace:
        """The reference maximal isotropic span{e_k + i e_{n+k}: k = 1..n}."""
        self._require_isotropic()
        t, n = self.tower, self.n
        i = t.i()
        vecs = []
        for k in range(n):
            v = [t.zero()] * self.ambient_dim
            v[k] = t.one()
            v[n + k] = i
            vecs.append(v)
        return Subspace.from_vectors(t, self.ambient_dim, vecs)

    def normal_form_real_pairs(self) -> list:
        """Index pairs (a, b) whose spans e_a + i e_b build the real-case
        normal form, one pair per basis vector, 0-based, ending with the
        pair that contains the distinguished last coordinate."""
        self._require_isotropic()
        p, q, m = self.p, self.q, self.ambient_dim
        pairs = []
        if p % 2 == 0:
            pairs += [(2 * t, 2 * t + 1) for t in range(p // 2)]
            pairs += [(p + 2 * t, p + 2 * t + 1) for t in range((q - 1) // 2)]
            pairs.append((m - 2, m - 1))
        else:
            pairs += [(2 * t, 2 * t + 1) for t in range((p - 1) // 2)]
            pairs += [(p + 2 * t, p + 2 * t + 1) for t in range(q // 2)]
            pairs.append((p - 1, m - 1))
        return pairs

    def normal_form_real(self) -> Subspace:
        """The reference plane W0 + C(last pair) from the real normal form."""
        t = self.tower
        i = t.i()
        vecs = []
        for a, b in self.normal_form_real_pairs():
            v = [t.zero()] * self.ambient_dim
            v[a] = t.one()
            v[b] = i
            vecs.append(v)
        return Subspace.from_vectors(t, self.ambient_dim, vecs)

    def to_signature_coords(self, v: Sequence[Scalar]) -> list:
        self._require_isotropic()
        return self.sig_change.inverse().apply(list(v))

    def to_standard_coords(self, v: Sequence[Scalar]) -> list:
        self._require_isotropic()
        return self.sig_change.apply(list(v))

    def _require_isotropic(self) -> None:
        if self.case != "isotropic":
            raise ValueError("operation defined for the isotropic model only")

    def __repr__(self) -> str:
        bits = [self.case]
        for key in ("n", "p", "q"):
            val = self.__dict__.get(key)
            if val is not None:
                bits.append("%s=%d" % (key, val))
        return "StandardModel(%s)" % ", ".join(bits)
