"""Infinitesimal orbit certificates.

Exact tangent-space dimensions of a Lie algebra acting at a projective
point or at a point of an (isotropic) Grassmannian, stratum
classification for each model geometry, and the sampled tangent-equality
check on the seven-dimensional quadric: at points of every stratum the
octonion derivation algebra and the full real orthogonal algebra span
tangent spaces of the same real dimension.

Real algebras act on complex manifolds here, so their tangent
dimensions are computed in doubled real coordinates throughout: the
rank of the real-coordinate matrix of the generators' images, modulo
the real span of the point data.  This avoids any complex-structure
bookkeeping; openness of the orbit is then the statement that the
tangent dimension reaches twice the complex manifold dimension.
"""

from __future__ import annotations

from typing import Optional, Sequence, Tuple

from .forms import FormSpec, StandardModel
from .groups import (GroupSpec, LieAlgebraBasis, PreservesBilinear,
                     RealEntries, _space_pivots, exp_nilpotent,
                     nilpotent_orthogonal)
from .linalg import (Matrix, Subspace, hermitian_signature, rank, vec_scale,
                     vec_sub)
from .octonions import derivations, imaginary_embedding, split_octonions
from .rng import SplitMix64
from .scalars import Scalar, Tower

__all__ = [
    "OrbitReport", "tangent_dim_projective", "tangent_dim_grassmann",
    "classify_point", "quadric_algebras", "verify_orbit_equality",
]

STRATA = ("positive", "negative", "null-real", "null-nonreal")


class OrbitReport:
    """Tangent data of one algebra at one point."""

    def __init__(self, point: str, algebra: str, field: str,
                 tangent_dim: int, ambient_dim: int, stratum: str) -> None:
        self.point = point
        self.algebra = algebra
        self.field = field          # ground field the dimension is over
        self.tangent_dim = tangent_dim
        self.ambient_dim = ambient_dim
        self.stratum = stratum
        self.open = tangent_dim == ambient_dim

    def to_json(self) -> dict:
        return {
            "point": self.point,
            "algebra": self.algebra,
            "field": self.field,
            "tangent_dim": self.tangent_dim,
            "ambient_dim": self.ambient_dim,
            "open": self.open,
            "stratum": self.stratum,
        }

    def __repr__(self) -> str:
        return ("OrbitReport(%s at %s: %d/%d %s%s)"
                % (self.algebra, self.stratum, self.tangent_dim,
                   self.ambient_dim, self.field,
                   ", open" if self.open else ""))


def _host_tower(default: Tower, entries) -> Tower:
    """The deepest tower appearing among the entries (witness images carry
    adjoined square roots, so matrices built from them must live in their
    tower; plain model data stays in the model's tower)."""
    best = default
    for x in entries:
        if isinstance(x, Scalar) and len(x._tower._radicands) > \
                len(best._radicands):
            best = x._tower
    return best


def _lift(t: Tower, v: Sequence) -> list:
    out = []
    for x in v:
        if isinstance(x, Scalar):
            out.append(t.zero() + x)
        else:
            out.append(t.scalar(x))
    return out


def _real_coords(v: Sequence[Scalar]) -> list:
    out = []
    for x in v:
        out.append(x.real_part())
        out.append(x.imag_part())
    return out


def _pair_value(gram: Matrix, u: Sequence[Scalar], v: Sequence[Scalar],
                hermitian: bool) -> Scalar:
    """u^T G v (or u^T G conj(v)) by plain scalar arithmetic; safe when u, v
    live in a deeper tower than the (rational) Gram matrix."""
    acc = gram.tower.zero()
    for j in range(gram.cols):
        vj = v[j].conj() if hermitian else v[j]
        if vj.is_zero():
            continue
        for i in range(gram.rows):
            gij = gram[i, j]
            if gij.is_zero() or u[i].is_zero():
                continue
            acc = acc + u[i] * gij * vj
    return acc


def vector_text(v: Sequence[Scalar]) -> str:
    return "[" + ", ".join(x.to_text() for x in v) + "]"


def tangent_dim_projective(alg: LieAlgebraBasis, z: Sequence) -> int:
    """Dimension (over the algebra's ground field) of the orbit tangent
    space at the projective point [z]: span{X z} modulo the line itself
    (modulo the real plane spanned by z and iz for real algebras)."""
    t = _host_tower(alg.tower, z)
    zz = _lift(t, z)
    if all(x.is_zero() for x in zz):
        raise ValueError("the zero vector does not represent a point")
    images = [x.apply(zz) for x in alg.matrices]
    if alg.ground == "complex":
        full = Matrix.from_cols(t, images + [zz])
        return rank(full) - 1
    iz = vec_scale(t.i(), zz)
    base = [_real_coords(zz), _real_coords(iz)]
    cols = [_real_coords(w) for w in images] + base
    return rank(Matrix.from_cols(t, cols)) - rank(Matrix.from_cols(t, base))


def tangent_dim_grassmann(alg: LieAlgebraBasis, s: Subspace,
                          ambient_constraint: Optional[FormSpec] = None) \
        -> int:
    """Dimension of the image of the algebra in Hom(S, ambient/S), i.e.
    of the orbit tangent space at the Grassmannian point S.

    When ``ambient_constraint`` is given the point must be isotropic for
    it; the algebra is assumed to preserve the form, so its tangent
    directions automatically stay inside the isotropic Grassmannian.
    """
    basis = s.basis_vectors()
    t = _host_tower(alg.tower, [x for v in basis for x in v])
    if ambient_constraint is not None and any(
            not _pair_value(ambient_constraint.gram, u, v, False).is_zero()
            for u in basis for v in basis):
        raise ValueError("subspace is not isotropic for the ambient "
                         "constraint")
    pivots = _space_pivots(s)
    others = [r for r in range(s.ambient_dim) if r not in pivots]

    def residual(w: list) -> list:
        # the canonical basis has identity pattern on the pivot rows, so
        # the S-component of w is read off directly
        red = vec_sub(w, s.matrix.apply([w[r] for r in pivots]))
        return [red[r] for r in others]

    stacked = []
    for x in alg.matrices:
        coords = []
        for bv in basis:
            coords.extend(residual(x.apply(bv)))
        stacked.append(coords)
    if not stacked:
        return 0
    if alg.ground == "complex":
        return rank(Matrix.from_cols(t, stacked))
    return rank(Matrix.from_cols(t, [_real_coords(v) for v in stacked]))


def classify_point(model: StandardModel, point) -> str:
    """Exact stratum label of a point of the model's manifold.

    Projective and quadric models: a nonzero vector, classified by the
    sign of h(z, z) and, in the null case, by whether the line equals its
    conjugate line -> "positive" / "negative" / "null-real" /
    "null-nonreal".  Isotropic model: an isotropic n-plane, classified by
    the signature of hhat on it, with the open-orbit signature marked.
    """
    if model.case in ("projective-split", "projective-pq", "quadric7"):
        t = _host_tower(model.tower, point)
        z = _lift(t, point)
        if all(x.is_zero() for x in z):
            raise ValueError("the zero vector does not represent a point")
        if model.case == "quadric7" \
                and not _pair_value(model.b.gram, z, z, False).is_zero():
            raise ValueError("point is not on the quadric")
        hz = _pair_value(model.h.gram, z, z, True)
        if not hz.is_zero():
            return "positive" if hz.sign() > 0 else "negative"
        # the line is real iff z is proportional to conj(z): all minors
        # z_i conj(z)_j - z_j conj(z)_i vanish
        zc = [x.conj() for x in z]
        real_line = all((z[i] * zc[j] - z[j] * zc[i]).is_zero()
                        for i in range(len(z)) for j in range(i + 1, len(z)))
        return "null-real" if real_line else "null-nonreal"
    if model.case == "isotropic":
        if isinstance(point, Subspace):
            s = point
        else:
            vecs = [v for v in point]
            t = _host_tower(model.tower,
                            [x for v in vecs for x in v
                             if isinstance(x, Scalar)])
            s = Subspace.from_vectors(t, model.ambient_dim,
                                      [_lift(t, v) for v in vecs])
        basis = s.basis_vectors()
        host = _host_tower(model.tower, [x for v in basis for x in v])
        iso_ok = all(_pair_value(model.b.gram, u, v, False).is_zero()
                     for u in basis for v in basis)
        if s.dim != model.n or not iso_ok:
            raise ValueError("point is not an isotropic n-plane")
        gram = Matrix(host,
                      [[_pair_value(model.hhat.gram, u, v, True)
                        for v in basis] for u in basis], cols=len(basis))
        pos, neg, zero = hermitian_signature(gram)
        label = "signature(%d,%d)" % (pos, neg)
        if zero:
            label += "+null(%d)" % zero
        elif (pos, neg) == model.open_signature:
            label += "-open"
        return label
    raise ValueError("no classification for model case %r" % (model.case,))


def quadric_algebras(model: StandardModel) -> Tuple[LieAlgebraBasis,
                                                    LieAlgebraBasis]:
    """The two real algebras acting on the quadric: the octonion
    derivation algebra in its 7-dimensional imaginary representation, and
    the real orthogonal algebra of the same Gram matrix."""
    if model.case != "quadric7":
        raise ValueError("needs the quadric model")
    t = model.tower
    der = derivations(split_octonions(t))
    g2 = imaginary_embedding(der)
    so34 = GroupSpec(t, 7, [PreservesBilinear(model.b), RealEntries()],
                     "SO(3,4)").lie_algebra(verify_closure=False,
                                            name="so(3,4)")
    return g2, so34


# real isotropic orthogonal pairs for the Gram diag(1,1,1,-1,-1,-1,-1):
# each vector couples one positive and one negative coordinate
_QUADRIC_NILPOTENT_PAIRS = [
    ((0, 3), (1, 4)),
    ((0, 4), (2, 5)),
    ((1, 5), (2, 3)),
    ((2, 6), (0, 5)),
    ((1, 3), (2, 4)),
    ((0, 6), (1, 4)),
]


def _quadric_nilpotents(model: StandardModel) -> list:
    t = model.tower
    out = []
    for (iu, ju), (iv, jv) in _QUADRIC_NILPOTENT_PAIRS:
        u = [t.zero()] * 7
        u[iu] = t.one()
        u[ju] = t.one()
        v = [t.zero()] * 7
        v[iv] = t.one()
        v[jv] = t.one()
        out.append(nilpotent_orthogonal(model.b, u, v))
    return out


def verify_orbit_equality(model: StandardModel, samples: int = 10,
                          seed: int = 0, bound: int = 5,
                          algebras: Optional[tuple] = None,
                          max_retries: int = 20) -> list:
    """Sampled tangent-equality check on the quadric.

    For each of the four strata, applies ``samples`` random products of
    exponentials of real nilpotent orthogonal elements (exact polynomial
    exponentials, integer weights in [-bound, bound]) to the stratum
    representative and certifies that the derivation algebra and the full
    real orthogonal algebra have the same real tangent dimension there.
    Returns one OrbitReport pair per sample.  This is the infinitesimal
    part of orbit equality; it does not claim global transitivity.
    """
    if model.case != "quadric7":
        raise ValueError("needs the quadric model")
    if samples < 1:
        raise ValueError("need at least one sample")
    g2, so34 = algebras if algebras is not None else quadric_algebras(model)
    nil = _quadric_nilpotents(model)
    rng = SplitMix64(seed)
    ambient_real = 2 * model.flag_dim_complex
    pairs = []
    for stratum in STRATA:
        rep = model.stratum_representatives[stratum]
        for _ in range(samples):
            point = None
            for _attempt in range(max_retries):
                g = Matrix.identity(model.tower, 7)
                for x in nil:
                    w = rng.randint(-bound, bound)
                    if w:
                        g = g * exp_nilpotent(x, w)
                cand = g.apply(_lift(model.tower, rep))
                if classify_point(model, cand) == stratum:
                    point = cand
                    break
            if point is None:
                raise RuntimeError("sampling failed to stay in stratum %r "
                                   "after %d attempts" % (stratum,
                                                          max_retries))
            text = vector_text(point)
            d_hat = tangent_dim_projective(g2, point)
            d_amb = tangent_dim_projective(so34, point)
            pairs.append((
                OrbitReport(text, g2.name or "g2-split", "real", d_hat,
                            ambient_real, stratum),
                OrbitReport(text, so34.name or "so(3,4)", "real", d_amb,
                            ambient_real, stratum),
            ))
    return pairs
