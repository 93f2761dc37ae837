"""Constructive transitivity witnesses.

Every operation here returns a ``Witness``: a concrete matrix, the
constraint group it is claimed to live in, and the mapping claim it was
built for.  ``Witness.verify`` re-checks everything from scratch using
only exact linear algebra — membership in the group and the claim itself
— so a verified witness does not depend on any construction internals.

Square-root discipline: reflections never extend the scalar tower; the
only square roots adjoined are h-norm normalizations (one per plane in
the symplectic line transport, one per placed pair in the real isotropic
normal form, where they are unavoidable: a rational frame generally has
no rational same-norm orthogonal companion).  Each construction works on
a clone of the model tower, so repeated constructions do not pile
radicals onto the caller's tower.

Errors are split deliberately:

* ``ValueError`` — malformed input (wrong dimension, not isotropic, Gram
  mismatch, ...).
* ``NotInDomainError`` — well-formed input that provably admits no
  witness of the requested kind (null or sign-mismatched lines, a plane
  of non-open signature, the wrong connected family, or a boundary
  configuration the algorithm excludes).  These are legitimate
  classification outcomes.
* ``WitnessVerificationError`` — an internal consistency check failed;
  this always indicates a bug, never bad input.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from .forms import FormSpec, StandardModel
from .groups import (DetOne, FixesVector, GroupSpec, PreservesBilinear,
                     PreservesHermitian, outer)
from .linalg import (Matrix, Subspace, column_space_equal,
                     congruence_diagonalize, hermitian_signature, kernel,
                     rank, vec_add, vec_scale, vec_sub)
from .scalars import Scalar, Tower

__all__ = [
    "NotInDomainError", "WitnessVerificationError", "Witness",
    "reflection", "witt_transport", "transport_positive_line_sp",
    "isotropic_normal_form_complex", "isotropic_normal_form_real",
    "build_group", "model_from_info", "witness_from_json",
]


class NotInDomainError(ValueError):
    """Input is valid but no witness of the requested kind can exist."""


class WitnessVerificationError(RuntimeError):
    """An internal re-check failed; indicates a bug in the construction."""


# -- witness container -----------------------------------------------------------


class Witness:
    """A group element together with its verified mapping claim."""

    def __init__(self, group: GroupSpec, element: Matrix, claim_kind: str,
                 source: Matrix, target: Matrix, model_info: dict) -> None:
        if claim_kind not in ("maps_line", "maps_subspace", "maps_vector"):
            raise ValueError("unknown claim kind %r" % (claim_kind,))
        self.group = group
        self.element = element
        self.claim_kind = claim_kind
        self.source = source          # columns span the source object
        self.target = target
        self.model_info = dict(model_info)
        self.verified = False

    def verify(self) -> bool:
        ok = self.group.contains(self.element)
        image = self.element * self.source
        if self.claim_kind == "maps_vector":
            ok = ok and image == self.target
        else:
            ok = ok and column_space_equal(image, self.target)
        self.verified = ok
        return ok

    def describe(self) -> dict:
        return {
            "group": self.group.name,
            "claim": self.claim_kind,
            "source_dim": self.source.cols,
            "verified": self.verified,
        }

    def to_json(self) -> dict:
        return {
            "schema": "witness/1",
            "model": self.model_info,
            "group": self.group.name,
            "claim": {
                "kind": self.claim_kind,
                "source": self.source.to_json(),
                "target": self.target.to_json(),
            },
            "element": self.element.to_json(),
        }


def model_from_info(tower: Tower, info: dict) -> StandardModel:
    case = info.get("case")
    if case == "projective-split":
        return StandardModel.projective_split(tower, int(info["n"]))
    if case == "projective-pq":
        return StandardModel.projective_signature(tower, int(info["p"]),
                                                  int(info["q"]))
    if case == "quadric7":
        return StandardModel.quadric7(tower)
    if case == "isotropic":
        return StandardModel.isotropic(tower, int(info["p"]), int(info["q"]))
    raise ValueError("unknown model case %r" % (case,))


def build_group(model: StandardModel, name: str) -> GroupSpec:
    """The named constraint groups used in witnesses and reports."""
    t = model.tower
    m = model.ambient_dim
    e_last = [t.zero()] * m
    e_last[m - 1] = t.one()
    if name == "Sp2nC":
        return GroupSpec(t, m, [PreservesBilinear(model.omega)], name)
    if name == "SL2nC":
        return GroupSpec(t, m, [DetOne()], name)
    if name in ("Sp2nR", "Sp(2p,2q)"):
        return GroupSpec(t, m, [PreservesBilinear(model.omega),
                                PreservesHermitian(model.h)], name)
    if name in ("SU(n,n)", "SU(2p,2q)"):
        return GroupSpec(t, m, [DetOne(), PreservesHermitian(model.h)], name)
    if name == "SO7C":
        return GroupSpec(t, m, [PreservesBilinear(model.b), DetOne()], name)
    if name == "SO2nC":
        return GroupSpec(t, m, [PreservesBilinear(model.b), DetOne()], name)
    if name == "SO2n-1C":
        return GroupSpec(t, m, [PreservesBilinear(model.b), DetOne(),
                                FixesVector(e_last)], name)
    if name == "SO(p,q)":
        return GroupSpec(t, m, [PreservesBilinear(model.b),
                                PreservesHermitian(model.hhat), DetOne(),
                                FixesVector(e_last)], name)
    raise ValueError("unknown group name %r" % (name,))


def witness_from_json(obj: dict) -> Witness:
    if obj.get("schema") != "witness/1":
        raise ValueError("not a witness document")
    tower = Tower.deserialize(obj["element"]["radicands"])
    element = Matrix.from_json(obj["element"], tower)
    source = Matrix.from_json(obj["claim"]["source"], tower)
    target = Matrix.from_json(obj["claim"]["target"], tower)
    model = model_from_info(tower, obj["model"])
    group = build_group(model, obj["group"])
    return Witness(group, element, obj["claim"]["kind"], source, target,
                   obj["model"])


def compose_witnesses(*hops: Witness) -> Witness:
    """One witness for the chained claim of ``hops`` applied first-to-last.

    Witnesses produced by separate runs live in separate square-root
    extensions, so the elements are first embedded into one fresh tower
    (adjoining exactly the radicals that occur) and only then multiplied.
    Raises when the chain does not link up (a target differing from the
    next source) or when the product fails to re-verify.
    """
    if not hops:
        raise ValueError("need at least one witness to compose")
    first = hops[0]
    for w in hops:
        if w.model_info != first.model_info \
                or w.group.name != first.group.name \
                or w.claim_kind != first.claim_kind:
            raise ValueError("witnesses to compose must share model, group "
                             "and claim kind")
    t = Tower()
    model = model_from_info(t, first.model_info)
    group = build_group(model, first.group.name)

    def emb(mat: Matrix) -> Matrix:
        return Matrix(t, [[t.embed(mat[i, j]) for j in range(mat.cols)]
                          for i in range(mat.rows)], cols=mat.cols)

    element = Matrix.identity(t, model.ambient_dim)
    prev_target = None
    for w in hops:
        src = emb(w.source)
        if prev_target is not None:
            linked = (src == prev_target if w.claim_kind == "maps_vector"
                      else column_space_equal(src, prev_target))
            if not linked:
                raise ValueError("witness chain is broken: a source does "
                                 "not match the previous target")
        element = emb(w.element) * element
        prev_target = emb(w.target)
    out = Witness(group, element, first.claim_kind, emb(first.source),
                  prev_target, first.model_info)
    if not out.verify():
        raise WitnessVerificationError("composite witness failed to verify")
    return out


# -- reflections and Witt transport ----------------------------------------------


def reflection(f: FormSpec, u: Sequence[Scalar]) -> Matrix:
    """The f-orthogonal reflection x -> x - 2 f(x,u)/f(u,u) u."""
    if f.kind != "symmetric":
        raise ValueError("reflections need a symmetric form")
    q = f.norm(u)
    if q.is_zero():
        raise ValueError("reflection vector is isotropic")
    t = f.tower
    gu = f.gram.apply(list(u))
    factor = t.scalar(2) / q
    return Matrix.identity(t, f.dim) - outer(t, list(u), gu).scale(factor)


def witt_transport(f: FormSpec, frame_a: Sequence[Sequence[Scalar]],
                   frame_b: Sequence[Sequence[Scalar]],
                   require_special: bool = False,
                   extra_real: bool = False) -> Matrix:
    """An f-isometry taking frame_a to frame_b entrywise.

    Needs Gram(frame_a) = Gram(frame_b) exactly.  Built as a product of at
    most 2 len + 2 reflections, placing one vector at a time: the
    reflection in a_k - b_k fixes already-placed vectors automatically; if
    that difference is isotropic, the pair of reflections in a_k + b_k and
    b_k is used instead (valid here because every placed target is
    orthogonal to the pivot pair in all our call sites; re-checked).  With
    ``require_special`` the determinant is corrected to one by one more
    reflection orthogonal to all of frame_b.  With ``extra_real`` all
    inputs must be real and the output is then real as well.  No square
    roots are ever taken.
    """
    t = f.tower
    k = len(frame_a)
    if len(frame_b) != k:
        raise ValueError("frames differ in length")
    fa = [list(v) for v in frame_a]
    fb = [list(v) for v in frame_b]
    for v in fa + fb:
        if len(v) != f.dim:
            raise ValueError("frame vector has wrong length")
    if k and (rank(Matrix.from_cols(t, fa)) != k
              or rank(Matrix.from_cols(t, fb)) != k):
        raise ValueError("frames must be linearly independent")
    for i in range(k):
        for j in range(k):
            if not (f.value(fa[i], fa[j]) == f.value(fb[i], fb[j])):
                raise ValueError("frame Gram matrices differ at (%d, %d)"
                                 % (i, j))
    if extra_real:
        for v in fa + fb:
            if any(not x.is_real() for x in v):
                raise ValueError("extra_real set but frames are not real")
        if any(not f.gram[i, j].is_real()
               for i in range(f.dim) for j in range(f.dim)):
            raise ValueError("extra_real set but the form is not real")
    g = Matrix.identity(t, f.dim)
    current = [list(v) for v in fa]
    refl = 0
    for idx in range(k):
        a, b = current[idx], fb[idx]
        if all((x - y).is_zero() for x, y in zip(a, b)):
            continue
        d = vec_sub(a, b)
        if not f.norm(d).is_zero():
            s = reflection(f, d)
            refl += 1
        else:
            d2 = vec_add(a, b)
            if f.norm(d2).is_zero():
                raise ValueError(
                    "cannot transport an isotropic frame vector by "
                    "reflections")
            for j in range(idx):
                if not (f.value(fb[j], a).is_zero()
                        and f.value(fb[j], b).is_zero()):
                    raise ValueError(
                        "isotropic pivot with non-orthogonal placed "
                        "vectors is unsupported")
            s = reflection(f, b) * reflection(f, d2)
            refl += 2
        g = s * g
        current = [s.apply(v) for v in current]
        if any(not (x - y).is_zero() for x, y in zip(current[idx], b)):
            raise WitnessVerificationError("reflection step failed to place "
                                           "frame vector %d" % idx)
    if require_special and refl % 2 == 1:
        span_b = Subspace.from_vectors(t, f.dim, fb)
        w = _nonisotropic_in(f, f.perp(span_b))
        if w is None:
            raise ValueError("no room for determinant correction")
        g = reflection(f, w) * g
    return g


def _nonisotropic_in(f: FormSpec, space: Subspace) -> Optional[list]:
    """A vector of nonzero f-norm in the space, or None if f vanishes there.

    Scanning basis vectors and pairwise sums is complete: if some value
    f(u, v) is nonzero while all norms vanish, then norm(u + v) = 2 f(u,v)
    is nonzero.
    """
    basis = space.basis_vectors()
    for v in basis:
        if not f.norm(v).is_zero():
            return v
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            w = vec_add(basis[i], basis[j])
            if not f.norm(w).is_zero():
                return w
    return None


def _vector_with_sign(h: FormSpec, space: Subspace,
                      sign: Optional[int]) -> Optional[list]:
    """A vector in the space whose (real) h-norm has the given sign, or
    any nonzero norm when sign is None.  Falls back to exact congruence
    diagonalization of the restricted Gram, which is complete."""
    basis = space.basis_vectors()
    def _ok(v):
        q = h.norm(v)
        if q.is_zero():
            return False
        return sign is None or q.sign() == sign
    for v in basis:
        if _ok(v):
            return v
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            w = vec_add(basis[i], basis[j])
            if _ok(w):
                return w
    if not basis:
        return None
    d, s = congruence_diagonalize(h.restrict(space))
    for idx, val in enumerate(d):
        if val.is_zero():
            continue
        if sign is None or val.sign() == sign:
            return space.matrix.apply(s.col(idx))
    return None


# -- symplectic line transport ----------------------------------------------------


def _lift_vec(t: Tower, v: Sequence) -> list:
    out = []
    for x in v:
        if isinstance(x, Scalar):
            out.append(t.zero() + x)
        else:
            out.append(t.scalar(x))
    return out


def _lift_matrix(t: Tower, m: Matrix) -> Matrix:
    return Matrix(t, [[t.zero() + m[i, j] for j in range(m.cols)]
                      for i in range(m.rows)], cols=m.cols)


def transport_positive_line_sp(model: StandardModel, line_src, line_dst) \
        -> Witness:
    """An element of the real symplectic-unitary group taking one
    h-definite line to another of the same sign.

    Decomposes the space into phi-stable planes span{z_i, phi(z_i)} seeded
    at the given lines, matches the second decomposition's norm signs to
    the first, rescales by the square roots of the norm ratios (the only
    tower extensions), and maps frame to frame.
    """
    if model.case not in ("projective-split", "projective-pq"):
        raise ValueError("line transport needs a projective model")
    t = model.tower.clone()
    m = model.ambient_dim
    z = _lift_vec(t, line_src)
    zt = _lift_vec(t, line_dst)
    if all(x.is_zero() for x in z) or all(x.is_zero() for x in zt):
        raise ValueError("a line representative is zero")
    h_t = FormSpec("hermitian", _lift_matrix(t, model.h.gram), "h")
    omega_t = FormSpec("antisymmetric", _lift_matrix(t, model.omega.gram),
                       "omega")
    phi_t = _lift_matrix(t, model.phi_mat)
    a0, b0 = h_t.norm(z), h_t.norm(zt)
    if a0.is_zero() or b0.is_zero():
        raise NotInDomainError("null lines are not in the definite orbits")
    if a0.sign() != b0.sign():
        raise NotInDomainError(
            "lines lie in different open orbits (opposite h-norm signs)")

    def decompose(seed, prescribed):
        space = Subspace.from_vectors(
            t, m, [Matrix.identity(t, m).col(j) for j in range(m)])
        out = []
        for step in range(model.n):
            if step == 0:
                u = seed
            else:
                want = prescribed[step] if prescribed is not None else None
                u = _vector_with_sign(h_t, space, want)
                if u is None:
                    raise WitnessVerificationError(
                        "plane decomposition stalled at step %d" % step)
            alpha = h_t.norm(u)
            phi_u = phi_t.apply([x.conj() for x in u])
            plane = Subspace.from_vectors(t, m, [u, phi_u])
            if plane.dim != 2:
                raise WitnessVerificationError("phi-plane degenerated")
            out.append((u, phi_u, alpha))
            space = space.intersect(h_t.perp(plane))
        if space.dim != 0:
            raise WitnessVerificationError("phi-plane decomposition is not "
                                           "exhaustive")
        return out

    side_a = decompose(z, None)
    signs = [alpha.sign() for (_, _, alpha) in side_a]
    side_b = decompose(zt, signs)
    frame_a, frame_b = [], []
    for (ua, pa, aa), (ub, pb, ab) in zip(side_a, side_b):
        ratio = aa / ab
        if ratio.sign() <= 0:
            raise WitnessVerificationError("norm ratio is not positive")
        c = t.adjoin_sqrt(ratio)
        ub2 = vec_scale(c, ub)
        pb2 = vec_scale(c, pb)
        frame_a.extend([ua, pa])
        frame_b.extend([ub2, pb2])
    ma = Matrix.from_cols(t, frame_a)
    mb = Matrix.from_cols(t, frame_b)
    if not (omega_t.gram_of(frame_a) == omega_t.gram_of(frame_b)
            and h_t.gram_of(frame_a) == h_t.gram_of(frame_b)):
        raise WitnessVerificationError("frame Grams disagree after scaling")
    element = mb * ma.inverse()
    name = "Sp2nR" if model.variant == "split" else "Sp(2p,2q)"
    group = GroupSpec(t, m, [PreservesBilinear(omega_t),
                             PreservesHermitian(h_t)], name)
    info = ({"case": "projective-split", "n": model.n}
            if model.variant == "split"
            else {"case": "projective-pq", "p": model.p, "q": model.q})
    w = Witness(group, element, "maps_line",
                Matrix.from_cols(t, [z]), Matrix.from_cols(t, [zt]), info)
    if not w.verify():
        raise WitnessVerificationError("line transport failed verification")
    return w


# -- isotropic normal forms --------------------------------------------------------


def _coordinate_subspace(t: Tower, m: int, idx: Sequence[int]) -> Subspace:
    ident = Matrix.identity(t, m)
    return Subspace.from_vectors(t, m, [ident.col(j) for j in idx])


def _embed(t: Tower, m: int, idx: Sequence[int], small: Matrix) -> Matrix:
    """Identity on C^m except the block on the listed coordinates."""
    rows = [[t.one() if i == j else t.zero() for j in range(m)]
            for i in range(m)]
    for bi, i in enumerate(idx):
        for bj, j in enumerate(idx):
            rows[i][j] = small[bi, bj]
    return Matrix(t, rows, cols=m)


def _as_subspace(t: Tower, m: int, w) -> Subspace:
    if isinstance(w, Subspace):
        vecs = [_lift_vec(t, v) for v in w.basis_vectors()]
    else:
        vecs = [_lift_vec(t, v) for v in w]
    return Subspace.from_vectors(t, m, vecs)


def isotropic_normal_form_complex(model: StandardModel, w_hat) -> Witness:
    """A special-orthogonal element fixing the last basis vector and
    carrying the given isotropic n-plane to span{e_k + i e_{n+k}}.

    Recursive peeling: split off the direction leaving the hyperplane V,
    align its V-part with the last free V-coordinate by reflections, and
    recurse on two fewer coordinates.  Planes in the other connected
    family, or meeting V in excess dimension at any level, are rejected
    with ``NotInDomainError`` (no such witness exists / boundary case).
    """
    if model.case != "isotropic":
        raise ValueError("needs the isotropic model")
    t = model.tower.clone()
    n, m = model.n, model.ambient_dim
    w0 = _as_subspace(t, m, w_hat)
    b_t = FormSpec("symmetric", Matrix.identity(t, m), "b")
    if w0.dim != n:
        raise ValueError("plane has dimension %d, expected %d" % (w0.dim, n))
    if not b_t.is_isotropic(w0):
        raise ValueError("plane is not b-isotropic")
    nf = _as_subspace(t, m, model.normal_form_complex())
    if (w0.intersect(nf).dim - n) % 2 != 0:
        raise NotInDomainError(
            "plane lies in the other connected family of isotropic "
            "n-planes; no witness fixing the last vector exists")
    g_total = Matrix.identity(t, m)
    cur = w0
    for level in range(n, 1, -1):
        m2 = 2 * level
        last = m2 - 1
        cand = [v for v in cur.basis_vectors() if not v[last].is_zero()]
        if not cand:
            raise NotInDomainError(
                "boundary configuration: the plane meets the fixed "
                "hyperplane in excess dimension at level %d" % level)
        u = vec_scale(t.i() / cand[0][last], cand[0])
        v = list(u)
        v[last] = t.zero()
        if not b_t.norm(v).is_one():
            raise WitnessVerificationError("extracted vector has norm != 1")
        sub_idx = list(range(m2 - 1))
        f_sub = FormSpec("symmetric", Matrix.identity(t, m2 - 1), "b")
        target = [t.zero()] * (m2 - 1)
        target[m2 - 2] = t.one()
        g_small = witt_transport(f_sub, [[v[j] for j in sub_idx]], [target])
        g_k = _embed(t, m, sub_idx, g_small)
        g_total = g_k * g_total
        moved = Subspace.from_vectors(t, m,
                                      [g_k.apply(bv)
                                       for bv in cur.basis_vectors()])
        cur = moved.intersect(_coordinate_subspace(t, m, range(m2 - 2)))
        if cur.dim != level - 1:
            raise WitnessVerificationError(
                "peeled plane has wrong dimension at level %d" % level)
    # bottom line in span{e1, e2} must be e1 +- i e2
    w = cur.basis_vectors()[0]
    if w[0].is_zero():
        raise WitnessVerificationError("bottom line misses the first "
                                       "coordinate")
    ratio = w[1] / w[0]
    ii = t.i()
    if ratio == ii:
        sign_plus = True
    elif ratio == -ii:
        sign_plus = False
    else:
        raise WitnessVerificationError("bottom line is not isotropic")
    # interleave permutation: e_{2k-1} -> e_k, e_{2k} -> e_{n+k} (1-based)
    zero, one = t.zero(), t.one()
    rows = [[zero] * m for _ in range(m)]
    for k in range(1, n + 1):
        rows[k - 1][2 * k - 2] = one
        rows[n + k - 1][2 * k - 1] = one
    perm = Matrix(t, rows, cols=m)
    correction = perm
    if not sign_plus:
        flip = Matrix.diag(t, [1] + [-1] + [1] * (m - 2))
        correction = perm * flip
    g = correction * g_total
    if not g.det().is_one():
        raise WitnessVerificationError(
            "assembled element is not special orthogonal")
    iso = StandardModel.isotropic(t, model.p, model.q)
    group = build_group(iso, "SO2n-1C")
    witness = Witness(group, g, "maps_subspace", w0.matrix, nf.matrix,
                      {"case": "isotropic", "p": model.p, "q": model.q})
    if not witness.verify():
        raise WitnessVerificationError(
            "complex normal-form witness failed verification")
    return witness


def isotropic_normal_form_real(model: StandardModel, w_hat) -> Witness:
    """An element of the real form (fixing the last basis vector) carrying
    an open-orbit isotropic n-plane to the real normal form.

    Works in the signature presentation, where the group consists of real
    matrices: the part of the plane inside the fixed hyperplane is placed
    pair by pair with real Witt transports, the leftover line then sits on
    the last two coordinates automatically, and a single coordinate flip
    corrects its sign when the Witt product has determinant -1; the final
    determinant is then +1 by connected-family rigidity.  Non-open
    signature, h-degenerate boundary configurations and the wrong family
    are rejected as out of domain.
    """
    if model.case != "isotropic":
        raise ValueError("needs the isotropic model")
    t = model.tower.clone()
    n, m = model.n, model.ambient_dim
    w_std = _as_subspace(t, m, w_hat)
    b_std = FormSpec("symmetric", Matrix.identity(t, m), "b")
    h_std = FormSpec("hermitian", _lift_matrix(t, model.hhat.gram), "hhat")
    if w_std.dim != n:
        raise ValueError("plane has dimension %d, expected %d"
                         % (w_std.dim, n))
    if not b_std.is_isotropic(w_std):
        raise ValueError("plane is not b-isotropic")
    sig = hermitian_signature(h_std.restrict(w_std))
    if sig[2] > 0:
        raise NotInDomainError("boundary configuration: h degenerate on "
                               "the plane")
    if (sig[0], sig[1]) != model.open_signature:
        raise NotInDomainError(
            "plane is not in the open orbit: h-signature %r, open orbit "
            "needs %r" % ((sig[0], sig[1]), model.open_signature))
    # move to the signature presentation
    s_mat = _lift_matrix(t, model.sig_change)
    s_inv = s_mat.inverse()
    ehat = _lift_matrix(t, model.hhat.gram)
    b_sig = FormSpec("symmetric", ehat, "b_sig")
    h_sig = FormSpec("hermitian", ehat, "hhat_sig")
    w_sig = Subspace.from_vectors(
        t, m, [s_inv.apply(bv) for bv in w_std.basis_vectors()])
    nf_std = _as_subspace(t, m, model.normal_form_real())
    nf_sig = Subspace.from_vectors(
        t, m, [s_inv.apply(bv) for bv in nf_std.basis_vectors()])
    if (w_sig.intersect(nf_sig).dim - n) % 2 != 0:
        raise NotInDomainError(
            "plane lies in the other connected family; no witness fixing "
            "the last vector exists")
    pairs = model.normal_form_real_pairs()
    eps = model.eps
    expected = (model.open_signature[0] - (1 if eps > 0 else 0),
                model.open_signature[1] - (1 if eps < 0 else 0))
    w_v = w_sig.intersect(_coordinate_subspace(t, m, range(m - 1)))
    if w_v.dim != n - 1:
        raise WitnessVerificationError(
            "plane meets the fixed hyperplane in dimension %d" % w_v.dim)
    sig_v = hermitian_signature(h_sig.restrict(w_v))
    if sig_v[2] > 0 or (sig_v[0], sig_v[1]) != expected:
        raise NotInDomainError(
            "boundary configuration: h-signature on the hyperplane part "
            "is %r, the procedure needs %r" % (sig_v, expected))
    remaining = list(range(m - 1))
    cur = w_v
    g_total = Matrix.identity(t, m)
    half = t.scalar(Fraction(1, 2))
    for (a_idx, b_idx) in pairs[:-1]:
        csign = 1 if model.hhat.gram[a_idx, a_idx].sign() > 0 else -1
        u = _vector_with_sign(h_sig, cur, csign)
        if u is None:
            raise WitnessVerificationError(
                "no vector of the required sign; bookkeeping broken")
        alpha = h_sig.norm(u)
        x = [c.real_part() for c in u]
        y = [t.zero() + c.imag_part() for c in u]
        if not (b_sig.norm(x) == alpha * half
                and b_sig.norm(y) == alpha * half
                and b_sig.value(x, y).is_zero()):
            raise WitnessVerificationError("real split of the pair vector "
                                           "violates its Gram identities")
        alpha_abs = alpha if alpha.sign() > 0 else -alpha
        root = t.adjoin_sqrt(alpha_abs * half)
        sub = remaining
        f_sub = FormSpec(
            "symmetric",
            Matrix(t, [[ehat[i, j] for j in sub] for i in sub],
                   cols=len(sub)), "b_sub")
        ta = [t.zero()] * len(sub)
        tb = [t.zero()] * len(sub)
        ta[sub.index(a_idx)] = root
        tb[sub.index(b_idx)] = root
        g_small = witt_transport(f_sub,
                                 [[x[j] for j in sub], [y[j] for j in sub]],
                                 [ta, tb], extra_real=True)
        g_k = _embed(t, m, sub, g_small)
        g_total = g_k * g_total
        # pass to the h-complement of u inside the current plane
        row = [h_sig.value(bv, u) for bv in cur.basis_vectors()]
        coeffs = kernel(Matrix(t, [row], cols=len(row)))
        nxt = [g_k.apply(cur.matrix.apply(c)) for c in coeffs]
        prev_dim = cur.dim
        cur = Subspace.from_vectors(t, m, nxt)
        if cur.dim != prev_dim - 1:
            raise WitnessVerificationError("complement has wrong dimension")
        remaining = [j for j in remaining if j not in (a_idx, b_idx)]
    # leftover line must now sit on the final coordinate pair
    moved = Subspace.from_vectors(
        t, m, [g_total.apply(bv) for bv in w_sig.basis_vectors()])
    a_fin, b_fin = pairs[-1]
    leftover = moved.intersect(_coordinate_subspace(t, m, [a_fin, b_fin]))
    if leftover.dim != 1:
        raise WitnessVerificationError("leftover line is displaced")
    w = leftover.basis_vectors()[0]
    if w[b_fin].is_zero():
        raise WitnessVerificationError("leftover line misses the last "
                                       "coordinate")
    w = vec_scale(t.i() / w[b_fin], w)
    beta = w[a_fin]
    if not (beta.is_real() and (beta * beta).is_one()):
        raise WitnessVerificationError("leftover line is not isotropic")
    if beta.sign() < 0:
        # the Witt product may have determinant -1, in which case the
        # leftover lands on the conjugate line; negating the paired real
        # coordinate fixes both at once (it commutes with the diagonal
        # Gram, fixes the last vector and all placed pairs)
        flip = Matrix.diag(t, [-1 if j == a_fin else 1 for j in range(m)])
        g_total = flip * g_total
        moved = Subspace.from_vectors(
            t, m, [flip.apply(bv) for bv in moved.basis_vectors()])
    if not column_space_equal(moved.matrix, nf_sig.matrix):
        raise WitnessVerificationError("plane did not reach the normal form")
    if not g_total.det().is_one():
        raise WitnessVerificationError("element is not special orthogonal")
    g_std = s_mat * g_total * s_inv
    iso = StandardModel.isotropic(t, model.p, model.q)
    group = build_group(iso, "SO(p,q)")
    witness = Witness(group, g_std, "maps_subspace", w_std.matrix,
                      nf_std.matrix,
                      {"case": "isotropic", "p": model.p, "q": model.q})
    if not witness.verify():
        raise WitnessVerificationError(
            "real normal-form witness failed verification")
    return witness
