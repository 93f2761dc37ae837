"""Model construction and the form identities tying h, omega and phi."""

import pytest
from hypothesis import given, settings

from orbitcert.forms import FormSpec, StandardModel
from orbitcert.linalg import Matrix, Subspace, hermitian_signature, rank
from orbitcert.scalars import Tower

from conftest import vectors

T2 = Tower()
SPLIT2 = StandardModel.projective_split(T2, 2)


def test_projective_structure_matrices():
    # phi is a real structure on the split model (phi^2 = +Id: fixed group
    # Sp(2n,R)) and a quaternionic one on the signature model (phi^2 = -Id:
    # fixed group Sp(2p,2q)); J and E identities are common to both.
    for model, phi_sq_sign in (
            (SPLIT2, 1),
            (StandardModel.projective_signature(Tower(), 2, 1), -1)):
        m = model.ambient_dim
        t = model.tower
        ident = Matrix.identity(t, m)
        assert model.J * model.J == -ident
        assert model.J.transpose() * model.J == ident
        assert model.E * model.E == ident
        phi2 = model.phi_mat * model.phi_mat.conj()
        assert phi2 == ident.scale(phi_sq_sign)


def test_phi_is_antilinear():
    t = T2
    z = [t.scalar(1, 2), t.scalar(0, -1), t.scalar(3), t.scalar(-1, 1)]
    again = SPLIT2.phi(SPLIT2.phi(z))
    assert all((x - y).is_zero() for x, y in zip(again, z))
    i = t.i()
    lifted = SPLIT2.phi([i * x for x in z])
    expected = [-(i * x) for x in SPLIT2.phi(z)]
    assert all((x - y).is_zero() for x, y in zip(lifted, expected))


@settings(max_examples=30)
@given(vectors(T2, 4), vectors(T2, 4))
def test_h_equals_omega_of_phi(z, w):
    lhs = SPLIT2.h.value(z, w)
    rhs = SPLIT2.omega.value(z, SPLIT2.phi(w))
    assert lhs == rhs


@settings(max_examples=20)
@given(vectors(T2, 4))
def test_phi_plane_has_equal_perps(z):
    model = SPLIT2
    if model.h.norm(z).is_zero():
        return
    plane = Subspace.from_vectors(T2, 4, [z, model.phi(z)])
    if plane.dim != 2:
        return
    gram = model.h.restrict(plane)
    if gram.det().is_zero():
        return
    perp_h = model.h.perp(plane)
    perp_w = model.omega.perp(plane)
    assert perp_h == perp_w
    assert plane.intersect(perp_h).dim == 0
    assert plane.add(perp_h).dim == 4


def test_signature_of_standard_hermitian_grams():
    assert hermitian_signature(SPLIT2.h.gram) == (2, 2, 0)
    sig = StandardModel.projective_signature(Tower(), 2, 1)
    assert hermitian_signature(sig.h.gram) == (4, 2, 0)
    quad = StandardModel.quadric7(Tower())
    assert hermitian_signature(quad.h.gram) == (3, 4, 0)


def test_quadric_representatives():
    model = StandardModel.quadric7(Tower())
    reps = model.stratum_representatives
    for name, z in reps.items():
        assert model.b.norm(z).is_zero(), name
    assert model.h.norm(reps["positive"]).sign() == 1
    assert model.h.norm(reps["negative"]).sign() == -1
    assert model.h.norm(reps["null-real"]).is_zero()
    assert model.h.norm(reps["null-nonreal"]).is_zero()


def test_form_value_conventions():
    t = Tower()
    i = t.i()
    h = FormSpec("hermitian", Matrix.identity(t, 2), "h")
    z = [i, t.zero()]
    w = [t.one(), t.zero()]
    # linear in the first slot, conjugate-linear in the second
    assert h.value(z, w) == i
    assert h.value(w, z) == -i
    assert h.norm(z) == t.one()
    omega = FormSpec("antisymmetric", Matrix.from_rows(t, [[0, 1], [-1, 0]]),
                     "omega")
    assert omega.value(w, [t.zero(), t.one()]) == t.one()
    assert omega.norm(w).is_zero()


def test_isotropic_model_normal_forms():
    for p, q in ((2, 1), (1, 2), (2, 3), (3, 2)):
        model = StandardModel.isotropic(Tower(), p, q)
        n, m = model.n, model.ambient_dim
        assert m == p + q + 1

        nf_c = model.normal_form_complex()
        assert nf_c.dim == n
        for u in nf_c.basis_vectors():
            for v in nf_c.basis_vectors():
                assert model.b.value(u, v).is_zero()

        pairs = model.normal_form_real_pairs()
        assert len(pairs) == n
        assert pairs[-1][1] == m - 1
        flat = [c for pr in pairs for c in pr]
        assert len(set(flat)) == 2 * n

        nf_r = model.normal_form_real()
        assert nf_r.dim == n
        for u in nf_r.basis_vectors():
            for v in nf_r.basis_vectors():
                assert model.b.value(u, v).is_zero()
        gram = model.hhat.restrict(nf_r)
        assert hermitian_signature(gram)[:2] == model.open_signature


def test_isotropic_signature_coordinates():
    model = StandardModel.isotropic(Tower(), 2, 3)
    t = model.tower
    s = model.sig_change
    # the change of basis carries the signature Grams to the standard ones
    assert s.transpose() * model.b.gram * s == model.b_sig.gram
    assert s.conj_transpose() * model.hhat.gram * s == model.hhat_sig.gram
    v = [t.scalar(k + 1, -k) for k in range(model.ambient_dim)]
    assert model.to_standard_coords(model.to_signature_coords(v)) == v


def test_restrict_and_perp_shapes():
    model = SPLIT2
    t = model.tower
    plane = Subspace.from_vectors(t, 4, [[1, 0, 0, 0], [0, 1, 0, 0]])
    gram = model.h.restrict(plane)
    assert gram.rows == gram.cols == 2
    perp = model.h.perp(plane)
    assert perp.dim == 2
    for v in perp.basis_vectors():
        for u in plane.basis_vectors():
            assert model.h.value(u, v).is_zero()


def test_model_guards():
    with pytest.raises(ValueError):
        StandardModel.isotropic(Tower(), 2, 2)
    with pytest.raises(ValueError):
        StandardModel.projective_split(Tower(), 0)
    quad = StandardModel.quadric7(Tower())
    with pytest.raises(ValueError):
        quad.phi([quad.tower.zero()] * 7)
    with pytest.raises(ValueError):
        quad.normal_form_complex()
