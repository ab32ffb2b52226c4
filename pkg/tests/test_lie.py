import numpy as np
import pytest

from twistnets.quat import Quaternion
from twistnets.proj4 import (
    GeometryError,
    lines_incident,
    normalize_proj,
    proj_distance,
    quadric_pair,
    wedge,
)
from twistnets.twistor import HPoint, j_on_bivector, j_on_vector, twistor_fiber
from twistnets.lie import (
    QuatHermitianForm,
    circle_to_Q3,
    decompose_form,
    is_lie_real,
    lie_basis,
    lie_signature_report,
    rho,
    rho_tilde_matrix,
    touching_coins_check,
)


FORM = QuatHermitianForm()


# ---------------------------------------------------------------------------
# the form and its complex split


def test_form_split_identities():
    rng = np.random.default_rng(0)
    for _ in range(30):
        v = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        w = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        val = FORM.value(v, w)
        z1, z2 = val.complex_pair()
        assert abs(z1 - FORM.h(v, w)) < 1e-10
        # omega is the j-part and pairs v with the j-image of w
        assert abs(FORM.h(v, j_on_vector(w)).conjugate() + z2) < 1e-10


def test_omega_alternating_and_h_hermitian():
    h, om = decompose_form(FORM)
    assert np.allclose(h, h.conj().T)
    assert np.allclose(om, -om.T)
    # h has split signature (2, 2)
    evals = np.linalg.eigvalsh(h)
    assert int(np.sum(evals > 0)) == 2 and int(np.sum(evals < 0)) == 2


def test_h_vanishes_on_j_pairs():
    rng = np.random.default_rng(1)
    for _ in range(20):
        v = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        assert abs(FORM.h(v, j_on_vector(v)).imag) >= 0  # well defined
        assert abs(FORM.value(v, v).complex_pair()[0].imag) < 1e-10


def test_null_points_are_imaginary_quaternions():
    rng = np.random.default_rng(2)
    for _ in range(20):
        q = Quaternion(0.0, *rng.standard_normal(3))
        assert FORM.is_null_point(HPoint.from_quaternion(q), 1e-9)
        q2 = Quaternion(1.0, *rng.standard_normal(3))
        assert not FORM.is_null_point(HPoint.from_quaternion(q2), 1e-6)
    assert FORM.is_null_point(HPoint.infinity(), 1e-9)


# ---------------------------------------------------------------------------
# the perpendicularity involution


def test_rho_is_involution():
    rng = np.random.default_rng(3)
    for _ in range(20):
        a = normalize_proj(wedge(
            rng.standard_normal(4) + 1j * rng.standard_normal(4),
            rng.standard_normal(4) + 1j * rng.standard_normal(4)))
        assert proj_distance(rho(rho(a, FORM), FORM), a) < 1e-8


def test_rho_tilde_squares_to_identity():
    m = rho_tilde_matrix(FORM)
    assert np.linalg.norm(m @ m.conj() - np.eye(6)) < 1e-9


def test_lie_basis_fixed_and_real_gram():
    basis = lie_basis(FORM)
    m = rho_tilde_matrix(FORM)
    for b in basis:
        assert np.linalg.norm(m @ np.conj(b) - b) < 1e-9
    gram = np.array([[quadric_pair(a, b) for b in basis] for a in basis])
    assert np.linalg.norm(gram.imag) < 1e-9


def test_fiber_of_null_point_is_lie_real():
    rng = np.random.default_rng(4)
    for _ in range(10):
        q = Quaternion(0.0, *rng.standard_normal(3))
        fib = twistor_fiber(HPoint.from_quaternion(q))
        assert is_lie_real(fib, FORM, 1e-7)
    # the fiber of a point off the three-sphere is not fixed
    fib = twistor_fiber(HPoint.from_quaternion(Quaternion(1.0, 1.0, 0.0, 0.0)))
    assert not is_lie_real(fib, FORM, 1e-6)


# ---------------------------------------------------------------------------
# signatures


def test_signature_report():
    rpt = lie_signature_report(FORM)
    assert rpt["dimension"] == 6
    assert rpt["basis"] == (2, 4)
    assert rpt["omega_slice"] == (1, 4)


# ---------------------------------------------------------------------------
# circles in the three-sphere


def _imag_point(v):
    return HPoint.from_quaternion(Quaternion(0.0, *v))


def test_circle_to_Q3_pair():
    rng = np.random.default_rng(5)
    pts = [_imag_point(rng.standard_normal(3)) for _ in range(3)]
    a, b = circle_to_Q3(*pts, FORM)
    assert proj_distance(normalize_proj(j_on_bivector(a)), b) < 1e-7
    for x in (a, b):
        assert abs(quadric_pair(x, x)) < 1e-7
        assert abs(FORM.omega_on_bivector(x)) < 1e-7
        for p in pts:
            assert lines_incident(x, twistor_fiber(p), 1e-7)


def test_circle_to_Q3_rejects_off_sphere_points():
    pts = [_imag_point(v) for v in ((1, 0, 0), (0, 1, 0))]
    bad = HPoint.from_quaternion(Quaternion(1.0, 0.0, 0.0, 0.0))
    with pytest.raises(GeometryError):
        circle_to_Q3(pts[0], pts[1], bad, FORM)


def test_circle_to_Q3_rejects_coincident_points():
    p = _imag_point((1, 0, 0))
    q = _imag_point((0, 1, 0))
    with pytest.raises(GeometryError):
        circle_to_Q3(p, p, q, FORM)


# ---------------------------------------------------------------------------
# touching coins


def _circle(points3):
    return circle_to_Q3(points3[0], points3[1], points3[2], FORM)[0]


def _ortho_circle_points(a, b):
    """Three points on the circle through unit vectors a, b of S^2 that meets
    the unit sphere orthogonally (so consecutive such circles touch)."""
    ab = float(a @ b)
    c = (a + b) / (1.0 + ab)
    r = np.linalg.norm(a - c)
    u = (a - c) / r
    w = b - c - ((b - c) @ u) * u
    w = w / np.linalg.norm(w)
    return [_imag_point(c + r * (np.cos(t) * u + np.sin(t) * w))
            for t in (0.4, 1.3, 2.5)]


def _coplanar_coin_circles():
    """Four pairwise tangent circles in one plane of Im H."""
    radii = [1.0, 2.0, 1.5, 1.2]
    c1 = np.array([0.0, 0.0])
    c2 = np.array([radii[0] + radii[1], 0.0])
    th = np.deg2rad(100.0)
    c3 = c2 + (radii[1] + radii[2]) * np.array([np.cos(th), np.sin(th)])
    d41, d34 = radii[3] + radii[0], radii[2] + radii[3]
    span = np.linalg.norm(c3 - c1)
    a = (d41 ** 2 - d34 ** 2 + span ** 2) / (2 * span)
    h = np.sqrt(d41 ** 2 - a ** 2)
    u = (c3 - c1) / span
    c4 = c1 + a * u - h * np.array([-u[1], u[0]])
    circles = []
    for c, r in zip([c1, c2, c3, c4], radii):
        pts = [_imag_point((c[0] + r * np.cos(t), c[1] + r * np.sin(t), 0.0))
               for t in np.linspace(0.3, 2 * np.pi, 4)[:3]]
        circles.append(_circle(pts))
    return circles


def test_touching_coins_generic():
    rng = np.random.default_rng(7)
    qs = []
    for _ in range(4):
        v = rng.normal(size=3)
        qs.append(v / np.linalg.norm(v))
    circles = [_circle(_ortho_circle_points(qs[k - 1], qs[k]))
               for k in range(4)]
    rpt = touching_coins_check(circles, FORM)
    assert rpt.generic
    assert rpt.contact_tags == ["touch"] * 4
    assert rpt.sphere_tags == ["half_touch"] * 4
    # the contact points are the chain points qs on the unit sphere
    got = sorted(np.round([[p.affine().x, p.affine().y, p.affine().z]
                           for p in rpt.contact_points], 6).tolist())
    want = sorted(np.round(qs, 6).tolist())
    assert np.allclose(got, want, atol=1e-5)


def test_touching_coins_coplanar_fallback():
    circles = _coplanar_coin_circles()
    rpt = touching_coins_check(circles, FORM)
    assert not rpt.generic
    assert rpt.contact_tags == ["touch"] * 4
    assert rpt.sphere_tags == ["half_touch"] * 4


def test_touching_coins_rejects_broken_chain():
    circles = _coplanar_coin_circles()
    # move the third circle so it no longer touches its neighbors
    pts = [_imag_point((7.0 + 1.3 * np.cos(t), 1.3 * np.sin(t), 0.0))
           for t in (0.3, 1.7, 3.1)]
    circles[2] = _circle(pts)
    with pytest.raises(GeometryError):
        touching_coins_check(circles, FORM)


def test_touching_coins_rejects_common_sphere_degeneracy():
    c = _circle(_ortho_circle_points(np.array([1.0, 0.0, 0.0]),
                                     np.array([0.0, 1.0, 0.0])))
    with pytest.raises(GeometryError):
        touching_coins_check([c, c, c, c], FORM)
