"""Reduction to three-sphere geometry via a quaternionic hermitian form.

A nondegenerate quaternionic hermitian form on H^2 splits over the complex
numbers as frak_h = h + j omega, with h a complex hermitian form of signature
(2,2) and omega an alternating complex bilinear form.  The null quaternionic
lines of frak_h form a three-sphere inside HP^1, and the induced
perpendicularity map on projective lines of CP^3 is an anti-holomorphic
involution whose real set carries the classical light-cone geometry of
circles in S^3.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .quat import Quaternion
from . import proj4
from .proj4 import (
    BIVECTOR_PAIRS,
    DEFAULT_TOL,
    GeometryError,
    QUADRIC_MATRIX,
    line_factorize,
    normalize_proj,
    nullspace,
    orthonormal_span,
    quadric_pair,
    wedge,
)
from .twistor import (
    HPoint,
    classify_contact,
    is_j_real,
    j_on_bivector,
    j_on_vector,
    twistor_fiber,
)
from .xratio import _quadric_roots, _sort_key

# the four complex basis directions of C^4 as elements of H^2
_H2_BASIS = (
    (Quaternion.one(), Quaternion(0, 0, 0, 0)),
    (Quaternion.j(), Quaternion(0, 0, 0, 0)),
    (Quaternion(0, 0, 0, 0), Quaternion.one()),
    (Quaternion(0, 0, 0, 0), Quaternion.j()),
)

DEFAULT_FORM_MATRIX = (
    (Quaternion(0, 0, 0, 0), Quaternion.one()),
    (Quaternion.one(), Quaternion(0, 0, 0, 0)),
)


def _quat_form_value(fmat, v, w) -> Quaternion:
    total = Quaternion(0, 0, 0, 0)
    for a in range(2):
        for b in range(2):
            total = total + v[a].conjugate() * fmat[a][b] * w[b]
    return total


@dataclass
class QuatHermitianForm:
    """A quaternionic hermitian form with its complex split h + j omega."""

    qmat: tuple = DEFAULT_FORM_MATRIX
    hmat: np.ndarray = field(init=False)
    omega: np.ndarray = field(init=False)
    omega_vec: np.ndarray = field(init=False)

    def __post_init__(self):
        h = np.zeros((4, 4), dtype=complex)
        om = np.zeros((4, 4), dtype=complex)
        for a in range(4):
            for b in range(4):
                val = _quat_form_value(self.qmat, _H2_BASIS[a], _H2_BASIS[b])
                z1, z2 = val.complex_pair()
                h[a, b] = z1
                om[a, b] = z2
        if np.linalg.norm(h - h.conj().T) > 1e-12:
            raise GeometryError("h component is not hermitian")
        if np.linalg.norm(om + om.T) > 1e-12:
            raise GeometryError("omega component is not alternating")
        if abs(np.linalg.det(h)) < 1e-12:
            raise GeometryError("degenerate hermitian form")
        self.hmat = h
        self.omega = om
        self.omega_vec = np.array([om[a, b] for a, b in BIVECTOR_PAIRS])

    def value(self, v: np.ndarray, w: np.ndarray) -> Quaternion:
        """frak_h on C^4 vectors, reassembled from the complex split."""
        v = np.asarray(v, dtype=complex)
        w = np.asarray(w, dtype=complex)
        return Quaternion.from_complex_pair(complex(v.conj() @ self.hmat @ w),
                                            complex(v @ self.omega @ w))

    def h(self, v: np.ndarray, w: np.ndarray) -> complex:
        return complex(np.asarray(v).conj() @ self.hmat @ np.asarray(w))

    def omega_on_bivector(self, x: np.ndarray) -> complex:
        """omega evaluated on a bivector (omega(v, w) for x = v ^ w)."""
        return complex(self.omega_vec @ np.asarray(x, dtype=complex))

    def is_null_point(self, p: HPoint, tol: float = DEFAULT_TOL) -> bool:
        """True iff p lies on the three-sphere of null lines."""
        v = p.lift()
        return self.value(v, v).norm() < tol


def decompose_form(form: QuatHermitianForm):
    return form.hmat, form.omega


def rho(l: np.ndarray, form: QuatHermitianForm | None = None,
        tol: float = DEFAULT_TOL) -> np.ndarray:
    """The h-perpendicular line; an anti-holomorphic involution on lines."""
    if form is None:
        form = QuatHermitianForm()
    v, w = line_factorize(l)
    rows = np.array([v.conj() @ form.hmat, w.conj() @ form.hmat])
    ns = nullspace(rows, 1e-10)
    if ns.shape[1] != 2:
        raise GeometryError("perpendicular space has unexpected dimension")
    return normalize_proj(wedge(ns[:, 0], ns[:, 1]))


def is_lie_real(l: np.ndarray, form: QuatHermitianForm | None = None,
                tol: float = DEFAULT_TOL) -> bool:
    """True iff l equals its perpendicular: the sphere or point lies in S^3."""
    l = normalize_proj(l)
    return proj4.proj_distance(l, rho(l, form)) < tol


def projective_basis(form: QuatHermitianForm | None = None) -> list:
    """Six bivectors whose projective classes are fixed by perpendicularity.

    Built on the C^4 basis directions v = e1, w = e2 whose projections are
    the null points infinity and 0 of the default form.  The classes are
    fixed but the vectors themselves are only fixed up to phase; lie_basis
    returns the phase-corrected, genuinely involution-fixed representatives.
    """
    e = np.eye(4, dtype=complex)
    v, vj, w, wj = e[0], e[1], e[2], e[3]
    return [
        wedge(v, vj),
        wedge(w, wj),
        wedge(v, wj),
        wedge(vj, w),
        0.5 * (wedge(v, w) - wedge(vj, wj)),
        0.5 * (wedge(v, w) + wedge(vj, wj)),
    ]


def rho_tilde_matrix(form: QuatHermitianForm | None = None) -> np.ndarray:
    """Matrix M of the antilinear lift of perpendicularity: a -> M conj(a).

    The lift sends v ^ w to the quadric-dual of the wedge of the flats
    h(v, .) and h(w, .); its square is the identity, so it defines a real
    structure on the space of bivectors.
    """
    if form is None:
        form = QuatHermitianForm()
    ht = form.hmat.T
    lam2 = np.zeros((6, 6), dtype=complex)
    for col, (a, b) in enumerate(BIVECTOR_PAIRS):
        lam2[:, col] = wedge(ht[:, a], ht[:, b])
    m = np.linalg.inv(np.asarray(QUADRIC_MATRIX)) @ lam2
    if np.linalg.norm(m @ m.conj() - np.eye(6)) > 1e-9:
        raise GeometryError("perpendicularity lift does not square to identity")
    return m


def lie_basis(form: QuatHermitianForm | None = None) -> list:
    """Real basis of the involution-fixed slice of the bivector space.

    Each element satisfies rho_tilde(a) = a exactly; real linear combinations
    parameterize the spheres and points contained in S^3.
    """
    if form is None:
        form = QuatHermitianForm()
    m = rho_tilde_matrix(form)
    out = []
    for b in projective_basis(form):
        img = m @ np.conj(b)
        # rho_tilde(b) = c b with |c| = 1; sqrt(conj(c)) corrects the phase
        k = int(np.argmax(np.abs(b)))
        c = img[k] / b[k]
        if abs(abs(c) - 1.0) > 1e-9 or np.linalg.norm(img - c * b) > 1e-9:
            raise GeometryError("basis element is not projectively fixed")
        mu = np.sqrt(np.conj(c))
        fixed = mu * b
        if np.linalg.norm(m @ np.conj(fixed) - fixed) > 1e-9:
            raise GeometryError("phase correction failed")
        out.append(fixed)
    return out


def _signature(gram: np.ndarray) -> tuple:
    evals = np.linalg.eigvalsh(gram)
    pos = int(np.sum(evals > 1e-9))
    neg = int(np.sum(evals < -1e-9))
    return pos, neg


def lie_signature_report(form: QuatHermitianForm | None = None) -> dict:
    """Signatures of the quadric form on the involution-fixed real span and
    on its circle-space slice cut out by the omega functional."""
    if form is None:
        form = QuatHermitianForm()
    basis = lie_basis(form)
    gram = np.array([[quadric_pair(a, b) for b in basis] for a in basis])
    if np.linalg.norm(gram.imag) > 1e-9:
        raise GeometryError("Gram matrix of the real basis is not real")
    gram = gram.real
    full_sig = _signature(gram)
    # omega = 0 cuts one real dimension out of the fixed slice
    om = np.array([form.omega_vec @ b for b in basis])
    rows = np.vstack([om.real, om.imag])
    u, s, vh = np.linalg.svd(rows)
    rank = int(np.sum(s > 1e-10 * max(s[0], 1e-30)))
    if rank != 1:
        raise GeometryError("omega does not cut a hyperplane of the real slice")
    coeffs = vh[rank:].T  # real 6x5
    restricted = coeffs.T @ gram @ coeffs
    sub_sig = _signature(restricted)
    return {"basis": full_sig, "omega_slice": sub_sig,
            "dimension": len(basis)}


def circle_to_Q3(p1: HPoint, p2: HPoint, p3: HPoint,
                 form: QuatHermitianForm | None = None,
                 tol: float = DEFAULT_TOL):
    """The two oriented-circle representatives of the circle through three
    points of S^3.

    Solves for the quadric points incident to all three fibers and null for
    omega; the result is a pair swapped by the j-action, each a two-sphere
    meeting S^3 along the circle.
    """
    if form is None:
        form = QuatHermitianForm()
    for p in (p1, p2, p3):
        if not form.is_null_point(p, 1e-7):
            raise GeometryError("point is not on the three-sphere")
    fibers = [twistor_fiber(p) for p in (p1, p2, p3)]
    rows = [f @ QUADRIC_MATRIX for f in fibers]
    rows.append(form.omega_vec)
    ns = nullspace(np.array(rows), 1e-9)
    if ns.shape[1] != 2:
        raise GeometryError("collinear or coincident circle points")
    roots = _quadric_roots(ns[:, 0], ns[:, 1])
    roots = [x for x in roots if abs(quadric_pair(x, x)) < 1e-7]
    if len(roots) != 2:
        raise GeometryError("circle pencil has no two quadric points")
    roots.sort(key=_sort_key)
    a, b = roots
    if proj4.proj_distance(normalize_proj(j_on_bivector(a)), b) > 1e-6:
        raise GeometryError("circle representatives are not a j-pair")
    return a, b


@dataclass
class CoinReport:
    """Outcome of the four-coin contact verification."""

    contact_tags: list
    contact_points: list
    sphere: np.ndarray
    sphere_tags: list
    generic: bool


def _oriented_contact(a: np.ndarray, b: np.ndarray):
    """Contact classification allowing for the two orientations of b."""
    cc = classify_contact(a, b)
    if cc.tag == "touch":
        return cc, b
    alt = normalize_proj(j_on_bivector(b))
    cc2 = classify_contact(a, alt)
    if cc2.tag == "touch":
        return cc2, alt
    return cc, b


def touching_coins_check(circles, form: QuatHermitianForm | None = None,
                         tol: float = DEFAULT_TOL) -> CoinReport:
    """Verify the coin-chain picture for four cyclically touching circles.

    Each circle is given by one oriented representative (a quadric point);
    consecutive representatives must touch, the four contact points determine
    a two-sphere, and that sphere half-touches every representative.  When
    the four contact points happen to be concircular no single sphere passes
    through all of them while meeting every representative; the report then
    falls back to the unique two-sphere in contact with all four
    representatives (the quadric points polar to their span) and flags the
    configuration as non-generic.
    """
    if form is None:
        form = QuatHermitianForm()
    circles = [normalize_proj(c) for c in circles]
    if len(circles) != 4:
        raise GeometryError("need exactly four circles")
    span_rank = np.linalg.matrix_rank(np.array(circles), tol=1e-8)
    if span_rank < 4:
        raise GeometryError("common-sphere degeneracy: representatives span "
                            "fewer than four dimensions")
    tags = []
    points = []
    oriented = list(circles)
    for k in range(4):
        cc, fixed = _oriented_contact(oriented[k], circles[(k + 1) % 4])
        oriented[(k + 1) % 4] = fixed
        tags.append(cc.tag)
        if cc.tag != "touch" or not cc.witnesses:
            raise GeometryError(f"circles {k} and {(k + 1) % 4} do not touch")
        points.append(cc.witnesses[0])
    fibers = [twistor_fiber(p) for p in points]
    rows = np.array([f @ QUADRIC_MATRIX for f in fibers])
    ns = nullspace(rows, 1e-8)
    generic = ns.shape[1] == 2
    if generic:
        roots = _quadric_roots(ns[:, 0], ns[:, 1])
        roots = [x for x in roots if abs(quadric_pair(x, x)) < 1e-7
                 and not is_j_real(x, 1e-6)]
        if not roots:
            raise GeometryError("no sphere through the four contact points")
        roots.sort(key=_sort_key)
        sphere = roots[0]
    else:
        sphere = _representative_contact_sphere(oriented)
    sphere_tags = []
    for c in oriented:
        cc = classify_contact(sphere, c)
        if cc.tag not in ("half_touch",):
            cc2 = classify_contact(sphere, normalize_proj(j_on_bivector(c)))
            if cc2.tag == "half_touch":
                cc = cc2
        sphere_tags.append(cc.tag)
    return CoinReport(tags, points, sphere, sphere_tags, generic)


def _representative_contact_sphere(circles):
    """The two-sphere in contact with all four circle representatives.

    The representatives span a four-dimensional linear space whose polar is a
    pencil meeting the quadric in one pair of oriented spheres; either member
    is incident with every representative.
    """
    rows = np.array([normalize_proj(c) @ QUADRIC_MATRIX for c in circles])
    pol = nullspace(rows, 1e-8)
    if pol.shape[1] != 2:
        raise GeometryError("representatives have a degenerate polar pencil")
    roots = [x for x in _quadric_roots(pol[:, 0], pol[:, 1])
             if abs(quadric_pair(x, x)) < 1e-7 and not is_j_real(x, 1e-6)]
    if not roots:
        raise GeometryError("no sphere in contact with all four "
                            "representatives")
    roots.sort(key=_sort_key)
    return roots[0]
