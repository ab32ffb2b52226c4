"""The fibration CP^3 -> HP^1 and round two-spheres as lines in CP^3.

C^4 is identified with H^2 through the basis {e1, e1j, e2, e2j}: a pair of
quaternions (q1, q2) with q_m = z_{2m-1} + j z_{2m} corresponds to the complex
coordinate vector (z1, z2, z3, z4).  Right multiplication by j on H^2 induces
an antilinear map J on C^4; projective lines fixed by the induced action on
bivectors are exactly the fibers of the projection to HP^1, and the remaining
lines correspond to round two-spheres in S^4 = HP^1.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .quat import Quaternion
from . import proj4
from .proj4 import (
    DEFAULT_TOL,
    GeometryError,
    lines_incident,
    line_factorize,
    line_meet_point,
    normalize_proj,
    nullspace,
    plane_from_span,
    quadric_pair,
    wedge,
)


@dataclass(frozen=True)
class HPoint:
    """Point [a : b] of HP^1 in right-scale homogeneous coordinates."""

    a: Quaternion
    b: Quaternion

    def __post_init__(self):
        if self.a.is_zero(1e-14) and self.b.is_zero(1e-14):
            raise GeometryError("homogeneous quaternion pair must be nonzero")

    @staticmethod
    def from_quaternion(q: Quaternion) -> "HPoint":
        return HPoint(q, Quaternion.one())

    @staticmethod
    def infinity() -> "HPoint":
        return HPoint(Quaternion.one(), Quaternion(0, 0, 0, 0))

    def is_infinity(self, tol: float = DEFAULT_TOL) -> bool:
        return self.b.norm() < tol * max(1.0, self.a.norm())

    def affine(self) -> Quaternion:
        """The quaternion q with self = [q : 1]; raises at infinity."""
        if self.is_infinity():
            raise GeometryError("point at infinity has no affine coordinate")
        return self.a * self.b.inverse()

    def lift(self) -> np.ndarray:
        """A C^4 representative (the complex coordinates of (a, b))."""
        z1, z2 = self.a.complex_pair()
        z3, z4 = self.b.complex_pair()
        return normalize_proj(np.array([z1, z2, z3, z4], dtype=complex))

    def isclose(self, other: "HPoint", tol: float = DEFAULT_TOL) -> bool:
        # right-scale invariance: the lift must lie in the other point's
        # quaternionic line, i.e. in span{lift, J lift}
        la = self.lift()
        lb = other.lift()
        span = np.column_stack([lb, j_on_vector(lb)])
        resid = la - span @ np.linalg.lstsq(span, la, rcond=None)[0]
        return float(np.linalg.norm(resid)) < tol


def j_on_vector(v: np.ndarray) -> np.ndarray:
    """Right j-multiplication on H^2 in complex coordinates (antilinear, J^2 = -1)."""
    v = np.asarray(v, dtype=complex)
    return np.array([-np.conj(v[1]), np.conj(v[0]), -np.conj(v[3]), np.conj(v[2])])


def j_on_bivector(a: np.ndarray) -> np.ndarray:
    """Induced action (v ^ w) -> (vj ^ wj) on Pluecker vectors; squares to +id."""
    a = np.asarray(a, dtype=complex)
    c = np.conj(a)
    return np.array([c[0], c[4], -c[3], -c[2], c[1], c[5]])


def is_j_real(a: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    """True iff the bivector is fixed by the j-action up to positive real scale."""
    a = normalize_proj(a)
    b = normalize_proj(j_on_bivector(a))
    return bool(np.linalg.norm(a - b) < tol)


def twistor_project(v: np.ndarray) -> HPoint:
    """The point of HP^1 under (z1,z2,z3,z4) -> [z1 + j z2 : z3 + j z4]."""
    v = np.asarray(v, dtype=complex)
    if np.linalg.norm(v) == 0.0:
        raise GeometryError("cannot project zero vector")
    v = v / np.linalg.norm(v)
    q1 = Quaternion.from_complex_pair(v[0], v[1])
    q2 = Quaternion.from_complex_pair(v[2], v[3])
    return HPoint(q1, q2)


def twistor_fiber(p: HPoint) -> np.ndarray:
    """The line v ^ vj over a point of HP^1; always a j-real quadric point."""
    v = p.lift()
    return normalize_proj(wedge(v, j_on_vector(v)))


def hpoints_close(p: HPoint, q: HPoint, tol: float = DEFAULT_TOL) -> bool:
    return p.isclose(q, tol)


@dataclass
class SphereEndo:
    """A round two-sphere as an endomorphism of H^2 with square -Identity.

    Stored as the 4x4 complex matrix of the right-H-linear map in the global
    basis; the i-eigenspace (a complex 2-plane) is the corresponding line in
    CP^3.  In an adapted quaternionic basis the matrix takes the upper
    triangular form (R, H; 0, N) with R^2 = N^2 = -1.
    """

    matrix: np.ndarray

    def eigenline(self) -> np.ndarray:
        """The i-eigenspace as a Pluecker vector."""
        ns = nullspace(self.matrix - 1j * np.eye(4), 1e-8)
        if ns.shape[1] != 2:
            raise GeometryError("endomorphism has no 2-dim i-eigenspace")
        return normalize_proj(wedge(ns[:, 0], ns[:, 1]))

    def quaternion_entry(self, row: int, col: int) -> Quaternion:
        """Entry of the 2x2 quaternionic matrix (row, col in {0, 1}).

        A right-H-linear map sends the basis quaternion direction e_col to
        sum_row e_row * entry; in complex coordinates the (row, col) block is
        [[a, -conj(b)], [b, conj(a)]] for the quaternion entry a + j b.
        """
        a = self.matrix[2 * row, 2 * col]
        b = self.matrix[2 * row + 1, 2 * col]
        return Quaternion.from_complex_pair(a, b)

    def squares_to_minus_identity(self, tol: float = DEFAULT_TOL) -> bool:
        return bool(np.linalg.norm(self.matrix @ self.matrix + np.eye(4)) < tol * 4)


def sphere_from_eigenvectors(v: np.ndarray, w: np.ndarray) -> SphereEndo:
    """The unique sphere endomorphism with i-eigenspace span{v, w}.

    The right-H-linear extension forces the Jv, Jw directions onto the
    -i-eigenvalue.
    """
    v = np.asarray(v, dtype=complex)
    w = np.asarray(w, dtype=complex)
    basis = np.column_stack([v, w, j_on_vector(v), j_on_vector(w)])
    if abs(np.linalg.det(basis)) < 1e-10:
        raise GeometryError("eigenline is j-real: no sphere, only a point")
    d = np.diag([1j, 1j, -1j, -1j])
    return SphereEndo(basis @ d @ np.linalg.inv(basis))


def sphere_from_line(a: np.ndarray, tol: float = DEFAULT_TOL):
    """A decomposable bivector as either an HP^1 point (j-real) or a sphere."""
    a = normalize_proj(a)
    if not proj4.is_decomposable(a, max(tol, 1e-7)):
        raise GeometryError("sphere_from_line needs a decomposable bivector")
    if is_j_real(a, max(tol, 1e-7)):
        v, _ = line_factorize(a)
        return twistor_project(v)
    v, w = line_factorize(a)
    return sphere_from_eigenvectors(v, w)


def sphere_from_rhn(R: Quaternion, H: Quaternion, N: Quaternion) -> SphereEndo:
    """Build the sphere with quaternionic matrix (R, H; 0, N).

    Valid when R^2 = N^2 = -1 and RH + HN = 0; the affine sphere is the set
    of q with qN - Rq = 2H.
    """
    m = np.zeros((4, 4), dtype=complex)
    for (row, col), q in (((0, 0), R), ((0, 1), H), ((1, 1), N)):
        z1, z2 = q.complex_pair()
        m[2 * row, 2 * col] = z1
        m[2 * row + 1, 2 * col] = z2
        m[2 * row, 2 * col + 1] = -np.conj(z2)
        m[2 * row + 1, 2 * col + 1] = np.conj(z1)
    endo = SphereEndo(m)
    if not endo.squares_to_minus_identity(1e-8):
        raise GeometryError("matrix (R,H;0,N) does not square to -Identity")
    return endo


def sphere_translate(center: Quaternion, R: Quaternion, N: Quaternion) -> SphereEndo:
    """The translate through `center` of the sphere {q : qN = Rq}.

    The stabilized line set of the matrix (R, H; 0, N) is exactly
    {q : qN - Rq = H}, so the translate uses H = center*N - R*center.
    """
    H = center * N - R * center
    return sphere_from_rhn(R, H, N)


def sphere_contains(s: SphereEndo, p: HPoint, tol: float = DEFAULT_TOL) -> bool:
    """True iff the endomorphism stabilizes the quaternionic line of p.

    Equivalently S v lies in span{v, Jv} for a lift v, with eigen-quaternion
    mu of square -1.
    """
    v = p.lift()
    span = np.column_stack([v, j_on_vector(v)])
    target = s.matrix @ v
    coeffs, resid, _, _ = np.linalg.lstsq(span, target, rcond=None)
    residual = np.linalg.norm(span @ coeffs - target)
    return bool(residual < tol * max(1.0, float(np.linalg.norm(target))))


def sphere_eigen_quaternion(s: SphereEndo, p: HPoint) -> Quaternion:
    """The quaternion mu with S v = v mu for a point p on the sphere."""
    v = p.lift()
    span = np.column_stack([v, j_on_vector(v)])
    coeffs, _, _, _ = np.linalg.lstsq(span, s.matrix @ v, rcond=None)
    return Quaternion.from_complex_pair(coeffs[0], coeffs[1])


@dataclass
class ContactClass:
    """Outcome of comparing the point sets of two sphere lines in CP^3."""

    tag: str  # disjoint | touch | half_touch | identical | circle_intersection
    witnesses: tuple = field(default_factory=tuple)  # HPoints on both spheres


def plane_fiber(plane: proj4.ProjPlane, tol: float = DEFAULT_TOL) -> np.ndarray:
    """The unique twistor fiber contained in a plane of CP^3.

    The plane meets its j-image in a line; that line is fixed by J and hence
    a fiber.
    """
    jbasis = np.column_stack([j_on_vector(plane.basis[:, k]) for k in range(3)])
    m = np.vstack([plane.functional, normalize_proj(nullspace(jbasis.T, 1e-10)[:, 0])])
    ns = nullspace(m, 1e-8)
    if ns.shape[1] != 2:
        raise GeometryError("plane meets its j-image in unexpected dimension")
    line = normalize_proj(wedge(ns[:, 0], ns[:, 1]))
    if not is_j_real(line, 1e-6):
        # the intersection line must be J-invariant; re-symmetrize numerically
        sym = line + j_on_bivector(line)
        if np.linalg.norm(sym) < 1e-8:
            sym = 1j * line - 1j * j_on_bivector(line)
        line = normalize_proj(sym)
    return line


def classify_contact(a: np.ndarray, b: np.ndarray, tol: float = DEFAULT_TOL) -> ContactClass:
    """Classify the contact of the two sphere point-sets given by lines a, b.

    Incident lines span a plane; that plane's unique fiber either passes
    through the common point (tangency at one point) or not (point sets
    sharing exactly the two projections of the plane's distinguished points).
    Non-incident lines give disjoint spheres unless a meets bj, in which case
    the two point sets share a full circle.
    """
    a = normalize_proj(a)
    b = normalize_proj(b)
    bj = j_on_bivector(b)
    if proj4.proj_distance(a, b) < max(tol, 1e-8) or \
            proj4.proj_distance(a, bj) < max(tol, 1e-8):
        return ContactClass("identical", ())
    itol = max(tol, 1e-8)
    if lines_incident(a, b, itol):
        p = line_meet_point(a, b)
        va, wa = line_factorize(a)
        vb, wb = line_factorize(b)
        plane = plane_from_span([va, wa, vb, wb])
        fiber = plane_fiber(plane)
        fv, fw = line_factorize(fiber)
        # tangency iff the common point lies on the fiber
        if _point_on_line(p, fv, fw, itol):
            return ContactClass("touch", (twistor_project(p),))
        # the second common point projects from the plane's fiber
        return ContactClass("half_touch", (twistor_project(p), twistor_project(fv)))
    if lines_incident(a, bj, itol):
        p = line_meet_point(a, bj)
        q = line_meet_point(j_on_bivector(a), b)
        return ContactClass("circle_intersection",
                            (twistor_project(p), twistor_project(q)))
    return ContactClass("disjoint", ())


def _point_on_line(p: np.ndarray, v: np.ndarray, w: np.ndarray,
                   tol: float = DEFAULT_TOL) -> bool:
    span = np.column_stack([v, w])
    coeffs, _, _, _ = np.linalg.lstsq(span, p, rcond=None)
    return bool(np.linalg.norm(span @ coeffs - p) < tol * max(1.0, float(np.linalg.norm(p))))
