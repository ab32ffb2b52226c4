"""Projective linear algebra on C^4 and its exterior square.

Vectors are plain numpy arrays: homogeneous CP^3 points have shape (4,),
Pluecker vectors shape (6,) in the ordered basis

    {e1^e1j, e1^e2, e1^e2j, e1j^e2, e1j^e2j, e2^e2j}

where {e1, e1j, e2, e2j} is the fixed basis of C^4 coming from H^2 via
q = z1 + j z2.  A bivector is decomposable (a line in CP^3, a point of the
four-dimensional quadric) iff its self-pairing under the wedge-product form
vanishes.
"""

from __future__ import annotations

import numpy as np

DEFAULT_TOL = 1e-9

# Index pairs (a, b) of the six basis bivectors e_a ^ e_b.
BIVECTOR_PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))

# pair(a, b) = a01 b23 - a02 b13 + a03 b12 + a12 b03 - a13 b02 + a23 b01
QUADRIC_MATRIX = np.array(
    [
        [0, 0, 0, 0, 0, 1],
        [0, 0, 0, 0, -1, 0],
        [0, 0, 0, 1, 0, 0],
        [0, 0, 1, 0, 0, 0],
        [0, -1, 0, 0, 0, 0],
        [1, 0, 0, 0, 0, 0],
    ],
    dtype=complex,
)


class GeometryError(ValueError):
    """Raised when a geometric construction is degenerate."""


def normalize_proj(v: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    """Normalize a homogeneous vector: unit norm, anchor component positive real.

    The phase anchor is the first component whose modulus is within a factor
    ~1e6 of the largest one, which keeps the anchor stable under perturbation.
    """
    v = np.asarray(v, dtype=complex)
    n = np.linalg.norm(v)
    if n < tol:
        raise GeometryError("cannot normalize (near-)zero homogeneous vector")
    v = v / n
    mags = np.abs(v)
    anchor = None
    for idx in range(v.size):
        if mags[idx] > 1e-6:
            anchor = idx
            break
    if anchor is None:
        anchor = int(np.argmax(mags))
    phase = v[anchor] / mags[anchor]
    return v * np.conj(phase)


def proj_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Angle metric between projective points given by homogeneous vectors."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    na = np.linalg.norm(a)
    nb = np.linalg.norm(b)
    if na == 0.0 or nb == 0.0:
        raise GeometryError("projective distance of zero vector")
    a = a / na
    b = b / nb
    # the sine of the angle is the size of b's component orthogonal to a,
    # which stays accurate for nearly identical points
    ortho = b - a * np.vdot(a, b)
    return float(np.arcsin(min(1.0, float(np.linalg.norm(ortho)))))


def wedge(v: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Exterior product of two C^4 vectors as a Pluecker 6-vector."""
    v = np.asarray(v, dtype=complex)
    w = np.asarray(w, dtype=complex)
    return np.array([v[a] * w[b] - v[b] * w[a] for a, b in BIVECTOR_PAIRS])


def quadric_pair(a: np.ndarray, b: np.ndarray) -> complex:
    """Symmetric bilinear form induced by the wedge product on bivectors."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    return complex(a @ QUADRIC_MATRIX @ b)


def is_decomposable(a: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    a = normalize_proj(a)
    return abs(quadric_pair(a, a)) < tol


def lines_incident(a: np.ndarray, b: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    a = normalize_proj(a)
    b = normalize_proj(b)
    return abs(quadric_pair(a, b)) < tol


def line_matrix(a: np.ndarray) -> np.ndarray:
    """The antisymmetric 4x4 matrix of a bivector.

    For a decomposable a = v ^ w this is v w^T - w v^T, whose column space is
    span{v, w}.
    """
    a = np.asarray(a, dtype=complex)
    m = np.zeros((4, 4), dtype=complex)
    for coeff, (i, j) in zip(a, BIVECTOR_PAIRS):
        m[i, j] = coeff
        m[j, i] = -coeff
    return m


def line_factorize(a: np.ndarray, tol: float = DEFAULT_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Split a decomposable bivector into two independent spanning vectors."""
    a = normalize_proj(a)
    if not is_decomposable(a, max(tol, 1e-7)):
        raise GeometryError("bivector is not decomposable")
    u, s, _ = np.linalg.svd(line_matrix(a))
    v = u[:, 0]
    w = u[:, 1]
    # fix scale so wedge(v, w) reproduces a itself (not just up to scalar)
    ww = wedge(v, w)
    idx = int(np.argmax(np.abs(ww)))
    c = a[idx] / ww[idx]
    return normalize_proj(v), normalize_proj(w * c / np.abs(c) if abs(c) else w)


def nullspace(m: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Columns spanning the numerical null space of m (SVD thresholding)."""
    m = np.asarray(m, dtype=complex)
    u, s, vh = np.linalg.svd(m)
    if s.size == 0:
        return np.eye(m.shape[1], dtype=complex)
    cutoff = tol * s[0] if s[0] > 0 else tol
    rank = int(np.sum(s > cutoff))
    return vh[rank:].conj().T


def orthonormal_span(vectors, rank: int | None = None, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis (columns) of the span of the given row vectors."""
    m = np.array([np.asarray(v, dtype=complex) / np.linalg.norm(v) for v in vectors])
    u, s, vh = np.linalg.svd(m)
    cutoff = max(tol, 1e-12) * (s[0] if s[0] > 0 else 1.0)
    r = int(np.sum(s > cutoff))
    if rank is not None and r != rank:
        raise GeometryError(f"degenerate-span: rank {r}, expected {rank}")
    # rows of m are combinations of rows of vh, so the (plain-linear) span is
    # given by transposing without conjugation
    return vh[:r].T


def line_meet_point(a: np.ndarray, b: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Intersection point of two incident, distinct lines in CP^3."""
    v1, w1 = line_factorize(a)
    v2, w2 = line_factorize(b)
    m = np.column_stack([v1, w1, -v2, -w2])
    ns = nullspace(m, max(tol, 1e-8))
    if ns.shape[1] == 0:
        raise GeometryError("lines are not incident")
    if ns.shape[1] > 1:
        raise GeometryError("lines coincide; no unique intersection point")
    c = ns[:, 0]
    return normalize_proj(v1 * c[0] + w1 * c[1])


class ProjPlane:
    """A projective plane in CP^3, stored as an orthonormal spanning basis."""

    def __init__(self, basis: np.ndarray):
        basis = np.asarray(basis, dtype=complex)
        if basis.shape != (4, 3):
            raise GeometryError("plane basis must be 4x3")
        self.basis = basis
        # annihilating functional f with f @ x = 0 for x in the plane
        f = nullspace(basis.T, 1e-10)
        if f.shape[1] != 1:
            raise GeometryError("degenerate-span: plane basis not rank 3")
        self.functional = normalize_proj(f[:, 0])

    def contains(self, v: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
        v = normalize_proj(v)
        return abs(self.functional @ v) < tol

    def residual(self, v: np.ndarray) -> float:
        v = normalize_proj(v)
        return float(abs(self.functional @ v))


def plane_from(points) -> ProjPlane:
    """Plane through three independent CP^3 points."""
    basis = orthonormal_span(points, rank=3)
    return ProjPlane(basis)


def plane_from_span(vectors) -> ProjPlane:
    """Plane spanned by any vectors of total rank 3 (e.g. a line plus a point)."""
    basis = orthonormal_span(vectors, rank=3)
    return ProjPlane(basis)


def meet_line(plane: ProjPlane, line: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Intersection point of a plane and a line not contained in it."""
    v, w = line_factorize(line)
    alpha = plane.functional @ w
    beta = -(plane.functional @ v)
    if max(abs(alpha), abs(beta)) < max(tol, 1e-10):
        raise GeometryError("line-in-plane: intersection is not a point")
    return normalize_proj(v * alpha + w * beta)


def meet_planes(p1: ProjPlane, p2: ProjPlane, p3: ProjPlane,
                tol: float = DEFAULT_TOL) -> np.ndarray:
    """Common point of three planes in general position."""
    m = np.array([p1.functional, p2.functional, p3.functional])
    ns = nullspace(m, max(tol, 1e-8))
    if ns.shape[1] != 1:
        raise GeometryError("non-point-intersection of three planes")
    return normalize_proj(ns[:, 0])
