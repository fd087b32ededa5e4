"""Signed volumes of geodesic simplices with vertices in the closed ball.

``simplex_volume`` is the extended volume cocycle: it accepts any ordered
(n + 1)-tuple of interior or ideal points and returns the signed volume of
their geodesic convex hull.  The sign is the orientation of the tuple in the
Klein model (determinant of the edge vectors from vertex 0).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .hyperbolic import ExtendedPoint, Isometry, act, to_klein
from .quadrature import LEAF_BUDGET, QuadratureError, integrate
from .special import bloch_wigner, lobachevsky

FLAT_TOL = 1e-14
CLOSED_FORM_ERROR = {2: 1e-14, 3: 1e-12}

CLOSED_FORM = "closed_form"
QUADRATURE = "quadrature"


@dataclass(frozen=True)
class GeodesicSimplex:
    vertices: tuple[ExtendedPoint, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        if not self.vertices:
            raise ValueError("empty simplex")
        dim = self.vertices[0].dim
        if len(self.vertices) != dim + 1:
            raise ValueError(f"an H^{dim} simplex needs {dim + 1} vertices")
        if any(v.dim != dim for v in self.vertices):
            raise ValueError("all vertices must share the dimension")

    @property
    def dim(self) -> int:
        return self.vertices[0].dim


@dataclass(frozen=True)
class VolumeValue:
    value: float
    est_error: float
    method: str

    def to_dict(self) -> dict:
        return {"value": self.value, "est_error": self.est_error, "method": self.method}


def max_simplex_volume(n: int) -> float:
    """Supremum of |volume| over geodesic n-simplices (regular ideal simplex)."""
    if n == 2:
        return math.pi
    if n == 3:
        return 3.0 * lobachevsky(math.pi / 3.0)
    raise ValueError(f"unsupported dimension {n}")


def _homogeneous(p: ExtendedPoint) -> tuple[complex, complex]:
    if p.is_infinity:
        return (1.0 + 0j, 0j)
    return (p.w, 1.0 + 0j)


def _bracket(p, q) -> complex:
    return p[0] * q[1] - p[1] * q[0]


def cross_ratio(p0, p1, p2, p3) -> complex:
    """Image of ``p3`` under the Moebius map sending (p0, p1, p2) to (0, 1, inf)."""
    pts = [p0, p1, p2, p3]
    if any(not p.is_ideal for p in pts):
        raise ValueError("cross_ratio needs ideal points")
    u = [_homogeneous(p) for p in pts]
    num = _bracket(u[3], u[0]) * _bracket(u[1], u[2])
    den = _bracket(u[3], u[2]) * _bracket(u[1], u[0])
    if num == 0 or den == 0 or _bracket(u[1], u[2]) == 0 or _bracket(u[0], u[2]) == 0:
        raise ValueError("degenerate tuple: repeated boundary points")
    return complex(num / den)


def klein_orientation(vertices) -> float:
    """Determinant of the Klein-model edge vectors from the first vertex."""
    k = np.array([to_klein(v) for v in vertices])
    return float(np.linalg.det(k[1:] - k[0]))


def _hyperboloid(p: ExtendedPoint) -> np.ndarray:
    # (t, X1, X2) for H^2; ideal points as light-like vectors
    if p.is_infinity:
        return np.array([1.0, 0.0, 1.0])
    x, h = p.w.real, p.height
    r2 = x * x + h * h
    if p.is_ideal:
        return np.array([1.0 + r2, 2 * x, r2 - 1.0])
    return np.array([(1.0 + r2) / (2 * h), x / h, (r2 - 1.0) / (2 * h)])


def _minkowski(u, v) -> float:
    return float(-u[0] * v[0] + u[1] * v[1] + u[2] * v[2])


def _angle_at(a: ExtendedPoint, b: ExtendedPoint, c: ExtendedPoint) -> float:
    if a.is_ideal:
        return 0.0
    A, B, C = _hyperboloid(a), _hyperboloid(b), _hyperboloid(c)
    u = B + _minkowski(A, B) * A
    v = C + _minkowski(A, C) * A
    cos = _minkowski(u, v) / math.sqrt(_minkowski(u, u) * _minkowski(v, v))
    return math.acos(min(1.0, max(-1.0, cos)))


def _triangle_area(vertices, orientation: float) -> float:
    a, b, c = vertices
    defect = math.pi - _angle_at(a, b, c) - _angle_at(b, c, a) - _angle_at(c, a, b)
    return math.copysign(max(defect, 0.0), orientation)


def _edge_integrand(P, Q, hp2, hq2, c0, R2):
    C = (P - c0).real * (Q - P).imag - (P - c0).imag * (Q - P).real
    d2 = abs(Q - P) ** 2

    def f(s):
        w = P + s * (Q - P)
        rho2 = np.abs(w - c0) ** 2
        h2 = (1 - s) * hp2 + s * hq2 + s * (1 - s) * d2
        x = rho2 / R2
        with np.errstate(divide="ignore", invalid="ignore"):
            small = np.log1p(-x) / x
            large = (np.log(h2) - math.log(R2)) / rho2 * R2
            ratio = np.where(x < 0.5, np.where(x == 0, -1.0, small), large)
        return -0.25 * C * ratio / R2

    return f


def _face_prism_edges(a: ExtendedPoint, b: ExtendedPoint, c: ExtendedPoint):
    """Edge integrands whose sum is the signed volume above the face (a, b, c).

    The face lies on a hemisphere of centre c0 and radius R; integrating
    1 / h^3 in height and then radially about c0 leaves
    -1/4 log(h^2 / R^2) per unit angle, integrated here along the edges of the
    projected triangle.  Returns [] for a vertical (flat-projection) face.
    """
    pa, pb, pc = a.w, b.w, c.w
    d1, d2 = pb - pa, pc - pa
    cross = d1.real * d2.imag - d1.imag * d2.real
    scale = max(abs(d1), abs(d2), abs(pc - pb)) ** 2
    if scale == 0.0 or abs(cross) <= FLAT_TOL * scale:
        return []
    ha2, hb2, hc2 = a.height**2, b.height**2, c.height**2
    # centre relative to pa: 2 Re(conj(d_i) c) = |d_i|^2 + h_i^2 - h_a^2
    r1 = abs(d1) ** 2 + hb2 - ha2
    r2 = abs(d2) ** 2 + hc2 - ha2
    u = (r1 * d2.imag - r2 * d1.imag) / (2 * cross)
    v = (d1.real * r2 - d2.real * r1) / (2 * cross)
    c0 = complex(u, v)
    R2 = abs(c0) ** 2 + ha2
    verts = [(0j, ha2), (d1, hb2), (d2, hc2)]
    return [
        _edge_integrand(verts[i][0], verts[(i + 1) % 3][0], verts[i][1], verts[(i + 1) % 3][1], c0, R2)
        for i in range(3)
    ]


def _quadrature_volume(vertices, tol: float, budget: int) -> tuple[float, float]:
    pts = list(vertices)
    ideal = [i for i, p in enumerate(pts) if p.is_ideal]
    if ideal:
        xi = pts[ideal[0]]
        if not xi.is_infinity:
            z = xi.w
            g = Isometry(((0, -1), (1, -z)), 3)
            pts = [act(g, p) for p in pts]
    signed_edges = []
    for i in range(4):
        face = pts[:i] + pts[i + 1 :]
        if any(p.is_infinity for p in face):
            continue
        sign = -1.0 if i % 2 else 1.0
        signed_edges.extend((sign, f) for f in _face_prism_edges(*face))
    if not signed_edges:
        return 0.0, 0.0
    edge_tol = tol / len(signed_edges)
    edge_budget = max(budget // len(signed_edges), 2)
    total, error = 0.0, 0.0
    for sign, f in signed_edges:
        try:
            value, err = integrate(f, 0.0, 1.0, edge_tol, edge_budget)
        except QuadratureError as exc:
            raise QuadratureError(str(exc), total + sign * exc.value, error + exc.error) from exc
        total += sign * value
        error += err
    # prism decomposition is negatively oriented relative to the Klein sign
    return -total, error


def _is_repeated(vertices) -> bool:
    for i in range(len(vertices)):
        for j in range(i):
            if vertices[i] == vertices[j]:
                return True
    return False


def simplex_volume(s: GeodesicSimplex | tuple, tol: float = 1e-8, method: str = "auto",
                   budget: int = LEAF_BUDGET) -> VolumeValue:
    """Signed hyperbolic volume of the geodesic simplex on an ordered tuple.

    ``method`` is "auto", "closed" or "quadrature".  In H^2 the exact angle
    defect is always used.  In H^3 "auto" uses the Bloch-Wigner closed form for
    all-ideal tuples and quadrature otherwise; "closed" on a tuple with a
    finite vertex raises ValueError.
    """
    if not isinstance(s, GeodesicSimplex):
        s = GeodesicSimplex(tuple(s))
    if tol <= 0:
        raise ValueError("tol must be positive")
    if method not in ("auto", "closed", "quadrature"):
        raise ValueError(f"unknown method {method!r}")
    verts = s.vertices
    n = s.dim
    if _is_repeated(verts):
        return VolumeValue(0.0, 0.0, CLOSED_FORM)
    orientation = klein_orientation(verts)
    if abs(orientation) < FLAT_TOL:
        return VolumeValue(0.0, 0.0, CLOSED_FORM)
    if n == 2:
        return VolumeValue(_triangle_area(verts, orientation), CLOSED_FORM_ERROR[2], CLOSED_FORM)
    all_ideal = all(v.is_ideal for v in verts)
    if method == "closed" and not all_ideal:
        raise ValueError("closed form needs an all-ideal tetrahedron")
    if all_ideal and method != "quadrature":
        z = cross_ratio(*verts)
        return VolumeValue(-bloch_wigner(z), CLOSED_FORM_ERROR[3], CLOSED_FORM)
    value, err = _quadrature_volume(verts, tol, budget)
    return VolumeValue(value, err, QUADRATURE)
