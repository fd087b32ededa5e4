"""Upper half-space models of H^2 and H^3, their boundaries, and PSL(2) actions.

Points live in upper half-space coordinates; the Klein ball is a derived chart
used for orientation signs and chordal comparisons.  For n = 2 everything is
the restriction of the n = 3 picture to the vertical plane over the real axis,
with real matrices.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

CLASS_TOL = 1e-9
DET_TOL = 1e-12

INTERIOR = "interior"
IDEAL = "ideal"


class NoCommonFixedPoint(ValueError):
    """Raised when a set of isometries fixes no common boundary point."""


class AmbientChoiceRequired(ValueError):
    """Raised when asking for the fixed points of an identity-class element."""


@dataclass(frozen=True)
class ExtendedPoint:
    """A point of H^n or of its boundary.

    ``coords`` holds (x, y, h) / (x, h) for interior points and (x, y) / (x,)
    for ideal points; ``coords is None`` encodes the ideal point at infinity.
    """

    dim: int
    kind: str
    coords: tuple[float, ...] | None

    def __post_init__(self):
        if self.dim not in (2, 3):
            raise ValueError(f"unsupported dimension {self.dim}")
        if self.kind == INTERIOR:
            if self.coords is None or len(self.coords) != self.dim:
                raise ValueError("interior point needs n coordinates")
            if not self.coords[-1] > 0:
                raise ValueError("interior point must have positive height")
        elif self.kind == IDEAL:
            if self.coords is not None and len(self.coords) != self.dim - 1:
                raise ValueError("ideal point needs n - 1 coordinates")
        else:
            raise ValueError(f"unknown point kind {self.kind!r}")
        if self.coords is not None and not all(math.isfinite(c) for c in self.coords):
            raise ValueError("coordinates must be finite")

    @classmethod
    def interior(cls, *coords: float) -> "ExtendedPoint":
        return cls(len(coords), INTERIOR, tuple(float(c) for c in coords))

    @classmethod
    def ideal(cls, dim: int, z: complex | float | str | None) -> "ExtendedPoint":
        """Boundary point ``z``; pass ``None`` or ``"inf"`` for infinity."""
        if z is None or (isinstance(z, str) and z == "inf"):
            return cls(dim, IDEAL, None)
        z = complex(z)
        if dim == 2:
            if z.imag != 0:
                raise ValueError("ideal points of H^2 are real")
            return cls(2, IDEAL, (z.real,))
        return cls(3, IDEAL, (z.real, z.imag))

    @classmethod
    def infinity(cls, dim: int) -> "ExtendedPoint":
        return cls(dim, IDEAL, None)

    @property
    def is_ideal(self) -> bool:
        return self.kind == IDEAL

    @property
    def is_infinity(self) -> bool:
        return self.coords is None

    @property
    def w(self) -> complex:
        """Horizontal position as a complex number (y = 0 for n = 2)."""
        if self.coords is None:
            raise ValueError("the point at infinity has no horizontal position")
        if self.dim == 3:
            return complex(self.coords[0], self.coords[1])
        return complex(self.coords[0], 0.0)

    @property
    def height(self) -> float:
        if self.kind == IDEAL:
            return 0.0
        return self.coords[-1]

    def __repr__(self):
        if self.is_infinity:
            return f"ExtendedPoint(H{self.dim}, ideal inf)"
        return f"ExtendedPoint(H{self.dim}, {self.kind} {self.coords})"


def _point_from_wh(dim: int, w: complex, h: float) -> ExtendedPoint:
    if dim == 3:
        return ExtendedPoint(3, INTERIOR, (float(w.real), float(w.imag), float(h)))
    return ExtendedPoint(2, INTERIOR, (float(w.real), float(h)))


class IsometryClass(Enum):
    IDENTITY = "identity"
    PARABOLIC = "parabolic"
    ELLIPTIC = "elliptic"
    LOXODROMIC = "loxodromic"


@dataclass(frozen=True)
class Classification:
    kind: IsometryClass
    trace_squared: complex


class Isometry:
    """Orientation-preserving isometry, stored as a unit-determinant 2x2 matrix.

    Matrices ``m`` and ``-m`` are the same isometry and compare equal.
    """

    __slots__ = ("dim", "a", "b", "c", "d")

    def __init__(self, matrix, dim: int = 3, *, normalize: bool = False):
        (a, b), (c, d) = matrix
        a, b, c, d = complex(a), complex(b), complex(c), complex(d)
        if dim not in (2, 3):
            raise ValueError(f"unsupported dimension {dim}")
        if dim == 2 and any(x.imag != 0 for x in (a, b, c, d)):
            raise ValueError("isometries of H^2 must be real matrices")
        det = a * d - b * c
        if normalize:
            if dim == 2 and det.real <= 0:
                raise ValueError("orientation-reversing or singular matrix rejected")
            if abs(det) == 0:
                raise ValueError("singular matrix")
            s = cmath.sqrt(det) if dim == 3 else math.sqrt(det.real)
            a, b, c, d = a / s, b / s, c / s, d / s
            det = a * d - b * c
        if abs(det - 1) > DET_TOL:
            raise ValueError(f"matrix determinant {det} is not 1")
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("Isometry is immutable")

    @classmethod
    def identity(cls, dim: int = 3) -> "Isometry":
        return cls(((1, 0), (0, 1)), dim)

    @classmethod
    def _raw(cls, a, b, c, d, dim) -> "Isometry":
        obj = object.__new__(cls)
        object.__setattr__(obj, "dim", dim)
        object.__setattr__(obj, "a", a)
        object.__setattr__(obj, "b", b)
        object.__setattr__(obj, "c", c)
        object.__setattr__(obj, "d", d)
        return obj

    @property
    def matrix(self) -> np.ndarray:
        m = np.array([[self.a, self.b], [self.c, self.d]])
        return m.real.copy() if self.dim == 2 else m

    @property
    def entries(self) -> tuple[complex, complex, complex, complex]:
        return (self.a, self.b, self.c, self.d)

    @property
    def trace(self) -> complex:
        return self.a + self.d

    def __matmul__(self, other: "Isometry") -> "Isometry":
        if other.dim != self.dim:
            raise ValueError("dimension mismatch")
        a, b, c, d = self.entries
        e, f, g, h = other.entries
        return Isometry._raw(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h, self.dim)

    def inverse(self) -> "Isometry":
        return Isometry._raw(self.d, -self.b, -self.c, self.a, self.dim)

    def conjugate_by(self, g: "Isometry") -> "Isometry":
        """Return g * self * g^-1."""
        return g @ self @ g.inverse()

    def _normal_form(self) -> tuple[complex, ...]:
        entries = self.entries
        for x in entries:
            if x != 0:
                if x.real < 0 or (x.real == 0 and x.imag < 0):
                    return tuple(-y for y in entries)
                break
        return entries

    def __eq__(self, other):
        if not isinstance(other, Isometry):
            return NotImplemented
        return self.dim == other.dim and self._normal_form() == other._normal_form()

    def __hash__(self):
        return hash((self.dim, self._normal_form()))

    def distance_to(self, other: "Isometry") -> float:
        """Max-entry distance between the two matrices, minimised over sign."""
        p = [x - y for x, y in zip(self.entries, other.entries)]
        q = [x + y for x, y in zip(self.entries, other.entries)]
        return min(max(abs(x) for x in p), max(abs(x) for x in q))

    def isclose(self, other: "Isometry", tol: float = CLASS_TOL) -> bool:
        return self.distance_to(other) <= tol

    def __repr__(self):
        return f"Isometry(H{self.dim}, [[{self.a}, {self.b}], [{self.c}, {self.d}]])"


def act(g: Isometry, p: ExtendedPoint) -> ExtendedPoint:
    """Moebius action of ``g`` on a point of the closed half-space."""
    if g.dim != p.dim:
        raise ValueError(f"dimension mismatch: isometry of H{g.dim}, point of H{p.dim}")
    a, b, c, d = g.entries
    if p.kind == IDEAL:
        if p.is_infinity:
            if c == 0:
                return p
            z = a / c
        else:
            z0 = p.w
            den = c * z0 + d
            if den == 0:
                return ExtendedPoint.infinity(p.dim)
            z = (a * z0 + b) / den
        if p.dim == 2:
            return ExtendedPoint(2, IDEAL, (z.real,))
        return ExtendedPoint(3, IDEAL, (z.real, z.imag))
    z0, h = p.w, p.height
    cz_d = c * z0 + d
    den = abs(cz_d) ** 2 + abs(c) ** 2 * h * h
    w = ((a * z0 + b) * cz_d.conjugate() + a * c.conjugate() * h * h) / den
    if p.dim == 2:
        w = complex(w.real, 0.0)
    return _point_from_wh(p.dim, w, h / den)


def distance(p: ExtendedPoint, q: ExtendedPoint) -> float:
    """Hyperbolic distance between interior points (curvature -1)."""
    if p.kind != INTERIOR or q.kind != INTERIOR:
        raise ValueError("distance is defined for interior points only")
    hp, hq = p.height, q.height
    arg = 1 + (abs(p.w - q.w) ** 2 + (hp - hq) ** 2) / (2 * hp * hq)
    return math.acosh(max(arg, 1.0))


def classify(g: Isometry, tol: float = CLASS_TOL) -> Classification:
    tr2 = g.trace**2
    ident = Isometry._raw(1, 0, 0, 1, g.dim)
    if g.distance_to(ident) <= tol:
        return Classification(IsometryClass.IDENTITY, tr2)
    if abs(tr2 - 4) <= tol:
        return Classification(IsometryClass.PARABOLIC, tr2)
    if abs(tr2.imag) > tol or tr2.real > 4 or tr2.real < -tol:
        return Classification(IsometryClass.LOXODROMIC, tr2)
    return Classification(IsometryClass.ELLIPTIC, tr2)


def _boundary(dim: int, z: complex | None) -> ExtendedPoint:
    if z is None:
        return ExtendedPoint.infinity(dim)
    return ExtendedPoint.ideal(dim, z.real if dim == 2 else z)


def fixed_points(g: Isometry, tol: float = CLASS_TOL) -> list[ExtendedPoint]:
    """Boundary fixed points of ``g``, the attracting one first.

    Elliptic elements of PSL(2, R) fix no point of the boundary circle and
    give an empty list.
    """
    kind = classify(g, tol).kind
    if kind is IsometryClass.IDENTITY:
        raise AmbientChoiceRequired("identity fixes every boundary point; ambient choice required")
    a, b, c, d = g.entries
    if g.dim == 2 and kind is IsometryClass.ELLIPTIC:
        return []
    candidates: list[tuple[complex | None, complex]] = []  # (point, eigenvalue)
    if abs(c) <= tol * max(1.0, abs(a), abs(d)):
        candidates.append((None, a))
        if kind is not IsometryClass.PARABOLIC and abs(d - a) > tol:
            z = b / (d - a)
            candidates.append((z, c * z + d))
    else:
        disc = cmath.sqrt((a - d) ** 2 + 4 * b * c)
        if kind is IsometryClass.PARABOLIC:
            z = (a - d) / (2 * c)
            candidates.append((z, c * z + d))
        else:
            for sgn in (1, -1):
                z = ((a - d) + sgn * disc) / (2 * c)
                candidates.append((z, c * z + d))
    if kind is not IsometryClass.PARABOLIC:
        # stable sort: attracting (|eigenvalue| > 1) first
        candidates.sort(key=lambda t: -abs(t[1]))
    return [_boundary(g.dim, z) for z, _ in candidates]


def chordal_distance(p: ExtendedPoint, q: ExtendedPoint) -> float:
    """Euclidean distance of the two points in the Klein chart."""
    return float(np.linalg.norm(to_klein(p) - to_klein(q)))


def common_fixed_point(gs, tol: float = CLASS_TOL) -> ExtendedPoint:
    """A boundary point fixed (to ``tol`` chordally) by every element of ``gs``."""
    gs = list(gs)
    if not gs:
        raise ValueError("empty list of isometries")
    dim = gs[0].dim
    moving = [g for g in gs if classify(g, tol).kind is not IsometryClass.IDENTITY]
    if not moving:
        return ExtendedPoint.infinity(dim)
    for xi in fixed_points(moving[0], tol):
        if all(chordal_distance(act(g, xi), xi) <= tol for g in moving):
            return xi
    raise NoCommonFixedPoint("no common fixed point")


def to_klein(p: ExtendedPoint) -> np.ndarray:
    """Klein-model coordinates; ideal points land on the unit sphere."""
    if p.is_infinity:
        out = np.zeros(p.dim)
        out[-1] = 1.0
        return out
    w, h = p.w, p.height
    r2 = abs(w) ** 2 + h * h
    den = 1.0 + r2
    if p.dim == 3:
        return np.array([2 * w.real / den, 2 * w.imag / den, (r2 - 1) / den])
    return np.array([2 * w.real / den, (r2 - 1) / den])


def from_klein(k, dim: int | None = None, ideal: bool | None = None) -> ExtendedPoint:
    """Inverse of :func:`to_klein`.

    Points with norm within 1e-12 of 1 are read as ideal unless ``ideal``
    says otherwise.
    """
    k = np.asarray(k, dtype=float)
    dim = dim or k.shape[0]
    norm2 = float(k @ k)
    if ideal is None:
        ideal = abs(norm2 - 1.0) <= 1e-12
    if dim == 2:
        k1, k2, k3 = k[0], 0.0, k[1]
    else:
        k1, k2, k3 = k
    if ideal:
        if 1.0 - k3 <= 1e-300:
            return ExtendedPoint.infinity(dim)
        z = complex(k1, k2) / (1.0 - k3)
        return ExtendedPoint.ideal(dim, z.real if dim == 2 else z)
    if norm2 >= 1.0:
        raise ValueError("interior Klein point must lie in the open unit ball")
    t = 1.0 / math.sqrt(1.0 - norm2)
    # h = 1 / (t - X3) with X = t k; written to avoid cancellation near the pole
    h = math.sqrt(1.0 - norm2) / (1.0 - k3)
    return _point_from_wh(dim, complex(k1, k2) * t * h, h)


def mobius_from_points(src, dst, dim: int = 3) -> Isometry:
    """The unique isometry sending three distinct boundary points ``src`` to ``dst``.

    Points are complex numbers or ``None`` for infinity.
    """

    def to_std(p1, p2, p3):
        # matrix sending (p1, p2, p3) -> (0, 1, inf)
        def col(p):
            return (1.0, 0.0) if p is None else (complex(p), 1.0)

        (x1, y1), (x2, y2), (x3, y3) = col(p1), col(p2), col(p3)
        # z -> [z, p1][p2, p3] / ([z, p3][p2, p1]) with [u, v] = u0 v1 - u1 v0
        alpha = x2 * y3 - y2 * x3
        beta = x2 * y1 - y2 * x1
        m = np.array([[alpha * y1, -alpha * x1], [beta * y3, -beta * x3]], dtype=complex)
        return m

    m1 = to_std(*src)
    m2 = to_std(*dst)
    m = np.linalg.solve(m2, m1)
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    m = m / cmath.sqrt(det)
    if dim == 2:
        phase = m.flat[np.argmax(np.abs(m))]
        m = (m * (abs(phase) / phase)).real
    return Isometry(m, dim, normalize=True)
