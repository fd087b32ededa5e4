"""Volume of a representation as a signed sum of straightened simplex volumes."""

from __future__ import annotations

import hashlib
import json
import math
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .developing import PlacementPolicy, develop, place_vertices
from .hyperbolic import CLASS_TOL
from .quadrature import QuadratureError
from .simplex import VolumeValue, max_simplex_volume, simplex_volume
from .triangulation import (
    CocycleReport,
    PeripheralData,
    TransitionCocycle,
    Triangulation,
    barycentric_subdivide,
    fundamental_cycle,
    to_dict,
    validate_cocycle,
)

SCHEMA_VERSION = 1
DEFAULT_TOL = 1e-8


class ValidationFailure(ValueError):
    """The cocycle does not close up around some codimension-2 cell."""

    def __init__(self, report: CocycleReport):
        worst = max(report.residuals, key=lambda r: r.residual, default=None)
        if worst is not None and worst.residual > report.tol:
            where = (f"cell {worst.cell} (simplex {worst.simplex}, positions "
                     f"{list(worst.positions)}) residual {worst.residual:.3e}")
        else:
            where = f"reverse-slot residual {report.reverse_residual:.3e}"
        super().__init__(f"cocycle validation failed at {where}")
        self.report = report


class VolumeFailure(RuntimeError):
    """Quadrature failed; ``partial`` holds the report up to the failing simplex."""

    def __init__(self, message, partial: "VolumeReport"):
        super().__init__(message)
        self.partial = partial


@dataclass
class VolumeReport:
    total: float
    per_simplex: list[VolumeValue]
    signs: list[int]
    est_error: float
    dimension: int
    metadata: dict = field(default_factory=dict)

    @property
    def method_counts(self) -> dict[str, int]:
        return dict(sorted(Counter(v.method for v in self.per_simplex).items()))

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "total": self.total,
            "est_error": self.est_error,
            "dimension": self.dimension,
            "simplices": len(self.per_simplex),
            "method_counts": self.method_counts,
            "per_simplex": [dict(v.to_dict(), sign=s) for v, s in zip(self.per_simplex, self.signs)],
            "metadata": self.metadata,
        }


def input_digest(t: Triangulation, c: TransitionCocycle, p: PeripheralData) -> str:
    text = json.dumps(to_dict(t, c, p), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def compute_volume(t: Triangulation, c: TransitionCocycle, p: PeripheralData,
                   policy: PlacementPolicy = PlacementPolicy(), tol: float = DEFAULT_TOL,
                   method: str = "auto", root: int = 0, strict: bool = True,
                   class_tol: float = CLASS_TOL) -> VolumeReport:
    """Develop, straighten and sum sign * volume over the fundamental cycle.

    Each simplex is evaluated to ``tol / N``.  With ``strict`` the cocycle and
    orientation are validated first and the equivariance witness is enforced.
    """
    if strict:
        fundamental_cycle(t)
        report = validate_cocycle(t, c, class_tol)
        if not report.passed:
            raise ValidationFailure(report)
    placement = place_vertices(t, c, p, policy, class_tol)
    chain = develop(t, c, placement, root=root, check=strict)
    n_simplices = len(chain.entries)
    per_tol = tol / n_simplices
    metadata = {
        "placement": policy.mode,
        "seed": policy.seed,
        "radius": policy.radius,
        "tol": tol,
        "per_simplex_tol": per_tol,
        "method": method,
        "root": root,
        "witness": chain.witness,
        "input_digest": input_digest(t, c, p),
    }
    values, signs = [], []
    for _, sign, points in chain.entries:
        try:
            values.append(simplex_volume(points, per_tol, method))
        except QuadratureError as exc:
            partial = _report(values, signs, t.dimension, metadata)
            raise VolumeFailure(f"simplex {len(values)}: {exc}", partial) from exc
        signs.append(sign)
    return _report(values, signs, t.dimension, metadata)


def _report(values, signs, dimension, metadata) -> VolumeReport:
    total = math.fsum(s * v.value for s, v in zip(signs, values))
    est = math.fsum(v.est_error for v in values)
    return VolumeReport(total, list(values), list(signs), est, dimension, dict(metadata))


@dataclass
class InvarianceReport:
    values: list[float]
    seeds: list[int]
    roots: list[int]
    max_deviation: float
    tol: float
    validation_passed: bool

    @property
    def passed(self) -> bool:
        return self.validation_passed and self.max_deviation <= 10 * self.tol

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "passed": self.passed,
            "validation_passed": self.validation_passed,
            "max_deviation": self.max_deviation,
            "tol": self.tol,
            "values": self.values,
            "seeds": self.seeds,
            "roots": self.roots,
        }


def invariance_test(t: Triangulation, c: TransitionCocycle, p: PeripheralData, samples: int = 20,
                    seed: int = 0, tol: float = DEFAULT_TOL, method: str = "auto",
                    radius: float = 0.5, class_tol: float = CLASS_TOL) -> InvarianceReport:
    """Volumes under ``samples`` random placements and dual-tree roots.

    An invalid cocycle is still evaluated (without the witness check) so the
    spread of values is visible, but the report fails.
    """
    if samples < 2:
        raise ValueError("samples must be at least 2")
    valid = validate_cocycle(t, c, class_tol).passed
    try:
        fundamental_cycle(t)
    except ValueError:
        valid = False
    seeds = [int(s) for s in np.random.SeedSequence(seed).generate_state(samples)]
    roots = [s % len(t.simplices) for s in seeds]
    values = []
    for s, r in zip(seeds, roots):
        policy = PlacementPolicy("random", s, radius)
        rep = compute_volume(t, c, p, policy, tol, method, root=r, strict=False, class_tol=class_tol)
        values.append(rep.total)
    deviation = max(values) - min(values)
    return InvarianceReport(values, seeds, roots, deviation, tol, valid)


@dataclass
class SubdivisionReport:
    vol_before: float
    vol_after: float
    simplices_after: int
    tol: float

    @property
    def delta(self) -> float:
        return self.vol_after - self.vol_before

    @property
    def passed(self) -> bool:
        return abs(self.delta) <= 10 * self.tol * self.simplices_after

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "passed": self.passed,
            "vol_before": self.vol_before,
            "vol_after": self.vol_after,
            "delta": self.delta,
            "simplices_after": self.simplices_after,
            "tol": self.tol,
        }


def subdivision_test(t: Triangulation, c: TransitionCocycle, p: PeripheralData,
                     tol: float = DEFAULT_TOL, method: str = "auto") -> SubdivisionReport:
    """Compare canonical-placement volumes before and after barycentric subdivision."""
    before = compute_volume(t, c, p, tol=tol, method=method)
    ts, cs = barycentric_subdivide(t, c)
    after = compute_volume(ts, cs, p, tol=tol, method=method)
    return SubdivisionReport(before.total, after.total, len(ts.simplices), tol)


@dataclass
class MilnorWoodReport:
    bound: float
    ratio: float
    total: float
    est_error: float

    @property
    def passed(self) -> bool:
        return abs(self.total) <= self.bound + self.est_error

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "passed": self.passed,
            "bound": self.bound,
            "ratio": round(self.ratio, 6),
            "total": self.total,
            "est_error": self.est_error,
        }


def milnor_wood_report(report: VolumeReport, n: int | None = None, N: int | None = None) -> MilnorWoodReport:
    """|total| against the a-priori bound N * v_n (largest simplex volume times count)."""
    n = n or report.dimension
    N = N or len(report.per_simplex)
    bound = N * max_simplex_volume(n)
    return MilnorWoodReport(bound, abs(report.total) / bound, report.total, report.est_error)
