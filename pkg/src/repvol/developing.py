"""Equivariant vertex placement and developing of a triangulation.

Every vertex class gets one chosen lift, its *root corner* (lowest
(simplex, position) pair), and a position in the chart of that simplex:
the common boundary fixed point of the end's holonomy for ideal vertices, a
free interior point for finite ones.  Transporting the root corner along the
face gluings positions every other corner; simplices are then placed in a
single chart using frames accumulated along a breadth-first dual spanning
tree.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .hyperbolic import CLASS_TOL, ExtendedPoint, Isometry, act, chordal_distance, from_klein
from .triangulation import (
    PeripheralData,
    Triangulation,
    TransitionCocycle,
    verify_peripheral,
)

WITNESS_TOL = 1e-6


class PeripheralError(ValueError):
    """Some end has no boundary point fixed by all of its holonomy."""


class EquivarianceError(ValueError):
    """Transported vertex positions disagree across a glued face."""


@dataclass(frozen=True)
class PlacementPolicy:
    mode: str = "canonical"
    seed: int = 0
    radius: float = 0.5

    def __post_init__(self):
        if self.mode not in ("canonical", "random"):
            raise ValueError(f"unknown placement mode {self.mode!r}")
        if not 0 < self.radius < 1:
            raise ValueError("radius must lie in (0, 1)")


@dataclass(frozen=True)
class Placement:
    positions: dict[int, ExtendedPoint]
    policy: PlacementPolicy


@dataclass
class DevelopedChain:
    entries: list[tuple[int, int, tuple[ExtendedPoint, ...]]]
    provenance: dict = field(default_factory=dict)
    witness: float = 0.0
    worst_gluing: int | None = None


def transport_corners(t: Triangulation, c: TransitionCocycle):
    """Corner transports and link holonomies.

    Returns ``(T, holonomy)``: ``T[corner]`` is the isometry with
    ``pos(corner) = T[corner] . P`` where ``P`` is the root-corner position of
    the corner's vertex; ``holonomy[v]`` lists, for each non-tree corner
    identification, the loop element that must fix ``P``.
    """
    n = t.dimension
    edges: dict[tuple[int, int], list] = {}
    for (s, f), partner in t.partners.items():
        g = c[(s, f)]
        u = partner.slot[0]
        for k in range(n + 1):
            if k != f:
                edges.setdefault((s, k), []).append(((u, partner.perm[k]), g))
    T: dict[tuple[int, int], Isometry] = {}
    holonomy: dict[int, list[Isometry]] = {}
    for v, root in sorted(t.root_corners.items()):
        T[root] = Isometry.identity(n)
        holonomy[v] = []
        queue = deque([root])
        while queue:
            a = queue.popleft()
            for b, g in edges.get(a, []):
                # pos(a) = g . pos(b)
                if b not in T:
                    T[b] = g.inverse() @ T[a]
                    queue.append(b)
                else:
                    holonomy[v].append(T[a].inverse() @ g @ T[b])
    return T, holonomy


def _random_klein_point(rng: np.random.Generator, dim: int, radius: float) -> ExtendedPoint:
    direction = rng.normal(size=dim)
    direction /= np.linalg.norm(direction)
    r = radius * rng.uniform() ** (1.0 / dim)
    return from_klein(r * direction, dim, ideal=False)


def place_vertices(t: Triangulation, c: TransitionCocycle, p: PeripheralData,
                   policy: PlacementPolicy = PlacementPolicy(), tol: float = CLASS_TOL) -> Placement:
    """Position the chosen lift of every vertex in its root corner's chart."""
    _, holonomy = transport_corners(t, c)
    report = verify_peripheral(t, c, p, tol, fallback=holonomy)
    if not report.passed:
        raise PeripheralError("; ".join(report.failures.values()))
    positions = dict(report.points)
    n = t.dimension
    rng = np.random.default_rng(policy.seed) if policy.mode == "random" else None
    for v in sorted(t.finite_vertices):
        if rng is None:
            positions[v] = ExtendedPoint.interior(*([0.0] * (n - 1) + [1.0]))
        else:
            positions[v] = _random_klein_point(rng, n, policy.radius)
    return Placement(positions, policy)


def dual_tree_frames(t: Triangulation, c: TransitionCocycle, root: int = 0) -> dict[int, Isometry]:
    """Frames h_s with h_root = 1 and h_u = h_s g across tree faces (BFS by id)."""
    frames = {root: Isometry.identity(t.dimension)}
    queue = deque([root])
    while queue:
        s = queue.popleft()
        for f in range(t.dimension + 1):
            u = t.partners[(s, f)].slot[0]
            if u not in frames:
                frames[u] = frames[s] @ c[(s, f)]
                queue.append(u)
    if len(frames) != len(t.simplices):
        raise ValueError("dual graph is disconnected")
    return frames


def develop(t: Triangulation, c: TransitionCocycle, placement: Placement, root: int = 0,
            check: bool = True, witness_tol: float = WITNESS_TOL) -> DevelopedChain:
    """Straightened developing map as a signed list of vertex tuples.

    Raises EquivarianceError when ``check`` is set and the two placements of
    some glued face disagree by more than ``witness_tol`` (chordal distance in
    the Klein ball) after applying the stored transition.
    """
    frames = dual_tree_frames(t, c, root)
    T, _ = transport_corners(t, c)
    positions = placement.positions
    dev = {}
    local = {}
    for s in t.simplices:
        for k, v in enumerate(s.vertices):
            local[(s.id, k)] = T[(s.id, k)]
            dev[(s.id, k)] = act(frames[s.id] @ T[(s.id, k)], positions[v])

    witness, worst = 0.0, None
    n = t.dimension
    for i, gl in enumerate(t.gluings):
        (s, f) = gl.src
        u = gl.dst[0]
        partner = t.partners[(s, f)]
        g = c[(s, f)]
        for k in range(n + 1):
            if k == f:
                continue
            b = (u, partner.perm[k])
            moved = act(frames[s] @ g @ local[b], positions[t.vertex_at(b)])
            d = chordal_distance(dev[(s, k)], moved)
            if d > witness:
                witness, worst = d, i
    if check and witness > witness_tol:
        gl = t.gluings[worst]
        raise EquivarianceError(
            f"equivariance witness {witness:.3e} at gluing {worst} "
            f"(faces {list(gl.src)} and {list(gl.dst)})")

    entries = [
        (s.id, s.sign, tuple(dev[(s.id, k)] for k in range(n + 1)))
        for s in t.simplices
    ]
    provenance = {"root": root, "mode": placement.policy.mode, "seed": placement.policy.seed}
    return DevelopedChain(entries, provenance, witness, worst)


def ideal_positions_fixed(t: Triangulation, p: PeripheralData, placement: Placement,
                          tol: float = CLASS_TOL) -> float:
    """Largest chordal displacement of an ideal vertex by its declared holonomy."""
    worst = 0.0
    for v in t.ideal_vertices:
        xi = placement.positions[v]
        for g in p.generators.get(v, ()):
            worst = max(worst, chordal_distance(act(g, xi), xi))
    return worst

