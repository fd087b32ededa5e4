"""Triangulations of end compactifications and representation data on them.

A triangulation is a gluing table: simplices list vertex ids (repeats are
allowed, the complex need not be simplicial) and every face slot
``(simplex, f)`` -- the face opposite position ``f`` -- is paired with exactly
one other slot.  A representation is stored as a transition cocycle on these
pairings: crossing from simplex s into its neighbour s' multiplies the frame
on the right by the stored isometry, so that vertex positions satisfy
``pos_s(k) = g . pos_s'(vertex_map[k])``.
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass, field
from functools import cached_property

import jsonschema

from .hyperbolic import (
    CLASS_TOL,
    ExtendedPoint,
    Isometry,
    NoCommonFixedPoint,
    common_fixed_point,
)

IDEAL = "ideal"
FINITE = "finite"
PARSE_DET_TOL = 1e-9


class SchemaError(ValueError):
    """Input file does not match the schema; message starts with a JSON path."""


class TriangulationError(ValueError):
    """A structural invariant (gluing, orientation, vertex classes) fails."""


class WordError(ValueError):
    """A transition word refers to an unknown generator or is malformed."""


@dataclass(frozen=True)
class Vertex:
    id: int
    kind: str


@dataclass(frozen=True)
class Simplex:
    id: int
    vertices: tuple[int, ...]
    sign: int


@dataclass(frozen=True)
class Gluing:
    src: tuple[int, int]
    dst: tuple[int, int]
    vertex_map: tuple[int, ...]


@dataclass(frozen=True)
class SlotPartner:
    slot: tuple[int, int]
    perm: tuple[int, ...]  # full position bijection, perm[f] = f'


@dataclass(frozen=True)
class Triangulation:
    dimension: int
    vertices: tuple[Vertex, ...]
    simplices: tuple[Simplex, ...]
    gluings: tuple[Gluing, ...]

    @cached_property
    def partners(self) -> dict[tuple[int, int], SlotPartner]:
        out = {}
        n = self.dimension
        for gl in self.gluings:
            (s, f), (t, g) = gl.src, gl.dst
            perm = [0] * (n + 1)
            perm[f] = g
            for k, image in zip(_face_positions(n, f), gl.vertex_map):
                perm[k] = image
            inv = [0] * (n + 1)
            for k, image in enumerate(perm):
                inv[image] = k
            out[(s, f)] = SlotPartner((t, g), tuple(perm))
            out[(t, g)] = SlotPartner((s, f), tuple(inv))
        return out

    @cached_property
    def kinds(self) -> dict[int, str]:
        return {v.id: v.kind for v in self.vertices}

    @property
    def ideal_vertices(self) -> list[int]:
        return [v.id for v in self.vertices if v.kind == IDEAL]

    @property
    def finite_vertices(self) -> list[int]:
        return [v.id for v in self.vertices if v.kind == FINITE]

    def vertex_at(self, corner: tuple[int, int]) -> int:
        return self.simplices[corner[0]].vertices[corner[1]]

    @cached_property
    def root_corners(self) -> dict[int, tuple[int, int]]:
        """Lowest (simplex, position) corner of each vertex; its chart hosts the vertex."""
        roots = {}
        for s in self.simplices:
            for k, v in enumerate(s.vertices):
                roots.setdefault(v, (s.id, k))
        return roots

    def with_signs(self, signs) -> "Triangulation":
        simplices = tuple(Simplex(s.id, s.vertices, int(e)) for s, e in zip(self.simplices, signs))
        return Triangulation(self.dimension, self.vertices, simplices, self.gluings)


@dataclass(frozen=True)
class TransitionCocycle:
    """One isometry per face slot; the reverse slot holds the inverse."""

    transitions: dict[tuple[int, int], Isometry]
    words: dict[tuple[int, int], str] = field(default_factory=dict)
    generators: dict[str, Isometry] = field(default_factory=dict)

    def __getitem__(self, slot) -> Isometry:
        return self.transitions[slot]

    @classmethod
    def from_gluings(cls, t: Triangulation, isometries, words=None, generators=None):
        transitions = {}
        for gl, g in zip(t.gluings, isometries, strict=True):
            transitions[gl.src] = g
            transitions[gl.dst] = g.inverse()
        return cls(transitions, dict(words or {}), dict(generators or {}))

    @classmethod
    def trivial(cls, t: Triangulation) -> "TransitionCocycle":
        return cls.from_gluings(t, [Isometry.identity(t.dimension)] * len(t.gluings))

    def conjugated(self, g: Isometry) -> "TransitionCocycle":
        return TransitionCocycle({k: v.conjugate_by(g) for k, v in self.transitions.items()})

    def replace(self, t: Triangulation, index: int, g: Isometry) -> "TransitionCocycle":
        """Copy with the transition of gluing ``index`` replaced by ``g``."""
        transitions = dict(self.transitions)
        gl = t.gluings[index]
        transitions[gl.src] = g
        transitions[gl.dst] = g.inverse()
        return TransitionCocycle(transitions)


@dataclass(frozen=True)
class PeripheralData:
    """Declared holonomy generators of each end, keyed by ideal vertex id."""

    generators: dict[int, tuple[Isometry, ...]]

    def conjugated(self, g: Isometry) -> "PeripheralData":
        return PeripheralData({v: tuple(h.conjugate_by(g) for h in hs) for v, hs in self.generators.items()})


@dataclass(frozen=True)
class FundamentalCycle:
    entries: tuple[tuple[int, int], ...]  # (simplex id, sign)


@dataclass
class CellResidual:
    cell: int
    simplex: int
    positions: tuple[int, ...]
    length: int
    residual: float


@dataclass
class CocycleReport:
    passed: bool
    tol: float
    residuals: list[CellResidual]
    reverse_residual: float

    @property
    def max_residual(self) -> float:
        return max((r.residual for r in self.residuals), default=0.0)

    @property
    def failures(self) -> list[CellResidual]:
        return [r for r in self.residuals if r.residual > self.tol]

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "tol": self.tol,
            "max_residual": self.max_residual,
            "reverse_residual": self.reverse_residual,
            "residuals": [
                {"cell": r.cell, "simplex": r.simplex, "positions": list(r.positions),
                 "length": r.length, "residual": r.residual}
                for r in self.residuals
            ],
        }


@dataclass
class PeripheralReport:
    points: dict[int, ExtendedPoint]
    failures: dict[int, str]

    @property
    def passed(self) -> bool:
        return not self.failures


def _face_positions(n: int, f: int) -> list[int]:
    return [k for k in range(n + 1) if k != f]


def _perm_sign(seq) -> int:
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


# ---------------------------------------------------------------- JSON schema

_ENTRY = {"oneOf": [{"type": "number"},
                    {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2}]}
_ROW = {"type": "array", "items": _ENTRY, "minItems": 2, "maxItems": 2}
_MATRIX = {"type": "array", "items": _ROW, "minItems": 2, "maxItems": 2}
_SLOT = {"type": "array", "items": {"type": "integer"}, "minItems": 2, "maxItems": 2}

SCHEMA = {
    "type": "object",
    "required": ["dimension", "vertices", "simplices", "gluings", "peripheral"],
    "additionalProperties": False,
    "properties": {
        "dimension": {"enum": [2, 3]},
        "vertices": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "required": ["id", "kind"],
                "additionalProperties": False,
                "properties": {"id": {"type": "integer"}, "kind": {"enum": [IDEAL, FINITE]}},
            },
        },
        "simplices": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "required": ["id", "vertices", "sign"],
                "additionalProperties": False,
                "properties": {
                    "id": {"type": "integer"},
                    "vertices": {"type": "array", "items": {"type": "integer"}},
                    "sign": {"enum": [1, -1]},
                },
            },
        },
        "gluings": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["from", "to", "vertex_map", "transition"],
                "additionalProperties": False,
                "properties": {
                    "from": _SLOT,
                    "to": _SLOT,
                    "vertex_map": {"type": "array", "items": {"type": "integer"}},
                    "transition": {
                        "oneOf": [
                            _MATRIX,
                            {"type": "object", "required": ["word"], "additionalProperties": False,
                             "properties": {"word": {"type": "string"}}},
                        ]
                    },
                },
            },
        },
        "generators": {"type": "object", "additionalProperties": _MATRIX},
        "peripheral": {
            "type": "object",
            "patternProperties": {"^-?[0-9]+$": {"type": "array", "items": _MATRIX}},
            "additionalProperties": False,
        },
    },
}


def _json_path(parts) -> str:
    return "/" + "/".join(str(p) for p in parts)


def _matrix_from_json(m, dim: int, path: str) -> Isometry:
    rows = []
    for row in m:
        entries = []
        for x in row:
            if isinstance(x, list):
                if dim == 2:
                    raise SchemaError(f"{path}: H^2 matrices must have real entries")
                entries.append(complex(x[0], x[1]))
            else:
                entries.append(complex(x))
        rows.append(entries)
    (a, b), (c, d) = rows
    det = a * d - b * c
    if dim == 2 and det.real <= 0:
        raise SchemaError(f"{path}: orientation-reversing or singular matrix (det {det.real})")
    if abs(det - 1) > PARSE_DET_TOL:
        raise SchemaError(f"{path}: determinant {det} differs from 1")
    return Isometry(rows, dim, normalize=abs(det - 1) > 1e-12)


def matrix_to_json(g: Isometry):
    if g.dim == 2:
        return [[g.a.real, g.b.real], [g.c.real, g.d.real]]
    return [[[x.real, x.imag] for x in (g.a, g.b)], [[x.real, x.imag] for x in (g.c, g.d)]]


# ---------------------------------------------------------------- words

_TOKEN = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)(\^-1|⁻¹)?$")


def evaluate_word(word: str, generators: dict[str, Isometry], dim: int) -> Isometry:
    """Product of the generators named in ``word``, left to right.

    Tokens are separated by whitespace; ``a^-1`` or ``a⁻¹`` is an inverse.
    The empty word is the identity.
    """
    result = Isometry.identity(dim)
    for token in word.split():
        m = _TOKEN.match(token)
        if not m:
            raise WordError(f"malformed token {token!r} in word {word!r}")
        name, inv = m.groups()
        if name not in generators:
            raise WordError(f"unknown generator {name!r} in word {word!r}")
        g = generators[name]
        result = result @ (g.inverse() if inv else g)
    return result


def word_to_cocycle(t: Triangulation, generators: dict[str, Isometry], face_words) -> TransitionCocycle:
    """Cocycle whose listed gluings carry the evaluated words.

    ``face_words`` maps each listed gluing's source slot to its word (a
    sequence in gluing order is accepted too).  Validation is left to
    :func:`validate_cocycle`.
    """
    if not isinstance(face_words, dict):
        face_words = {gl.src: w for gl, w in zip(t.gluings, face_words, strict=True)}
    missing = [gl.src for gl in t.gluings if gl.src not in face_words]
    if missing:
        raise WordError(f"no word for slot {missing[0]}")
    isos = [evaluate_word(face_words[gl.src], generators, t.dimension) for gl in t.gluings]
    return TransitionCocycle.from_gluings(t, isos, words={gl.src: face_words[gl.src] for gl in t.gluings},
                                          generators=generators)


# ---------------------------------------------------------------- parse / serialize

def parse(data: bytes | str | dict):
    """Parse and validate a triangulation file.

    Returns ``(Triangulation, TransitionCocycle, PeripheralData)``; raises
    SchemaError, TriangulationError or WordError.
    """
    if isinstance(data, (bytes, bytearray)):
        data = data.decode("utf-8")
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"/: invalid JSON ({exc})") from exc
    validator = jsonschema.Draft202012Validator(SCHEMA)
    errors = sorted(validator.iter_errors(data), key=lambda e: list(e.absolute_path))
    if errors:
        err = errors[0]
        raise SchemaError(f"{_json_path(err.absolute_path)}: {err.message}")

    n = data["dimension"]
    vertices = tuple(Vertex(v["id"], v["kind"]) for v in data["vertices"])
    ids = [v.id for v in vertices]
    if len(set(ids)) != len(ids):
        raise SchemaError("/vertices: duplicate vertex id")
    simplices = []
    for i, s in enumerate(data["simplices"]):
        if s["id"] != i:
            raise SchemaError(f"/simplices/{i}/id: simplex ids must be 0..N-1 in order")
        if len(s["vertices"]) != n + 1:
            raise SchemaError(f"/simplices/{i}/vertices: expected {n + 1} vertex ids")
        for v in s["vertices"]:
            if v not in set(ids):
                raise SchemaError(f"/simplices/{i}/vertices: unknown vertex id {v}")
        simplices.append(Simplex(i, tuple(s["vertices"]), s["sign"]))

    generators = {name: _matrix_from_json(m, n, f"/generators/{name}")
                  for name, m in data.get("generators", {}).items()}

    gluings, isos, words = [], [], {}
    for i, g in enumerate(data["gluings"]):
        path = f"/gluings/{i}"
        src, dst, vmap = tuple(g["from"]), tuple(g["to"]), tuple(g["vertex_map"])
        for key, slot in (("from", src), ("to", dst)):
            if not (0 <= slot[0] < len(simplices) and 0 <= slot[1] <= n):
                raise SchemaError(f"{path}/{key}: slot {list(slot)} out of range")
        if len(vmap) != n:
            raise SchemaError(f"{path}/vertex_map: expected {n} entries")
        gluings.append(Gluing(src, dst, vmap))
        tr = g["transition"]
        if isinstance(tr, dict):
            try:
                isos.append(evaluate_word(tr["word"], generators, n))
            except WordError as exc:
                raise WordError(f"{path}/transition: {exc}") from exc
            words[src] = tr["word"]
        else:
            isos.append(_matrix_from_json(tr, n, f"{path}/transition"))

    t = Triangulation(n, vertices, tuple(simplices), tuple(gluings))
    check_structure(t)
    cocycle = TransitionCocycle.from_gluings(t, isos, words, generators)

    peripheral = {}
    kinds = t.kinds
    for key, mats in data["peripheral"].items():
        vid = int(key)
        if kinds.get(vid) != IDEAL:
            raise SchemaError(f"/peripheral/{key}: not an ideal vertex")
        peripheral[vid] = tuple(_matrix_from_json(m, n, f"/peripheral/{key}/{j}") for j, m in enumerate(mats))
    return t, cocycle, PeripheralData(peripheral)


def to_dict(t: Triangulation, c: TransitionCocycle, p: PeripheralData) -> dict:
    out = {
        "dimension": t.dimension,
        "vertices": [{"id": v.id, "kind": v.kind} for v in t.vertices],
        "simplices": [{"id": s.id, "vertices": list(s.vertices), "sign": s.sign} for s in t.simplices],
        "gluings": [],
    }
    for gl in t.gluings:
        if gl.src in c.words:
            tr = {"word": c.words[gl.src]}
        else:
            tr = matrix_to_json(c[gl.src])
        out["gluings"].append({"from": list(gl.src), "to": list(gl.dst),
                               "vertex_map": list(gl.vertex_map), "transition": tr})
    if c.generators:
        out["generators"] = {name: matrix_to_json(g) for name, g in c.generators.items()}
    out["peripheral"] = {str(v): [matrix_to_json(g) for g in gs] for v, gs in p.generators.items()}
    return out


def serialize(t: Triangulation, c: TransitionCocycle, p: PeripheralData) -> str:
    return json.dumps(to_dict(t, c, p), indent=1) + "\n"


# ---------------------------------------------------------------- structure

def check_structure(t: Triangulation) -> None:
    """Pseudo-manifold checks: involutive gluings, consistent vertex maps, vertex classes."""
    n = t.dimension
    seen: dict[tuple[int, int], int] = {}
    for i, gl in enumerate(t.gluings):
        if gl.src == gl.dst:
            raise SchemaError(f"/gluings/{i}: slot {list(gl.src)} glued to itself")
        for key, slot in (("from", gl.src), ("to", gl.dst)):
            if slot in seen:
                raise SchemaError(f"/gluings/{i}/{key}: slot {list(slot)} glued twice "
                                  f"(already in gluing {seen[slot]})")
            seen[slot] = i
        face = _face_positions(n, gl.src[1])
        target = set(_face_positions(n, gl.dst[1]))
        if set(gl.vertex_map) != target:
            raise SchemaError(f"/gluings/{i}/vertex_map: {list(gl.vertex_map)} is not a bijection "
                              f"onto the positions {sorted(target)} of face {gl.dst[1]}")
        src_verts = t.simplices[gl.src[0]].vertices
        dst_verts = t.simplices[gl.dst[0]].vertices
        for k, image in zip(face, gl.vertex_map):
            if src_verts[k] != dst_verts[image]:
                raise TriangulationError(
                    f"gluing {i}: position {k} of simplex {gl.src[0]} (vertex {src_verts[k]}) maps to "
                    f"position {image} of simplex {gl.dst[0]} (vertex {dst_verts[image]})")
    for s in t.simplices:
        for f in range(n + 1):
            if (s.id, f) not in seen:
                raise TriangulationError(f"face slot {[s.id, f]} is not glued")
    if not t.ideal_vertices:
        raise TriangulationError("no ideal vertex: the manifold must be noncompact")

    used = {v for s in t.simplices for v in s.vertices}
    for v in t.vertices:
        if v.id not in used:
            raise TriangulationError(f"vertex {v.id} is not used by any simplex")
    # corners of one vertex id must form a single class under the gluings
    parent = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (s, f), partner in t.partners.items():
        for k in _face_positions(n, f):
            a, b = find((s, k)), find((partner.slot[0], partner.perm[k]))
            if a != b:
                parent[a] = b
    classes: dict[int, set] = {}
    for s in t.simplices:
        for k, v in enumerate(s.vertices):
            classes.setdefault(v, set()).add(find((s.id, k)))
    for v, roots in classes.items():
        if len(roots) > 1:
            raise TriangulationError(f"vertex id {v} labels {len(roots)} distinct vertex classes")


def fundamental_cycle(t: Triangulation) -> FundamentalCycle:
    """Signed simplices whose boundary cancels across every gluing (exact check)."""
    n = t.dimension
    for gl in t.gluings:
        (s, f), (u, g) = gl.src, gl.dst
        face_sign = _perm_sign(gl.vertex_map)
        total = t.simplices[s].sign * t.simplices[u].sign * (-1) ** (f + g) * face_sign
        if total != -1:
            raise TriangulationError(
                f"non-orientable or mis-signed: faces {[s, f]} and {[u, g]} do not cancel")
    return FundamentalCycle(tuple((s.id, s.sign) for s in t.simplices))


def orient(t: Triangulation) -> Triangulation:
    """Choose simplex signs (first simplex +1) so that the boundary cancels."""
    signs = {0: 1}
    queue = [0]
    while queue:
        s = queue.pop(0)
        for f in range(t.dimension + 1):
            partner = t.partners[(s, f)]
            u, g = partner.slot
            face = _face_positions(t.dimension, f)
            face_sign = _perm_sign([partner.perm[k] for k in face])
            want = -signs[s] * (-1) ** (f + g) * face_sign
            if u not in signs:
                signs[u] = want
                queue.append(u)
    return t.with_signs([signs.get(i, 1) for i in range(len(t.simplices))])


# ---------------------------------------------------------------- codimension-2 cells

def codim2_cells(t: Triangulation):
    """Yield (simplex, positions, loop) for each codimension-2 cell class.

    ``loop`` lists the face slots crossed, in order, while circling the cell
    starting from the lowest (simplex, positions) representative.
    """
    n = t.dimension
    visited = set()
    for s in t.simplices:
        for cell in itertools.combinations(range(n + 1), n - 1):
            key = (s.id, frozenset(cell))
            if key in visited:
                continue
            others = [k for k in range(n + 1) if k not in cell]
            state = (s.id, frozenset(cell), others[0])
            start = state
            loop = []
            while True:
                sid, S, exit_face = state
                visited.add((sid, S))
                loop.append((sid, exit_face))
                partner = t.partners[(sid, exit_face)]
                u, g = partner.slot
                S2 = frozenset(partner.perm[k] for k in S)
                nxt = next(k for k in range(n + 1) if k not in S2 and k != g)
                state = (u, S2, nxt)
                if state == start:
                    break
                if len(loop) > 4 * len(t.simplices) * (n + 1) ** 2:
                    raise TriangulationError(f"cell {cell} of simplex {s.id} does not close up")
            yield s.id, cell, loop


def validate_cocycle(t: Triangulation, c: TransitionCocycle, tol: float = CLASS_TOL) -> CocycleReport:
    """Check that transitions compose to the identity around every codimension-2 cell.

    In dimension 3 every edge is checked.  In dimension 2 the cells are
    vertices and only finite ones are checked: the loop around an ideal
    vertex is its peripheral holonomy.
    """
    n = t.dimension
    ident = Isometry.identity(n)
    reverse = 0.0
    for gl in t.gluings:
        reverse = max(reverse, (c[gl.src] @ c[gl.dst]).distance_to(ident))
    residuals = []
    for sid, cell, loop in codim2_cells(t):
        if n == 2 and t.kinds[t.simplices[sid].vertices[cell[0]]] == IDEAL:
            continue
        composite = ident
        for slot in loop:
            composite = composite @ c[slot]
        residuals.append(CellResidual(len(residuals), sid, tuple(cell), len(loop), composite.distance_to(ident)))
    passed = reverse <= max(tol, 1e-12) and all(r.residual <= tol for r in residuals)
    return CocycleReport(passed, tol, residuals, reverse)


def verify_peripheral(t: Triangulation, c: TransitionCocycle, p: PeripheralData,
                      tol: float = CLASS_TOL, fallback=None) -> PeripheralReport:
    """Common boundary fixed point of each ideal vertex's declared holonomy.

    ``fallback`` maps vertex ids to isometries used when a vertex has no
    declared list (typically the link holonomies derived from the cocycle).
    """
    points, failures = {}, {}
    for v in t.ideal_vertices:
        gens = p.generators.get(v)
        if gens is None and fallback is not None:
            gens = fallback.get(v)
        if not gens:
            gens = (Isometry.identity(t.dimension),)
        try:
            points[v] = common_fixed_point(gens, tol)
        except NoCommonFixedPoint as exc:
            failures[v] = f"vertex {v}: {exc}"
    return PeripheralReport(points, failures)


# ---------------------------------------------------------------- subdivision

def barycentric_subdivide(t: Triangulation, c: TransitionCocycle):
    """Barycentric subdivision with induced transitions.

    Each simplex s becomes (n+1)! simplices, one per ordering pi of its
    positions, with vertices b_i = barycentre of {pi(0), ..., pi(i)} and
    sign sign(s) * sign(pi).  New simplex id is s * (n+1)! + rank of pi.
    Faces interior to s carry the identity; the face opposite b_n lies on
    face pi(n) of s and inherits that face's transition.
    """
    n = t.dimension
    perms = list(itertools.permutations(range(n + 1)))
    rank = {p: i for i, p in enumerate(perms)}
    m = len(perms)

    parent = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (s, f), partner in t.partners.items():
        face = _face_positions(n, f)
        for size in range(2, n + 1):
            for S in itertools.combinations(face, size):
                a = find((s, frozenset(S)))
                b = find((partner.slot[0], frozenset(partner.perm[k] for k in S)))
                if a != b:
                    parent[a] = b

    next_id = max(v.id for v in t.vertices) + 1
    new_vertices = list(t.vertices)
    class_id = {}

    def vertex_for(s, S):
        nonlocal next_id
        if len(S) == 1:
            return t.simplices[s].vertices[next(iter(S))]
        key = (s, frozenset(S)) if len(S) == n + 1 else find((s, frozenset(S)))
        if key not in class_id:
            class_id[key] = next_id
            new_vertices.append(Vertex(next_id, FINITE))
            next_id += 1
        return class_id[key]

    # assign new vertex ids in a fixed order
    for s in t.simplices:
        for size in range(2, n + 2):
            for S in itertools.combinations(range(n + 1), size):
                vertex_for(s.id, S)

    simplices = []
    for s in t.simplices:
        for p in perms:
            verts = tuple(vertex_for(s.id, p[: i + 1]) for i in range(n + 1))
            simplices.append(Simplex(s.id * m + rank[p], verts, s.sign * _perm_sign(p)))

    ident = Isometry.identity(n)
    gluings, isos = [], []
    for s in t.simplices:
        for p in perms:
            sid = s.id * m + rank[p]
            for face in range(n + 1):
                if face < n:
                    q = list(p)
                    q[face], q[face + 1] = q[face + 1], q[face]
                    other = (s.id * m + rank[tuple(q)], face)
                    g = ident
                else:
                    partner = t.partners[(s.id, p[n])]
                    u, _ = partner.slot
                    q = tuple(partner.perm[k] for k in p)
                    other = (u * m + rank[q], n)
                    g = c[(s.id, p[n])]
                if (sid, face) < other:
                    gluings.append(Gluing((sid, face), other, tuple(_face_positions(n, face))))
                    isos.append(g)
    sub = Triangulation(n, tuple(new_vertices), tuple(simplices), tuple(gluings))
    return sub, TransitionCocycle.from_gluings(sub, isos)
