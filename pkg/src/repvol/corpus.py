"""Bundled example triangulations and the code that builds them.

* ``figure_eight`` -- the census triangulation m004 (two regular ideal
  tetrahedra) with its complete hyperbolic holonomy.
* ``figure_eight_words`` -- same representation given by generators and words.
* ``punctured_torus`` -- the once-punctured torus as two ideal triangles with
  the side pairings A = [[2, 1], [1, 1]], B = [[1, 1], [1, 2]] of the ideal
  quadrilateral (inf, -1, 0, 1).
* ``*_trivial`` / ``*_upper`` -- trivial and upper-triangular (boundary
  fixing) representations on the same complexes.

Run ``python -m repvol.corpus`` to regenerate the JSON files.
"""

from __future__ import annotations

import cmath
import math
from importlib import resources
from pathlib import Path

import numpy as np

from .developing import dual_tree_frames, transport_corners
from .hyperbolic import Isometry, IsometryClass, classify, mobius_from_points
from .triangulation import (
    Gluing,
    PeripheralData,
    Simplex,
    TransitionCocycle,
    Triangulation,
    Vertex,
    codim2_cells,
    orient,
    parse,
    serialize,
    word_to_cocycle,
)

NAMES = (
    "figure_eight",
    "figure_eight_words",
    "figure_eight_trivial",
    "figure_eight_upper",
    "punctured_torus",
    "punctured_torus_trivial",
    "punctured_torus_upper",
)

# SnapPea gluing permutations of m004, tetrahedron 0 (all faces glue to tetrahedron 1)
M004_PERMS = ("0132", "1230", "2310", "2103")


def load(name: str):
    """Parse a bundled corpus file by name."""
    return parse(resources.files("repvol").joinpath("data", f"{name}.json").read_bytes())


def path(name: str) -> Path:
    return Path(str(resources.files("repvol").joinpath("data", f"{name}.json")))


def figure_eight_complex() -> Triangulation:
    gluings = []
    for f, p in enumerate(M004_PERMS):
        perm = [int(x) for x in p]
        gluings.append(Gluing((0, f), (1, perm[f]), tuple(perm[k] for k in range(4) if k != f)))
    simplices = (Simplex(0, (0, 0, 0, 0), 1), Simplex(1, (0, 0, 0, 0), 1))
    return orient(Triangulation(3, (Vertex(0, "ideal"),), simplices, tuple(gluings)))


def shape_cocycle(t: Triangulation, charts: dict[int, list]) -> TransitionCocycle:
    """Transitions matching each face's three ideal vertices between charts."""
    isos = []
    for gl in t.gluings:
        (s, f), (u, _) = gl.src, gl.dst
        perm = t.partners[gl.src].perm
        ks = [k for k in range(t.dimension + 1) if k != f]
        isos.append(mobius_from_points([charts[u][perm[k]] for k in ks], [charts[s][k] for k in ks]))
    return TransitionCocycle.from_gluings(t, isos)


def tree_gauge(t: Triangulation, c: TransitionCocycle) -> TransitionCocycle:
    """Equivalent cocycle that is the identity on the dual spanning tree."""
    frames = dual_tree_frames(t, c)
    isos = []
    for gl in t.gluings:
        g = frames[gl.src[0]] @ c[gl.src] @ frames[gl.dst[0]].inverse()
        isos.append(_clean(g))
    return TransitionCocycle.from_gluings(t, isos)


def _clean(g: Isometry, digits: int = 15) -> Isometry:
    ents = [complex(round(x.real, digits), round(x.imag, digits)) for x in g.entries]
    ents = [complex(0.0 if x.real == 0 else x.real, 0.0 if x.imag == 0 else x.imag) for x in ents]
    return Isometry(((ents[0], ents[1]), (ents[2], ents[3])), g.dim, normalize=True)


def peripheral_generators(t: Triangulation, c: TransitionCocycle) -> PeripheralData:
    """Two independent non-trivial link holonomies per ideal vertex (or the identity)."""
    _, holonomy = transport_corners(t, c)
    out = {}
    for v in t.ideal_vertices:
        chosen = []
        for h in holonomy[v]:
            if classify(h).kind is IsometryClass.IDENTITY:
                continue
            if any(h.isclose(k, 1e-9) or h.isclose(k.inverse(), 1e-9) for k in chosen):
                continue
            if t.dimension == 3 and chosen and _parallel(chosen[0], h):
                continue
            chosen.append(_clean(h))
            if len(chosen) == t.dimension - 1:
                break
        out[v] = tuple(chosen) or (Isometry.identity(t.dimension),)
    return PeripheralData(out)


def _parallel(g: Isometry, h: Isometry) -> bool:
    # parabolics fixing a common point with real-proportional translations
    if abs(g.c) > 1e-12 or abs(h.c) > 1e-12:
        return False
    tg, th = g.b / g.d, h.b / h.d
    return abs((tg * th.conjugate()).imag) < 1e-9


def figure_eight():
    t = figure_eight_complex()
    w = cmath.exp(1j * math.pi / 3)
    c = tree_gauge(t, shape_cocycle(t, {0: [None, 0, 1, w], 1: [None, 0, 1, w]}))
    return t, c, peripheral_generators(t, c)


def figure_eight_words():
    t, c, p = figure_eight()
    tree = {gl.src for gl in t.gluings if c[gl.src] == Isometry.identity(3)}
    names = iter("abc")
    generators, words = {}, {}
    for gl in t.gluings:
        if gl.src in tree:
            words[gl.src] = ""
        else:
            name = next(names)
            generators[name] = c[gl.src]
            words[gl.src] = name
    # rewrite the last generator through an edge relation
    last = "c"
    for sid, cell, loop in codim2_cells(t):
        letters = []
        for slot in loop:
            gl_src = slot if slot in words else t.partners[slot].slot
            name = words[gl_src]
            if name:
                letters.append(name if slot in words else name + "^-1")
        if sum(1 for x in letters if x.startswith(last)) == 1:
            i = next(j for j, x in enumerate(letters) if x.startswith(last))
            rest = letters[i + 1:] + letters[:i]  # x_i = (rest)^-1, cyclically
            inv = [x[:-3] if x.endswith("^-1") else x + "^-1" for x in reversed(rest)]
            if letters[i].endswith("^-1"):
                inv = [x[:-3] if x.endswith("^-1") else x + "^-1" for x in reversed(inv)]
            slot = next(s for s, wd in words.items() if wd == last)
            words[slot] = " ".join(inv)
            del generators[last]
            break
    return t, word_to_cocycle(t, generators, words), p


def figure_eight_trivial():
    t = figure_eight_complex()
    c = TransitionCocycle.trivial(t)
    return t, c, PeripheralData({0: (Isometry.identity(3),)})


def _abelian_exponents(t: Triangulation, c: TransitionCocycle) -> list[int]:
    """Integer exponents e on non-tree gluings with zero sum around every edge."""
    tree = [c[gl.src] == Isometry.identity(t.dimension) for gl in t.gluings]
    index = {gl.src: (i, 1) for i, gl in enumerate(t.gluings)}
    index.update({gl.dst: (i, -1) for i, gl in enumerate(t.gluings)})
    rows = []
    for _, _, loop in codim2_cells(t):
        row = [0] * len(t.gluings)
        for slot in loop:
            i, sgn = index[slot]
            row[i] += sgn
        rows.append(row)
    free = [i for i, is_tree in enumerate(tree) if not is_tree]
    a = np.array([[r[i] for i in free] for r in rows], dtype=float)
    _, _, vt = np.linalg.svd(a)
    null = vt[-1]
    null = null / null[np.argmax(np.abs(null))]
    e = [0] * len(t.gluings)
    for i, x in zip(free, null):
        e[i] = int(round(x))
    return e


def figure_eight_upper():
    t, c, _ = figure_eight()
    exps = _abelian_exponents(t, c)
    lam = 1.3 * cmath.exp(0.4j)
    conj = Isometry(((1.0, 0.7 - 0.2j), (0.0, 1.0)), 3)
    isos = [Isometry(((lam**e, 0), (0, lam**-e)), 3).conjugate_by(conj) for e in exps]
    c2 = TransitionCocycle.from_gluings(t, [_clean(g) for g in isos])
    return t, c2, peripheral_generators(t, c2)


def punctured_torus_complex() -> Triangulation:
    gluings = (
        Gluing((0, 1), (1, 2), (0, 1)),  # diagonal (inf, 0)
        Gluing((0, 0), (1, 1), (0, 2)),  # (-1, 0) -> (inf, 1) by A
        Gluing((0, 2), (1, 0), (2, 1)),  # (inf, -1) -> (1, 0) by B
    )
    simplices = (Simplex(0, (0, 0, 0), 1), Simplex(1, (0, 0, 0), 1))
    return orient(Triangulation(2, (Vertex(0, "ideal"),), simplices, gluings))


def _torus_with(a: Isometry, b: Isometry):
    t = punctured_torus_complex()
    c = TransitionCocycle.from_gluings(t, [Isometry.identity(2), a.inverse(), b.inverse()])
    return t, c, peripheral_generators(t, c)


def punctured_torus():
    return _torus_with(Isometry(((2, 1), (1, 1)), 2), Isometry(((1, 1), (1, 2)), 2))


def punctured_torus_trivial():
    t = punctured_torus_complex()
    return t, TransitionCocycle.trivial(t), PeripheralData({0: (Isometry.identity(2),)})


def punctured_torus_upper():
    return _torus_with(Isometry(((2, 1), (0, 0.5)), 2), Isometry(((1, 3), (0, 1)), 2))


def write_all(directory: Path | None = None) -> None:
    directory = directory or Path(__file__).parent / "data"
    directory.mkdir(parents=True, exist_ok=True)
    for name in NAMES:
        t, c, p = globals()[name]()
        (directory / f"{name}.json").write_text(serialize(t, c, p))


if __name__ == "__main__":
    write_all()
