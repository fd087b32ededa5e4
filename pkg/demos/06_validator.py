"""A perturbed transition is caught by the edge check and by the equivariance witness."""
from repvol import corpus, validate_cocycle
from repvol.developing import EquivarianceError, develop, place_vertices
from repvol.hyperbolic import Isometry

t, c, p = corpus.load("figure_eight")
print("clean: max residual", validate_cocycle(t, c).max_residual)

m = c[t.gluings[1].src].matrix.copy()
m[0, 1] += 1e-3
bad = c.replace(t, 1, Isometry(m.tolist(), 3, normalize=True))

report = validate_cocycle(t, bad)
print("perturbed: passed =", report.passed)
for r in report.failures:
    print(f"  edge {r.cell} of simplex {r.simplex} at positions {r.positions}: {r.residual:.2e}")

try:
    develop(t, bad, place_vertices(t, bad, p))
except EquivarianceError as exc:
    print("develop:", exc)
