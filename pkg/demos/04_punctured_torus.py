"""A Fuchsian punctured torus: the volume is the hyperbolic area 2 pi."""
import math

from repvol import compute_volume, corpus

t, c, p = corpus.load("punctured_torus")
report = compute_volume(t, c, p)
print("area   =", report.total)
print("2 pi   =", 2 * math.pi)
print("peripheral holonomy:", p.generators[0])

# a representation fixing a boundary point has volume zero
t, c, p = corpus.load("punctured_torus_upper")
print("upper triangular:", compute_volume(t, c, p).total)
