"""Lobachevsky function and Bloch-Wigner dilogarithm."""
import cmath
import math

import numpy as np

from repvol import bloch_wigner, lobachevsky

# L is pi-periodic and odd, with its maximum at pi/6
thetas = np.linspace(0, math.pi, 7)
for th in thetas:
    print(f"L({th:.4f}) = {lobachevsky(th): .12f}")

# the regular ideal tetrahedron: D(e^{i pi/3}) = 3 L(pi/3)
w = cmath.exp(1j * math.pi / 3)
print("D(omega)    =", bloch_wigner(w))
print("3 L(pi/3)   =", 3 * lobachevsky(math.pi / 3))

# D is invariant under z -> 1 - 1/z and changes sign under z -> 1/z
z = 0.3 + 0.9j
print(bloch_wigner(z), bloch_wigner(1 - 1 / z), -bloch_wigner(1 / z))
