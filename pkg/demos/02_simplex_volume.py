"""Signed volumes of geodesic simplices, closed form and quadrature."""
import cmath
import math

from repvol import ExtendedPoint, simplex_volume
from repvol.hyperbolic import Isometry, act

inf = ExtendedPoint.infinity(3)
w = cmath.exp(1j * math.pi / 3)
regular = [ExtendedPoint.ideal(3, 0), ExtendedPoint.ideal(3, 1), inf, ExtendedPoint.ideal(3, w)]

print(simplex_volume(regular, method="closed"))
print(simplex_volume(regular, tol=1e-10, method="quadrature"))

# swapping two vertices flips the sign
swapped = [regular[1], regular[0]] + regular[2:]
print("swapped:", simplex_volume(swapped).value)

# a tetrahedron with finite vertices goes through quadrature
mixed = [ExtendedPoint.interior(0.1, 0.2, 0.9), ExtendedPoint.interior(-0.4, 0.1, 1.3),
         ExtendedPoint.interior(0.3, -0.5, 1.1), ExtendedPoint.ideal(3, 0.2 + 0.1j)]
v = simplex_volume(mixed, tol=1e-10)
print("mixed:", v)

# moving it by an isometry leaves the volume unchanged
g = Isometry(((1.2, 0.3j), (0.5, (1 + 0.15j) / 1.2)), normalize=True)
print("moved:", simplex_volume([act(g, p) for p in mixed], tol=1e-10).value)

# an ideal triangle in the plane has area pi
tri = [ExtendedPoint.ideal(2, 0), ExtendedPoint.ideal(2, 1), ExtendedPoint.infinity(2)]
print("ideal triangle:", simplex_volume(tri).value)
