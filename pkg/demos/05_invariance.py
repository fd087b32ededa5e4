"""Independence of the volume from placement, dual-tree root and triangulation."""
from repvol import barycentric_subdivide, corpus, invariance_test, subdivision_test

t, c, p = corpus.load("figure_eight")
ts, cs = barycentric_subdivide(t, c)
print(len(ts.simplices), "tetrahedra after subdivision,", len(ts.finite_vertices), "finite vertices")

# finite vertices are now placed at random; every run must give the same total
report = invariance_test(ts, cs, p, samples=10, seed=2024, tol=1e-7)
for seed, root, value in zip(report.seeds, report.roots, report.values):
    print(f"seed {seed:>10}  root {root:>2}  {value:.12f}")
print("max deviation:", report.max_deviation, "PASS" if report.passed else "FAIL")

sub = subdivision_test(t, c, p, tol=1e-7)
print(f"before {sub.vol_before:.12f}  after {sub.vol_after:.12f}  delta {sub.delta:.2e}")

# boundary-fixing representation: zero under every placement
tu, cu, pu = corpus.load("figure_eight_upper")
tus, cus = barycentric_subdivide(tu, cu)
print("upper triangular:", invariance_test(tus, cus, pu, samples=5, seed=1, tol=1e-8).values)
