"""Volume of the complete hyperbolic structure on the figure-eight knot complement."""
from repvol import compute_volume, milnor_wood_report
from repvol import corpus

t, c, p = corpus.load("figure_eight")
print(len(t.simplices), "tetrahedra,", len(t.gluings), "gluings")
for gl in t.gluings:
    print(gl.src, "->", gl.dst, c[gl.src])

report = compute_volume(t, c, p)
print("total     =", report.total)
print("per simplex:", [round(v.value, 12) for v in report.per_simplex])

mw = milnor_wood_report(report)
print(f"bound {mw.bound:.10f}, ratio {mw.ratio:.6f}")

# the same representation given by generators and words
tw, cw, pw = corpus.load("figure_eight_words")
print("from words:", compute_volume(tw, cw, pw).total)
