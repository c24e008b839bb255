"""
Toric sections of weighted projective planes
============================================

A weighted projective plane P(w0, w1, w2) gives a lattice triangle. Its
unimodular triangulation is the fan section of a toric threefold whose
compact divisors are the interior points.
"""

from pathlib import Path

from shrinkcy import detect_flops, fan_to_snc, render_svg, toric_triples, weights_to_triangle
from shrinkcy.tables import figure_section
from shrinkcy.toric import section

for w in [(1, 1, 3), (1, 2, 4), (1, 3, 4), (1, 2, 6)]:
    fs = section(weights_to_triangle(*w))
    kinds = [sid.display for sid in fs.interior_stars.values()]
    print(f"P{w}: {len(fs.interior)} compact divisors -> {kinds}, {len(fs.triangles)} triangles")

# the triple numbers from the fan agree with the snc formulas
fs = section(weights_to_triangle(1, 1, 3))
s, points = fan_to_snc(fs)
print(s.describe())
for key, value in sorted(toric_triples(fs).items()):
    print("  D", key, "=", value)

# P(1,3,4) as drawn uses a different triangulation than the default one;
# the two are related by a flop
drawn = figure_section("P134")
print("drawn P(1,3,4):", [sid.display for sid in drawn.interior_stars.values()])
for flop in detect_flops(drawn):
    print("  flop square", flop.quad)

out = Path("p124.svg")
out.write_text(render_svg(section(weights_to_triangle(1, 2, 4))))
print("wrote", out)
