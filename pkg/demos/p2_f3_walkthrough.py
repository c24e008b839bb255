"""
Shrinking P2 glued to F3
========================

A worked rank-2 example: glue a line on P2 to the negative section of F3,
check the Calabi-Yau condition, then decide whether a positive combination
of the two components has a nef-like restriction.
"""

from shrinkcy import certificate_verify, cy_check, decide_rank2, plan_embeddings, rank2

# the double curve is a line on P2 and the negative section e of F3 (squares 1 and -3)
s = rank2("P2", "F3", "l", "e")
print(s.describe())

# C1^2 + C2^2 must equal 2g - 2 for the double curve
report = cy_check(s)
print("CY condition holds:", report.passed)

# the interval method returns the smallest integer certificate (a1, a2)
decision = decide_rank2(s)
print(decision.status, "certificate", decision.certificate)
for line in decision.notes:
    print("   ", line)

# any certificate can be rechecked independently
check = certificate_verify(s, decision.certificate)
print("verified:", check.ok, "J^2 per component:", check.j_squared)

# scaling a certificate keeps it valid
print("scaled (3,3) ok:", certificate_verify(s, (3, 3)).ok)

# finally, ask the planner how this surface could sit inside a threefold
for recipe in plan_embeddings(s):
    print("-", recipe.kind, recipe.parameters)

# gluing to e + 3f instead breaks the CY condition (1 + 3 != -2) and the
# decision reports it rather than raising
bad = decide_rank2(rank2("P2", "F3", "l", "e+3f"))
print(bad.status, "cy =", bad.cy)
