"""
=====================================
Certified Mahler measures
=====================================

Compute m(f) for a few integer polynomials, look at the root discs behind
each enclosure and compare against the Jensen circle integral.
"""

# %%
# A first enclosure
# -----------------
#
# ``mahler`` returns an interval in nats.  For t - 2 the only root outside
# the unit circle is 2, so the value is log 2.

import math

from mahlerent import mahler, mahler_jensen, parse, roots_with_radii

r = mahler(parse("t - 2"))
print("m(t - 2) in", r.value, " log 2 =", math.log(2))

# %%
# Cyclotomic factors are removed exactly
# --------------------------------------
#
# Products of cyclotomic polynomials and monomials have measure exactly 0.
# The split is done by exact division, never numerically.

r = mahler(parse("t^4 - t^2 + 1") * parse("-t^3"))
print("m(-t^3 Phi_12) =", r.value, " factors:", r.split.cyclo_factors)

# %%
# Lehmer's polynomial and its roots
# ---------------------------------
#
# Eight roots sit on the unit circle.  Their discs straddle it, which costs
# nothing because the contribution of such a disc is bounded by log of its
# outer radius and that bound shrinks with the radius.

lehmer = parse("t^10 + t^9 - t^7 - t^6 - t^5 - t^4 - t^3 + t + 1")
for ball in roots_with_radii(lehmer, 64):
    lo, hi = ball.modulus_bounds()
    tag = "on circle" if ball.straddles_unit_circle() else ("outside" if lo > 1 else "inside")
    print(f"  {complex(ball.center):.6f}  radius {float(ball.radius):.1e}  {tag}")

r = mahler(lehmer)
print("m(Lehmer) in", r.value)

# %%
# Two methods, one answer
# -----------------------
#
# The Jensen integral is an independent (non-certified) check.

j = mahler_jensen(lehmer, tol=1e-7)
print(f"Jensen estimate {j.estimate:.10f} on a grid of {j.grid} points, band {j.value}")
print("overlap:", r.value.overlaps(j.value))

# %%
# Multiplicativity
# ----------------

f, g = parse("t^2 - t - 1"), parse("3*t^3 + t - 2")
print("m(fg)        in", mahler(f * g).value)
print("m(f) + m(g)  in", mahler(f).value + mahler(g).value)
