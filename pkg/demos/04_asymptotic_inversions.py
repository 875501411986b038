"""Inverse direction, asymptotic constructions.

When the indicial roots are complex (oscillatory weight solutions) or both
potential and weight are nonzero constants (Bessel-function solutions), the
x <-> t relationship cannot be inverted in closed form.  The constructions
truncate a series inversion instead, so they carry a trust region and the
reconstruction error is measured, not asserted away.
"""

import math

from slpkit import PaineSpec, asymptotic_profile, build_case

print("== complex indicial roots (cosine family) ==")
spec = PaineSpec(k=1.0, m=0.1)
res = build_case("case2-C1", spec, q0=2.0)
print("p(x) =", res.canonical.p)
print("expansion point on the t axis:", res.validity.expansion_point)
for w in res.validity.warnings:
    print("warning:", w)
profile = asymptotic_profile(res, spec, samples=9)
print("residual profile |I(x(t)) - k/(t+m)^2|:")
for t, r in profile:
    print(f"   t={t:5.3f}   {r:10.4g}")
print("note: the residual at the expansion point tau=1 is exactly 1/2 --")
print("the potential depends on second derivatives of the truncated map,")
print("so first-order map accuracy does not transfer to the potential.\n")

print("== constant potential and weight (Bessel families) ==")
# small-argument branch: trust improves as sqrt(|q0|/r0) shrinks
spec_j = PaineSpec(k=0.75, m=1.0)
for q0 in (0.01, 0.0001):
    res = build_case("case3-J", spec_j, q0=q0, r0=1.0)
    worst = max(r for _, r in asymptotic_profile(res, spec_j, samples=51))
    print(f"case3-J  q0={q0:<8g} scaled argument <= {res.extras['tau_bar_max']:.3f}"
          f"   max residual {worst:.3e}")

# large-argument branch: trust improves when the scaled argument is large
# and stays between consecutive zeros of Y_nu
spec_y = PaineSpec(k=0.75, m=330.0)
res = build_case("case3-Y", spec_y, q0=0.0025, r0=1.0)
worst = max(r for _, r in asymptotic_profile(res, spec_y, samples=51))
print(f"case3-Y  q0=0.0025  scaled argument >= {res.extras['tau_bar_min']:.2f}"
      f"   max residual {worst:.3e}")
print()
print("bessel-coefficient expression for the J branch (prints and re-parses):")
res_j = build_case("case3-J", PaineSpec(0.75, 0.1), q0=1.0, r0=1.0)
print("p(x) =", res_j.canonical.p)
for w in res_j.validity.warnings:
    print("warning:", w)
