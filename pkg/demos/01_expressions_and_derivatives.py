"""Coefficient expressions: parsing, evaluation, exact derivatives.

Every coefficient handled by slpkit is a small expression tree, so the
transformation formulas always have exact first and second derivatives
available.  This script walks through the surface.
"""

import math

from slpkit import parse

# parse over a named free variable (x for canonical problems, t for reduced)
p = parse("(x+0.4472135955)^3")
print("p(x) =", p)
print("p(0.7) =", p.evaluate(0.7))

# derivatives are expression trees again, closed under the grammar
dp = p.differentiate()
print("p'(x) =", dp)
print("p'(0.7) =", dp.evaluate(0.7), " (3*(x+s)^2 =", 3 * (0.7 + 0.4472135955) ** 2, ")")

# second derivatives too; nothing is approximated
print("p''(0.7) =", dp.differentiate().evaluate(0.7))

# evaluation never returns NaN silently; out-of-domain points raise
f = parse("ln(x)")
try:
    f.evaluate(0.0)
except ValueError as err:
    print("domain error:", err)

# printing round-trips: text -> tree -> text -> tree evaluates identically
invariant = parse("1/((t+0.1)^2)", variable="t")
again = parse(invariant.to_text(), variable="t")
print("I(0) =", invariant.evaluate(0.0), "==", again.evaluate(0.0))

# Bessel factors are registered functions, so the constant-coefficient
# constructions print and re-parse like everything else
bess = parse("4*x^0.5*besselj(1, 2*x^0.25)^4")
print("bessel-bearing expression at x=2:", bess.evaluate(2.0))
print("its derivative at x=2:", bess.differentiate().evaluate(2.0))

# compare against a central finite difference
h = 1e-6
fd = (bess.evaluate(2 + h) - bess.evaluate(2 - h)) / (2 * h)
print("finite-difference check:", fd)
