"""Inverse direction, exact constructions.

Starting from the reduced problem -v'' + k/(t+m)^2 v = lambda v on (0, pi),
four coefficient families admit closed-form canonical problems.  Each
construction below reproduces the reciprocal-quadratic potential through
its own map to within rounding.
"""

import math

from slpkit import PaineSpec, build_case, roundtrip_invariant

CASES = [
    # vanishing potential, constant weight: power-law p from the indicial root
    ("case1", PaineSpec(k=2.0, m=0.1), dict(r0=1.0, branch="plus")),
    ("case1", PaineSpec(k=2.0, m=0.1), dict(r0=1.0, branch="minus")),
    # at k = 3/4 two distinct forms exist
    ("case1", PaineSpec(k=0.75, m=0.1), dict(r0=1.0, k34_branch="power")),
    ("case1", PaineSpec(k=0.75, m=0.1), dict(r0=1.0, k34_branch="exponential")),
    # constant potential, quadratic weight: equal and real-distinct roots
    ("case2-A1", PaineSpec(k=0.75, m=0.1), dict(q0=1.0)),
    ("case2-A2", PaineSpec(k=0.75, m=1.5), dict(q0=1.0)),
    ("case2-B", PaineSpec(k=3.0, m=0.1), dict(q0=1.0)),
    # reciprocal-linear transformation weight: polynomial coefficients
    ("case4", PaineSpec(k=1.0, m=0.1), dict(C1=2.0)),
    # and its generalized-power variant
    ("case4-general", PaineSpec(k=1.0, m=0.1), dict(C1=2.0, n_r=2.75)),
]

for label, spec, params in CASES:
    result = build_case(label, spec, **params)
    residual = roundtrip_invariant(result, spec, samples=101)
    detail = ", ".join(f"{key}={value}" for key, value in sorted(params.items()))
    print(f"{label:14s} k={spec.k:<5g} m={spec.m:<4g} ({detail})")
    print(f"    interval: [{result.canonical.a:.6g}, {result.canonical.b:.6g}]")
    print(f"    p(x) = {result.canonical.p}")
    print(f"    q(x) = {result.canonical.q}")
    print(f"    r(x) = {result.canonical.r}")
    print(f"    map: t = {result.map.t_text}")
    print(f"    round-trip residual over 101 points: {residual:.2e}")
    print()

print("the classical parameterization (k=1, m=0.1, C1=2) reproduces the")
print("known polynomial coefficients p=(x+sqrt(0.2))^3, q=4(x+sqrt(0.2)),")
print("r=(x+sqrt(0.2))^5 with right endpoint sqrt(2 pi + 0.2) - sqrt(0.2):")
res = build_case("case4", PaineSpec(1.0, 0.1), C1=2.0)
print(f"    b = {res.canonical.b!r}")
print(f"    sqrt(2 pi + 0.2) - sqrt(0.2) = {math.sqrt(2 * math.pi + 0.2) - math.sqrt(0.2)!r}")
