"""
Scale shifts on the unit disc
=============================

Discrete-time signals have no obvious "stretch the time axis" operation.
The trick: a scale change s -> alpha s acts on the Laplace-transform side,
and a conformal map carries it to the unit disc, where it becomes a
hyperbolic self-map of the disc.  This demo builds such maps, classifies
them, and inspects their fixed points and contraction rates.
"""

import numpy as np

from scalekit import SuMatrix, make_scale_shift

# A "zooming" scale shift: alpha < 1.
m = make_scale_shift(0.25, theta=0.0)
print("scale shift alpha=0.25:", m)
print("  classification:", m.classify().value)
print("  multiplier:", m.multiplier())

fp = m.fixed_points()
print("  fixed points:", fp.xi1, fp.xi2, "(attracting, repelling)")

# Iterating the map pulls every disc point to the attracting fixed point.
z = 0.3 + 0.4j
for _ in range(40):
    z = m.apply(z)
print("  40 iterations from 0.3+0.4j land at:", z)

# Composition multiplies the underlying scale factors.
twice = m.compose(m)
print("composed with itself:", twice)
print("  equals alpha=0.0625 shift:",
      twice.entry_distance(make_scale_shift(0.0625)) < 1e-14)

# The inverse zooms out; its matrix is the cofactor form (a*, -b).
print("inverse:", m.inverse())

# The group relation |a|^2 - |b|^2 = 1 survives every operation.
rng = np.random.default_rng(0)
products = m
for alpha in rng.uniform(0.2, 5.0, 10):
    products = products.compose(make_scale_shift(alpha, 0.0))
det = abs(products.a) ** 2 - abs(products.b) ** 2
print("determinant after 10 random compositions:", det)
