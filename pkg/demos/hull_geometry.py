"""Tour of the convex-hull kernel every dynamics step is built on.

The objective gradients at a point span a hull C(x); the flow constantly
asks three questions about it: what is the minimum-norm element (the
steepest common-descent direction), what is the minimum-norm element of a
shifted copy, and which vertices are optimal for a linear functional.
"""

import numpy as np

from paretodyn import (
    GradientBundle,
    linear_min_face,
    min_norm_in_hull,
    project_shifted,
    select_direction,
)

# Two gradients pulling in opposite directions along the first axis: the
# hull straddles the origin, so the common-descent direction is zero and
# the point is Pareto critical.
bundle = GradientBundle(np.array([[2.0, 0.0], [-1.0, 0.0]]))
sel = min_norm_in_hull(bundle)
print("hull of (2,0) and (-1,0):")
print("  weights       :", sel.theta)
print("  min-norm point:", sel.g, "(Pareto critical: ~0)")

# The same certificate every caller can recheck: each vertex g_i satisfies
# <g_i - g, g> >= 0 up to the solve tolerance.
checks = (bundle.grads - sel.g) @ sel.g
print("  vertex certificates (should be >= ~0):", checks)

# Shifted projection: the inertial flow projects the origin onto C(x) + a,
# where a is the acceleration; the weights stay attached to the gradients.
bundle = GradientBundle(np.array([[1.0, 0.0], [0.0, 1.0]]))
sel, p = project_shifted(bundle, np.array([-0.5, -0.5]))
print("\nshifting the symmetric pair by (-1/2, -1/2):")
print("  projected point:", p, " weights:", sel.theta)

# Linear minimization with tie awareness: for w = -v the optimal face tells
# the flow which gradients stay active while the state moves with velocity v.
bundle = GradientBundle(np.array([[1.0, 2.0], [3.0, -1.0]]))
v = np.array([0.0, 1.0])
print("\nmoving with velocity", v, "over the bundle rows (1,2), (3,-1):")
print("  optimal face:", linear_min_face(bundle, -v))
sel = select_direction(bundle, v)
print("  selected direction:", sel.g, " weights:", sel.theta)

# At (numerically) zero velocity the inclusion is set-valued; the selection
# rule resolves it deterministically with the minimum-norm element.
sel = select_direction(bundle, np.zeros(2))
print("\nat rest the selection falls back to the min-norm element:")
print("  direction:", sel.g, " weights:", sel.theta, " face:", sel.active_face)
