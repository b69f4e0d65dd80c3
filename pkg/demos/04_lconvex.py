# Steepest descent on a discrete convex function

# g(x) = sum of convex phi_ij(x_j - x_i) over arcs is L-convex, the shape of
# a min-cost flow dual. Each step moves x by a 0/1 vector, picking the one
# that lowers g the most.

import numpy as np

from degdet.lconvex import box_minimum, iteration_bound_check, network_flow_dual, random_convex_phi, sda_zn

rng = np.random.default_rng(3)
n = 4
phis = {(i, j): random_convex_phi(rng, reach=4) for i in range(n) for j in range(n) if i != j and rng.random() < 0.5}
g = network_flow_dual(n, phis)

x0 = (0,) * n
if g(x0) == float("inf"):
    raise SystemExit("start point outside the domain, try another seed")

x, trace = sda_zn(g, x0, spot_check=rng)
print("minimizer:", x, "value:", g(x), "steps:", trace.steps)
for u, v in zip(trace.directions, trace.values[1:]):
    print(u, v)

# The number of steps matches the distance from x0 to the closest minimizer
# above it, so a box of that size is enough to check the answer.

print("box check:", iteration_bound_check(trace, g, x0))
print("local box min:", box_minimum(g, [a - 2 for a in x], [a + 2 for a in x])[0])
