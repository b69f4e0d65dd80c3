# Weighted bipartite matching as a degree computation

# Put x_ij * t^(w_ij) at position (i, j). The highest power of t that
# survives in the determinant is the best perfect matching weight, and the
# row/column shifts applied along the way read off a feasible dual.

import itertools

import numpy as np

from degdet import MatchingInstance, solve_weighted_matching

rng = np.random.default_rng(7)
n = 5
edges = tuple((i, j, int(rng.integers(0, 10))) for i in range(n) for j in range(n) if rng.random() < 0.6)
inst = MatchingInstance(n, edges)
out = solve_weighted_matching(inst)
print("value:", out.value)

# Brute force over permutations to compare

w = {(i, j): c for i, j, c in edges}
best = max(
    (sum(w[i, p[i]] for i in range(n)) for p in itertools.permutations(range(n)) if all((i, p[i]) in w for i in range(n))),
    default=None,
)
print("brute force:", best)

if out.dual is not None:
    print("p =", out.dual.p)
    print("q =", out.dual.q)
    # p_i + q_j >= w_ij on every edge, with equality on an optimal matching
    slack = min(out.dual.p[i] + out.dual.q[j] - c for i, j, c in edges)
    print("smallest slack:", slack)
