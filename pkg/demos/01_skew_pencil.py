# A skew-symmetric pencil where commuting variables lose information

# The 3x3 matrix below is skew-symmetric, so its ordinary determinant is
# identically zero once x1, x2, x3 commute. Treated as a matrix over the free
# skew field it is invertible, and the degree of its Dieudonne determinant
# turns out to be c12 + c13 + c23.

import numpy as np

from degdet import MINUS_INF, GF, LinearPencil, commutative_degdet_oracle, sda_degdet

F = GF(10007)


def skew(c12, c13, c23):
    z = "0"
    return LinearPencil.from_terms(F, 3, 3, {
        1: [[z, f"t^{c12}", z], [f"-t^{c12}", z, z], [z, z, z]],
        2: [[z, z, f"t^{c13}"], [z, z, z], [f"-t^{c13}", z, z]],
        3: [[z, z, z], [z, z, f"t^{c23}"], [z, f"-t^{c23}", z]],
    })


A = skew(1, 2, 3)
res = sda_degdet(A)
print("deg Det:", res.value, "after", res.iterations, "moves")

# Substituting random field values for the variables only sees the
# commutative determinant, which vanishes here.

print("commutative:", commutative_degdet_oracle(A, trials=5))
assert commutative_degdet_oracle(A) is MINUS_INF

# The trace records r + s and the current upper bound at each move. The bound
# drops by kappa * (r + s - n) every time.

for step in res.trace:
    print(step)

# Random weights, same story

rng = np.random.default_rng(0)
for _ in range(5):
    c = rng.integers(-3, 6, 3)
    print(tuple(int(x) for x in c), sda_degdet(skew(*c), variant="kappa").value)
