# Mixed polynomial matrices and the index of a DAE

# A system matrix Q(t) + T(t) mixes exactly known coefficients (Q) with
# independent parameters (T). Its determinant degree comes from the layered
# form [[Q, I], [T, D]], and the number of moves the descent needs gives the
# smallest Smith-McMillan exponent at infinity.

from degdet import GF, LaurentMatrix, MixedPolySystem, dae_index, mixed_poly_degdet
from degdet.linalg import ratmatrix, smith_mcmillan

F = GF(10007)

Q = [["1", "t^2"], ["0", "1"]]
sys_ = MixedPolySystem(F, 2, LaurentMatrix.from_entries(F, Q), ())
print("Smith-McMillan exponents:", smith_mcmillan(F, ratmatrix(F, Q)).alpha)

for delta in (2, 3):
    rep = dae_index(sys_, delta)
    print(f"delta={delta}:", "exceeds" if rep.exceeds else f"index {rep.index}")

# Now with a couple of free parameters in the second row

Q = [["t", "1"], ["0", "0"]]
T = ((1, 0, "x", 0), (1, 1, "y", 1))
sys_ = MixedPolySystem(F, 2, LaurentMatrix.from_entries(F, Q), T)
print("deg det:", mixed_poly_degdet(sys_).value)
print("index:", dae_index(sys_, 3).index)
