"""Exact linear algebra over F_p: the substrate everything else runs on.

Run:  python demos/01_exact_linear_algebra.py
"""

from sixforms import FpMatrix, det, kernel_basis, solve, sqrt_mod

p = 101

print("== square roots mod p ==")
for a in (0, 2, 3, 5):
    print(f"  sqrt({a}) mod {p} =", sqrt_mod(a, p))

print("\n== determinants and kernels ==")
m = FpMatrix([[2, 4, 1], [6, 1, 0], [0, 5, 9]], p)
print("  det", m.tolist(), "=", det(m))
flat = FpMatrix([[1, 1, 0], [2, 2, 0]], p)
ker = kernel_basis(flat)
print("  kernel of x+y (stated twice):", ker.tolist())
print("  check M @ K^T == 0:", (flat @ ker.T).is_zero())

print("\n== solving ==")
b = [3, 6]
sol = solve(FpMatrix([[1, 2], [2, 4]], 7), b)
print("  a consistent rank-1 system over F_7:", sol)
print("  an inconsistent one:", solve(FpMatrix([[1, 2], [2, 4]], 7), [3, 7]))

print("\n== word-sized moduli ==")
big = (1 << 61) - 1
m2 = FpMatrix([[2, 1], [1, 1]], big)
print(f"  inverse over p = 2^61 - 1: {m2.inverse().tolist()}")
