"""Numeric ground truth: averages, uniformity norms, and the end-to-end
inequality a certificate promises.

Run:  python demos/04_numeric_verification.py
"""

import numpy as np

from sixforms import FormSystem, FunctionTable, check_theorem, lambda_avg, plan, u2_norm
from sixforms.verifier import random_tuple, u2_norm_direct

p = 7
sys_ = FormSystem(p, ((-5, 4, -8), (-2, -5, 4), (6, 5, 7), (9, -10, -9), (5, 0, -1), (4, -9, 3)))
d = sys_.standard_datum()

print("== averages ==")
ones = {l: FunctionTable.constant(p, 1) for l in d.labels}
print("  all-ones average:", lambda_avg(d, ones))
rng = np.random.default_rng(1)
fs = random_tuple(d, 1, rng)
print("  a random unit-modulus tuple:", abs(lambda_avg(d, fs)))

print("\n== uniformity norms ==")
delta = FunctionTable(p, 1, (np.arange(p) == 0).astype(complex))
print(f"  ||delta_0||_U2 = {u2_norm(delta):.6f}  (p^-3/4 = {p**-0.75:.6f})")
print(f"  quadruple-sum oracle agrees: {abs(u2_norm(delta) - u2_norm_direct(delta)) < 1e-9}")

print("\n== the theorem inequality ==")
cert = plan(sys_, "1")
report = check_theorem(cert, trials=20, seed=11)
print("  report:", report.to_json())
