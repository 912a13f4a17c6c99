"""The quadratic-phase construction at desk scale: a system with no conic
whose sixfold average stays large while every U^2 norm is tiny.

Run:  python demos/05_quadratic_phase_counterexample.py
"""

from sixforms.counterexample import (
    box_triples,
    desk_scale_prime,
    det_check,
    fixed_sqrt2,
    lambda_lower_bound,
    skew_conic_check,
    u2_scan,
)

p = desk_scale_prime()
print(f"desk-scale prime: {p} (= {p % 8} mod 8), sqrt2 = {fixed_sqrt2(p)}")
print("determinant check:", det_check(p))

print("\nalternating phase identity on sampled box triples:",
      skew_conic_check(p, box_triples(p, limit=100)))

lb = lambda_lower_bound(p)
print(f"certified average lower bound: {lb:.3e}  (>= 1e-12)")

scan = u2_scan(p, [k / 64 for k in range(64)])
print(f"best R on a 64-point grid: {scan['best_R']}")
print(f"  ||f_R||_U2 = {scan['u2_norm']:.4e}   vs p^-1/8 = {p**-0.125:.4e}")
print(f"  grid mean of fourth powers = {scan['mean_fourth_power']:.3e}  vs 2 p^-1/2 = {2 * p**-0.5:.3e}")
