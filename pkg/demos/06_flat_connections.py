"""Flat equisingular connections from a graded Lie element beta."""
from ltlab import connection as C

D = 6
beta = C.parse_beta("e1 + e2", D)
lam1 = C.lambda1_from_beta(beta)
lam0 = C.solve_lambda0(lam1)
print("beta     =", beta.to_text())
print("lambda_1 =", lam1.to_text())
print("lambda_0 =", lam0.to_text())
print("flatness:", C.flatness_check(lam0, lam1))
print("perturbed control is flat:", C.perturbed_control(beta)["flat"])

print("v_2 acting on u^3:", C.witt_apply(2, {3: 1}))
print("[v_k, v_l] = (l - k) v_(k+l) for k, l <= 6:",
      all(C.witt_bracket_check(k, l)["pass"] for k in range(1, 7) for l in range(1, 7)))
