"""Multiple zeta values with error bounds, the stuffle relation and 1/Gamma."""
from ltlab import multizeta as Z
from ltlab import qsym as Q

print("zeta(3)   =", Z.zeta(3).to_str(), "+/-", Z.zeta(3).err_str())
print("zeta(2,1) =", Z.mzv((2, 1)).to_str())
print("gamma     =", Z.euler_gamma().to_str())

x, y = Q.M((2,)), Q.M((3,))
lhs = Z.eval_qsym(x) * Z.eval_qsym(y)
rhs = Z.eval_qsym(x * y)
print(f"zeta(2) zeta(3) = {lhs.to_str(20)}")
print(f"{(x * y).to_text()} -> {rhs.to_str(20)}")

for n in range(1, 4):
    rep = Z.zeta_even_check(n)
    print(f"zeta({2 * n}) from B_{2 * n} = {rep['B_2n']}: residual {rep['residual']}")

print("1/Gamma(z) series:", Z.gamma_reciprocal_series(5, 15))
print("check against 1/Gamma:", Z.gamma_series_check()["pass"])
