"""W(F_q) as (Z/p^N)[x]/(m): Teichmueller lifts, Frobenius, log and exp."""
from ltlab.padic import hensel_lift_modulus, padic_exp, padic_log, teichmueller, unit_log

M = hensel_lift_modulus(2, 3, 8)
print(f"W(F_8) mod 2^8 with modulus coefficients {M.m}")
w = M.gen()
print("w^7 == 1:", w ** 7 == 1)
print("sigma(w) == w^2:", w.frobenius() == w ** 2, " sigma^3 == id:", w.frobenius(3) == w)

F = M.residue_field()
for c in list(F.elements())[1:4]:
    t = teichmueller(c, M)
    print(f"Teichmueller lift of {c}: {t!r}   unit_log = {unit_log(t)!r}")

a = M.from_coeffs([4, 8, 12])
u = padic_exp(a)
print("exp(a) =", u)
print("log(exp(a)) == a:", padic_log(u) == a)
