"""Honda formal groups: the group law, integrality and [p](T) = T^q mod p."""
from ltlab.lubin_tate import (HondaFormalGroup, endo_frobenius_relation, fgl_axioms,
                              group_law, multiplicative_log, verify_p_typical)
from ltlab.padic import hensel_lift_modulus

G = HondaFormalGroup(2, 2, 8)
print("log(T) =", G.log.to_text("T"))
print("F(X, Y) =", G.fgl.to_text())
print("axioms:", fgl_axioms(G.fgl))
print("[2](T) =", G.mult_by(2).to_text("T"))
print("p-typical check:", verify_p_typical(2, 2)["pass"])

print("multiplicative law:", group_law(multiplicative_log(6)).to_text())

M = hensel_lift_modulus(3, 2, 8)
rel = endo_frobenius_relation(M.gen() + 1, 3, 2, 11)
print("[sigma a](T^p) = [a](T)^p over F_9:", rel["pass"])
