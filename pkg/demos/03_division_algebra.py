"""The maximal order o_D = W(F_q)<F>/(F^n - p) and the Weil group inside D."""
import random

from ltlab.division_algebra import (ODElem, WeilElem, conj_by_F, d_inverse, od_valuation,
                                    random_od, weil_embed)
from ltlab.padic import hensel_lift_modulus

rng = random.Random(0)
M = hensel_lift_modulus(3, 2, 6)
F = ODElem.F(M)
w = ODElem(M, [M.gen()])
print("F^2 =", F ** 2)
print("F w =", F * w, "   w^3 F =", ODElem(M, [M.gen() ** 3]) * F)
print("v(F) =", od_valuation(F))

x = random_od(M, rng) * F + 1
print("x =", x, " v(x) =", od_valuation(x))
print("x * x^-1 == 1:", x * d_inverse(x) == 1)
a = M.random_element(rng, unit=True)
print("F a F^-1 == sigma(a):", conj_by_F(a) == ODElem(M, [a.frobenius()]))

g = WeilElem(M.gen(), 1)
h = WeilElem(M.one() + 3, 3)
print("weil_embed is multiplicative:", weil_embed(g) * weil_embed(h) == weil_embed(g * h))
