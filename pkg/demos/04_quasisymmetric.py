"""QSym and NSym: quasi-shuffle, coproduct, antipode and the Sym embedding."""
from ltlab import qsym as Q

a, b = Q.M((1,)), Q.M((2,))
print("M(1) * M(2) =", (a * b).to_text())
print("Delta M(1,2) =", Q.qsym_comul(Q.M((1, 2))).to_text())
print("S(M(1,2)) =", Q.antipode(Q.M((1, 2))).to_text())
print("S(Z(3)) =", Q.nsym_antipode(Q.Z(3)).to_text())

left, right, unit = Q.antipode_axioms(Q.M((2, 1, 1)))
print("antipode axioms hold on M(2,1,1):", left == unit and right == unit)

f = Q.SymElem.m(2, 1)
print("m(2,1) in QSym:", Q.embed_sym(f).to_text())
print("m(1,1) in the power-sum basis:", Q.SymElem.m(1, 1).to_basis("p").to_text())
print("graded dimensions of QSym:", [Q.graded_dimension(k) for k in range(8)])
print("free Lie generators by degree:", [Q.lie_generator_count(k) for k in range(1, 9)])
