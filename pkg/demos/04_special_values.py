"""
Twisted special values
======================

L(alpha, chi) is alpha evaluated on the divisor sum_a conj(chi)(a) {a/D, oo}.
The values vanish off the symbol's parity, and a cuspidal symbol is detected by
the trivial character or a character with conductor in X.
"""
from hidalp.characters import DirichletCharacter, enumerate_characters
from hidalp.eigen import eigen_symbols
from hidalp.modsym import build_space
from hidalp.special_values import all_special_value_valuations, determination_check, special_value

S = build_space(11, 2, "gamma0")
plus, minus = eigen_symbols(S, 1, 5)[0], eigen_symbols(S, -1, 5)[0]

print("L(alpha+, trivial) =", special_value(plus, DirichletCharacter.trivial(1)))
for alpha, name in ((plus, "+"), (minus, "-")):
    vals = all_special_value_valuations(alpha, 7)
    print(f"sign {name}, conductor 7:",
          {tuple(c.exponents): v for c, v in vals.items()}, " (None = zero at precision)")

chi = [c for c in enumerate_characters(7) if c.is_primitive() and c.parity() == -1][0]
print("odd character on the + symbol vanishes:", special_value(plus, chi).is_zero())

print("determination for the - symbol:", determination_check(minus, 5, 2, 11, 1000))
