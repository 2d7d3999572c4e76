"""
p-adic rings at finite precision
================================

Elements of Z_p, its unramified extensions and Eisenstein extensions, stored
as residues mod pi^m.  Valuations are reported in units where v(p) = 1.
"""
from fractions import Fraction

from hidalp.padic import LocalRing, teichmuller, valuation

# rational valuations
print("v_5(50) =", valuation(50, 5), "  v_3(2/9) =", valuation(Fraction(2, 9), 3))

# the Teichmuller lift of 2 in Z_5, to four digits
w = teichmuller(5, 2, 4)
print("omega(2) mod 5^4 =", w, "  omega(2)^4 mod 5^4 =", pow(w, 4, 5 ** 4))

# Z_5 and the square root of -1 inside it
R = LocalRing(5, 6)
i = R.zeta(4)
print("zeta_4 in Z_5:", i, "  zeta_4^2 + 1 =", i * i + R.one())

# Z_3[zeta_9]: the uniformizer zeta - 1 has valuation 1/6
C = LocalRing.cyclotomic(3, 2, 6)
zeta = C.one() + C.pi()
print("ramification index of Z_3[zeta_9]:", C.e, "  v(zeta - 1) =", C.pi().valuation())
print("zeta^9 == 1:", zeta ** 9 == C.one(), "  zeta^3 == 1:", zeta ** 3 == C.one())
