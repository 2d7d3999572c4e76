"""
Congruences: q-expansions against special values
=================================================

r_q is the largest r with a_n(f) = a_n(g) mod pi^r up to the Sturm bound; r_L
is the largest r with the special values congruent mod pi^r after the best unit
rescaling.  The two agree on the examples below.
"""
import random

from hidalp.congruence import (coordinate_congruence_exponent, default_characters, equivalence_report,
                               random_symbol_pair, special_value_congruence_exponent)
from hidalp.eigen import eigen_symbols
from hidalp.modsym import build_space
from hidalp.padic import LocalRing
from hidalp.special_values import character_test_set

f, g = eigen_symbols(build_space(23, 2, "gamma0"), 1, 5, 12)
rep = equivalence_report(f, g, precision=10, characters=default_characters(f, g, B=1000))
print("level 23 pair:", rep.r_q, rep.r_L, rep.verdict)

# random cuspidal symbols that differ by pi^r
S = build_space(11, 2, "gamma1")
R = LocalRing(5, 10)
chars = character_test_set(5, 2, 11, 1000)
rng = random.Random(1)
for r in range(4):
    a1, a2 = random_symbol_pair(S, 1, R, r, rng)
    print(f"r = {r}: generators {coordinate_congruence_exponent(a1, a2)},"
          f" special values {special_value_congruence_exponent(a1, a2, chars)}")
