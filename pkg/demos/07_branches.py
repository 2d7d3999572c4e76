"""
Branch geometry
===============

Two branches T = g_1(Y), T = g_2(Y) cross with multiplicity ord_Y(g_1 - g_2);
the same number is the dimension of a local quotient ring.  L-families whose
differences vanish to that order witness the crossing.  A ramified branch
T = pi^t u(Y) Y^e makes dY/dT acquire a pole of order e - 1.
"""
import random

from hidalp.branches import (BranchPair, RamifiedBranchModel, distance, intersection_multiplicity_ord,
                             intersection_multiplicity_quotient, inverse_derivative, l_ideal_data,
                             ramification_from_lfunction, synthetic_l_family, taylor_agreement_check)
from hidalp.padic import LocalRing
from hidalp.series import PadicPowerSeries

R = LocalRing(5, 8)
print("d((0, 0), (5, 25)) =", distance([R(0), R(0)], [R(5), R(25)]))

pair = BranchPair(5, 0, PadicPowerSeries.from_ints(R, [0, 1, 0, 1], 12),
                  PadicPowerSeries.from_ints(R, [0, 1, 0, 2], 12))
print("intersection multiplicity:", intersection_multiplicity_ord(pair),
      " from the quotient ring:", intersection_multiplicity_quotient(pair))

L1, L2 = synthetic_l_family(pair, ["chi0", "chi1", "chi2"], random.Random(0), witness="chi1")
v = taylor_agreement_check(pair, l_ideal_data(L1, L2))
print("crossing check:", v.verdict, " witness", v.witness, " orders", v.orders)

model = RamifiedBranchModel(1, 3, PadicPowerSeries.from_ints(R, [2, 1], 8))
lap = inverse_derivative(model)
print("pole order of dY/dT:", lap.pole, " leading", lap.leading())
fam = {"chi": PadicPowerSeries.from_ints(R, [0, 1, 3], 8)}
print("ramification read from L:", ramification_from_lfunction(model, fam))
