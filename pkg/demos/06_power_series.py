"""
Power series over O_K
=====================

Weierstrass preparation f = pi^mu u P, Newton polygons, and evaluation at the
cyclotomic points 1 - zeta_{p^s}, where a distinguished P of degree d has
valuation d / phi(p^s) once phi(p^s) > d.
"""
from hidalp.padic import LocalRing
from hidalp.series import PadicPowerSeries, eval_at_cyclotomic, newton_polygon, weierstrass_prep

R = LocalRing(5, 12)
f = PadicPowerSeries.from_ints(R, [25 * 25, 25 * 10, 25 * 5, 25 * 1, 25 * 7], 16)
w = weierstrass_prep(f)
print("mu =", w.mu, " P =", [c.value for c in w.P], " u(0) =", w.u.coeffs[0])
print("round trip:", w.reconstruct() == f)

g = PadicPowerSeries.from_ints(R, [125, 5, 25, 1], 4)
print("Newton polygon vertices:", newton_polygon(g).vertices)
print("root valuations:", newton_polygon(g).root_valuations())

P = PadicPowerSeries(R, w.P, 40)
for s in (2, 3):
    print(f"v(P(1 - zeta_5^{s})) =", eval_at_cyclotomic(P, s).valuation(), " expected", w.degree, "/", 4 * 5 ** (s - 1))
