"""
The modular-symbol measure and its L-functions
==============================================

mu(a + p^r Z_p) = alpha^(-r) psi_alpha({a/p^r, oo}) satisfies the distribution
relation.  Its Riemann sum at a character of conductor p^r matches the special
value and the specialization of the one-variable series L_psi(T).
"""
from hidalp.characters import enumerate_characters
from hidalp.eigen import eigen_symbols
from hidalp.measure import (EulerFactorContext, NotOrdinaryError, SymbolMeasure, euler_factor,
                            lfun_congruence_check, series_truncation, two_path_values)
from hidalp.characters import DirichletCharacter
from hidalp.modsym import build_space

S = build_space(11, 2, "gamma0")
mu = {s: SymbolMeasure(eigen_symbols(S, s, 5)[0]) for s in (1, -1)}
print("unit root alpha:", mu[1].alpha)
print("distribution defects for r <= 2:",
      sum(not mu[1].distribution_defect(a, r).is_zero() for r in range(3) for a in range(5 ** r)))

for chi in [c for c in enumerate_characters(25) if c.is_primitive()][:4]:
    v = two_path_values(mu[chi.parity()], chi)
    print(f"chi {chi.exponents}: four paths agree:", v["series"] == v["riemann"] == v["formal"] == v["special"])

psi = [c for c in enumerate_characters(5) if c.parity() == 1][0]
print("L_psi(T) mod (1+T)^5 - 1:", [c.value for c in series_truncation(mu[1], psi, 1).coeffs])

f, g = eigen_symbols(build_space(23, 2, "gamma0"), 1, 5, 12)
rep = lfun_congruence_check(f, g, depth=1, precision=10)
print("level 23: t =", rep.t, " r_q =", rep.r_q, rep.verdict)

try:
    SymbolMeasure(eigen_symbols(build_space(14, 2, "gamma0"), 1, 5)[0])
except NotOrdinaryError as exc:
    print("level 14:", exc)

ctx = EulerFactorContext((3,), 11, 2, {3: (-1, 1)})
print("Euler factor at 3, trivial character:", euler_factor(ctx, DirichletCharacter.trivial(1), 3))
