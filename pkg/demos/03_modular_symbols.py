"""
Modular symbols and eigen-symbols
=================================

Manin-symbol spaces for Gamma_0(N) and Gamma_1(N), Hecke operators, and the
+/- eigen-symbols normalized to be primitive in the integral lattice.
"""
from hidalp import linalg
from hidalp.eigen import eigen_symbols, qexpansion_exact
from hidalp.modsym import build_space, sturm_bound

S = build_space(11, 2, "gamma1")
print("Gamma_1(11), weight 2: dimension", S.dimension, " cuspidal", S.cuspidal_dimension())

S = build_space(11, 2, "gamma0")
(f,) = eigen_symbols(S, 1, 5)
print("level 11 eigenvalues a_l:", {l: str(f.exact_eigenvalue(l)[0]) for l in (2, 3, 5, 7, 13)})
print("q-expansion:", " ".join(str(a[0]) for a in qexpansion_exact(f, sturm_bound(11, 2))))
print("coordinate valuation (0 means primitive):", f.coordinate_valuation())

# level 23: a_2 satisfies x^2 + x - 1 and 5 ramifies in Q(sqrt 5)
S23 = build_space(23, 2, "gamma0")
T2 = linalg.restrict(S23.hecke_operator(2), S23.cuspidal_sign_subspace(1))
print("level 23, charpoly of T_2 on the + part:", linalg.charpoly(T2).as_expr())
f, g = eigen_symbols(S23, 1, 5)
print("ring of the level-23 symbols:", f.ring)

# weight 4, level 5, in Gamma_1(5)
(h,) = eigen_symbols(build_space(5, 4, "gamma1"), 1, 3)
print("weight 4 level 5 q-expansion:", " ".join(str(a[0]) for a in qexpansion_exact(h, 10)))
