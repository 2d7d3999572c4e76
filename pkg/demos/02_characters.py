"""
Dirichlet characters and Gauss sums
===================================

Characters take values in exact cyclotomic integers.  Conductors, primitive
characters, Gauss sums and the conductor sets used to test special values.
"""
from hidalp.characters import conductor_set_X, enumerate_characters, gauss_sum, primitive_characters
from hidalp.padic import CyclotomicElement

for D in (5, 8, 12, 25):
    chars = enumerate_characters(D)
    print(f"mod {D}: {len(chars)} characters, {len(primitive_characters(D))} primitive,"
          f" conductors {sorted({c.conductor() for c in chars})}")

# the quadratic character of conductor 5 has tau^2 = 5
quad = [c for c in enumerate_characters(5) if c.order == 2][0]
tau = gauss_sum(quad)
print("tau(quadratic mod 5)^2 == 5:", tau * tau == CyclotomicElement(tau.n, [5]))

# primes q = 2 mod 5 with q = 1 mod 11^2: conductors that detect level-11 symbols
print("X(5, 2, 11) up to 5000:", conductor_set_X(5, 2, 11, 0, 5000))
