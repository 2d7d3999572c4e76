"""Dirichlet characters with cyclotomic values, Gauss sums and the conductor set X."""
from __future__ import annotations

import math
from functools import lru_cache
from itertools import product

import sympy

from .padic import CyclotomicElement, LocalRing, PadicScalar


@lru_cache(maxsize=None)
def unit_generators(D):
    """Generators of (Z/D)^x and their orders, from the CRT decomposition with
    smallest primitive roots."""
    gens = []
    for q, k in sorted(sympy.factorint(D).items()):
        qk = q ** k
        rest = D // qk
        if q == 2:
            local = []
            if k >= 2:
                local.append((qk - 1, 2))
            if k >= 3:
                local.append((5, 2 ** (k - 2)))
        else:
            local = [(int(sympy.primitive_root(qk)), (q - 1) * q ** (k - 1))]
        for g, order in local:
            # lift: g mod q^k, 1 mod the rest
            if rest == 1:
                x = g % D
            else:
                x = int(sympy.ntheory.modular.crt([qk, rest], [g, 1])[0])
            gens.append((x, order))
    return tuple(gens)


@lru_cache(maxsize=None)
def _dlog_table(D):
    """Map unit a mod D -> tuple of exponents on unit_generators(D)."""
    gens = unit_generators(D)
    table = {}
    for exps in product(*[range(o) for _, o in gens]):
        a = 1
        for (g, _), e in zip(gens, exps):
            a = a * pow(g, e, D) % D
        table[a % D] = exps
    if D == 1:
        table = {0: ()}
    return table


class DirichletCharacter:
    """Character of (Z/D)^x given by exponents on the fixed generators: the value
    on generator g_i of order o_i is zeta_{o_i}^{e_i}."""

    def __init__(self, modulus, exponents):
        self.modulus = modulus
        gens = unit_generators(modulus)
        if len(exponents) != len(gens):
            raise ValueError("one exponent per generator required")
        self.exponents = tuple(e % o for e, (_, o) in zip(exponents, gens))
        self.order = math.lcm(1, *[o // math.gcd(e, o) for e, (_, o) in zip(self.exponents, gens)])
        self._table = None

    @classmethod
    def trivial(cls, D=1):
        return cls(D, [0] * len(unit_generators(D)))

    def _build(self):
        if self._table is None:
            n = self.order
            gens = unit_generators(self.modulus)
            weights = [e * n // o for e, (_, o) in zip(self.exponents, gens)]
            self._table = {a: sum(w * x for w, x in zip(weights, exps)) % n
                           for a, exps in _dlog_table(self.modulus).items()}
        return self._table

    def exponent(self, a):
        """k with chi(a) = zeta_n^k (n the order), or None if gcd(a, D) > 1."""
        return self._build().get(a % self.modulus)

    def __call__(self, a):
        k = self.exponent(a)
        if k is None:
            return CyclotomicElement(self.order, [0])
        return CyclotomicElement.zeta_power(self.order, k)

    def values_table(self):
        return dict(self._build())

    def embed(self, ring, a):
        """Image of chi(a) in a local ring, through ring.zeta(order)."""
        k = self.exponent(a)
        if k is None:
            return ring.zero()
        return ring.zeta(self.order) ** k

    def embedded_table(self, ring):
        z = ring.zeta(self.order)
        powers = [ring.one()]
        for _ in range(self.order - 1):
            powers.append(powers[-1] * z)
        return {a: powers[k] for a, k in self._build().items()}

    def conj(self):
        return DirichletCharacter(self.modulus, [-e for e in self.exponents])

    def __mul__(self, other):
        D = math.lcm(self.modulus, other.modulus)
        a, b = self.extend(D), other.extend(D)
        return DirichletCharacter(D, [x + y for x, y in zip(a.exponents, b.exponents)])

    def __eq__(self, other):
        return isinstance(other, DirichletCharacter) and self.modulus == other.modulus and self.exponents == other.exponents

    def __hash__(self):
        return hash((self.modulus, self.exponents))

    def is_trivial(self):
        return self.order == 1

    def parity(self):
        """+1 for even, -1 for odd."""
        if self.modulus <= 2:
            return 1
        k = self.exponent(-1)
        return 1 if k == 0 else -1

    def is_even(self):
        return self.parity() == 1

    def conductor(self):
        D = self.modulus
        units = [a for a in range(D) if math.gcd(a, D) == 1] if D > 1 else [0]
        for d in sorted(sympy.divisors(D)):
            if all(self.exponent(a) == 0 for a in units if (a - 1) % d == 0):
                return d
        return D

    def is_primitive(self):
        return self.conductor() == self.modulus

    def _from_values(self, D, fn):
        """Character mod D whose value at a unit equals fn(a) (exponents mod order n)."""
        n = self.order
        exps = []
        for g, o in unit_generators(D):
            k = fn(g)
            if (k * o) % n:
                raise ValueError("values do not define a character")
            exps.append(k * o // n)
        return DirichletCharacter(D, exps)

    def primitive(self):
        """The primitive character inducing this one."""
        f = self.conductor()
        if f == self.modulus:
            return self
        D = self.modulus

        def lift(g):
            a = g
            while math.gcd(a, D) != 1:
                a += f
            return self.exponent(a)

        return self._from_values(f, lift)

    def extend(self, D):
        """The character mod a multiple D induced from this one."""
        if D == self.modulus:
            return self
        if D % self.modulus:
            raise ValueError("modulus must divide D")
        return self._from_values(D, lambda g: self.exponent(g % self.modulus))

    def to_json(self):
        return {"modulus": self.modulus, "exponents": list(self.exponents)}

    def __repr__(self):
        return f"DirichletCharacter({self.modulus}, {list(self.exponents)})"


def enumerate_characters(D):
    gens = unit_generators(D)
    return [DirichletCharacter(D, list(e)) for e in product(*[range(o) for _, o in gens])]


def primitive_characters(D):
    return [c for c in enumerate_characters(D) if c.is_primitive()]


def gauss_sum(chi):
    if not chi.is_primitive():
        raise ValueError("Gauss sum requires a primitive character")
    D = chi.modulus
    if D == 1:
        return CyclotomicElement(1, [1])
    n = math.lcm(chi.order, D)
    acc = CyclotomicElement(n, [0])
    for a in range(D):
        k = chi.exponent(a)
        if k is None:
            continue
        acc = acc + CyclotomicElement.zeta_power(n, k * (n // chi.order) + a * (n // D))
    return acc


def conductor_set_X(p, r, N, eps, B):
    """Primes q in (eps, B] with q = r mod p and q = 1 mod N^2, ascending."""
    if math.gcd(r, p) != 1 or (r - 1) % p == 0:
        raise ValueError("r must be a unit mod p with r != 1 mod p")
    N2 = N * N
    start = int(sympy.ntheory.modular.crt([p, N2], [r % p, 1 % N2])[0]) if N2 > 1 else r % p
    step = p * N2
    out = []
    q = start
    while q <= eps:
        q += step
    while q <= B:
        if sympy.isprime(q):
            out.append(q)
        q += step
    return out


def teichmuller_character(p):
    """omega mod p.  Its value at the smallest primitive root g is zeta_{p-1}, and
    LocalRing.zeta(p-1) is the Teichmuller lift of g, so the embedded values are
    the Teichmuller lifts."""
    return DirichletCharacter(p, [1])
