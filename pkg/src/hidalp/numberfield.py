"""Number fields Q[x]/(g) for Hecke eigenvalues, and the local ring they embed into."""
from __future__ import annotations

from fractions import Fraction

import sympy

from .padic import LocalRing, find_roots, poly_eval


class NumberField:
    """K = Q[x]/(g) with g monic irreducible; elements are tuples of Fractions in
    the power basis 1, theta, ..., theta^{d-1}."""

    def __init__(self, g):
        g = [Fraction(c) for c in g]
        if g[-1] != 1:
            raise ValueError("defining polynomial must be monic")
        self.g = tuple(g)
        self.degree = len(g) - 1

    def __repr__(self):
        return f"NumberField({[str(c) for c in self.g]})"

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.g == other.g

    def __hash__(self):
        return hash(self.g)

    def elt(self, coeffs):
        coeffs = [Fraction(c) for c in coeffs]
        return self.reduce(coeffs)

    def scalar(self, c):
        return (Fraction(c),) + (Fraction(0),) * (self.degree - 1)

    def zero(self):
        return self.scalar(0)

    def one(self):
        return self.scalar(1)

    def gen(self):
        if self.degree == 1:
            return (-self.g[0],)
        return self.elt([0, 1])

    def reduce(self, coeffs):
        d = self.degree
        c = list(coeffs) + [Fraction(0)] * max(0, d - len(coeffs))
        for k in range(len(c) - 1, d - 1, -1):
            t = c[k]
            if t:
                for j in range(d):
                    c[k - d + j] -= t * self.g[j]
        return tuple(c[:d])

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def mul(self, a, b):
        if self.degree == 1:
            return (a[0] * b[0],)
        prod = [Fraction(0)] * (2 * self.degree - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return self.reduce(prod)

    def smul(self, c, a):
        c = Fraction(c)
        return tuple(c * x for x in a)

    def is_zero(self, a):
        return not any(a)

    def inv(self, a):
        if self.degree == 1:
            return (1 / a[0],)
        x = sympy.Symbol("x")
        A = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(a)], x, domain="QQ")
        G = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(self.g)], x, domain="QQ")
        inv = sympy.invert(A, G)
        coeffs = [Fraction(int(sympy.fraction(c)[0]), int(sympy.fraction(c)[1])) for c in reversed(inv.all_coeffs())]
        return self.reduce(coeffs)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def denominator(self, a):
        from math import lcm
        return lcm(1, *[c.denominator for c in a])

    def is_rational(self, a):
        return not any(a[1:])

    def to_str(self, a):
        if self.degree == 1:
            return str(a[0])
        terms = [f"{c}*t^{i}" if i else str(c) for i, c in enumerate(a) if c]
        return " + ".join(terms) if terms else "0"

    def embed(self, a, root):
        """Image of a under theta -> root (a PadicScalar)."""
        return poly_eval(list(a), root)


def local_ring_for(g, p, prec=20):
    """A LocalRing containing the roots of the integer polynomial g (low to high),
    together with the list of roots in it.

    Tried in order: Z_p; the unramified extension cut out by g; an Eisenstein
    shift x = a + pi for a residue root a of g; a quadratic ramified ring
    Z_p[sqrt(p * u)] found by completing the square.  Raises ValueError if none
    applies."""
    g = [int(c) for c in g]
    d = len(g) - 1
    R = LocalRing(p, prec)
    if d == 1:
        return R, find_roots(g, R)
    roots = find_roots(g, R)
    if len(roots) == d:
        return R, roots
    x = sympy.Symbol("x")
    gp = sympy.Poly(list(reversed(g)), x, modulus=p)
    if gp.is_irreducible:
        R = LocalRing(p, prec, unramified=g)
        return R, find_roots(g, R)
    for a in range(p):
        shifted = sympy.Poly(sum(c * (x + a) ** i for i, c in enumerate(g)), x)
        coeffs = [int(c) for c in reversed(shifted.all_coeffs())]
        try:
            R = LocalRing(p, prec, eisenstein=coeffs)
        except ValueError:
            continue
        return R, find_roots(g, R)
    if d == 2 and p != 2:
        b, c = g[1], g[0]
        disc = b * b - 4 * c
        v = 0
        while disc % p == 0:
            disc //= p
            v += 1
        if v % 2 == 1:
            R = LocalRing(p, prec, eisenstein=[-p * disc, 0, 1])
            return R, find_roots(g, R)
    raise ValueError(f"no supported local ring splits {g} at p={p}")
