"""Functionals on modular symbols and integrally normalized eigen-symbols."""
from __future__ import annotations

import math
from fractions import Fraction

import sympy
from sympy import QQ

from . import linalg
from .numberfield import NumberField, local_ring_for
from .padic import PadicScalar, find_roots


class NonSemisimpleError(RuntimeError):
    """Raised when a Hecke block cannot be split into multiplicity-one eigenspaces."""


class SymbolFunctional:
    """Element of Hom(M, O): the values on every Manin-symbol generator of a space.

    values[g] is a ring element (PadicScalar, or anything with + and *)."""

    def __init__(self, space, values, ring=None):
        self.space = space
        self.values = list(values)
        self.ring = ring

    def generator_value(self, g):
        return self.values[g]

    def evaluate(self, terms):
        """Value on sum coeff * generator for terms [(g, coeff)]."""
        acc = self.ring.zero() if self.ring is not None else 0
        for g, c in terms:
            if c:
                acc = acc + self.values[g] * c
        return acc

    def __add__(self, other):
        return SymbolFunctional(self.space, [a + b for a, b in zip(self.values, other.values)], self.ring)

    def __sub__(self, other):
        return SymbolFunctional(self.space, [a - b for a, b in zip(self.values, other.values)], self.ring)

    def scale(self, c):
        return SymbolFunctional(self.space, [v * c for v in self.values], self.ring)

    def __neg__(self):
        return self.scale(-1)

    def coordinate_valuation(self):
        """min over generators of the valuation (in pi units of the ring), or None if all vanish."""
        best = None
        for v in self.values:
            o = v.ord() if isinstance(v, PadicScalar) else None
            if o is not None and (best is None or o < best):
                best = o
        return best

    def is_zero(self):
        return self.coordinate_valuation() is None

    def is_integral(self):
        return all(isinstance(v, PadicScalar) for v in self.values)


def functional_from_column(space, column, ring):
    """Functional with the given values on the basis (rationals) reduced into ring."""
    vals = []
    for coords in space.coords:
        acc = Fraction(0)
        for b, v in coords.items():
            acc += v * Fraction(column[b])
        vals.append(ring(acc))
    return SymbolFunctional(space, vals, ring)


def integral_functionals(space, columns):
    """Scale each rational column so its generator values are coprime integers;
    returns integer value lists (one per column)."""
    out = []
    for col in columns:
        vals = []
        for coords in space.coords:
            acc = Fraction(0)
            for b, v in coords.items():
                acc += v * Fraction(col[b])
            vals.append(acc)
        den = math.lcm(1, *[x.denominator for x in vals])
        ints = [int(x * den) for x in vals]
        g = math.gcd(*ints) if any(ints) else 1
        out.append([x // g for x in ints])
    return out


def _restricted(space, op, Bf):
    """Action c -> op c on functionals, restricted to the rows of Bf."""
    return linalg.restrict(op.transpose(), Bf)


def _qq(x):
    return QQ(int(x.numerator), int(x.denominator))


def _candidate_combinations(primes):
    """Deterministic list of small integer combinations of Hecke operators."""
    combos = [{primes[0]: 1}]
    if len(primes) > 1:
        combos += [{primes[0]: 1, primes[1]: 1}, {primes[0]: 1, primes[1]: -1}, {primes[0]: 1, primes[1]: 2}]
    if len(primes) > 2:
        combos += [{primes[0]: 1, primes[1]: 2, primes[2]: 3}, {primes[0]: 3, primes[1]: -1, primes[2]: 2}]
    if len(primes) > 3:
        combos += [{primes[0]: 1, primes[1]: 3, primes[2]: -2, primes[3]: 5}]
    return combos


def _poly_list(P):
    """Integer coefficients low to high of a monic rational Poly with integral coefficients."""
    out = []
    for c in reversed(P.all_coeffs()):
        num, den = sympy.fraction(c)
        if den != 1:
            raise NonSemisimpleError(f"non-integral characteristic polynomial {P}")
        out.append(int(num))
    return out


class EigenSymbol(SymbolFunctional):
    """A Hecke eigen-functional of fixed sign, normalized to be primitive in
    Hom(M(Z), O) with value 1 at the first generator of minimal valuation."""

    def __init__(self, space, sign, field, column, root, ring, label=""):
        self.space = space
        self.sign = sign
        self.field = field
        self.column = column          # K-vector on the basis
        self.root = root              # image of theta in ring
        self.label = label
        self._exact_eigs = {}
        self._diamonds = {}
        exact = self._exact_generator_values()
        den = math.lcm(1, *[c.denominator for v in exact for c in v])
        self.exact_values = [tuple(c * den for c in v) for v in exact]
        emb = [field.embed(v, root) for v in self.exact_values]
        best, i0 = None, None
        for i, x in enumerate(emb):
            o = x.ord()
            if o is not None and (best is None or o < best):
                best, i0 = o, i
        if i0 is None:
            raise ValueError("eigen-functional vanishes at working precision")
        self.leading_index = i0
        self.scale_factor = emb[i0]
        self.lattice_shift = best
        # beta = w / w_{i0}: divide by pi^best then by the unit part
        unit = emb[i0].divide_by_pi(best) if best else emb[i0]
        uinv = unit.inverse()
        vals = []
        for x in emb:
            y = x.divide_by_pi(best) if best else x
            vals.append(y * uinv)
        super().__init__(space, vals, ring)

    def _exact_generator_values(self):
        K = self.field
        out = []
        for coords in self.space.coords:
            acc = K.zero()
            for b, v in coords.items():
                acc = K.add(acc, K.smul(v, self.column[b]))
            out.append(acc)
        return out

    def _apply_exact(self, op):
        """K-vector op c for the stored column c."""
        K = self.field
        rows = op.to_list()
        out = []
        for row in rows:
            acc = K.zero()
            for j, x in enumerate(row):
                if x:
                    acc = K.add(acc, K.smul(Fraction(int(x.numerator), int(x.denominator)), self.column[j]))
            out.append(acc)
        return out

    def _pivot(self):
        for j, v in enumerate(self.column):
            if not self.field.is_zero(v):
                return j
        raise ValueError("zero eigenvector")

    def exact_eigenvalue(self, l):
        """a_l in K (the U_l eigenvalue when l | N)."""
        if l not in self._exact_eigs:
            img = self._apply_exact(self.space.hecke_operator(l))
            j = self._pivot()
            a = self.field.div(img[j], self.column[j])
            if any(not self.field.is_zero(self.field.sub(x, self.field.mul(a, c))) for x, c in zip(img, self.column)):
                raise NonSemisimpleError(f"column is not a T_{l} eigenvector")
            self._exact_eigs[l] = a
        return self._exact_eigs[l]

    def eigenvalue(self, l):
        return self.field.embed(self.exact_eigenvalue(l), self.root)

    def exact_diamond(self, d):
        d %= self.space.N
        if self.space.group == "gamma0":
            return self.field.one()
        if d not in self._diamonds:
            img = self._apply_exact(self.space.diamond(d))
            j = self._pivot()
            self._diamonds[d] = self.field.div(img[j], self.column[j])
        return self._diamonds[d]

    def diamond(self, d):
        return self.field.embed(self.exact_diamond(d), self.root)

    def nebentypus_value(self, l):
        """eps(l) in K; 0 when l | N."""
        if math.gcd(l, self.space.N) != 1:
            return self.field.zero()
        return self.exact_diamond(l)

    @property
    def N(self):
        return self.space.N

    @property
    def k(self):
        return self.space.k

    @property
    def p(self):
        return self.ring.p

    def __repr__(self):
        return f"EigenSymbol(N={self.N}, k={self.k}, sign={self.sign:+d}, field={self.field}, label={self.label!r})"


def qexpansion_exact(eig, n_max):
    """[a_1, ..., a_nmax] in K via the Hecke recursion."""
    K = eig.field
    k = eig.k
    a = [None] * (n_max + 1)
    a[1] = K.one()
    for q in sympy.primerange(2, n_max + 1):
        aq = eig.exact_eigenvalue(q)
        eps = eig.nebentypus_value(q)
        c = K.smul(Fraction(q) ** (k - 1), eps)
        prev2, prev = K.one(), aq
        a[q] = aq
        qe = q
        while qe * q <= n_max:
            nxt = K.sub(K.mul(aq, prev), K.mul(c, prev2))
            qe *= q
            a[qe] = nxt
            prev2, prev = prev, nxt
    for n in range(2, n_max + 1):
        if a[n] is None:
            # multiplicative: split off one prime power
            q = min(sympy.primefactors(n))
            qe = q
            while n % (qe * q) == 0:
                qe *= q
            a[n] = K.mul(a[qe], a[n // qe])
    return a[1:]


def qexpansion(eig, n_max):
    """q-expansion coefficients embedded in the eigen-symbol's local ring."""
    return [eig.field.embed(x, eig.root) for x in qexpansion_exact(eig, n_max)]


def eigen_symbols(space, sign, p, prec=20, ring=None, primes=None):
    """One EigenSymbol per embedding of each cuspidal Hecke eigensystem of the
    given sign.  Raises NonSemisimpleError if no combination of Hecke operators
    splits the cuspidal part into multiplicity-one pieces."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    dim = space.dimension
    I = space.involution()
    E = linalg.identity(dim)
    Bf = linalg.right_kernel(I - E * QQ(sign))
    Sc = space.cuspidal_sign_subspace(sign)
    if Sc.shape[0] == 0:
        return []
    if primes is None:
        primes = list(sympy.primerange(2, 14))
    chosen = None
    for combo in _candidate_combinations(primes):
        A = linalg.zero_matrix(dim, dim)
        for l, c in combo.items():
            A = A + space.hecke_operator(l) * QQ(c)
        full = linalg.charpoly(_restricted(space, A, Bf))
        cusp = linalg.charpoly(linalg.restrict(A, Sc))
        facs = sympy.factor_list(cusp.as_expr())[1]
        if any(m > 1 for _, m in facs):
            continue
        x = cusp.gens[0]
        ok = True
        for f, _ in facs:
            fp = sympy.Poly(f, x)
            if sympy.rem(full, fp ** 2).is_zero:
                ok = False
        if ok:
            chosen = (A, full, [sympy.Poly(f, x) for f, _ in facs])
            break
    if chosen is None:
        raise NonSemisimpleError(
            f"no Hecke combination splits the {'+' if sign > 0 else '-'} cuspidal part at level {space.N}, "
            f"weight {space.k} into multiplicity-one eigenspaces")
    A, _, factors = chosen
    factors.sort(key=lambda f: (f.degree(), [int(c) for c in f.all_coeffs()]))
    Af = _restricted(space, A, Bf)
    out = []
    for fac in factors:
        g = _poly_list(sympy.Poly(fac.monic(), fac.gens[0]))
        K = NumberField(g)
        gA = linalg.poly_of_matrix(list(reversed(g)), Af)
        W = linalg.left_kernel(gA)
        if W.shape[0] != K.degree:
            raise NonSemisimpleError(f"eigenspace for {fac.as_expr()} has dimension {W.shape[0]}, expected {K.degree}")
        w = W.to_list()[0]
        theta = K.gen()
        # h(x) = g(x) / (x - theta)
        d = K.degree
        h = [None] * d
        h[d - 1] = K.one()
        for j in range(d - 1, 0, -1):
            h[j - 1] = K.add(K.scalar(Fraction(g[j])), K.mul(theta, h[j]))
        r = Af.shape[0]
        v = [K.zero() for _ in range(r)]
        cur = linalg.dm([[Fraction(int(x.numerator), int(x.denominator)) for x in w]], r)
        for j in range(d):
            row = cur.to_list()[0]
            for t in range(r):
                if row[t]:
                    v[t] = K.add(v[t], K.smul(Fraction(int(row[t].numerator), int(row[t].denominator)), h[j]))
            cur = cur * Af
        Bl = Bf.to_list()
        column = []
        for b in range(dim):
            acc = K.zero()
            for t in range(r):
                x = Bl[t][b]
                if x:
                    acc = K.add(acc, K.smul(Fraction(int(x.numerator), int(x.denominator)), v[t]))
            column.append(acc)
        if ring is None:
            R, roots = local_ring_for(g, p, prec)
        else:
            R, roots = ring, find_roots(g, ring)
        if len(roots) != K.degree:
            raise ValueError(f"{fac.as_expr()} does not split in {R}")
        for idx, rt in enumerate(roots):
            label = f"{space.N}.{space.k}.{'+' if sign > 0 else '-'}.{len(out)}"
            out.append(EigenSymbol(space, sign, K, column, rt, R, label))
    return out
