"""p-adic scalars with capped precision, local rings and cyclotomic ring elements.

A LocalRing is O_K = Z_p[theta][pi], where Z_p[theta] = Z_p[x]/(g) is unramified
(g monic and irreducible mod p) and pi is a root of an Eisenstein polynomial E
with integer coefficients.  Elements are stored as e x f integer arrays reduced
mod p^M; valuations are measured in units of v(pi) = 1 and reported in the
normalization v(p) = 1.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import sympy


class ZeroAtPrecision(float):
    """Valuation of an element that vanishes to its full precision.

    Compares like +infinity but remembers the precision bound, so callers can
    tell "at least m" from an exact zero.
    """

    def __new__(cls, precision):
        obj = super().__new__(cls, math.inf)
        obj.precision = precision
        return obj

    def __repr__(self):
        return f"ZeroAtPrecision({self.precision})"

    def __str__(self):
        return f"zero at precision {self.precision}"


INF = math.inf


def vp_int(n, p):
    if n == 0:
        return INF
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def valuation(x, p=None):
    """Exact p-adic valuation of an integer, rational or PadicScalar."""
    if isinstance(x, PadicScalar):
        return x.valuation()
    if p is None:
        raise ValueError("prime required for rational input")
    x = Fraction(x)
    if x == 0:
        return INF
    return vp_int(x.numerator, p) - vp_int(x.denominator, p)


def teichmuller(p, a, m):
    """Teichmuller lift of the unit residue a to Z/p^m."""
    if a % p == 0:
        raise ValueError(f"{a} is not a unit mod {p}")
    return pow(a, p ** (m - 1), p ** m)


def _polymulmod(a, b, g, mod):
    """Product of coefficient tuples a, b modulo the monic polynomial g and mod."""
    f = len(g) - 1
    if f == 1:
        return ((a[0] * b[0]) % mod,)
    prod = [0] * (2 * f - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] += ai * bj
    for k in range(2 * f - 2, f - 1, -1):
        c = prod[k]
        if c:
            for j in range(f):
                prod[k - f + j] -= c * g[j]
    return tuple(c % mod for c in prod[:f])


def cyclotomic_poly(n):
    """Coefficients (low to high) of the n-th cyclotomic polynomial."""
    return _cyclo(n)


@lru_cache(maxsize=None)
def _cyclo(n):
    x = sympy.Symbol("x")
    return tuple(int(c) for c in reversed(sympy.Poly(sympy.cyclotomic_poly(n, x), x).all_coeffs()))


class LocalRing:
    """Ring of integers O_K of a composite of an unramified and a totally ramified
    extension of Q_p, truncated at p^prec.

    eisenstein: monic integer polynomial (low to high) with p | a_i, p^2 ∤ a_0;
    defaults to x - p (no ramification).  unramified: monic integer polynomial
    irreducible mod p; defaults to degree one.  cyclotomic_level s records that
    eisenstein is Phi_{p^s}(1 + x), so 1 + pi is a primitive p^s-th root of unity.
    """

    def __init__(self, p, prec=20, eisenstein=None, unramified=None, cyclotomic_level=0):
        self.p = p
        self.prec = prec
        self.mod = p ** prec
        self.unram = tuple(unramified) if unramified else (0, 1)
        self.f = len(self.unram) - 1
        if self.f > 1:
            x = sympy.Symbol("x")
            gp = sympy.Poly(list(reversed(self.unram)), x, modulus=p)
            if self.unram[-1] != 1 or not gp.is_irreducible:
                raise ValueError("unramified polynomial must be monic and irreducible mod p")
        self.eis = tuple(eisenstein) if eisenstein else (-p, 1)
        self.e = len(self.eis) - 1
        if self.eis[-1] != 1 or self.eis[0] % p or self.eis[0] % (p * p) == 0 or any(c % p for c in self.eis[1:-1]):
            raise ValueError("ramified polynomial must be Eisenstein")
        self.cyclotomic_level = cyclotomic_level
        self.q = p ** self.f
        # pi^e = -sum_{i<e} a_i pi^i; a_0 = p * w with w a unit
        self._w = self.eis[0] // p
        self._zero_u = (0,) * self.f
        self._cache = {}

    @classmethod
    def unramified_ring(cls, p, prec=20):
        return cls(p, prec)

    @classmethod
    def cyclotomic(cls, p, s, prec=20):
        """Z_p[zeta_{p^s}] with uniformizer pi = zeta_{p^s} - 1."""
        if s == 0:
            return cls(p, prec)
        phi = cyclotomic_poly(p ** s)
        # coefficients of Phi(1 + x)
        x = sympy.Symbol("x")
        poly = sympy.Poly(sum(c * (1 + x) ** i for i, c in enumerate(phi)), x)
        coeffs = [int(c) for c in reversed(poly.all_coeffs())]
        return cls(p, prec, eisenstein=coeffs, cyclotomic_level=s)

    def __repr__(self):
        return f"LocalRing(p={self.p}, prec={self.prec}, e={self.e}, f={self.f})"

    def __eq__(self, other):
        return (isinstance(other, LocalRing) and self.p == other.p and self.prec == other.prec
                and self.eis == other.eis and self.unram == other.unram)

    def __hash__(self):
        return hash((self.p, self.prec, self.eis, self.unram))

    @property
    def summary(self):
        return {"prime": self.p, "ramified": list(self.eis), "unramified": list(self.unram),
                "e": self.e, "f": self.f, "uniformizer": "root of ramified polynomial"}

    @property
    def max_precision(self):
        return self.e * self.prec

    # construction
    def __call__(self, x, prec=None):
        if isinstance(x, PadicScalar):
            if x.ring is self:
                return x
            if x.ring == self:
                return PadicScalar(self, x.coeffs, x.prec if prec is None else min(prec, x.prec))
            raise ValueError("element of a different ring")
        top = self.max_precision if prec is None else prec
        x = Fraction(x)
        den = x.denominator
        if den % self.p == 0:
            v = vp_int(den, self.p)
            num = self(x * self.p ** v)
            return num.divide_by_pi(self.e * v)
        val = (x.numerator * pow(den, -1, self.mod)) % self.mod
        coeffs = [self._zero_u] * self.e
        coeffs[0] = (val,) + self._zero_u[1:]
        return PadicScalar(self, tuple(coeffs), top)

    def from_coeffs(self, coeffs, prec=None):
        """coeffs[i][j] is the coefficient of pi^i theta^j."""
        rows = []
        for i in range(self.e):
            row = tuple(coeffs[i]) if i < len(coeffs) else ()
            row = row + (0,) * (self.f - len(row))
            rows.append(tuple(c % self.mod for c in row))
        return PadicScalar(self, tuple(rows), self.max_precision if prec is None else prec)

    def zero(self):
        return self(0)

    def one(self):
        return self(1)

    def pi(self):
        if self.e == 1:
            return self(self.p)
        return self.from_coeffs([[0], [1]])

    def theta(self):
        if self.f == 1:
            raise ValueError("no unramified generator")
        return self.from_coeffs([[0, 1]])

    # residue field F_q: tuples of f integers in [0, p), ordered by sum c_j p^j
    def residue_elements(self):
        p, f = self.p, self.f
        for n in range(self.q):
            yield tuple((n // p ** j) % p for j in range(f))

    def from_residue(self, r, prec=None):
        return self.from_coeffs([list(r)], prec)

    def _umul(self, a, b, mod=None):
        return _polymulmod(a, b, self.unram, self.mod if mod is None else mod)

    def _uinv_residue(self, a):
        # inverse in F_q by a^(q-2)
        res = (1,) + (0,) * (self.f - 1)
        base = tuple(c % self.p for c in a)
        n = self.q - 2
        while n:
            if n & 1:
                res = self._umul(res, base, self.p)
            base = self._umul(base, base, self.p)
            n >>= 1
        return res

    def _uinv(self, a):
        """Inverse of a unit of Z_p[theta] mod p^prec by Newton iteration."""
        if self.f == 1:
            return (pow(a[0], -1, self.mod),)
        x = self._uinv_residue(a)
        two = (2,) + (0,) * (self.f - 1)
        k = 1
        while k < self.prec:
            ax = self._umul(a, x)
            x = self._umul(x, tuple((t - s) % self.mod for t, s in zip(two, ax)))
            k *= 2
        return x

    def teichmuller(self, r):
        """Teichmuller lift of a nonzero residue (tuple or integer)."""
        if isinstance(r, int):
            r = (r % self.p,) + (0,) * (self.f - 1)
        if not any(c % self.p for c in r):
            raise ValueError("non-unit residue")
        x = self.from_residue(r)
        for _ in range(self.prec):
            x = x ** self.q
        return x

    def roots_of_unity_residue(self, n):
        """Residues of exact multiplicative order n, in increasing order."""
        if (self.q - 1) % n:
            return []
        out = []
        one = (1,) + (0,) * (self.f - 1)
        for r in self.residue_elements():
            if not any(r):
                continue
            x = one
            order = None
            for k in range(1, n + 1):
                x = self._umul(x, r, self.p)
                if x == one:
                    order = k
                    break
            if order == n:
                out.append(r)
        return out

    def zeta(self, n):
        """Deterministic primitive n-th root of unity in this ring (cached)."""
        if n in self._cache:
            return self._cache[n]
        p = self.p
        s = vp_int(n, p) if n > 1 else 0
        n0 = n // p ** s
        if s:
            if self.cyclotomic_level >= s:
                zp = (self.one() + self.pi()) ** (p ** (self.cyclotomic_level - s))
            else:
                rts = find_roots(cyclotomic_poly(p ** s), self)
                if not rts:
                    raise ValueError(f"no primitive {p ** s}-th root of unity in {self}")
                zp = rts[0]
        else:
            zp = self.one()
        if n0 > 1:
            res = self.roots_of_unity_residue(n0)
            if not res:
                raise ValueError(f"no primitive {n0}-th root of unity in {self}")
            zn0 = self.teichmuller(res[0])
        else:
            zn0 = self.one()
        if s and n0 > 1:
            g, x, y = _egcd(n0, p ** s)
            z = zp ** (x % p ** s) * zn0 ** (y % n0)
        else:
            z = zp * zn0
        self._cache[n] = z
        return z


def _egcd(a, b):
    if b == 0:
        return a, 1, 0
    g, x, y = _egcd(b, a % b)
    return g, y, x - (a // b) * y


class PadicScalar:
    """Element of a LocalRing known modulo pi^prec."""

    __slots__ = ("ring", "coeffs", "prec")

    def __init__(self, ring, coeffs, prec):
        self.ring = ring
        self.coeffs = coeffs
        self.prec = min(prec, ring.max_precision)

    # basic accessors
    @property
    def p(self):
        return self.ring.p

    @property
    def precision(self):
        return self.prec

    @property
    def value(self):
        """Integer representative when the ring is Z_p (mod p^m)."""
        if self.ring.e != 1 or self.ring.f != 1:
            raise ValueError("value only defined over Z_p")
        return self.coeffs[0][0] % self.p ** self.prec

    def ord(self):
        """Valuation in units of v(pi); None if zero at precision."""
        r = self.ring
        best = None
        for i, row in enumerate(self.coeffs):
            v = min((vp_int(c, r.p) for c in row if c), default=INF)
            if v is INF or v >= r.prec:
                continue
            o = r.e * v + i
            if best is None or o < best:
                best = o
        if best is None or best >= self.prec:
            return None
        return best

    def valuation(self):
        o = self.ord()
        if o is None:
            return ZeroAtPrecision(Fraction(self.prec, self.ring.e))
        return Fraction(o, self.ring.e)

    def is_zero(self):
        return self.ord() is None

    def is_unit(self):
        return self.ord() == 0

    def _coerce(self, other):
        if isinstance(other, PadicScalar):
            if other.ring is not self.ring and other.ring != self.ring:
                raise ValueError("elements of different rings")
            return other
        return self.ring(other)

    def __add__(self, other):
        other = self._coerce(other)
        m = self.ring.mod
        coeffs = tuple(tuple((a + b) % m for a, b in zip(r1, r2)) for r1, r2 in zip(self.coeffs, other.coeffs))
        return PadicScalar(self.ring, coeffs, min(self.prec, other.prec))

    __radd__ = __add__

    def __neg__(self):
        m = self.ring.mod
        return PadicScalar(self.ring, tuple(tuple((-a) % m for a in r) for r in self.coeffs), self.prec)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            m = self.ring.mod
            coeffs = tuple(tuple((a * other) % m for a in r) for r in self.coeffs)
            o = vp_int(other, self.p)
            prec = self.prec + (self.ring.e * o if o is not INF else self.ring.max_precision)
            return PadicScalar(self.ring, coeffs, prec)
        other = self._coerce(other)
        r = self.ring
        e, m = r.e, r.mod
        if e == 1:
            coeffs = (r._umul(self.coeffs[0], other.coeffs[0]),)
        else:
            prod = [None] * (2 * e - 1)
            zero = r._zero_u
            for i, a in enumerate(self.coeffs):
                if not any(a):
                    continue
                for j, b in enumerate(other.coeffs):
                    if not any(b):
                        continue
                    c = r._umul(a, b)
                    if prod[i + j] is None:
                        prod[i + j] = list(c)
                    else:
                        t = prod[i + j]
                        for k in range(r.f):
                            t[k] += c[k]
            # reduce pi^k for k >= e using pi^e = -sum a_i pi^i
            for k in range(2 * e - 2, e - 1, -1):
                c = prod[k]
                if c is None or not any(c):
                    continue
                for i in range(e):
                    a = r.eis[i]
                    if a:
                        if prod[k - e + i] is None:
                            prod[k - e + i] = [0] * r.f
                        t = prod[k - e + i]
                        for h in range(r.f):
                            t[h] -= a * c[h]
            coeffs = tuple(tuple(x % m for x in prod[k]) if prod[k] is not None else zero for k in range(e))
        o1, o2 = self.ord(), other.ord()
        p1 = self.prec + (o2 if o2 is not None else other.prec)
        p2 = other.prec + (o1 if o1 is not None else self.prec)
        return PadicScalar(r, coeffs, min(p1, p2))

    def __rmul__(self, other):
        return self * other

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def divide_by_pi(self, k=1):
        """Exact division by pi^k of an element with valuation >= k (or a formal
        shift when the low digits are unknown)."""
        r = self.ring
        x = self
        if r.e == 1:
            coeffs = x.coeffs[0]
            pk = r.p ** k
            if any(c % pk for c in coeffs):
                raise ValueError("element not divisible by pi^k")
            return PadicScalar(r, (tuple(c // pk for c in coeffs),), max(0, min(x.prec - k, r.prec - k)))
        winv = r._uinv((r._w % r.mod,) + (0,) * (r.f - 1))
        # Q = pi^{e-1} + a_{e-1} pi^{e-2} + ... + a_1, and pi*Q = -a_0 = -p*w
        Q = r.from_coeffs([[r.eis[i + 1]] for i in range(r.e)])
        neg_winv = r.from_coeffs([[(-c) % r.mod for c in winv]])
        for _ in range(k):
            if x.ord() == 0:
                raise ValueError("element not divisible by pi")
            y = x * Q * neg_winv
            # y = x * (pi Q) / (pi) * (-1/w) = x * p / pi, divide coefficients by p
            if any(c % r.p for row in y.coeffs for c in row):
                raise ValueError("element not divisible by pi")
            coeffs = tuple(tuple(c // r.p for c in row) for row in y.coeffs)
            x = PadicScalar(r, coeffs, min(x.prec - 1, r.e * (r.prec - 1)))
        return x

    def inverse(self):
        o = self.ord()
        if o is None:
            raise ZeroDivisionError("inverse of an element indistinguishable from zero")
        r = self.ring
        if o:
            # x = pi^o * u; inverse is pi^{-o} u^{-1}, not integral
            raise ValueError("inverse of a non-unit is not integral")
        # residue of a unit lies in the pi^0 row mod p
        u0 = r._uinv(tuple(c % r.p for c in self.coeffs[0]))
        y = r.from_coeffs([list(u0)])
        # Newton: y <- y(2 - x y)
        k = 1
        while k < r.max_precision:
            y = y * (2 - self * y)
            k *= 2
        return PadicScalar(r, y.coeffs, self.prec)

    def __truediv__(self, other):
        if not isinstance(other, PadicScalar):
            other = Fraction(other)
            if other.denominator % self.p == 0 or other.numerator % self.p == 0:
                other = self.ring(other)
            else:
                return self * self.ring(1 / other)
        o = other.ord()
        if o is None:
            raise ZeroDivisionError("division by an element indistinguishable from zero")
        if o == 0:
            return self * other.inverse()
        # other = pi^o * u
        u = other.divide_by_pi(o)
        return (self * u.inverse()).divide_by_pi(o)

    def __eq__(self, other):
        try:
            d = self - self._coerce(other)
        except (ValueError, TypeError):
            return NotImplemented
        return d.is_zero()

    def __hash__(self):
        return hash((self.ring.p, self.coeffs))

    def residue(self):
        """Image in the residue field as a tuple."""
        return tuple(c % self.p for c in self.coeffs[0])

    def reduce(self, prec):
        """Same element with precision lowered to prec (in pi-units)."""
        return PadicScalar(self.ring, self.coeffs, min(prec, self.prec))

    def __repr__(self):
        r = self.ring
        if r.e == 1 and r.f == 1:
            m = min(r.prec, self.prec)
            return f"{self.coeffs[0][0] % r.p ** m} mod {r.p}^{m}"
        return f"PadicScalar({[list(c) for c in self.coeffs]}, prec={self.prec})"


def poly_eval(coeffs, x):
    """Evaluate sum coeffs[i] x^i by Horner."""
    acc = x.ring.zero() if isinstance(x, PadicScalar) else 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def find_roots(coeffs, ring):
    """Roots in ring of the polynomial sum coeffs[i] x^i (ring elements or rationals),
    assumed separable.  Roots are found by a digit tree over residue
    representatives followed by Newton lifting; the output is ordered by the
    smallest digit expansion, which makes the choice deterministic."""
    cs = [ring(c) for c in coeffs]
    dcs = [c * i for i, c in enumerate(cs)][1:]
    reps = [ring.from_residue(r) for r in ring.residue_elements()]
    pi = ring.pi()
    roots = []
    frontier = [(ring.zero(), 0)]
    top = ring.max_precision
    while frontier:
        nxt = []
        for x, j in frontier:
            pij = pi ** j
            for d in reps:
                y = x + d * pij
                fy = poly_eval(cs, y)
                of = fy.ord()
                if of is not None and of < j + 1:
                    continue
                od = poly_eval(dcs, y).ord()
                if of is None or (od is not None and of > 2 * od):
                    roots.append(_newton(cs, dcs, y))
                elif j + 1 < top:
                    nxt.append((y, j + 1))
        frontier = nxt
    out = []
    for r in roots:
        if not any((r - s).is_zero() for s in out):
            out.append(r)
    return out


def _newton(cs, dcs, x):
    ring = x.ring
    for _ in range(4 * ring.max_precision.bit_length() + 4):
        fx = poly_eval(cs, x)
        if fx.is_zero():
            break
        dx = poly_eval(dcs, x)
        step = fx / dx
        x = x - step
        if step.is_zero():
            break
    return x


class CyclotomicElement:
    """Element of Z[zeta_n] (or R[zeta_n] for a coefficient ring R) in the power basis."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n, coeffs):
        self.n = n
        d = totient(n)
        coeffs = list(coeffs)
        if len(coeffs) > d:
            coeffs = _reduce_cyclo(coeffs, n)
        self.coeffs = tuple(coeffs + [0] * (d - len(coeffs)))

    @classmethod
    def zeta_power(cls, n, j):
        return cls(n, list(_zeta_power_table(n)[j % n]))

    @classmethod
    def scalar(cls, n, c):
        return cls(n, [c])

    def lift(self, n):
        """Image in Z[zeta_n] for a multiple n of the conductor."""
        if n == self.n:
            return self
        if n % self.n:
            raise ValueError("target conductor must be a multiple")
        k = n // self.n
        acc = [0] * totient(n)
        table = _zeta_power_table(n)
        for i, c in enumerate(self.coeffs):
            if c:
                for t, v in enumerate(table[(i * k) % n]):
                    if v:
                        acc[t] = acc[t] + c * v
        return CyclotomicElement(n, acc)

    def _align(self, other):
        if not isinstance(other, CyclotomicElement):
            return self, CyclotomicElement(self.n, [other])
        if other.n == self.n:
            return self, other
        n = math.lcm(self.n, other.n)
        return self.lift(n), other.lift(n)

    def __add__(self, other):
        a, b = self._align(other)
        return CyclotomicElement(a.n, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicElement(self.n, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, CyclotomicElement):
            return CyclotomicElement(self.n, [c * other for c in self.coeffs])
        a, b = self._align(other)
        prod = [0] * (2 * len(a.coeffs) - 1)
        for i, x in enumerate(a.coeffs):
            if isinstance(x, int) and x == 0:
                continue
            for j, y in enumerate(b.coeffs):
                if isinstance(y, int) and y == 0:
                    continue
                prod[i + j] = prod[i + j] + x * y
        return CyclotomicElement(a.n, _reduce_cyclo(prod, a.n))

    __rmul__ = __mul__

    def __pow__(self, k):
        result = CyclotomicElement(self.n, [1])
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)) or isinstance(other, CyclotomicElement):
            a, b = self._align(other)
            return all(x == y for x, y in zip(a.coeffs, b.coeffs))
        return NotImplemented

    def __hash__(self):
        return hash((self.n, self.coeffs))

    def conjugate(self, a):
        """Galois conjugate zeta_n -> zeta_n^a."""
        acc = CyclotomicElement(self.n, [0])
        for i, c in enumerate(self.coeffs):
            if c:
                acc = acc + CyclotomicElement.zeta_power(self.n, a * i) * c
        return acc

    def map_coeffs(self, fn):
        return CyclotomicElement(self.n, [fn(c) for c in self.coeffs])

    def is_zero(self):
        return all((c.is_zero() if isinstance(c, PadicScalar) else c == 0) for c in self.coeffs)

    def __repr__(self):
        return f"CyclotomicElement({self.n}, {list(self.coeffs)})"


def totient(n):
    return int(sympy.totient(n))


@lru_cache(maxsize=None)
def _zeta_power_table(n):
    """Power-basis coordinates of zeta_n^j for 0 <= j < n."""
    d = totient(n)
    phi = cyclotomic_poly(n)
    rows = []
    cur = [1] + [0] * (d - 1)
    for _ in range(n):
        rows.append(tuple(cur))
        # multiply by zeta: shift and reduce top
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [c - top * phi[i] for i, c in enumerate(cur)]
    return tuple(rows)


def _reduce_cyclo(coeffs, n):
    d = totient(n)
    if len(coeffs) <= d:
        return list(coeffs) + [0] * (d - len(coeffs))
    table = _zeta_power_table(n)
    out = list(coeffs[:d])
    for k in range(d, len(coeffs)):
        c = coeffs[k]
        if isinstance(c, int) and c == 0:
            continue
        row = table[k % n]
        for t, v in enumerate(row):
            if v:
                out[t] = out[t] + c * v
    return out


def embed_cyclotomic(x, ring, m=None):
    """Image of a CyclotomicElement in ring, using the deterministic root ring.zeta(n)."""
    z = ring.zeta(x.n)
    acc = ring.zero()
    zp = ring.one()
    for c in x.coeffs:
        if isinstance(c, PadicScalar):
            acc = acc + c * zp
        elif c:
            acc = acc + ring(c) * zp
        zp = zp * z
    if m is not None:
        acc = acc.reduce(m * ring.e)
    return acc
