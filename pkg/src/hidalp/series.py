"""Power series over O_K truncated in p and in T: Weierstrass preparation and
division, Newton polygons, evaluation at 1 - zeta_{p^s}, derivatives."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .padic import LocalRing, PadicScalar

DEFAULT_T_PRECISION = 32


def default_p_precision(ring):
    return 20 * ring.e


class PadicPowerSeries:
    """sum c_i T^i mod T^n with c_i in a LocalRing.  rescale records that the
    variable is (1/p)^N T_0 for an original variable T_0."""

    def __init__(self, ring, coeffs, n=None, rescale=0):
        self.ring = ring
        cs = [ring(c) for c in coeffs]
        if n is None:
            n = len(cs)
        cs = cs[:n] + [ring.zero() for _ in range(n - len(cs))]
        self.coeffs = cs
        self.n = n
        self.rescale = rescale

    @classmethod
    def from_ints(cls, ring, ints, n=None, rescale=0):
        return cls(ring, [ring(c) for c in ints], n, rescale)

    @classmethod
    def monomial(cls, ring, k, n, c=1):
        cs = [ring.zero()] * n
        if k < n:
            cs[k] = ring(c)
        return cls(ring, cs, n)

    def __repr__(self):
        return f"PadicPowerSeries(n={self.n}, ring={self.ring}, coeffs={self.coeffs[:6]}{'...' if self.n > 6 else ''})"

    def _check(self, other):
        if not isinstance(other, PadicPowerSeries):
            other = PadicPowerSeries(self.ring, [other], self.n, self.rescale)
        if other.ring != self.ring:
            raise ValueError("series over different rings")
        if other.rescale != self.rescale:
            raise ValueError("series with different disk rescaling")
        return other

    def __add__(self, other):
        other = self._check(other)
        n = min(self.n, other.n)
        return PadicPowerSeries(self.ring, [a + b for a, b in zip(self.coeffs[:n], other.coeffs[:n])], n, self.rescale)

    __radd__ = __add__

    def __neg__(self):
        return PadicPowerSeries(self.ring, [-a for a in self.coeffs], self.n, self.rescale)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        if not isinstance(other, PadicPowerSeries):
            c = self.ring(other)
            return PadicPowerSeries(self.ring, [a * c for a in self.coeffs], self.n, self.rescale)
        other = self._check(other)
        n = min(self.n, other.n)
        out = [self.ring.zero() for _ in range(n)]
        nz = [(j, b) for j, b in enumerate(other.coeffs[:n]) if not b.is_zero() or b.prec < b.ring.max_precision]
        for i, a in enumerate(self.coeffs[:n]):
            if a.is_zero() and a.prec >= a.ring.max_precision:
                continue
            for j, b in nz:
                if i + j >= n:
                    break
                out[i + j] = out[i + j] + a * b
        return PadicPowerSeries(self.ring, out, n, self.rescale)

    def __rmul__(self, other):
        return self * other

    def __eq__(self, other):
        other = self._check(other)
        n = min(self.n, other.n)
        return all((a - b).is_zero() for a, b in zip(self.coeffs[:n], other.coeffs[:n]))

    def truncate(self, n):
        return PadicPowerSeries(self.ring, self.coeffs[:n], min(n, self.n), self.rescale)

    def reduce_precision(self, m):
        return PadicPowerSeries(self.ring, [c.reduce(m) for c in self.coeffs], self.n, self.rescale)

    def shift_down(self, d):
        """sum_{i >= d} c_i T^(i - d)."""
        return PadicPowerSeries(self.ring, self.coeffs[d:], max(0, self.n - d), self.rescale)

    def valuations(self):
        """ord of each coefficient in pi units (None where zero at precision)."""
        return [c.ord() for c in self.coeffs]

    def mu(self):
        vs = [v for v in self.valuations() if v is not None]
        return min(vs) if vs else None

    def inverse(self):
        """Inverse of a series with unit constant term."""
        c0 = self.coeffs[0]
        if not c0.is_unit():
            raise ValueError("constant term is not a unit")
        inv0 = c0.inverse()
        out = [inv0]
        for k in range(1, self.n):
            acc = self.ring.zero()
            for j in range(1, k + 1):
                acc = acc + self.coeffs[j] * out[k - j]
            out.append(-acc * inv0)
        return PadicPowerSeries(self.ring, out, self.n, self.rescale)

    def derivative(self):
        cs = [self.coeffs[i] * i for i in range(1, self.n)]
        return PadicPowerSeries(self.ring, cs, max(0, self.n - 1), self.rescale)

    def __call__(self, x):
        """Horner evaluation at a ring element of positive valuation (or a unit
        for polynomials); the truncation error is not tracked here."""
        acc = x.ring.zero()
        for c in reversed(self.coeffs):
            acc = acc * x + (c if c.ring is x.ring else x.ring(_lift_scalar(c, x.ring)))
        return acc

    def rescaled(self, k):
        """f(p^k Y) in the variable Y: coefficients c_i p^(k i); the rescaling
        exponent grows by k."""
        p = self.ring.p
        return PadicPowerSeries(self.ring, [c * (p ** (k * i)) for i, c in enumerate(self.coeffs)],
                                self.n, self.rescale + k)

    def to_text(self):
        return series_to_text(self)


def _lift_scalar(c, ring):
    """Image of an element of Z_p (or its unramified extension) in a larger ring."""
    src = c.ring
    if src.e != 1:
        raise ValueError("cannot map a ramified coefficient into another ring")
    if src.f != 1 and src.unram != ring.unram:
        raise ValueError("incompatible unramified parts")
    return ring.from_coeffs([list(c.coeffs[0])], min(c.prec * ring.e, ring.max_precision))


def series_to_text(f):
    """One line per coefficient: `index valuation representative`."""
    lines = []
    for i, c in enumerate(f.coeffs):
        o = c.ord()
        val = "inf" if o is None else str(Fraction(o, f.ring.e))
        rep = ",".join(";".join(str(x) for x in row) for row in c.coeffs)
        lines.append(f"{i} {val} {rep}")
    return "\n".join(lines) + "\n"


def series_from_text(text, ring, rescale=0):
    cs = []
    for line in text.strip().splitlines():
        idx, _, rep = line.split()
        rows = [[int(x) for x in row.split(";")] for row in rep.split(",")]
        cs.append(ring.from_coeffs(rows))
    return PadicPowerSeries(ring, cs, len(cs), rescale)


@dataclass
class WeierstrassData:
    mu: int
    P: list          # coefficients low to high, monic of degree len(P) - 1
    u: PadicPowerSeries

    @property
    def degree(self):
        return len(self.P) - 1

    def P_series(self, n):
        ring = self.u.ring
        return PadicPowerSeries(ring, self.P, n, self.u.rescale)

    def reconstruct(self):
        ring = self.u.ring
        n = self.u.n
        return self.P_series(n) * self.u * (ring.pi() ** self.mu)


def distinguished_degree(g):
    for i, c in enumerate(g.coeffs):
        if c.is_unit():
            return i
    return None


def weierstrass_divide(f, g, max_iter=None):
    """f = q g + r with deg r < d, d the distinguished degree of g."""
    d = distinguished_degree(g)
    if d is None:
        raise ValueError("divisor has no unit coefficient within the truncation")
    f = g._check(f)
    n = min(f.n, g.n)
    ring = g.ring
    low = PadicPowerSeries(ring, g.coeffs[:d], n, g.rescale)
    U = g.shift_down(d)
    Uinv = U.inverse()
    m = n - d
    q = PadicPowerSeries(ring, [], m, g.rescale)
    h = f.truncate(n)
    if max_iter is None:
        max_iter = ring.max_precision + 2
    for _ in range(max_iter):
        tau = h.shift_down(d).truncate(m)
        if all(c.is_zero() for c in tau.coeffs):
            break
        step = (tau * Uinv).truncate(m)
        q = q + step
        # h - step * g = (h mod T^d) - step * low
        h = PadicPowerSeries(ring, h.coeffs[:d], n, g.rescale) - _pad(step, n) * low
    else:
        raise ValueError("Weierstrass division did not converge at precision")
    r = [h.coeffs[i] for i in range(d)]
    return q, r


def _pad(s, n):
    return PadicPowerSeries(s.ring, s.coeffs, n, s.rescale)


def weierstrass_prep(f):
    """(mu, P, u) with f = pi^mu u P, P distinguished and u a unit series."""
    mu = f.mu()
    if mu is None:
        raise ValueError("series is indistinguishable from zero at working precision")
    ring = f.ring
    g = PadicPowerSeries(ring, [c.divide_by_pi(mu) if mu else c for c in f.coeffs], f.n, f.rescale)
    d = distinguished_degree(g)
    Td = PadicPowerSeries.monomial(ring, d, f.n)
    Td.rescale = f.rescale
    q, r = weierstrass_divide(Td, g)
    P = [-c for c in r] + [ring.one()]
    u = q.inverse()
    return WeierstrassData(mu, P, u)


@dataclass
class NewtonPolygon:
    vertices: list    # (i, valuation as Fraction), valuation in v(p) = 1 units

    def slopes(self):
        out = []
        for (i0, v0), (i1, v1) in zip(self.vertices, self.vertices[1:]):
            out.append((Fraction(v1 - v0, i1 - i0), i1 - i0))
        return out

    def root_valuations(self):
        """Multiset of root valuations (as (valuation, multiplicity))."""
        return [(-s, m) for s, m in self.slopes()]

    def value_at(self, lam):
        """min_i (v_i + i lam): the valuation of f(x) for generic x with v(x) = lam."""
        return min(v + i * lam for i, v in self.vertices)


def newton_polygon(f):
    """Lower convex hull of the points (i, v(c_i))."""
    if isinstance(f, PadicPowerSeries):
        coeffs, e = f.coeffs, f.ring.e
    else:
        coeffs = list(f)
        e = coeffs[0].ring.e
    pts = [(i, Fraction(c.ord(), e)) for i, c in enumerate(coeffs) if c.ord() is not None]
    hull = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # remove hull[-1] if it lies on or above the segment hull[-2] -> pt
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    return NewtonPolygon(hull)


def cyclotomic_point_ring(f, s, prec=None):
    """The ring Z_p[zeta_{p^s}] (composed with the unramified part of f's ring)
    in which 1 - zeta_{p^s} = -pi."""
    base = f.ring
    if base.e != 1:
        raise ValueError("evaluation at 1 - zeta needs an unramified coefficient ring")
    p = base.p
    R = LocalRing.cyclotomic(p, s, base.prec if prec is None else prec)
    if base.f > 1:
        R = LocalRing(p, R.prec, eisenstein=list(R.eis), unramified=list(base.unram), cyclotomic_level=s)
    return R


def eval_at_cyclotomic(f, s, prec=None):
    """f(1 - zeta_{p^s}) in Z_p[zeta_{p^s}] (uniformizer zeta - 1), with the
    precision capped by the T-truncation: the omitted tail has ord >= n."""
    R = cyclotomic_point_ring(f, s, prec)
    x = -R.pi()
    val = f(x)
    return val.reduce(min(val.prec, f.n))
