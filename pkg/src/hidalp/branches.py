"""Branch geometry on rescaled disks: distances, intersection multiplicities of
two branches T = g_1(Y), T = g_2(Y), Taylor agreement of L-families, and the
ramified model T = pi^t u(Y) Y^e."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from sympy import QQ

from . import linalg
from .padic import INF, LocalRing
from .series import PadicPowerSeries, newton_polygon, weierstrass_prep


# distances

@dataclass(frozen=True)
class Distance:
    """The value p^(-q); q = inf for d = 0."""
    p: int
    q: object

    def __str__(self):
        return "0" if self.q == INF else f"{self.p}^(-{self.q})"

    def __lt__(self, other):
        return self.q > other.q

    def __le__(self, other):
        return self.q >= other.q

    @property
    def value(self):
        if self.q == INF:
            return Fraction(0)
        if Fraction(self.q).denominator != 1:
            raise ValueError("distance is not rational")
        return Fraction(1, self.p ** int(self.q)) if self.q >= 0 else Fraction(self.p ** int(-self.q))


def distance(x, y):
    """max_i |x_i - y_i|_p for points with coordinates in a LocalRing."""
    if len(x) != len(y):
        raise ValueError("points of different arity")
    ring = x[0].ring
    best = INF
    for a, b in zip(x, y):
        o = (a - b).ord()
        if o is not None:
            best = min(best, Fraction(o, ring.e))
    return Distance(ring.p, best)


def congruence_exponent_from_distance(d, e, N=0):
    """r with d = p^(-r/e - N): points at that distance give forms congruent
    mod pi^r and not mod pi^(r+1)."""
    q = d.q if isinstance(d, Distance) else Fraction(d)
    if q == INF:
        raise ValueError("points coincide: congruent to every order")
    r = (Fraction(q) - N) * e
    if r.denominator != 1 or r < 0:
        raise ValueError(f"distance exponent {q} is not of the form r/{e} + {N}")
    return int(r)


def distance_from_congruence_exponent(r, e, N=0, p=None):
    q = Fraction(r, e) + N
    return Distance(p, q) if p is not None else q


# two-branch model

@dataclass(frozen=True)
class AtLeastOrder:
    value: int

    def __str__(self):
        return f">= {self.value}"

    def to_json(self):
        return {"at_least": self.value}


def _y_order(s):
    for i, c in enumerate(s.coeffs):
        if not c.is_zero():
            return i
    return None


def y_order(s):
    """ord_Y of a series, or AtLeastOrder(n) if it vanishes to its truncation."""
    o = _y_order(s)
    return AtLeastOrder(s.n) if o is None else o


@dataclass
class BranchPair:
    p: int
    N: int
    g1: PadicPowerSeries
    g2: PadicPowerSeries

    def __post_init__(self):
        if self.g1.ring != self.g2.ring:
            raise ValueError("branches over different rings")

    @property
    def ring(self):
        return self.g1.ring

    def product(self):
        """Coefficients (c0, c1) with (T - g1)(T - g2) = T^2 + c1 T + c0."""
        return self.g1 * self.g2, -(self.g1 + self.g2)

    def crosses(self):
        return (self.g1.coeffs[0] - self.g2.coeffs[0]).is_zero()


def intersection_multiplicity_ord(pair):
    """ord_Y(g1 - g2) when both branches pass through the origin; 0 otherwise."""
    if not pair.crosses():
        return 0
    return y_order(pair.g1 - pair.g2)


def _series_to_fractions(s):
    ring = s.ring
    if ring.e != 1 or ring.f != 1:
        raise ValueError("quotient oracle works over Z_p coefficients")
    return [Fraction(c.coeffs[0][0]) for c in s.coeffs]


def _quotient_dimension(g1, g2, D):
    """dim_K of K[T, Y]/((T - g1), (T - g2), (T, Y)^D) localized at the origin."""
    mons = [(a, b) for a in range(D) for b in range(D - a)]
    idx = {m: i for i, m in enumerate(mons)}
    rows = []
    for g in (g1, g2):
        # (T - g(Y)) T^a Y^b truncated to total degree < D
        for a, b in mons:
            row = [QQ(0)] * len(mons)
            if (a + 1, b) in idx:
                row[idx[(a + 1, b)]] += 1
            for j, c in enumerate(g):
                if c and (a, b + j) in idx:
                    row[idx[(a, b + j)]] -= QQ(c.numerator, c.denominator)
            rows.append(row)
    if not rows:
        return 0
    M = linalg.DomainMatrix(rows, (len(rows), len(mons)), QQ)
    return len(mons) - linalg.rank(M)


def intersection_multiplicity_quotient(pair, truncation=None, max_truncation=None):
    """Brute-force intersection multiplicity: the dimension of the truncated
    local quotient by the two branch ideals, grown until stable."""
    g1 = _series_to_fractions(pair.g1)
    g2 = _series_to_fractions(pair.g2)
    n = min(len(g1), len(g2))
    D = truncation or 4
    limit = max_truncation or n + 2
    prev = _quotient_dimension(g1[:D], g2[:D], D)
    while D < limit:
        D2 = min(limit, D + 2)
        cur = _quotient_dimension(g1[:D2], g2[:D2], D2)
        if cur == prev and cur < D - 1:
            return cur
        D, prev = D2, cur
    if prev < D - 1:
        return prev
    raise ValueError("truncation too small: quotient dimension did not stabilize")


# L-ideal data and the crossing check

@dataclass
class LIdealData:
    """Differences L_1(chi) - L_2(chi) keyed by a character label."""
    differences: dict

    def orders(self):
        return {k: _y_order(v) for k, v in self.differences.items()}

    def leading(self):
        out = {}
        for k, v in self.differences.items():
            o = _y_order(v)
            out[k] = (o, None if o is None else Fraction(v.coeffs[o].ord(), v.ring.e))
        return out


@dataclass
class CrossingVerdict:
    verdict: str
    I: object
    min_order: object
    witness: object = None
    orders: dict = field(default_factory=dict)

    @property
    def passed(self):
        return self.verdict == "pass"

    def to_json(self):
        enc = lambda x: x.to_json() if hasattr(x, "to_json") else x
        return {"verdict": self.verdict, "I": enc(self.I), "min_order": enc(self.min_order),
                "witness": self.witness, "orders": {str(k): v for k, v in sorted(self.orders.items(), key=str)}}


def taylor_agreement_check(pair, data):
    """min over chi of ord_Y(L_1(chi) - L_2(chi)) against ord_Y(g1 - g2)."""
    I = intersection_multiplicity_ord(pair)
    orders = data.orders()
    finite = {k: o for k, o in orders.items() if o is not None}
    n = min((v.n for v in data.differences.values()), default=0)
    if not finite:
        if isinstance(I, AtLeastOrder):
            return CrossingVerdict("pass", I, AtLeastOrder(n), None, orders)
        return CrossingVerdict(f"order >= {n}, no witness", I, AtLeastOrder(n), None, orders)
    m = min(finite.values())
    witness = min((k for k, o in finite.items() if o == m), key=str)
    if isinstance(I, AtLeastOrder):
        ok = m >= I.value
    else:
        ok = m == I
    verdict = "pass" if ok else f"falsified: min ord_Y {m} != intersection multiplicity {I}"
    return CrossingVerdict(verdict, I, m, witness, orders)


def sample_valuations(series, points):
    """v_p(series(kappa)) at Y-coordinates kappa (ring elements)."""
    out = []
    for x in points:
        v = series(x)
        o = v.ord()
        out.append(None if o is None else Fraction(o, series.ring.e))
    return out


def fit_order(series, n_start=1, n_max=None):
    """ord_Y read off the values at kappa_n = p^n: once v(kappa_n) passes every
    root valuation, v(f(kappa_n)) grows by exactly ord_Y(f) per step."""
    ring = series.ring
    p = ring.p
    n_max = n_max or ring.prec
    prev, slopes = None, []
    for n in range(n_start, n_max + 1):
        v = series(ring(p ** n))
        o = v.ord()
        if o is None:
            break
        val = Fraction(o, ring.e)
        if prev is not None:
            slopes.append(val - prev)
            if len(slopes) >= 2 and slopes[-1] == slopes[-2]:
                return int(slopes[-1])
        prev = val
    return None


def synthetic_l_family(pair, characters, rng, witness=None, extra_order=1):
    """L-families honoring v(I_L(kappa)) = v(g1(kappa) - g2(kappa)): for each
    chi, L_1 = A_chi and L_2 = A_chi - (g1 - g2) w_chi with w_chi a unit for the
    witness and divisible by Y^extra_order otherwise."""
    ring = pair.ring
    n = min(pair.g1.n, pair.g2.n)
    mod = ring.p ** ring.prec
    diff = pair.g1 - pair.g2
    witness = characters[0] if witness is None else witness
    L1, L2 = {}, {}
    for chi in characters:
        A = PadicPowerSeries.from_ints(ring, [rng.randrange(mod) for _ in range(n)], n, pair.g1.rescale)
        if chi == witness:
            w = [rng.randrange(1, ring.p) + ring.p * rng.randrange(mod)] + [rng.randrange(mod) for _ in range(n - 1)]
        else:
            w = [0] * extra_order + [rng.randrange(mod) for _ in range(n - extra_order)]
        W = PadicPowerSeries.from_ints(ring, w, n, pair.g1.rescale)
        L1[chi] = A
        L2[chi] = A - diff * W
    return L1, L2


def l_ideal_data(L1, L2):
    return LIdealData({k: L1[k] - L2[k] for k in L1})


def sampled_ideal_check(pair, data, n_points=4, n_start=None):
    """At kappa_n = p^n, check min over chi of v(L diff) equals v(g1 - g2)."""
    ring = pair.ring
    diff = pair.g1 - pair.g2
    if n_start is None:
        n_start = 1
    rows = []
    for n in range(n_start, n_start + n_points):
        x = ring(ring.p ** n)
        dv = (diff(x)).ord()
        lv = [s(x).ord() for s in data.differences.values()]
        lv = [o for o in lv if o is not None]
        rows.append((n, None if dv is None else Fraction(dv, ring.e),
                     None if not lv else Fraction(min(lv), ring.e)))
    return rows


# localizing on root-free sub-disks

@dataclass
class Localization:
    radius: int         # the sub-disk |Y - x| <= p^(-radius)
    s: Fraction         # f = p^s * unit there (s in v(p) units)
    data: object        # WeierstrassData of the rescaled series (P = 1)


def shift_and_rescale(f, x, r):
    """h(Z) = f(x + p^r Z), precision capped by the neglected tail."""
    ring = f.ring
    n = f.n
    p = ring.p
    xo = x.ord() if not x.is_zero() else None
    out = []
    for j in range(n):
        acc = ring.zero()
        for i in range(j, n):
            c = f.coeffs[i]
            if c.is_zero() and c.prec >= ring.max_precision:
                continue
            term = c if i == j else c * math.comb(i, j) * (x ** (i - j))
            acc = acc + term
        acc = acc * (p ** (r * j))
        if xo is not None:
            acc = acc.reduce(min(acc.prec, (n - j) * xo + r * j * ring.e))
        out.append(acc)
    return PadicPowerSeries(ring, out, n, f.rescale + r)


def localize_away_from_roots(f, x=None, radius=0, max_radius=None):
    """Smallest r >= radius with f = p^s * unit on |Y - x| <= p^(-r)."""
    ring = f.ring
    if x is None:
        x = ring.zero()
    if f(x).is_zero():
        raise ValueError("f vanishes at the centre")
    max_radius = ring.prec if max_radius is None else max_radius
    for r in range(radius, max_radius + 1):
        h = shift_and_rescale(f, x, r)
        mu = h.mu()
        if mu is None:
            continue
        if h.coeffs[0].ord() == mu and all(c.ord() is None or c.ord() > mu for c in h.coeffs[1:]):
            return Localization(r, Fraction(mu, ring.e), weierstrass_prep(h))
    raise ValueError("no root-free sub-disk found up to the precision budget")


# ramified model

@dataclass
class KValue:
    """pi^shift * unit in K = Frac(O_K)."""
    shift: int
    unit: object

    def __str__(self):
        return f"pi^{self.shift} * {self.unit}"


@dataclass
class RamifiedBranchModel:
    t: int
    e: int
    u: PadicPowerSeries

    def __post_init__(self):
        if self.e < 1:
            raise ValueError("ramification index must be at least 1")
        if not self.u.coeffs[0].is_unit():
            raise ValueError("u(0) must be a unit")

    @property
    def ring(self):
        return self.u.ring

    def dT_dY_factor(self):
        """Y u' + e u, so that dT/dY = pi^t Y^(e-1) (Y u' + e u)."""
        du = self.u.derivative()
        n = self.u.n
        ring = self.ring
        yd = PadicPowerSeries(ring, [ring.zero()] + du.coeffs, n, self.u.rescale)
        return yd + self.u * self.e


@dataclass
class LaurentSeries:
    """Y^(-pole) pi^(-shift) s(Y) with s(0) a unit.  series is None when the
    expansion is not integral after removing pi^shift (the p | e case)."""
    pole: int
    shift: int
    lead: object
    series: object = None
    diagnostic: str = ""

    def leading(self):
        return KValue(-self.shift, self.lead)


def inverse_derivative(model):
    """dY/dT = 1 / (pi^t Y^(e-1) (Y u' + e u)) as a Laurent series in Y."""
    h = model.dT_dY_factor()
    ring = model.ring
    o = _y_order(h)
    if o is None:
        raise ValueError("Y u' + e u vanishes at working precision")
    hs = h.shift_down(o)
    c0 = hs.coeffs[0]
    v = c0.ord()
    pole = model.e - 1 + o
    if v:
        lead = c0.divide_by_pi(v).inverse()
        diag = (f"p | e: the leading coefficient e*u(0) has valuation {Fraction(v, ring.e)}; "
                "the pole order is read from ord_Y(Y u' + e u) and the expansion is not integral")
        return LaurentSeries(pole, model.t * ring.e + v, lead, None, diag)
    inv = hs.inverse()
    return LaurentSeries(pole, model.t * ring.e, inv.coeffs[0], inv)


def ramified_derivative_pole(model):
    """Pole order at Y = 0 of dY/dT."""
    return inverse_derivative(model).pole


@dataclass
class RamificationVerdict:
    is_ramified: bool
    index: object
    max_pole: int
    witness: object = None
    diagnostic: str = ""

    def to_json(self):
        return {"is_ramified": self.is_ramified, "index": self.index, "max_pole": self.max_pole,
                "witness": None if self.witness is None else str(self.witness), "diagnostic": self.diagnostic}


def ramification_from_lfunction(model, family):
    """d/dT L(chi) = L'(Y) dY/dT; the largest pole order plus one estimates the
    ramification index."""
    lap = inverse_derivative(model)
    best, witness, any_linear, all_zero = 0, None, False, True
    for chi in sorted(family, key=str):
        d = family[chi].derivative()
        o = _y_order(d)
        if o is None:
            continue
        all_zero = False
        if o == 0:
            any_linear = True
        pole = max(0, lap.pole - o)
        if pole > best:
            best, witness = pole, chi
    notes = [lap.diagnostic] if lap.diagnostic else []
    if all_zero:
        return RamificationVerdict(False, None, 0, None, "inconclusive: every L(chi) is constant at working precision")
    if model.e > 1 and not any_linear:
        notes.append("no character with nonzero linear coefficient: the index is a lower estimate")
    if best == 0:
        if model.e > 1 and not any_linear:
            return RamificationVerdict(False, None, 0, None, "; ".join(notes) or "inconclusive")
        return RamificationVerdict(False, 1, 0, None, "; ".join(notes))
    return RamificationVerdict(True, best + 1, best, witness, "; ".join(notes))

