"""The modular-symbol measure a + p^r M Z_p -> alpha^(-r) psi_alpha({a/(p^r M), oo}),
its Riemann sums at finite-order characters, one-variable truncations L_psi(T),
congruences of these L-functions, and Euler factors for old/new comparisons."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .characters import DirichletCharacter, enumerate_characters
from .congruence import AtLeast, _exp, align_exponent, qexp_congruence_exponent
from .padic import CyclotomicElement, LocalRing, PadicScalar, find_roots, teichmuller, totient, vp_int
from .series import PadicPowerSeries, _lift_scalar, newton_polygon, weierstrass_prep
from .special_values import evaluate_path, special_value


class NotOrdinaryError(ValueError):
    """The U_p (or T_p) eigenvalue is not a p-adic unit."""


class UnsupportedCharacterError(ValueError):
    """Interpolation is only implemented for characters ramified at p."""


def ordinary_projection(space, p, prec=10, max_steps=None):
    """lim U^(n!) mod p^prec on the whole space (rows convention), U = U_p for
    p | N and T_p otherwise; the limit is idempotent and commutes with U.
    A unipotent part mod p needs n! divisible by about p^(prec + dim), so the
    default step budget is p (prec + dim + 2)."""
    op = space.hecke_operator(p).to_list()
    mod = p ** prec
    rows = []
    for row in op:
        out = []
        for x in row:
            num, den = int(x.numerator), int(x.denominator)
            if den % p == 0:
                raise ValueError("Hecke matrix is not p-integral in the Manin basis")
            out.append(num * pow(den, -1, mod) % mod)
        rows.append(out)
    U = np.array(rows, dtype=object).reshape(len(rows), len(rows))

    def mul(A, B):
        return (A.dot(B)) % mod

    def power(A, k):
        R = np.identity(A.shape[0], dtype=object)
        while k:
            if k & 1:
                R = mul(R, A)
            k >>= 1
            if k:
                A = mul(A, A)
        return R

    if max_steps is None:
        max_steps = p * (prec + len(rows) + 2)
    B = U
    for j in range(2, max_steps + 2):
        B = power(B, j)
        if np.array_equal(mul(B, B), B):
            return B
    raise ValueError("ordinary projector did not stabilize at this precision")


class SymbolMeasure:
    """The measure attached to a weight-2 eigen-symbol of sign +-1 and its unit
    root alpha; symbols of level prime to p are p-stabilized:
    psi_alpha({r}) = psi({r}) - eps(p) p^(k-2) / alpha * psi({p r})."""

    def __init__(self, symbol, M=1):
        if symbol.k != 2:
            raise ValueError("the measure is implemented for weight 2 symbols")
        p = symbol.p
        if M < 1 or M % p == 0:
            raise ValueError("tame level M must be a positive integer prime to p")
        self.symbol = symbol
        self.ring = symbol.ring
        self.p = p
        self.M = M
        ap = symbol.eigenvalue(p)
        if symbol.N % p == 0:
            if not ap.is_unit():
                raise NotOrdinaryError(f"U_{p} eigenvalue has valuation {ap.valuation()}")
            self.alpha = ap
            self.stabilizer = None
        else:
            if not ap.is_unit():
                raise NotOrdinaryError(f"a_{p} = {ap} is not a unit: {symbol.label} is not ordinary at {p}")
            eps = symbol.field.embed(symbol.nebentypus_value(p), symbol.root)
            c = eps * (p ** (symbol.k - 1))
            roots = [r for r in find_roots([c, -ap, self.ring.one()], self.ring) if r.is_unit()]
            if len(roots) != 1:
                raise NotOrdinaryError("no unique unit root of the Hecke polynomial at p")
            self.alpha = roots[0]
            self.stabilizer = eps * (p ** (symbol.k - 2)) / self.alpha
        self.alpha_inv = self.alpha.inverse()
        self._paths = {}

    def __repr__(self):
        return f"SymbolMeasure({self.symbol.label}, p={self.p}, M={self.M})"

    def _path(self, a, b):
        g = math.gcd(a, b)
        key = ((a // g) % (b // g), b // g)
        if key not in self._paths:
            self._paths[key] = evaluate_path(self.symbol, 0, key[0], key[1])
        return self._paths[key]

    def psi_alpha(self, a, b):
        v = self._path(a, b)
        if self.stabilizer is not None:
            v = v - self.stabilizer * self._path(self.p * a, b)
        return v

    def measure_value(self, a, r):
        """alpha^(-r) psi_alpha({a/(p^r M), oo})."""
        if r < 0:
            raise ValueError("r must be non-negative")
        if r * self.ring.e > self.ring.max_precision:
            raise ValueError("r exceeds the precision budget")
        D = self.p ** r * self.M
        return self.psi_alpha(a % D, D) * (self.alpha_inv ** r)

    def distribution_defect(self, a, r):
        """sum over lifts a' of a mod p^(r+1) M of mu(a', r+1), minus mu(a, r)."""
        D = self.p ** r * self.M
        acc = self.ring.zero()
        for j in range(self.p):
            acc = acc + self.measure_value(a + j * D, r + 1)
        return acc - self.measure_value(a, r)


def _p_part(D, p):
    r = vp_int(D, p)
    return r, D // p ** r


def evaluate_at_character(mu, chi):
    """sum_a conj(chi)(a) mu(a + p^r M Z_p) for chi of conductor p^r M, r >= 1,
    as a CyclotomicElement over the measure ring."""
    if not chi.is_primitive():
        raise ValueError("characters must be primitive")
    r, M = _p_part(chi.modulus, mu.p)
    if r == 0:
        raise UnsupportedCharacterError("characters unramified at p need an Euler factor "
                                        "that is not part of the interpolation formula")
    if M != mu.M:
        raise ValueError(f"tame conductor {M} differs from the measure's tame level {mu.M}")
    n = chi.order
    buckets = {}
    for a in range(chi.modulus):
        k = chi.exponent(a)
        if k is None:
            continue
        j = (-k) % n
        v = mu.measure_value(a, r)
        buckets[j] = buckets[j] + v if j in buckets else v
    return CyclotomicElement(n, [0]) + sum((CyclotomicElement.zeta_power(n, j) * v for j, v in buckets.items()),
                                           CyclotomicElement(n, [0]))


@dataclass
class OneVarLFunction:
    """L_psi(T) mod ((1 + T)^(p^n) - 1) for each character psi of (Z/pM)^x."""
    measure: SymbolMeasure
    depth: int
    components: dict = field(default_factory=dict)


def log_index_table(p, n):
    """s with (1 + p)^s = x mod p^(n+1), for x in 1 + pZ/p^(n+1)."""
    if p == 2:
        raise ValueError("p = 2 is not supported")
    mod = p ** (n + 1)
    out, x = {}, 1
    for s in range(p ** n):
        out[x] = s
        x = x * (1 + p) % mod
    return out


def series_truncation(mu, psi, n, ring=None):
    """sum over a mod p^(n+1) M of psi(a) mu(a, n+1) (1 + T)^s(a) with
    <a> = a / omega(a) = (1 + p)^s(a), written in the basis T^j, j < p^n.
    psi is a DirichletCharacter of modulus pM (embedded into ring) or a callable
    returning elements of ring."""
    ring = mu.ring if ring is None else ring
    p, M = mu.p, mu.M
    if (n + 1) * ring.e > ring.max_precision:
        raise ValueError("depth exceeds the precision budget")
    if isinstance(psi, DirichletCharacter):
        if psi.modulus != p * M:
            raise ValueError("psi must be a character of (Z/pM)^x")
        table = psi.embedded_table(ring)
        psi_fn = lambda a: table.get(a % (p * M), ring.zero())
    else:
        psi_fn = psi
    logs = log_index_table(p, n)
    mod = p ** (n + 1)
    L = mod * M
    size = p ** n
    c = [ring.zero() for _ in range(size)]
    for a in range(L):
        if math.gcd(a, p * M) != 1:
            continue
        w = teichmuller(p, a % p, n + 1)
        s = logs[a * pow(w, -1, mod) % mod]
        v = mu.measure_value(a, n + 1)
        if ring is not mu.ring:
            v = ring(_lift_scalar(v, ring))
        c[s] = c[s] + psi_fn(a) * v
    coeffs = []
    for j in range(size):
        acc = ring.zero()
        for s in range(j, size):
            b = math.comb(s, j)
            if b:
                acc = acc + c[s] * b
        coeffs.append(acc)
    return PadicPowerSeries(ring, coeffs, size)


def specialize(series, zeta):
    """series(zeta - 1) for a root of unity zeta in the series' ring."""
    return series(zeta - series.ring.one())


def two_path_values(mu, chi, depth=None):
    """Riemann sum at chi against the specialization of L_psi(T) at T = zeta - 1,
    both in Z_p[zeta_{p^(r-1)}], for chi of conductor p^r M (measure over Z_p)."""
    base = mu.ring
    if base.e != 1 or base.f != 1:
        raise ValueError("two-path comparison needs a measure over Z_p")
    p, M = mu.p, mu.M
    r, tame = _p_part(chi.modulus, p)
    if r == 0:
        raise UnsupportedCharacterError("character unramified at p")
    if tame != M:
        raise ValueError("tame conductor mismatch")
    R = LocalRing.cyclotomic(p, r - 1, base.prec) if r > 1 else base
    n = r - 1 if depth is None else depth
    cb = chi.conj().embedded_table(R)
    D = chi.modulus
    pr = p ** r

    def lift_to(b_p, b_M):
        # CRT: x = b_p mod p^r, x = b_M mod M
        if M == 1:
            return b_p % pr
        return (b_p * M * pow(M, -1, pr) + b_M * pr * pow(pr, -1, M)) % D

    def psi(a):
        return cb[lift_to(teichmuller(p, a % p, r), a % M)]

    zeta = cb[lift_to(1 + p, 1)]
    Ls = series_truncation(mu, psi, n, R)
    via_series = specialize(Ls, zeta)
    direct = R.zero()
    for a in range(D):
        if a in cb:
            v = mu.measure_value(a, r)
            direct = direct + cb[a] * (R(_lift_scalar(v, R)) if R is not base else v)
    formal = _embed_lifted(evaluate_at_character(mu, chi), R, base)
    special = _embed_lifted(special_value(mu.symbol, chi), R, base) * (R(_lift_scalar(mu.alpha_inv, R)) ** r)
    return {"series": via_series, "riemann": direct, "formal": formal, "special": special, "ring": R}


def _embed_lifted(x, R, base):
    z = R.zeta(x.n)
    acc, zp = R.zero(), R.one()
    for coef in x.coeffs:
        if isinstance(coef, PadicScalar):
            acc = acc + (R(_lift_scalar(coef, R)) if R is not base else coef) * zp
        elif coef:
            acc = acc + R(coef) * zp
        zp = zp * z
    return acc


# congruences of one-variable L-functions

def omega_powers(p, sign):
    """Characters omega^i of (Z/p)^x with parity sign."""
    out = []
    for chi in enumerate_characters(p):
        if chi.parity() == sign:
            out.append(chi)
    return out


@dataclass
class LFunCongruenceReport:
    t: object
    r_q: object
    verdict: str
    depth: int
    characters: list
    chain: list = field(default_factory=list)

    def to_json(self):
        enc = lambda x: x.to_json() if hasattr(x, "to_json") else x
        return {"t": enc(self.t), "r_q": enc(self.r_q), "verdict": self.verdict, "depth": self.depth,
                "characters": self.characters,
                "chain": [{k: (str(v) if isinstance(v, Fraction) else v) for k, v in row.items()} for row in self.chain]}


def _cap(r, prec):
    if isinstance(r, AtLeast) or r >= prec:
        return AtLeast(prec)
    return r


def corollary_chain(D, t, s_values=(2, 3, 4)):
    """Weierstrass data of a difference D = pi^r u P and, for each s, the
    valuation of P at a point of valuation 1/phi(p^s) against deg P/phi(p^s),
    with the bound t v(pi) <= r v(pi) + deg P/phi(p^s)."""
    ring = D.ring
    w = weierstrass_prep(D)
    poly = newton_polygon(w.P)
    rows = []
    for s in s_values:
        lam = Fraction(1, totient(ring.p ** s))
        vP = poly.value_at(lam)
        rhs = Fraction(w.mu, ring.e) + w.degree * lam
        lhs = Fraction(t, ring.e) if not isinstance(t, AtLeast) else None
        rows.append({"s": s, "r": w.mu, "deg_P": w.degree, "v_P": vP, "expected": w.degree * lam,
                     "identity": vP == w.degree * lam, "bound": lhs is None or lhs <= rhs})
    return rows


def lfun_congruence_check(f, g, depth=1, precision=None, chain=True):
    """Largest t with L_psi(f) = u L_psi(g) mod pi^t over the characters
    omega^i of the right parity, for the best unit u; compared with the
    q-expansion congruence exponent."""
    if f.ring != g.ring:
        raise ValueError("eigen-symbols live in different rings")
    mf, mg = SymbolMeasure(f), SymbolMeasure(g)
    ring = f.ring
    prec = ring.max_precision if precision is None else precision * ring.e
    chars = omega_powers(ring.p, f.sign)
    xs, ys, per = [], [], []
    for psi in chars:
        a = series_truncation(mf, psi, depth)
        b = series_truncation(mg, psi, depth)
        xs += a.coeffs
        ys += b.coeffs
        per.append((psi, a, b))
    t, u = align_exponent(xs, ys)
    t = _cap(t, prec)
    rq = _cap(qexp_congruence_exponent(f, g), prec)
    rows = []
    if chain and u is not None:
        for psi, a, b in per:
            D = a - b * u
            if D.mu() is None:
                continue
            for row in corollary_chain(D, t):
                row["psi"] = list(psi.exponents)
                rows.append(row)
    verdict = "consistent" if t == rq else "falsified: t != r_q"
    return LFunCongruenceReport(t, rq, verdict, depth, [c.to_json() for c in chars], rows)


# Euler factors

@dataclass
class EulerFactorContext:
    """Primes in Sigma with their Hecke data: eigen[l] = (a_l, eps(l)) as exact
    rationals (or ring elements), level_a the level N(a) of the newform side."""
    sigma: tuple
    level_a: int
    weight: int
    eigen: dict
    l_power: int = 3        # exponent of l in the chi(l^2) <l> l^(-l_power) term

    def __post_init__(self):
        for l in self.sigma:
            if l not in self.eigen:
                raise ValueError(f"missing eigenvalue at {l}")


def euler_factor(ctx, chi, l):
    """1 - chi(l) a_l / l + chi(l^2) <l> / l^l_power (l prime to N(a)), with
    <l> = eps(l) l^k; 1 - chi(l) a_l / l when l | N(a)."""
    if l not in ctx.eigen:
        raise ValueError(f"missing eigenvalue at {l}")
    al, eps = ctx.eigen[l]
    one = CyclotomicElement(chi.order, [1])
    out = one - chi(l) * (Fraction(al) / l if not isinstance(al, PadicScalar) else al * Fraction(1, l))
    if ctx.level_a % l:
        br = Fraction(eps) * Fraction(l) ** ctx.weight if not isinstance(eps, PadicScalar) else eps * (l ** ctx.weight)
        out = out + chi(l * l) * (br / Fraction(l) ** ctx.l_power if not isinstance(br, PadicScalar) else br * Fraction(1, l ** ctx.l_power))
    return out


def euler_product(ctx, chi):
    acc = CyclotomicElement(chi.order, [1])
    for l in ctx.sigma:
        acc = acc * euler_factor(ctx, chi, l)
    return acc


def _to_ring(x, ring):
    return CyclotomicElement(x.n, [c if isinstance(c, PadicScalar) else ring(c) for c in x.coeffs])


def _embed(x, ring):
    z = ring.zeta(x.n)
    acc, zp = ring.zero(), ring.one()
    for c in x.coeffs:
        acc = acc + (c if isinstance(c, PadicScalar) else ring(c)) * zp
        zp = zp * z
    return acc


@dataclass
class OldNewVerdict:
    verdict: str
    unit: object            # u = num / den, or None
    unit_valuation: object
    solved_from: object
    checked: list

    @property
    def passed(self):
        return self.verdict == "pass"

    def to_json(self):
        return {"verdict": self.verdict, "unit_valuation": None if self.unit_valuation is None else str(self.unit_valuation),
                "solved_from": self.solved_from, "checked": self.checked}


def old_new_comparison(old, new, ctx, characters, m=0):
    """value(old, chi) = u E_Sigma(chi) value(new, chi) with one u solved from
    the first usable character (values embedded through ring.zeta) and verified
    exactly on every character by cross-multiplication.  Passes when the
    relation holds for all characters and u is a unit."""
    ring = new.ring
    if old.ring != ring:
        raise ValueError("symbols over different rings")
    rows = []
    for chi in characters:
        vo = special_value(old, chi, m)
        vn = special_value(new, chi, m)
        E = _to_ring(euler_product(ctx, chi), ring)
        rows.append((chi, vo, vn * E))
    num = den = src = None
    for chi, vo, ven in rows:
        try:
            ring.zeta(chi.order)
        except ValueError:
            continue
        d = _embed(ven, ring)
        if d.is_zero():
            continue
        num, den, src = _embed(vo, ring), d, chi
        break
    if num is None:
        return OldNewVerdict("undefined: every tested value vanishes or needs a larger ring", None, None, None, [])
    uval = Fraction((num.ord() if not num.is_zero() else ring.max_precision) - den.ord(), ring.e)
    checked, ok = [], True
    for chi, vo, ven in rows:
        diff = vo * den - ven * num
        o = min((c.ord() for c in diff.coeffs if isinstance(c, PadicScalar) and c.ord() is not None), default=None)
        good = diff.is_zero()
        ok &= good
        checked.append({"character": chi.to_json(), "agrees": good, "defect_ord": o})
    u = num / den if uval >= 0 else None
    if not ok:
        verdict = "fail: ratio depends on the character"
    elif uval != 0:
        verdict = f"fail: the chi-independent ratio has valuation {uval}, not a unit"
    else:
        verdict = "pass"
    return OldNewVerdict(verdict, u, uval, src.to_json(), checked)
