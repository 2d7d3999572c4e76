"""Twisted special values alpha(Lambda(chi)) of modular symbols.

The divisor {r} - {oo} is evaluated as the path symbol {r, oo}; paths are
expanded into Manin symbols through the continued-fraction convergents of r
with the convention p_{-2}/q_{-2} = 0/1, p_{-1}/q_{-1} = 1/0.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction

import numpy as np

from .characters import DirichletCharacter, conductor_set_X, enumerate_characters
from .modsym import binomial_action
from .padic import CyclotomicElement, PadicScalar, _zeta_power_table, totient


def convergents(a, b):
    """Continued-fraction convergents (p_j, q_j), j = -1..r, of a/b (b > 0)."""
    if b <= 0:
        raise ValueError("denominator must be positive")
    g = math.gcd(a, b)
    a, b = a // g, b // g
    out = [(1, 0)]
    p2, q2, p1, q1 = 0, 1, 1, 0
    while True:
        t = a // b
        p, q = t * p1 + p2, t * q1 + q2
        out.append((p, q))
        p2, q2, p1, q1 = p1, q1, p, q
        a, b = b, a - t * b
        if b == 0:
            break
    return out


def path_to_manin(a, b):
    """{oo, a/b} as a list of (matrix h in SL_2(Z), bottom row) with
    P{oo, a/b} = sum_h [P o h, (c_h, d_h)]."""
    conv = convergents(a, b)
    out = []
    for j in range(len(conv) - 1):
        pj, qj = conv[j]
        pn, qn = conv[j + 1]
        # h = [[pn, pj], [qn, qj]] maps 0 -> pj/qj and oo -> pn/qn
        det = pn * qj - pj * qn
        if det == -1:
            pn, qn = -pn, -qn
        out.append((pn, pj, qn, qj))
    return out


def symbol_terms(space, i, a, b):
    """X^i Y^(n-i){a/b, oo} as a list of (generator, coefficient)."""
    n = space.n
    terms = {}
    for (A, B, C, D) in path_to_manin(a, b):
        g = space.pair_id(C, D)
        if g is None:
            raise ValueError("path leaves the space")
        base = g * (n + 1)
        for t, coeff in binomial_action(n, A, B, C, D)[i]:
            # {a/b, oo} = -{oo, a/b}
            terms[base + t] = terms.get(base + t, 0) - coeff
    return [(g, c) for g, c in sorted(terms.items()) if c]


def evaluate_path(alpha, i, a, b):
    """alpha(X^i Y^(n-i){a/b, oo})."""
    return alpha.evaluate(symbol_terms(alpha.space, i, a, b))


@dataclass
class TwistDivisor:
    """sum_m coeff[m] ({m/D} - {oo}) with coeff[m] = conj(chi)(m)."""
    chi: DirichletCharacter
    terms: list = field(default_factory=list)   # (m, D, CyclotomicElement)

    def coefficient_sum(self):
        acc = CyclotomicElement(self.chi.order, [0])
        for _, _, c in self.terms:
            acc = acc + c
        return acc


def lambda_divisor(chi):
    if not chi.is_primitive():
        raise ValueError("Lambda(chi) needs a primitive character")
    D = chi.modulus
    cb = chi.conj()
    terms = []
    for m in range(D):
        if D == 1 or math.gcd(m, D) == 1:
            terms.append((m, D, cb(m)))
    return TwistDivisor(chi, terms)


def twist_values(alpha, D, m):
    """[alpha(X^m Y^(n-m){a/D, oo}) for a in 0..D-1] (None when gcd(a, D) > 1)."""
    out = []
    for a in range(D):
        if D > 1 and math.gcd(a, D) != 1:
            out.append(None)
        else:
            out.append(evaluate_path(alpha, m, a, D))
    return out


def _check_m(alpha, m):
    if not 0 <= m <= alpha.space.n:
        raise ValueError(f"twist degree {m} outside [0, {alpha.space.n}]")


def special_value(alpha, chi, m=0, values=None):
    """L(alpha, chi, m) = sum_a conj(chi)(a) alpha(X^m Y^(n-m){a/D, oo}) as a
    CyclotomicElement over the ring of alpha, in Z[zeta_ord(chi)]."""
    _check_m(alpha, m)
    if not chi.is_primitive():
        raise ValueError("special values use primitive characters")
    D = chi.modulus
    if values is None:
        values = twist_values(alpha, D, m)
    n = chi.order
    buckets = {}
    for a, v in enumerate(values):
        if v is None:
            continue
        k = chi.exponent(a) if D > 1 else 0
        j = (-k) % n
        buckets[j] = buckets[j] + v if j in buckets else v
    zero = alpha.ring.zero() if alpha.ring is not None else 0
    coeffs = [zero] * totient(n)
    table = _zeta_power_table(n)
    for j, s in buckets.items():
        for t, c in enumerate(table[j]):
            if c:
                coeffs[t] = coeffs[t] + s * c
    return CyclotomicElement(n, coeffs)


def cyclotomic_valuation(x):
    """min ord over the power-basis coordinates (pi units); None if all vanish."""
    best = None
    for c in x.coeffs:
        o = c.ord() if isinstance(c, PadicScalar) else (None if c == 0 else 0)
        if o is not None and (best is None or o < best):
            best = o
    return best


_TERMS_CACHE = {}


def path_terms_table(space, D, m):
    """Cached symbol_terms for X^m Y^(n-m){a/D, oo}, a = 0..D-1 (None off units)."""
    key = (id(space), D, m)
    if key not in _TERMS_CACHE:
        _TERMS_CACHE[key] = [None if (D > 1 and math.gcd(a, D) != 1) else symbol_terms(space, m, a, D)
                             for a in range(D)]
    return _TERMS_CACHE[key]


@lru_cache(maxsize=None)
def _np_table(n):
    return np.array(_zeta_power_table(n), dtype=np.int64)


def _coords_matrix(alpha, D, m):
    """Integer array (#units, e*f) of alpha on the paths {a/D, oo}, the unit list
    and the common precision."""
    ring = alpha.ring
    terms = path_terms_table(alpha.space, D, m)
    width = ring.e * ring.f
    gens = np.array([[c for row in v.coeffs for c in row] for v in alpha.values], dtype=object)
    units, rows = [], []
    for a, t in enumerate(terms):
        if t is None:
            continue
        units.append(a)
        acc = np.zeros(width, dtype=object)
        for g, c in t:
            acc = acc + gens[g] * c
        rows.append(acc % ring.mod)
    prec = min(v.prec for v in alpha.values)
    return np.array(rows, dtype=object).reshape(len(rows), width), units, prec


def entry_ords(coords, ring):
    """Array of ord (pi units) for each entry of a coordinate array whose column
    c holds the pi^(c // f) theta^(c % f) coordinate; -1 marks a zero entry."""
    p, e, f = ring.p, ring.e, ring.f
    x = np.array(coords, dtype=object)
    out = np.full(x.shape, -1, dtype=np.int64)
    v = np.zeros(x.shape, dtype=np.int64)
    nz = x != 0
    cur = x.copy()
    for _ in range(ring.prec):
        div = nz & (cur % p == 0)
        if not div.any():
            break
        v[div] += 1
        cur[div] = cur[div] // p
    shift = np.array([c // f for c in range(x.shape[-1])], dtype=np.int64)
    out[nz] = (e * v + shift)[nz]
    return out


def row_ords(coords, ring, prec):
    """ord of the element in each row; None-free list where prec marks 'zero at precision'."""
    eo = entry_ords(coords, ring)
    big = np.where(eo < 0, prec, eo)
    return np.minimum(big.min(axis=1), prec) if big.size else np.zeros(0, dtype=np.int64)


def value_coords(alpha, D, m, characters):
    """Yield (chi, coordinate array) of L(alpha, chi, m): rows are power-basis
    coefficients in Z[zeta_ord(chi)], columns the O_K coordinates."""
    ring = alpha.ring
    arr, units, prec = _coords_matrix(alpha, D, m)
    mod = ring.mod
    small = mod * max(D, 1) < 2 ** 62 // 64
    if small:
        arr = arr.astype(np.int64)
    for chi in characters:
        n = chi.order
        idx = np.array([(-chi.exponent(a)) % n if D > 1 else 0 for a in units], dtype=np.int64)
        S = np.zeros((n, arr.shape[1]), dtype=arr.dtype)
        np.add.at(S, idx, arr)
        S = S % mod
        table = _np_table(n)
        if small and int(np.abs(table).max()) * n * mod < 2 ** 62:
            coords = (table.T @ S) % mod
        else:
            coords = (table.T.astype(object) @ S.astype(object)) % mod
        yield chi, coords


def all_special_value_valuations(alpha, D, m=0, characters=None):
    """{chi: ord of L(alpha, chi, m)} over primitive characters mod D (or the
    given list), from bucketed sums over the residues.  None marks a value that
    vanishes at the working precision."""
    _check_m(alpha, m)
    if characters is None:
        characters = [c for c in enumerate_characters(D) if c.is_primitive()]
    prec = min(v.prec for v in alpha.values)
    out = {}
    for chi, coords in value_coords(alpha, D, m, characters):
        o = int(row_ords(coords, alpha.ring, prec).min()) if coords.size else prec
        out[chi] = None if o >= prec else o
    return out


def character_test_set(p, r, N, B, extra_moduli=()):
    """Primitive characters with conductor in X(p, r, N, 0, B), the trivial
    character, and primitive characters of the extra moduli."""
    chars = [DirichletCharacter.trivial(1)]
    for q in conductor_set_X(p, r, N, 0, B):
        chars += [c for c in enumerate_characters(q) if c.is_primitive()]
    for D in extra_moduli:
        chars += [c for c in enumerate_characters(D) if c.is_primitive() and D > 1]
    return chars


def lvalue_exponent(alpha, characters, m_range=None):
    """min over (chi, m) of ord L(alpha, chi, m), or None when every value vanishes."""
    if m_range is None:
        m_range = range(alpha.space.n + 1)
    by_mod = {}
    for c in characters:
        by_mod.setdefault(c.modulus, []).append(c)
    best = None
    for D, chars in sorted(by_mod.items()):
        for m in m_range:
            for o in all_special_value_valuations(alpha, D, m, chars).values():
                if o is not None and (best is None or o < best):
                    best = o
    return best


def is_cuspidal(alpha):
    """True when alpha vanishes on the Eisenstein part of the space."""
    space = alpha.space
    E = space.eisenstein_subspace()
    for row in E.to_list():
        fr = [Fraction(int(x.numerator), int(x.denominator)) for x in row]
        den = math.lcm(1, *[x.denominator for x in fr])
        ints = [int(x * den) for x in fr]
        g = math.gcd(*ints) or 1
        acc = alpha.ring.zero()
        for b, x in enumerate(ints):
            if x:
                acc = acc + alpha.values[space.basis[b]] * (x // g)
        if not acc.is_zero():
            return False
    return True


def determination_check(alpha, p, r, N, B, m=0):
    """Search the trivial character, then characters of conductor in X up to B,
    for a nonzero L(alpha, chi, m).  Returns a verdict dict."""
    if alpha.is_zero():
        return {"verdict": "zero symbol", "character": None}
    if not is_cuspidal(alpha):
        raise ValueError("determination needs a cuspidal symbol: it does not vanish on the Eisenstein part")
    triv = DirichletCharacter.trivial(1)
    v = special_value(alpha, triv, m)
    if not v.is_zero():
        return {"verdict": "nonzero value found", "character": triv.to_json(),
                "valuation": cyclotomic_valuation(v)}
    for q in conductor_set_X(p, r, N, 0, B):
        vals = all_special_value_valuations(alpha, q, m)
        for chi, o in vals.items():
            if o is not None:
                return {"verdict": "nonzero value found", "character": chi.to_json(), "valuation": o}
    return {"verdict": f"not found below {B}", "character": None}
