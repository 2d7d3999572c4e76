"""Congruence exponents between eigen-symbols: q-expansions against special values."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .characters import DirichletCharacter, enumerate_characters
from .eigen import SymbolFunctional, integral_functionals, qexpansion
from .modsym import sturm_bound
from .special_values import character_test_set, lvalue_exponent, row_ords, value_coords


@dataclass(frozen=True)
class AtLeast:
    """An exponent known only to be at least the working precision."""
    value: int

    def __str__(self):
        return f">= {self.value}"

    def to_json(self):
        return {"at_least": self.value}


def exponent_to_json(r):
    return r.to_json() if isinstance(r, AtLeast) else r


def _exp(best, prec):
    if best is None or best >= prec:
        return AtLeast(prec)
    return best


def _same_ring(f, g):
    if f.ring != g.ring:
        raise ValueError(f"eigen-symbols live in different rings: {f.ring} vs {g.ring}")
    return f.ring


def qexp_congruence_exponent(f, g, bound=None):
    """min over n <= bound of ord(a_n(f) - a_n(g)).  When the levels differ only
    n prime to both levels are compared; differing weights are an error."""
    if f.k != g.k:
        raise ValueError("eigen-symbols of different weight")
    ring = _same_ring(f, g)
    if bound is None:
        bound = sturm_bound(math.lcm(f.N, g.N), f.k)
    bad = 1 if f.N == g.N else f.N * g.N
    best = None
    prec = ring.max_precision
    # the minimum can stop early once it reaches 0; grow the horizon geometrically
    start, horizon = 1, min(bound, 16)
    while True:
        A, B = qexpansion(f, horizon), qexpansion(g, horizon)
        for n in range(start, horizon + 1):
            if math.gcd(n, bad) != 1:
                continue
            d = A[n - 1] - B[n - 1]
            prec = min(prec, d.prec)
            o = d.ord()
            if o is not None and (best is None or o < best):
                best = o
        if best == 0 or horizon >= bound:
            break
        start, horizon = horizon + 1, min(bound, 2 * horizon)
    return _exp(best, prec)


def align_exponent(xs, ys):
    """max over units u of min_i ord(x_i - u y_i), for ring elements x_i, y_i.

    With j the first index where y has minimal valuation, u = x_j / y_j is optimal
    whenever it is a unit; otherwise every unit gives min(min ord x, min ord y)."""
    ords_y = [y.ord() for y in ys]
    ords_x = [x.ord() for x in xs]
    prec = min([x.prec for x in xs] + [y.prec for y in ys])
    vy = [o for o in ords_y if o is not None]
    vx = [o for o in ords_x if o is not None]
    if not vy:
        return _exp(min(vx, default=None), prec), None
    ty = min(vy)
    j = ords_y.index(ty)
    if ords_x[j] != ty:
        return _exp(min(vx + [ty]), prec), None
    u = xs[j] / ys[j]
    best = None
    for x, y in zip(xs, ys):
        d = x - u * y
        prec = min(prec, d.prec)
        o = d.ord()
        if o is not None and (best is None or o < best):
            best = o
    return _exp(best, prec), u


def value_array(alpha, characters, m_range):
    """All tested special values of alpha stacked as one coordinate array."""
    by_mod = {}
    for c in characters:
        by_mod.setdefault(c.modulus, []).append(c)
    blocks = []
    for D in sorted(by_mod):
        for m in m_range:
            for _, coords in value_coords(alpha, D, m, by_mod[D]):
                blocks.append(np.array(coords, dtype=object))
    return np.vstack(blocks)


def _mult_matrix(u):
    """Integer matrix of x -> u x on the coordinates pi^i theta^j (row convention)."""
    ring = u.ring
    rows = []
    for i in range(ring.e):
        for j in range(ring.f):
            basis = [[0] * ring.f for _ in range(ring.e)]
            basis[i][j] = 1
            y = ring.from_coeffs(basis) * u
            rows.append([c for r in y.coeffs for c in r])
    return np.array(rows, dtype=object)


def _element(ring, row, prec):
    f = ring.f
    return ring.from_coeffs([[int(x) for x in row[i * f:(i + 1) * f]] for i in range(ring.e)], prec)


def align_arrays(X, Y, ring, prec):
    """align_exponent on coordinate arrays (rows are ring elements)."""
    oy = row_ords(Y, ring, prec)
    ox = row_ords(X, ring, prec)
    ty = int(oy.min()) if oy.size else prec
    if ty >= prec:
        return _exp(int(ox.min()) if ox.size else None, prec), None
    j = int(np.argmax(oy == ty))
    if int(ox[j]) != ty:
        return _exp(min(int(ox.min()), ty), prec), None
    u = _element(ring, X[j], prec) / _element(ring, Y[j], prec)
    prec = min(prec, u.prec)
    Dif = (X - Y.dot(_mult_matrix(u))) % ring.mod
    od = row_ords(Dif, ring, prec)
    return _exp(int(od.min()) if od.size else None, prec), u


def default_characters(f, g, B=1000, residue=2):
    """Trivial character, primitive characters with conductor dividing p^2, and
    those with conductor in X (for the tame level of each symbol) up to B."""
    p = f.ring.p
    chars = [DirichletCharacter.trivial(1)]
    for D in (p, p * p):
        chars += [c for c in enumerate_characters(D) if c.is_primitive()]
    seen = set(chars)
    for N in sorted({f.N, g.N}):
        for c in character_test_set(p, residue, N, B):
            if c not in seen:
                seen.add(c)
                chars.append(c)
    return chars


def lvalue_congruence_exponent(f, g, characters=None, m_range=None):
    """Largest r such that, after the best unit rescaling of g, every tested
    special value of f and g agrees mod pi^r."""
    _same_ring(f, g)
    if characters is None:
        characters = default_characters(f, g)
    if m_range is None:
        m_range = range(f.space.n + 1)
    ring = f.ring
    prec = min(v.prec for v in f.values + g.values)
    X = value_array(f, characters, m_range)
    Y = value_array(g, characters, m_range)
    r, _ = align_arrays(X, Y, ring, prec)
    return r


@dataclass
class CongruenceReport:
    f: str
    g: str
    r_q: object
    r_L: object
    characters: str
    verdict: str
    precision: int
    bound: int = 0
    notes: list = field(default_factory=list)

    def to_json(self):
        return {"schema": "congruence-report/1", "f": self.f, "g": self.g,
                "r_q": exponent_to_json(self.r_q), "r_L": exponent_to_json(self.r_L),
                "characters": self.characters, "verdict": self.verdict,
                "precision": self.precision, "bound": self.bound, "notes": self.notes}


def _cap(r, prec):
    if isinstance(r, AtLeast) or r >= prec:
        return AtLeast(prec)
    return r


def equivalence_report(f, g, precision=None, characters=None, bound=None):
    """Compute r_q and r_L independently and compare them at the working precision."""
    ring = _same_ring(f, g)
    prec = ring.max_precision if precision is None else precision * ring.e
    if prec > ring.max_precision:
        raise ValueError("requested precision exceeds the ring precision")
    if characters is None:
        characters = default_characters(f, g)
    if bound is None:
        bound = sturm_bound(math.lcm(f.N, g.N), f.k)
    rq = _cap(qexp_congruence_exponent(f, g, bound), prec)
    rl = _cap(lvalue_congruence_exponent(f, g, characters), prec)
    desc = f"{len(characters)} primitive characters, conductors {sorted({c.modulus for c in characters})}"
    verdict = "consistent" if rq == rl else "falsified: r_q != r_L"
    return CongruenceReport(f.label, g.label, rq, rl, desc, verdict, prec, bound)


def coordinate_congruence_exponent(a1, a2):
    """min over generators of ord(a1 - a2): the congruence of the symbols themselves."""
    diff = a1 - a2
    prec = min(v.prec for v in diff.values)
    return _exp(diff.coordinate_valuation(), prec)


def special_value_congruence_exponent(a1, a2, characters, m_range=None):
    """min over the tested (chi, m) of ord(L(a1, chi, m) - L(a2, chi, m))."""
    diff = a1 - a2
    prec = min(v.prec for v in diff.values)
    return _exp(lvalue_exponent(diff, characters, m_range), prec)


def sign_functionals(space, sign, ring, cuspidal=True):
    """Integral functionals spanning the sign part of Hom(M, Z), reduced into
    ring; with cuspidal=True only those vanishing on the Eisenstein part."""
    from . import linalg
    from sympy import QQ
    I = space.involution()
    A = I - linalg.identity(space.dimension) * QQ(sign)
    if cuspidal:
        E = space.eisenstein_subspace()
        if E.shape[0]:
            A = A.vstack(E)
    cols = linalg.right_kernel(A).to_list()
    out = []
    for vals in integral_functionals(space, cols):
        out.append(SymbolFunctional(space, [ring(v) for v in vals], ring))
    return out


def random_symbol_pair(space, sign, ring, r, rng, coeff_bound=None, cuspidal=True):
    """(a1, a2) with a2 = a1 + pi^r gamma for random integral sign functionals
    a1, gamma (gamma reduced to be nonzero mod pi)."""
    basis = sign_functionals(space, sign, ring, cuspidal)
    if not basis:
        raise ValueError("no functionals of this sign")
    bound = coeff_bound or ring.p ** 3

    def combo():
        acc = None
        for b in basis:
            t = b.scale(ring(rng.randrange(-bound, bound + 1)))
            acc = t if acc is None else acc + t
        return acc

    a1 = combo()
    while True:
        g = combo()
        if g.coordinate_valuation() == 0:
            break
    return a1, a1 + g.scale(ring.pi() ** r)
