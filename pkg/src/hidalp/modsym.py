"""Weight-k modular symbols for Gamma_1(N) (or Gamma_0(N) with trivial character)
presented by Manin symbols.

A Manin symbol [P, (c, d)] is g(P{0, oo}) for g in SL_2(Z) with bottom row (c, d).
Generators are indexed by (pair, i) for the monomial X^i Y^(n-i), n = k - 2.
Matrices act on row vectors: row b of an operator matrix is the image of basis
element b.  Functionals (the cohomological side, Hom(M, R)) are column vectors.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import sympy
from sympy import QQ

from . import linalg
from .characters import DirichletCharacter


@lru_cache(maxsize=None)
def binomial_action(n, a, b, c, d):
    """Matrix of P(X, Y) -> P(aX + bY, cX + dY) on monomials X^i Y^(n-i):
    row i lists (j, coefficient of X^j Y^(n-j))."""
    rows = []
    for i in range(n + 1):
        # (aX + bY)^i (cX + dY)^(n-i)
        left = [math.comb(i, s) * a ** s * b ** (i - s) for s in range(i + 1)]
        right = [math.comb(n - i, t) * c ** t * d ** (n - i - t) for t in range(n - i + 1)]
        coeffs = [0] * (n + 1)
        for s, x in enumerate(left):
            if x:
                for t, y in enumerate(right):
                    if y:
                        coeffs[s + t] += x * y
        rows.append(tuple((j, v) for j, v in enumerate(coeffs) if v))
    return tuple(rows)


@lru_cache(maxsize=None)
def heilbronn_merel(n):
    """Matrices [[a, b], [c, d]] with a > b >= 0, d > c >= 0, ad - bc = n."""
    out = []
    for a in range(1, n + 1):
        for b in range(a):
            c = 0
            while c * (a - b) < n:
                num = n + b * c
                if num % a == 0:
                    d = num // a
                    if d > c:
                        out.append((a, b, c, d))
                c += 1
    return tuple(out)


def sturm_bound(N, k):
    """k * [SL_2(Z) : Gamma_1(N)] / 12 rounded up, with the index taken in PSL_2."""
    if N <= 3:
        raise ValueError("level must exceed 3 (torsion-free Gamma_1(N))")
    idx = Fraction(N * N)
    for q in sympy.primefactors(N):
        idx *= 1 - Fraction(1, q * q)
    idx /= 2
    return math.ceil(k * idx / 12)


def _xgcd(a, b):
    if b == 0:
        return (abs(a), (1 if a >= 0 else -1), 0)
    g, x, y = _xgcd(b, a % b)
    return g, y, x - (a // b) * y


def lift_to_sl2(c, d, N):
    """(a, b, c', d') in SL_2(Z) with (c', d') = (c, d) mod N."""
    c, d = c % N, d % N
    if c == 0 and d == 0:
        raise ValueError("pair not primitive mod N")
    # make gcd(c, d) = 1 by shifting d by multiples of N
    if c == 0:
        c = N
    t = 0
    while math.gcd(c, d + t * N) != 1:
        t += 1
    d = d + t * N
    g, x, y = _xgcd(c, d)
    # x c + y d = 1 -> a = y, b = -x gives a d - b c = y d + x c = 1
    return y, -x, c, d


class ModularSymbolSpace:
    """Manin-symbol presentation of weight-k modular symbols.

    group='gamma1': all of Gamma_1(N) (pairs in E_N).  group='gamma0': the
    trivial-character part, presented on P^1(Z/N) (even weight only).
    """

    def __init__(self, N, k, group="gamma1", ring="Q"):
        if N <= 3:
            raise ValueError(f"level {N} not supported: need N > 3 so that Gamma_1(N) is torsion-free")
        if k < 2:
            raise ValueError("weight must be at least 2")
        if ring not in ("Q", "QQ", None):
            raise ValueError(f"unsupported coefficient ring {ring!r}; spaces are built over Q "
                             "and functionals are reduced into local rings afterwards")
        if group not in ("gamma1", "gamma0"):
            raise ValueError("group must be 'gamma1' or 'gamma0'")
        if group == "gamma0" and k % 2:
            raise ValueError("trivial-character space needs even weight")
        self.N = N
        self.k = k
        self.n = k - 2
        self.group = group
        self._build_pairs()
        self._build_relations()
        self._ops = {}
        self._boundary = None
        self._cusp = None

    # pairs
    def _build_pairs(self):
        N = self.N
        self.pairs = []
        self.pair_index = {}
        if self.group == "gamma1":
            for c in range(N):
                for d in range(N):
                    if math.gcd(math.gcd(c, d), N) == 1:
                        self.pair_index[(c, d)] = len(self.pairs)
                        self.pairs.append((c, d))
        else:
            units = [u for u in range(1, N) if math.gcd(u, N) == 1]
            for c in range(N):
                for d in range(N):
                    if math.gcd(math.gcd(c, d), N) != 1 or (c, d) in self.pair_index:
                        continue
                    idx = len(self.pairs)
                    self.pairs.append((c, d))
                    for u in units:
                        self.pair_index[(u * c % N, u * d % N)] = idx

    def pair_id(self, c, d):
        """Index of the pair (c, d) mod N, or None when not a valid pair."""
        return self.pair_index.get((c % self.N, d % self.N))

    def gen_id(self, i, c, d):
        j = self.pair_id(c, d)
        if j is None:
            return None
        return j * (self.n + 1) + i

    @property
    def num_generators(self):
        return len(self.pairs) * (self.n + 1)

    def generator(self, g):
        j, i = divmod(g, self.n + 1)
        return i, self.pairs[j]

    def _act(self, g, mat):
        """Image [P|mat, (c, d) mat] of generator g as a list of (gen, coeff)."""
        a, b, c, d = mat
        i, (u, v) = self.generator(g)
        j = self.pair_id(u * a + v * c, u * b + v * d)
        if j is None:
            return []
        base = j * (self.n + 1)
        return [(base + t, coeff) for t, coeff in binomial_action(self.n, a, b, c, d)[i]]

    def _build_relations(self):
        ngen = self.num_generators
        # two-term relations via union-find with signs: x_g = sign * x_root
        parent = list(range(ngen))
        sign = [1] * ngen
        zero = [False] * ngen

        def find_s(x):
            s = 1
            while parent[x] != x:
                s *= sign[x]
                x = parent[x]
            return x, s

        def union(x, y, s):
            # x = s * y
            rx, sx = find_s(x)
            ry, sy = find_s(y)
            # rx = sx * x = sx * s * sy * ry
            t = sx * s * sy
            if rx == ry:
                if t == -1:
                    zero[rx] = True
                return
            if rx < ry:
                rx, ry = ry, rx
            parent[rx] = ry
            sign[rx] = t
            if zero[rx]:
                zero[ry] = True

        sig = (0, -1, 1, 0)
        for g in range(ngen):
            img = self._act(g, sig)
            # x + x sigma = 0, x sigma is +-single generator
            (h, coeff), = img
            union(g, h, -coeff)
        if self.group == "gamma1":
            for g in range(ngen):
                i, (c, d) = self.generator(g)
                h = self.gen_id(i, -c, -d)
                union(g, h, (-1) ** self.n)
        else:
            if self.n % 2:
                for g in range(ngen):
                    zero[g] = True

        reps = {}
        for g in range(ngen):
            r, s = find_s(g)
            reps[g] = (r, s)
        self._two_term = reps
        dead = {r for r in set(r for r, _ in reps.values()) if zero[r]}
        free = sorted(set(r for r, _ in reps.values()) - dead)
        col = {r: t for t, r in enumerate(free)}

        # three-term relations over the free representatives
        tau = (0, -1, 1, -1)
        tau2 = (-1, 1, -1, 0)
        pivots = {}
        for g in range(ngen):
            row = {}
            for gg, cc in [(g, 1)] + self._act(g, tau) + self._act(g, tau2):
                r, s = reps[gg]
                if r in dead:
                    continue
                cidx = col[r]
                row[cidx] = row.get(cidx, 0) + s * cc
            row = {c: Fraction(v) for c, v in row.items() if v}
            while row:
                c0 = min(row)
                if c0 in pivots:
                    f = row[c0]
                    for c, v in pivots[c0].items():
                        nv = row.get(c, 0) - f * v
                        if nv:
                            row[c] = nv
                        else:
                            row.pop(c, None)
                else:
                    f = row[c0]
                    pivots[c0] = {c: v / f for c, v in row.items()}
                    break
        # express pivot columns through free columns
        nfree = len(free)
        basis_cols = [c for c in range(nfree) if c not in pivots]
        pos = {c: t for t, c in enumerate(basis_cols)}
        expr = {}
        for c in sorted(pivots, reverse=True):
            acc = {}
            for cc, v in pivots[c].items():
                if cc == c:
                    continue
                sub = expr[cc] if cc in expr else {pos[cc]: Fraction(1)}
                for b, w in sub.items():
                    nv = acc.get(b, 0) - v * w
                    if nv:
                        acc[b] = nv
                    else:
                        acc.pop(b, None)
            expr[c] = acc
        self.basis = [free[c] for c in basis_cols]
        self.dimension = len(self.basis)
        coords = []
        for g in range(ngen):
            r, s = reps[g]
            if r in dead:
                coords.append({})
                continue
            c = col[r]
            e = expr[c] if c in expr else {pos[c]: Fraction(1)}
            coords.append({b: s * v for b, v in e.items()})
        self.coords = coords

    def __repr__(self):
        return f"ModularSymbolSpace(N={self.N}, k={self.k}, group={self.group}, dim={self.dimension})"

    # symbols
    def manin_symbol(self, i, c, d):
        """Coordinate dict of [X^i Y^(n-i), (c, d)]."""
        g = self.gen_id(i, c, d)
        if g is None:
            raise ValueError(f"({c}, {d}) is not a valid pair mod {self.N}")
        return dict(self.coords[g])

    def _image_matrix(self, fn):
        rows = []
        for b in self.basis:
            acc = {}
            for g, c in fn(b):
                for t, v in self.coords[g].items():
                    acc[t] = acc.get(t, 0) + c * v
            rows.append([QQ(int(acc.get(t, 0).numerator), int(acc.get(t, 0).denominator)) if acc.get(t, 0) else QQ(0)
                         for t in range(self.dimension)])
        return linalg.DomainMatrix(rows, (self.dimension, self.dimension), QQ)

    def hecke_operator(self, l):
        """T_l (U_l when l | N) through the Heilbronn-Merel matrices."""
        key = ("T", l)
        if key not in self._ops:
            mats = heilbronn_merel(l)

            def image(g):
                out = []
                for m in mats:
                    out.extend(self._act(g, m))
                return out

            self._ops[key] = self._image_matrix(image)
        return self._ops[key]

    def diamond(self, d):
        if math.gcd(d, self.N) != 1:
            raise ValueError("diamond operator needs a unit mod N")
        key = ("D", d % self.N)
        if key not in self._ops:
            def image(g):
                i, (u, v) = self.generator(g)
                return [(self.gen_id(i, d * u, d * v), 1)]

            self._ops[key] = self._image_matrix(image)
        return self._ops[key]

    def involution(self):
        """iota [P(X, Y), (c, d)] = [P(-X, Y), (-c, d)]: the reflection z -> -conj(z),
        which fixes the path {0, oo}."""
        key = ("I",)
        if key not in self._ops:
            def image(g):
                i, (c, d) = self.generator(g)
                return [(self.gen_id(i, -c, d), (-1) ** i)]

            self._ops[key] = self._image_matrix(image)
        return self._ops[key]

    def plus_minus_projection(self, sign):
        """Rows spanning the image of (1 + sign * iota) / 2."""
        I = self.involution()
        E = linalg.identity(self.dimension)
        P = (E + I * QQ(sign)) * QQ(1, 2)
        R, piv = P.rref()
        return R.extract(list(range(len(piv))), list(range(self.dimension))) if piv else linalg.zero_matrix(0, self.dimension)

    # boundary and cuspidal subspace
    def _cusp_key(self, a, c):
        """Canonical key (and sign) for the boundary symbol at the cusp a/c."""
        N = self.N
        if self.group == "gamma1":
            g = math.gcd(c, N)

            def norm(aa, cc):
                return (cc % N, aa % g if g > 1 else 0)

            k1, k2 = norm(a, c), norm(-a, -c)
            if k1 == k2:
                return k1, (0 if self.n % 2 else 1)
            if k1 <= k2:
                return k1, 1
            return k2, (-1) ** self.n
        # Gamma_0(N): compare with stored representatives (Cremona's criterion)
        for idx, (a2, c2) in enumerate(self._cusp_reps):
            if _gamma0_cusps_equivalent(a, c, a2, c2, N):
                return idx, 1
        self._cusp_reps.append((a, c))
        return len(self._cusp_reps) - 1, 1

    def boundary_matrix(self):
        """Rows: boundary of each basis element on the boundary-symbol basis."""
        if self._boundary is None:
            self._cusp_reps = []
            keys = {}
            rows = []
            n = self.n
            for b in self.basis:
                i, (c, d) = self.generator(b)
                a, bb, cc, dd = lift_to_sl2(c, d, self.N)
                terms = {}
                if i == n:
                    key, s = self._cusp_key(a, cc)
                    if s:
                        terms[key] = terms.get(key, 0) + s
                if i == 0:
                    key, s = self._cusp_key(bb, dd)
                    if s:
                        terms[key] = terms.get(key, 0) - s
                for key in terms:
                    keys.setdefault(key, len(keys))
                rows.append(terms)
            mat = [[QQ(r.get(key, 0)) for key in keys] for r in rows]
            self._boundary = linalg.DomainMatrix(mat, (self.dimension, len(keys)), QQ)
        return self._boundary

    def cuspidal_subspace(self):
        """Rows spanning the kernel of the boundary map."""
        if self._cusp is None:
            B = self.boundary_matrix()
            if B.shape[1] == 0:
                self._cusp = linalg.identity(self.dimension)
            else:
                self._cusp = linalg.left_kernel(B)
        return self._cusp

    def cuspidal_dimension(self):
        return self.cuspidal_subspace().shape[0]

    def cuspidal_sign_subspace(self, sign):
        return linalg.intersect_rowspaces(self.cuspidal_subspace(), self.plus_minus_projection(sign))

    def eisenstein_subspace(self):
        """Rows spanning the Hecke complement of the cuspidal subspace: the
        primary part of T_l for the non-cuspidal factor of its characteristic
        polynomial, l >= 7 prime to N (Ramanujan keeps the two factors coprime)."""
        if "_eis" not in self.__dict__:
            l = 7
            while self.N % l == 0:
                l = int(sympy.nextprime(l))
            T = self.hecke_operator(l)
            full = linalg.charpoly(T)
            cusp = linalg.charpoly(linalg.restrict(T, self.cuspidal_subspace()))
            eis, rem = sympy.div(full, cusp)
            if not rem.is_zero:
                raise RuntimeError("cuspidal characteristic polynomial does not divide the full one")
            self._eis = linalg.left_kernel(linalg.poly_of_matrix(eis.all_coeffs(), T))
        return self._eis

    def nebentypus(self):
        return DirichletCharacter.trivial(self.N)


def _gamma0_cusps_equivalent(a1, c1, a2, c2, N):
    def s_of(a, c):
        if c == 0:
            return a
        return pow(a, -1, abs(c)) if abs(c) > 1 else 0

    s1, s2 = s_of(a1, c1), s_of(a2, c2)
    m = math.gcd(c1 * c2, N)
    return (s1 * c2 - s2 * c1) % m == 0


@lru_cache(maxsize=None)
def build_space(N, k, group="gamma1", ring="Q"):
    return ModularSymbolSpace(N, k, group, ring)
