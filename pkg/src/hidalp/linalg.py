"""Exact linear algebra over Q on top of sympy's DomainMatrix."""
from __future__ import annotations

from fractions import Fraction

import sympy
from sympy import QQ
from sympy.polys.matrices import DomainMatrix


def dm(rows, ncols=None):
    rows = [list(r) for r in rows]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    return DomainMatrix([[QQ(int(x.numerator), int(x.denominator)) if isinstance(x, Fraction) else QQ(x) for x in r]
                         for r in rows], (len(rows), ncols), QQ)


def to_fractions(M):
    return [[Fraction(int(x.numerator), int(x.denominator)) for x in row] for row in M.to_list()]


def zero_matrix(n, m):
    return DomainMatrix.zeros((n, m), QQ)


def identity(n):
    return DomainMatrix.eye(n, QQ)


def left_kernel(M):
    """Basis (as rows of a DomainMatrix) of {v : v M = 0}."""
    return right_kernel(M.transpose())


def right_kernel(M):
    """Basis (as rows) of {c : M c = 0}, in reduced form."""
    n = M.shape[1]
    if M.shape[0] == 0:
        return identity(n)
    K = M.nullspace()
    if K.shape[0] == 0:
        return zero_matrix(0, n)
    return K.rref()[0]


def rank(M):
    if M.shape[0] == 0 or M.shape[1] == 0:
        return 0
    return len(M.rref()[1])


def charpoly(M):
    """Characteristic polynomial coefficients, high to low, as a sympy Poly in x."""
    x = sympy.Symbol("x")
    if M.shape[0] == 0:
        return sympy.Poly(1, x, domain="QQ")
    return sympy.Poly([QQ.to_sympy(c) for c in M.charpoly()], x, domain="QQ")


def poly_of_matrix(coeffs_high_to_low, M):
    """g(M) for a polynomial given high to low."""
    n = M.shape[0]
    acc = zero_matrix(n, n)
    eye = identity(n)
    for c in coeffs_high_to_low:
        acc = acc * M + eye * QQ(int(sympy.fraction(c)[0]), int(sympy.fraction(c)[1]))
    return acc


def restrict(M, B):
    """Matrix of the map v -> v M on the row space of B (rows a basis of an
    invariant subspace), in the basis B: returns A with B M = A B."""
    if B.shape[0] == 0:
        return zero_matrix(0, 0)
    R, piv = B.rref()
    # express rows of B M in the basis B by solving on pivot columns
    BM = B * M
    Bp = B.extract(list(range(B.shape[0])), list(piv))
    BMp = BM.extract(list(range(BM.shape[0])), list(piv))
    A = BMp * Bp.inv()
    if A * B != BM:
        raise ValueError("subspace is not invariant")
    return A


def intersect_rowspaces(A, B):
    """Row space intersection of A and B."""
    if A.shape[0] == 0 or B.shape[0] == 0:
        return zero_matrix(0, A.shape[1])
    # x A = y B  <=>  [x, -y] [A; B] = 0
    S = A.vstack(-B)
    K = left_kernel(S)
    if K.shape[0] == 0:
        return zero_matrix(0, A.shape[1])
    X = K.extract(list(range(K.shape[0])), list(range(A.shape[0])))
    out = X * A
    return out.rref()[0].extract(list(range(len(out.rref()[1]))), list(range(A.shape[1])))
