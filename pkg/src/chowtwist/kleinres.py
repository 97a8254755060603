"""Minimal free resolution of F_2 over the group algebra of the Klein four
group, and the cochain complexes built from it.

The group algebra L = F_2[Klein4] is commutative with radical generated by
a = g+1 and b = h+1, and a^2 = b^2 = 0.  The minimal resolution is

    ... -> L^{n+1} -> L^n -> ... -> L -> F_2,

with basis e_{p,q} of L^{n+1} indexed by p+q = n and differential

    d(e_{p,q}) = a*e_{p-1,q} + b*e_{p,q-1}.

For a Klein module M over F_2, Hom_L(L^{n+1}, M) is M^{n+1}; the resulting
cochain complex computes H^n(G, M) in any degree without the exponential
growth of the bar resolution.  Basis slots are ordered by p = 0..n, so slot
s of degree n stands for e_{s, n-s}.

Multiplication by the degree-1 cohomology classes dual to e_{1,0} and
e_{0,1} acts on cochains as index shifts; this is the cup product read off
from the standard diagonal approximation for a tensor product of two
periodic rank-one resolutions, and is cross-checked against bar-resolution
cup products in the tests.
"""

from __future__ import annotations

import numpy as np

from . import fp

KLEIN_G = 1
KLEIN_H = 2


def _right_mult_matrix(table, elem):
    """F_2 matrix of multiplication by a group element on the group algebra."""
    n = len(table)
    m = np.zeros((n, n), dtype=np.int64)
    for e in range(n):
        m[table[e][elem], e] = 1
    return m


def radical_generators(group):
    """Matrices of a = g+1 and b = h+1 acting on L = F_2[Klein4]."""
    t = group.table
    I = np.eye(4, dtype=np.int64)
    A = (_right_mult_matrix(t, KLEIN_G) + I) % 2
    B = (_right_mult_matrix(t, KLEIN_H) + I) % 2
    return A, B


def resolution_differential(group, n):
    """The F_2 matrix of d_n : L^{n+1} -> L^n as a 4n x 4(n+1) array.

    Column block s (basis e_{s, n-s}) maps to a*e_{s-1, n-s} + b*e_{s, n-s-1}.
    """
    A, B = radical_generators(group)
    D = np.zeros((4 * n, 4 * (n + 1)), dtype=np.int64)
    for s in range(n + 1):
        p, q = s, n - s
        if p >= 1:
            D[4 * (s - 1): 4 * s, 4 * s: 4 * (s + 1)] += A
        if q >= 1:
            D[4 * s: 4 * (s + 1), 4 * s: 4 * (s + 1)] += B
    return D % 2


def cochain_differential(M, n):
    """delta_n : M^{n+1} -> M^{n+2} for Hom_L(resolution, M), mod 2.

    (delta f)_{p,q} = (rho(g)+I) f_{p-1,q} + (rho(h)+I) f_{p,q-1}.
    """
    r = M.rank
    I = np.eye(r, dtype=np.int64)
    A = (M.act(KLEIN_G) + I) % 2
    B = (M.act(KLEIN_H) + I) % 2
    D = np.zeros(((n + 2) * r, (n + 1) * r), dtype=np.int64)
    for s in range(n + 2):
        p, q = s, n + 1 - s
        if p >= 1:
            D[s * r: (s + 1) * r, (s - 1) * r: s * r] += A
        if q >= 1:
            D[s * r: (s + 1) * r, s * r: (s + 1) * r] += B
    return D % 2


def cohomology_dim(M, n):
    """dim_{F_2} H^n(Klein4, M) via the minimal resolution."""
    if n == 0:
        d0 = cochain_differential(M, 0)
        return M.rank - fp.rank(d0, 2)
    dn = cochain_differential(M, n)
    dprev = cochain_differential(M, n - 1)
    kernel_dim = (n + 1) * M.rank - fp.rank(dn, 2)
    return kernel_dim - fp.rank(dprev, 2)


def coboundary_rows(M, n):
    """Rows spanning the coboundary subspace of degree-n cochains."""
    if n == 0:
        return np.zeros((0, M.rank), dtype=np.int64)
    return cochain_differential(M, n - 1).T % 2


def monomial_cocycle(M, m0, alpha, beta):
    """The degree alpha+beta cocycle placing the fixed vector m0 at slot
    (alpha, beta) and zero elsewhere.

    This represents the cup product (x^alpha y^beta) . m0, where x, y are
    the degree-1 classes dual to e_{1,0}, e_{0,1}.
    """
    n = alpha + beta
    r = M.rank
    f = np.zeros((n + 1) * r, dtype=np.int64)
    f[alpha * r: (alpha + 1) * r] = np.asarray(m0) % 2
    return f


def shift_x(M, f, n):
    """Cup with x: degree-n cochain -> degree-(n+1), (xf)_{p,q} = f_{p-1,q}."""
    r = M.rank
    out = np.zeros((n + 2) * r, dtype=np.int64)
    out[r:] = f
    return out


def shift_y(M, f, n):
    """Cup with y: (yf)_{p,q} = f_{p,q-1}."""
    r = M.rank
    out = np.zeros((n + 2) * r, dtype=np.int64)
    out[: (n + 1) * r] = f
    return out
