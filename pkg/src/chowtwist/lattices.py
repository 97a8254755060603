"""Coflasque and flasque lattices: predicates, resolutions by permutation
modules, and the explicit rank-(5m+1) kernel lattices over the Klein group.

H^1(H, M) for a lattice M equals the torsion of the cokernel of the map
m -> (h m - m)_{h in H}, so the coflasque predicate is a handful of small
Smith normal forms; no bar resolution is involved.
"""

from __future__ import annotations

import numpy as np

from . import fp, intlin
from .errors import SizePolicyError
from .gmodules import (FiniteAbelianGroup, GModule, make_permutation,
                       make_regular, omega_negative_klein)
from .groups import make_klein4


def h1_lattice(module, subgroup=None):
    """H^1(H, M) for an integral module, as a FiniteAbelianGroup.

    Torsion of the cokernel of delta_0 : M -> maps(H - {e}, M).
    """
    G = module.group
    elements = subgroup.elements if subgroup is not None else range(G.order)
    blocks = [module.act(h) - np.eye(module.rank, dtype=np.int64)
              for h in elements if h != G.identity]
    if not blocks or module.rank == 0:
        return FiniteAbelianGroup([], 0)
    stacked = np.vstack(blocks)
    factors, _ = intlin.invariant_factors([[int(x) for x in r] for r in stacked])
    return FiniteAbelianGroup(factors, 0)


def is_coflasque(module):
    """(flag, witness): H^1(H, M) = 0 for every subgroup H.

    witness is None on success, else (subgroup, FiniteAbelianGroup).
    """
    assert module.p is None
    for S in module.group.subgroups():
        h1 = h1_lattice(module, S)
        if not h1.is_trivial():
            return False, (S, h1)
    return True, None


def is_flasque(module):
    """Dual predicate: the contragredient lattice is coflasque."""
    return is_coflasque(module.dual())


class CoflasqueResolution:
    """0 -> Q -> P -> M -> 0 with P permutation and Q coflasque.

    pieces: list of (subgroup, fixed-vector) pairs, one per permutation
    summand Z[G/H]; surjection maps the identity coset of each summand to
    its fixed vector.  Q carries the induced action on the kernel basis.
    """

    def __init__(self, M, pieces, P, surjection, Q, q_basis):
        self.module = M
        self.pieces = pieces
        self.P = P
        self.surjection = surjection
        self.Q = Q
        self.q_basis = q_basis

    def check(self):
        """Assert exactness, fixed-point surjectivity and coflasqueness."""
        M, P, S = self.module, self.P, self.surjection
        # composite Q -> P -> M vanishes
        for qv in self.q_basis:
            img = S @ np.asarray(qv, dtype=np.int64)
            if M.p:
                img %= M.p
            assert not img.any(), "kernel basis not killed by the surjection"
        # surjectivity of P -> M and of P^H -> M^H for every subgroup
        for Ssub in M.group.subgroups():
            assert fixed_surjective(P, M, S, Ssub), (
                "fixed points not surjective for subgroup of order %d" % Ssub.order)
        ok, witness = is_coflasque(self.Q)
        assert ok, "kernel is not coflasque: %r" % (witness,)
        return True


def fixed_surjective(P, M, S, subgroup):
    """Does the matrix S map P^H onto M^H?"""
    fixP = _fixed_under(P, subgroup)
    fixM = _fixed_under(M, subgroup)
    if not fixM:
        return True
    images = [S @ np.asarray(v, dtype=np.int64) for v in fixP]
    if M.p:
        rows = np.array(images, dtype=np.int64).reshape(len(images), -1) % M.p
        base = fp.rank(rows, M.p)
        for w in fixM:
            if not fp.in_rowspan(rows, np.asarray(w), M.p):
                return False
        return True
    lat = intlin.IntLattice(M.rank)
    for v in images:
        lat.add([int(x) for x in v])
    return all(lat.contains([int(x) for x in w]) for w in fixM)


def _fixed_under(module, subgroup):
    """Basis of the fixed points of a subgroup acting through the module."""
    G = module.group
    gens = [h for h in subgroup.elements if h != G.identity]
    if not gens or module.rank == 0:
        return [[1 if i == j else 0 for i in range(module.rank)]
                for j in range(module.rank)]
    stacked = np.vstack([module.act(h) - np.eye(module.rank, dtype=np.int64)
                         for h in gens])
    if module.p:
        return [list(v) for v in fp.nullspace(stacked, module.p)]
    return intlin.kernel_basis([[int(x) for x in r] for r in stacked])


def coflasque_resolution(M, prune=False):
    """Coflasque resolution of a module over Z or F_p.

    P gets one summand Z[G/H] per generator of the fixed lattice M^H, for
    every subgroup H; the summands for the trivial subgroup make the
    surjection (and all its fixed-point restrictions) automatic.  For F_p
    coefficients P is still an integral permutation module and Q is the
    full-rank preimage lattice of zero.
    """
    G = M.group
    pieces = []
    for S in G.subgroups():
        for w in _fixed_under(M, S):
            pieces.append((S, list(w)))
    if prune:
        pieces = _prune_pieces(G, M, pieces)
    P, Smat = _assemble(G, M, pieces)
    if M.p:
        # integer kernel of "S x = 0 mod p": x-parts of ker [S | pI]
        rows = [[int(x) for x in row] + [M.p if i == j else 0 for j in range(M.rank)]
                for i, row in enumerate(Smat)]
        ker = intlin.kernel_basis(rows)
        lat = intlin.IntLattice(P.rank)
        for v in ker:
            lat.add(v[:P.rank])
        q_basis = lat.basis_vectors()
    else:
        q_basis = intlin.kernel_basis([[int(x) for x in r] for r in Smat])
    Q = _lattice_module(P, q_basis, "Q(%s)" % M.name)
    return CoflasqueResolution(M, pieces, P, Smat, Q, q_basis)


def _assemble(G, M, pieces):
    """Permutation module and surjection matrix for a list of
    (subgroup, fixed vector) pieces."""
    mods = [make_permutation(G, S, "Z") for S, _ in pieces]
    total = sum(m.rank for m in mods)
    gens = {}
    for g in G.generators:
        mat = np.zeros((total, total), dtype=np.int64)
        off = 0
        for m in mods:
            mat[off:off + m.rank, off:off + m.rank] = m.act(g)
            off += m.rank
        gens[g] = mat
    P = GModule(G, "Z", total, gens, check=False, name="P")
    Smat = np.zeros((M.rank, total), dtype=np.int64)
    off = 0
    for (S, w), pm in zip(pieces, mods):
        reps = S.left_coset_reps()
        for j, t in enumerate(reps):
            col = M.apply(t, w)
            Smat[:, off + j] = col
        off += pm.rank
    if M.p:
        Smat %= M.p
    return P, Smat


def _lattice_module(P, basis, name):
    """Module structure on a full- or partial-rank stable sublattice of P."""
    k = len(basis)
    if k == 0:
        z = np.zeros((0, 0), dtype=np.int64)
        return GModule(P.group, "Z", 0, {g: z for g in P.group.generators},
                       check=False, name=name)
    cols = [[basis[i][r] for i in range(k)] for r in range(P.rank)]
    ce = intlin.ColumnEchelon(cols)
    gens = {}
    for g in P.group.generators:
        colsg = []
        for i in range(k):
            img = P.apply(g, basis[i])
            c = ce.solve([int(x) for x in img])
            if c is None:
                raise RuntimeError("sublattice not stable under the action")
            colsg.append(c)
        gens[g] = np.array(colsg, dtype=np.int64).T
    return GModule(P.group, "Z", k, gens, check=False, name=name)


def _prune_pieces(G, M, pieces):
    """Drop permutation summands whose removal keeps every P^H -> M^H onto."""
    kept = list(pieces)
    i = 0
    while i < len(kept):
        trial = kept[:i] + kept[i + 1:]
        if not trial:
            break
        Ptrial, Smat = _assemble(G, M, trial)
        if all(fixed_surjective(Ptrial, M, Smat, S) for S in G.subgroups()):
            kept = trial
        else:
            i += 1
    return kept


# ---------------------------------------------------------------------------
# the explicit Klein counterexample lattices


class CounterexampleData:
    """B = (ZG)^m + Z^{m+1} surjecting onto the (2m+1)-dimensional module,
    A = kernel with its explicit basis, and P = three blocks of index-2
    permutation modules mapping onto A."""

    def __init__(self, m, M, B, b_to_m, A, a_basis, P, p_pieces, p_to_a):
        self.m = m
        self.module = M
        self.B = B
        self.b_to_m = b_to_m        # matrix rank(M) x rank(B), mod 2
        self.A = A
        self.a_basis = a_basis      # basis vectors of A inside B
        self.P = P
        self.p_pieces = p_pieces    # list of (subgroup, fixed vector in A coords)
        self.p_to_a = p_to_a        # matrix rank(A) x rank(P)


def counterexample_lattices(m):
    """The explicit lattices witnessing failure of exactness for the
    twisted Chow groups of the Klein four group, with their stated bases."""
    if not (2 <= m <= 8):
        raise SizePolicyError("parameter must be between 2 and 8")
    G = make_klein4()
    M = omega_negative_klein(m)
    r = 2 * m + 1
    # B = (ZG)^m + Z^{m+1}; ZG block i has f_i at offset 4*i (identity slot)
    nB = 4 * m + (m + 1)
    reg = make_regular(G)
    gens = {}
    for g in G.generators:
        mat = np.zeros((nB, nB), dtype=np.int64)
        for i in range(m):
            mat[4 * i:4 * i + 4, 4 * i:4 * i + 4] = reg.act(g)
        for j in range(m + 1):
            mat[4 * m + j, 4 * m + j] = 1
        gens[g] = mat
    B = GModule(G, "Z", nB, gens, check=False, name="B")

    def f(i):
        """Basis vector f_i of B, 1-indexed as in the construction."""
        v = np.zeros(nB, dtype=np.int64)
        if i <= m:
            v[4 * (i - 1)] = 1
        else:
            v[4 * m + (i - m - 1)] = 1
        return v

    def e(i):
        v = np.zeros(r, dtype=np.int64)
        v[i - 1] = 1
        return v

    # surjection B -> M: f_i -> e_{m+1+i} (i <= m), f_{m+i} -> e_i; extended
    # over the regular blocks by equivariance
    S = np.zeros((r, nB), dtype=np.int64)
    for i in range(1, m + 1):
        for g in range(4):
            S[:, 4 * (i - 1) + g] = M.apply(g, e(m + 1 + i))
    for i in range(1, m + 2):
        S[:, 4 * m + (i - 1)] = e(i)
    S %= 2

    # A basis s_1..s_{5m+1} inside B
    def act_f(g, i):
        return B.apply(g, f(i))

    s = [None]
    for i in range(1, 2 * m + 2):
        s.append(2 * f(i))
    for i in range(1, m + 1):
        s.append(act_f(1, i) - f(i) - f(m + i))                 # g f_i - f_i - f_{m+i}
    for i in range(1, m + 1):
        s.append(act_f(2, i) - f(i) - f(m + 1 + i))             # h f_i - f_i - f_{m+1+i}
    for i in range(1, m + 1):
        s.append(act_f(3, i) - f(i) - f(m + i) - f(m + 1 + i))  # gh f_i - ...
    a_basis = [list(int(x) for x in v) for v in s[1:]]
    assert len(a_basis) == 5 * m + 1

    # the basis really spans the kernel of S mod 2
    rows = [[int(x) for x in row] + [2 if i == j else 0 for j in range(r)]
            for i, row in enumerate(S)]
    ker = intlin.kernel_basis(rows)
    lat = intlin.IntLattice(nB)
    for v in ker:
        lat.add(v[:nB])
    stated = intlin.IntLattice(nB)
    for v in a_basis:
        assert lat.contains(v), "stated basis vector outside the kernel"
        stated.add(list(v))
    for v in lat.basis_vectors():
        assert stated.contains(v), "stated basis does not span the kernel"

    A = _lattice_module(B, a_basis, "A")

    # P = three blocks of Z[G/H_a]^m; H_1 = <g>, H_2 = <h>, H_3 = <gh>
    ceA = intlin.ColumnEchelon([[a_basis[i][rr] for i in range(5 * m + 1)]
                                for rr in range(nB)])

    def a_coords(vec):
        c = ceA.solve([int(x) for x in vec])
        assert c is not None
        return c

    subgroups = [G.generated_subgroup([1]), G.generated_subgroup([2]),
                 G.generated_subgroup([3])]
    pieces = []
    for a, H in enumerate(subgroups):
        # generator for block (a, i): s_i + s_{(2+a)m+1+i}
        for i in range(1, m + 1):
            tgt = [x + y for x, y in zip(a_basis[i - 1], a_basis[2 * m + a * m + i])]
            pieces.append((H, a_coords(tgt)))
    Pmods = [make_permutation(G, H, "Z") for H, _ in pieces]
    nP = sum(pm.rank for pm in Pmods)
    gensP = {}
    for g in G.generators:
        mat = np.zeros((nP, nP), dtype=np.int64)
        off = 0
        for pm in Pmods:
            mat[off:off + pm.rank, off:off + pm.rank] = pm.act(g)
            off += pm.rank
        gensP[g] = mat
    P = GModule(G, "Z", nP, gensP, check=False, name="P")
    p_to_a = np.zeros((5 * m + 1, nP), dtype=np.int64)
    off = 0
    for (H, w), pm in zip(pieces, Pmods):
        for j, t in enumerate(H.left_coset_reps()):
            p_to_a[:, off + j] = A.apply(t, w)
        off += pm.rank
    return CounterexampleData(m, M, B, S, A, a_basis, P, pieces, p_to_a)
