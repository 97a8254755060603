"""Finite-rank modules with a group action over Z or a small prime field.

A GModule stores one integer matrix per group element (entries reduced mod p
when the ring is a prime field).  Constructors accept the action on
generators only and complete it over the Cayley table; the homomorphism
property is then checked exhaustively.
"""

from __future__ import annotations

import json
import random

import numpy as np

from . import fp, intlin, kleinres
from .errors import SizePolicyError
from .groups import FiniteGroup, Subgroup, make_klein4

RING_Z = "Z"


def ring_prime(ring):
    """None for Z, the prime for 'F2'/'F3'/'F5'."""
    if ring == RING_Z:
        return None
    if ring in ("F2", "F3", "F5"):
        return int(ring[1:])
    raise ValueError("unsupported ring %r" % ring)


def _det_int(mat):
    """Exact determinant by fraction-free (Bareiss) elimination."""
    a = [[int(x) for x in row] for row in mat]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


class GModule:
    """Module of finite rank over Z or F_p with an action of a FiniteGroup."""

    def __init__(self, group, ring, rank, action_on_generators, check=True, name=None):
        self.group = group
        self.ring = ring
        self.p = ring_prime(ring)
        self.rank = int(rank)
        self.name = name or "M"
        n = group.order
        mats = {group.identity: np.eye(self.rank, dtype=np.int64)}
        for g, m in action_on_generators.items():
            m = np.asarray(m, dtype=np.int64)
            if m.shape != (self.rank, self.rank):
                raise ValueError("action matrix has wrong shape")
            mats[int(g)] = m % self.p if self.p else m
        # complete by BFS over products with known elements
        changed = True
        while changed and len(mats) < n:
            changed = False
            for a in list(mats):
                for b in list(mats):
                    c = group.mul(a, b)
                    if c not in mats:
                        prod = mats[a] @ mats[b]
                        mats[c] = prod % self.p if self.p else prod
                        changed = True
        if len(mats) < n:
            raise ValueError("generators with given action do not cover the group")
        self._mats = mats
        if check:
            self._validate()

    def _validate(self):
        G = self.group
        if not np.array_equal(self._mats[G.identity], np.eye(self.rank, dtype=np.int64)):
            raise ValueError("identity must act trivially")
        for a in range(G.order):
            ma = self._mats[a]
            for b in range(G.order):
                prod = ma @ self._mats[b]
                if self.p:
                    prod %= self.p
                if not np.array_equal(prod, self._mats[G.mul(a, b)]):
                    raise ValueError("action is not a homomorphism at (%d,%d)" % (a, b))
            if self.p is None and self.rank and _det_int(ma) not in (1, -1):
                raise ValueError("integral action matrix must be invertible over Z")

    def act(self, g):
        return self._mats[g]

    def apply(self, g, v):
        out = self._mats[g] @ np.asarray(v, dtype=np.int64)
        return out % self.p if self.p else out

    def trace_matrix(self):
        """Matrix of tr = sum over all group elements of the action."""
        s = sum(self._mats[g] for g in range(self.group.order))
        return s % self.p if self.p else s

    def fixed_points(self):
        """Basis of {v : g v = v for all g}; saturated over Z.

        Returns a list of rank-length integer vectors (rows).
        """
        gens = self.group.generators
        if self.rank == 0:
            return []
        stacked = np.vstack([self.act(g) - np.eye(self.rank, dtype=np.int64) for g in gens])
        if self.p:
            return [list(v) for v in fp.nullspace(stacked, self.p)]
        return intlin.kernel_basis([[int(x) for x in r] for r in stacked])

    def fixed_dim(self):
        return len(self.fixed_points())

    def trace_quotient(self):
        """M^G / tr(M) as a FiniteAbelianGroup (Tate degree-0 invariant)."""
        fixed = self.fixed_points()
        k = len(fixed)
        tr = self.trace_matrix()
        if self.p:
            if k == 0:
                return FiniteAbelianGroup([], 0)
            quot = k - fp.rank(tr, self.p)
            return FiniteAbelianGroup([self.p] * quot, 0)
        if k == 0:
            return FiniteAbelianGroup([], 0)
        # write each tr(e_j) in the fixed basis, then take the cokernel
        F = [[fixed[i][r] for i in range(k)] for r in range(self.rank)]
        ce = intlin.ColumnEchelon(F)
        cols = []
        for j in range(self.rank):
            c = ce.solve([int(tr[r, j]) for r in range(self.rank)])
            if c is None:
                raise RuntimeError("trace image not inside the fixed lattice")
            cols.append(c)
        free_rank, factors, _ = intlin.quotient_structure(k, cols)
        return FiniteAbelianGroup(factors, free_rank)

    def dual(self):
        """Contragredient module: g acts by transpose-inverse."""
        G = self.group
        gens = {g: self.act(G.inv(g)).T for g in G.generators}
        return GModule(G, self.ring, self.rank, gens, check=False, name=self.name + "*")

    def direct_sum(self, other):
        assert self.group is other.group and self.ring == other.ring
        r1, r2 = self.rank, other.rank
        gens = {}
        for g in self.group.generators:
            m = np.zeros((r1 + r2, r1 + r2), dtype=np.int64)
            m[:r1, :r1] = self.act(g)
            m[r1:, r1:] = other.act(g)
            gens[g] = m
        return GModule(self.group, self.ring, r1 + r2, gens, check=False)

    def change_ring_mod(self, p):
        """Reduction M/pM of an integral module."""
        assert self.p is None
        gens = {g: self.act(g) % p for g in self.group.generators}
        return GModule(self.group, "F%d" % p, self.rank, gens, check=False,
                       name=self.name + " mod %d" % p)

    def to_json(self):
        return {
            "group": self.group.name,
            "ring": self.ring,
            "rank": self.rank,
            "action": {
                self.group.labels[g]: self.act(g).tolist() for g in self.group.generators
            },
        }

    @staticmethod
    def from_json(desc, group):
        if isinstance(desc, str):
            desc = json.loads(desc)
        label_to_idx = {lab: i for i, lab in enumerate(group.labels)}
        gens = {label_to_idx[lab]: mat for lab, mat in desc["action"].items()}
        return GModule(group, desc["ring"], desc["rank"], gens)

    def __repr__(self):
        return "GModule(%s, %s, rank=%d)" % (self.group.name, self.ring, self.rank)


class FiniteAbelianGroup:
    """Invariant-factor form d_1 | d_2 | ... plus a free rank."""

    def __init__(self, invariant_factors, free_rank=0):
        fac = [int(d) for d in invariant_factors if d != 1]
        for i in range(len(fac) - 1):
            if fac[i + 1] % fac[i] != 0:
                raise ValueError("invariant factors must form a dividing chain")
        if any(d < 2 for d in fac):
            raise ValueError("invariant factors must be >= 2")
        self.invariant_factors = fac
        self.free_rank = int(free_rank)

    @property
    def order(self):
        if self.free_rank:
            return None
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    @property
    def exponent(self):
        if self.free_rank:
            return None
        return self.invariant_factors[-1] if self.invariant_factors else 1

    def p_rank(self, p):
        return sum(1 for d in self.invariant_factors if d % p == 0)

    def is_trivial(self):
        return not self.invariant_factors and self.free_rank == 0

    def __eq__(self, other):
        if isinstance(other, FiniteAbelianGroup):
            return (self.invariant_factors == other.invariant_factors
                    and self.free_rank == other.free_rank)
        return NotImplemented

    def __repr__(self):
        parts = ["Z/%d" % d for d in self.invariant_factors]
        if self.free_rank:
            parts.append("Z^%d" % self.free_rank)
        return " + ".join(parts) if parts else "0"

    def to_json(self):
        return {"invariant_factors": self.invariant_factors, "free_rank": self.free_rank}


def make_trivial(group, ring=RING_Z, rank=1):
    I = np.eye(rank, dtype=np.int64)
    return GModule(group, ring, rank, {g: I for g in group.generators},
                   check=False, name="triv")


def make_permutation(group, subgroup, ring=RING_Z):
    """Permutation module on the left cosets G/H."""
    reps = subgroup.left_coset_reps()
    coset_of = {}
    for i, t in enumerate(reps):
        for h in subgroup.elements:
            coset_of[group.mul(t, h)] = i
    k = len(reps)
    gens = {}
    for g in group.generators:
        m = np.zeros((k, k), dtype=np.int64)
        for i, t in enumerate(reps):
            m[coset_of[group.mul(g, t)], i] = 1
        gens[g] = m
    return GModule(group, ring, k, gens, check=False,
                   name="%s[%s/H%d]" % (ring, group.name, subgroup.order))


def make_regular(group, ring=RING_Z):
    return make_permutation(group, group.trivial_subgroup(), ring)


def make_sign_cyclic(group, ring=RING_Z):
    """Rank-1 module where the cyclic generator acts by -1 (needs even order)."""
    if group.order % 2:
        raise ValueError("sign module needs a group of even order")
    gens = {group.generators[0]: [[-1]]}
    return GModule(group, ring, 1, gens, check=False, name="sign")


def make_augmentation_quotient(group, ring=RING_Z):
    """ZG/Z: regular module modulo the span of the all-ones trace vector.

    Basis: images of the non-identity group elements g - (identity coset
    collapse); concretely take basis [g] for g != e with [e] = -sum [g].
    """
    n = group.order
    e = group.identity
    others = [g for g in range(n) if g != e]
    pos = {g: i for i, g in enumerate(others)}
    k = n - 1
    gens = {}
    for g in group.generators:
        m = np.zeros((k, k), dtype=np.int64)
        for i, a in enumerate(others):
            ga = group.mul(g, a)
            if ga == e:
                m[:, i] = -1
            else:
                m[pos[ga], i] = 1
        gens[g] = m
    return GModule(group, ring, k, gens, check=False, name="%sG/%s" % (ring, ring))


def random_cyclic_module(group, rank, rng=None, ring=RING_Z):
    """Random integral representation of a cyclic group.

    Built from companion blocks of x^d -+ 1 for random divisors d of the
    group order (sign allowed only when the quotient m/d is even, so the
    generator relation holds by construction), then conjugated by a random
    unimodular matrix to obscure the block shape.
    """
    rng = rng or random.Random(0)
    m = group.order
    divisors = [d for d in range(1, m + 1) if m % d == 0]
    blocks = []
    left = rank
    while left > 0:
        d = rng.choice([d for d in divisors if d <= left])
        eps = 1
        if (m // d) % 2 == 0 and rng.random() < 0.5:
            eps = -1
        blk = np.zeros((d, d), dtype=np.int64)
        for i in range(d - 1):
            blk[i + 1, i] = 1
        blk[0, d - 1] = eps
        blocks.append(blk)
        left -= d
    gen_mat = np.zeros((rank, rank), dtype=np.int64)
    off = 0
    for blk in blocks:
        d = blk.shape[0]
        gen_mat[off:off + d, off:off + d] = blk
        off += d
    # conjugate by a random product of elementary unimodular matrices
    U = np.eye(rank, dtype=np.int64)
    for _ in range(2 * rank):
        i, j = rng.randrange(rank), rng.randrange(rank)
        if i != j:
            E = np.eye(rank, dtype=np.int64)
            E[i, j] = rng.choice([1, -1])
            U = U @ E
    Uinv = np.round(np.linalg.inv(U)).astype(np.int64)
    assert np.array_equal((U @ Uinv), np.eye(rank, dtype=np.int64))
    gens = {group.generators[0]: U @ gen_mat @ Uinv}
    return GModule(group, ring, rank, gens, check=True, name="rand")


def _random_unimodular(rank, rng):
    U = np.eye(rank, dtype=np.int64)
    for _ in range(2 * rank):
        i, j = rng.randrange(rank), rng.randrange(rank)
        if i != j:
            E = np.eye(rank, dtype=np.int64)
            E[i, j] = rng.choice([1, -1])
            U = U @ E
    return U


def random_lattice(group, rng=None):
    """Random integral module for any supported group: a direct sum of
    permutation pieces, sum-kernel sublattices and augmentation quotients,
    conjugated by a random unimodular matrix.

    The sum-kernel and quotient pieces have nonvanishing H^1 in general, so
    these exercise coflasque resolutions nontrivially.
    """
    rng = rng or random.Random(0)
    subs = group.subgroups()
    pieces = []
    for _ in range(rng.randint(1, 2)):
        H = rng.choice(subs)
        P = make_permutation(group, H)
        kind = rng.randrange(3)
        if kind == 1 and P.rank > 1:
            # kernel of the coset-sum functional inside Z[G/H]
            ker = intlin.kernel_basis([[1] * P.rank])
            pieces.append(_submodule_from_kernel(P, ker, "ker(sum)"))
        elif kind == 2 and group.order > 1:
            pieces.append(make_augmentation_quotient(group))
        else:
            pieces.append(P)
    M = pieces[0]
    for extra in pieces[1:]:
        M = M.direct_sum(extra)
    U = _random_unimodular(M.rank, rng)
    Uinv = np.round(np.linalg.inv(U)).astype(np.int64)
    assert np.array_equal(U @ Uinv, np.eye(M.rank, dtype=np.int64))
    gens = {g: U @ M.act(g) @ Uinv for g in group.generators}
    return GModule(group, RING_Z, M.rank, gens, check=False, name="randlat")


def restrict(M, subgroup):
    """Restriction along a Subgroup; returns (module over H, H-as-group, embed)."""
    H, embed = subgroup.as_group()
    gens = {i: M.act(embed[i]) for i in H.generators}
    N = GModule(H, M.ring, M.rank, gens, check=False, name=M.name + "|H")
    return N, H, embed


def induce(group, subgroup, N, embed):
    """Induced module along H <= G for a module N over H-as-a-group.

    embed maps element indices of N.group to element indices of the parent,
    as returned by Subgroup.as_group().  Basis: t_i (x) n_j over left coset
    representatives t_i, ordered coset-major.
    """
    inv_embed = {e: i for i, e in enumerate(embed)}
    reps = subgroup.left_coset_reps()
    k = len(reps)
    r = N.rank
    rep_pos = {t: i for i, t in enumerate(reps)}
    coset_of = {}
    for i, t in enumerate(reps):
        for h in subgroup.elements:
            coset_of[group.mul(t, h)] = i
    gens = {}
    for g in group.generators:
        m = np.zeros((k * r, k * r), dtype=np.int64)
        for i, t in enumerate(reps):
            gt = group.mul(g, t)
            j = coset_of[gt]
            h = group.mul(group.inv(reps[j]), gt)
            m[j * r:(j + 1) * r, i * r:(i + 1) * r] = N.act(inv_embed[h])
        gens[g] = m
    return GModule(group, N.ring, k * r, gens, check=False, name="Ind(%s)" % N.name)


def _module_generators_z(M):
    """Greedy generating set of M as a module over the integral group ring."""
    n = M.group.order
    gens = []
    lat = intlin.IntLattice(M.rank)
    for j in range(M.rank):
        e = [0] * M.rank
        e[j] = 1
        if not lat.contains(e):
            gens.append(e)
            for g in range(n):
                lat.add([int(x) for x in M.apply(g, e)])
    return gens


def _radical_complement_basis(M):
    """Lift of a basis of M / rad(M), rad generated by (g-1)M over generators."""
    p = M.p
    rad_rows = np.vstack([
        (M.act(g) - np.eye(M.rank, dtype=np.int64)).T % p for g in M.group.generators
    ]) if M.rank else np.zeros((0, 0), dtype=np.int64)
    span = fp.rref(rad_rows, p)[0][: fp.rank(rad_rows, p)] if M.rank else rad_rows
    gens = []
    rows = [r for r in span]
    base = len(rows)
    for j in range(M.rank):
        e = np.zeros(M.rank, dtype=np.int64)
        e[j] = 1
        cand = np.vstack(rows + [e]) if rows else e.reshape(1, -1)
        if fp.rank(cand, p) > base:
            gens.append(list(e))
            rows.append(e)
            base += 1
    return gens


def _free_module_action(group, k, ring):
    """(ring G)^k with basis delta_{i,g}, index i*|G| + g; g0 . delta_{i,g}
    = delta_{i, g0 g}."""
    n = group.order
    gens = {}
    for g0 in group.generators:
        m = np.zeros((k * n, k * n), dtype=np.int64)
        for i in range(k):
            for g in range(n):
                m[i * n + group.mul(g0, g), i * n + g] = 1
        gens[g0] = m
    return GModule(group, ring, k * n, gens, check=False, name="free^%d" % k)


def _surjection_matrix(M, gens):
    """Matrix of (ring G)^k -> M sending delta_{i,g} to g . gens[i]."""
    n = M.group.order
    k = len(gens)
    S = np.zeros((M.rank, k * n), dtype=np.int64)
    for i, v in enumerate(gens):
        for g in range(n):
            S[:, i * n + g] = M.apply(g, v)
    return S % M.p if M.p else S


def _submodule_from_kernel(F, kernel_rows, name):
    """Module structure on a G-stable subspace/sublattice of the module F.

    kernel_rows: basis vectors in F's coordinates.  Action matrices are
    computed by applying F's generators and re-expressing in the basis.
    """
    k = len(kernel_rows)
    if k == 0:
        z = np.zeros((0, 0), dtype=np.int64)
        return GModule(F.group, F.ring, 0, {g: z for g in F.group.generators},
                       check=False, name=name)
    K = np.array(kernel_rows, dtype=np.int64)
    gens = {}
    if F.p:
        for g in F.group.generators:
            img = (F.act(g) @ K.T) % F.p
            sol = fp.solve(K.T, img, F.p)
            if sol is None:
                raise RuntimeError("subspace is not stable under the action")
            gens[g] = sol
    else:
        ceK = intlin.ColumnEchelon([[int(K[i][r]) for i in range(k)] for r in range(F.rank)])
        for g in F.group.generators:
            cols = []
            for i in range(k):
                img = F.apply(g, K[i])
                c = ceK.solve([int(x) for x in img])
                if c is None:
                    raise RuntimeError("sublattice is not stable under the action")
                cols.append(c)
            gens[g] = np.array(cols, dtype=np.int64).T
    return GModule(F.group, F.ring, k, gens, check=False, name=name)


def syzygy(M, gens=None):
    """Kernel of a surjection from a free module onto M.

    Over Z the default generating set is greedy, so the result is
    well-defined only up to free summands; probe it with invariants that
    kill free modules, or pass a known small generating set explicitly.
    Over F_p (p-group) the generators lift a basis of M/rad(M), giving the
    minimal syzygy.
    """
    if gens is None and M.p:
        # minimal mode needs projective = free, so insist on a p-group
        for g in range(M.group.order):
            o = M.group.element_order(g)
            while o % M.p == 0:
                o //= M.p
            if o != 1:
                raise ValueError("minimal syzygy over F_p needs a p-group")
        gens = _radical_complement_basis(M)
    elif gens is None:
        gens = _module_generators_z(M)
    F = _free_module_action(M.group, len(gens), M.ring)
    S = _surjection_matrix(M, gens)
    if M.p:
        ker = fp.nullspace(S, M.p)
        ker_rows = [list(v) for v in ker]
    else:
        ker_rows = intlin.kernel_basis([[int(x) for x in r] for r in S])
    return _submodule_from_kernel(F, ker_rows, "Omega(%s)" % M.name)


def augmentation_ideal(group):
    """Kernel of the sum map on the regular integral module.

    Basis b_g = g - e over the non-identity elements; h . b_g = b_{hg} - b_h
    (reading b_e as 0).  Generated over the group ring by the b_s for the
    declared group generators.
    """
    nonid = [g for g in range(group.order) if g != group.identity]
    pos = {g: i for i, g in enumerate(nonid)}
    r = len(nonid)
    gens = {}
    for h in group.generators:
        mat = np.zeros((r, r), dtype=np.int64)
        for g in nonid:
            hg = group.mul(h, g)
            if hg != group.identity:
                mat[pos[hg], pos[g]] += 1
            mat[pos[h], pos[g]] -= 1
        gens[h] = mat
    return GModule(group, RING_Z, r, gens, check=False, name="aug")


def make_omega2_trivial(group):
    """Second syzygy of the trivial integral module, kept small by using
    one free-module generator per group generator."""
    I = augmentation_ideal(group)
    nonid = [g for g in range(group.order) if g != group.identity]
    pos = {g: i for i, g in enumerate(nonid)}
    gens = []
    for s in group.generators:
        v = [0] * I.rank
        v[pos[s]] = 1
        gens.append(v)
    return syzygy(I, gens=gens)


def cosyzygy_fp(M):
    """Minimal cosyzygy over F_p for a p-group: dual of the syzygy of the dual."""
    if M.p is None:
        raise ValueError("cosyzygy is implemented over prime fields only")
    return syzygy(M.dual()).dual()


def syzygy_power(M, n):
    out = M
    for _ in range(n):
        out = syzygy(out)
    return out


def omega_klein(n):
    """Omega^n of the trivial F_2 Klein module, dimension 2n+1."""
    G = make_klein4()
    M = make_trivial(G, "F2")
    for _ in range(n):
        M = syzygy(M)
    return M


def omega_negative_klein(m):
    """The explicit (2m+1)-dimensional Klein module isomorphic to the m-th
    cosyzygy of the trivial F_2 module.

    Basis e_1..e_{2m+1}: both generators fix e_1..e_{m+1};
    g(e_{m+1+i}) = e_i + e_{m+1+i} and h(e_{m+1+i}) = e_{i+1} + e_{m+1+i}.
    """
    if not (1 <= m <= 8):
        raise SizePolicyError("parameter must be between 1 and 8")
    G = make_klein4()
    r = 2 * m + 1
    Mg = np.eye(r, dtype=np.int64)
    Mh = np.eye(r, dtype=np.int64)
    for i in range(1, m + 1):
        Mg[i - 1, m + i] = 1        # e_i component
        Mh[i, m + i] = 1            # e_{i+1} component
    return GModule(G, "F2", r, {kleinres.KLEIN_G: Mg, kleinres.KLEIN_H: Mh},
                   check=False, name="OmegaNeg%d" % m)


def l_zeta_klein(zeta, n):
    """Kernel of a cocycle representative of zeta^n on Omega^n(F_2), for the
    Klein four group; dimension 2n.

    zeta = (alpha, beta) is a nonzero vector naming the degree-1 class
    alpha*x + beta*y.  The representative of zeta^n is fixed by expanding
    the n-th power binomially on the minimal resolution: the functional
    sending basis slot (p, q) to C(n, p) alpha^p beta^q mod 2.
    """
    import math

    alpha, beta = int(zeta[0]) % 2, int(zeta[1]) % 2
    if alpha == 0 and beta == 0:
        raise ValueError("zeta must be nonzero")
    if not (1 <= n <= 8):
        raise SizePolicyError("power must be between 1 and 8")
    G = make_klein4()
    # P_n = L^{n+1} as an F_2 module of dimension 4(n+1) with regular blocks
    Pn = _free_module_action(G, n + 1, "F2")
    Pprev = _free_module_action(G, n, "F2")
    D = _resolution_matrix_grouped(G, n)
    # functional f on P_n: slot (p, n-p) contributes C(n,p) a^p b^{n-p} * aug
    f = np.zeros(4 * (n + 1), dtype=np.int64)
    for s in range(n + 1):
        c = (math.comb(n, s) % 2) * (alpha ** s) * (beta ** (n - s))
        if c % 2:
            f[4 * s: 4 * (s + 1)] = 1  # augmentation on the group-algebra block
    # f must kill the next differential (cocycle condition)
    Dnext = _resolution_matrix_grouped(G, n + 1)
    assert not ((f @ Dnext) % 2).any(), "representative is not a cocycle"
    # Omega^n = image of D inside P_{n-1}; induced functional via preimages
    cols = D.T  # each column of D as a row
    pivot_idx = []
    span_rows = []
    base = 0
    for j in range(D.shape[1]):
        cand = span_rows + [D[:, j]]
        if fp.rank(np.vstack(cand), 2) > base:
            span_rows.append(D[:, j])
            pivot_idx.append(j)
            base += 1
    B = np.vstack(span_rows)  # rows: basis of Omega^n in P_{n-1} coords
    fhat = np.array([f[j] for j in pivot_idx], dtype=np.int64)
    # kernel of fhat in the basis coordinates
    ker_coords = fp.nullspace(fhat.reshape(1, -1), 2)
    L_rows = [(c @ B) % 2 for c in ker_coords]
    return _submodule_from_kernel(Pprev, L_rows, "L_zeta^%d" % n)


def _resolution_matrix_grouped(G, n):
    """Resolution differential with the group-element-major block layout used
    by _free_module_action (index i*|G| + g rather than kleinres's 4-blocks).

    The two layouts agree because each block is a full group-algebra copy;
    this wrapper just reuses kleinres with the same convention.
    """
    return kleinres.resolution_differential(G, n)
