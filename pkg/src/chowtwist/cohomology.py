"""Group cohomology, homology and Tate groups via the normalized bar
resolution, with cup products, restriction and chain-level transfer.

Cochains of degree n are vectors of length (|G|-1)^n * rank(M): one
coefficient block per n-tuple of non-identity elements, tuples ordered
lexicographically in the non-identity element list.  Tuples containing the
identity are not part of the basis; evaluation on them returns zero, which
is what normalization means.

Integral H^n for n > 0 is finite (killed by |G|), so its structure equals
the torsion of coker(delta_{n-1}), i.e. the nontrivial invariant factors of
the (n-1)-st coboundary matrix; the kernel of delta_n never has to be
echelonized.  The same argument gives H_n from the (n+1)-st boundary matrix.
"""

from __future__ import annotations

import math
import os
from fractions import Fraction

import numpy as np

from . import fp, intlin
from .errors import ResourceCapError
from .gmodules import FiniteAbelianGroup, GModule

DEFAULT_MAX_CELLS = 10 ** 6


def max_cells():
    env = os.environ.get("CHOWTWIST_MAX_CELLS")
    return int(env) if env else DEFAULT_MAX_CELLS


class BarComplex:
    """Normalized bar cochain/chain complex for a group and coefficient module."""

    def __init__(self, group, module):
        assert module.group is group or module.group.order == group.order
        self.group = group
        self.module = module
        self.nonid = [g for g in range(group.order) if g != group.identity]
        self.q = len(self.nonid)
        self.r = module.rank
        self._pos = {g: i for i, g in enumerate(self.nonid)}
        self._delta_cache = {}
        self._boundary_cache = {}

    def dim(self, n):
        return (self.q ** n) * self.r

    def check_cap(self, n):
        cells = (self.q ** (n + 1)) * self.r
        cap = max_cells()
        if cells > cap:
            raise ResourceCapError(
                "degree-%d bar computation needs %d cells, cap is %d" % (n, cells, cap),
                cells=cells,
            )

    def tuples(self, n):
        """All degree-n basis tuples in lexicographic order."""
        if n == 0:
            return [()]
        out = [()]
        for _ in range(n):
            out = [t + (g,) for t in out for g in self.nonid]
        return out

    def tuple_index(self, t):
        idx = 0
        for g in t:
            idx = idx * self.q + self._pos[g]
        return idx

    def block(self, f, t):
        """Coefficient block of the cochain f at tuple t (zero if t has an
        identity entry)."""
        if self.group.identity in t:
            return np.zeros(self.r, dtype=np.int64)
        i = self.tuple_index(t)
        return f[i * self.r:(i + 1) * self.r]

    def apply_delta(self, f, n):
        """delta_n applied to a degree-n cochain vector."""
        G, M, r = self.group, self.module, self.r
        out = np.zeros(self.dim(n + 1), dtype=np.int64)
        for idx, t in enumerate(self.tuples(n + 1)):
            acc = M.act(t[0]) @ self.block(f, t[1:])
            sign = -1
            for i in range(n):
                merged = t[:i] + (G.mul(t[i], t[i + 1]),) + t[i + 2:]
                acc = acc + sign * self.block(f, merged)
                sign = -sign
            acc = acc + sign * self.block(f, t[:n])
            out[idx * r:(idx + 1) * r] = acc
        if M.p:
            out %= M.p
        return out

    def delta_matrix(self, n):
        """Dense matrix of delta_n, shape dim(n+1) x dim(n)."""
        if n in self._delta_cache:
            return self._delta_cache[n]
        self.check_cap(n)
        G, M, r, q = self.group, self.module, self.r, self.q
        rows, cols = self.dim(n + 1), self.dim(n)
        D = np.zeros((rows, cols), dtype=np.int64)
        eye = np.eye(r, dtype=np.int64)

        def add_block(out_idx, t_in, mat):
            if G.identity in t_in:
                return
            j = self.tuple_index(t_in)
            D[out_idx * r:(out_idx + 1) * r, j * r:(j + 1) * r] += mat

        for idx, t in enumerate(self.tuples(n + 1)):
            add_block(idx, t[1:], M.act(t[0]))
            sign = -1
            for i in range(n):
                merged = t[:i] + (G.mul(t[i], t[i + 1]),) + t[i + 2:]
                add_block(idx, merged, sign * eye)
                sign = -sign
            add_block(idx, t[:n], sign * eye)
        if M.p:
            D %= M.p
        self._delta_cache[n] = D
        return D

    def boundary_matrix(self, n):
        """Matrix of the homology boundary d_n : C_n -> C_{n-1} for
        M tensored over the group ring with the bar resolution.

        Chains carry the right action m.g = rho(g^{-1}) m, so
        d(m (x) [g1|...|gn]) = m.g1 (x) [g2|...|gn]
          + sum (-1)^i m (x) [...|g_i g_{i+1}|...] + (-1)^n m (x) [g1|...].
        """
        if n in self._boundary_cache:
            return self._boundary_cache[n]
        self.check_cap(n)
        G, M, r = self.group, self.module, self.r
        rows, cols = self.dim(n - 1), self.dim(n)
        D = np.zeros((rows, cols), dtype=np.int64)
        eye = np.eye(r, dtype=np.int64)

        def add_block(t_out, in_idx, mat):
            if G.identity in t_out:
                return
            i = self.tuple_index(t_out)
            D[i * r:(i + 1) * r, in_idx * r:(in_idx + 1) * r] += mat

        for idx, t in enumerate(self.tuples(n)):
            add_block(t[1:], idx, M.act(G.inv(t[0])))
            sign = -1
            for i in range(n - 1):
                merged = t[:i] + (G.mul(t[i], t[i + 1]),) + t[i + 2:]
                add_block(merged, idx, sign * eye)
                sign = -sign
            add_block(t[:n - 1], idx, sign * eye)
        if M.p:
            D %= M.p
        self._boundary_cache[n] = D
        return D


class CohomologyResult:
    """H^n (or H_n, or a Tate group) with its presentation data.

    structure is a FiniteAbelianGroup over Z; over F_p the dimension is
    stored and structure lists that many copies of Z/p.
    """

    def __init__(self, degree, ring, structure=None, dim=None):
        self.degree = degree
        self.ring = ring
        if dim is not None and structure is None:
            p = int(ring[1:])
            structure = FiniteAbelianGroup([p] * dim if dim else [], 0)
        self.structure = structure
        self.dim = dim

    def __repr__(self):
        if self.dim is not None:
            return "H(deg=%d) = F^%d" % (self.degree, self.dim)
        return "H(deg=%d) = %s" % (self.degree, self.structure)

    def to_json(self):
        out = {"degree": self.degree, "ring": self.ring}
        if self.dim is not None:
            out["dim"] = self.dim
        if self.structure is not None:
            out["structure"] = self.structure.to_json()
        return out


def bar_cohomology(group, module, n):
    """H^n(G, M) from the normalized bar resolution."""
    bc = BarComplex(group, module)
    bc.check_cap(n)
    if module.p:
        if n == 0:
            return CohomologyResult(0, module.ring, dim=module.fixed_dim())
        dn = bc.delta_matrix(n)
        dprev = bc.delta_matrix(n - 1)
        dim = bc.dim(n) - fp.rank(dn, module.p) - fp.rank(dprev, module.p)
        return CohomologyResult(n, module.ring, dim=dim)
    if n == 0:
        return CohomologyResult(0, "Z", structure=FiniteAbelianGroup([], module.fixed_dim()))
    dprev = bc.delta_matrix(n - 1)
    factors, _ = intlin.invariant_factors([[int(x) for x in r] for r in dprev])
    return CohomologyResult(n, "Z", structure=FiniteAbelianGroup(factors, 0))


def bar_homology(group, module, n):
    """H_n(G, M) from the normalized bar resolution."""
    bc = BarComplex(group, module)
    if n == 0:
        # M_G = M / span{(g-1)m}; over Z full structure, over F_p dimension
        G = group
        stacked_cols = []
        for g in range(G.order):
            A = module.act(g) - np.eye(module.rank, dtype=np.int64)
            for j in range(module.rank):
                stacked_cols.append([int(x) for x in A[:, j]])
        if module.p:
            rows = np.array(stacked_cols, dtype=np.int64).reshape(-1, module.rank)
            dim = module.rank - fp.rank(rows, module.p)
            return CohomologyResult(0, module.ring, dim=dim)
        free, factors, _ = intlin.quotient_structure(module.rank, stacked_cols)
        return CohomologyResult(0, "Z", structure=FiniteAbelianGroup(factors, free))
    bc.check_cap(n + 1)
    dnext = bc.boundary_matrix(n + 1)
    if module.p:
        dn = bc.boundary_matrix(n)
        dim = bc.dim(n) - fp.rank(dn.T, module.p) - fp.rank(dnext.T, module.p)
        return CohomologyResult(n, module.ring, dim=dim)
    factors, _ = intlin.invariant_factors([[int(x) for x in r] for r in dnext])
    return CohomologyResult(n, "Z", structure=FiniteAbelianGroup(factors, 0))


def _kernel_mod_image_z(T_basis, image_cols, rank):
    """Structure of (lattice with basis T_basis) / (lattice gen by image_cols)."""
    k = len(T_basis)
    if k == 0:
        return FiniteAbelianGroup([], 0)
    Tcols = [[T_basis[i][r] for i in range(k)] for r in range(rank)]
    ce = intlin.ColumnEchelon(Tcols)
    cols = []
    for v in image_cols:
        c = ce.solve([int(x) for x in v])
        if c is None:
            raise RuntimeError("image vector not inside the kernel lattice")
        cols.append(c)
    free, factors, _ = intlin.quotient_structure(k, cols)
    return FiniteAbelianGroup(factors, free)


def tate_minus_one(group, module):
    """Tate group in degree -1: ker(induced trace M_G -> M^G)."""
    M = module
    tr = M.trace_matrix()
    aug_cols = []
    for g in range(group.order):
        A = M.act(g) - np.eye(M.rank, dtype=np.int64)
        for j in range(M.rank):
            aug_cols.append([int(x) for x in A[:, j]])
    if M.p:
        T = fp.nullspace(tr, M.p)
        R = np.array(aug_cols, dtype=np.int64)
        dim = (len(T) if len(T) else 0) - fp.rank(R, M.p)
        return CohomologyResult(-1, M.ring, dim=dim)
    T = intlin.kernel_basis([[int(x) for x in r] for r in tr])
    return CohomologyResult(-1, "Z", structure=_kernel_mod_image_z(T, aug_cols, M.rank))


def tate(group, module, i):
    """Tate cohomology in any degree: positive via cochains, zero via the
    trace quotient, -1 via the norm kernel, below that via homology."""
    if i > 0:
        return bar_cohomology(group, module, i)
    if i == 0:
        st = module.trace_quotient()
        if module.p:
            return CohomologyResult(0, module.ring, dim=len(st.invariant_factors))
        return CohomologyResult(0, "Z", structure=st)
    if i == -1:
        return tate_minus_one(group, module)
    return bar_homology(group, module, -1 - i)


def cyclic_cohomology(group, module, n, modulus=None):
    """H^n for a cyclic group from the 2-periodic resolution.

    The resolution alternates multiplication by sigma - 1 and by the trace;
    H^0 = M^G, H^{2i} = M^G/tr(M), H^{2i+1} = ker(tr)/im(sigma-1).  With a
    modulus k the coefficients are M/kM (k need not be prime).
    """
    if len(group.generators) != 1 and group.order > 1:
        raise ValueError("periodic resolution needs a cyclic group")
    M = module
    sigma = group.generators[0]
    S = M.act(sigma) - np.eye(M.rank, dtype=np.int64)
    tr = M.trace_matrix()
    if modulus is not None:
        assert M.p is None
        return _cyclic_cohomology_mod(M, S, tr, n, modulus)
    if M.p:
        S %= M.p
        tr %= M.p
        if n == 0:
            dim = M.rank - fp.rank(S, M.p)
        elif n % 2 == 0:
            dim = (M.rank - fp.rank(S, M.p)) - fp.rank(tr, M.p)
        else:
            dim = (M.rank - fp.rank(tr, M.p)) - fp.rank(S, M.p)
        return CohomologyResult(n, M.ring, dim=dim)
    if n == 0:
        return CohomologyResult(0, "Z", structure=FiniteAbelianGroup([], M.fixed_dim()))
    if n % 2 == 0:
        return CohomologyResult(n, "Z", structure=M.trace_quotient())
    T = intlin.kernel_basis([[int(x) for x in r] for r in tr])
    img = [[int(x) for x in S[:, j]] for j in range(M.rank)]
    return CohomologyResult(n, "Z", structure=_kernel_mod_image_z(T, img, M.rank))


def _cyclic_cohomology_mod(M, S, tr, n, k):
    """Periodic-resolution cohomology with coefficients M/kM."""
    r = M.rank

    def kernel_mod_k(A):
        # {x in Z^r : A x in k Z^r}, spanned together with k Z^r
        block = [[int(A[i][j]) for j in range(r)] + [k if i == c else 0 for c in range(r)]
                 for i in range(r)]
        ker = intlin.kernel_basis(block)
        lat = intlin.IntLattice(r)
        for v in ker:
            lat.add(list(v[:r]))
        return lat.basis_vectors()

    def image_cols(A):
        cols = [[int(A[i][j]) for i in range(r)] for j in range(r)]
        cols += [[k if i == c else 0 for i in range(r)] for c in range(r)]
        return cols

    if n == 0:
        ker, img = kernel_mod_k(S), image_cols(np.zeros((r, r), dtype=np.int64))
    elif n % 2 == 0:
        ker, img = kernel_mod_k(S), image_cols(tr)
    else:
        ker, img = kernel_mod_k(tr), image_cols(S)
    return CohomologyResult(n, "Z/%d" % k, structure=_kernel_mod_image_z(ker, img, r))


# ---------------------------------------------------------------------------
# cup products, restriction, transfer


def cup_with_trivial(group, module, a, p_deg, b, q_deg):
    """Cup product of a scalar cochain a (trivial F_p coefficients, degree
    p_deg) with a module-valued cochain b of degree q_deg.

    (a cup b)(g_1..g_{p+q}) = a(g_1..g_p) * ((g_1...g_p) . b(g_{p+1}..)).
    """
    assert module.p is not None
    bc = BarComplex(group, module)
    scal = BarComplex(group, GModule(group, module.ring, 1,
                                     {g: [[1]] for g in group.generators}, check=False))
    n = p_deg + q_deg
    out = np.zeros(bc.dim(n), dtype=np.int64)
    r = bc.r
    for idx, t in enumerate(bc.tuples(n)):
        front, back = t[:p_deg], t[p_deg:]
        av = scal.block(a, front)[0] if p_deg else a[0]
        if av % module.p == 0:
            continue
        g = group.identity
        for x in front:
            g = group.mul(g, x)
        bv = bc.block(b, back) if q_deg else b
        out[idx * r:(idx + 1) * r] = av * (module.act(g) @ bv)
    return out % module.p


def restriction_cochain(G, module, subgroup, H, embed, f, n):
    """Restrict a degree-n cochain over G to the subgroup (as its own group).

    H, embed as produced by subgroup.as_group(); the coefficient module is
    reused with its parent coordinates.
    """
    bcG = BarComplex(G, module)
    MH = GModule(H, module.ring, module.rank,
                 {i: module.act(embed[i]) for i in H.generators}, check=False)
    bcH = BarComplex(H, MH)
    out = np.zeros(bcH.dim(n), dtype=np.int64)
    r = module.rank
    for idx, t in enumerate(bcH.tuples(n)):
        parent_t = tuple(embed[x] for x in t)
        out[idx * r:(idx + 1) * r] = bcG.block(f, parent_t)
    return out, MH


def corestriction_cochain(G, module, subgroup, H, embed, fH, n):
    """Chain-level transfer of a degree-n cochain from a subgroup to G.

    Right coset representatives t_i of H\\G are the minimal element index in
    each coset.  Writing t_i g = h_i(g) t_{sigma_g(i)} with h_i(g) in the
    subgroup, the transfer is

      (cor f)(g_1,..,g_n) = sum_i t_i^{-1} . f(h_{i_1}(g_1), h_{i_2}(g_2), ..)

    with i_1 = i and i_{k+1} = sigma_{g_k}(i_k).
    """
    inv_embed = {e: j for j, e in enumerate(embed)}
    reps = subgroup.right_coset_reps()
    coset_of = {}
    for i, t in enumerate(reps):
        for h in subgroup.elements:
            coset_of[G.mul(h, t)] = i
    MH = GModule(H, module.ring, module.rank,
                 {i: module.act(embed[i]) for i in H.generators}, check=False)
    bcG = BarComplex(G, module)
    bcH = BarComplex(H, MH)
    r = module.rank
    out = np.zeros(bcG.dim(n), dtype=np.int64)
    for idx, t in enumerate(bcG.tuples(n)):
        acc = np.zeros(r, dtype=np.int64)
        for i0 in range(len(reps)):
            i = i0
            h_tuple = []
            for g in t:
                tg = G.mul(reps[i], g)
                j = coset_of[tg]
                h = G.mul(tg, G.inv(reps[j]))
                h_tuple.append(inv_embed[h])
                i = j
            val = bcH.block(fH, tuple(h_tuple))
            acc = acc + module.act(G.inv(reps[i0])) @ val
        out[idx * r:(idx + 1) * r] = acc
    if module.p:
        out %= module.p
    return out


def conjugation_cochain(G, module, src_subgroup, x, f, n):
    """Conjugation c_x : cochains over H to cochains over xHx^{-1},
    (c_x f)(k_1..k_n) = x . f(x^{-1} k_1 x, ..).

    Both subgroup cochain spaces use their as_group presentations.
    """
    H, embedH = src_subgroup.as_group()
    tgt = G.generated_subgroup([G.conj(x, a) for a in src_subgroup.elements])
    K, embedK = tgt.as_group()
    inv_embedH = {e: j for j, e in enumerate(embedH)}
    MH = GModule(H, module.ring, module.rank,
                 {i: module.act(embedH[i]) for i in H.generators}, check=False)
    MK = GModule(K, module.ring, module.rank,
                 {i: module.act(embedK[i]) for i in K.generators}, check=False)
    bcH = BarComplex(H, MH)
    bcK = BarComplex(K, MK)
    r = module.rank
    out = np.zeros(bcK.dim(n), dtype=np.int64)
    for idx, t in enumerate(bcK.tuples(n)):
        back = tuple(inv_embedH[G.conj(G.inv(x), embedK[k])] for k in t)
        out[idx * r:(idx + 1) * r] = module.act(x) @ bcH.block(f, back)
    if module.p:
        out %= module.p
    return out, tgt, K, embedK


def character_chern(group, chi):
    """Degree-2 integral cocycle of the central extension classified by a
    character chi : group -> Q/Z (the carry cocycle of its rational lift).

    chi maps element index -> Fraction in [0, 1); checked to be a
    homomorphism into Q/Z.
    """
    chi = {g: Fraction(v) % 1 for g, v in chi.items()}
    for a in range(group.order):
        for b in range(group.order):
            if (chi[a] + chi[b] - chi[group.mul(a, b)]) % 1 != 0:
                raise ValueError("chi is not a homomorphism to Q/Z")
    triv = GModule(group, "Z", 1, {g: [[1]] for g in group.generators}, check=False)
    bc = BarComplex(group, triv)
    out = np.zeros(bc.dim(2), dtype=np.int64)
    for idx, (a, b) in enumerate(bc.tuples(2)):
        carry = chi[a] + chi[b] - (chi[group.mul(a, b)] % 1)
        assert carry.denominator == 1
        out[idx] = int(carry)
    return out


def all_characters(group):
    """All homomorphisms group -> Q/Z, found by brute force over values on
    the declared generators (values are multiples of 1/order)."""
    from itertools import product

    n = group.order
    gens = group.generators
    out = []
    for vals in product([Fraction(k, n) for k in range(n)], repeat=len(gens)):
        chi = {group.identity: Fraction(0)}
        ok = True
        frontier = [group.identity]
        assign = dict(zip(gens, vals))
        while frontier and ok:
            nxt = []
            for g in frontier:
                for s, v in assign.items():
                    gs = group.mul(g, s)
                    val = (chi[g] + v) % 1
                    if gs in chi:
                        if chi[gs] != val:
                            ok = False
                            break
                    else:
                        chi[gs] = val
                        nxt.append(gs)
                if not ok:
                    break
            frontier = nxt
        if ok and len(chi) == n:
            out.append(chi)
    return out


def faithful_character(group):
    """A faithful character for a cyclic group: generator -> 1/order."""
    chi = {group.identity: Fraction(0)}
    sigma = group.generators[0]
    g = group.identity
    for k in range(1, group.order):
        g = group.mul(g, sigma)
        chi[g] = Fraction(k, group.order)
    return chi


class IntegralClassSpace:
    """Coordinates on H^n(G, M) over Z for mapping cocycles to classes.

    Runs Smith normal form on delta_{n-1} with the forward transform
    tracked; a cocycle's class is its vector of cokernel coordinates at the
    torsion slots (free slots must read zero, since H^n is finite).
    """

    def __init__(self, group, module, n):
        assert n >= 1 and module.p is None
        self.bc = BarComplex(group, module)
        dprev = self.bc.delta_matrix(n - 1)
        diag, _, U = intlin.smith_normal_form([[int(x) for x in r] for r in dprev], want_u=True)
        self.n = n
        self.diag = diag
        self.U = U
        self.m = self.bc.dim(n)
        self.torsion_slots = [j for j, d in enumerate(diag) if d != 1]
        self.factors = [diag[j] for j in self.torsion_slots]

    def class_of(self, cocycle):
        """Coordinates of a cocycle in the torsion factors of H^n."""
        w = intlin.mat_vec(self.U, [int(x) for x in cocycle])
        rank = len(self.diag)
        for j in range(rank, self.m):
            if w[j] != 0:
                raise ValueError("vector is not a cocycle (free cokernel coordinate)")
        return tuple(w[j] % self.diag[j] for j in self.torsion_slots)

    def subgroup_generated(self, classes, cap=10 ** 5):
        """All elements of the subgroup of H^n generated by the given class
        coordinate tuples (BFS closure under addition)."""
        mods = self.factors
        zero = tuple(0 for _ in mods)
        seen = {zero}
        frontier = [zero]
        gens = [tuple(c) for c in classes]
        while frontier:
            nxt = []
            for v in frontier:
                for g in gens:
                    w = tuple((a + b) % m for a, b, m in zip(v, g, mods))
                    if w not in seen:
                        seen.add(w)
                        nxt.append(w)
                        if len(seen) > cap:
                            raise RuntimeError("generated subgroup too large")
            frontier = nxt
        return seen

    def element_order(self, cls):
        ord_ = 1
        for c, m in zip(cls, self.factors):
            if c % m:
                ord_ = ord_ * (m // math.gcd(m, c)) // math.gcd(ord_, m // math.gcd(m, c))
        return ord_
