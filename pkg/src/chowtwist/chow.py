"""Twisted Chow groups of classifying spaces for the supported families
(cyclic, Klein four, generalized quaternion), the Chow rings of their
classifying spaces with restriction/transfer structure, and the
twisted-motivic pipeline for the Klein group.

Conventions model a base field with enough roots of unity (k = C): cycle
maps into group cohomology are isomorphisms or injections per family, so
every value here is realized inside an explicitly computed cohomology
group.
"""

from __future__ import annotations

import numpy as np

from . import cohomology as coh
from . import f2, fp, intlin, kleinres
from .errors import UnsupportedFamilyError
from .gmodules import FiniteAbelianGroup, GModule
from .groups import make_klein4
from .lattices import coflasque_resolution, counterexample_lattices


class TwistedChowResult:
    """Value of one twisted Chow (or twisted motivic) group."""

    def __init__(self, degree, value, method, cross_check=None, basis=None,
                 group_name=None, module_name=None):
        self.degree = degree
        self.value = value        # FiniteAbelianGroup or int dimension
        self.method = method
        self.cross_check = cross_check
        self.basis = basis
        self.group_name = group_name
        self.module_name = module_name
        if cross_check is not None:
            assert self._values_agree(value, cross_check), (
                "method value %r disagrees with oracle %r" % (value, cross_check))

    @staticmethod
    def _values_agree(a, b):
        if isinstance(a, FiniteAbelianGroup) and isinstance(b, FiniteAbelianGroup):
            return a == b
        if isinstance(a, int) and isinstance(b, int):
            return a == b
        return False

    @property
    def dim(self):
        if isinstance(self.value, int):
            return self.value
        raise TypeError("integral result has no F_p dimension")

    def to_json(self):
        if isinstance(self.value, FiniteAbelianGroup):
            val = {"free_rank": self.value.free_rank,
                   "torsion": self.value.invariant_factors}
        else:
            val = {"dim": self.value}
        out = {"group": self.group_name, "module": self.module_name,
               "degree": self.degree, "value": val, "method": self.method}
        if self.cross_check is not None:
            if isinstance(self.cross_check, FiniteAbelianGroup):
                out["oracle"] = {"free_rank": self.cross_check.free_rank,
                                 "torsion": self.cross_check.invariant_factors}
            else:
                out["oracle"] = {"dim": self.cross_check}
        return out

    def __repr__(self):
        return "TwistedChow(deg=%d, %r, %s)" % (self.degree, self.value, self.method)


# ---------------------------------------------------------------------------
# cyclic groups


def twisted_chow_cyclic(group, module, i, oracle=False):
    """CH^i of the classifying space of a cyclic group with coefficients in
    a lattice: the fixed points in degree 0 and the trace quotient above."""
    if len(group.generators) != 1 and group.order > 1:
        raise UnsupportedFamilyError("closed form needs a cyclic group")
    if i == 0:
        if module.p:
            value = module.fixed_dim()
        else:
            value = FiniteAbelianGroup([], module.fixed_dim())
        return TwistedChowResult(0, value, "closed_form",
                                 group_name=group.name, module_name=module.name)
    st = module.trace_quotient()
    value = len(st.invariant_factors) if module.p else st
    check = None
    if oracle:
        res = coh.cyclic_cohomology(group, module, 2 * i)
        check = res.dim if module.p else res.structure
    return TwistedChowResult(i, value, "closed_form", cross_check=check,
                             group_name=group.name, module_name=module.name)


# ---------------------------------------------------------------------------
# Klein four group: image of fixed points times the Chow ring of BG


class KleinChowModule:
    """CH^*(BG, M) for the Klein group as a graded F_2[u, v]-module.

    Degree-i component: span of the classes (x^{2a} y^{2b}) . m0 inside
    H^{2i}(G, M), a+b = i, m0 running over a fixed-point basis; cocycles
    live on the small resolution from kleinres.  Bases are chosen greedily
    in (a, m0-index) order and the u, v actions are degree shifts expressed
    in those bases.
    """

    def __init__(self, module):
        G = make_klein4()
        if module.p != 2 or module.group.order != 4:
            raise ValueError("Klein Chow groups need an F_2 module over Klein4")
        self.group = G
        self.module = module
        self.fixed = module.fixed_points()
        self._cache = {}

    def _degree_data(self, i):
        """(span of coboundaries, list of (a, b, m0_idx), basis cocycles)."""
        if i in self._cache:
            return self._cache[i]
        M = self.module
        n = 2 * i
        nbits = (n + 1) * M.rank
        span = f2.F2Span(nbits)
        cob = kleinres.coboundary_rows(M, n)
        if len(cob):
            span.add_matrix(f2.pack_rows(cob))
        labels, basis = [], []
        for a in range(i + 1):
            b = i - a
            for k, m0 in enumerate(self.fixed):
                z = kleinres.monomial_cocycle(M, m0, 2 * a, 2 * b)
                packed = f2.pack_rows(z)[0]
                if span.add(packed):
                    labels.append((a, b, k))
                    basis.append(packed)
        # rebuild the coboundary-only span for class arithmetic
        cob_span = f2.F2Span(nbits)
        if len(cob):
            cob_span.add_matrix(f2.pack_rows(cob))
        out = (cob_span, labels, basis)
        self._cache[i] = out
        return out

    def dim(self, i):
        return len(self._degree_data(i)[1])

    def basis_labels(self, i):
        return list(self._degree_data(i)[1])

    def multiplication_matrix(self, i, var):
        """Matrix of multiplication by u (var=0) or v (var=1) from the
        degree-i basis to the degree-(i+1) basis, over F_2."""
        M = self.module
        n = 2 * i
        cobs, labels, basis = self._degree_data(i)
        cobs1, labels1, basis1 = self._degree_data(i + 1)
        out = np.zeros((len(labels1), len(labels)), dtype=np.int64)
        for j, (a, b, k) in enumerate(labels):
            na, nb = (a + 1, b) if var == 0 else (a, b + 1)
            z = kleinres.monomial_cocycle(M, self.fixed[k], 2 * na, 2 * nb)
            coeffs = f2.express_mod_span(cobs1, basis1, f2.pack_rows(z)[0])
            assert coeffs is not None, "shifted class escaped the image span"
            out[:, j] = coeffs
        return out


def twisted_chow_klein(module, i):
    """CH^i(BG, M) for the Klein four group, M an F_2 module."""
    kcm = module if isinstance(module, KleinChowModule) else KleinChowModule(module)
    d = kcm.dim(i)
    name = kcm.module.name
    return TwistedChowResult(i, d, "image_computation", basis=kcm.basis_labels(i),
                             group_name="Klein4", module_name=name)


# ---------------------------------------------------------------------------
# generalized quaternion groups


def _transfer_classes_q(group, module, subgroups, space=None):
    """Class coordinates in H^2(G, M) of the transfers cor_H(chern(chi) . m0)
    for each listed subgroup, every nontrivial character of it, and a fixed
    basis of the subgroup's fixed points."""
    if space is None:
        space = coh.IntegralClassSpace(group, module, 2)
    classes = []
    for sub in subgroups:
        if sub.order == 1:
            continue
        H, embed = sub.as_group()
        MH = GModule(H, module.ring, module.rank,
                     {j: module.act(embed[j]) for j in H.generators}, check=False)
        bcH = coh.BarComplex(H, MH)
        fixed = MH.fixed_points()
        for chi in coh.all_characters(H):
            if all(v == 0 for v in chi.values()):
                continue
            chern = coh.character_chern(H, chi)
            for m0 in fixed:
                z = np.zeros(bcH.dim(2), dtype=np.int64)
                for idx in range(len(bcH.tuples(2))):
                    z[idx * MH.rank:(idx + 1) * MH.rank] = chern[idx] * np.asarray(m0)
                cz = coh.corestriction_cochain(group, module, sub, H, embed, z, 2)
                classes.append(space.class_of(cz))
    return space, classes


def _subgroup_structure(space, classes):
    """Structure of the subgroup of H^2 generated by class tuples, as a
    FiniteAbelianGroup: Z^k modulo the kernel of the evaluation map."""
    k = len(classes)
    mods = space.factors
    if k == 0 or not mods:
        return FiniteAbelianGroup([], 0)
    rows = [[classes[j][t] for j in range(k)] + [mods[t] if c == t else 0
                                                for c in range(len(mods))]
            for t in range(len(mods))]
    ker = intlin.kernel_basis(rows)
    cols = [v[:k] for v in ker]
    free, factors, _ = intlin.quotient_structure(k, cols)
    assert free == 0
    return FiniteAbelianGroup(factors, 0)


def _two_primary(st):
    fac = []
    for d in st.invariant_factors:
        two = 1
        while d % 2 == 0:
            two *= 2
            d //= 2
        if two > 1:
            fac.append(two)
    return FiniteAbelianGroup(sorted(fac), 0)


def twisted_chow_quaternion(group, module, i, oracle=False):
    """CH^i(BG, M) for a generalized quaternion group and a lattice M.

    Even positive degrees are the trace quotient; odd degrees are the
    subgroup of the 2-primary part of H^2(G, M) generated by transfers of
    first Chern classes from the three index-2 cyclic subgroups; degree 0
    is the fixed lattice.  Odd answers are degree-independent by Euler
    periodicity.
    """
    if module.p is not None:
        raise UnsupportedFamilyError("quaternion closed form needs a lattice")
    name = group.name
    if not name.startswith("Q"):
        raise UnsupportedFamilyError("group is not a generalized quaternion group")
    if i == 0:
        return TwistedChowResult(0, FiniteAbelianGroup([], module.fixed_dim()),
                                 "closed_form", group_name=name,
                                 module_name=module.name)
    if i % 2 == 0:
        check = None
        if oracle:
            check = coh.tate(group, module, 0).structure
        return TwistedChowResult(i, module.trace_quotient(), "closed_form",
                                 cross_check=check, group_name=name,
                                 module_name=module.name)
    half = group.order // 2
    subs = [group.generated_subgroup([1]),       # <x>
            group.generated_subgroup([half]),    # <y>
            group.generated_subgroup([group.mul(1, half)])]  # <xy>
    space, classes = _transfer_classes_q(group, module, subs)
    st = _two_primary(_subgroup_structure(space, classes))
    return TwistedChowResult(i, st, "image_computation",
                             basis=classes, group_name=name,
                             module_name=module.name)


def quaternion_h2(group, module):
    """The full H^2(G, M) for cross-checking against the odd-degree image."""
    return coh.bar_cohomology(group, module, 2).structure


# ---------------------------------------------------------------------------
# Mackey structure on the Chow rings of Klein subgroups


class MackeyChowKlein:
    """Chow rings of the five Klein subgroups with restriction and transfer.

    CH^* of the full group is Z[u, v]/(2u, 2v) with monomial basis u^a v^b
    in degree a+b; of each order-2 subgroup Z[c]/(2c); of the trivial
    subgroup just Z in degree 0.  In positive degree all transfers vanish
    and restriction is determined by the character table: u restricts to c
    on the first subgroup, to 0 on the second, to c on the diagonal one.
    """

    def __init__(self):
        self.group = make_klein4()
        # res^G_{<g>}(u), res^G_{<g>}(v) etc., as (coefficient of c) pairs
        self.res_table = {1: (1, 0), 2: (0, 1), 3: (1, 1)}

    def chow_dim(self, subgroup, i):
        """F_2 dimension of CH^i(BH) for i > 0 (degree 0 is Z for every H)."""
        if i == 0:
            return 1
        if subgroup.order == 1:
            return 0
        if subgroup.order == 2:
            return 1
        return i + 1

    def restriction_matrix(self, K, H, i):
        """res^K_H on degree-i Chow groups mod 2, H <= K, i > 0.

        Bases: monomials u^a v^b (a+b = i) for the full group, c^i for an
        order-2 subgroup.
        """
        dK, dH = self.chow_dim(K, i), self.chow_dim(H, i)
        out = np.zeros((dH, dK), dtype=np.int64)
        if dH == 0 or dK == 0:
            return out
        if K.order == H.order:
            np.fill_diagonal(out, 1)
            return out
        if K.order == 4 and H.order == 2:
            gen = next(a for a in H.elements if a != self.group.identity)
            ru, rv = self.res_table[gen]
            for col in range(dK):  # column col is the monomial u^col v^{i-col}
                out[0, col] = ((ru ** col) * (rv ** (i - col))) % 2
            return out
        return out  # restriction to the trivial subgroup is zero in degree > 0

    def evaluate_block(self, K, H, coeff, i):
        """Induced map CH^i(BK) -> CH^i(BH) of coeff times the double-coset
        basis map; nonzero in positive degree only when H <= K, where it is
        restriction (the transfer factor is the identity)."""
        dK, dH = self.chow_dim(K, i), self.chow_dim(H, i)
        if coeff % 2 == 0 or dK == 0 or dH == 0:
            return np.zeros((dH, dK), dtype=np.int64)
        Hset, Kset = set(H.elements), set(K.elements)
        if not Hset <= Kset:
            return np.zeros((dH, dK), dtype=np.int64)
        return (coeff * self.restriction_matrix(K, H, i)) % 2


def mackey_chow_klein():
    return MackeyChowKlein()


def _double_coset_coefficients(G, K, H, block):
    """Coefficients of the double-coset basis in a G-map Z[G/K] -> Z[G/H].

    block is the matrix in coset bases (rows: cosets of H, cols: cosets of
    K); the coefficient of the class of gH is constant on K-orbits, so it
    is read off the identity-coset column.  Returns total coefficient sums
    per double coset (for the Klein group all conjugations are trivial, so
    only the sum matters downstream).
    """
    repsH = H.left_coset_reps()
    coset_of_H = {}
    for j, t in enumerate(repsH):
        for h in H.elements:
            coset_of_H[G.mul(t, h)] = j
    # group the cosets of H into K-orbits
    seen = set()
    coeffs = []
    for j, t in enumerate(repsH):
        if j in seen:
            continue
        orbit = set()
        for k in K.elements:
            orbit.add(coset_of_H[G.mul(k, t)])
        seen |= orbit
        vals = {int(block[jj, 0]) for jj in orbit}
        assert len(vals) == 1, "map is not equivariant on a K-orbit"
        coeffs.append(vals.pop())
    return coeffs


def twisted_motivic_klein(module, i, resolutions=None):
    """Degree-(2i, i) twisted motivic cohomology of the Klein classifying
    space, as the cokernel of a Chow-group map between covering spaces.

    Two coflasque resolutions 0 -> A -> B -> M -> 0 and A' -> P -> A give
    a composite P -> B of permutation modules; its Mackey decomposition is
    evaluated on CH^i of the pieces and the cokernel dimension returned.
    resolutions can supply ((B_pieces, psi)) data directly: a list of
    (subgroup, offset) target pieces, same for sources, and the integer
    matrix of P -> B.
    """
    G = make_klein4()
    mk = MackeyChowKlein()
    if resolutions is None:
        res1 = coflasque_resolution(module)
        A = res1.Q
        res2 = coflasque_resolution(A)
        # composite P -> A -> B; q_basis holds A's basis in B coordinates
        a_in_b = np.array(res1.q_basis, dtype=np.int64).T
        psi = a_in_b @ res2.surjection
        target_pieces = [s for s, _ in res1.pieces]
        source_pieces = [s for s, _ in res2.pieces]
    else:
        target_pieces, source_pieces, psi = resolutions
    tgt_dims = [mk.chow_dim(H, i) for H in target_pieces]
    src_dims = [mk.chow_dim(K, i) for K in source_pieces]
    total_t, total_s = sum(tgt_dims), sum(src_dims)
    mat = np.zeros((total_t, total_s), dtype=np.int64)
    t_off = np.cumsum([0] + tgt_dims)
    s_off = np.cumsum([0] + src_dims)
    # offsets of the permutation pieces inside the module matrices
    t_block = np.cumsum([0] + [H.index for H in target_pieces])
    s_block = np.cumsum([0] + [K.index for K in source_pieces])
    for si, K in enumerate(source_pieces):
        for ti, H in enumerate(target_pieces):
            block = psi[t_block[ti]:t_block[ti + 1], s_block[si]:s_block[si + 1]]
            if not block.any():
                continue
            coeffs = _double_coset_coefficients(G, K, H, block)
            total = sum(coeffs)
            piece = mk.evaluate_block(K, H, total, i)
            mat[t_off[ti]:t_off[ti + 1], s_off[si]:s_off[si + 1]] += piece
    mat %= 2
    coker = total_t - fp.rank(mat, 2) if total_t else 0
    chow = twisted_chow_klein(module, i).value if module.p == 2 else None
    if chow is not None and i > 0:
        assert coker >= chow, "motivic value smaller than the Chow image"
    return TwistedChowResult(i, coker, "motivic_pipeline", cross_check=None,
                             group_name="Klein4", module_name=module.name)


def twisted_motivic_klein_explicit(m, i):
    """Same pipeline but on the explicit counterexample resolutions."""
    data = counterexample_lattices(m)
    G = data.module.group
    a_in_b = np.array(data.a_basis, dtype=np.int64).T
    psi = a_in_b @ data.p_to_a
    target_pieces = ([G.trivial_subgroup()] * m) + ([G.full_subgroup()] * (m + 1))
    source_pieces = [H for H, _ in data.p_pieces]
    return twisted_motivic_klein(data.module, i,
                                 resolutions=(target_pieces, source_pieces, psi))


# ---------------------------------------------------------------------------
# generation-by-transfers report


def transfer_generation_check(group, module, i):
    """Checks that the twisted Chow value is generated by transfers of Chern
    classes from (centralizer) subgroups, per family.

    Returns a dict report with a boolean 'generated'.
    """
    name = group.name
    if name.startswith("C"):
        if i != 1:
            raise UnsupportedFamilyError("cyclic transfer check implemented at degree 1")
        space, classes = _transfer_classes_q(group, module,
                                             [s for s in group.subgroups()])
        sub_all = _subgroup_structure(space, classes)
        target = module.trace_quotient()
        generated = sub_all == target
        return {"group": name, "module": module.name, "degree": i,
                "generated": bool(generated), "span": repr(sub_all),
                "target": repr(target)}
    if name == "Klein4":
        kcm = KleinChowModule(module)
        base_dim = kcm.dim(i)
        # transfers from proper subgroups vanish on the Chow ring in positive
        # degree, so generation reduces to the fixed-point image; verified by
        # recomputing the image and confirming proper-subgroup transfers land
        # inside it at the cochain level in the bar model (degree 1 only).
        report = {"group": name, "module": module.name, "degree": i,
                  "generated": True, "dim": base_dim}
        if i == 1:
            inside = _klein_bar_transfer_check(group, module)
            report["generated"] = inside
        return report
    if name.startswith("Q"):
        half = group.order // 2
        three = [group.generated_subgroup([1]), group.generated_subgroup([half]),
                 group.generated_subgroup([group.mul(1, half)])]
        space, cls3 = _transfer_classes_q(group, module, three)
        _, cls_all = _transfer_classes_q(group, module, group.subgroups(),
                                         space=space)
        span3 = space.subgroup_generated(cls3)
        span_all = space.subgroup_generated(cls_all)
        return {"group": name, "module": module.name, "degree": i,
                "generated": span3 == span_all,
                "span3": len(span3), "span_all": len(span_all)}
    raise UnsupportedFamilyError("no transfer model for %s" % name)


def _klein_bar_transfer_check(group, module):
    """Bar-model check that proper-subgroup transfers of Chern-cup classes
    lie inside the degree-1 Chow image (with coboundaries)."""
    M = module
    bc = coh.BarComplex(group, M)
    p = M.p
    # degree-1 characters as 1-cocycles: x detects g, y detects h
    def char_cocycle(detect):
        z = np.zeros(bc.q, dtype=np.int64)
        for idx, (a,) in enumerate(bc.tuples(1)):
            z[idx] = detect(a)
        return z

    x1 = char_cocycle(lambda a: 1 if a in (1, 3) else 0)
    y1 = char_cocycle(lambda a: 1 if a in (2, 3) else 0)
    # x^2, y^2 as scalar 2-cocycles, then cup with fixed vectors
    triv = GModule(group, M.ring, 1, {g: [[1]] for g in group.generators},
                   check=False)
    x2 = coh.cup_with_trivial(group, triv, x1, 1, x1, 1)
    y2 = coh.cup_with_trivial(group, triv, y1, 1, y1, 1)
    span_rows = [r for r in bc.delta_matrix(1).T % p]
    for mu in (x2, y2):
        for m0 in M.fixed_points():
            z = coh.cup_with_trivial(group, M, mu, 2, np.asarray(m0), 0)
            span_rows.append(z)
    span = np.array(span_rows, dtype=np.int64)
    base = fp.rank(span, p)
    # transfers from the three order-2 subgroups of chern cup fixed vectors
    for a in (1, 2, 3):
        sub = group.generated_subgroup([a])
        H, embed = sub.as_group()
        MH = GModule(H, M.ring, M.rank,
                     {j: M.act(embed[j]) for j in H.generators}, check=False)
        bcH = coh.BarComplex(H, MH)
        # c = x_H^2, square of the nontrivial character of H
        trivH = GModule(H, M.ring, 1, {g: [[1]] for g in H.generators}, check=False)
        xH = np.array([1], dtype=np.int64)  # nontrivial character on the generator
        cH2 = coh.cup_with_trivial(H, trivH, xH, 1, xH, 1)
        for m0 in MH.fixed_points():
            z = np.zeros(bcH.dim(2), dtype=np.int64)
            for idx in range(len(bcH.tuples(2))):
                z[idx * M.rank:(idx + 1) * M.rank] = cH2[idx] * np.asarray(m0)
            cz = coh.corestriction_cochain(group, M, sub, H, embed, z, 2)
            if not fp.in_rowspan(span, cz % p, p):
                return False
    return True
