from fractions import Fraction

import numpy as np
import pytest

from chowtwist import cohomology as coh
from chowtwist import fp
from chowtwist import gmodules as gm
from chowtwist.errors import ResourceCapError
from chowtwist.groups import make_cyclic, make_klein4, make_quaternion


def test_delta_squared_zero():
    G = make_klein4()
    M = gm.omega_negative_klein(1)
    bc = coh.BarComplex(G, M)
    for n in (0, 1, 2):
        d1 = bc.delta_matrix(n)
        d2 = bc.delta_matrix(n + 1)
        assert not ((d2 @ d1) % 2).any()


def test_cyclic_trivial_integral():
    G = make_cyclic(6)
    T = gm.make_trivial(G)
    assert coh.bar_cohomology(G, T, 0).structure == gm.FiniteAbelianGroup([], 1)
    assert coh.bar_cohomology(G, T, 1).structure.is_trivial()
    assert coh.bar_cohomology(G, T, 2).structure == gm.FiniteAbelianGroup([6])


def test_bar_matches_periodic():
    for m in (2, 3, 4):
        G = make_cyclic(m)
        mods = [gm.make_trivial(G), gm.make_augmentation_quotient(G)]
        if m % 2 == 0:
            mods.append(gm.make_sign_cyclic(G))
        for M in mods:
            for n in (1, 2, 3):
                a = coh.bar_cohomology(G, M, n).structure
                b = coh.cyclic_cohomology(G, M, n).structure
                assert a == b, (m, M.name, n)


def test_cyclic_cohomology_modulus():
    # H^*(C4, Z/2): every degree is Z/2
    G = make_cyclic(4)
    T = gm.make_trivial(G)
    for n in (0, 1, 2, 3):
        st = coh.cyclic_cohomology(G, T, n, modulus=2).structure
        assert st == gm.FiniteAbelianGroup([2]), n
    # modulus 4 on the sign module alternates 0, Z/2, Z/2
    S = gm.make_sign_cyclic(G)
    assert coh.cyclic_cohomology(G, S, 1, modulus=2).structure == gm.FiniteAbelianGroup([2])


def test_klein_trivial_f2_dims():
    G = make_klein4()
    T = gm.make_trivial(G, "F2")
    # polynomial ring on two degree-1 classes
    for n in (0, 1, 2, 3):
        assert coh.bar_cohomology(G, T, n).dim == n + 1


def test_quaternion_low_degrees():
    G = make_quaternion(3)
    T = gm.make_trivial(G)
    assert coh.bar_cohomology(G, T, 1).structure.is_trivial()
    assert coh.bar_cohomology(G, T, 2).structure == gm.FiniteAbelianGroup([2, 2])
    assert coh.bar_cohomology(G, T, 3).structure.is_trivial()


def test_homology_and_negative_tate():
    G = make_cyclic(5)
    T = gm.make_trivial(G)
    assert coh.bar_homology(G, T, 0).structure == gm.FiniteAbelianGroup([], 1)
    assert coh.bar_homology(G, T, 1).structure == gm.FiniteAbelianGroup([5])
    # Tate hat: H^0 = Z/5, H^{-1} = 0, H^{-2} = H_1 = Z/5
    assert coh.tate(G, T, 0).structure == gm.FiniteAbelianGroup([5])
    assert coh.tate(G, T, -1).structure.is_trivial()
    assert coh.tate(G, T, -2).structure == gm.FiniteAbelianGroup([5])


def test_tate_two_periodicity():
    G = make_cyclic(4)
    for M in (gm.make_trivial(G), gm.make_sign_cyclic(G)):
        for i in (-3, -2, -1, 0, 1):
            assert coh.tate(G, M, i).structure == coh.tate(G, M, i + 2).structure


def test_resource_cap(monkeypatch):
    monkeypatch.setenv("CHOWTWIST_MAX_CELLS", "100")
    G = make_cyclic(6)
    with pytest.raises(ResourceCapError) as exc:
        coh.bar_cohomology(G, gm.make_trivial(G), 3)
    assert exc.value.cells > 100


def test_cup_product_cocycle_and_square():
    # x cup x on C2 with F2 coefficients is the nonzero degree-2 class
    G = make_cyclic(2)
    T = gm.make_trivial(G, "F2")
    bc = coh.BarComplex(G, T)
    x = np.array([1], dtype=np.int64)  # value 1 on the nonidentity element
    xx = coh.cup_with_trivial(G, T, x, 1, x, 1)
    assert not (bc.delta_matrix(2) @ xx % 2).any()
    d1 = bc.delta_matrix(1)
    # not a coboundary
    assert not any(np.array_equal(xx % 2, (d1 @ np.array([c])) % 2) for c in (0, 1))


def test_all_characters():
    for G, count in ((make_cyclic(6), 6), (make_klein4(), 4),
                     (make_quaternion(3), 4)):
        chars = coh.all_characters(G)
        assert len(chars) == count
        for chi in chars:
            for a in range(G.order):
                for b in range(G.order):
                    assert (chi[a] + chi[b] - chi[G.mul(a, b)]) % 1 == 0


def test_character_chern_order():
    G = make_cyclic(4)
    T = gm.make_trivial(G)
    space = coh.IntegralClassSpace(G, T, 2)
    assert space.factors == [4]
    chi = coh.faithful_character(G)
    cls = space.class_of(coh.character_chern(G, chi))
    assert space.element_order(cls) == 4


def test_character_chern_nonfaithful():
    G = make_cyclic(4)
    T = gm.make_trivial(G)
    space = coh.IntegralClassSpace(G, T, 2)
    chi = {g: Fraction(g, 2) % 1 for g in range(4)}  # factors through C2
    cls = space.class_of(coh.character_chern(G, chi))
    assert space.element_order(cls) == 2


def test_cor_res_is_multiplication_by_index():
    G = make_cyclic(4)
    sub = G.generated_subgroup([2])
    H, embed = sub.as_group()
    T = gm.make_trivial(G, "F2")
    bc = coh.BarComplex(G, T)
    n = 2
    for z in fp.nullspace(bc.delta_matrix(n), 2):
        fH, MH = coh.restriction_cochain(G, T, sub, H, embed, z, n)
        back = coh.corestriction_cochain(G, T, sub, H, embed, fH, n)
        # index 2 kills everything mod 2: back must be a coboundary
        diff = (back - 0 * z) % 2
        rows = bc.delta_matrix(n - 1)
        assert fp.in_rowspan(rows.T, diff, 2)


def test_subgroup_generated():
    G = make_cyclic(6)
    space = coh.IntegralClassSpace(G, gm.make_trivial(G), 2)
    assert space.factors == [6]
    sub = space.subgroup_generated([(2,)])
    assert len(sub) == 3  # the index-2 subgroup of Z/6
