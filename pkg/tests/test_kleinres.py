import numpy as np

from chowtwist import cohomology as coh
from chowtwist import gmodules as gm
from chowtwist import kleinres
from chowtwist.groups import make_klein4


def test_resolution_is_a_complex():
    G = make_klein4()
    for n in (1, 2, 3, 4):
        d1 = kleinres.resolution_differential(G, n)
        d2 = kleinres.resolution_differential(G, n + 1)
        assert not ((d1 @ d2) % 2).any()


def test_minimal_ranks():
    G = make_klein4()
    # rank of P_n is 4(n+1): one group-algebra block per Koszul slot
    for n in (0, 1, 2, 3):
        d = kleinres.resolution_differential(G, n + 1)
        assert d.shape == (4 * (n + 1), 4 * (n + 2))


def test_cohomology_dim_matches_bar():
    G = make_klein4()
    for M in (gm.make_trivial(G, "F2"), gm.omega_negative_klein(1),
              gm.omega_klein(1)):
        for n in (0, 1, 2, 3):
            assert kleinres.cohomology_dim(M, n) == coh.bar_cohomology(G, M, n).dim


def test_monomial_cocycles_are_cocycles():
    M = gm.omega_negative_klein(2)
    delta = kleinres.cochain_differential(M, 2)
    for m0 in M.fixed_points():
        z = kleinres.monomial_cocycle(M, m0, 2, 0)
        assert not ((delta @ z) % 2).any()
        z = kleinres.monomial_cocycle(M, m0, 0, 2)
        assert not ((delta @ z) % 2).any()


def test_shifts_commute_up_to_coboundary():
    M = gm.make_trivial(make_klein4(), "F2")
    m0 = M.fixed_points()[0]
    # shifting x then y agrees with the direct (2,2) monomial on the nose
    z = kleinres.monomial_cocycle(M, m0, 2, 0)
    zy = kleinres.shift_y(M, kleinres.shift_y(M, z, 2), 3)
    direct = kleinres.monomial_cocycle(M, m0, 2, 2)
    assert np.array_equal(zy % 2, direct % 2)
