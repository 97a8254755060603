import random

import pytest

from chowtwist import gmodules as gm
from chowtwist import lattices as lat
from chowtwist.errors import SizePolicyError
from chowtwist.groups import make_cyclic, make_klein4, make_quaternion


def test_h1_known_values():
    G = make_cyclic(4)
    # H^1(C4, Z) = 0, H^1(C4, Z-) = Z/2, H^1(C4, aug quotient) = Z/4
    assert lat.h1_lattice(gm.make_trivial(G)).is_trivial()
    assert lat.h1_lattice(gm.make_sign_cyclic(G)) == gm.FiniteAbelianGroup([2])
    assert lat.h1_lattice(gm.make_augmentation_quotient(G)) == gm.FiniteAbelianGroup([4])


def test_permutation_modules_are_coflasque():
    G = make_quaternion(3)
    for S in G.subgroups():
        ok, witness = lat.is_coflasque(gm.make_permutation(G, S))
        assert ok, witness


def test_sign_module_is_not_coflasque():
    G = make_cyclic(4)
    ok, witness = lat.is_coflasque(gm.make_sign_cyclic(G))
    assert not ok
    sub, h1 = witness
    assert h1 == gm.FiniteAbelianGroup([2])


def test_flasque_dual():
    G = make_cyclic(4)
    R = gm.make_regular(G)
    assert lat.is_flasque(R)[0]
    assert not lat.is_flasque(gm.make_sign_cyclic(G))[0]


def test_resolution_of_sign_module():
    G = make_cyclic(4)
    M = gm.make_sign_cyclic(G)
    res = lat.coflasque_resolution(M)
    assert res.check()
    assert res.Q.rank == res.P.rank - M.rank


def test_resolution_of_fp_module():
    M = gm.omega_negative_klein(2)
    res = lat.coflasque_resolution(M)
    assert res.check()
    # the preimage lattice of 0 mod p has full permutation rank
    assert res.Q.rank == res.P.rank


def test_resolution_pruning_never_grows():
    G = make_klein4()
    M = gm.make_augmentation_quotient(G)
    full = lat.coflasque_resolution(M)
    pruned = lat.coflasque_resolution(M, prune=True)
    assert pruned.check()
    assert pruned.P.rank <= full.P.rank


def test_resolution_random_lattices():
    rng = random.Random(17)
    for G in (make_cyclic(6), make_klein4()):
        for _ in range(3):
            M = gm.random_lattice(G, rng)
            res = lat.coflasque_resolution(M)
            assert res.check()


def test_counterexample_lattices_shapes():
    for m in (2, 3):
        data = lat.counterexample_lattices(m)
        assert data.module.rank == 2 * m + 1
        assert data.B.rank == 5 * m + 1
        assert data.A.rank == 5 * m + 1
        assert len(data.p_pieces) == 3 * m  # m per index-2 subgroup
        assert data.P.rank == 6 * m


def test_counterexample_maps_commute():
    import numpy as np
    data = lat.counterexample_lattices(2)
    G = data.module.group
    for g in G.generators:
        # b_to_m intertwines the actions of B and M (the target is mod 2)
        left = (data.module.act(g) @ data.b_to_m) % 2
        right = (data.b_to_m @ data.B.act(g)) % 2
        assert np.array_equal(left, right)
        assert np.array_equal(data.A.act(g) @ data.p_to_a,
                              data.p_to_a @ data.P.act(g))


def test_counterexample_a_is_coflasque():
    data = lat.counterexample_lattices(2)
    assert lat.is_coflasque(data.A)[0]


def test_counterexample_size_policy():
    with pytest.raises(SizePolicyError):
        lat.counterexample_lattices(1)
    with pytest.raises(SizePolicyError):
        lat.counterexample_lattices(9)
