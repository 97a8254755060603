import numpy as np
import pytest

from chowtwist import chow
from chowtwist import gmodules as gm
from chowtwist.errors import UnsupportedFamilyError
from chowtwist.groups import make_cyclic, make_klein4, make_quaternion


def test_cyclic_trivial_values():
    G = make_cyclic(5)
    T = gm.make_trivial(G)
    r0 = chow.twisted_chow_cyclic(G, T, 0)
    assert r0.value == gm.FiniteAbelianGroup([], 1)  # Z
    for i in (1, 2, 3):
        assert chow.twisted_chow_cyclic(G, T, i).value == gm.FiniteAbelianGroup([5])


def test_cyclic_oracle_cross_check():
    G = make_cyclic(6)
    for M in (gm.make_trivial(G), gm.make_sign_cyclic(G),
              gm.make_augmentation_quotient(G)):
        r = chow.twisted_chow_cyclic(G, M, 2, oracle=True)
        assert r.cross_check is not None
        assert r.value == r.cross_check


def test_cyclic_rejects_noncyclic():
    K = make_klein4()
    with pytest.raises(UnsupportedFamilyError):
        chow.twisted_chow_cyclic(K, gm.make_trivial(K), 1)


def test_klein_trivial_polynomial_growth():
    T = gm.make_trivial(make_klein4(), "F2")
    for i in range(4):
        assert chow.twisted_chow_klein(T, i).value == i + 1


def test_klein_omega_negative_dims():
    for m in (1, 2):
        M = gm.omega_negative_klein(m)
        for i in range(3):
            assert chow.twisted_chow_klein(M, i).value == m + 2 * i + 1


def test_klein_omega_positive_vanishes():
    M = gm.omega_klein(1)
    assert chow.twisted_chow_klein(M, 0).value == 1
    for i in (1, 2):
        assert chow.twisted_chow_klein(M, i).value == 0


def test_klein_requires_f2():
    with pytest.raises(ValueError):
        chow.twisted_chow_klein(gm.make_trivial(make_klein4()), 1)


def test_klein_module_multiplication():
    km = chow.KleinChowModule(gm.omega_negative_klein(1))
    for var in (0, 1):
        A = km.multiplication_matrix(1, var)
        assert A.shape == (km.dim(2), km.dim(1))
    # u and v commute as maps CH^1 -> CH^3
    uv = km.multiplication_matrix(2, 0) @ km.multiplication_matrix(1, 1)
    vu = km.multiplication_matrix(2, 1) @ km.multiplication_matrix(1, 0)
    assert np.array_equal(uv % 2, vu % 2)


def test_quaternion_omega2():
    G = make_quaternion(3)
    M = gm.make_omega2_trivial(G)
    assert chow.quaternion_h2(G, M) == gm.FiniteAbelianGroup([8])
    ch1 = chow.twisted_chow_quaternion(G, M, 1).value
    assert ch1 == gm.FiniteAbelianGroup([4])
    assert chow.twisted_chow_quaternion(G, M, 3).value == ch1
    ch2 = chow.twisted_chow_quaternion(G, M, 2).value
    assert ch2 == gm.FiniteAbelianGroup([2, 2])


def test_quaternion_degree_zero():
    G = make_quaternion(3)
    M = gm.make_omega2_trivial(G)
    r = chow.twisted_chow_quaternion(G, M, 0)
    assert r.value.free_rank == M.fixed_dim()


def test_mackey_chow_klein():
    mk = chow.mackey_chow_klein()
    G = mk.group
    full = G.full_subgroup()
    for i in range(3):
        assert mk.chow_dim(full, i) == i + 1
    H = G.generated_subgroup([1])
    assert mk.chow_dim(H, 2) == 1
    R = mk.restriction_matrix(full, H, 1)
    assert R.shape == (1, 2)
    # columns are v, u: restriction to <g> sends u -> c and v -> 0
    assert R.tolist() == [[0, 1]]


def test_mackey_evaluate_block_requires_containment():
    mk = chow.mackey_chow_klein()
    G = mk.group
    H = G.generated_subgroup([1])
    K = G.generated_subgroup([2])
    assert not mk.evaluate_block(K, H, 1, 1).any()  # H not inside K


def test_motivic_explicit_matches_generic():
    for m in (2, 3):
        M = gm.omega_negative_klein(m)
        generic = chow.twisted_motivic_klein(M, 1).value
        explicit = chow.twisted_motivic_klein_explicit(m, 1).value
        assert generic == explicit == 2 * m + 2
        assert chow.twisted_chow_klein(M, 1).value == m + 3


def test_motivic_higher_degree():
    m = 2
    assert chow.twisted_motivic_klein_explicit(m, 2).value == (m + 1) * 3


def test_transfer_generation():
    G4 = make_cyclic(4)
    assert chow.transfer_generation_check(G4, gm.make_trivial(G4), 1)
    K = make_klein4()
    assert chow.transfer_generation_check(K, gm.make_trivial(K, "F2"), 1)
    Q = make_quaternion(3)
    assert chow.transfer_generation_check(Q, gm.make_omega2_trivial(Q), 1)


def test_result_json_shape():
    G = make_cyclic(4)
    r = chow.twisted_chow_cyclic(G, gm.make_trivial(G), 1, oracle=True)
    j = r.to_json()
    assert j["value"] == {"free_rank": 0, "torsion": [4]}
    assert j["oracle"] == j["value"]
    rk = chow.twisted_chow_klein(gm.make_trivial(make_klein4(), "F2"), 2)
    assert rk.to_json()["value"] == {"dim": 3}
