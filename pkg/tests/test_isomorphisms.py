import math

import numpy as np
import pytest

from golden import H_1_3, M_1_2, UT_32_2, octahedral_state, phase_aligned_error, random_ket, random_state
from symstars.irreps import antisym_block_diagonalizer, block_diagonalizer, wedge_generators, wedge_product
from symstars.isomorphisms import (HODGE_VARIANTS, hermite, hermite_matrix, hodge_complement, murnaghan,
                                   murnaghan_inverse, murnaghan_matrix, plucker_bd_form, plucker_residual,
                                   plucker_wedge_factorizable, wedge_plane)
from symstars.majorana import vee_factorize
from symstars.spin import InputError, SpinMatrices
from symstars.sympower import SymState, basis_convert, collective_generators, collective_rotation, sym_basis

r = math.sqrt
CHI1 = np.array([1, 0, 0, -1]) / r(2)
CHI2 = np.array([0, 1, 1, 0]) / r(2)
CHI3 = np.array([0, 1, -1, 0]) / r(2)


def fidelity(a, b):
    return abs(np.vdot(a, b)) / (np.linalg.norm(a) * np.linalg.norm(b))


def standard(s, k, amps):
    idx = [A for A, _ in sym_basis(s, k)]
    v = np.zeros(len(idx), dtype=complex)
    for A, c in amps.items():
        v[idx.index(A)] = c
    return v


def test_hermite_reference_matrix():
    H = hermite_matrix(1, 3)
    assert np.abs(H - H_1_3).max() < 1e-12


def test_hermite_basis_images():
    H = hermite_matrix(1, 3)
    idx3 = [A for A, _ in sym_basis(1, 3)]
    idx2 = [A for A, _ in sym_basis(1.5, 2)]
    col = H[:, idx3.index((1, 1, 1))]
    assert np.allclose(col, np.eye(10)[idx2.index((1, 1))])
    col = H[:, idx3.index((1, 1, 3))]
    ref = np.zeros(10)
    ref[idx2.index((1, 3))] = (r(2) + 2 * r(3)) / 5
    ref[idx2.index((2, 2))] = (r(3) - 2 * r(2)) / 5
    assert np.allclose(col, ref)


@pytest.mark.parametrize("s,k", [(1, 2), (1, 3), (1.5, 2), (1.5, 3), (2, 3), (0.5, 4)])
def test_hermite_intertwines(s, k):
    H = hermite_matrix(s, k)
    assert np.abs(H @ H.conj().T - np.eye(len(H))).max() < 1e-12
    for X, Y in zip(collective_generators(s, k), collective_generators(k / 2, int(2 * s))):
        assert np.abs(H @ X - Y @ H).max() < 1e-10
    rng = np.random.default_rng(int(4 * s + k))
    n, t = rng.normal(size=3), rng.uniform(0, 6)
    n /= np.linalg.norm(n)
    lhs = H @ collective_rotation(s, k, n, t)
    rhs = collective_rotation(k / 2, int(2 * s), n, t) @ H
    assert np.abs(lhs - rhs).max() < 1e-10


def test_hermite_state_and_bd_transport():
    rng = np.random.default_rng(0)
    st_ = random_state(rng, 1, 3)
    h = hermite(st_)
    assert (h.s2, h.k) == (3, 2) and abs(h.norm() - 1) < 1e-12
    A, B = block_diagonalizer(1, 3), block_diagonalizer(1.5, 2)
    assert np.abs(B.to_block(h.amplitudes) - A.to_block(st_.amplitudes)).max() < 1e-12
    # the result does not depend on the input basis tag
    h2 = hermite(basis_convert(st_, "block", A))
    assert np.abs(h2.amplitudes - h.amplitudes).max() < 1e-12


def test_hermite_octahedral_image():
    h = hermite(octahedral_state())
    ref = standard(1.5, 2, {(1, 2): -1, (3, 4): 1}) / r(2)
    assert fidelity(h.amplitudes, ref) > 1 - 1e-12
    assert not vee_factorize(h).factorizable


def test_murnaghan_reference_matrix():
    M = murnaghan_matrix(1, 2)
    slices = [sl for _, _, sl in antisym_block_diagonalizer(1.5, 2).block_slices()]
    # compare in the block bases, where phases act per irreducible block
    X = UT_32_2 @ M @ block_diagonalizer(1, 2).U.conj().T
    Y = UT_32_2 @ M_1_2 @ block_diagonalizer(1, 2).U.conj().T
    assert phase_aligned_error(X, Y, slices) < 1e-10
    assert np.abs(M[:, 0] - np.eye(6)[0]).max() < 1e-12


def test_murnaghan_top_state():
    # |11> v |11> goes to the normalized wedge of the two highest kets
    e = np.eye(4)
    w = murnaghan(SymState(1, 2, np.eye(6)[0]))
    assert np.allclose(w, wedge_product([e[0], e[1]]) / r(2))


@pytest.mark.parametrize("s,k", [(1, 2), (1, 3), (1.5, 2), (0.5, 4)])
def test_murnaghan_ghz_two_terms(s, k):
    g = np.zeros(len(sym_basis(s, k)), dtype=complex)
    g[0] = g[-1] = 1 / r(2)
    w = murnaghan(SymState(s, k, g))
    ref = np.zeros(w.size)
    ref[0] = ref[-1] = 1 / r(2)
    assert fidelity(w, ref) > 1 - 1e-12


@pytest.mark.parametrize("s,k", [(1, 2), (1, 3), (1.5, 2), (2, 3)])
def test_murnaghan_intertwines_and_inverts(s, k):
    M = murnaghan_matrix(s, k)
    assert np.abs(M @ M.conj().T - np.eye(len(M))).max() < 1e-12
    for X, Y in zip(collective_generators(s, k), wedge_generators(s + (k - 1) / 2, k)):
        assert np.abs(M @ X - Y @ M).max() < 1e-10
    st_ = random_state(np.random.default_rng(1), s, k)
    back = murnaghan_inverse(murnaghan(st_), s, k)
    assert np.abs(back.amplitudes - st_.amplitudes).max() < 1e-12
    with pytest.raises(InputError):
        murnaghan_inverse(np.ones(3), s, k)


@pytest.mark.parametrize("d,k", [(4, 2), (5, 2), (5, 3), (6, 3)])
def test_antilinear_complement_is_orthogonal(d, k):
    rng = np.random.default_rng(d * 10 + k)
    V = np.array([random_ket(rng, d) for _ in range(k)])
    w = wedge_product(V)
    o = hodge_complement(w, (d - 1) / 2, k, "antilinear")
    P = wedge_plane(o, (d - 1) / 2, d - k)
    assert P.shape == (d - k, d)
    assert np.abs(P.conj() @ V.T).max() < 1e-10


@pytest.mark.parametrize("variant", HODGE_VARIANTS)
def test_complement_twice_is_a_unit_scalar(variant):
    rng = np.random.default_rng(5)
    for d, k in [(4, 2), (5, 2), (6, 3)]:
        w = random_ket(rng, math.comb(d, k))
        back = hodge_complement(hodge_complement(w, (d - 1) / 2, k, variant), (d - 1) / 2, d - k, variant)
        z = np.vdot(w, back)
        assert abs(abs(z) - 1) < 1e-12 and np.abs(back - z * w).max() < 1e-12


def test_complement_of_top_plane():
    e = np.zeros(6)
    e[0] = 1
    out = hodge_complement(e, 1.5, 2, "antilinear")
    assert abs(abs(out[-1]) - 1) < 1e-15 and np.abs(out[:-1]).max() == 0
    with pytest.raises(InputError):
        hodge_complement(e, 1.5, 2, "bogus")
    with pytest.raises(InputError):
        hodge_complement(np.ones(5), 1.5, 2)


def test_linear_complement_commutes_with_rotations():
    rng = np.random.default_rng(6)
    for s, k in [(1.5, 2), (2, 2), (2, 3)]:
        d = int(2 * s) + 1
        w = random_ket(rng, math.comb(d, k))
        for X, Y in zip(wedge_generators(s, k), wedge_generators(s, d - k)):
            lhs = hodge_complement(X @ w, s, k)
            rhs = Y @ hodge_complement(w, s, k)
            assert np.abs(lhs - rhs).max() < 1e-10


def diagram(s, k, a):
    """m^-1 phi m applied to standard amplitudes a of the k-fold spin-s power."""
    w = murnaghan(SymState(s, k, a))
    return murnaghan_inverse(hodge_complement(w, s + (k - 1) / 2, k), k / 2, int(2 * s)).amplitudes


@pytest.mark.xfail(strict=True, reason="closure holds per irreducible block up to a sign, see decisions ledger")
@pytest.mark.parametrize("s,k", [(1, 2), (1, 3)])
def test_diagram_closes_projectively(s, k):
    rng = np.random.default_rng(7)
    H = hermite_matrix(s, k)
    for _ in range(10):
        a = random_ket(rng, len(H))
        assert fidelity(diagram(s, k, a), H @ a) > 1 - 1e-10


@pytest.mark.parametrize("s,k", [(1, 2), (1, 3), (1.5, 2), (1, 4), (2, 3), (1.5, 3), (0.5, 3)])
def test_diagram_closes_per_block(s, k):
    A, B = block_diagonalizer(s, k), block_diagonalizer(k / 2, int(2 * s))
    n = A.dim
    C = np.array([diagram(s, k, e) for e in np.eye(n)]).T
    X = B.U @ C @ A.U.conj().T
    assert np.abs(X - np.diag(np.diag(X))).max() < 1e-10
    for _, _, sl in A.block_slices():
        diag = np.diag(X)[sl]
        assert np.abs(np.abs(diag) - 1).max() < 1e-10
        assert np.abs(diag - diag[0]).max() < 1e-10


def test_plucker_random_and_generic():
    rng = np.random.default_rng(8)
    Ut = antisym_block_diagonalizer(1.5, 2)
    for _ in range(5):
        V = rng.normal(size=(2, 4)) + 1j * rng.normal(size=(2, 4))
        w = wedge_product(V)
        assert plucker_wedge_factorizable(w)[0]
        assert abs(plucker_bd_form(Ut.to_block(w))) < 1e-10 * np.vdot(w, w).real
        g = random_ket(rng, 6)
        ok, res = plucker_wedge_factorizable(g)
        assert not ok and res > 1e-3
        # the block form is twice the standard quadric
        P = np.zeros((4, 4), dtype=complex)
        for c, (i, j) in enumerate([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]):
            P[i, j] = g[c]
        std = P[0, 1] * P[2, 3] - P[0, 2] * P[1, 3] + P[0, 3] * P[1, 2]
        assert abs(plucker_bd_form(Ut.to_block(g)) - 2 * std) < 1e-12
    # generic higher spin
    V = rng.normal(size=(2, 6))
    assert plucker_residual(wedge_product(V), 2.5) < 1e-12


def test_plucker_examples():
    assert plucker_wedge_factorizable(np.eye(6)[0])[0]
    ghz = murnaghan(SymState(1, 2, np.array([1, 0, 0, 0, 0, 1]) / r(2)))
    assert not plucker_wedge_factorizable(ghz)[0]
    with pytest.raises(InputError):
        plucker_wedge_factorizable(np.eye(6)[0], basis="bogus")
    with pytest.raises(InputError):
        plucker_bd_form(np.ones(5))


def test_two_plane_states():
    Ut = antisym_block_diagonalizer(1.5, 2)
    psi = np.array([-1, 1, 0, -1, 1, 0]) / 2
    psi_p = np.array([1, 1, 0, 1, 1, 0]) / 2
    for v in (psi, psi_p):
        ok, _ = plucker_wedge_factorizable(v, 1.5, "block")
        assert ok
        top = v[:5]
        Sz = SpinMatrices(4).sz
        assert abs(np.vdot(top, Sz @ top)) < 1e-12
        assert abs(np.vdot(top, Sz @ Sz @ top) - 2.5) < 1e-12
    # factor assignment, up to a global phase
    assert fidelity(Ut.to_block(wedge_product([CHI1, CHI3])), psi) > 1 - 1e-12
    assert fidelity(Ut.to_block(wedge_product([CHI1, CHI2])), psi_p) > 1 - 1e-12
    # an unnormalized wedge of two orthonormal kets has norm sqrt 2
    assert abs(np.linalg.norm(wedge_product([CHI1, CHI2])) - r(2)) < 1e-12


def test_wedge_plane_recovers_span():
    rng = np.random.default_rng(9)
    for d, k in [(4, 2), (5, 3)]:
        V = rng.normal(size=(k, d)) + 1j * rng.normal(size=(k, d))
        P = wedge_plane(wedge_product(V), (d - 1) / 2, k)
        assert np.abs(P @ P.conj().T - np.eye(k)).max() < 1e-10
        Q, _ = np.linalg.qr(V.T)
        assert np.linalg.norm(P.T - Q @ (Q.conj().T @ P.T)) < 1e-10
    assert wedge_plane(random_ket(rng, 6), 1.5, 2).shape[0] < 2
