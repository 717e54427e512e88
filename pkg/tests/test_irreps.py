import math

import numpy as np
import pytest

from golden import DECOMPOSITIONS, U_1_2, U_1_3, U_32_2, UT_32_2, phase_aligned_error
from symstars.irreps import (METHODS, antisym_block_diagonalizer, antisym_multiplicities, block_diagonalizer,
                             character_xi, integral_residuals, molien_coeffs, multiplicities,
                             poincare_series_coeffs, wedge_generators, wedge_product)
from symstars.spin import InputError, SpinMatrices, irrep_character
from symstars.sympower import collective_generators, collective_rotation


@pytest.mark.parametrize("s2,k", sorted(DECOMPOSITIONS))
def test_reference_decompositions(s2, k):
    for m in METHODS:
        assert multiplicities(s2 / 2, k, m).entries == DECOMPOSITIONS[(s2, k)]


def test_spec_examples():
    assert multiplicities(1, 3).as_dict() == {3.0: 1, 1.0: 1}
    assert multiplicities(1.5, 6)[3] == 2
    assert multiplicities(2.5, 1).as_dict() == {2.5: 1}
    assert multiplicities(1, 0).entries == {0: 1}


@pytest.mark.parametrize("s2", range(0, 7))
def test_methods_agree_and_invariants(s2):
    for k in range(1, 6):
        tabs = [multiplicities(s2 / 2, k, m) for m in METHODS]
        assert tabs[0] == tabs[1] == tabs[2]
        t = tabs[0]
        assert t.dimension() == math.comb(s2 + k, k)
        top = s2 * k
        assert t.entries[top] == 1
        assert t.entries.get(top - 2, 0) == 0
        assert len({j2 % 2 for j2 in t.entries}) == 1
        assert max(integral_residuals(s2 / 2, k).values()) < 1e-6


def test_hermite_duality():
    for s2 in range(1, 7):
        for k in range(1, 7):
            assert multiplicities(s2 / 2, k).entries == multiplicities(k / 2, s2).entries


def test_spin_one_pattern():
    for k in range(1, 9):
        e = multiplicities(1, k).entries
        assert e == {j2: 1 for j2 in range(2 * k, -1, -4)}


def test_character_xi():
    rng = np.random.default_rng(0)
    for s2 in (1, 2, 3):
        s = s2 / 2
        for a in rng.uniform(0.1, 6, 5):
            two = (irrep_character(s, a) ** 2 + irrep_character(s, 2 * a)) / 2
            assert abs(character_xi(s, 2, a) - two) < 1e-10
        assert character_xi(s, 0, 0.7) == pytest.approx(1)
    al = rng.uniform(0, 2 * np.pi, 20)
    for a in al:
        tr = np.trace(collective_rotation(1, 3, [0, 0, 1], a)).real
        for m in ("recursion", "newton"):
            assert abs(character_xi(1, 3, a, m) - tr) < 1e-10
    with pytest.raises(InputError):
        character_xi(1, 2, 0.3, "bogus")


def test_molien_series():
    assert molien_coeffs(0.5, 0, 8) == [1] + [0] * 8
    assert molien_coeffs(1, 0, 8) == [1, 0, 1, 0, 1, 0, 1, 0, 1]
    assert molien_coeffs(1.5, 0, 8) == [1, 0, 0, 0, 1, 0, 0, 0, 1]
    assert molien_coeffs(1, 0, 12) == poincare_series_coeffs({0: 1}, [2], 12)
    assert molien_coeffs(1.5, 0, 12) == poincare_series_coeffs({0: 1}, [4], 12)
    assert molien_coeffs(2, 0, 12) == poincare_series_coeffs({0: 1}, [2, 3], 12)
    assert molien_coeffs(2.5, 0, 20) == poincare_series_coeffs({0: 1, 18: 1}, [4, 8, 12], 20)


def check_blocks(B, gens):
    U = B.U
    assert np.abs(U @ U.conj().T - np.eye(B.dim)).max() < 1e-12
    mask = np.zeros((B.dim, B.dim), bool)
    for j2, _, sl in B.block_slices():
        mask[sl, sl] = True
    for X, Y in zip(gens, ("sx", "sy", "sz")):
        M = U @ X @ U.conj().T
        assert np.abs(M[~mask]).max(initial=0) < 1e-10
        for j2, _, sl in B.block_slices():
            assert np.abs(M[sl, sl] - getattr(SpinMatrices(j2), Y)).max() < 1e-10


@pytest.mark.parametrize("s,k", [(0.5, 4), (1, 2), (1, 3), (1, 4), (1.5, 2), (1.5, 3), (2, 3), (2, 4)])
def test_block_diagonalizer_blocks(s, k):
    B = block_diagonalizer(s, k)
    check_blocks(B, collective_generators(s, k))
    layout = {}
    for j2, _ in B.layout:
        layout[j2] = layout.get(j2, 0) + 1
    assert layout == multiplicities(s, k).entries
    j2s = [j2 for j2, _ in B.layout]
    assert j2s == sorted(j2s, reverse=True)


def test_single_party_identity():
    assert np.allclose(block_diagonalizer(1.5, 1).U, np.eye(4))


@pytest.mark.parametrize("s,k,ref", [(1, 2, U_1_2), (1, 3, U_1_3), (1.5, 2, U_32_2)])
def test_reference_matrices(s, k, ref):
    B = block_diagonalizer(s, k)
    assert phase_aligned_error(B.U, ref, [sl for _, _, sl in B.block_slices()]) < 1e-10
    assert B.block_phases_to(ref) is not None


def test_antisymmetric_reference_matrix():
    B = antisym_block_diagonalizer(1.5, 2)
    assert phase_aligned_error(B.U, UT_32_2, [sl for _, _, sl in B.block_slices()]) < 1e-10


@pytest.mark.parametrize("s,k", [(1, 2), (1.5, 2), (1.5, 3), (2, 2), (2, 3), (2.5, 3)])
def test_antisymmetric_blocks(s, k):
    B = antisym_block_diagonalizer(s, k)
    d = int(2 * s) + 1
    assert B.dim == math.comb(d, k)
    check_blocks(B, wedge_generators(s, k))
    layout = {}
    for j2, _ in B.layout:
        layout[j2] = layout.get(j2, 0) + 1
    assert layout == antisym_multiplicities(s, k).entries


def test_antisymmetric_character_oracle():
    # the wedge character is the elementary symmetric polynomial e_k of the weights
    rng = np.random.default_rng(2)
    for s2, k in [(3, 2), (4, 2), (5, 3)]:
        tab = antisym_multiplicities(s2 / 2, k)
        for a in rng.uniform(0.1, 6, 4):
            x = np.exp(-1j * a * (s2 / 2 - np.arange(s2 + 1)))
            e = np.poly(x)[k] * (-1) ** k
            chi = sum(m * irrep_character(j2 / 2, a) for j2, m in tab.entries.items())
            assert abs(e - chi) < 1e-10


def test_wedge_product_antisymmetric():
    rng = np.random.default_rng(3)
    V = rng.normal(size=(2, 4)) + 1j * rng.normal(size=(2, 4))
    assert np.allclose(wedge_product(V[::-1]), -wedge_product(V))


def test_dimension_cap():
    with pytest.raises(InputError):
        block_diagonalizer(3, 5, cap=100)
