"""Hermite and Murnaghan isomorphisms, the k-plane complement map and Pluecker tests.

All maps act on amplitude vectors in the standard (orthonormal) bases:
multi-indices with repetition for symmetric powers, strictly increasing
multi-indices for antisymmetric powers.
"""
from functools import lru_cache
from itertools import combinations
import math

import numpy as np

from .irreps import (antisym_block_diagonalizer, block_diagonalizer, wedge_indices,
                     _perm_sign)
from .spin import InputError, twice
from .sympower import SymState, _normalizers

HODGE_VARIANTS = ("linear", "antilinear")


def _as_standard(state):
    if state.basis == "standard":
        return state.amplitudes
    if state.basis == "induced":
        return state.amplitudes / _normalizers(state.d, state.k)
    return block_diagonalizer(state.s2 / 2, state.k).to_standard(state.amplitudes)


def _check_layouts(A, B, what):
    if [j for j, _ in A.layout] != [j for j, _ in B.layout]:
        raise InputError(f"{what}: block structures differ")


@lru_cache(maxsize=32)
def _hermite(s2, k):
    A = block_diagonalizer(s2 / 2, k)
    B = block_diagonalizer(k / 2, s2)
    _check_layouts(A, B, "hermite")
    H = B.U.conj().T @ A.U
    H.setflags(write=False)
    return H


def hermite_matrix(s, k):
    """Unitary from the k-fold spin-s symmetric power to the 2s-fold spin-k/2 one.

    It is the identity between the two block-diagonal bases.
    """
    s2 = twice(s)
    if s2 < 1 or k < 1:
        raise InputError("hermite_matrix needs s >= 1/2 and k >= 1")
    return _hermite(s2, int(k))


def hermite(state):
    """Image of a symmetric state under h, as a standard-basis SymState."""
    H = hermite_matrix(state.s2 / 2, state.k)
    return SymState(state.k / 2, state.s2, H @ _as_standard(state))


@lru_cache(maxsize=32)
def _murnaghan(s2, k):
    A = block_diagonalizer(s2 / 2, k)
    B = antisym_block_diagonalizer((s2 + k - 1) / 2, k)
    _check_layouts(A, B, "murnaghan")
    M = B.U.conj().T @ A.U
    M.setflags(write=False)
    return M


def murnaghan_matrix(s, k):
    """Unitary from the k-fold spin-s symmetric power to the k-fold
    antisymmetric power of spin s + (k-1)/2 (identity between BD bases)."""
    s2 = twice(s)
    if s2 < 1 or k < 1:
        raise InputError("murnaghan_matrix needs s >= 1/2 and k >= 1")
    return _murnaghan(s2, int(k))


def murnaghan(state):
    """Amplitudes (standard antisymmetric basis) of m(state)."""
    return murnaghan_matrix(state.s2 / 2, state.k) @ _as_standard(state)


def murnaghan_inverse(amplitudes, s, k):
    """Symmetric state whose image under m is the given wedge vector."""
    M = murnaghan_matrix(s, k)
    a = np.asarray(amplitudes, dtype=complex)
    if a.size != M.shape[0]:
        raise InputError(f"wedge vector has {a.size} amplitudes, expected {M.shape[0]}")
    return SymState(s, k, M.conj().T @ a)


# ---------------------------------------------------------------- complement map

@lru_cache(maxsize=64)
def _hodge_table(d, k, variant):
    """(target column, coefficient) for each source basis vector."""
    src = wedge_indices(d, k)
    dst = {A: i for i, A in enumerate(wedge_indices(d, d - k))}
    full = set(range(1, d + 1))
    cols, coef = [], []
    for A in src:
        c = 1.0
        if variant == "linear":
            # time reversal on every factor: e_a -> (-1)^(a-1) e_{d+1-a}
            c *= (-1) ** sum(a - 1 for a in A) * (-1) ** (k * (k - 1) // 2)
            A = tuple(sorted(d + 1 - a for a in A))
        comp = tuple(sorted(full - set(A)))
        perm = [a - 1 for a in A + comp]
        c *= _perm_sign(perm)
        cols.append(dst[comp])
        coef.append(c)
    return np.array(cols), np.array(coef)


def hodge_complement(amplitudes, s, k, variant="linear"):
    """Map a k-fold wedge vector of spin s to a (2s+1-k)-fold one.

    ``antilinear``: the orthogonal-complement map (Hodge star with complex
    conjugation); it sends the k-plane of a wedge-factorizable vector to its
    orthogonal complement.  ``linear``: the same map preceded by time
    reversal on every factor; it commutes with SU(2) and is linear.
    """
    if variant not in HODGE_VARIANTS:
        raise InputError(f"unknown variant {variant!r}")
    d = twice(s) + 1
    a = np.asarray(amplitudes, dtype=complex)
    if not 0 <= k <= d or a.size != math.comb(d, k):
        raise InputError(f"amplitude count {a.size} does not match C({d},{k})")
    cols, coef = _hodge_table(d, int(k), variant)
    if variant == "antilinear":
        a = a.conj()
    out = np.zeros(math.comb(d, d - k), dtype=complex)
    out[cols] = coef * a
    return out


def wedge_plane(amplitudes, s, k, tol=1e-9):
    """Orthonormal basis (rows) of {u : u ^ omega = 0}; dimension k iff factorizable."""
    d = twice(s) + 1
    a = np.asarray(amplitudes, dtype=complex)
    src = wedge_indices(d, k)
    dst = {A: i for i, A in enumerate(wedge_indices(d, k + 1))} if k < d else {}
    L = np.zeros((len(dst), d), dtype=complex)
    for c, A in enumerate(src):
        for u in range(1, d + 1):
            if u in A:
                continue
            B = tuple(sorted((u,) + A))
            sign = (-1) ** sum(1 for a in A if a < u)
            # e_u ^ e_A in normalized bases picks up sqrt(k+1)
            L[dst[B], u - 1] += sign * math.sqrt(k + 1) * a[c]
    if L.size == 0:
        return np.eye(d, dtype=complex)
    _, sv, Vh = np.linalg.svd(L)
    sv = np.concatenate([sv, np.zeros(d - sv.size)])
    scale = max(np.linalg.norm(a), 1e-300)
    # rows of Vh are conjugated right-singular vectors
    return Vh[sv <= tol * scale].conj()


# ---------------------------------------------------------------- Pluecker

def plucker_residual(amplitudes, s):
    """Largest Pluecker quadric p_ij p_kl - p_ik p_jl + p_il p_jk of a 2-vector,
    relative to ||omega||^2 (standard antisymmetric basis)."""
    d = twice(s) + 1
    a = np.asarray(amplitudes, dtype=complex)
    if a.size != math.comb(d, 2):
        raise InputError(f"amplitude count {a.size} does not match C({d},2)")
    P = np.zeros((d, d), dtype=complex)
    for c, (i, j) in enumerate(wedge_indices(d, 2)):
        P[i - 1, j - 1] = a[c]
        P[j - 1, i - 1] = -a[c]
    res = 0.0
    for i, j, k, l in combinations(range(d), 4):
        res = max(res, abs(P[i, j] * P[k, l] - P[i, k] * P[j, l] + P[i, l] * P[j, k]))
    return res / max(np.vdot(a, a).real, 1e-300)


def plucker_bd_form(bd):
    """2 c22 c2-2 - 2 c21 c2-1 + c20^2 - c00^2 for a spin-3/2 2-vector in BD form."""
    c = np.asarray(bd, dtype=complex)
    if c.size != 6:
        raise InputError("BD form needs 6 amplitudes (spin 2 block then spin 0)")
    return 2 * c[0] * c[4] - 2 * c[1] * c[3] + c[2] ** 2 - c[5] ** 2


def plucker_wedge_factorizable(amplitudes, s=1.5, basis="standard", tol=1e-9):
    """(is_factorizable, residual) for a 2-fold wedge vector of spin s."""
    a = np.asarray(amplitudes, dtype=complex)
    if basis == "block":
        a = antisym_block_diagonalizer(s, 2).to_standard(a)
    elif basis != "standard":
        raise InputError(f"unknown basis tag {basis!r}")
    r = plucker_residual(a, s)
    return bool(r < tol), r
