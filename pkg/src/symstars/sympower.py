"""The symmetric power of a spin-s space: bases, products, generators, RDMs."""
from functools import lru_cache
from itertools import combinations, combinations_with_replacement, permutations, product
import math

import numpy as np
import scipy.sparse as sp

from .spin import InputError, SpinMatrices, twice

BASES = ("induced", "standard", "block")
MAX_EMBED = 2 ** 22


def sym_dim(d, k):
    return math.comb(d + k - 1, k)


@lru_cache(maxsize=None)
def _sym_indices(d, k):
    return tuple(combinations_with_replacement(range(1, d + 1), k))


def _occupations(A, d):
    occ = [0] * d
    for a in A:
        occ[a - 1] += 1
    return occ


def _normalizer(A, d):
    k = len(A)
    den = 1
    for n in _occupations(A, d):
        den *= math.factorial(n)
    return math.sqrt(math.factorial(k) / den)


def sym_basis(s, k):
    """Multi-indices (1-based, lexicographic) with normalizers sqrt(k!/prod A_i!)."""
    d = twice(s) + 1
    if k < 1:
        raise InputError("k must be >= 1")
    return [(A, _normalizer(A, d)) for A in _sym_indices(d, k)]


@lru_cache(maxsize=None)
def _index_map(d, k):
    return {A: i for i, A in enumerate(_sym_indices(d, k))}


@lru_cache(maxsize=None)
def _normalizers(d, k):
    return np.array([_normalizer(A, d) for A in _sym_indices(d, k)])


@lru_cache(maxsize=None)
def _weights(s2, k):
    """Doubled S_z eigenvalues of the standard basis vectors."""
    d = s2 + 1
    return np.array([sum(s2 - 2 * (a - 1) for a in A) for A in _sym_indices(d, k)])


# ---------------------------------------------------------------- permanents

def permanent(M):
    """Ryser's inclusion-exclusion formula."""
    M = np.asarray(M)
    n = M.shape[0]
    if M.shape != (n, n):
        raise InputError("permanent needs a square matrix")
    if n == 0:
        return 1.0
    if n > 12:
        raise InputError("permanent limited to n <= 12")
    total = 0j
    for mask in range(1, 2 ** n):
        cols = [c for c in range(n) if mask >> c & 1]
        total += (-1) ** len(cols) * np.prod(M[:, cols].sum(axis=1))
    return (-1) ** n * total


def permanent_bruteforce(M):
    M = np.asarray(M)
    n = M.shape[0]
    return sum(np.prod([M[i, p[i]] for i in range(n)]) for p in permutations(range(n)))


def permanent_batch(M):
    """Ryser over a stack of matrices of shape (..., n, n)."""
    M = np.asarray(M)
    n = M.shape[-1]
    total = np.zeros(M.shape[:-2], dtype=complex)
    for r in range(1, n + 1):
        for cols in combinations(range(n), r):
            total += (-1) ** r * np.prod(M[..., list(cols)].sum(-1), axis=-1)
    return (-1) ** n * total


def sym_inner(v, w):
    """<v_1 v ... v v_k, w_1 v ... v w_k> = perm(<v_i|w_j>)/k!."""
    v = np.asarray(v, dtype=complex)
    w = np.asarray(w, dtype=complex)
    if v.ndim != 2 or v.shape != w.shape:
        raise InputError(f"factor lists have mismatched shapes {v.shape} and {w.shape}")
    k = v.shape[0]
    return permanent(v.conj() @ w.T) / math.factorial(k)


# ---------------------------------------------------------------- states

class SymState:
    """Element of the k-th symmetric power of a spin-s space."""

    def __init__(self, s, k, amplitudes, basis="standard"):
        self.s2 = twice(s)
        self.k = int(k)
        if basis not in BASES:
            raise InputError(f"unknown basis tag {basis!r}")
        self.basis = basis
        a = np.asarray(amplitudes, dtype=complex).reshape(-1)
        if a.size != self.dim:
            raise InputError(f"amplitude count {a.size} does not match dimension {self.dim}"
                             f" for s={self.s2}/2, k={self.k}")
        if not np.all(np.isfinite(a)):
            raise InputError("non-finite amplitudes")
        self.amplitudes = a

    @property
    def s(self):
        return self.s2 / 2

    @property
    def d(self):
        return self.s2 + 1

    @property
    def dim(self):
        return sym_dim(self.d, self.k)

    def norm(self):
        if self.basis == "induced":
            return np.linalg.norm(self.amplitudes / _normalizers(self.d, self.k))
        return np.linalg.norm(self.amplitudes)

    def normalized(self):
        return SymState(self.s2 / 2, self.k, self.amplitudes / self.norm(), self.basis)

    def copy_with(self, amplitudes, basis=None):
        return SymState(self.s2 / 2, self.k, amplitudes, basis or self.basis)

    def __repr__(self):
        return f"SymState(s={self.s2}/2, k={self.k}, basis={self.basis!r})"


def vee_product(factors):
    """Standard-basis amplitudes of psi_1 v ... v psi_k (1/k! sum over permutations)."""
    V = np.asarray(factors, dtype=complex)
    if V.ndim != 2 or V.shape[0] == 0:
        raise InputError("vee_product needs a non-empty list of kets")
    k, d = V.shape
    idx = _sym_indices(d, k)
    amps = np.empty(len(idx), dtype=complex)
    fk = math.factorial(k)
    for i, A in enumerate(idx):
        sub = V[:, [a - 1 for a in A]]
        # <e^_A, v> = normalizer * perm(<e_{a_i}|v_j>) / k!
        amps[i] = _normalizer(A, d) * permanent(sub) / fk
    return SymState((d - 1) / 2, k, amps)


def coherent_power(psi, k):
    """psi^{v k} in the standard basis."""
    psi = np.asarray(psi, dtype=complex)
    d = psi.size
    idx = _sym_indices(d, k)
    nz = _normalizers(d, k)
    amps = np.array([np.prod(psi[[a - 1 for a in A]]) for A in idx]) * nz
    return SymState((d - 1) / 2, k, amps)


# ---------------------------------------------------------------- generators

@lru_cache(maxsize=None)
def _ladder_sparse(s2, k):
    """Collective S_+ in the standard basis (real, sparse)."""
    d = s2 + 1
    idx = _sym_indices(d, k)
    pos = _index_map(d, k)
    sp1 = np.diag(SpinMatrices(s2).splus.real, 1)  # sp1[a-2] = <a-1|S+|a>
    rows, cols, vals = [], [], []
    for c, A in enumerate(idx):
        occ = _occupations(A, d)
        for a in range(2, d + 1):
            if occ[a - 1] == 0:
                continue
            B = list(A)
            B[B.index(a)] = a - 1
            B = tuple(sorted(B))
            rows.append(pos[B])
            cols.append(c)
            vals.append(sp1[a - 2] * math.sqrt(occ[a - 1] * (occ[a - 2] + 1)))
    n = len(idx)
    return sp.csr_matrix((vals, (rows, cols)), shape=(n, n))


def collective_generators(s, k, sparse=False):
    """(S_x, S_y, S_z) acting on the k-fold symmetric power, standard basis."""
    s2 = twice(s)
    Sp = _ladder_sparse(s2, k)
    Sm = Sp.T.tocsr()
    Sz = sp.diags(_weights(s2, k) / 2.0).tocsr()
    Sx = (Sp + Sm) / 2
    Sy = (Sp - Sm) / 2j
    ops = (Sx.astype(complex), Sy, Sz.astype(complex))
    if sparse:
        return ops
    return tuple(o.toarray() for o in ops)


def collective_rotation(s, k, axis, angle):
    """exp(-i angle n.S) on the symmetric power (dense)."""
    import scipy.linalg
    Sx, Sy, Sz = collective_generators(s, k)
    n = np.asarray(axis, dtype=float)
    return scipy.linalg.expm(-1j * angle * (n[0] * Sx + n[1] * Sy + n[2] * Sz))


# ---------------------------------------------------------------- conversions

def basis_convert(state, target, U=None):
    """Convert between induced, standard and block bases.

    ``U`` is the block diagonalizer (standard -> block), required whenever
    the block basis is involved.
    """
    if target not in BASES:
        raise InputError(f"unknown basis tag {target!r}")
    a = state.amplitudes
    nz = _normalizers(state.d, state.k)
    if (target == "block" or state.basis == "block") and target != state.basis:
        if U is None:
            raise InputError("a block diagonalizer is required for the block basis")
        U = getattr(U, "U", U)
        if U.shape != (state.dim, state.dim):
            raise InputError(f"block diagonalizer has shape {U.shape}, expected {(state.dim,) * 2}")
    # to standard
    if state.basis == "induced":
        a = a / nz
    elif state.basis == "block":
        a = U.conj().T @ a
    if target == "induced":
        a = a * nz
    elif target == "block":
        a = U @ a
    return SymState(state.s2 / 2, state.k, a, target)


# ---------------------------------------------------------------- embedding

@lru_cache(maxsize=16)
def _embedding(d, k):
    """Column index into the symmetric basis and coefficient for each of d^k slots."""
    if d ** k > MAX_EMBED:
        raise InputError(f"tensor power dimension {d}^{k} exceeds {MAX_EMBED}")
    pos = _index_map(d, k)
    digits = np.array(list(product(range(1, d + 1), repeat=k)), dtype=int).reshape(-1, k)
    srt = np.sort(digits, axis=1)
    col = np.array([pos[tuple(r)] for r in srt])
    nz = _normalizers(d, k)
    coef = 1.0 / nz[col]
    return col, coef


def embed(state):
    """Amplitudes on H^{(x)k}, row-major over (slot 1, ..., slot k)."""
    if state.basis != "standard":
        raise InputError("embed expects a standard-basis state")
    col, coef = _embedding(state.d, state.k)
    return state.amplitudes[col] * coef


def embedding_matrix(s, k):
    d = twice(s) + 1
    col, coef = _embedding(d, k)
    E = np.zeros((d ** k, sym_dim(d, k)))
    E[np.arange(d ** k), col] = coef
    return E


def reduced_density(state, t):
    """RDM of the first t parties (any t by symmetry), dimension d^t."""
    if not 1 <= t <= state.k:
        raise InputError(f"t={t} out of range 1..{state.k}")
    if state.basis != "standard":
        raise InputError("reduced_density expects a standard-basis state")
    psi = embed(state)
    m = psi.reshape(state.d ** t, state.d ** (state.k - t))
    return m @ m.conj().T


def t_anticoherence(state, t):
    """A_t = (t+1)/t (1 - Tr rho_t^2).

    A single spinor (1-D array) is read as a symmetric state of 2j qubits.
    """
    if not isinstance(state, SymState):
        psi = np.asarray(state, dtype=complex)
        state = SymState(0.5, psi.size - 1, psi)
    st = state.normalized()
    rho = reduced_density(st, t)
    return (t + 1) / t * (1 - np.real(np.trace(rho @ rho)))
