"""Irreducible decomposition of symmetric (and antisymmetric) powers.

Multiplicities are computed three independent ways (character integral,
exact recursion, generating function) and the block diagonalizers are built
by the highest-weight construction.
"""
from functools import lru_cache
from itertools import combinations
import math

import numpy as np
import scipy.sparse as sp

from .spin import InputError, SpinMatrices, irrep_character_array, twice
from .sympower import _ladder_sparse, _sym_indices, _weights, sym_dim

DIM_CAP = 4000
METHODS = ("integral", "recursion", "genfunc")


# ---------------------------------------------------------------- characters

def _partitions(n, largest=None):
    """Partitions of n as lists of parts, largest first."""
    if largest is None:
        largest = n
    if n == 0:
        yield []
        return
    for p in range(min(n, largest), 0, -1):
        for rest in _partitions(n - p, p):
            yield [p] + rest


def _xi_newton(s2, k, alpha):
    alpha = np.asarray(alpha, dtype=float)
    total = np.zeros_like(alpha)
    for part in _partitions(k):
        mult = {}
        for r in part:
            mult[r] = mult.get(r, 0) + 1
        z = 1
        term = np.ones_like(alpha)
        for r, m in mult.items():
            z *= math.factorial(m) * r ** m
            term = term * irrep_character_array(s2, r * alpha) ** m
        total += term / z
    return total


def _xi_recursion(s2, k, alpha):
    alpha = np.asarray(alpha, dtype=float)
    xi = [np.ones_like(alpha)]
    for n in range(1, k + 1):
        acc = np.zeros_like(alpha)
        for m in range(1, n + 1):
            acc += irrep_character_array(s2, m * alpha) * xi[n - m]
        xi.append(acc / n)
    return xi[k]


def character_xi(s, k, alpha, method="recursion"):
    """Character of the k-fold symmetric power at rotation angle alpha."""
    s2 = twice(s)
    if method == "recursion":
        out = _xi_recursion(s2, k, alpha)
    elif method == "newton":
        out = _xi_newton(s2, k, alpha)
    elif method == "trace":
        w = _weights(s2, k) / 2.0
        out = np.cos(np.multiply.outer(np.asarray(alpha, dtype=float), w)).sum(-1)
    else:
        raise InputError(f"unknown character method {method!r}")
    return float(out) if np.ndim(out) == 0 else out


# ---------------------------------------------------------------- multiplicities

class MultiplicityTable:
    def __init__(self, s2, k, entries):
        self.s2, self.k = s2, k
        self.entries = {j2: m for j2, m in entries.items() if m}

    def __getitem__(self, j):
        return self.entries.get(twice(j), 0)

    def __eq__(self, other):
        return (self.s2, self.k, self.entries) == (other.s2, other.k, other.entries)

    def as_dict(self):
        """{j: multiplicity} with j as float, decreasing j."""
        return {j2 / 2: m for j2, m in sorted(self.entries.items(), reverse=True)}

    def dimension(self):
        return sum(m * (j2 + 1) for j2, m in self.entries.items())

    def __repr__(self):
        body = ", ".join(f"{j2}/2: {m}" for j2, m in sorted(self.entries.items(), reverse=True))
        return f"MultiplicityTable(s={self.s2}/2, k={self.k}, {{{body}}})"


def _j2_range(s2, k):
    top = s2 * k
    return list(range(top, -1, -2))


def _mult_integral(s2, k):
    top = s2 * k
    # 4 (s_max + 1) nodes is not enough for small s_max (the integrand is a
    # trigonometric, not algebraic, polynomial); 12 extra nodes suffice
    n = 2 * (top + 2) + 12
    x, w = np.polynomial.legendre.leggauss(n)
    alpha = np.pi * (x + 1)
    w = w * np.pi
    xi = _xi_newton(s2, k, alpha)
    base = np.sin(alpha / 2) ** 2 * xi
    out = {}
    for j2 in _j2_range(s2, k):
        val = np.sum(w * base * irrep_character_array(j2, alpha)) / np.pi
        out[j2] = val
    return out


def _weight_counts(s2, k):
    """Exact S_z weight multiplicities from the character recursion.

    Characters are Laurent polynomials in exp(-i alpha/2); index = doubled
    weight + k*s2.  Integer arithmetic throughout.
    """
    top = s2 * k
    size = 2 * top + 1

    def chi(m, n_par):
        # chi_s(m alpha) placed in an array for n_par parties
        a = np.zeros(2 * s2 * n_par + 1, dtype=object)
        off = s2 * n_par
        for mu2 in range(-s2, s2 + 1, 2):
            a[off + m * mu2] += 1
        return a

    xi = [np.array([1], dtype=object)]
    for n in range(1, k + 1):
        acc = np.zeros(2 * s2 * n + 1, dtype=object)
        for m in range(1, n + 1):
            prev = xi[n - m]
            c = chi(m, m)
            prod_ = np.convolve(c, prev)
            acc += prod_
        for v in acc:
            if v % n:
                raise ArithmeticError("character recursion produced a non-integer")
        xi.append(np.array([v // n for v in acc], dtype=object))
    counts = xi[k]
    assert counts.size == size
    return counts


def _mult_recursion(s2, k):
    counts = _weight_counts(s2, k)
    off = s2 * k
    out = {}
    for j2 in _j2_range(s2, k):
        above = counts[off + j2 + 2] if j2 + 2 <= s2 * k else 0
        out[j2] = int(counts[off + j2] - above)
    return out


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_div_exact(num, den):
    """Exact integer polynomial division (coefficients low -> high)."""
    num = list(num)
    dl = len(den) - 1
    lead = den[-1]
    q = [0] * (len(num) - dl)
    for i in range(len(q) - 1, -1, -1):
        c = num[i + dl]
        if c % lead:
            raise ArithmeticError("inexact polynomial division")
        c //= lead
        q[i] = c
        if c:
            for j, dv in enumerate(den):
                num[i + j] -= c * dv
    if any(num[:dl]):
        raise ArithmeticError("nonzero remainder in polynomial division")
    return q


def _mult_genfunc(s2, k):
    """Coefficients of (1 - x^-1) prod_r (x^(k/2+r) - x^(-k/2)) / (x^r - 1).

    Work in y = x^(1/2) with every factor shifted to a plain polynomial; the
    accumulated shift is tracked in ``low`` (doubled exponent of index 0).
    """
    num = [-1, 0, 1]  # y^2 - 1 = x (1 - x^-1)
    low = -2
    den = [1]
    for r in range(1, s2 + 1):
        # x^(k/2+r) - x^(-k/2) = y^-k (y^(2k+2r) - 1)
        f = [-1] + [0] * (2 * k + 2 * r - 1) + [1]
        num = _poly_mul(num, f)
        low -= k
        g = [-1] + [0] * (2 * r - 1) + [1]  # y^(2r) - 1
        den = _poly_mul(den, g)
    coeffs = _poly_div_exact(num, den)
    top = s2 * k
    out = {}
    for j2 in _j2_range(s2, k):
        i = j2 - low
        out[j2] = coeffs[i] if 0 <= i < len(coeffs) else 0
    # powers above s_max and negative powers are discarded by construction
    return out


def multiplicities(s, k, method="recursion"):
    """Multiplicity of each spin j in the k-fold symmetric power of spin s."""
    s2 = twice(s)
    if k < 0:
        raise InputError("k must be nonnegative")
    if k == 0:
        return MultiplicityTable(s2, 0, {0: 1})
    if method == "integral":
        raw = _mult_integral(s2, k)
        out = {}
        for j2, v in raw.items():
            r = round(v)
            if abs(v - r) > 1e-6:
                raise ArithmeticError(f"character integral not integral: {v}")
            out[j2] = int(r)
    elif method == "recursion":
        out = _mult_recursion(s2, k)
    elif method == "genfunc":
        out = _mult_genfunc(s2, k)
    else:
        raise InputError(f"unknown method {method!r}; choose from {METHODS}")
    return MultiplicityTable(s2, k, out)


def integral_residuals(s, k):
    """Distance of each character-integral value from the nearest integer."""
    raw = _mult_integral(twice(s), k)
    return {j2: abs(v - round(v)) for j2, v in raw.items()}


def antisym_multiplicities(s, k):
    """Decomposition of the k-fold antisymmetric power via elementary symmetric weights."""
    s2 = twice(s)
    d = s2 + 1
    if k > d:
        return MultiplicityTable(s2, k, {})
    counts = {}
    for A in combinations(range(d), k):
        w = sum(s2 - 2 * a for a in A)
        counts[w] = counts.get(w, 0) + 1
    out = {}
    for w in sorted(counts, reverse=True):
        if w >= 0:
            out[w] = counts[w] - counts.get(w + 2, 0)
    return MultiplicityTable(s2, k, out)


def molien_coeffs(s, j, k_max):
    """mu_j^{(s,k)} for k = 0..k_max."""
    j2 = twice(j)
    return [multiplicities(s, k)[j2 / 2] for k in range(k_max + 1)]


def poincare_series_coeffs(num, den_factors, n):
    """Power-series coefficients of prod-ratio num(z) / prod_i (1 - z^{e_i}).

    ``num`` is a dict {power: coeff}; ``den_factors`` a list of exponents.
    """
    c = [0] * (n + 1)
    for p, v in num.items():
        if p <= n:
            c[p] += v
    for e in den_factors:
        for i in range(e, n + 1):
            c[i] += c[i - e]
    return c


# ---------------------------------------------------------------- block diagonalizers

class BlockDiagonalizer:
    """Unitary U (rows = block basis vectors) mapping standard -> block coordinates."""

    def __init__(self, s2, k, U, layout, kind="sym"):
        self.s2, self.k, self.U, self.layout, self.kind = s2, k, U, layout, kind
        self.offsets = []
        o = 0
        for j2, _ in layout:
            self.offsets.append(o)
            o += j2 + 1

    @property
    def dim(self):
        return self.U.shape[0]

    def block_slices(self):
        return [(j2, a, slice(o, o + j2 + 1)) for (j2, a), o in zip(self.layout, self.offsets)]

    def split(self, bd_vector):
        """List of (j2, alpha, component) for a block-basis vector."""
        v = np.asarray(bd_vector)
        return [(j2, a, v[sl]) for j2, a, sl in self.block_slices()]

    def to_block(self, standard_vector):
        return self.U @ standard_vector

    def to_standard(self, bd_vector):
        return self.U.conj().T @ bd_vector

    def block_phases_to(self, other_U, tol=1e-10):
        """Per-block unit phases p with other_U ~= diag(p) U, or None."""
        phases = []
        for j2, a, sl in self.block_slices():
            A, B = self.U[sl], np.asarray(other_U)[sl]
            i = np.unravel_index(np.argmax(np.abs(A)), A.shape)
            p = B[i] / A[i]
            if abs(abs(p) - 1) > tol or np.abs(B - p * A).max() > tol:
                return None
            phases.append(p)
        return phases


def _highest_weight_basis(weights2, Sminus, tol=1e-9):
    """Rows of U from the ladder construction.

    weights2: doubled S_z weights of the basis; Sminus: sparse lowering matrix.
    """
    n = len(weights2)
    levels = sorted(set(weights2.tolist()), reverse=True)
    members = {w: np.flatnonzero(weights2 == w) for w in levels}
    Sm = Sminus.tocsr()
    # vectors at each weight: list of (multiplet id, coeffs over members[w])
    at = {}
    multiplets = []  # (j2, discovery order)
    for w in levels:
        idx = members[w]
        current = []
        if w + 2 in at:
            sub = Sm[idx][:, members[w + 2]]
            for mid, v in at[w + 2]:
                j2 = multiplets[mid][0]
                if w >= -j2:
                    u = sub @ v
                    u = u / np.linalg.norm(u)
                    current.append((mid, u))
        if w >= 0:
            basis = [u for _, u in current]
            for col in range(len(idx)):
                r = np.zeros(len(idx))
                r[col] = 1.0
                for _ in range(2):
                    for b in basis:
                        r = r - np.dot(b, r) * b
                nr = np.linalg.norm(r)
                if nr > tol:
                    r = r / nr
                    r[np.abs(r) < 1e-15] = 0.0
                    first = np.flatnonzero(np.abs(r) > 1e-12)[0]
                    if r[first] < 0:
                        r = -r
                    basis.append(r)
                    mid = len(multiplets)
                    multiplets.append((w, mid))
                    current.append((mid, r))
        at[w] = current
    # assemble rows: decreasing j, then discovery order
    order = sorted(range(len(multiplets)), key=lambda i: (-multiplets[i][0], i))
    rows = []
    layout = []
    alpha_count = {}
    for mid in order:
        j2 = multiplets[mid][0]
        alpha_count[j2] = alpha_count.get(j2, 0) + 1
        layout.append((j2, alpha_count[j2]))
        for w in range(j2, -j2 - 1, -2):
            vec = np.zeros(n)
            for m_, v in at[w]:
                if m_ == mid:
                    vec[members[w]] = v
                    break
            rows.append(vec)
    return np.array(rows), layout


@lru_cache(maxsize=32)
def _block_diagonalizer(s2, k, cap):
    dim = sym_dim(s2 + 1, k)
    if dim > cap:
        raise InputError(f"dimension {dim} exceeds the cap {cap}")
    Sm = _ladder_sparse(s2, k).T
    U, layout = _highest_weight_basis(_weights(s2, k), Sm)
    U.setflags(write=False)
    return BlockDiagonalizer(s2, k, U, layout, "sym")


def block_diagonalizer(s, k, cap=DIM_CAP):
    """Standard -> block-diagonal unitary for the k-fold symmetric power."""
    return _block_diagonalizer(twice(s), int(k), cap)


# antisymmetric power

@lru_cache(maxsize=None)
def wedge_indices(d, k):
    return tuple(combinations(range(1, d + 1), k))


@lru_cache(maxsize=None)
def _wedge_weights(s2, k):
    return np.array([sum(s2 - 2 * (a - 1) for a in A) for A in wedge_indices(s2 + 1, k)])


@lru_cache(maxsize=None)
def _wedge_ladder(s2, k):
    """Collective S_+ on the normalized antisymmetric basis."""
    d = s2 + 1
    idx = wedge_indices(d, k)
    pos = {A: i for i, A in enumerate(idx)}
    sp1 = np.diag(SpinMatrices(s2).splus.real, 1)
    rows, cols, vals = [], [], []
    for c, A in enumerate(idx):
        sA = set(A)
        for i, a in enumerate(A):
            if a > 1 and (a - 1) not in sA:
                B = A[:i] + (a - 1,) + A[i + 1:]
                rows.append(pos[B])
                cols.append(c)
                vals.append(sp1[a - 2])
    n = len(idx)
    return sp.csr_matrix((vals, (rows, cols)), shape=(n, n))


def wedge_generators(s, k):
    """Dense (S_x, S_y, S_z) on the k-fold antisymmetric power."""
    s2 = twice(s)
    Sp = _wedge_ladder(s2, k).toarray()
    Sm = Sp.T
    return ((Sp + Sm) / 2).astype(complex), (Sp - Sm) / 2j, np.diag(_wedge_weights(s2, k) / 2.0).astype(complex)


@lru_cache(maxsize=32)
def _antisym_block_diagonalizer(s2, k, cap):
    d = s2 + 1
    if not 1 <= k <= d:
        raise InputError(f"antisymmetric power k={k} must lie in 1..{d}")
    dim = math.comb(d, k)
    if dim > cap:
        raise InputError(f"dimension {dim} exceeds the cap {cap}")
    U, layout = _highest_weight_basis(_wedge_weights(s2, k), _wedge_ladder(s2, k).T)
    U.setflags(write=False)
    return BlockDiagonalizer(s2, k, U, layout, "antisym")


def antisym_block_diagonalizer(s, k, cap=DIM_CAP):
    """Standard -> block-diagonal unitary for the k-fold antisymmetric power."""
    return _antisym_block_diagonalizer(twice(s), int(k), cap)


def wedge_product(factors):
    """Amplitudes of v_1 ^ ... ^ v_k (unnormalized alternating sum) on the
    normalized antisymmetric basis: sqrt(k!) det of the selected columns."""
    V = np.asarray(factors, dtype=complex)
    k, d = V.shape
    idx = wedge_indices(d, k)
    f = math.sqrt(math.factorial(k))
    return np.array([f * np.linalg.det(V[:, [a - 1 for a in A]]) for A in idx])


def wedge_embedding_matrix(s, k):
    """Columns: normalized antisymmetric basis vectors inside H^{(x)k}."""
    from itertools import permutations
    d = twice(s) + 1
    idx = wedge_indices(d, k)
    E = np.zeros((d ** k, len(idx)))
    f = 1 / math.sqrt(math.factorial(k))
    for c, A in enumerate(idx):
        for p in permutations(range(k)):
            sign = _perm_sign(p)
            flat = 0
            for i in p:
                flat = flat * d + (A[i] - 1)
            E[flat, c] = sign * f
    return E


def _perm_sign(p):
    p = list(p)
    sign = 1
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sign = -sign
    return sign
