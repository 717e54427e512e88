"""Majorana constellations of single spins and of symmetric multi-spin states."""
import math

import numpy as np
from scipy.optimize import linear_sum_assignment

from .irreps import block_diagonalizer
from .spin import InputError, SpinMatrices, tensor_ops
from .sympower import SymState, permanent_batch, _sym_indices, _normalizers, t_anticoherence  # noqa: F401

NORTH = np.array([0.0, 0.0, 1.0])
SOUTH = np.array([0.0, 0.0, -1.0])


def _spin2(psi):
    return len(psi) - 1


def majorana_polynomial(psi):
    """Coefficients (low -> high power of zeta) of the Majorana polynomial.

    The coefficient of zeta^(j+m) is (-1)^(j-m) sqrt(C(2j, j-m)) c_m.
    """
    psi = np.asarray(psi, dtype=complex)
    n = _spin2(psi)
    # amplitude index i has m = j - i, power j + m = n - i, j - m = i
    coef = np.empty(n + 1, dtype=complex)
    for i in range(n + 1):
        coef[n - i] = (-1) ** i * math.sqrt(math.comb(n, i)) * psi[i]
    return coef


def stereo_to_sphere(zeta):
    zeta = np.asarray(zeta, dtype=complex)
    r2 = np.abs(zeta) ** 2
    return np.stack([2 * zeta.real, 2 * zeta.imag, 1 - r2], axis=-1) / (1 + r2)[..., None]


def sphere_to_spinor(n):
    """Qubit coherent state (cos(theta/2), e^{i phi} sin(theta/2)) along n."""
    n = np.asarray(n, dtype=float)
    n = n / np.linalg.norm(n, axis=-1, keepdims=True)
    theta = np.arccos(np.clip(n[..., 2], -1, 1))
    phi = np.arctan2(n[..., 1], n[..., 0])
    return np.stack([np.cos(theta / 2), np.exp(1j * phi) * np.sin(theta / 2)], axis=-1)


def _polish(coef, z, iters=3):
    """Newton steps on p (|z| <= 1) or on the reversed polynomial (|z| > 1)."""
    p = np.polynomial.Polynomial(coef)
    dp = p.deriv()
    q = np.polynomial.Polynomial(coef[::-1])
    dq = q.deriv()
    out = []
    for r in z:
        if abs(r) <= 1:
            for _ in range(iters):
                d = dp(r)
                if d == 0:
                    break
                step = p(r) / d
                if not np.isfinite(step) or abs(step) > 1e-2 * (1 + abs(r)):
                    break
                r = r - step
        else:
            w = 1 / r
            for _ in range(iters):
                d = dq(w)
                if d == 0:
                    break
                step = q(w) / d
                if not np.isfinite(step) or abs(step) > 1e-2:
                    break
                w = w - step
            r = 1 / w if w != 0 else np.inf
        out.append(r)
    return np.array(out)


def _taylor(coef, z0):
    """Taylor coefficients of the polynomial around z0 (repeated Horner)."""
    c = list(coef[::-1])  # high -> low
    out = []
    for _ in range(len(coef)):
        acc = []
        v = 0
        for x in c:
            v = v * z0 + x
            acc.append(v)
        out.append(acc[-1])
        c = acc[:-1]
    return np.array(out)


def _is_multiple_root(coef, z):
    """True if the polynomial has a root of multiplicity len(z) at mean(z)."""
    m = len(z)
    z0 = np.mean(z)
    if abs(z0) <= 1:
        tc = _taylor(coef, z0)
    else:
        tc = _taylor(coef[::-1], 1 / z0)
    return bool(np.abs(tc[:m]).max() <= 1e-9 * np.abs(tc).max()), z0


def _components(pts, thr):
    n = len(pts)
    ang = angular_distance(pts[:, None], pts[None, :])
    label = list(range(n))

    def find(i):
        while label[i] != i:
            label[i] = label[label[i]]
            i = label[i]
        return i
    for i in range(n):
        for j in range(i + 1, n):
            if ang[i, j] < thr:
                label[find(i)] = find(j)
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def _cluster(z, coef, thr=0.2):
    """Group numerically split multiple roots and replace them by their mean.

    Nearby roots are grouped by single linkage on the sphere; a group is
    merged when the polynomial has a root of that multiplicity at the mean
    (the mean of a split multiple root is well conditioned), otherwise the
    linkage threshold is tightened.  Returns the roots and a mask of the
    ones that were merged.
    """
    z = np.array(z, dtype=complex)
    merged = np.zeros(len(z), dtype=bool)
    pts = stereo_to_sphere(z)
    todo = [(list(range(len(z))), thr)]
    while todo:
        idx, t = todo.pop()
        for g in _components(pts[idx], t):
            g = [idx[i] for i in g]
            if len(g) == 1:
                continue
            ok, z0 = _is_multiple_root(coef, z[g])
            if ok:
                z[g] = z0
                merged[g] = True
            elif t > 1e-7:
                todo.append((g, t / 4))
    return z, merged


def majorana_roots(psi, cluster=True):
    """The 2j stars (unit vectors, shape (2j, 3)) of a spin-j ket."""
    psi = np.asarray(psi, dtype=complex)
    if psi.ndim != 1 or psi.size == 0:
        raise InputError("spinor must be a non-empty 1-D array")
    scale = np.abs(psi).max()
    if scale == 0:
        raise InputError("the zero vector has no constellation")
    n = _spin2(psi)
    if n == 0:
        return np.zeros((0, 3))
    coef = majorana_polynomial(psi / scale)
    tol = 1e-14 * np.abs(coef).max()
    top = n
    while abs(coef[top]) <= tol:
        top -= 1
    n_south = n - top
    low = 0
    while abs(coef[low]) <= tol:
        low += 1
    n_north = low
    core = coef[low:top + 1]
    stars = [np.tile(NORTH, (n_north, 1)), np.tile(SOUTH, (n_south, 1))]
    deg = len(core) - 1
    if deg > 0:
        c = core / core[-1]
        comp = np.zeros((deg, deg), dtype=complex)
        comp[1:, :-1] = np.eye(deg - 1)
        comp[:, -1] = -c[:-1]
        z = np.linalg.eigvals(comp)
        merged = np.zeros(deg, dtype=bool)
        if cluster and deg > 1:
            z, merged = _cluster(z, core)
        z[~merged] = _polish(core, z[~merged])
        pts = np.where(np.isinf(z)[:, None], SOUTH, stereo_to_sphere(np.where(np.isinf(z), 0, z)))
        stars.append(pts)
    return np.vstack(stars)


def fix_phase(v, tol=1e-12):
    """Multiply by a unit scalar so that the first nonzero entry is real positive."""
    v = np.asarray(v, dtype=complex)
    nz = np.flatnonzero(np.abs(v) > tol * max(np.abs(v).max(), 1e-300))
    if nz.size == 0:
        return v
    p = v[nz[0]]
    return v * (abs(p) / p)


def constellation_to_state(stars):
    """Normalized spinor (phase fixed) whose constellation is ``stars``."""
    stars = np.asarray(stars, dtype=float).reshape(-1, 3)
    n = len(stars)
    if n == 0:
        raise InputError("empty constellation")
    ab = sphere_to_spinor(stars)
    # product of homogeneous factors (a zeta - b); south-pole stars have a = 0
    poly = np.array([1.0 + 0j])
    for a, b in ab:
        poly = np.convolve(poly, np.array([-b, a]))
    psi = np.empty(n + 1, dtype=complex)
    for i in range(n + 1):
        psi[i] = poly[n - i] / ((-1) ** i * math.sqrt(math.comb(n, i)))
    psi /= np.linalg.norm(psi)
    return fix_phase(psi)


def angular_distance(a, b):
    # chord form stays accurate for nearly coincident points
    chord = np.linalg.norm(np.asarray(a) - np.asarray(b), axis=-1)
    return 2 * np.arcsin(np.clip(chord / 2, 0, 1))


def match_constellations(a, b):
    """Largest angular error under the optimal bipartite matching."""
    a = np.asarray(a, dtype=float).reshape(-1, 3)
    b = np.asarray(b, dtype=float).reshape(-1, 3)
    if len(a) != len(b):
        return np.inf
    if len(a) == 0:
        return 0.0
    cost = angular_distance(a[:, None, :], b[None, :, :])
    r, c = linear_sum_assignment(cost)
    return float(cost[r, c].max())


def spin_expectation(psi):
    """<psi|S|psi> (no normalization applied)."""
    psi = np.asarray(psi, dtype=complex)
    S = SpinMatrices(_spin2(psi))
    return np.array([np.real(np.vdot(psi, X @ psi)) for X in S])


def multipole_order(j2):
    """(l, m) in the canonical order: l ascending, m descending."""
    return [(L, M) for L in range(j2 + 1) for M in range(L, -L - 1, -1)]


def multipole_coeffs(rho):
    """c_lm = Tr(rho T_lm^dagger), returned as a dict in canonical order."""
    rho = np.asarray(rho, dtype=complex)
    j2 = rho.shape[0] - 1
    T = tensor_ops(j2)
    return {lm: np.sum(rho * T[lm].conj()) for lm in multipole_order(j2)}


def from_multipoles(c, j2):
    T = tensor_ops(j2)
    return sum(v * T[lm] for lm, v in c.items())


def top_block(state):
    """Spin-ks component of a symmetric state (block basis)."""
    if state.basis == "block":
        return state.amplitudes[: state.s2 * state.k + 1]
    B = block_diagonalizer(state.s2 / 2, state.k)
    a = state.amplitudes
    if state.basis == "induced":
        a = a / _normalizers(state.d, state.k)
    return B.U[: state.s2 * state.k + 1] @ a


def principal_constellation(state):
    top = top_block(state)
    if np.abs(top).max() < 1e-12 * max(1.0, np.abs(state.amplitudes).max()):
        raise InputError("principal (top) block is zero")
    return majorana_roots(top)


# ---------------------------------------------------------------- factorization

def _set_partitions(n_items, size):
    """Partitions of range(n_items) into unordered groups of equal size."""
    def rec(rem):
        if not rem:
            yield []
            return
        first, rest = rem[0], rem[1:]
        from itertools import combinations
        for comp in combinations(rest, size - 1):
            group = (first,) + comp
            left = [x for x in rest if x not in comp]
            for tail in rec(left):
                yield [group] + tail
    yield from rec(list(range(n_items)))


def count_partitions(s2, k):
    return math.factorial(s2 * k) // (math.factorial(s2) ** k * math.factorial(k))


class Factorization:
    def __init__(self, factors, degenerate, checked, overlap):
        self.factors = factors
        self.degenerate = degenerate
        self.checked = checked
        self.overlap = overlap

    @property
    def factorizable(self):
        return self.factors is not None

    def __repr__(self):
        tag = "factorizable" if self.factorizable else "NotFactorizable"
        return f"Factorization({tag}, checked={self.checked}, degenerate={self.degenerate})"


def _vee_amplitudes_batch(V):
    """Standard-basis amplitudes of vee products of the rows of V (..., k, d)."""
    k, d = V.shape[-2:]
    idx = np.array(_sym_indices(d, k)) - 1
    sub = V[..., idx].swapaxes(-3, -2)  # (..., n_basis, k, k)
    return _normalizers(d, k) * permanent_batch(sub) / math.factorial(k)


def vee_factorize(state, tol=1e-8, chunk=2048):
    """Search the star partitions of the principal constellation for a factorization.

    Partitions are scanned in enumeration order; the first one whose vee
    product is parallel to the state (overlap > 1 - tol) is returned.
    """
    st = state
    if st.basis == "block":
        B = block_diagonalizer(st.s2 / 2, st.k)
        a = B.to_standard(st.amplitudes)
    elif st.basis == "induced":
        a = st.amplitudes / _normalizers(st.d, st.k)
    else:
        a = st.amplitudes
    a = a / np.linalg.norm(a)
    if st.k == 1:
        return Factorization([fix_phase(a)], False, 1, 1.0)
    if st.s2 == 0:
        return Factorization([np.ones(1)] * st.k, False, 1, 1.0)
    stars = principal_constellation(SymState(st.s2 / 2, st.k, a))
    n = len(stars)
    close = angular_distance(stars[:, None], stars[None, :]) + 10 * np.eye(n)
    degenerate = bool(close.min() < 1e-6)
    spinors = {}

    def spinor(g):
        if g not in spinors:
            spinors[g] = constellation_to_state(stars[list(g)])
        return spinors[g]

    checked = 0
    best = 0.0
    seen = set()
    batch = []

    def flush(batch):
        V = np.array([[spinor(g) for g in part] for part in batch])
        v = _vee_amplitudes_batch(V)
        nv = np.linalg.norm(v, axis=1)
        ov = np.abs(v.conj() @ a) / np.where(nv == 0, np.inf, nv)
        hit = np.flatnonzero(ov > 1 - tol)
        return ov, (hit[0] if hit.size else None), V

    for part in _set_partitions(n, st.s2):
        if degenerate:
            key = tuple(sorted(tuple(sorted(np.round(stars[list(g)], 6).ravel().tolist())) for g in part))
            if key in seen:
                continue
            seen.add(key)
        batch.append(tuple(part))
        if len(batch) == chunk:
            ov, hit, V = flush(batch)
            if hit is not None:
                return Factorization(list(V[hit]), degenerate, checked + hit + 1, ov[hit])
            checked += len(batch)
            best = max(best, ov.max())
            batch = []
    if batch:
        ov, hit, V = flush(batch)
        if hit is not None:
            return Factorization(list(V[hit]), degenerate, checked + hit + 1, ov[hit])
        checked += len(batch)
        best = max(best, ov.max())
    return Factorization(None, degenerate, checked, best)
