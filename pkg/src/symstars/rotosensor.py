"""Sensitivity of symmetric states to rotations: variances, averaged QFI and fidelities."""
import math

import numpy as np
import scipy.linalg
from scipy.integrate import lebedev_rule

from .irreps import block_diagonalizer
from .spin import InputError, SpinMatrices, _tensor_op, generalized_characters, twice
from .sympower import SymState, _index_map, _normalizers, collective_generators

# orders accepted by scipy's Lebedev rule (odd degrees of exactness)
_LEBEDEV_ORDERS = (3, 5, 7, 9, 11, 13, 15, 17, 19, 21, 23, 25, 27, 29, 31, 35, 41, 47, 53,
                   59, 65, 71, 77, 83, 89, 95, 101, 107, 113, 119, 125, 131)


def _unit(axis):
    n = np.asarray(axis, dtype=float)
    r = np.linalg.norm(n)
    if n.shape != (3,) or r == 0:
        raise InputError("axis must be a nonzero 3-vector")
    return n / r


def _standard(state):
    if state.basis == "standard":
        return state.amplitudes
    if state.basis == "induced":
        return state.amplitudes / _normalizers(state.d, state.k)
    return block_diagonalizer(state.s2 / 2, state.k).to_standard(state.amplitudes)


def _normalized(state):
    a = _standard(state)
    n = np.linalg.norm(a)
    if n == 0:
        raise InputError("zero state")
    return a / n


def _blocks(state):
    """(j2, component) for every BD block of the normalized state."""
    B = block_diagonalizer(state.s2 / 2, state.k)
    v = B.to_block(_normalized(state))
    return [(j2, c) for j2, _, c in B.split(v)]


def _spin_expectations(blocks):
    """Per block: |z|^2, <S_a> and <S_a S_b> of the normalized block spinor times |z|^2."""
    out = []
    for j2, c in blocks:
        S = SpinMatrices(j2)
        ops = (S.sx, S.sy, S.sz)
        first = np.array([np.vdot(c, o @ c).real for o in ops])
        second = np.array([[np.vdot(o1 @ c, o2 @ c).real for o2 in ops] for o1 in ops])
        out.append((np.vdot(c, c).real, first, second))
    return out


def variance_about_axis(state, axis, method="direct"):
    """(Delta n.S)^2 of the collective spin; ``method`` is direct or block."""
    n = _unit(axis)
    if method == "direct":
        a = _normalized(state)
        Sx, Sy, Sz = collective_generators(state.s2 / 2, state.k, sparse=True)
        Sn = n[0] * Sx + n[1] * Sy + n[2] * Sz
        v = Sn @ a
        return float(np.vdot(v, v).real - np.vdot(a, v).real ** 2)
    if method == "block":
        # sum_j |z_j|^2 <S_n^2>_j - (sum_j |z_j|^2 <S_n>_j)^2
        second, first = 0.0, 0.0
        for _, f, s in _spin_expectations(_blocks(state)):
            second += n @ s @ n
            first += n @ f
        return float(second - first ** 2)
    raise InputError(f"unknown method {method!r}")


def ghz_state(s, k, theta=0.0):
    """(|s,s>^k + e^{i theta}|s,-s>^k)/sqrt2 in the standard basis."""
    s2 = twice(s)
    if s2 < 1 or k < 1:
        raise InputError("ghz_state needs s >= 1/2 and k >= 1")
    d = s2 + 1
    idx = _index_map(d, k)
    a = np.zeros(len(idx), dtype=complex)
    a[idx[(1,) * k]] = 1 / math.sqrt(2)
    a[idx[(d,) * k]] = np.exp(1j * theta) / math.sqrt(2)
    return SymState(s, k, a)


def averaged_infinitesimal(state, method="direct"):
    """Axis-averaged QFI density: mean of the variances about x, y and z."""
    if method == "direct":
        return sum(variance_about_axis(state, e) for e in np.eye(3)) / 3
    if method == "block":
        cas, vec = 0.0, np.zeros(3)
        for (j2, _), (w, f, _) in zip(_blocks(state), _spin_expectations(_blocks(state))):
            cas += w * (j2 / 2) * (j2 / 2 + 1)
            vec += f
        return float((cas - vec @ vec) / 3)
    raise InputError(f"unknown method {method!r}")


def fidelity(state, eta, axis):
    """|<Psi| exp(-i eta n.S) |Psi>|^2."""
    n = _unit(axis)
    a = _normalized(state)
    Sx, Sy, Sz = collective_generators(state.s2 / 2, state.k)
    R = scipy.linalg.expm(-1j * eta * (n[0] * Sx + n[1] * Sy + n[2] * Sz))
    return float(abs(np.vdot(a, R @ a)) ** 2)


def multipole_weights(j2, c):
    """w_L^2 = sum_M <T_LM><T_LM^dagger> of a (normalized) spinor, L = 0..2j."""
    c = np.asarray(c, dtype=complex)
    c = c / np.linalg.norm(c)
    w = np.zeros(j2 + 1)
    for L in range(j2 + 1):
        w[L] = sum(abs(np.vdot(c, _tensor_op(j2, L, M) @ c)) ** 2 for M in range(-L, L + 1))
    return w


def _closed_form(blocks, eta):
    live = [(j2, c) for j2, c in blocks if np.vdot(c, c).real > 0]
    chi = {j2: generalized_characters(j2 / 2, eta) for j2, _ in live}
    total = 0.0
    for q2, cq in live:
        for r2, cr in live:
            # block components carry |z|^2; conj of <T_LM> is <T_LM^dagger>
            acc = 0.0
            for L in range(min(q2, r2) + 1):
                tq = np.array([np.vdot(cq, _tensor_op(q2, L, M) @ cq) for M in range(-L, L + 1)])
                tr = np.array([np.vdot(cr, _tensor_op(r2, L, M) @ cr) for M in range(-L, L + 1)])
                acc += chi[q2][L] * chi[r2][L] * np.sum(tq * tr.conj()).real
            total += acc / math.sqrt((q2 + 1) * (r2 + 1))
    return float(total)


def lebedev_order(s, k):
    """Smallest available Lebedev order exact for the fidelity integrand (degree 4ks)."""
    need = 2 * twice(s) * k
    for o in _LEBEDEV_ORDERS:
        if o >= need:
            return o
    raise InputError("integrand degree beyond the available Lebedev rules")


def averaged_fidelity(state, eta, method="closed", samples=100000, seed=0):
    """Fidelity averaged uniformly over rotation axes.

    ``closed``: expansion in generalized characters and multipoles of the BD
    blocks.  ``lebedev``: exact quadrature of the axis integral.
    ``montecarlo``: returns (mean, standard error) over uniform random axes.
    """
    blocks = _blocks(state)
    if method == "closed":
        return _closed_form(blocks, eta)
    if method == "lebedev":
        # independent of the BD pipeline: collective generators, standard basis
        x, w = lebedev_rule(lebedev_order(state.s2 / 2, state.k))
        ops = collective_generators(state.s2 / 2, state.k)
        f = _block_fidelity_batch([(None, _normalized(state))], eta, x.T, ops)
        return float(np.dot(w, f) / (4 * math.pi))
    if method == "montecarlo":
        rng = np.random.Generator(np.random.Philox(key=int(seed)))
        v = rng.normal(size=(samples, 3))
        v /= np.linalg.norm(v, axis=1, keepdims=True)
        f = _block_fidelity_batch(blocks, eta, v)
        return float(f.mean()), float(f.std(ddof=1) / math.sqrt(samples))
    raise InputError(f"unknown method {method!r}")


def _block_fidelity_batch(blocks, eta, dirs, ops=None):
    """Fidelity at many axes (rows of dirs) from the spectral form of n.S per block."""
    amp = np.zeros(len(dirs), dtype=complex)
    for j2, c in blocks:
        if not np.any(c):
            continue
        if ops is None:
            S = SpinMatrices(j2)
            gens = np.array([S.sx, S.sy, S.sz])
        else:
            gens = np.array(ops)
        H = np.einsum("na,aij->nij", dirs, gens)
        lam, V = np.linalg.eigh(H)
        y = np.einsum("nij,i->nj", V.conj(), c)
        amp += np.einsum("nj,nj->n", np.abs(y) ** 2, np.exp(-1j * eta * lam))
    return np.abs(amp) ** 2
