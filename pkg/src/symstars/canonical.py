"""Canonical section: reference kets, invariant block weights and the multiconstellation.

Each irreducible block of a symmetric state is a spin-j ket.  Its
constellation is rotated into a reference orientation (spin expectation
along +z, first nonzero multipole with m != 0 real positive), the rotated
ket gets its first nonzero entry real positive, and rotating back gives the
reference ket.  The block weight is the overlap of the block with it.
"""
from dataclasses import dataclass, field
import math

import numpy as np
import scipy.linalg

from .irreps import block_diagonalizer
from .majorana import (NORTH, fix_phase, majorana_roots, multipole_coeffs,
                       multipole_order, constellation_to_state, spin_expectation)
from .spin import InputError, SpinMatrices, axis_angle, rotation_matrix
from .sympower import SymState, _normalizers

ZERO_TOL = 1e-9   # "nonzero" multipole threshold, relative to ||c||
TIE_TOL = 1e-7    # candidates closer than this are taken as symmetric images


@dataclass
class Orientation:
    """Result of the reference-orientation search for one spin-j ket."""
    j2: int
    R: np.ndarray            # SO(3) matrix taking the constellation to the reference one
    D: np.ndarray            # matching spin-j unitary
    rotated: np.ndarray      # D psi / ||psi||, phase untouched
    symmetric: bool = False
    anticoherent: bool = False
    continuous: bool = False  # stabilizer contains all rotations about the axis
    candidates: list = field(default_factory=list)  # tied (R, D) pairs

    @property
    def axis_angle(self):
        return axis_angle(self.R)


def _expm_rot(j2, axis, angle):
    S = SpinMatrices(j2)
    return scipy.linalg.expm(-1j * angle * S.along(axis))


def _lift(j2, R):
    """exp(-i eta n.S) for the axis-angle form of R (eta in [0, pi])."""
    n, eta = axis_angle(R)
    return _expm_rot(j2, n, eta)


def _to_z(n):
    """Minimal rotation (axis, angle) taking unit vector n to +z."""
    c = np.cross(n, NORTH)
    sn = np.linalg.norm(c)
    if sn < 1e-12:
        if n[2] > 0:
            return np.array([1.0, 0.0, 0.0]), 0.0
        return np.array([1.0, 0.0, 0.0]), math.pi
    return c / sn, math.atan2(sn, n[2])


def _axis_directions(psi, j2):
    """Covariant axis candidates: the spin expectation, else a quadrupole-type axis.

    For anticoherent kets the real symmetric tensor Re<S_a S_b> is built from
    the ket itself and then from each multipole multiplet read as a spin-l
    ket; the eigenvector of its most isolated eigenvalue gives an axis up to
    sign, so both signs are returned.
    """
    S = spin_expectation(psi)
    if np.linalg.norm(S) > ZERO_TOL * max(1.0, j2 / 2):
        return [S / np.linalg.norm(S)], False
    c = multipole_coeffs(np.outer(psi, psi.conj()))
    sources = [psi] + [np.array([c[(L, M)] for M in range(L, -L - 1, -1)]) for L in range(2, j2 + 1)]
    for v in sources:
        nv = np.linalg.norm(v)
        if nv <= ZERO_TOL:
            continue
        v = v / nv
        ops = list(SpinMatrices(v.size - 1))
        Q = np.array([[np.real(np.vdot(v, A @ (B @ v))) for B in ops] for A in ops])
        w, E = np.linalg.eigh((Q + Q.T) / 2)
        gaps = [w[1] - w[0], min(w[1] - w[0], w[2] - w[1]), w[2] - w[1]]
        i = int(np.argmax(gaps[::-1]))  # prefer the largest eigenvalue on ties
        i = 2 - i
        if gaps[i] > 1e-6 * max(1.0, abs(w).max()):
            e = E[:, i]
            return [e, -e], True
    return [], True


def _pick(cands, keyfun, tol=TIE_TOL):
    """Keep the candidates whose key sequence is lexicographically maximal within tol."""
    keys = [keyfun(c) for c in cands]
    alive = list(range(len(cands)))
    for pos in range(len(keys[0])):
        best = max(keys[i][pos] for i in alive)
        alive = [i for i in alive if keys[i][pos] > best - tol]
        if len(alive) == 1:
            break
    return [cands[i] for i in alive]


def reference_orientation(psi):
    """Rotate a spin-j ket into the reference orientation.

    Returns an :class:`Orientation`.  When several rotations give the same
    reference constellation (nontrivial stabilizer) the result is flagged
    ``symmetric`` and all tied rotations are kept in ``candidates``; the
    first one uses the principal branch of the multipole phase.
    """
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    j2 = psi.size - 1
    nrm = np.linalg.norm(psi)
    if nrm == 0:
        raise InputError("zero ket has no constellation")
    psi = psi / nrm
    if j2 == 0:
        one = np.ones((1, 1), dtype=complex)
        return Orientation(0, np.eye(3), one, psi, candidates=[(np.eye(3), one)])
    dirs, anti = _axis_directions(psi, j2)
    if not dirs:
        # no covariant axis at all (polyhedral-type symmetry): keep the lab frame
        I = np.eye(j2 + 1, dtype=complex)
        return Orientation(j2, np.eye(3), I, psi, symmetric=True, anticoherent=True,
                           candidates=[(np.eye(3), I)])
    order = multipole_order(j2)
    ms = np.array([M for _, M in order])
    zax = np.array([0.0, 0.0, 1.0])
    cands, keys = [], []
    for n in dirs:
        ax, gam = _to_z(n)
        R1 = rotation_matrix(ax, gam)
        D1 = _expm_rot(j2, ax, gam)
        psi1 = D1 @ psi
        c = multipole_coeffs(np.outer(psi1, psi1.conj()))
        scale = math.sqrt(sum(abs(v) ** 2 for v in c.values()))
        first = next(((L, M) for L, M in order if M != 0 and abs(c[(L, M)]) > ZERO_TOL * scale), None)
        if first is None:
            # invariant under every rotation about z
            return Orientation(j2, R1, D1, psi1, symmetric=True, anticoherent=anti,
                               continuous=True, candidates=[(R1, D1)])
        mt = first[1]
        delta = np.angle(c[first])
        cvals = np.array([c[lm] for lm in order]) / scale
        for q in range(mt):
            th = (delta + 2 * math.pi * q) / mt
            rc = np.exp(-1j * ms * th) * cvals
            keys.append([x for v in rc for x in (v.real, v.imag)])
            cands.append((rotation_matrix(zax, th) @ R1, _expm_rot(j2, zax, th) @ D1))
    tied = _pick(list(range(len(cands))), lambda i: keys[i])
    cands = [cands[i] for i in tied]
    R, D = cands[0]
    return Orientation(j2, R, D, D @ psi, symmetric=len(cands) > 1, anticoherent=anti,
                       candidates=cands)


def _ref_from(orient, D):
    """Reference ket psi_C = D^-1 fix_phase(D psi)."""
    psi = orient.D.conj().T @ orient.rotated
    return D.conj().T @ fix_phase(D @ psi)


def reference_ket(c):
    """Canonical reference ket of a constellation (array of unit vectors)."""
    stars = np.asarray(c, dtype=float).reshape(-1, 3)
    if len(stars) == 0:
        return np.ones(1, dtype=complex)
    psi = constellation_to_state(stars)
    return _reference_kets([psi])[0][0]


def _rel_key(X):
    # prefer the relative rotation closest to the identity, then row-major order
    return [np.trace(X)] + list(X.ravel())


def _reference_kets(kets):
    """Reference kets for a list of block kets, coupled through one anchor frame.

    The anchor is the first asymmetric block (else the first block with a
    finite stabilizer, else the first nonzero block).  Every other block
    picks, among its tied reference rotations R, the one whose rotation
    relative to the anchor frame is preferred by :func:`_rel_key`; its
    SU(2) lift is taken relative to the anchor lift.  This keeps relative
    signs and phases between blocks rotation invariant.
    """
    info = []
    for psi in kets:
        if psi is None or np.linalg.norm(psi) == 0:
            info.append(None)
        else:
            info.append(reference_orientation(psi))
    live = [i for i, o in enumerate(info) if o is not None and o.j2 > 0]
    anchor = None
    for test in (lambda o: not o.symmetric, lambda o: not o.continuous, lambda o: True):
        anchor = next((i for i in live if test(info[i])), None)
        if anchor is not None:
            break
    out = []
    for i, o in enumerate(info):
        if o is None:
            out.append((None, None))
            continue
        if o.j2 == 0 or i == anchor:
            out.append((_ref_from(o, o.D), o))
            continue
        RF, DF = info[anchor].R, info[anchor].D
        if o.continuous:
            # free rotation about z after R: choose it to bring R RF^-1 closest to identity
            A = o.R @ RF.T
            th = math.atan2(A[0, 1] - A[1, 0], A[0, 0] + A[1, 1])
            zax = np.array([0.0, 0.0, 1.0])
            cands = [(rotation_matrix(zax, th) @ o.R, None)]
        else:
            cands = o.candidates
        R = _pick([r for r, _ in cands], lambda r: _rel_key(r @ RF.T), tol=1e-9)[0]
        D = _lift(o.j2, R @ RF.T) @ _lift_like(info[anchor].j2, o.j2, DF, RF)
        out.append((_ref_from(o, D), o))
    return out


def _lift_like(j2_anchor, j2, DF, RF):
    """Spin-j lift of the anchor rotation carrying the same SU(2) sign as DF."""
    D = _lift(j2, RF)
    if j2 % 2 == 0 or j2_anchor % 2 == 0:
        return D
    # compare with the anchor's own lift to copy its sign
    Da = _lift(j2_anchor, RF)
    sign = np.real(np.trace(Da.conj().T @ DF)) / (j2_anchor + 1)
    return D if sign > 0 else -D


# ---------------------------------------------------------------- multiconstellation

@dataclass
class BlockConstellation:
    j2: int
    alpha: int
    stars: np.ndarray
    z: complex
    zero: bool = False
    symmetric: bool = False
    anticoherent: bool = False

    @property
    def j(self):
        return self.j2 / 2


@dataclass
class Multiconstellation:
    s2: int
    k: int
    blocks: list
    spectator: np.ndarray

    @property
    def weights(self):
        return np.array([b.z for b in self.blocks])

    def to_json(self):
        return {
            "s2": self.s2, "k": self.k,
            "blocks": [{"j2": b.j2, "alpha": b.alpha, "stars": np.asarray(b.stars).tolist(),
                        "z": [float(np.real(b.z)), float(np.imag(b.z))],
                        "zero": b.zero, "symmetric": b.symmetric,
                        "anticoherent": b.anticoherent} for b in self.blocks],
            "spectator": np.asarray(self.spectator).tolist(),
        }

    @classmethod
    def from_json(cls, d):
        blocks = [BlockConstellation(b["j2"], b["alpha"], np.asarray(b["stars"], dtype=float).reshape(-1, 3),
                                     complex(*b["z"]), b.get("zero", False), b.get("symmetric", False),
                                     b.get("anticoherent", False)) for b in d["blocks"]]
        return cls(d["s2"], d["k"], blocks, np.asarray(d["spectator"], dtype=float).reshape(-1, 3))


def _block_vector(state):
    B = block_diagonalizer(state.s2 / 2, state.k)
    if state.basis == "block":
        return B, state.amplitudes
    a = state.amplitudes
    if state.basis == "induced":
        a = a / _normalizers(state.d, state.k)
    return B, B.U @ a


def spectator(weights):
    """Stars of the weight list read as a pseudo-spinor (empty for one block)."""
    w = np.asarray(weights, dtype=complex)
    if w.size < 2 or not np.any(w):
        return np.zeros((0, 3))
    return majorana_roots(w)


def multiconstellation(state, tol=1e-12):
    """Per-block constellations, canonical weights z_{j alpha} and the spectator."""
    B, v = _block_vector(state)
    if np.linalg.norm(v) == 0:
        raise InputError("zero state has no multiconstellation")
    parts = B.split(v)
    scale = np.linalg.norm(v)
    kets = [p if np.linalg.norm(p) > tol * scale else None for _, _, p in parts]
    refs = _reference_kets(kets)
    blocks = []
    for (j2, a, p), ket, (ref, o) in zip(parts, kets, refs):
        if ket is None:
            blocks.append(BlockConstellation(j2, a, np.zeros((0, 3)), 0j, zero=True))
            continue
        z = complex(np.vdot(ref, p))
        stars = majorana_roots(p) if j2 > 0 else np.zeros((0, 3))
        blocks.append(BlockConstellation(j2, a, stars, z, symmetric=o.symmetric,
                                         anticoherent=o.anticoherent))
    w = np.array([b.z for b in blocks])
    return Multiconstellation(state.s2, state.k, blocks, spectator(w))


def reconstruct(mc):
    """Block-basis state rebuilt from a multiconstellation."""
    kets = []
    for b in mc.blocks:
        if b.zero or b.z == 0:
            kets.append(None)
        elif b.j2 == 0:
            kets.append(np.ones(1, dtype=complex))
        else:
            kets.append(constellation_to_state(b.stars))
    refs = _reference_kets(kets)
    parts = []
    for b, (ref, _) in zip(mc.blocks, refs):
        parts.append(np.zeros(b.j2 + 1, dtype=complex) if ref is None else b.z * ref)
    return SymState(mc.s2 / 2, mc.k, np.concatenate(parts), "block")
