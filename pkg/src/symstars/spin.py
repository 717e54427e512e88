"""SU(2) kernel: spin matrices, rotations, characters and tensor operators.

Spins are handled as doubled integers (``j2 = 2j``) internally.  Public
functions accept ``j`` as an int, float, Fraction or a string like ``"3/2"``.
Basis order is always descending m: |j,j>, |j,j-1>, ..., |j,-j>.
"""
from fractions import Fraction
from functools import lru_cache
import math

import numpy as np
import scipy.linalg
import scipy.special


class InputError(ValueError):
    """Bad user input (wrong shape, out of range, malformed)."""


def twice(j):
    """Return 2j as an int for j given as int/float/Fraction/str."""
    if isinstance(j, str):
        j = j.strip()
        try:
            val = Fraction(j)
        except (ValueError, ZeroDivisionError):
            raise InputError(f"cannot parse spin value {j!r}")
    elif isinstance(j, (Fraction, int)):
        val = Fraction(j)
    else:
        t = 2 * float(j)
        if abs(t - round(t)) > 1e-9:
            raise InputError(f"{j!r} is not a half-integer")
        val = Fraction(round(t), 2)
    t = 2 * val
    if t.denominator != 1:
        raise InputError(f"{j!r} is not a half-integer")
    return int(t)


def half(j2):
    """Readable form of a doubled integer: 3 -> '3/2', 4 -> '2'."""
    return str(j2 // 2) if j2 % 2 == 0 else f"{j2}/2"


def m_values(j2):
    """Magnetic quantum numbers j, j-1, ..., -j as floats."""
    return (j2 - 2 * np.arange(j2 + 1)) / 2.0


@lru_cache(maxsize=None)
def _spin_ops(j2):
    j = j2 / 2.0
    m = m_values(j2)
    # S+ |m> = sqrt(j(j+1)-m(m+1)) |m+1>; m+1 sits one row above
    sp = np.zeros((j2 + 1, j2 + 1))
    for i in range(1, j2 + 1):
        sp[i - 1, i] = math.sqrt(j * (j + 1) - m[i] * (m[i] + 1))
    sx = (sp + sp.T) / 2
    sy = (sp - sp.T) / 2j
    sz = np.diag(m)
    out = (sx.astype(complex), sy, sz.astype(complex), sp)
    for a in out:
        a.setflags(write=False)
    return out


class SpinMatrices:
    """Spin-j generators (hbar = 1) in the descending-m basis."""

    def __init__(self, j2):
        self.j2 = j2
        self.sx, self.sy, self.sz, self.splus = _spin_ops(j2)

    @property
    def sminus(self):
        return self.splus.T

    def __iter__(self):
        return iter((self.sx, self.sy, self.sz))

    def along(self, n):
        return n[0] * self.sx + n[1] * self.sy + n[2] * self.sz


def spin_operators(j):
    return SpinMatrices(twice(j))


def _unit(axis):
    n = np.asarray(axis, dtype=float).reshape(3)
    if abs(np.linalg.norm(n) - 1) > 1e-9:
        raise InputError(f"rotation axis {n} is not a unit vector")
    return n


def wigner_d(j, axis, angle):
    """D = exp(-i angle n.S) for spin j."""
    n = _unit(axis)
    S = SpinMatrices(twice(j))
    return scipy.linalg.expm(-1j * angle * S.along(n))


def rotation_matrix(axis, angle):
    """SO(3) matrix for a right-handed rotation by angle about axis."""
    n = _unit(axis)
    K = np.array([[0, -n[2], n[1]], [n[2], 0, -n[0]], [-n[1], n[0], 0]])
    return np.eye(3) + math.sin(angle) * K + (1 - math.cos(angle)) * K @ K


def axis_angle(R):
    """Inverse of rotation_matrix, angle in [0, pi]."""
    c = np.clip((np.trace(R) - 1) / 2, -1, 1)
    ang = math.acos(c)
    if ang < 1e-12:
        return np.array([0.0, 0.0, 1.0]), 0.0
    v = np.array([R[2, 1] - R[1, 2], R[0, 2] - R[2, 0], R[1, 0] - R[0, 1]])
    if np.linalg.norm(v) > 1e-6:
        return v / np.linalg.norm(v), ang
    # angle close to pi: axis from the symmetric part
    B = (R + np.eye(3)) / 2
    i = np.argmax(np.diag(B))
    n = B[:, i] / math.sqrt(B[i, i])
    return n / np.linalg.norm(n), ang


def irrep_character(j, alpha):
    """chi_j(alpha) = sin((j+1/2)alpha)/sin(alpha/2)."""
    j2 = twice(j)
    sh = math.sin(alpha / 2)
    if abs(sh) < 1e-6:
        # near the removable singularity sum the weights directly
        return float(np.sum(np.cos(m_values(j2) * alpha)))
    return math.sin((j2 + 1) * alpha / 2) / sh


def irrep_character_array(j2, alpha):
    """Vectorized character for doubled spin j2."""
    alpha = np.asarray(alpha, dtype=float)
    sh = np.sin(alpha / 2)
    small = np.abs(sh) < 1e-6
    safe = np.where(small, 1.0, sh)
    out = np.sin((j2 + 1) * alpha / 2) / safe
    if np.any(small):
        direct = np.cos(np.multiply.outer(alpha[small], m_values(j2))).sum(-1)
        out = np.where(small, 0.0, out)
        out[small] = direct
    return out


def _fact(n):
    return math.factorial(n)


def clebsch_gordan(j1_2, m1_2, j2_2, m2_2, J2, M2):
    """<j1 m1 j2 m2 | J M> (Racah formula, arguments doubled)."""
    if m1_2 + m2_2 != M2:
        return 0.0
    if not (abs(j1_2 - j2_2) <= J2 <= j1_2 + j2_2) or (j1_2 + j2_2 + J2) % 2:
        return 0.0
    for a, b in ((j1_2, m1_2), (j2_2, m2_2), (J2, M2)):
        if abs(b) > a or (a + b) % 2:
            return 0.0
    a = (J2 + j1_2 - j2_2) // 2
    b = (J2 - j1_2 + j2_2) // 2
    c = (j1_2 + j2_2 - J2) // 2
    d = (j1_2 + j2_2 + J2) // 2 + 1
    pre = Fraction((J2 + 1) * _fact(a) * _fact(b) * _fact(c), _fact(d))
    pre *= (_fact((J2 + M2) // 2) * _fact((J2 - M2) // 2) * _fact((j1_2 - m1_2) // 2)
            * _fact((j1_2 + m1_2) // 2) * _fact((j2_2 - m2_2) // 2) * _fact((j2_2 + m2_2) // 2))
    s = Fraction(0)
    for k in range(0, c + 1):
        t = [k, c - k, (j1_2 - m1_2) // 2 - k, (j2_2 + m2_2) // 2 - k,
             (J2 - j2_2 + m1_2) // 2 + k, (J2 - j1_2 - m2_2) // 2 + k]
        if min(t) < 0:
            continue
        den = 1
        for x in t:
            den *= _fact(x)
        s += Fraction((-1) ** k, den)
    if s == 0:
        return 0.0
    return math.copysign(math.sqrt(pre * s * s), s)


@lru_cache(maxsize=None)
def _tensor_op(j2, L, M):
    d = j2 + 1
    T = np.zeros((d, d))
    pref = math.sqrt((2 * L + 1) / d)
    for r in range(d):
        m2 = j2 - 2 * r
        c = r + M  # column with m' = m - M
        if 0 <= c < d:
            mp2 = j2 - 2 * c
            T[r, c] = pref * clebsch_gordan(j2, mp2, 2 * L, 2 * M, j2, m2)
    T = T.astype(complex)
    T.setflags(write=False)
    return T


class TensorOp:
    def __init__(self, j2, L, M):
        self.j2, self.L, self.M = j2, L, M
        self.matrix = _tensor_op(j2, L, M)


def tensor_operator(j, L, M):
    """Polarization operator T_LM of spin j, unit Frobenius norm.

    Matrix elements (T_LM)_{m m'} = sqrt((2L+1)/(2j+1)) <j m' L M | j m>.
    """
    j2 = twice(j)
    if not (0 <= L <= j2) or abs(M) > L:
        raise InputError(f"(L, M) = ({L}, {M}) out of range for spin {half(j2)}")
    return TensorOp(j2, L, M)


def tensor_ops(j2):
    """All T_LM for spin j2/2 as a dict keyed by (L, M)."""
    return {(L, M): _tensor_op(j2, L, M) for L in range(j2 + 1) for M in range(-L, L + 1)}


def generalized_characters(j, eta):
    """chi_L^{(j)}(eta), L = 0..2j, from the T_L0 projection of exp(-i eta S_z)."""
    j2 = twice(j)
    ph = np.exp(-1j * eta * m_values(j2))
    out = np.empty(j2 + 1)
    for L in range(j2 + 1):
        tr = np.sum(ph * np.diag(_tensor_op(j2, L, 0)))
        out[L] = ((1j) ** L * tr).real * math.sqrt((j2 + 1) / (2 * L + 1))
    return out


def sph_harm(L, M, n):
    """Y_LM at unit vector n (Condon-Shortley, orthonormal on the sphere)."""
    n = np.asarray(n, dtype=float)
    theta = np.arccos(np.clip(n[..., 2], -1, 1))
    phi = np.arctan2(n[..., 1], n[..., 0])
    return scipy.special.sph_harm_y(L, M, theta, phi)


def rotation_from_characters(j, eta, axis):
    """Rebuild R^{(j)}(eta, n) from the generalized characters."""
    j2 = twice(j)
    n = _unit(axis)
    chi = generalized_characters(j, eta)
    R = np.zeros((j2 + 1, j2 + 1), dtype=complex)
    for L in range(j2 + 1):
        acc = sum(np.conj(sph_harm(L, M, n)) * _tensor_op(j2, L, M) for M in range(-L, L + 1))
        R += (-1j) ** L * chi[L] * acc
    return 2 * math.sqrt(math.pi) / math.sqrt(j2 + 1) * R
