"""Geometric measure of entanglement of symmetric states and Gram-matrix landscapes."""
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
import math
import os

import numpy as np
import scipy.optimize

from .majorana import constellation_to_state, fix_phase, majorana_roots, sphere_to_spinor
from .spin import InputError, twice
from .sympower import (SymState, _index_map, _normalizers, _occupations, _sym_indices,
                       permanent, permanent_batch, sym_dim)

MEASURES = ("haar", "stars")


def _unit_rows(V):
    V = np.asarray(V, dtype=complex)
    if V.ndim != 2 or V.shape[0] == 0:
        raise InputError("factors must be a non-empty (k, d) array")
    n = np.linalg.norm(V, axis=1)
    if np.any(n == 0):
        raise InputError("zero factor ket")
    return V / n[:, None]


def gram_matrix(factors):
    """G_IJ = <psi_I|psi_J> of the normalized factors."""
    V = _unit_rows(factors)
    return V.conj() @ V.T


def gram_spectrum(factors):
    """Ascending eigenvalues of the Gram matrix, tiny negatives clipped to 0."""
    w = np.linalg.eigvalsh(gram_matrix(factors))
    return np.clip(w, 0.0, None)


# ---------------------------------------------------------------- objectives
#
# Both paths maximise F(phi) = |g(conj phi)|^2 / <phi|phi>^k / ||Psi||^2, the
# squared overlap of Psi with the normalized product phi^(x)k.  g is
# holomorphic in conj(phi); w = dF/d conj(phi) is the Wirtinger gradient.

class _GramObjective:
    def __init__(self, factors):
        self.V = _unit_rows(factors)
        self.k, self.d = self.V.shape
        G = self.V.conj() @ self.V.T
        self.norm2 = permanent(G).real / math.factorial(self.k)

    def value_grad(self, phi):
        ov = self.V @ phi.conj()          # <phi|psi_I>
        N = np.vdot(phi, phi).real
        g = np.prod(ov)
        F = abs(g) ** 2 / N ** self.k / self.norm2
        # d g / d conj(phi_b) = sum_I psi_Ib prod_{J != I} ov_J
        others = np.array([np.prod(np.delete(ov, i)) for i in range(self.k)])
        dg = others @ self.V
        w = (dg * np.conj(g) / N ** self.k - self.k * abs(g) ** 2 * phi / N ** (self.k + 1)) / self.norm2
        return F, w

    def log_value_grad(self, phi):
        ov = self.V @ phi.conj()
        N = np.vdot(phi, phi).real
        L = np.sum(np.log(np.abs(ov) ** 2)) - self.k * math.log(N)
        # d/d conj(phi) of log|ov_I|^2 = psi_I / ov_I
        w = (self.V / ov[:, None]).sum(0) - self.k * phi / N
        return L, w


class _StateObjective:
    def __init__(self, state):
        st = state
        if st.basis == "block":
            raise InputError("convert block-basis states to standard first")
        a = st.amplitudes if st.basis == "standard" else st.amplitudes / _normalizers(st.d, st.k)
        self.k, self.d = st.k, st.d
        self.norm2 = np.vdot(a, a).real
        self.c = a * _normalizers(st.d, st.k)
        self.occ = np.array([_occupations(A, st.d) for A in _sym_indices(st.d, st.k)])

    def _g(self, u):
        pw = u[None, :] ** self.occ
        mono = np.prod(pw, axis=1)
        g = self.c @ mono
        dg = np.empty(self.d, dtype=complex)
        for b in range(self.d):
            col = np.where(self.occ[:, b] > 0, self.occ[:, b] * u[b] ** np.maximum(self.occ[:, b] - 1, 0), 0)
            rest = np.prod(np.delete(pw, b, axis=1), axis=1)
            dg[b] = self.c @ (col * rest)
        return g, dg

    def value_grad(self, phi):
        g, dg = self._g(phi.conj())
        N = np.vdot(phi, phi).real
        F = abs(g) ** 2 / N ** self.k / self.norm2
        w = (dg * np.conj(g) / N ** self.k - self.k * abs(g) ** 2 * phi / N ** (self.k + 1)) / self.norm2
        return F, w

    def log_value_grad(self, phi):
        g, dg = self._g(phi.conj())
        N = np.vdot(phi, phi).real
        if g == 0:
            return -np.inf, np.zeros(self.d, dtype=complex)
        return 2 * math.log(abs(g)) - self.k * math.log(N), dg / g - self.k * phi / N


def _to_c(x):
    d = x.size // 2
    return x[:d] + 1j * x[d:]


def _ascend(obj, phi0, gtol):
    def fun(x):
        L, w = obj.log_value_grad(_to_c(x))
        if not np.isfinite(L):
            return 1e300, np.zeros_like(x)
        return -L, -2 * np.concatenate([w.real, w.imag])

    x0 = np.concatenate([phi0.real, phi0.imag])
    res = scipy.optimize.minimize(fun, x0, jac=True, method="BFGS",
                                  options={"gtol": gtol, "maxiter": 2000})
    phi = _to_c(res.x)
    phi /= np.linalg.norm(phi)
    return phi, res


def _polish(obj, phi, iters=6, h=1e-6):
    """Newton steps on log F; min-norm solves absorb the phase and scale null directions."""
    def grad(x):
        L, w = obj.log_value_grad(_to_c(x))
        return L, 2 * np.concatenate([w.real, w.imag])

    x = np.concatenate([phi.real, phi.imag])
    L, g = grad(x)
    for _ in range(iters):
        n = x.size
        H = np.empty((n, n))
        for b in range(n):
            e = np.zeros(n)
            e[b] = h
            H[:, b] = (grad(x + e)[1] - grad(x - e)[1]) / (2 * h)
        step = np.linalg.lstsq((H + H.T) / 2, -g, rcond=1e-8)[0]
        x1 = x + step
        x1 /= np.linalg.norm(x1)
        L1, g1 = grad(x1)
        if not (np.isfinite(L1) and L1 >= L - 1e-12 and np.linalg.norm(g1) < np.linalg.norm(g)):
            break
        x, L, g = x1, L1, g1
    return _to_c(x)


def _tangent_basis(phi):
    """Real orthonormal directions spanning the horizontal tangent space at phi."""
    d = phi.size
    M = np.eye(d, dtype=complex) - np.outer(phi, phi.conj())
    Q, _ = np.linalg.qr(M)
    # the d-1 columns orthogonal to phi
    cols = [Q[:, i] for i in range(d) if abs(np.vdot(phi, Q[:, i])) < 0.5][: d - 1]
    return [c for q in cols for c in (q, 1j * q)]


def hessian(obj, phi, h=1e-5):
    """Finite-difference Hessian of F in horizontal tangent coordinates at phi."""
    T = _tangent_basis(phi)
    n = len(T)

    def grad(t):
        p = phi + sum(ti * v for ti, v in zip(t, T))
        _, w = obj.value_grad(p)
        return np.array([2 * np.real(np.vdot(v, w)) for v in T])

    H = np.empty((n, n))
    for b in range(n):
        e = np.zeros(n)
        e[b] = h
        H[:, b] = (grad(e) - grad(-e)) / (2 * h)
    return (H + H.T) / 2


def critical_residual(factors, phi):
    """max_I |conj(phi^I) phi_I - 1/k| for normalized phi (full-rank factors)."""
    V = _unit_rows(factors)
    k = V.shape[0]
    G = V.conj() @ V.T
    phi = phi / np.linalg.norm(phi)
    low = V.conj() @ phi          # phi_I = <psi_I|phi>
    up = np.linalg.solve(G, low)  # phi^I = G^{IJ} phi_J
    return float(np.max(np.abs(up.conj() * low - 1.0 / k)))


@dataclass
class EntanglementResult:
    E: float
    E_tilde: float
    phi: np.ndarray
    residual: float
    restarts_used: int
    converged: bool
    degenerate: bool
    hessian_eigs: np.ndarray = field(default_factory=lambda: np.zeros(0))
    path: str = "gram"
    components: np.ndarray = None   # normalized <psi_I|phi> (Gram path)

    def to_json(self):
        return {"E": self.E, "E_tilde": self.E_tilde,
                "phi": [[float(z.real), float(z.imag)] for z in self.phi],
                "residual": self.residual, "restarts_used": self.restarts_used,
                "converged": self.converged, "degenerate": self.degenerate,
                "hessian_eigs": [float(x) for x in self.hessian_eigs], "path": self.path,
                "components": None if self.components is None
                else [[float(z.real), float(z.imag)] for z in self.components]}


def geometric_entanglement(state=None, factors=None, restarts=64, tol=1e-9, seed=0,
                           degeneracy_tol=1e-8):
    """Closest diagonal product state by multi-start ascent.

    With ``factors`` the Gram path is used (objective built from the factor
    kets); otherwise the general path on the symmetric state amplitudes.
    """
    if factors is not None:
        obj = _GramObjective(factors)
        path = "gram"
    elif state is not None:
        obj = _StateObjective(state)
        path = "general"
    else:
        raise InputError("need a state or a list of factors")
    if restarts < 1:
        raise InputError("restarts must be >= 1")
    rng = np.random.default_rng(seed)
    best, best_res = None, None
    for _ in range(restarts):
        z = rng.normal(size=obj.d) + 1j * rng.normal(size=obj.d)
        phi, res = _ascend(obj, z / np.linalg.norm(z), gtol=1e-11)
        if best is None or -res.fun > -best_res.fun:
            best, best_res = phi, res
    best = _polish(obj, best)
    F, w = obj.value_grad(best)
    F = min(F, 1.0)
    T = _tangent_basis(best)
    gnorm = max(abs(2 * np.real(np.vdot(v, w))) for v in T) if T else 0.0
    H = hessian(obj, best) if T else np.zeros((0, 0))
    eigs = np.linalg.eigvalsh(H) if H.size else np.zeros(0)
    degenerate = bool(np.any(np.abs(eigs) < degeneracy_tol))
    converged = bool(gnorm < max(tol, 1e-7) and (eigs.size == 0 or eigs.max() < degeneracy_tol))
    residual, comps = np.nan, None
    if factors is not None:
        V = _unit_rows(factors)
        comps = V.conj() @ best
        comps = fix_phase(comps / np.linalg.norm(comps))
        if np.linalg.matrix_rank(V, tol=1e-9) == V.shape[0]:
            residual = critical_residual(V, best)
    Et = max(0.0, 1.0 - F)
    return EntanglementResult(math.acos(math.sqrt(1.0 - Et)), Et, fix_phase(best), residual,
                              restarts, converged, degenerate, eigs, path, comps)


# ---------------------------------------------------------------- rank reduction

@dataclass
class RankReduction:
    factors: np.ndarray   # (k, r) reduced kets, staircase zero pattern
    U: np.ndarray         # d x d unitary with U e_I = |s, s - I>
    rank: int
    order: list           # factor order used (independent ones first)

    def lift(self, phi_reduced):
        """Map a reduced ket back: append trailing zeros and apply U^-1."""
        d = self.U.shape[0]
        p = np.zeros(d, dtype=complex)
        p[: self.rank] = phi_reduced
        return self.U.conj().T @ p


def rank_reduce(factors, tol=1e-9):
    """Rewrite the factors in an adapted orthonormal basis of their span."""
    V = _unit_rows(factors)
    k, d = V.shape
    basis, indep = [], []
    for i, v in enumerate(V):
        r = v - sum(np.vdot(b, v) * b for b in basis)
        r = r - sum(np.vdot(b, r) * b for b in basis)
        if np.linalg.norm(r) > tol:
            basis.append(r / np.linalg.norm(r))
            indep.append(i)
    order = indep + [i for i in range(k) if i not in indep]
    r = len(basis)
    # complete to an orthonormal basis of the whole space
    E = np.array(basis).T if basis else np.zeros((d, 0), dtype=complex)
    for e in np.eye(d):
        if E.shape[1] == d:
            break
        x = e - E @ (E.conj().T @ e)
        x = x - E @ (E.conj().T @ x)
        if np.linalg.norm(x) > 1e-6:
            E = np.column_stack([E, x / np.linalg.norm(x)])
    U = E.conj().T
    red = (U @ V[order].T).T[:, :r]
    red[np.abs(red) < 1e-14] = 0
    return RankReduction(red, U, r, order)


# ---------------------------------------------------------------- sampling

def _rng(seed, index):
    return np.random.Generator(np.random.Philox(key=int(seed), counter=[int(index), 0, 0, 0]))


def _uniform_sphere(rng, n):
    v = rng.normal(size=(n, 3))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def random_factorizable(s, k, measure="haar", seed=0, index=0):
    """k factor kets of spin s for sample ``index`` of the stream ``seed``.

    ``stars``: every factor has 2s independent uniform stars.  ``haar``: for
    s = 1/2 the whole symmetric k-qubit state is drawn from the unitarily
    invariant measure and its Majorana stars give the factors; for s >= 1
    every factor is a normalized complex Gaussian ket.
    """
    s2 = twice(s)
    if measure not in MEASURES:
        raise InputError(f"unknown measure {measure!r}")
    if s2 < 1 or k < 1:
        raise InputError("need s >= 1/2 and k >= 1")
    rng = _rng(seed, index)
    d = s2 + 1
    if measure == "stars":
        return np.array([constellation_to_state(_uniform_sphere(rng, s2)) for _ in range(k)])
    if s2 == 1:
        psi = rng.normal(size=k + 1) + 1j * rng.normal(size=k + 1)
        if k == 1:
            return fix_phase(psi / np.linalg.norm(psi))[None, :]
        return sphere_to_spinor(majorana_roots(psi))
    z = rng.normal(size=(k, d)) + 1j * rng.normal(size=(k, d))
    return z / np.linalg.norm(z, axis=1, keepdims=True)


# ---------------------------------------------------------------- qubit fast path

def _fib_sphere(n):
    i = np.arange(n) + 0.5
    z = 1 - 2 * i / n
    r = np.sqrt(1 - z * z)
    ph = math.pi * (1 + 5 ** 0.5) * i
    return np.column_stack([r * np.cos(ph), r * np.sin(ph), z])


def _spinor_to_bloch(V):
    a, b = V[..., 0], V[..., 1]
    return np.stack([2 * np.real(np.conj(a) * b), 2 * np.imag(np.conj(a) * b),
                     np.abs(a) ** 2 - np.abs(b) ** 2], axis=-1)


def _sphere_newton(n, m, best, iters):
    """Safeguarded Riemannian Newton ascent of sum log(1 + n.m_I), vectorized."""
    for _ in range(iters):
        q = np.maximum(1 + np.einsum("nc,nkc->nk", n, m), 1e-300)
        g = np.einsum("nkc,nk->nc", m, 1 / q)
        H = -np.einsum("nkc,nkd,nk->ncd", m, m, 1 / q ** 2)
        a = np.where(np.abs(n[:, :1]) < 0.9, np.array([[1.0, 0, 0]]), np.array([[0, 1.0, 0]]))
        t1 = np.cross(n, a)
        t1 /= np.linalg.norm(t1, axis=1, keepdims=True)
        T = np.stack([t1, np.cross(n, t1)], axis=2)          # (N, 3, 2) tangent frame
        gt = np.einsum("nct,nc->nt", T, g)
        Ht = np.einsum("nct,ncd,ndu->ntu", T, H, T) - np.einsum("nc,nc->n", n, g)[:, None, None] * np.eye(2)
        det = Ht[:, 0, 0] * Ht[:, 1, 1] - Ht[:, 0, 1] * Ht[:, 1, 0]
        neg = (Ht[:, 0, 0] < 0) & (det > 0)
        safe = np.where(neg, det, 1.0)
        inv = np.stack([np.stack([Ht[:, 1, 1], -Ht[:, 0, 1]], -1),
                        np.stack([-Ht[:, 1, 0], Ht[:, 0, 0]], -1)], -2) / safe[:, None, None]
        step = np.where(neg[:, None], -np.einsum("ntu,nu->nt", inv, gt), 0.1 * gt)
        stepn = np.linalg.norm(step, axis=1, keepdims=True)
        step = np.where(stepn > 0.3, step * 0.3 / np.maximum(stepn, 1e-300), step)
        cand = n + np.einsum("nct,nt->nc", T, step)
        cand /= np.linalg.norm(cand, axis=1, keepdims=True)
        with np.errstate(divide="ignore"):
            Lc = np.log(np.clip(1 + np.einsum("nc,nkc->nk", cand, m), 0, None)).sum(-1)
        up = Lc >= best
        n = np.where(up[:, None], cand, n)
        best = np.where(up, Lc, best)
    return n, best


def qubit_max_overlap(m, grid=600, starts=4, iters=30):
    """max over unit n of prod_I (1 + n.m_I)/2 for stacks of star sets m (N, k, 3).

    Newton ascent from the ``starts`` best points of a Fibonacci grid.
    """
    m = np.asarray(m, dtype=float)
    N, k, _ = m.shape
    P = _fib_sphere(grid)
    with np.errstate(divide="ignore"):
        L = np.log(np.clip(1 + np.einsum("gc,nkc->ngk", P, m), 0, None)).sum(-1)
    starts = min(starts, grid)
    top = np.argpartition(-L, starts - 1, axis=1)[:, :starts]
    n0 = P[top].reshape(-1, 3)
    L0 = np.take_along_axis(L, top, axis=1).reshape(-1)
    n, best = _sphere_newton(n0, np.repeat(m, starts, axis=0), L0, iters)
    best = best.reshape(N, starts)
    pick = np.argmax(best, axis=1)
    return np.exp(best[np.arange(N), pick]) / 2 ** k, n.reshape(N, starts, 3)[np.arange(N), pick]


def _qubit_records(V):
    """(lambdas, E_tilde) for a stack of qubit factor sets V (N, k, 2)."""
    N, k, _ = V.shape
    V = V / np.linalg.norm(V, axis=2, keepdims=True)
    G = np.einsum("nia,nja->nij", V.conj(), V)
    lam = np.clip(np.linalg.eigvalsh(G), 0, None)
    norm2 = permanent_batch(G).real / math.factorial(k)
    ov, _ = qubit_max_overlap(_spinor_to_bloch(V))
    Et = np.clip(1 - ov / norm2, 0, 1)
    return lam, Et


def landscape_point(factors):
    """(Gram eigenvalues ascending, E_tilde) of one factor set."""
    V = _unit_rows(factors)
    if V.shape[1] == 2:
        lam, Et = _qubit_records(V[None])
        return lam[0], float(Et[0])
    res = geometric_entanglement(factors=V, restarts=16)
    return gram_spectrum(V), res.E_tilde


def qubit_state_point(psi):
    """(lambda list, E_tilde) of a symmetric k-qubit state given as a spin-k/2 ket."""
    psi = np.asarray(psi, dtype=complex)
    V = sphere_to_spinor(majorana_roots(psi))
    return landscape_point(V)


def _scan_chunk(args):
    s, k, measure, seed, lo, hi, restarts = args
    s2 = twice(s)
    d = s2 + 1
    nz = max(0, k - d)
    keep = slice(nz, min(k, d) - 1 + nz)
    if s2 == 1:
        V = np.array([random_factorizable(s, k, measure, seed, i) for i in range(lo, hi)])
        if V.size == 0:
            return np.zeros((0, max(min(k, d) - 1, 0))), np.zeros(0)
        lam, Et = _qubit_records(V)
        return lam[:, keep], Et
    lams, Ets = [], []
    for i in range(lo, hi):
        V = random_factorizable(s, k, measure, seed, i)
        res = geometric_entanglement(factors=V, restarts=restarts, seed=i)
        lams.append(gram_spectrum(V)[keep])
        Ets.append(res.E_tilde)
    return np.array(lams).reshape(hi - lo, -1), np.array(Ets)


def _workers():
    try:
        return max(1, int(os.environ.get("SYMQ_THREADS", "1")))
    except ValueError:
        return 1


@dataclass
class ScanResult:
    s2: int
    k: int
    measure: str
    seed: int
    index: np.ndarray
    lambdas: np.ndarray    # (N, r-1): nonzero Gram eigenvalues below the largest
    E_tilde: np.ndarray


def scan(s, k, samples, measure="haar", seed=0, restarts=8, chunk=4096, workers=None):
    """Random factorizable states mapped to (Gram eigenvalues, E_tilde).

    Sample i depends only on (seed, i), so the output is independent of the
    chunking and of the number of workers.
    """
    if samples < 0:
        raise InputError("samples must be >= 0")
    if measure not in MEASURES:
        raise InputError(f"unknown measure {measure!r}")
    s2 = twice(s)
    jobs = [(s, k, measure, seed, lo, min(lo + chunk, samples), restarts)
            for lo in range(0, samples, chunk)]
    workers = workers or _workers()
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(_scan_chunk, jobs))
    else:
        parts = [_scan_chunk(j) for j in jobs]
    ncol = max(min(k, s2 + 1) - 1, 0)
    lam = np.vstack([p[0] for p in parts]) if parts else np.zeros((0, ncol))
    Et = np.concatenate([p[1] for p in parts]) if parts else np.zeros(0)
    return ScanResult(s2, k, measure, seed, np.arange(samples), lam, Et)


# ---------------------------------------------------------------- geodesics

def fs_geodesic(psi0, psi1, t):
    """Point at fraction t of the Fubini-Study geodesic from [psi0] to [psi1]."""
    a = np.asarray(psi0, dtype=complex)
    b = np.asarray(psi1, dtype=complex)
    if a.shape != b.shape:
        raise InputError("endpoints must have the same dimension")
    a = a / np.linalg.norm(a)
    b = b / np.linalg.norm(b)
    ov = np.vdot(a, b)
    if abs(ov) > 0:
        b = b * (abs(ov) / ov)
    theta = math.acos(min(1.0, abs(ov)))
    t = np.asarray(t, dtype=float)
    if theta < 1e-15:
        return np.broadcast_to(a, t.shape + a.shape).copy()
    w0 = np.sin((1 - t) * theta) / math.sin(theta)
    w1 = np.sin(t * theta) / math.sin(theta)
    return np.multiply.outer(w0, a) + np.multiply.outer(w1, b)


def fs_distance(psi0, psi1):
    a = np.asarray(psi0, dtype=complex)
    b = np.asarray(psi1, dtype=complex)
    c = abs(np.vdot(a, b)) / (np.linalg.norm(a) * np.linalg.norm(b))
    return math.acos(min(1.0, c))


# ---------------------------------------------------------------- qubit landscape boundaries

def _sph(theta, phi):
    return np.array([math.sin(theta) * math.cos(phi), math.sin(theta) * math.sin(phi), math.cos(theta)])


def qubit_vertex_states(k):
    """Named spin-k/2 kets whose connecting geodesics bound the (lambda, E_tilde) landscape.

    k = 3: A coherent along +z, E GHZ (equatorial triangle with a star on +x),
    G W state with stars +x, -x, -x, A' coherent along -x.
    k = 4: A coherent along -z, B W state (one star north, three south),
    C tetrahedron with a star at the north pole, D two star pairs on the axis
    through the midpoint of the C edge joining its north and phi = 0 stars,
    E GHZ.
    """
    x = np.array([1.0, 0, 0])
    if k == 3:
        return {"A": np.array([1, 0, 0, 0], dtype=complex),
                "E": np.array([1, 0, 0, 1], dtype=complex) / math.sqrt(2),
                "G": constellation_to_state(np.array([x, -x, -x])),
                "A'": constellation_to_state(np.array([-x, -x, -x]))}
    if k == 4:
        t = math.acos(-1 / 3)
        tetra = np.array([[0, 0, 1.0]] + [_sph(t, p) for p in (0, 2 * math.pi / 3, -2 * math.pi / 3)])
        n = tetra[0] + tetra[1]
        n /= np.linalg.norm(n)
        return {"A": np.array([0, 0, 0, 0, 1], dtype=complex),
                "B": np.array([0, 0, 0, 1, 0], dtype=complex),
                "C": constellation_to_state(tetra),
                "D": constellation_to_state(np.array([n, n, -n, -n])),
                "E": np.array([1, 0, 0, 0, 1], dtype=complex) / math.sqrt(2)}
    raise InputError("vertex states are tabulated for k = 3 and k = 4 qubits")


BOUNDARY_PATHS = {3: ("A", "E", "G", "A'"), 4: ("A", "B", "C", "D", "E", "A")}


def geodesic_image(psi0, psi1, n=200):
    """(lambda, E_tilde) along the geodesic between two symmetric qubit states."""
    pts = []
    for t in np.linspace(0, 1, n):
        lam, Et = qubit_state_point(fs_geodesic(psi0, psi1, t))
        pts.append((lam[-2], Et))
    return np.array(pts)


def landscape_boundary(k, n=200):
    """Closed polygon (rows (lambda, E_tilde)) through the geodesic images of the vertex path."""
    V = qubit_vertex_states(k)
    path = BOUNDARY_PATHS[k]
    return np.vstack([geodesic_image(V[a], V[b], n) for a, b in zip(path, path[1:])])
