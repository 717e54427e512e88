"""Reference matrices and states used by several test modules."""
import numpy as np

from symstars.sympower import SymState, sym_basis

r = np.sqrt


def rows(n, spec):
    """Matrix from a list of rows, each a dict {column (1-based): value} or an int (unit row)."""
    M = np.zeros((len(spec), n))
    for i, row in enumerate(spec):
        if isinstance(row, int):
            M[i, row - 1] = 1.0
        else:
            for c, v in row.items():
                M[i, c - 1] = v
    return M


U_1_2 = rows(6, [1, 2, {3: 1 / r(3), 4: r(2 / 3)}, 5, 6, {3: -r(2 / 3), 4: 1 / r(3)}])

U_1_3 = rows(10, [1, 2, {3: 1 / r(5), 4: 2 / r(5)}, {5: r(3 / 5), 7: r(2 / 5)},
                  {6: 1 / r(5), 8: 2 / r(5)}, 9, 10,
                  {3: 2 / r(5), 4: -1 / r(5)}, {5: r(2 / 5), 7: -r(3 / 5)}, {6: 2 / r(5), 8: -1 / r(5)}])

U_32_2 = rows(10, [1, 2, {3: r(2 / 5), 5: r(3 / 5)}, {4: 1 / r(10), 6: 3 / r(10)},
                   {7: r(2 / 5), 8: r(3 / 5)}, 9, 10,
                   {3: r(3 / 5), 5: -r(2 / 5)}, {4: 3 / r(10), 6: -1 / r(10)}, {7: r(3 / 5), 8: -r(2 / 5)}])

UT_32_2 = rows(6, [1, 2, {3: 1 / r(2), 4: 1 / r(2)}, 5, 6, {3: 1 / r(2), 4: -1 / r(2)}])

_a, _b = (r(2) + 2 * r(3)) / 5, (2 * r(2) - r(3)) / 5
_c, _e = (6 + r(6)) / 10, (2 - 3 * r(6)) / 10
H_1_3 = rows(10, [1, 2, {3: _a, 4: _b}, {5: _c, 7: _e}, {3: -_b, 4: _a}, {5: -_e, 7: _c},
                  {6: _a, 8: _b}, {6: -_b, 8: _a}, 9, 10])

M_1_2 = np.eye(6)
M_1_2[2:4, 2:4] = [[-1 / r(3) + 1 / r(6), 1 / r(3) + 1 / r(6)],
                   [1 / r(3) + 1 / r(6), 1 / r(3) - 1 / r(6)]]

# irreducible content of the symmetric powers, as {2j: multiplicity}
DECOMPOSITIONS = {
    (2, 2): {4: 1, 0: 1},
    (2, 3): {6: 1, 2: 1},
    (2, 4): {8: 1, 4: 1, 0: 1},
    (2, 5): {10: 1, 6: 1, 2: 1},
    (3, 2): {6: 1, 2: 1},
    (3, 3): {9: 1, 5: 1, 3: 1},
    (3, 4): {12: 1, 8: 1, 6: 1, 4: 1, 0: 1},
    (3, 5): {15: 1, 11: 1, 9: 1, 7: 1, 5: 1, 3: 1},
    (3, 6): {18: 1, 14: 1, 12: 1, 10: 1, 8: 1, 6: 2, 2: 1},
    (4, 2): {8: 1, 4: 1, 0: 1},
    (4, 3): {12: 1, 8: 1, 6: 1, 4: 1, 0: 1},
    (4, 4): {16: 1, 12: 1, 10: 1, 8: 2, 4: 2, 0: 1},
    (4, 5): {20: 1, 16: 1, 14: 1, 12: 2, 10: 1, 8: 2, 6: 1, 4: 2, 0: 1},
}


def standard_state(s, k, entries):
    """Standard-basis SymState from {multi-index: amplitude}."""
    idx = [A for A, _ in sym_basis(s, k)]
    a = np.zeros(len(idx), dtype=complex)
    for A, v in entries.items():
        a[idx.index(A)] = v
    return SymState(s, k, a)


def ex4_state():
    return standard_state(1, 3, {(1, 1, 1): 1 / r(3), (1, 1, 3): 1j / r(3), (2, 2, 3): 1 / r(3)})


def octahedral_state():
    # vee product of (1,0,-1), (1,0,1), (0,-1,0), normalized
    return standard_state(1, 3, {(1, 1, 2): -1 / r(2), (2, 3, 3): 1 / r(2)})


def cube_block():
    v = np.zeros(15)
    v[0], v[4], v[8] = 1, r(14 / 5), 1
    return v / np.linalg.norm(v)


def random_state(rng, s, k, basis="standard"):
    n = len(sym_basis(s, k))
    a = rng.normal(size=n) + 1j * rng.normal(size=n)
    return SymState(s, k, a / np.linalg.norm(a), basis)


def random_ket(rng, d):
    v = rng.normal(size=d) + 1j * rng.normal(size=d)
    return v / np.linalg.norm(v)


def random_axis(rng):
    n = rng.normal(size=3)
    return n / np.linalg.norm(n)


def phase_aligned_error(A, B, layout_slices):
    """Max deviation of A from B after one unit phase per block of rows."""
    err = 0.0
    for sl in layout_slices:
        a, b = A[sl], B[sl]
        i = np.unravel_index(np.argmax(np.abs(b)), b.shape)
        ph = a[i] / b[i]
        ph /= abs(ph)
        err = max(err, np.abs(a - ph * b).max())
    return err
