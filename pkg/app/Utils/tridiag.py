"""
Periodic tridiagonal solvers for one y-slice of the cell operator.

The slice matrices are symmetric: ``diagonal[j]`` on the diagonal and
``off_diagonal[j]`` coupling nodes j and j+1 (mod n), so ``off_diagonal[-1]``
is the periodic corner entry.
"""

import numpy as np
from scipy.linalg import cho_solve_banded, cholesky_banded, lu_factor, lu_solve


def periodic_matrix(diagonal, off_diagonal):
    """Dense periodic tridiagonal matrix, mostly for checks against dense solves."""
    n = len(diagonal)
    index = np.arange(n)
    matrix = np.zeros((n, n))
    matrix[index, index] = diagonal
    matrix[index, (index + 1) % n] += off_diagonal
    matrix[(index + 1) % n, index] += off_diagonal
    return matrix


class CyclicTridiagonalSolver:
    """Symmetric positive definite cyclic system via Sherman-Morrison.

    The corner entries are moved into a rank-one update u v^T so that the
    remaining matrix is tridiagonal and still positive definite; it is
    factorized once with a banded Cholesky and reused for every solve.
    """

    def __init__(self, diagonal, off_diagonal):
        diagonal = np.asarray(diagonal, dtype=float)
        off_diagonal = np.asarray(off_diagonal, dtype=float)
        n = diagonal.shape[0]
        gamma = -diagonal[0]
        corner = off_diagonal[-1]

        reduced = diagonal.copy()
        reduced[0] -= gamma
        reduced[-1] -= corner * corner / gamma
        banded = np.zeros((2, n))
        banded[0, 1:] = off_diagonal[:-1]
        banded[1] = reduced
        self._factor = (cholesky_banded(banded), False)

        self._u = np.zeros(n)
        self._u[0], self._u[-1] = gamma, corner
        self._v = np.zeros(n)
        self._v[0], self._v[-1] = 1.0, corner / gamma
        self._q = cho_solve_banded(self._factor, self._u)
        self._denominator = 1.0 + self._v @ self._q

    def solve(self, rhs):
        y = cho_solve_banded(self._factor, rhs)
        correction = (self._v @ y) / self._denominator
        return y - np.multiply.outer(self._q, correction)


class BorderedPeriodicSolver:
    """Singular periodic system L w = r closed by the constraint sum(w) = 0.

    The constraint enters as one bordered row and column (a Lagrange
    multiplier), which keeps the system symmetric. The border breaks the band,
    so the (n+1) x (n+1) matrix is LU-factorized densely; n is a cell size.
    """

    def __init__(self, diagonal, off_diagonal):
        n = len(diagonal)
        matrix = np.zeros((n + 1, n + 1))
        matrix[:n, :n] = periodic_matrix(diagonal, off_diagonal)
        matrix[:n, n] = 1.0
        matrix[n, :n] = 1.0
        self._lu = lu_factor(matrix)
        self.n = n

    def solve(self, rhs):
        rhs = np.asarray(rhs, dtype=float)
        padded = np.concatenate([rhs, np.zeros((1,) + rhs.shape[1:])], axis=0)
        return lu_solve(self._lu, padded)[:self.n]
