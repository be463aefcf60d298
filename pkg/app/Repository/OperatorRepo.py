"""
Discrete operators of the augmented problem on the x-by-y tensor grid.

L is the periodic y-diffusion, D the x-diffusion, B the mixed operator and
Pi the y-average. Every operator takes its coefficients from one
``CoefficientTables`` instance; factorizations of the per-slice y-systems
are built on first use and cached for the lifetime of the repository.
"""

import numpy as np

from app import app
from app.Models.FieldModel import BoundaryData, MacroField, MicroField
from app.Utils.errors import MeanConstraintError
from app.Utils.tridiag import BorderedPeriodicSolver, CyclicTridiagonalSolver
from app.Utils.utils import centered_gradient

MEAN_TOLERANCE = 1e-10


class OperatorRepository:
    def __init__(self, tables):
        self.tables = tables
        self.dx = tables.xmesh.spacing
        self.dy = tables.ymesh.spacing
        # x-slices with identical y-coefficients share one factorization
        slices, index = np.unique(tables.y_faces, axis=0, return_inverse=True)
        self._slice_faces = slices
        self._slice_index = np.ravel(index)
        self._bordered = None
        self._shifted = {}

    @property
    def n_y(self):
        return self.tables.ymesh.n_points

    # projections

    @staticmethod
    def project_pi(u):
        return MacroField(u.values.mean(axis=1))

    @staticmethod
    def complement(u):
        """(I - Pi) u."""
        return MicroField(u.values - u.values.mean(axis=1, keepdims=True))

    # y-operators

    def apply_L(self, u):
        values = u.values
        flux = self.tables.y_faces * (np.roll(values, -1, axis=1) - values) / self.dy
        return MicroField((flux - np.roll(flux, 1, axis=1)) / self.dy)

    def solve_L(self, r):
        values = r.values
        scale = np.max(np.abs(values), initial=0.0)
        drift = np.max(np.abs(values.mean(axis=1)), initial=0.0)
        if drift > MEAN_TOLERANCE * scale:
            raise MeanConstraintError(
                f'solve_L needs zero y-mean data, got |mean| = {drift:.3e} against max |r| = {scale:.3e}')
        if self._bordered is None:
            self._bordered = [BorderedPeriodicSolver(*self._slice_matrix(faces, None))
                              for faces in self._slice_faces]
        return MicroField(self._solve_slices(self._bordered, values))

    def shifted_solve_L(self, rhs, c):
        """Solve (I - c L) w = rhs slice by slice.

        Only the zero-mean part of rhs goes through the solver; the y-mean is
        passed through untouched since L annihilates constants.
        """
        if not c > 0.0:
            raise ValueError(f'shift c must be positive, got {c}')
        key = float(c)
        if key not in self._shifted:
            app.logger.debug(f'Factorizing I - cL for c={key:.6g} on {len(self._slice_faces)} distinct slices')
            self._shifted[key] = [CyclicTridiagonalSolver(*self._slice_matrix(faces, key))
                                  for faces in self._slice_faces]
        mean = rhs.values.mean(axis=1, keepdims=True)
        w = self._solve_slices(self._shifted[key], rhs.values - mean)
        return MicroField(w - w.mean(axis=1, keepdims=True) + mean)

    def _slice_matrix(self, faces, c):
        """Diagonal and off-diagonal of L (c is None) or of I - cL for one slice."""
        h2 = self.dy * self.dy
        diagonal = -(faces + np.roll(faces, 1)) / h2
        off_diagonal = faces / h2
        if c is None:
            return diagonal, off_diagonal
        return 1.0 - c * diagonal, -c * off_diagonal

    def _solve_slices(self, solvers, values):
        out = np.empty_like(values)
        for k, solver in enumerate(solvers):
            rows = self._slice_index == k
            out[rows] = solver.solve(values[rows].T).T
        return out

    # x-operators

    def _lift(self, u):
        if isinstance(u, MacroField):
            return u.lift(self.n_y).values
        return u.values

    def _boundary_rows(self, u, boundary):
        boundary = boundary or BoundaryData()
        if isinstance(u, MacroField):
            return (np.full(self.n_y, float(boundary.macro_left)),
                    np.full(self.n_y, float(boundary.macro_right)))
        zeros = np.zeros(self.n_y)
        left = zeros if boundary.micro_left is None else np.asarray(boundary.micro_left, dtype=float)
        right = zeros if boundary.micro_right is None else np.asarray(boundary.micro_right, dtype=float)
        return left, right

    def apply_D(self, u, boundary=None):
        """x-diffusion with ghosts 2 u_b - u_first; always returns a MicroField."""
        values = self._lift(u)
        left, right = self._boundary_rows(u, boundary)
        extended = np.vstack([2.0 * left - values[0], values, 2.0 * right - values[-1]])
        flux = self.tables.x_faces * np.diff(extended, axis=0) / self.dx
        return MicroField(np.diff(flux, axis=0) / self.dx)

    def apply_B(self, u, boundary=None):
        values = self._lift(u)
        left, right = self._boundary_rows(u, boundary)

        # d/dx (a d/dy u): y-derivative at x-interfaces, boundary faces carry the trace
        faces = np.vstack([left, 0.5 * (values[1:] + values[:-1]), right])
        dy_faces = (np.roll(faces, -1, axis=1) - np.roll(faces, 1, axis=1)) / (2.0 * self.dy)
        term_x = np.diff(self.tables.x_faces * dy_faces, axis=0) / self.dx

        # d/dy (a d/dx u): flux at y half-nodes so the y-mean telescopes to zero
        gradient = centered_gradient(values, self.dx, left, right)
        flux = self.tables.y_faces * 0.5 * (gradient + np.roll(gradient, -1, axis=1))
        term_y = (flux - np.roll(flux, 1, axis=1)) / self.dy
        return MicroField(term_x + term_y)

    def apply_Dbar(self, F, boundary=None):
        """Pi D F - Pi B L^{-1} (I - Pi) B F.

        The inner field is -chi dF/dx at cell centers. Its trace at x=0 and
        x=1 is the value of the adjacent cell, which is -chi times the same
        boundary-cell gradient B used, so the mixed flux through a boundary
        face cancels against the one of Pi D up to O(dx^2).
        """
        macro_boundary = (boundary or BoundaryData()).macro()
        inner = self.solve_L(self.complement(self.apply_B(F, macro_boundary)))
        closure = BoundaryData(micro_left=inner.values[0], micro_right=inner.values[-1])
        diffusion = self.project_pi(self.apply_D(F, macro_boundary))
        mixed = self.project_pi(self.apply_B(inner, closure))
        return diffusion - mixed
