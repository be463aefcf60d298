import numpy as np

from app import app
from app.Models.FieldModel import MicroField
from app.Models.HomogenizedModel import HomogenizedData
from app.Utils.utils import boundary_slopes, centered_gradient, fitted_boundary_slopes


class HomogenizationController:
    """Cell problem and effective coefficient in one space dimension.

    All y-quadratures use the half-nodes y_{j+1/2}, where the fluxes of the
    discrete L live, so the closed-form corrector is the exact solution of
    the discrete cell problem on the same grid.
    """

    @staticmethod
    def harmonic_a0(a, x, ymesh):
        try:
            samples = a.check(a(np.full(ymesh.n_points, float(x)), ymesh.half_nodes))
            return 1.0 / np.mean(1.0 / samples)
        except Exception as e:
            app.logger.error(f"Error in harmonic_a0 at x={x}: {str(e)}")
            raise

    @staticmethod
    def solve_cell_problem(a, x, ymesh):
        """chi(x, y_j) with zero y-mean; chi_{j+1} - chi_j = dy (a0 / a_{j+1/2} - 1)."""
        a0 = HomogenizationController.harmonic_a0(a, x, ymesh)
        half = a(np.full(ymesh.n_points, float(x)), ymesh.half_nodes)
        increments = ymesh.spacing * (a0 / half - 1.0)
        chi = np.concatenate([[0.0], np.cumsum(increments[:-1])])
        return chi - chi.mean()

    @staticmethod
    def build_homogenized(a, xmesh, ymesh):
        app.logger.info(f"Building homogenized data on N_x={xmesh.n_cells}, N_y={ymesh.n_points} ({a.name})")
        a0 = np.array([HomogenizationController.harmonic_a0(a, x, ymesh) for x in xmesh.centers])
        a0_faces = np.array([HomogenizationController.harmonic_a0(a, x, ymesh) for x in xmesh.interfaces])
        chi = np.vstack([HomogenizationController.solve_cell_problem(a, x, ymesh) for x in xmesh.centers])
        return HomogenizedData(xmesh=xmesh, ymesh=ymesh, a0=a0, a0_faces=a0_faces, chi=chi,
                               chi_left=HomogenizationController.solve_cell_problem(a, 0.0, ymesh),
                               chi_right=HomogenizationController.solve_cell_problem(a, 1.0, ymesh))

    @staticmethod
    def corrector_u1(hom, macro):
        if macro.n_x != hom.xmesh.n_cells:
            raise ValueError(f'macro field has {macro.n_x} cells, homogenized data {hom.xmesh.n_cells}')
        gradient = centered_gradient(macro.values, hom.xmesh.spacing)
        return MicroField(hom.chi * gradient[:, None])

    @staticmethod
    def corrector_trace(hom, macro, n_fit=None):
        """u1 at x=0 and x=1 as per-y arrays.

        With ``n_fit`` the boundary slopes come from least-squares lines over
        that many cells; otherwise from three-point extrapolation.
        """
        if n_fit is None:
            left_slope, right_slope = boundary_slopes(macro.values, hom.xmesh.spacing)
        else:
            left_slope, right_slope = fitted_boundary_slopes(macro.values, hom.xmesh.spacing, n_fit)
        return hom.chi_left * left_slope, hom.chi_right * right_slope

