import numpy as np

from app.Models.FieldModel import BoundaryData, MacroField


class ReconstructController:
    """Evaluation of two-scale solutions on the diagonal y = x/eps of a fine mesh."""

    @staticmethod
    def trig_interp(samples, y_star):
        """Balanced trigonometric interpolant of periodic samples, evaluated at y_star mod 1.

        ``samples`` may be batched as (..., N_y) with ``y_star`` broadcasting
        against the leading axes. N_y must be even; the Nyquist mode is kept as
        a pure cosine so real samples give a real interpolant.
        """
        samples = np.asarray(samples, dtype=float)
        n = samples.shape[-1]
        coefficients = np.fft.rfft(samples, axis=-1) / n
        weights = np.full(coefficients.shape[-1], 2.0)
        weights[0] = 1.0
        weights[-1] = 1.0
        y = np.mod(np.asarray(y_star, dtype=float), 1.0)
        phase = np.exp(2j * np.pi * np.multiply.outer(y, np.arange(coefficients.shape[-1])))
        return np.real(np.sum(weights * coefficients * phase, axis=-1))

    @staticmethod
    def reconstruct_solution(F, G, epsilon, fine, boundary=None):
        """u(x) ~ linear blend in x of F + G(., x/eps) between bracketing nodes.

        Nodes are the coarse centers plus x=0 and x=1, where the boundary trace
        F_b + G_b(y) stands in for a cell value.
        """
        boundary = boundary or BoundaryData()
        n_x, n_y = G.shape
        if F.n_x != n_x:
            raise ValueError(f'F has {F.n_x} cells but G has {n_x}')
        left, right = boundary.traces(n_y)
        nodes = np.concatenate([[0.0], (np.arange(n_x) + 0.5) / n_x, [1.0]])
        samples = np.vstack([left, F.values[:, None] + G.values, right])

        x = fine.centers
        y = np.mod(x / epsilon, 1.0)
        index = np.clip(np.searchsorted(nodes, x, side='right') - 1, 0, n_x)
        weight = (x - nodes[index]) / (nodes[index + 1] - nodes[index])
        low = ReconstructController.trig_interp(samples[index], y)
        high = ReconstructController.trig_interp(samples[index + 1], y)
        return MacroField((1.0 - weight) * low + weight * high)

    @staticmethod
    def reconstruct_hmm(u0, u1, epsilon, fine, boundary=None):
        return ReconstructController.reconstruct_solution(u0, epsilon * u1, epsilon, fine, boundary)

    @staticmethod
    def derivative_on_fine(u_fine):
        values = u_fine.values
        if values.shape[0] < 8:
            raise ValueError(f'derivative_on_fine needs at least 8 cells, got {values.shape[0]}')
        return MacroField(np.gradient(values, 1.0 / values.shape[0], edge_order=2))
