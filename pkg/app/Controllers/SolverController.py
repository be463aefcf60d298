"""
Time integrators: REF on the fine oscillatory problem, HMM on the homogenized
problem and EMM, the asymptotic preserving micro-macro scheme.
"""

import numpy as np
from scipy import sparse
from tqdm import tqdm

from app import app
from app.Controllers.HomogenizationController import HomogenizationController
from app.Controllers.ReconstructController import ReconstructController
from app.Models.FieldModel import BoundaryData, EmmState, MacroField, MicroField, Trajectory
from app.Models.MeshModel import make_cell_mesh, make_spatial_mesh
from app.Models.ProblemModel import BcMode, sample_coefficient
from app.Repository.OperatorRepo import OperatorRepository
from app.Utils.errors import ConfigError, NumericalInstabilityError
from app.Utils.utils import check_finite, count_steps, snap_output_steps, time_grid


def explicit_operator(faces, spacing):
    """Sparse d/dx (a d/dx .) at cell centers, zero Dirichlet through ghosts u_g = -u_first."""
    diagonal = -(faces[:-1] + faces[1:])
    diagonal[0] -= faces[0]
    diagonal[-1] -= faces[-1]
    inner = faces[1:-1]
    return sparse.diags([inner, diagonal, inner], [-1, 0, 1], format='csr') / (spacing * spacing)


class SolverController:
    def __init__(self, spec, cfg, hom=None, callback=None):
        self.spec = spec
        self.cfg = cfg
        self.xmesh = make_spatial_mesh(cfg.n_x)
        self.ymesh = make_cell_mesh(cfg.n_y)
        self.dt = cfg.dt
        self.hom = hom
        self.callback = callback
        self._operators = None
        self._check_cfl()

    def _check_cfl(self):
        limit = 1.0 / (2.0 * self.spec.coefficient.a_max)
        if self.cfg.dt_factor > limit * (1.0 + 1e-12):
            raise ConfigError(f'dt_factor={self.cfg.dt_factor} exceeds the explicit stability bound '
                              f'1/(2 a_max) = {limit:.6g}')

    def _require(self, scheme):
        if self.cfg.scheme != scheme:
            raise ConfigError(f'run_{scheme} called with a {self.cfg.scheme} configuration')

    @property
    def operators(self):
        if self._operators is None:
            tables = sample_coefficient(self.spec.coefficient, self.xmesh, self.ymesh)
            self._operators = OperatorRepository(tables)
        return self._operators

    def homogenized(self):
        if self.hom is None:
            self.hom = HomogenizationController.build_homogenized(self.spec.coefficient, self.xmesh, self.ymesh)
        return self.hom

    def _source(self, t):
        if self.spec.source is None:
            return None
        return self.spec.source_at(t, self.xmesh.centers)

    def _march(self, state, advance, label, snapshot=None):
        snapshot = snapshot or (lambda s: s)
        n_steps = count_steps(self.spec.t_end, self.dt)
        targets = snap_output_steps(self.cfg.output_times, self.dt, n_steps)
        trajectory = Trajectory(n_steps=n_steps, dt=self.dt)
        if 0 in targets:
            trajectory.record(0.0, snapshot(state))
        app.logger.info(f'{label}: N_x={self.cfg.n_x}, N_y={self.cfg.n_y}, eps={self.spec.epsilon:g}, '
                        f'dt={self.dt:.3e}, {n_steps} steps to T={self.spec.t_end:g}')
        steps = tqdm(time_grid(self.spec.t_end, self.dt), total=n_steps, desc=label,
                     disable=not app.config['SHOW_PROGRESS'])
        for step, t, h in steps:
            state = advance(state, step, t, h)
            t_next = self.spec.t_end if step == n_steps - 1 else t + h
            if self.callback is not None:
                self.callback(step + 1, t_next, snapshot(state))
            if step + 1 in targets or step == n_steps - 1:
                trajectory.record(t_next, snapshot(state))
        return trajectory

    def _run_explicit(self, faces, label):
        operator = explicit_operator(faces, self.xmesh.spacing)
        u = np.asarray(self.spec.initial(self.xmesh.centers), dtype=float)
        every = app.config['FINITE_CHECK_EVERY']

        def advance(values, step, t, h):
            values = values + h * (operator @ values)
            source = self._source(t)
            if source is not None:
                values = values + h * source
            if (step + 1) % every == 0:
                check_finite(values, label, step + 1, t + h)
            return values

        return self._march(u, advance, label, snapshot=MacroField)

    def run_ref(self):
        self._require('ref')
        eps = self.spec.epsilon
        minimum = app.config['REF_MIN_CELLS_PER_PERIOD'] / eps
        if self.cfg.n_x < minimum:
            app.logger.warning(f'REF mesh N_x={self.cfg.n_x} under-resolves eps={eps:g}; '
                               f'at least {int(np.ceil(minimum))} cells recommended')
        faces = self.xmesh.interfaces
        a_faces = self.spec.coefficient.check(self.spec.coefficient(faces, np.mod(faces / eps, 1.0)))
        return self._run_explicit(a_faces, 'REF')

    def run_hmm(self):
        """Homogenized macro solve; returns (u0 trajectory, u1 at T)."""
        self._require('hmm')
        hom = self.homogenized()
        trajectory = self._run_explicit(hom.a0_faces, 'HMM')
        return trajectory, HomogenizationController.corrector_u1(hom, trajectory.final)

    # EMM

    def emm_initial(self):
        F = MacroField(self.spec.initial(self.xmesh.centers))
        G = MicroField(np.zeros((self.cfg.n_x, self.cfg.n_y)))
        return EmmState(F=F, G=G, t=0.0, step=0, boundary=self.emm_boundary(F))

    def emm_boundary(self, F):
        """Dirichlet data for F and G built from the corrector of the current macro field.

        G_b = eps u1(x_b, y) and F_b = -eps u1(x_b, x_b/eps), so that the
        total trace vanishes on the diagonal. The slope in u1 is fitted over
        BOUNDARY_FIT_WIDTH, never narrower than three cells.
        """
        if self.spec.bc_mode == BcMode.DIRICHLET_HOMOGENEOUS:
            return BoundaryData()
        eps = self.spec.epsilon
        n_fit = max(3, int(round(app.config['BOUNDARY_FIT_WIDTH'] * self.cfg.n_x)))
        left, right = HomogenizationController.corrector_trace(self.homogenized(), F, n_fit=n_fit)
        right_diagonal = ReconstructController.trig_interp(right, np.mod(1.0 / eps, 1.0))
        return BoundaryData(macro_left=-eps * float(left[0]), macro_right=-eps * float(right_diagonal),
                            micro_left=eps * left, micro_right=eps * right)

    def emm_step(self, state, dt=None):
        h = self.dt if dt is None else dt
        ops = self.operators
        eps = self.spec.epsilon
        c = h / (eps * eps)
        decay = np.exp(-c)
        F, G = state.F, state.G
        boundary_F, boundary_G = state.boundary.macro(), state.boundary.micro()

        coupling = (ops.apply_B(F, boundary_F) + ops.apply_B(G, boundary_G)
                    + eps * (ops.apply_D(F, boundary_F) + ops.apply_D(G, boundary_G)))
        rhs = G + (h / eps) * ops.complement(coupling)
        if not rhs.is_zero_mean(app.config['ZERO_MEAN_TOLERANCE']):
            message = f'micro part lost its zero y-mean at step {state.step + 1}'
            app.logger.error(message)
            raise NumericalInstabilityError(message)
        # the solve shrinks the zero-mean part by ~1/c but passes the roundoff mean through
        G_new = ops.complement(ops.shifted_solve_L(rhs, c))

        diffusion_G_new = ops.project_pi(ops.apply_D(G_new, boundary_G))
        if self.cfg.macro_update == 'direct':
            F_new = (F + (h / eps) * ops.project_pi(ops.apply_B(G_new, boundary_G))
                     + h * ops.project_pi(ops.apply_D(F, boundary_F)) + h * diffusion_G_new)
        else:
            F_new = F + (h * (1.0 - decay)) * ops.apply_Dbar(F, boundary_F)
            if decay > 0.0:
                F_new = (F_new + (h * decay) * ops.project_pi(ops.apply_D(F, boundary_F))
                         + (h * decay / eps) * ops.project_pi(ops.apply_B(G, boundary_G)))
            F_new = F_new + h * diffusion_G_new
        source = self._source(state.t)
        if source is not None:
            F_new = F_new + MacroField(h * source)
        return EmmState(F=F_new, G=G_new, t=state.t + h, step=state.step + 1,
                        boundary=self.emm_boundary(F_new))

    def homogenized_step(self, F, t=0.0, dt=None):
        """One explicit step of the asymptotic model dF/dt = Dbar F + f."""
        h = self.dt if dt is None else dt
        F_new = F + h * self.operators.apply_Dbar(F, BoundaryData())
        source = self._source(t)
        if source is not None:
            F_new = F_new + MacroField(h * source)
        return F_new

    def run_emm(self):
        """Returns (final EmmState, trajectory of EmmState snapshots)."""
        self._require('emm')
        self.homogenized()

        def advance(state, step, t, h):
            return self.emm_step(state, h)

        trajectory = self._march(self.emm_initial(), advance, 'EMM')
        return trajectory.final, trajectory
