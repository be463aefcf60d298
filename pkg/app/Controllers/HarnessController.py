"""
Experiment orchestration: the three-regime comparison, the AP degeneracy
sweep and convergence studies. Results are CSV files plus pydantic reports.
"""

import os
import time

import numpy as np
import pandas as pd
from joblib import Parallel, delayed

from app import app
from app.Controllers.HomogenizationController import HomogenizationController
from app.Controllers.ReconstructController import ReconstructController
from app.Controllers.SolverController import SolverController
from app.Models.FieldModel import BoundaryData
from app.Models.MeshModel import make_cell_mesh, make_spatial_mesh
from app.Models.Payloads import make_solver_config
from app.Models.ProblemModel import BcMode, ProblemSpec, constant_coefficient, paper_coefficient, paper_problem
from app.Models.ReportModel import ConvergenceResult, ErrorNorms, RegimeRecord, RunReport
from app.Utils.errors import ConfigError
from app.Utils.utils import write_csv

# a0 of the benchmark coefficient: 1 / mean(1 / (1.1 + sin 2 pi y)) = sqrt(1.1**2 - 1)
BENCHMARK_A0 = np.sqrt(0.21)


def error_norms(u, v, mesh):
    if u.values.shape != v.values.shape or u.n_x != mesh.n_cells:
        raise ValueError(f'error_norms needs fields on the same mesh, got {u.values.shape} and {v.values.shape} '
                         f'on {mesh.n_cells} cells')
    difference = u.values - v.values
    return ErrorNorms(l_inf=float(np.max(np.abs(difference))),
                      l2=float(np.sqrt(mesh.spacing * np.sum(difference * difference))))


def reference_cells(epsilon, full_scale=False):
    """REF mesh size: 1024/4096 at full scale, else 1024 cells refined to keep >= 20 cells per period."""
    if full_scale:
        return 1024 if epsilon >= 0.1 else 4096
    resolved = 2 ** int(np.ceil(np.log2(app.config['REF_CELLS_PER_PERIOD'] / epsilon)))
    return max(app.config['REF_NX'], resolved)


def eps_label(epsilon):
    return f'{epsilon:g}'


def run_regime(epsilon, t_end, out_dir, full_scale=False, bc_mode=None):
    spec = paper_problem(epsilon, t_end=t_end, bc_mode=bc_mode or BcMode.DIRICHLET_CORRECTOR)
    n_x, n_y = app.config['EMM_NX'], app.config['EMM_NY']
    n_ref = reference_cells(epsilon, full_scale)
    wall_time = {}

    started = time.perf_counter()
    ref_cfg = make_solver_config(scheme='ref', n_x=n_ref, n_y=n_y, t_end=t_end, epsilon=epsilon)
    u_ref = SolverController(spec, ref_cfg).run_ref().final
    wall_time['ref'] = time.perf_counter() - started

    hom = HomogenizationController.build_homogenized(spec.coefficient, make_spatial_mesh(n_x), make_cell_mesh(n_y))

    started = time.perf_counter()
    emm_cfg = make_solver_config(scheme='emm', n_x=n_x, n_y=n_y, t_end=t_end, epsilon=epsilon)
    state, _ = SolverController(spec, emm_cfg, hom).run_emm()
    wall_time['emm'] = time.perf_counter() - started

    started = time.perf_counter()
    hmm_cfg = make_solver_config(scheme='hmm', n_x=n_x, n_y=n_y, t_end=t_end, epsilon=epsilon)
    trajectory, u1 = SolverController(spec, hmm_cfg, hom).run_hmm()
    wall_time['hmm'] = time.perf_counter() - started

    fine = make_spatial_mesh(n_ref)
    u_emm = ReconstructController.reconstruct_solution(state.F, state.G, epsilon, fine, state.boundary)
    trace_left, trace_right = HomogenizationController.corrector_trace(hom, trajectory.final)
    u_hmm = ReconstructController.reconstruct_hmm(
        trajectory.final, u1, epsilon, fine,
        BoundaryData(micro_left=epsilon * trace_left, micro_right=epsilon * trace_right))
    du_ref, du_emm, du_hmm = (ReconstructController.derivative_on_fine(u) for u in (u_ref, u_emm, u_hmm))

    csv_path = None
    if out_dir is not None:
        csv_path = os.path.join(out_dir, f'figure1_eps{eps_label(epsilon)}.csv')
        write_csv(csv_path, {'x': fine.centers, 'u_ref': u_ref.values, 'u_emm': u_emm.values,
                             'u_hmm': u_hmm.values, 'du_ref': du_ref.values, 'du_emm': du_emm.values,
                             'du_hmm': du_hmm.values})

    record = RegimeRecord(epsilon=epsilon, t_end=t_end, n_x_ref=n_ref, n_x=n_x, n_y=n_y,
                          emm_u=error_norms(u_emm, u_ref, fine), emm_du=error_norms(du_emm, du_ref, fine),
                          hmm_u=error_norms(u_hmm, u_ref, fine), hmm_du=error_norms(du_hmm, du_ref, fine),
                          ref_u_max=float(np.max(np.abs(u_ref.values))),
                          ref_du_max=float(np.max(np.abs(du_ref.values))),
                          wall_time=wall_time, csv_path=csv_path)
    app.logger.info(f'eps={eps_label(epsilon)}: EMM rel err {record.emm_u_rel:.3e}, HMM rel err '
                    f'{record.hmm_u_rel:.3e}, wall times {", ".join(f"{k}={v:.1f}s" for k, v in wall_time.items())}')
    return record


def figure1_experiment(eps_list, out_dir, t_end=None, full_scale=False, n_jobs=None):
    """Compare EMM and HMM against REF for each epsilon; records come back in eps_list order."""
    eps_list = list(eps_list)
    report = RunReport()
    if not eps_list:
        return report
    t_end = app.config['FIGURE1_T_END'] if t_end is None else t_end
    n_jobs = app.config['N_JOBS'] if n_jobs is None else n_jobs
    os.makedirs(out_dir, exist_ok=True)
    summary_path = os.path.join(out_dir, 'figure1_summary.csv')

    try:
        runs = Parallel(n_jobs=n_jobs, return_as='generator')(
            delayed(run_regime)(eps, t_end, out_dir, full_scale) for eps in eps_list)
        for record in runs:
            report.records.append(record)
    except Exception as e:
        app.logger.error(f"Error in figure1_experiment after {len(report.records)} regimes: {str(e)}")
        raise
    finally:
        if report.records:
            write_csv(summary_path, pd.DataFrame([r.summary_row() for r in report.records]))
            report.summary_path = summary_path
    return report


def ap_degeneracy_study(epsilons=None, steps=None, n_x=None, n_y=None, out_path=None):
    """max|F_EMM - F_hom| after a fixed number of steps, per epsilon, on one grid and dt."""
    epsilons = app.config['AP_STUDY_EPSILONS'] if epsilons is None else epsilons
    steps = app.config['AP_STUDY_STEPS'] if steps is None else steps
    n_x = app.config['EMM_NX'] if n_x is None else n_x
    n_y = app.config['EMM_NY'] if n_y is None else n_y
    xmesh, ymesh = make_spatial_mesh(n_x), make_cell_mesh(n_y)
    hom = HomogenizationController.build_homogenized(paper_coefficient(), xmesh, ymesh)

    deviations = []
    for epsilon in epsilons:
        cfg = make_solver_config(scheme='emm', n_x=n_x, n_y=n_y, epsilon=epsilon,
                                 t_end=steps * app.config['MACRO_DT_FACTOR'] / n_x ** 2)
        spec = paper_problem(epsilon, t_end=cfg.t_end)
        solver = SolverController(spec, cfg, hom)
        state = solver.emm_initial()
        F_hom = state.F
        for step in range(steps):
            F_hom = solver.homogenized_step(F_hom, step * solver.dt)
            state = solver.emm_step(state)
        deviation = float(np.max(np.abs(state.F.values - F_hom.values)))
        app.logger.info(f'AP study eps={epsilon:g}: deviation {deviation:.3e} after {steps} steps')
        deviations.append(deviation)

    frame = pd.DataFrame({'epsilon': list(epsilons), 'deviation': deviations})
    if out_path is not None:
        os.makedirs(os.path.dirname(out_path) or '.', exist_ok=True)
        write_csv(out_path, frame)
    return frame


def _fit_order(steps, errors):
    slope, _ = np.polyfit(np.log(steps), np.log(errors), 1)
    return float(slope)


def _ref_heat_errors(levels):
    t_end = 0.1
    problem = ProblemSpec(coefficient=constant_coefficient(1.0), initial=lambda x: np.sin(np.pi * x),
                          epsilon=1.0, t_end=t_end)
    spacings, errors = [], []
    for level in range(levels):
        n_x = 16 * 2 ** level
        cfg = make_solver_config(scheme='ref', n_x=n_x, t_end=t_end, epsilon=1.0)
        solver = SolverController(problem, cfg)
        u = solver.run_ref().final
        exact = np.exp(-np.pi ** 2 * t_end) * np.sin(np.pi * solver.xmesh.centers)
        spacings.append(solver.xmesh.spacing)
        errors.append(float(np.max(np.abs(u.values - exact))))
    return spacings, errors


def _hmm_errors(levels):
    t_end = 0.02
    problem = paper_problem(1.0, t_end=t_end)
    spacings, errors = [], []
    for level in range(levels):
        n_x = 16 * 2 ** level
        # a0 quadrature error decays like 0.64**N_y; 64 points put it at roundoff
        cfg = make_solver_config(scheme='hmm', n_x=n_x, n_y=64, t_end=t_end, epsilon=1.0)
        solver = SolverController(problem, cfg)
        trajectory, _ = solver.run_hmm()
        exact = np.exp(-BENCHMARK_A0 * 4.0 * np.pi ** 2 * t_end) * np.sin(2.0 * np.pi * solver.xmesh.centers)
        spacings.append(solver.xmesh.spacing)
        errors.append(float(np.max(np.abs(trajectory.final.values - exact))))
    return spacings, errors


def _emm_self_convergence(levels):
    epsilon, t_end = 0.5, 1.0 / 64.0
    problem = paper_problem(epsilon, t_end=t_end)
    finals, dts = [], []
    for level in range(levels + 1):
        cfg = make_solver_config(scheme='emm', n_x=32, n_y=16, t_end=t_end, epsilon=epsilon,
                                 dt_factor=app.config['MACRO_DT_FACTOR'] / 2 ** level)
        state, _ = SolverController(problem, cfg).run_emm()
        finals.append(state.F.values)
        dts.append(cfg.dt)
    errors = [float(np.max(np.abs(finals[k] - finals[k + 1]))) for k in range(levels)]
    return dts[:levels], errors


def convergence_study(scheme, levels=3):
    if levels < 3:
        raise ConfigError(f'convergence_study needs at least 3 refinement levels, got {levels}')
    if scheme == 'ref':
        variable, (steps, errors) = 'dx', _ref_heat_errors(levels)
    elif scheme == 'hmm':
        variable, (steps, errors) = 'dx', _hmm_errors(levels)
    elif scheme == 'emm':
        variable, (steps, errors) = 'dt', _emm_self_convergence(levels)
    else:
        raise ConfigError(f"unknown scheme {scheme!r}, expected one of 'ref', 'hmm', 'emm'")
    order = _fit_order(steps, errors)
    app.logger.info(f'{scheme} convergence in {variable}: errors {errors}, order {order:.3f}')
    return ConvergenceResult(scheme=scheme, variable=variable, steps=steps, errors=errors, order=order)


def boundary_layer_study(epsilon=0.1, t_end=None, boundary_cells=4):
    """EMM-vs-REF error near x=0,1 and in the interior, with and without corrector boundary data.

    Returns a frame indexed by bc mode with columns boundary_error and
    interior_error; the boundary region is the first and last
    ``boundary_cells`` coarse cells.
    """
    t_end = app.config['FIGURE1_T_END'] if t_end is None else t_end
    n_x, n_y = app.config['EMM_NX'], app.config['EMM_NY']
    n_ref = reference_cells(epsilon)
    fine = make_spatial_mesh(n_ref)
    ref_spec = paper_problem(epsilon, t_end=t_end)
    ref_cfg = make_solver_config(scheme='ref', n_x=n_ref, n_y=n_y, t_end=t_end, epsilon=epsilon)
    u_ref = SolverController(ref_spec, ref_cfg).run_ref().final

    width = boundary_cells / n_x
    near = (fine.centers < width) | (fine.centers > 1.0 - width)
    rows = []
    for mode in (BcMode.DIRICHLET_HOMOGENEOUS, BcMode.DIRICHLET_CORRECTOR):
        spec = paper_problem(epsilon, t_end=t_end, bc_mode=mode)
        cfg = make_solver_config(scheme='emm', n_x=n_x, n_y=n_y, t_end=t_end, epsilon=epsilon)
        state, _ = SolverController(spec, cfg).run_emm()
        u_emm = ReconstructController.reconstruct_solution(state.F, state.G, epsilon, fine, state.boundary)
        error = np.abs(u_emm.values - u_ref.values)
        rows.append({'bc': mode.value, 'boundary_error': float(error[near].max()),
                     'interior_error': float(error[~near].max())})
        app.logger.info(f'boundary layer {mode.value}: near {rows[-1]["boundary_error"]:.3e}, '
                        f'interior {rows[-1]["interior_error"]:.3e}')
    return pd.DataFrame(rows).set_index('bc')
