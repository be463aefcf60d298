import os

import click
import numpy as np

from app import app
from app.Controllers.SolverController import SolverController
from app.Models.Payloads import load_run_config
from app.Utils.utils import exit_on_error, write_csv, write_key_values


@app.cli.command('run')
@click.option('--config', 'config_path', required=True, type=click.Path(dir_okay=False),
              help='key=value run file')
@exit_on_error
def run_command(config_path):
    """Run one solver and write <output>_F.csv, <output>_G.csv and <output>_meta.txt."""
    run_cfg = load_run_config(config_path)
    cfg = run_cfg.solver_config()
    solver = SolverController(run_cfg.problem(), cfg)
    prefix = run_cfg.output
    directory = os.path.dirname(prefix)
    if directory:
        os.makedirs(directory, exist_ok=True)

    G = None
    if cfg.scheme == 'ref':
        trajectory = solver.run_ref()
        F = trajectory.final
    elif cfg.scheme == 'hmm':
        trajectory, u1 = solver.run_hmm()
        F, G = trajectory.final, run_cfg.epsilon * u1
    else:
        state, trajectory = solver.run_emm()
        F, G = state.F, state.G

    write_csv(f'{prefix}_F.csv', {'x': solver.xmesh.centers, 'F': F.values})
    if G is not None:
        x, y = np.meshgrid(solver.xmesh.centers, solver.ymesh.nodes, indexing='ij')
        write_csv(f'{prefix}_G.csv', {'x': x.ravel(), 'y': y.ravel(), 'G': G.values.ravel()})
    meta = run_cfg.model_dump(mode='json')
    meta.update(dt_factor=cfg.dt_factor, dt=cfg.dt, n_steps=trajectory.n_steps)
    write_key_values(f'{prefix}_meta.txt', meta)
    click.echo(f'{cfg.scheme}: {trajectory.n_steps} steps to T={run_cfg.t_end:g}, max|F|={np.max(np.abs(F.values)):.6g}')
