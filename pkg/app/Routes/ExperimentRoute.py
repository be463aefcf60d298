import os

import click

from app import app
from app.Controllers.HarnessController import ap_degeneracy_study, convergence_study, figure1_experiment
from app.Utils.utils import exit_on_error, write_csv


@app.cli.command('figure1')
@click.option('--t-end', 't_end', default=None, type=float, help='horizon T, default FIGURE1_T_END')
@click.option('--out', default=None, type=click.Path(file_okay=False), help='output directory')
@click.option('--eps', 'eps_list', multiple=True, type=float, help='repeatable; default 1, 0.1, 0.01')
@click.option('--long-horizon', is_flag=True, help='T=1 with REF meshes 1024 (eps >= 0.1) and 4096')
@click.option('--jobs', default=None, type=int, help='parallel regimes, default N_JOBS')
@exit_on_error
def figure1_command(t_end, out, eps_list, long_horizon, jobs):
    """Compare EMM and HMM against REF for each epsilon."""
    eps_list = eps_list or app.config['FIGURE1_EPSILONS']
    if t_end is None and long_horizon:
        t_end = app.config['LONG_T_END']
    report = figure1_experiment(eps_list, out or app.config['OUTPUT_DIR'], t_end=t_end,
                                full_scale=long_horizon, n_jobs=jobs)
    for record in report.records:
        click.echo(f'eps={record.epsilon:g}: EMM {record.emm_u_rel:.3e} (du {record.emm_du_rel:.3e}), '
                   f'HMM {record.hmm_u_rel:.3e} (du {record.hmm_du_rel:.3e})')
    if report.summary_path:
        click.echo(f'summary written to {report.summary_path}')


@app.cli.command('ap-study')
@click.option('--steps', default=None, type=int, help='steps per epsilon, default AP_STUDY_STEPS')
@click.option('--out', default=None, type=click.Path(dir_okay=False), help='CSV file, default <OUTPUT_DIR>/ap_study.csv')
@exit_on_error
def ap_study_command(steps, out):
    """Deviation of EMM from the homogenized scheme as epsilon goes to 0."""
    out = out or os.path.join(app.config['OUTPUT_DIR'], 'ap_study.csv')
    frame = ap_degeneracy_study(steps=steps, out_path=out)
    for epsilon, deviation in zip(frame['epsilon'], frame['deviation']):
        click.echo(f'eps={epsilon:g}: {deviation:.3e}')


@app.cli.command('converge')
@click.option('--scheme', required=True, type=click.Choice(['ref', 'hmm', 'emm']))
@click.option('--levels', default=3, show_default=True, type=int)
@click.option('--out', default=None, type=click.Path(dir_okay=False), help='optional CSV of step,error')
@exit_on_error
def converge_command(scheme, levels, out):
    """Measured convergence order of one scheme."""
    result = convergence_study(scheme, levels)
    if out is not None:
        write_csv(out, {result.variable: result.steps, 'error': result.errors})
    click.echo(f'{scheme}: order {result.order:.3f} in {result.variable}')
