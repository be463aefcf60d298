import click

from app import app
from app.Controllers.HomogenizationController import HomogenizationController
from app.Models.MeshModel import make_cell_mesh
from app.Models.Payloads import parse_coefficient
from app.Utils.utils import exit_on_error, write_csv


@app.cli.command('cell')
@click.option('--coeff', default='paper', show_default=True, help="'paper' or 'constant:<value>'")
@click.option('--ny', default=256, show_default=True, type=int)
@click.option('--x', 'x', default=0.5, show_default=True, type=float, help='macro abscissa of the cell')
@click.option('--out', default=None, type=click.Path(dir_okay=False), help='CSV file for y,chi')
@exit_on_error
def cell_command(coeff, ny, x, out):
    """Print a0 and the cell corrector chi at one x."""
    a = parse_coefficient(coeff)
    ymesh = make_cell_mesh(ny)
    a0 = HomogenizationController.harmonic_a0(a, x, ymesh)
    chi = HomogenizationController.solve_cell_problem(a, x, ymesh)
    click.echo(f'a0={a0:.17g}')
    if out is not None:
        write_csv(out, {'y': ymesh.nodes, 'chi': chi})
        click.echo(f'chi written to {out}')
