import functools

import click
import numpy as np
import pandas as pd

from app import app
from app.Utils.errors import ApmmError, NumericalInstabilityError


def centered_gradient(values, spacing, left=None, right=None):
    """d/dx along axis 0 at cell centers, second order everywhere.

    Without boundary values the end cells use one-sided three-point stencils.
    With them, the end cells use the boundary trace half a cell away:
    (-4 u_b + 3 u_0 + u_1) / (3 dx) on the left, mirrored on the right.
    """
    values = np.asarray(values, dtype=float)
    gradient = np.gradient(values, spacing, axis=0, edge_order=2)
    if left is not None:
        gradient[0] = (-4.0 * left + 3.0 * values[0] + values[1]) / (3.0 * spacing)
    if right is not None:
        gradient[-1] = (4.0 * right - 3.0 * values[-1] - values[-2]) / (3.0 * spacing)
    return gradient


def boundary_slopes(values, spacing):
    """d/dx extrapolated to x=0 and x=1 from the first/last three cell centers."""
    values = np.asarray(values, dtype=float)
    left = (-2.0 * values[0] + 3.0 * values[1] - values[2]) / spacing
    right = (2.0 * values[-1] - 3.0 * values[-2] + values[-3]) / spacing
    return left, right


def fitted_boundary_slopes(values, spacing, n_fit):
    """d/dx at both ends from least-squares lines through the first/last n_fit cell centers.

    A boundary cell enters with weight O(1/(n_fit dx)) instead of O(1/dx).
    """
    values = np.asarray(values, dtype=float)
    n_fit = int(min(max(n_fit, 2), values.shape[0]))
    offsets = (np.arange(n_fit) - 0.5 * (n_fit - 1)) * spacing
    weights = offsets / np.sum(offsets * offsets)
    return float(weights @ values[:n_fit]), float(weights @ values[-n_fit:])


def check_finite(values, what, step=None, t=None):
    if np.all(np.isfinite(values)):
        return values
    where = '' if step is None else f' at step {step} (t={t:.6g})'
    message = f'{what} produced NaN/Inf{where}; reduce dt_factor or check the CFL bound dt <= dx^2 / (2 a_max)'
    app.logger.error(message)
    raise NumericalInstabilityError(message)


def write_csv(path, columns):
    """Write a header row then the columns in the given order, floats at 17 significant digits."""
    frame = pd.DataFrame(columns)
    frame.to_csv(path, index=False, float_format=app.config['CSV_FLOAT_FORMAT'], lineterminator='\n')
    return path


def write_key_values(path, values):
    with open(path, 'w', newline='\n') as handle:
        for key, value in values.items():
            handle.write(f'{key}={value}\n')
    return path


def count_steps(t_end, dt):
    # relative slack absorbs roundoff in t_end / dt
    return max(1, int(np.ceil(t_end / dt * (1.0 - 1e-12))))


def time_grid(t_end, dt):
    """Yield (step, t, h) with t = step*dt; the last h is shortened to land on t_end."""
    n_steps = count_steps(t_end, dt)
    for step in range(n_steps - 1):
        yield step, step * dt, dt
    last = n_steps - 1
    yield last, last * dt, t_end - last * dt


def snap_output_steps(times, dt, n_steps):
    """Completed step index nearest to each requested time."""
    return {min(n_steps, int(round(t / dt))) for t in times}


def exit_on_error(command):
    """Turn solver failures into a one-line message and the matching exit code."""
    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except ApmmError as e:
            app.logger.error(f"Error in {command.__name__}: {str(e)}")
            click.echo(f'error: {e}', err=True)
            raise click.exceptions.Exit(e.exit_code)
    return wrapper
