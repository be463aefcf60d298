from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional

import numpy as np

from app.Models.MeshModel import CellMesh, SpatialMesh
from app.Utils.errors import ConfigError, EllipticityError

BOUNDARY_COMPATIBILITY_TOLERANCE = 1e-12
PERIODICITY_TOLERANCE = 1e-14
# relative slack allowed on the declared ellipticity bounds
BOUNDS_SLACK = 1e-12


class BcMode(str, Enum):
    DIRICHLET_CORRECTOR = 'dirichlet_corrector'
    DIRICHLET_HOMOGENEOUS = 'dirichlet_homogeneous'


@dataclass(frozen=True)
class DiffusionField:
    """Coefficient a(x, y), 1-periodic in y, with declared bounds a_min <= a <= a_max."""
    evaluator: Callable
    a_min: float
    a_max: float
    name: str = 'custom'

    def __call__(self, x, y):
        x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
        return np.asarray(self.evaluator(x, y), dtype=float) * np.ones_like(x)

    def check(self, samples):
        samples = np.asarray(samples)
        if not np.all(np.isfinite(samples)) or np.any(samples <= 0.0):
            raise EllipticityError(f'Coefficient {self.name} is not positive on the sampled points')
        slack = BOUNDS_SLACK * self.a_max
        low, high = samples.min(), samples.max()
        if low < self.a_min - slack or high > self.a_max + slack:
            raise EllipticityError(
                f'Coefficient {self.name} sampled in [{low}, {high}] outside declared bounds '
                f'[{self.a_min}, {self.a_max}]')
        return samples


def paper_coefficient():
    """a(x, y) = 1.1 + sin(2 pi y) on the unit cell."""
    return DiffusionField(lambda x, y: 1.1 + np.sin(2.0 * np.pi * y), a_min=0.1, a_max=2.1, name='paper')


def constant_coefficient(value):
    if not value > 0.0:
        raise EllipticityError(f'Constant coefficient must be positive, got {value}')
    return DiffusionField(lambda x, y: np.full(np.shape(x), float(value)), a_min=value, a_max=value,
                          name=f'constant:{value}')


@dataclass(frozen=True)
class ProblemSpec:
    coefficient: DiffusionField
    initial: Callable
    epsilon: float
    t_end: float = 1.0
    bc_mode: BcMode = BcMode.DIRICHLET_CORRECTOR
    # None stands for f = 0 and lets the solvers skip the source entirely
    source: Optional[Callable] = None

    def __post_init__(self):
        if not 0.0 < self.epsilon <= 1.0:
            raise ConfigError(f'epsilon must lie in (0, 1], got {self.epsilon}')
        if not self.t_end > 0.0:
            raise ConfigError(f't_end must be positive, got {self.t_end}')
        object.__setattr__(self, 'bc_mode', BcMode(self.bc_mode))
        ends = np.asarray(self.initial(np.array([0.0, 1.0])), dtype=float)
        if np.max(np.abs(ends)) > BOUNDARY_COMPATIBILITY_TOLERANCE:
            raise ConfigError(f'Initial data must vanish at x=0 and x=1, got {ends.tolist()}')
        y = np.linspace(0.0, 1.0, 9)
        gap = self.coefficient(y, np.zeros_like(y)) - self.coefficient(y, np.ones_like(y))
        if np.max(np.abs(gap)) > PERIODICITY_TOLERANCE:
            raise ConfigError(f'Coefficient {self.coefficient.name} is not 1-periodic in y')

    def source_at(self, t, x):
        if self.source is None:
            return np.zeros_like(x)
        return np.asarray(self.source(t, x), dtype=float) * np.ones_like(x)


def paper_problem(epsilon, t_end=1.0, bc_mode=BcMode.DIRICHLET_CORRECTOR):
    """f = 0, g(x) = sin(2 pi x) with the oscillating benchmark coefficient."""
    return ProblemSpec(coefficient=paper_coefficient(),
                       initial=lambda x: np.sin(2.0 * np.pi * x),
                       epsilon=epsilon, t_end=t_end, bc_mode=bc_mode)


@dataclass(frozen=True)
class CoefficientTables:
    """a sampled at (x_i, y_j), at x-interfaces (x_{i-1/2}, y_j) and at y-interfaces (x_i, y_{j+1/2})."""
    xmesh: SpatialMesh
    ymesh: CellMesh
    center: np.ndarray
    x_faces: np.ndarray
    y_faces: np.ndarray = field(repr=False)

    @property
    def shape(self):
        return self.xmesh.n_cells, self.ymesh.n_points


def sample_coefficient(a, xmesh, ymesh):
    x, xf, y, yh = xmesh.centers, xmesh.interfaces, ymesh.nodes, ymesh.half_nodes
    center = a.check(a(x[:, None], y[None, :]))
    x_faces = a.check(a(xf[:, None], y[None, :]))
    y_faces = a.check(a(x[:, None], yh[None, :]))
    for table in (center, x_faces, y_faces):
        table.flags.writeable = False
    return CoefficientTables(xmesh, ymesh, center, x_faces, y_faces)
