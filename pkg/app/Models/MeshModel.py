from dataclasses import dataclass

import numpy as np

from app.Utils.errors import MeshError

MIN_SPATIAL_CELLS = 4
MIN_CELL_POINTS = 4


@dataclass(frozen=True)
class SpatialMesh:
    """Uniform cell-centered mesh of the macro domain (0, 1), Dirichlet at both ends."""
    n_cells: int

    @property
    def spacing(self):
        return 1.0 / self.n_cells

    @property
    def centers(self):
        return (np.arange(self.n_cells) + 0.5) / self.n_cells

    @property
    def interfaces(self):
        return np.arange(self.n_cells + 1) / self.n_cells

    @property
    def widths(self):
        return np.diff(self.interfaces)


@dataclass(frozen=True)
class CellMesh:
    """Uniform periodic nodes of the unit cell; index N_y wraps to 0."""
    n_points: int

    @property
    def spacing(self):
        return 1.0 / self.n_points

    @property
    def nodes(self):
        return np.arange(self.n_points) / self.n_points

    @property
    def half_nodes(self):
        # half_nodes[j] sits between nodes j and j+1 (mod N_y)
        return (np.arange(self.n_points) + 0.5) / self.n_points

    def wrap(self, index):
        return np.mod(index, self.n_points)


def make_spatial_mesh(n_cells):
    if int(n_cells) != n_cells or n_cells < MIN_SPATIAL_CELLS:
        raise MeshError(f'Spatial mesh needs an integer number of cells >= {MIN_SPATIAL_CELLS}, got {n_cells}')
    return SpatialMesh(int(n_cells))


def make_cell_mesh(n_points):
    if int(n_points) != n_points or n_points < MIN_CELL_POINTS or n_points % 2:
        raise MeshError(f'Cell mesh needs an even number of points >= {MIN_CELL_POINTS}, got {n_points}')
    return CellMesh(int(n_points))


def refine(mesh, factor):
    if int(factor) != factor or factor < 1:
        raise MeshError(f'Refinement factor must be a positive integer, got {factor}')
    if factor == 1:
        return mesh
    return SpatialMesh(mesh.n_cells * int(factor))
