from dataclasses import dataclass

import numpy as np

from app.Models.MeshModel import CellMesh, SpatialMesh


@dataclass(frozen=True)
class HomogenizedData:
    """Effective coefficient a0 and cell corrector chi on a pair of meshes.

    ``a0`` lives at the cell centers and ``a0_faces`` at the x-interfaces;
    ``chi[i, j]`` is chi(x_i, y_j). ``chi_left``/``chi_right`` are chi at
    x=0 and x=1, where the EMM boundary data is built.
    """
    xmesh: SpatialMesh
    ymesh: CellMesh
    a0: np.ndarray
    a0_faces: np.ndarray
    chi: np.ndarray
    chi_left: np.ndarray
    chi_right: np.ndarray
