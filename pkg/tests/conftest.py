import numpy as np
import pytest

from app.Models.MeshModel import make_cell_mesh, make_spatial_mesh
from app.Models.ProblemModel import constant_coefficient, paper_coefficient, sample_coefficient
from app.Repository.OperatorRepo import OperatorRepository


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def make_operators():
    def build(n_x=16, n_y=16, coefficient=None):
        coefficient = coefficient or paper_coefficient()
        tables = sample_coefficient(coefficient, make_spatial_mesh(n_x), make_cell_mesh(n_y))
        return OperatorRepository(tables)
    return build


@pytest.fixture
def benchmark_operators(make_operators):
    return make_operators()


@pytest.fixture
def unit_operators(make_operators):
    return make_operators(coefficient=constant_coefficient(1.0))
