import numpy as np
import pytest

from app.Controllers.HomogenizationController import HomogenizationController
from app.Models.FieldModel import MacroField, MicroField
from app.Models.MeshModel import make_cell_mesh, make_spatial_mesh
from app.Models.ProblemModel import DiffusionField, constant_coefficient, paper_coefficient, sample_coefficient
from app.Repository.OperatorRepo import OperatorRepository
from app.Utils.utils import boundary_slopes, fitted_boundary_slopes

BENCHMARK_A0 = 0.4582575695


@pytest.mark.parametrize('c', [1.0, 0.3, 7.0])
def test_harmonic_a0_constant(c):
    assert HomogenizationController.harmonic_a0(constant_coefficient(c), 0.4, make_cell_mesh(16)) == \
        pytest.approx(c, rel=1e-14)


def test_harmonic_a0_paper_coefficient():
    a0 = HomogenizationController.harmonic_a0(paper_coefficient(), 0.3, make_cell_mesh(256))
    assert a0 == pytest.approx(np.sqrt(0.21), abs=1e-10)
    assert a0 == pytest.approx(BENCHMARK_A0, abs=1e-10)


def test_harmonic_a0_cosine_coefficient():
    a = DiffusionField(lambda x, y: 2.0 + np.cos(2 * np.pi * y), a_min=1.0, a_max=3.0)
    assert HomogenizationController.harmonic_a0(a, 0.0, make_cell_mesh(256)) == pytest.approx(np.sqrt(3.0), abs=1e-10)


def test_harmonic_a0_between_harmonic_and_arithmetic_means():
    a = paper_coefficient()
    ymesh = make_cell_mesh(64)
    samples = a(np.zeros(64), ymesh.half_nodes)
    a0 = HomogenizationController.harmonic_a0(a, 0.0, ymesh)
    assert 1.0 / np.mean(1.0 / samples) <= a0 * (1 + 1e-15)
    assert a0 <= samples.mean()


def test_cell_problem_constant_coefficient():
    np.testing.assert_array_equal(HomogenizationController.solve_cell_problem(
        constant_coefficient(1.0), 0.5, make_cell_mesh(16)), np.zeros(16))
    chi = HomogenizationController.solve_cell_problem(constant_coefficient(3.0), 0.5, make_cell_mesh(16))
    assert np.abs(chi).max() <= 1e-14


def test_cell_problem_zero_mean():
    chi = HomogenizationController.solve_cell_problem(paper_coefficient(), 0.5, make_cell_mesh(64))
    assert abs(chi.mean()) <= 1e-12
    assert np.abs(chi).max() > 0.01


def test_cell_problem_matches_generic_elliptic_solve():
    a = paper_coefficient()
    ymesh = make_cell_mesh(256)
    tables = sample_coefficient(a, make_spatial_mesh(4), ymesh)
    ops = OperatorRepository(tables)
    # L chi = -d/dy a, with the same half-node fluxes
    rhs = -(tables.y_faces - np.roll(tables.y_faces, 1, axis=1)) / ymesh.spacing
    oracle = ops.solve_L(MicroField(rhs)).values
    for i, x in enumerate(tables.xmesh.centers):
        chi = HomogenizationController.solve_cell_problem(a, x, ymesh)
        np.testing.assert_allclose(chi, oracle[i], rtol=0, atol=1e-8)


def test_build_homogenized_constant():
    hom = HomogenizationController.build_homogenized(constant_coefficient(1.0), make_spatial_mesh(8), make_cell_mesh(8))
    np.testing.assert_array_equal(hom.a0, np.ones(8))
    np.testing.assert_array_equal(hom.a0_faces, np.ones(9))
    np.testing.assert_array_equal(hom.chi, np.zeros((8, 8)))


def test_build_homogenized_paper_coefficient():
    a = paper_coefficient()
    xmesh, ymesh = make_spatial_mesh(16), make_cell_mesh(256)
    hom = HomogenizationController.build_homogenized(a, xmesh, ymesh)
    assert np.all(hom.a0 == hom.a0[0])
    for i, x in enumerate(xmesh.centers):
        assert hom.a0[i] == HomogenizationController.harmonic_a0(a, x, ymesh)
    np.testing.assert_allclose(hom.a0, BENCHMARK_A0, atol=1e-10)
    assert np.abs(hom.chi.mean(axis=1)).max() <= 1e-12
    np.testing.assert_array_equal(hom.chi_left, hom.chi[0])


def test_corrector_u1():
    a = paper_coefficient()
    xmesh, ymesh = make_spatial_mesh(32), make_cell_mesh(16)
    hom = HomogenizationController.build_homogenized(a, xmesh, ymesh)
    flat = HomogenizationController.corrector_u1(hom, MacroField(np.full(32, 0.7)))
    assert np.abs(flat.values).max() <= 1e-12
    u1 = HomogenizationController.corrector_u1(hom, MacroField(np.sin(2 * np.pi * xmesh.centers)))
    assert u1.shape == (32, 16)
    assert np.abs(u1.y_mean()).max() <= 1e-12


def test_corrector_u1_vanishes_without_oscillation():
    hom = HomogenizationController.build_homogenized(constant_coefficient(1.0), make_spatial_mesh(8), make_cell_mesh(8))
    u1 = HomogenizationController.corrector_u1(hom, MacroField(np.linspace(0, 1, 8) ** 2))
    np.testing.assert_array_equal(u1.values, 0.0)


def test_corrector_trace_uses_boundary_slope():
    xmesh, ymesh = make_spatial_mesh(16), make_cell_mesh(16)
    hom = HomogenizationController.build_homogenized(paper_coefficient(), xmesh, ymesh)
    # slope extrapolation is exact on quadratics: d/dx (x - x^2) is 1 at x=0 and -1 at x=1
    left, right = HomogenizationController.corrector_trace(hom, MacroField(xmesh.centers - xmesh.centers ** 2))
    np.testing.assert_allclose(left, hom.chi_left, atol=1e-12)
    np.testing.assert_allclose(right, -hom.chi_right, atol=1e-12)


def test_corrector_trace_with_fitted_slope():
    xmesh, ymesh = make_spatial_mesh(16), make_cell_mesh(16)
    hom = HomogenizationController.build_homogenized(paper_coefficient(), xmesh, ymesh)
    line = MacroField(0.3 - 2.0 * xmesh.centers)
    left, right = HomogenizationController.corrector_trace(hom, line, n_fit=4)
    np.testing.assert_allclose(left, -2.0 * hom.chi_left, atol=1e-12)
    np.testing.assert_allclose(right, -2.0 * hom.chi_right, atol=1e-12)


def test_fitted_slope_damps_a_boundary_spike():
    spacing = 1.0 / 64
    spike = np.zeros(64)
    spike[0] = 1.0
    local, _ = boundary_slopes(spike, spacing)
    fitted, _ = fitted_boundary_slopes(spike, spacing, 16)
    assert abs(local) == pytest.approx(2.0 / spacing)
    assert abs(fitted) <= 0.05 * abs(local)
