import numpy as np
import pytest

from app.Controllers.ReconstructController import ReconstructController
from app.Models.FieldModel import BoundaryData, MacroField, MicroField
from app.Models.MeshModel import make_spatial_mesh


def test_trig_interp_reproduces_samples():
    y = np.arange(16) / 16
    samples = 1.0 + np.cos(2 * np.pi * y) - 0.5 * np.sin(6 * np.pi * y)
    np.testing.assert_allclose(ReconstructController.trig_interp(samples, y), samples, atol=1e-14)


def test_trig_interp_exact_for_band_limited_data():
    y = np.arange(16) / 16
    samples = np.sin(2 * np.pi * y) + 0.25 * np.cos(10 * np.pi * y)
    points = np.array([0.013, 0.37, 0.5, 0.999])
    exact = np.sin(2 * np.pi * points) + 0.25 * np.cos(10 * np.pi * points)
    np.testing.assert_allclose(ReconstructController.trig_interp(samples, points), exact, atol=1e-13)


def test_trig_interp_wraps_and_is_real():
    y = np.arange(8) / 8
    samples = np.cos(8 * np.pi * y)
    value = ReconstructController.trig_interp(samples, 2.25)
    assert value == pytest.approx(ReconstructController.trig_interp(samples, 0.25), abs=1e-14)
    assert np.isrealobj(value)


def test_trig_interp_batched():
    y = np.arange(8) / 8
    samples = np.vstack([np.sin(2 * np.pi * y), np.cos(2 * np.pi * y)])
    values = ReconstructController.trig_interp(samples, np.array([0.1, 0.2]))
    np.testing.assert_allclose(values, [np.sin(0.2 * np.pi), np.cos(0.4 * np.pi)], atol=1e-14)


def test_reconstruct_without_micro_part_is_linear_interpolation():
    n_x = 16
    centers = (np.arange(n_x) + 0.5) / n_x
    F = MacroField(np.sin(np.pi * centers))
    fine = make_spatial_mesh(256)
    u = ReconstructController.reconstruct_solution(F, MicroField(np.zeros((n_x, 8))), 0.1, fine)
    expected = np.interp(fine.centers, np.concatenate([[0.0], centers, [1.0]]),
                         np.concatenate([[0.0], F.values, [0.0]]))
    np.testing.assert_allclose(u.values, expected, atol=1e-14)


def test_reconstruct_follows_the_diagonal():
    n_x, n_y, eps = 16, 16, 0.1
    y = np.arange(n_y) / n_y
    G = MicroField(np.tile(np.sin(2 * np.pi * y), (n_x, 1)))
    fine = make_spatial_mesh(512)
    u = ReconstructController.reconstruct_solution(MacroField(np.zeros(n_x)), G, eps, fine,
                                                   BoundaryData(micro_left=np.sin(2 * np.pi * y),
                                                                micro_right=np.sin(2 * np.pi * y)))
    np.testing.assert_allclose(u.values, np.sin(2 * np.pi * fine.centers / eps), atol=1e-12)


def test_reconstruct_is_linear(rng):
    n_x, n_y, eps = 8, 8, 0.3
    fine = make_spatial_mesh(64)
    F1, F2 = MacroField(rng.standard_normal(n_x)), MacroField(rng.standard_normal(n_x))
    G1, G2 = MicroField(rng.standard_normal((n_x, n_y))), MicroField(rng.standard_normal((n_x, n_y)))
    combined = ReconstructController.reconstruct_solution(2.0 * F1 + F2, 2.0 * G1 + G2, eps, fine)
    parts = (2.0 * ReconstructController.reconstruct_solution(F1, G1, eps, fine).values
             + ReconstructController.reconstruct_solution(F2, G2, eps, fine).values)
    np.testing.assert_allclose(combined.values, parts, atol=1e-12)


def test_reconstruct_rejects_mismatched_fields():
    with pytest.raises(ValueError):
        ReconstructController.reconstruct_solution(MacroField(np.zeros(8)), MicroField(np.zeros((16, 8))), 0.1,
                                                   make_spatial_mesh(64))


def test_reconstruct_hmm_without_corrector():
    n_x = 16
    u0 = MacroField(np.sin(2 * np.pi * (np.arange(n_x) + 0.5) / n_x))
    fine = make_spatial_mesh(128)
    with_zero = ReconstructController.reconstruct_hmm(u0, MicroField(np.zeros((n_x, 8))), 0.01, fine)
    plain = ReconstructController.reconstruct_solution(u0, MicroField(np.zeros((n_x, 8))), 0.01, fine)
    np.testing.assert_array_equal(with_zero.values, plain.values)


def test_derivative_on_fine():
    fine = make_spatial_mesh(256)
    u = MacroField(np.sin(2 * np.pi * fine.centers))
    du = ReconstructController.derivative_on_fine(u)
    exact = 2 * np.pi * np.cos(2 * np.pi * fine.centers)
    assert np.abs(du.values - exact).max() <= 5e-3


def test_derivative_of_linear_data_is_exact():
    fine = make_spatial_mesh(32)
    du = ReconstructController.derivative_on_fine(MacroField(3.0 * fine.centers - 1.0))
    np.testing.assert_allclose(du.values, 3.0, atol=1e-12)


def test_derivative_needs_eight_cells():
    with pytest.raises(ValueError):
        ReconstructController.derivative_on_fine(MacroField(np.zeros(4)))
