"""Cotangent Laplace spectra against the two classical references."""

import numpy as np
import pytest

from cel import (ParameterError, cotan_stiffness, laplace_minmax, lumped_mass,
                 make_shape)


def test_flat_torus_spectrum_is_exact(clifford32):
    # the grid is uniform and the surface intrinsically flat, so the low
    # eigenvalues 0, 2 (x4), 4 (x4) come out at rounding accuracy
    vals = laplace_minmax(clifford32, 9)
    want = np.array([0.0, 2, 2, 2, 2, 4, 4, 4, 4])
    np.testing.assert_allclose(vals, want, atol=1e-8)


def test_sphere_spectrum_l_l_plus_1(sphere16):
    vals = laplace_minmax(sphere16, 9)
    want = np.array([0.0, 2, 2, 2, 6, 6, 6, 6, 6])
    np.testing.assert_allclose(vals, want, atol=0.02 * 6)


def test_mass_matrix_sums_to_the_area(clifford16):
    mass = lumped_mass(clifford16)
    assert mass.diagonal().sum() == pytest.approx(clifford16.area(),
                                                  rel=1e-12)


def test_stiffness_rows_sum_to_zero(sphere16):
    stiff = cotan_stiffness(sphere16)
    rows = np.abs(np.asarray(stiff.sum(axis=1))).max()
    assert rows < 1e-10
    rng = np.random.default_rng(0)
    x = rng.standard_normal(sphere16.vertex_count)
    assert x @ (stiff @ x) > -1e-9


def test_eigencount_guard(clifford16):
    with pytest.raises(ParameterError):
        laplace_minmax(clifford16, clifford16.vertex_count)
    with pytest.raises(ParameterError):
        laplace_minmax(clifford16, 0)
