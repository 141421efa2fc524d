"""Gradients checked against brute-force differencing, then the descents."""

import warnings

import numpy as np
import pytest

from cel import (ParameterError, ResolutionWarning, estimate_curvatures,
                 make_shape, mobius_descent, mobius_energy,
                 tube_family_sweep, willmore_descent,
                 willmore_relative_gradient)
from cel.energies import _far_pole, _cross_energy_sum
from cel.fixtures import perturb_link, perturb_mesh
from cel.optimize import mobius_gradient, willmore_gradient
from cel.projection import project_link


def brute_willmore_gradient(mesh, h):
    """Central differences over every vertex and axis, one full curvature
    refit per evaluation. Only usable on tiny meshes."""
    s3 = mesh.ambient == "S3"

    def energy(verts):
        f = estimate_curvatures(mesh.with_vertices(verts))
        hmean = f.mean()
        dens = 1.0 + hmean ** 2 if s3 else hmean ** 2
        return float(np.sum(dens * f.weight))

    grad = np.zeros_like(mesh.vertices)
    for i in range(mesh.vertex_count):
        for a in range(mesh.vertices.shape[1]):
            plus = mesh.vertices.copy()
            plus[i, a] += h
            minus = mesh.vertices.copy()
            minus[i, a] -= h
            if s3:
                plus[i] /= np.linalg.norm(plus[i])
                minus[i] /= np.linalg.norm(minus[i])
            grad[i, a] = (energy(plus) - energy(minus)) / (2.0 * h)
    return grad


def test_grouped_gradient_matches_brute_force_r3():
    mesh = perturb_mesh(make_shape("tube_torus", resolution=8), 0.02, seed=3)
    h = 1e-5 * mesh.bbox_diameter()
    fast = willmore_gradient(mesh)
    slow = brute_willmore_gradient(mesh, h)
    scale = np.abs(slow).max()
    assert np.abs(fast - slow).max() / scale < 1e-6


def test_grouped_gradient_matches_brute_force_s3():
    mesh = perturb_mesh(make_shape("clifford_torus", resolution=8), 0.02,
                        seed=4)
    h = 1e-5 * mesh.bbox_diameter()
    fast = willmore_gradient(mesh)
    slow = brute_willmore_gradient(mesh, h)
    scale = np.abs(slow).max()
    assert np.abs(fast - slow).max() / scale < 1e-6


def test_mobius_gradient_matches_brute_force():
    hopf = make_shape("hopf_link", resolution=16)
    link = perturb_link(project_link(hopf, _far_pole(hopf)), 0.05, seed=2)
    fast = np.vstack(mobius_gradient(link))
    h = 1e-6 * link.diameter()
    n1 = len(link.gamma1)
    slow = np.zeros_like(fast)
    stacked = np.vstack([link.gamma1, link.gamma2])
    for i in range(len(stacked)):
        for a in range(3):
            plus = stacked.copy()
            plus[i, a] += h
            minus = stacked.copy()
            minus[i, a] -= h
            ep = _cross_energy_sum(plus[:n1], plus[n1:])
            em = _cross_energy_sum(minus[:n1], minus[n1:])
            slow[i, a] = (ep - em) / (2.0 * h)
    assert np.abs(fast - slow).max() / np.abs(slow).max() < 1e-4


def test_willmore_descent_decreases_energy():
    mesh = perturb_mesh(make_shape("clifford_torus", resolution=12), 0.05,
                        seed=9)
    final, trace = willmore_descent(mesh, steps=4)
    energies = np.array(trace.energies)
    assert np.all(np.diff(energies) <= 0.0)
    assert energies[-1] < energies[0]
    assert trace.status in ("max_steps", "stationary", "stagnated")
    assert np.max(np.abs(np.linalg.norm(final.vertices, axis=1) - 1.0)) < 1e-12


def test_descent_detects_stationarity():
    mesh = make_shape("clifford_torus", resolution=12)
    _, trace = willmore_descent(mesh, steps=3, grad_tol=1e9)
    assert trace.status == "stationary"
    assert len(trace.energies) == 1


def test_mobius_descent_decreases_energy():
    hopf = make_shape("hopf_link", resolution=32)
    link = perturb_link(project_link(hopf, _far_pole(hopf)), 0.08, seed=9)
    final, trace = mobius_descent(link, steps=6)
    energies = np.array(trace.energies)
    assert np.all(np.diff(energies) <= 0.0)
    assert energies[-1] < energies[0]


def test_mobius_descent_stops_on_contact():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ResolutionWarning)
        link = make_shape("coaxial_circles", separation=0.001, resolution=64)
        _, trace = mobius_descent(link, steps=5)
    assert trace.status == "collision"
    assert len(trace.energies) == 1


def test_reference_surfaces_are_stationary(great_sphere16):
    assert willmore_relative_gradient(great_sphere16) < 1e-3


def test_tube_sweep_finds_sqrt2():
    radii = np.array([1.2, 1.3, np.sqrt(2.0), 1.5, 1.7])
    sweep = tube_family_sweep(radii=radii, resolution=16)
    assert sweep.min_radius == pytest.approx(np.sqrt(2.0))
    assert len(sweep.energies) == len(radii)
    with pytest.raises(ParameterError):
        tube_family_sweep(radii=np.array([0.9, 1.5]), resolution=16)
