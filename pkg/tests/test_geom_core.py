"""Meshes, links, file round trips, and the stereographic charts."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

import cel
from cel import (FormatError, InputError, NearPoleError, ParameterError,
                 PolyLink, TriMesh, euler_genus, load_link, load_obj,
                 make_shape, save_link, save_obj)
from cel.fixtures import genus2_surface
from cel.projection import stereographic, stereographic_inverse


def test_mesh_validate_all_kinds():
    for kind, kw in (("sphere", {}), ("ellipsoid", dict(a=1.2, b=0.9, c=0.7)),
                     ("tube_torus", {}), ("clifford_torus", {}),
                     ("geodesic_sphere", dict(center=(0, 1, 0, 0), radius=0.8))):
        mesh = make_shape(kind, resolution=12, **kw)
        mesh.validate()
        counts = mesh.edges(return_counts=True)[1]
        assert np.all(counts == 2), kind


def test_euler_genus():
    assert euler_genus(make_shape("sphere", resolution=8)) == 0
    assert euler_genus(make_shape("tube_torus", resolution=12)) == 1
    assert euler_genus(make_shape("clifford_torus", resolution=12)) == 1
    g2 = genus2_surface(resolution=16)
    g2.validate()
    assert euler_genus(g2) == 2


def test_areas_match_closed_forms():
    assert make_shape("sphere", resolution=16).area() == pytest.approx(
        4.0 * np.pi, rel=2e-3)
    assert make_shape("clifford_torus", resolution=24).area() == pytest.approx(
        2.0 * np.pi ** 2, rel=8e-3)
    # distance sphere of radius rho has area 4 pi sin(rho)^2
    rho = np.pi / 3
    gs = make_shape("geodesic_sphere", resolution=16,
                    center=(0, 0, 1, 0), radius=rho)
    assert gs.area() == pytest.approx(4.0 * np.pi * np.sin(rho) ** 2, rel=2e-3)


def test_make_shape_guards():
    with pytest.raises(ParameterError):
        make_shape("klein_bottle", resolution=8)
    with pytest.raises(ParameterError):
        make_shape("geodesic_sphere", resolution=8, center=(1, 0, 0, 0),
                   radius=np.pi)
    with pytest.raises(ParameterError):
        make_shape("geodesic_sphere", resolution=8, center=(2, 0, 0, 0),
                   radius=0.5)


def test_hopf_link_geometry(hopf128):
    assert hopf128.dim == 4
    assert hopf128.on_sphere()
    # the two core circles sit at chordal distance sqrt(2); segment
    # midpoints sag inward by O(h^2)
    assert hopf128.min_distance() == pytest.approx(np.sqrt(2.0), abs=1e-3)


def test_link_rejects_contact():
    t = 2.0 * np.pi * np.arange(32) / 32
    circle = np.stack([np.cos(t), np.sin(t), np.zeros_like(t)], axis=1)
    with pytest.raises(InputError):
        PolyLink(circle, circle.copy())


def test_obj_round_trip(tmp_path, clifford16):
    path = str(tmp_path / "mesh.obj")
    save_obj(clifford16, path)
    back = load_obj(path)
    assert back.ambient == "S3"
    assert np.array_equal(back.faces, clifford16.faces)
    np.testing.assert_allclose(back.vertices, clifford16.vertices,
                               rtol=0, atol=1e-15)


def test_link_round_trip(tmp_path, hopf128):
    path = str(tmp_path / "link.json")
    save_link(hopf128, path)
    back = load_link(path)
    np.testing.assert_array_equal(back.gamma1, hopf128.gamma1)
    np.testing.assert_array_equal(back.gamma2, hopf128.gamma2)


def test_load_garbage(tmp_path):
    bad = tmp_path / "bad.obj"
    bad.write_text("v 1 2\nf 1 2 3\n")
    with pytest.raises(FormatError):
        load_obj(str(bad))


def test_curvatures_of_reference_surfaces(sphere16, clifford32):
    f = cel.estimate_curvatures(sphere16)
    np.testing.assert_allclose(f.k1, 1.0, atol=1e-2)
    np.testing.assert_allclose(f.k2, 1.0, atol=1e-2)
    f = cel.estimate_curvatures(clifford32)
    np.testing.assert_allclose(f.k1, 1.0, atol=0.05)
    np.testing.assert_allclose(f.k2, -1.0, atol=0.05)
    assert f.total_area() == pytest.approx(clifford32.area())


@settings(deadline=None, max_examples=60)
@given(arrays(np.float64, (4,),
              elements=st.floats(-1.0, 1.0, allow_nan=False)))
def test_stereographic_round_trip(raw):
    # random direction on the three-sphere, kept away from the pole
    n = np.linalg.norm(raw)
    if n < 1e-3:
        return
    x = raw / n
    pole = np.array([0.0, 0.0, 0.0, 1.0])
    if abs(x @ pole - 1.0) < 1e-2:
        return
    flat = stereographic(x[None, :], pole)
    back = stereographic_inverse(flat, pole)
    np.testing.assert_allclose(back[0], x, atol=1e-9)


def test_projection_pole_guard():
    pole = np.array([0.0, 0.0, 0.0, 1.0])
    with pytest.raises(NearPoleError):
        stereographic(pole[None, :], pole)


def test_mesh_projection_round_trip(clifford16):
    pole = np.array([0.0, 0.0, 0.0, -1.0])
    flat = cel.project_mesh(clifford16, pole)
    assert flat.ambient == "R3"
    back = cel.lift_mesh(flat, pole)
    np.testing.assert_allclose(back.vertices, clifford16.vertices, atol=1e-12)


def test_with_vertices_drops_recipe(clifford16):
    moved = clifford16.with_vertices(clifford16.vertices * 1.0)
    assert moved.recipe is None
    kept = clifford16.with_vertices(clifford16.vertices, keep_recipe=True)
    assert kept.recipe == clifford16.recipe


def test_validate_rejects_open_mesh():
    verts = np.eye(3)
    faces = np.array([[0, 1, 2]])
    with pytest.raises(cel.MeshQualityError):
        TriMesh(verts, faces, ambient="R3").validate()
