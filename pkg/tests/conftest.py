import pytest

from cel import clifford_torus, hopf_link, make_shape, sphere


@pytest.fixture(scope="session")
def sphere16():
    return sphere(resolution=16)


@pytest.fixture(scope="session")
def clifford16():
    return clifford_torus(resolution=16)


@pytest.fixture(scope="session")
def clifford32():
    return clifford_torus(resolution=32)


@pytest.fixture(scope="session")
def hopf128():
    return hopf_link(resolution=128)


@pytest.fixture(scope="session")
def great_sphere16():
    return make_shape("geodesic_sphere", resolution=16,
                      center=(1, 0, 0, 0), radius=1.5707963267948966)
