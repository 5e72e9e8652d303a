import os

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from symcoh.algebra import build_cyclic, direct_product, sign_module, symmetric_group, trivial_module
from symcoh.io import fixture_dir, load_extension

settings.register_profile("symcoh", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("symcoh")


@pytest.fixture(scope="session")
def z2():
    return build_cyclic(2)


@pytest.fixture(scope="session")
def z3():
    return build_cyclic(3)


@pytest.fixture(scope="session")
def z4():
    return build_cyclic(4)


@pytest.fixture(scope="session")
def s3():
    return symmetric_group(3)


@pytest.fixture(scope="session")
def klein():
    return direct_product(build_cyclic(2), build_cyclic(2))


@pytest.fixture(scope="session")
def small_pairs(z2, z3, z4, s3, klein):
    return [
        (z2, trivial_module(z2, 2)), (z2, sign_module(z2, 3)), (z3, trivial_module(z3, 3)),
        (z3, trivial_module(z3, 2)), (z4, trivial_module(z4, 2)), (klein, trivial_module(klein, 2)),
        (s3, sign_module(s3, 3)), (s3, trivial_module(s3, 2)),
    ]


@pytest.fixture(scope="session")
def fixtures_path():
    return fixture_dir()


@pytest.fixture(scope="session")
def x9(fixtures_path):
    return load_extension(os.path.join(fixtures_path, "X9.json"))


@pytest.fixture(scope="session")
def x4(fixtures_path):
    return load_extension(os.path.join(fixtures_path, "X4.json"))


@pytest.fixture(scope="session")
def trivial_ext(fixtures_path):
    return load_extension(os.path.join(fixtures_path, "trivial.json"))


@pytest.fixture(scope="session")
def nonsplit(fixtures_path):
    return load_extension(os.path.join(fixtures_path, "nonsplit_Z3.json"))


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)
