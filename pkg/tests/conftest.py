import os

import numpy as np
import pytest

from apolarity.bundles.graded_map import ProjectionCenter, parse_center

FIXTURES = os.path.join(os.path.dirname(os.path.dirname(__file__)), "fixtures")


@pytest.fixture(scope="session", autouse=True)
def isolated_output(tmp_path_factory):
    """Keep logs and reports of the whole session under a temporary directory."""
    root = tmp_path_factory.mktemp("apolarity")
    with pytest.MonkeyPatch.context() as mp:
        mp.setenv("APOLAR_LOG_DIR", str(root / "logs"))
        mp.setenv("APOLAR_RESULTS_DIR", str(root / "data"))
        mp.setenv("APOLAR_HEIGHT", "20")
        yield root


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def fixture_path(name: str) -> str:
    return os.path.join(FIXTURES, name)


def load_center(name: str) -> ProjectionCenter:
    with open(fixture_path(name)) as file_center:
        return parse_center(file_center.read())


@pytest.fixture
def rank3_center() -> ProjectionCenter:
    return load_center("rank3_n7_k2.txt")


@pytest.fixture
def point_center() -> ProjectionCenter:
    return load_center("point_n6_k1.txt")


@pytest.fixture
def secant_point_center() -> ProjectionCenter:
    return load_center("secant_point_n6_k1.txt")
