import pytest

from qgcheck import models
from qgcheck.gns import build_gns


@pytest.fixture(scope="session")
def model_cache():
    """Build each named model at most once per test session."""
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = models.builtin(name)
        return cache[name]

    return get


@pytest.fixture(scope="session")
def gns_cache(model_cache):
    """Build each GNS realization at most once per test session."""
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = build_gns(model_cache(name))
        return cache[name]

    return get


@pytest.fixture(scope="session")
def sweedler(model_cache):
    return model_cache("sweedler")


@pytest.fixture(scope="session")
def taft3(model_cache):
    return model_cache("taft3")


@pytest.fixture(scope="session")
def c_s3(model_cache):
    return model_cache("c_s3")


@pytest.fixture(scope="session")
def cg_s3(model_cache):
    return model_cache("cg_s3")


@pytest.fixture(scope="session")
def d_s3(model_cache):
    return model_cache("d_s3")
