import functools
import random

import pytest
from hypothesis import HealthCheck, settings

from arthur_phi.catalog import catalog_entry, named_system

settings.register_profile(
    "default", max_examples=25, deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large])
settings.load_profile("default")


@functools.lru_cache(maxsize=None)
def entry(name):
    return catalog_entry(name)


@functools.lru_cache(maxsize=None)
def system(name):
    return named_system(name)


def sp4_swap():
    return entry("sp4-swap").datum


@pytest.fixture
def rng():
    return random.Random(20240601)
