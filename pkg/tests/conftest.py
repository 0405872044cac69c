"""Shared fixtures: seeded generators and the fields used across tests."""

import numpy as np
import pytest

from fields.field import get_field


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def gf2():
    return get_field(2)


@pytest.fixture
def gf4():
    return get_field(4)


@pytest.fixture
def gf7():
    return get_field(7)


@pytest.fixture
def gf11():
    return get_field(11)


@pytest.fixture
def gf16():
    return get_field(16)
