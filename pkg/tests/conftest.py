#!/usr/bin/env python3
"""
Pytest configuration and shared fixtures for the punctured-growth tests
"""

from __future__ import annotations

import pytest

from growth_cli.settings import ENV_PREFIX, reset_settings_cache
from growth_estimators import RadiusGrid
from punctured_functions import load_catalog_function, parse_function_spec


def pytest_configure(config):
    """Configure pytest with custom markers"""
    config.addinivalue_line("markers", "integration: mark test as integration test")
    config.addinivalue_line("markers", "slow: mark test as slow running")
    config.addinivalue_line("markers", "unit: mark test as unit test")


@pytest.fixture
def rational_d3():
    """g(omega) = omega^3: T(r, f) = 3 log(1/r) exactly."""
    return load_catalog_function("rational_d3")


@pytest.fixture
def shifted_pole():
    """g(omega) = 1/(omega - 2), complete ledger with one pole."""
    return load_catalog_function("shifted_pole")


@pytest.fixture
def exp_function():
    """g(omega) = exp(omega), closed form checked against its series."""
    return load_catalog_function("exp")


@pytest.fixture
def polynomial_factory():
    """Build an analytic closed-form function from an expression string."""

    def _build(expression: str, name: str = "p"):
        return parse_function_spec({"name": name, "closed_form": expression})

    return _build


@pytest.fixture
def small_grid():
    """Sixteen radii with log log(1/r) evenly spaced in [1.5, 2.8]."""
    return RadiusGrid(1.5, 2.8, 16)


@pytest.fixture(autouse=True)
def clean_settings(monkeypatch):
    """Drop PUNCTURED_GROWTH_* variables and the cached settings around each test"""
    import os

    for key in list(os.environ):
        if key.startswith(ENV_PREFIX):
            monkeypatch.delenv(key, raising=False)
    reset_settings_cache()
    yield
    reset_settings_cache()
