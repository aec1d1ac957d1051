"""
Shared fixtures for the ring laboratory tests
"""

import os
import sys

# Add the project root to Python path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import pytest

from src.core.config import Settings, get_settings
from src.services.catalog import default_catalog
from src.services.ideals import generate
from src.services.rings import FiniteRing, build
from src.utils.ring_spec import parse


def make_ring(text: str, settings: Settings = None) -> FiniteRing:
    return build(parse(text), settings)


@pytest.fixture
def ring():
    """Build a ring from an expression"""
    return make_ring


@pytest.fixture
def ideal():
    """Build the ideal generated by element indices in a ring expression"""

    def _ideal(text: str, *generators: int):
        return generate(make_ring(text), generators)

    return _ideal


@pytest.fixture(scope="session")
def settings() -> Settings:
    return get_settings()


@pytest.fixture(scope="session")
def catalog_rings():
    return [build(d) for d in default_catalog()]


@pytest.fixture(scope="session")
def small_catalog_rings(catalog_rings):
    return [r for r in catalog_rings if r.size <= 64]


def divisor_count(n: int) -> int:
    return sum(1 for d in range(1, n + 1) if n % d == 0)
