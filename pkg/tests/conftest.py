"""
Pytest configuration and fixtures.
"""
import pytest
from click.testing import CliRunner

from discdeg.polytope import Profile


@pytest.fixture
def conic():
    """A binary quadric: c=1, N=1, d=2 in characteristic 0."""
    return Profile(1, (2,))


@pytest.fixture
def conic_char2():
    """The same binary quadric over a field of characteristic 2."""
    return Profile(1, (2,), 2)


@pytest.fixture
def two_lines():
    """Two linear forms in P^1: the determinant case."""
    return Profile(1, (1, 1))


@pytest.fixture
def defective_pair():
    """Two hyperplanes in P^3; the discriminant is a unit."""
    return Profile(3, (1, 1))


@pytest.fixture
def mixed_pair():
    """A quadric and a cubic in P^3."""
    return Profile(3, (2, 3))


@pytest.fixture
def runner(monkeypatch):
    """Create test CLI runner with a clean environment."""
    for name in ('DISCDEG_LOG_LEVEL', 'DISCDEG_WORKERS', 'DISCDEG_ORACLE_MAX_LEVEL', 'DISCDEG_CROSS_CHECK_MAX_K'):
        monkeypatch.delenv(name, raising=False)
    return CliRunner()
