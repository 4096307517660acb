import pytest

from breachboard.board import GameConfig
from breachboard.catalog import default_catalog, seeded_matchup_matrix


@pytest.fixture(scope="session")
def catalog():
    return default_catalog()


@pytest.fixture(scope="session")
def matrix(catalog):
    return seeded_matchup_matrix(catalog)


@pytest.fixture(scope="session")
def game_config(catalog):
    return GameConfig(catalog)
