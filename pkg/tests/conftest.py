from fractions import Fraction

import pytest
from hypothesis import settings

from tombnames.bayesian import load_inscriptions, load_weight_table
from tombnames.cli import DATA_DIR, load_scenario_config
from tombnames.onomasticon import load_onomasticon

settings.register_profile("suite", deadline=None)
settings.load_profile("suite")


@pytest.fixture(scope="session")
def onomasticon():
    return load_onomasticon((DATA_DIR / "ilan_fixture.onom").read_text())


@pytest.fixture(scope="session")
def neutral_table():
    return load_weight_table((DATA_DIR / "weights_neutral.wt").read_text())


@pytest.fixture(scope="session")
def optimistic_table():
    return load_weight_table((DATA_DIR / "weights_optimistic.wt").read_text())


@pytest.fixture(scope="session")
def inscriptions():
    return load_inscriptions((DATA_DIR / "talpiyot.insc").read_text())


@pytest.fixture(scope="session")
def config():
    return load_scenario_config(DATA_DIR / "talpiyot.cfg")


@pytest.fixture(scope="session")
def config_path():
    return DATA_DIR / "talpiyot.cfg"


def F(*args) -> Fraction:
    return Fraction(*args)
