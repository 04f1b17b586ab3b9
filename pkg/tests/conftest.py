import pytest
from igames.models.dtos import CostParams
from igames.services.cost_service import CostService
from igames.services.game_core_service import GameCoreService
from igames.services.nash_service import NashService
from igames.services.stackelberg_service import StackelbergService
from igames.services.vehicle_service import VehicleService


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run 100-scenario acceptance batches")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(scope="session")
def game_core():
    return GameCoreService()


@pytest.fixture(scope="session")
def nash(game_core):
    return NashService(game_core)


@pytest.fixture(scope="session")
def stackelberg(game_core, nash):
    return StackelbergService(game_core, nash)


@pytest.fixture(scope="session")
def vehicle():
    return VehicleService()


@pytest.fixture(scope="session")
def costs(vehicle):
    return CostService(vehicle)


@pytest.fixture(scope="session")
def params():
    return CostParams()


@pytest.fixture(scope="session")
def demo_game(costs):
    """The 3x3 strong-versus-weak table; indices 0, 1, 2 are actions -1, 0, +1"""
    return costs.build_matrix_game(costs.matrix_game_from_formula())
