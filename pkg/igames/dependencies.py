"""
Dependency injection container for the command-line application
"""
from igames.services.game_core_service import GameCoreService
from igames.services.nash_service import NashService
from igames.services.stackelberg_service import StackelbergService
from igames.services.vehicle_service import VehicleService
from igames.services.cost_service import CostService
from igames.services.simulation_service import SimulationService
from igames.repositories.results_repository import ResultsRepository
from igames.repositories.matrix_game_repository import MatrixGameRepository


class DependencyContainer:
    """Container for managing application dependencies with proper singleton behavior"""

    def __init__(self):
        # Repositories
        self._results_repository = None
        self._matrix_game_repository = None

        # Services - solvers share one game core, the simulator shares the solvers
        self._game_core_service = None
        self._nash_service = None
        self._stackelberg_service = None
        self._vehicle_service = None
        self._cost_service = None
        self._simulation_service = None

    @property
    def results_repository(self) -> ResultsRepository:
        """Get singleton ResultsRepository instance"""
        if self._results_repository is None:
            self._results_repository = ResultsRepository()
        return self._results_repository

    @property
    def matrix_game_repository(self) -> MatrixGameRepository:
        """Get singleton MatrixGameRepository instance"""
        if self._matrix_game_repository is None:
            self._matrix_game_repository = MatrixGameRepository()
        return self._matrix_game_repository

    @property
    def game_core_service(self) -> GameCoreService:
        """Get singleton GameCoreService instance"""
        if self._game_core_service is None:
            self._game_core_service = GameCoreService()
        return self._game_core_service

    @property
    def nash_service(self) -> NashService:
        """Get singleton NashService instance with injected dependencies"""
        if self._nash_service is None:
            self._nash_service = NashService(game_core_service=self.game_core_service)
        return self._nash_service

    @property
    def stackelberg_service(self) -> StackelbergService:
        """Get singleton StackelbergService instance with injected dependencies"""
        if self._stackelberg_service is None:
            self._stackelberg_service = StackelbergService(
                game_core_service=self.game_core_service,
                nash_service=self.nash_service
            )
        return self._stackelberg_service

    @property
    def vehicle_service(self) -> VehicleService:
        """Get singleton VehicleService instance"""
        if self._vehicle_service is None:
            self._vehicle_service = VehicleService()
        return self._vehicle_service

    @property
    def cost_service(self) -> CostService:
        """Get singleton CostService instance with injected dependencies"""
        if self._cost_service is None:
            self._cost_service = CostService(vehicle_service=self.vehicle_service)
        return self._cost_service

    @property
    def simulation_service(self) -> SimulationService:
        """Get singleton SimulationService instance with injected dependencies"""
        if self._simulation_service is None:
            self._simulation_service = SimulationService(
                vehicle_service=self.vehicle_service,
                cost_service=self.cost_service,
                nash_service=self.nash_service,
                stackelberg_service=self.stackelberg_service
            )
        return self._simulation_service


# Global dependency container - every command shares the same service instances
container = DependencyContainer()


def get_game_core_service() -> GameCoreService:
    """Get GameCoreService instance from container"""
    return container.game_core_service


def get_nash_service() -> NashService:
    """Get NashService instance from container"""
    return container.nash_service


def get_stackelberg_service() -> StackelbergService:
    """Get StackelbergService instance from container"""
    return container.stackelberg_service


def get_cost_service() -> CostService:
    """Get CostService instance from container"""
    return container.cost_service


def get_simulation_service() -> SimulationService:
    """Get SimulationService instance from container"""
    return container.simulation_service


def get_results_repository() -> ResultsRepository:
    """Get ResultsRepository instance from container"""
    return container.results_repository


def get_matrix_game_repository() -> MatrixGameRepository:
    """Get MatrixGameRepository instance from container"""
    return container.matrix_game_repository
