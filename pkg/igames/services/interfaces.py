"""
Service interfaces for game solving and simulation
"""
from abc import ABC, abstractmethod
from typing import Iterator, List, Optional, Sequence, Set, Tuple
from igames.models.entities import (
    DEFAULT_ACTIONS, Action, AgentGeometry, EquilibriumResult, Hierarchy, LongitudinalState,
    Strategy, StrategyProfile, WorldState,
)
from igames.models.dtos import (
    BehaviorKind, BrdConfig, CostParams, Scenario, ScenarioConfig, ScenarioResult,
    StackelbergMode, SummaryStats,
)
from igames.models.game import GameSpec, MatrixGame


class GameCoreServiceInterface(ABC):
    """Interface for best-response primitives and exhaustive search"""

    @abstractmethod
    def best_response_set(self, game: GameSpec, player: int, fixed: Sequence[int],
                          tolerance: float = 0.0) -> Tuple[int, ...]:
        """All strategy indices of `player` minimizing its cost against the others' fixed indices"""
        pass

    @abstractmethod
    def verify_nash(self, game: GameSpec, profile: Sequence[int], tolerance: float = 0.0) -> bool:
        """Exhaustive unilateral-deviation check"""
        pass

    @abstractmethod
    def enumerate_profiles(self, game: GameSpec) -> Iterator[Tuple[int, ...]]:
        """Every profile of the product space in lexicographic index order"""
        pass

    @abstractmethod
    def brute_force_nash(self, game: GameSpec, tolerance: float = 0.0) -> Set[Tuple[int, ...]]:
        """Every pure Nash equilibrium of the game"""
        pass


class NashServiceInterface(ABC):
    """Interface for Nash equilibrium solvers"""

    @abstractmethod
    def nash_brd(self, game: GameSpec, cfg: Optional[BrdConfig] = None) -> EquilibriumResult:
        """Best-response dynamics"""
        pass

    @abstractmethod
    def nash_pairwise(self, game: GameSpec, ego: int, cfg: Optional[BrdConfig] = None) -> EquilibriumResult:
        """Pairwise best-response dynamics around the ego"""
        pass

    @abstractmethod
    def most_conservative(self, strategies: Sequence[Strategy]) -> Strategy:
        """Braking-first choice among candidate ego strategies"""
        pass

    @abstractmethod
    def potential_value(self, game: GameSpec, profile: Sequence[int]) -> float:
        """Sum of every player's cost at the profile"""
        pass

    @abstractmethod
    def nash_potential(self, game: GameSpec) -> EquilibriumResult:
        """Global minimizer of the potential function"""
        pass


class StackelbergServiceInterface(ABC):
    """Interface for Stackelberg equilibrium solvers"""

    @abstractmethod
    def stackelberg_2p(self, game: GameSpec, leader: int, mode: StackelbergMode) -> EquilibriumResult:
        """Two-player strong or weak Stackelberg equilibrium"""
        pass

    @abstractmethod
    def stackelberg_hierarchy(self, game: GameSpec, hierarchy: Hierarchy,
                              mode: StackelbergMode) -> EquilibriumResult:
        """Backward induction over a full play order"""
        pass

    @abstractmethod
    def stackelberg_pairwise(self, game: GameSpec, ego: int, mode: StackelbergMode) -> EquilibriumResult:
        """Two-player Stackelberg games between the ego and each other player"""
        pass

    @abstractmethod
    def stackelberg_nash_followers(self, game: GameSpec, leader: int,
                                   cfg: Optional[BrdConfig] = None) -> EquilibriumResult:
        """Leader commits, followers settle on a Nash reply by best-response dynamics"""
        pass


class VehicleServiceInterface(ABC):
    """Interface for vehicle dynamics and geometry"""

    @abstractmethod
    def step(self, state: LongitudinalState, u: Action, dt: float) -> LongitudinalState:
        """Advance one vehicle by one tick"""
        pass

    @abstractmethod
    def position_2d(self, geom: AgentGeometry, state: LongitudinalState) -> Tuple[float, float]:
        """Plane position of a vehicle"""
        pass

    @abstractmethod
    def rollout(self, world: WorldState, profile: StrategyProfile) -> List[WorldState]:
        """Trajectory of every agent under a strategy profile"""
        pass


class CostServiceInterface(ABC):
    """Interface for cost evaluation"""

    @abstractmethod
    def stage_pair_penalty(self, pi: Tuple[float, float], pj: Tuple[float, float], params: CostParams) -> float:
        """Proximity penalty between two plane positions"""
        pass

    @abstractmethod
    def stage_cost(self, i: int, world: WorldState, geoms: Sequence[AgentGeometry], params: CostParams) -> float:
        """Speed tracking plus proximity cost of one agent at one state"""
        pass

    @abstractmethod
    def rollout_cost(self, i: int, world: WorldState, profile: StrategyProfile,
                     geoms: Sequence[AgentGeometry], params: CostParams) -> float:
        """Stage costs summed over the horizon"""
        pass

    @abstractmethod
    def matrix_cost_from_formula(self, s_l: Action, s_f: Action) -> Tuple[float, float]:
        """Closed-form cost pair of the strong-versus-weak demonstration game"""
        pass

    @abstractmethod
    def build_rollout_game(self, world: WorldState, geoms: Sequence[AgentGeometry], params: CostParams,
                           strategies: Sequence[Strategy], cap: Optional[int] = None) -> GameSpec:
        """Game whose costs are rollout costs from the given world state"""
        pass

    @abstractmethod
    def build_matrix_game(self, matrix: MatrixGame) -> GameSpec:
        """Two-player game backed by an explicit cost table"""
        pass


class SimulationServiceInterface(ABC):
    """Interface for the closed-loop intersection simulator"""

    @abstractmethod
    def generate_scenario(self, cfg: ScenarioConfig, index: int) -> Scenario:
        """Initial world, geometries and hierarchy of one scenario"""
        pass

    @abstractmethod
    def behavior_action(self, kind: BehaviorKind, target: int, world: WorldState,
                        equilibrium: Optional[StrategyProfile], geoms: Sequence[AgentGeometry],
                        params: CostParams, ego_action: Action = 0.0,
                        actions: Sequence[Action] = DEFAULT_ACTIONS) -> Action:
        """Action a target commits at the current epoch"""
        pass

    @abstractmethod
    def run_scenario(self, cfg: ScenarioConfig, index: int) -> ScenarioResult:
        """One receding-horizon closed-loop run"""
        pass

    @abstractmethod
    def run_batch(self, cfg: ScenarioConfig, count: int, workers: int = 1) -> Tuple[SummaryStats, List[ScenarioResult]]:
        """Scenarios 0..count-1 and their aggregate"""
        pass
