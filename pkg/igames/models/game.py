"""
Finite game representation: players, finite strategy sets and a cost evaluator
"""
import itertools
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple
import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator
from igames.config import settings
from igames.errors import GameConfigurationError, ProfileSpaceTooLargeError
from igames.models.entities import Action, Strategy, StrategyProfile


class CostEvaluator(ABC):
    """Deterministic map (player, index profile) -> cost over base strategy indices"""

    @property
    @abstractmethod
    def n_players(self) -> int:
        """Number of players the evaluator scores"""
        pass

    @abstractmethod
    def strategy_count(self, player: int) -> int:
        """Size of the player's base strategy set"""
        pass

    @abstractmethod
    def cost(self, player: int, profile: Sequence[int]) -> float:
        """Cost of one player at one profile of base strategy indices"""
        pass

    @abstractmethod
    def restrict(self, players: Sequence[int]) -> "CostEvaluator":
        """Evaluator of the game played by a subset of players only"""
        pass

    def cost_tensor(self, player: int) -> np.ndarray:
        """Player's cost over the whole product space, axes in player order"""
        shape = tuple(self.strategy_count(p) for p in range(self.n_players))
        tensor = np.empty(shape, dtype=np.float64)
        for profile in itertools.product(*(range(n) for n in shape)):
            tensor[profile] = self.cost(player, profile)
        return tensor

    def potential(self, profile: Sequence[int]) -> float:
        """Potential function; without further structure the sum of all costs"""
        return float(sum(self.cost(player, profile) for player in range(self.n_players)))

    def potential_tensor(self) -> np.ndarray:
        """`potential` over the whole product space, axes in player order"""
        total = self.cost_tensor(0)
        for player in range(1, self.n_players):
            total = total + self.cost_tensor(player)
        return total


def profile_space_size(sizes: Sequence[int]) -> int:
    size = 1
    for count in sizes:
        size *= count
    return size


@dataclass(frozen=True)
class GameSpec:
    """
    A finite game G = {N, S, {J_i}}.

    Local strategy indices address `strategy_sets`; `index_maps` translate them
    to the evaluator's base indices so fixed or restricted subgames share one
    evaluator.
    """
    players: Tuple[int, ...]
    strategy_sets: Tuple[Tuple[Strategy, ...], ...]
    evaluator: CostEvaluator
    index_maps: Tuple[Tuple[int, ...], ...] = ()
    cap: int = settings.PROFILE_CAP
    _tensors: Dict[int, np.ndarray] = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        if len(self.players) != len(self.strategy_sets):
            raise GameConfigurationError(
                f"{len(self.players)} players but {len(self.strategy_sets)} strategy sets"
            )
        if len(self.players) != self.evaluator.n_players:
            raise GameConfigurationError(
                f"evaluator scores {self.evaluator.n_players} players, game has {len(self.players)}"
            )
        for position, strategies in enumerate(self.strategy_sets):
            if not strategies:
                raise GameConfigurationError(f"player {self.players[position]} has an empty strategy set")
        if not self.index_maps:
            object.__setattr__(
                self, "index_maps", tuple(tuple(range(len(s))) for s in self.strategy_sets)
            )
        for position, mapping in enumerate(self.index_maps):
            if len(mapping) != len(self.strategy_sets[position]):
                raise GameConfigurationError(f"index map of player {position} does not match its strategy set")

    @property
    def n_players(self) -> int:
        return len(self.players)

    @property
    def sizes(self) -> Tuple[int, ...]:
        return tuple(len(s) for s in self.strategy_sets)

    @property
    def size(self) -> int:
        return profile_space_size(self.sizes)

    def check_enumerable(self, cap: Optional[int] = None) -> None:
        limit = self.cap if cap is None else cap
        if self.size > limit:
            raise ProfileSpaceTooLargeError(self.size, limit)

    def _base(self, profile: Sequence[int]) -> Tuple[int, ...]:
        return tuple(self.index_maps[p][s] for p, s in enumerate(profile))

    def cost(self, player: int, profile: Sequence[int]) -> float:
        return self.evaluator.cost(player, self._base(profile))

    def costs(self, profile: Sequence[int]) -> Tuple[float, ...]:
        base = self._base(profile)
        return tuple(self.evaluator.cost(p, base) for p in range(self.n_players))

    def cost_tensor(self, player: int) -> np.ndarray:
        """Cost of `player` over the local product space (cached)"""
        if player not in self._tensors:
            self.check_enumerable()
            self._tensors[player] = self._local(self.evaluator.cost_tensor(player))
        return self._tensors[player]

    def potential(self, profile: Sequence[int]) -> float:
        return self.evaluator.potential(self._base(profile))

    def potential_tensor(self) -> np.ndarray:
        self.check_enumerable()
        return self._local(self.evaluator.potential_tensor())

    def _local(self, tensor: np.ndarray) -> np.ndarray:
        # base-index tensor -> local-index tensor
        if any(mapping != tuple(range(tensor.shape[p])) for p, mapping in enumerate(self.index_maps)):
            return tensor[np.ix_(*[np.asarray(m) for m in self.index_maps])]
        return tensor

    def profile(self, indices: Sequence[int]) -> StrategyProfile:
        return StrategyProfile(per_player=tuple(self.strategy_sets[p][s] for p, s in enumerate(indices)))

    def index_of(self, player: int, strategy: Strategy) -> int:
        try:
            return self.strategy_sets[player].index(strategy)
        except ValueError:
            raise GameConfigurationError(f"{strategy.label()} is not in the strategy set of player {player}")

    def zero_index(self, player: int) -> Optional[int]:
        """Index of the all-zero-acceleration strategy, if the player has one"""
        for index, strategy in enumerate(self.strategy_sets[player]):
            if all(accel == 0.0 for accel in strategy.accelerations):
                return index
        return None

    def fix(self, player: int, index: int) -> "GameSpec":
        """Same players, with `player` restricted to a single strategy"""
        sets = list(self.strategy_sets)
        maps = list(self.index_maps)
        sets[player] = (self.strategy_sets[player][index],)
        maps[player] = (self.index_maps[player][index],)
        return GameSpec(self.players, tuple(sets), self.evaluator, tuple(maps), self.cap)

    def restrict(self, players: Sequence[int]) -> "GameSpec":
        """Subgame played by the given local players only (order preserved as given)"""
        if len(set(players)) != len(players) or any(p < 0 or p >= self.n_players for p in players):
            raise GameConfigurationError(f"invalid player subset {tuple(players)}")
        return GameSpec(
            tuple(self.players[p] for p in players),
            tuple(self.strategy_sets[p] for p in players),
            self.evaluator.restrict(players),
            tuple(self.index_maps[p] for p in players),
            self.cap,
        )


class MatrixGame(BaseModel):
    """Explicit two-player cost table indexed by (leader action, follower action)"""
    model_config = ConfigDict(frozen=True)

    leader_actions: Tuple[Action, ...] = Field(min_length=1, description="Row labels")
    follower_actions: Tuple[Action, ...] = Field(min_length=1, description="Column labels")
    leader_costs: Tuple[Tuple[float, ...], ...] = Field(description="Leader cost per cell")
    follower_costs: Tuple[Tuple[float, ...], ...] = Field(description="Follower cost per cell")

    @model_validator(mode="after")
    def _dimensions(self) -> "MatrixGame":
        rows, cols = len(self.leader_actions), len(self.follower_actions)
        for name, table in (("leader", self.leader_costs), ("follower", self.follower_costs)):
            if len(table) != rows or any(len(row) != cols for row in table):
                raise ValueError(f"{name} cost table must be {rows}x{cols}")
            if not np.all(np.isfinite(np.asarray(table, dtype=np.float64))):
                raise ValueError(f"{name} cost table has non-finite entries")
        for name, labels in (("leader", self.leader_actions), ("follower", self.follower_actions)):
            if len(set(labels)) != len(labels):
                raise ValueError(f"{name} actions must be distinct")
        return self

    def cell(self, row: int, col: int) -> Tuple[float, float]:
        return self.leader_costs[row][col], self.follower_costs[row][col]

    def tables(self) -> List[np.ndarray]:
        return [np.asarray(self.leader_costs, dtype=np.float64), np.asarray(self.follower_costs, dtype=np.float64)]
