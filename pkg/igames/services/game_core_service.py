"""
Best-response primitives, exhaustive profile search and strategy-set builders
"""
import itertools
from typing import Dict, Iterator, List, Optional, Sequence, Set, Tuple
import numpy as np
from igames.errors import GameConfigurationError
from igames.logger import logger
from igames.models.entities import DEFAULT_ACTIONS, Action, EquilibriumResult, Segment, Strategy
from igames.models.game import GameSpec
from igames.services.interfaces import GameCoreServiceInterface


def two_segment_strategies(actions: Sequence[Action] = DEFAULT_ACTIONS, horizon_steps: int = 8) -> Tuple[Strategy, ...]:
    """
    Every strategy made of two constant-acceleration halves.

    Ordered lexicographically over (first, second) action, so the index of
    (a1, a2) is i1 * len(actions) + i2.
    """
    if horizon_steps < 2:
        raise GameConfigurationError(f"two segments need at least 2 horizon steps, got {horizon_steps}")
    first = horizon_steps // 2
    second = horizon_steps - first
    return tuple(
        Strategy(segments=(Segment(accel=a1, steps=first), Segment(accel=a2, steps=second)))
        for a1, a2 in itertools.product(actions, actions)
    )


def single_action_strategies(actions: Sequence[Action], steps: int = 1) -> Tuple[Strategy, ...]:
    """One constant strategy per action; used for matrix games"""
    return tuple(Strategy.constant(accel, steps) for accel in actions)


class GameCoreService(GameCoreServiceInterface):
    """Service for best responses, equilibrium checks and brute-force search"""

    def best_response_set(self, game: GameSpec, player: int, fixed: Sequence[int],
                          tolerance: float = 0.0) -> Tuple[int, ...]:
        """
        All strategy indices of `player` whose cost is within `tolerance` of the
        minimum against the other players' indices in `fixed`.

        `fixed` is a full profile; the entry of `player` itself is ignored.
        """
        if len(fixed) != game.n_players:
            raise GameConfigurationError(f"profile has {len(fixed)} entries for {game.n_players} players")
        profile = list(fixed)
        costs = []
        for index in range(len(game.strategy_sets[player])):
            profile[player] = index
            costs.append(game.cost(player, profile))
        best = min(costs)
        return tuple(index for index, cost in enumerate(costs) if cost <= best + tolerance)

    def verify_nash(self, game: GameSpec, profile: Sequence[int], tolerance: float = 0.0) -> bool:
        self._check_profile(game, profile)
        for player in range(game.n_players):
            if profile[player] not in self.best_response_set(game, player, profile, tolerance):
                return False
        return True

    def deviation_gains(self, game: GameSpec, profile: Sequence[int]) -> List[Tuple[float, int]]:
        """
        Per player, the largest cost reduction available by deviating alone and
        the index achieving it (gain 0 and the current index when none exists).
        """
        self._check_profile(game, profile)
        gains: List[Tuple[float, int]] = []
        deviated = list(profile)
        for player in range(game.n_players):
            current = game.cost(player, profile)
            best_gain, best_index = 0.0, profile[player]
            for index in range(len(game.strategy_sets[player])):
                deviated[player] = index
                gain = current - game.cost(player, deviated)
                if gain > best_gain:
                    best_gain, best_index = gain, index
            deviated[player] = profile[player]
            gains.append((best_gain, best_index))
        return gains

    def enumerate_profiles(self, game: GameSpec) -> Iterator[Tuple[int, ...]]:
        game.check_enumerable()
        return itertools.product(*(range(count) for count in game.sizes))

    def brute_force_nash(self, game: GameSpec, tolerance: float = 0.0) -> Set[Tuple[int, ...]]:
        return set(self.nash_profiles(game, tolerance))

    def nash_profiles(self, game: GameSpec, tolerance: float = 0.0) -> List[Tuple[int, ...]]:
        """Pure Nash equilibria in enumeration order"""
        game.check_enumerable()
        mask = np.ones(game.sizes, dtype=bool)
        for player in range(game.n_players):
            tensor = game.cost_tensor(player)
            mask &= tensor <= tensor.min(axis=player, keepdims=True) + tolerance
        found = [tuple(int(i) for i in row) for row in np.argwhere(mask)]
        logger.debug("Brute force found {} pure Nash equilibria over {} profiles", len(found), game.size)
        return found

    def make_result(self, game: GameSpec, indices: Sequence[int], iterations: int, converged: bool,
                    solver: str, tie_sets: Optional[Dict[int, Sequence[int]]] = None) -> EquilibriumResult:
        """Wrap solved indices into an EquilibriumResult evaluated on `game`"""
        indices = tuple(int(i) for i in indices)
        ties = None
        if tie_sets is not None:
            ties = {
                player: tuple(game.strategy_sets[player][i] for i in members)
                for player, members in tie_sets.items()
            }
        return EquilibriumResult(
            profile=game.profile(indices),
            profile_indices=indices,
            costs=game.costs(indices),
            iterations=iterations,
            converged=converged,
            tie_sets=ties,
            solver=solver,
        )

    @staticmethod
    def _check_profile(game: GameSpec, profile: Sequence[int]) -> None:
        if len(profile) != game.n_players:
            raise GameConfigurationError(f"profile has {len(profile)} entries for {game.n_players} players")
        for player, index in enumerate(profile):
            if not 0 <= index < len(game.strategy_sets[player]):
                raise GameConfigurationError(f"strategy index {index} out of range for player {player}")
