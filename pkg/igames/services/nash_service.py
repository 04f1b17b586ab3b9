"""
Nash solvers: best-response dynamics, pairwise decomposition and potential minimization
"""
from typing import Callable, Dict, List, Optional, Sequence, Tuple
import numpy as np
from igames.errors import GameConfigurationError
from igames.logger import logger
from igames.models.dtos import BrdConfig, BrdInit, TieBreak
from igames.models.entities import EquilibriumResult, Strategy
from igames.models.game import GameSpec
from igames.services.interfaces import NashServiceInterface

# pair game and the ego's position in it
PairSolver = Callable[[GameSpec, int], EquilibriumResult]


class NashService(NashServiceInterface):
    """Service for Nash equilibrium search"""

    def __init__(self, game_core_service=None):
        if game_core_service is None:
            from igames.services.game_core_service import GameCoreService
            game_core_service = GameCoreService()
        self.game_core_service = game_core_service

    def nash_brd(self, game: GameSpec, cfg: Optional[BrdConfig] = None) -> EquilibriumResult:
        """
        Sweep players in index order, each switching to a best response, until a
        whole sweep leaves the profile unchanged. `iterations` counts every sweep,
        the confirming one included; hitting `max_sweeps` returns the last
        profile with converged=False.
        """
        cfg = cfg or BrdConfig()
        profile = self._initial_profile(game, cfg)
        sweeps = 0
        converged = False
        while sweeps < cfg.max_sweeps:
            sweeps += 1
            changed = False
            for player in range(game.n_players):
                replies = self.game_core_service.best_response_set(game, player, profile, cfg.tolerance)
                if cfg.tie_break == TieBreak.KEEP_CURRENT and profile[player] in replies:
                    choice = profile[player]
                else:
                    choice = replies[0]
                if choice != profile[player]:
                    profile[player] = choice
                    changed = True
            if not changed:
                converged = True
                break
        if not converged:
            logger.warning("Best-response dynamics stopped after {} sweeps without a fixed point", sweeps)
        else:
            logger.debug("Best-response dynamics converged in {} sweeps at {}", sweeps, profile)
        return self.game_core_service.make_result(game, profile, sweeps, converged, "nash_brd")

    def nash_pairwise(self, game: GameSpec, ego: int, cfg: Optional[BrdConfig] = None) -> EquilibriumResult:
        return self.pairwise(game, ego, lambda pair, _: self.nash_brd(pair, cfg), "nash_pairwise")

    def pairwise(self, game: GameSpec, ego: int, pair_solver: PairSolver, solver: str) -> EquilibriumResult:
        """
        Solve one two-player game between the ego and each other player with
        `pair_solver`, keep the most conservative ego strategy and each other
        player's own pair solution. Pair games keep the players in index
        order, so on a two-player game the result is the plain solver's.
        Costs are evaluated on the full game.
        """
        if game.n_players < 2:
            raise GameConfigurationError(f"pairwise solving needs at least 2 players, got {game.n_players}")
        if not 0 <= ego < game.n_players:
            raise GameConfigurationError(f"ego {ego} is not a player of the game")
        indices = [0] * game.n_players
        ego_candidates: List[Strategy] = []
        ties: Dict[int, Tuple[int, ...]] = {}
        iterations = 0
        converged = True
        for other in range(game.n_players):
            if other == ego:
                continue
            pair = tuple(sorted((ego, other)))
            own = pair.index(ego)
            result = pair_solver(game.restrict(pair), own)
            ego_candidates.append(result.strategy(own))
            indices[other] = result.profile_indices[1 - own]
            if result.tie_sets and 1 - own in result.tie_sets:
                ties[other] = tuple(game.index_of(other, s) for s in result.tie_sets[1 - own])
            iterations += result.iterations
            converged = converged and result.converged
        indices[ego] = game.index_of(ego, self.most_conservative(ego_candidates))
        logger.opt(lazy=True).debug(
            "Pairwise {}: ego candidates {} -> {}",
            lambda: solver,
            lambda: [s.label() for s in ego_candidates],
            lambda: game.strategy_sets[ego][indices[ego]].label(),
        )
        return self.game_core_service.make_result(
            game, indices, iterations, converged, solver, tie_sets=ties or None
        )

    def most_conservative(self, strategies: Sequence[Strategy]) -> Strategy:
        """
        Smallest first-segment acceleration, then smallest second-segment
        acceleration and so on; remaining ties keep the earliest candidate.
        """
        if not strategies:
            raise GameConfigurationError("most_conservative needs at least one strategy")
        return min(strategies, key=lambda strategy: strategy.accelerations)

    def potential_value(self, game: GameSpec, profile: Sequence[int]) -> float:
        """
        Potential of a profile: the sum of all costs for tabular games, and
        the tracking terms plus each pair term once for rollout games, which
        makes every unilateral cost change equal the potential change.
        """
        return game.potential(profile)

    def potential_tensor(self, game: GameSpec) -> np.ndarray:
        """P over the whole product space"""
        return game.potential_tensor()

    def nash_potential(self, game: GameSpec) -> EquilibriumResult:
        """
        First profile in enumeration order minimizing the potential. When the
        game is not a potential game the profile may fail the Nash check, which
        `converged` reports.
        """
        game.check_enumerable()
        potential = self.potential_tensor(game)
        flat = int(np.argmin(potential))
        indices = [int(i) for i in np.unravel_index(flat, game.sizes)]
        converged = self.game_core_service.verify_nash(game, indices)
        if not converged:
            logger.warning("Potential minimizer {} is not a Nash equilibrium of this game", indices)
        return self.game_core_service.make_result(game, indices, 1, converged, "nash_potential")

    def potential_pairwise(self, game: GameSpec, ego: int) -> EquilibriumResult:
        return self.pairwise(game, ego, lambda pair, _: self.nash_potential(pair), "potential_pairwise")

    @staticmethod
    def _initial_profile(game: GameSpec, cfg: BrdConfig) -> List[int]:
        if cfg.init == BrdInit.FIRST:
            return [0] * game.n_players
        profile = []
        for player in range(game.n_players):
            zero = game.zero_index(player)
            profile.append(0 if zero is None else zero)
        return profile
