"""
Stackelberg solvers: two-player strong/weak, full hierarchies, pairwise
decomposition and Nash followers
"""
from typing import Dict, List, Optional, Sequence, Tuple
import numpy as np
from igames.errors import GameConfigurationError
from igames.logger import logger
from igames.models.dtos import BrdConfig, StackelbergMode
from igames.models.entities import EquilibriumResult, Hierarchy
from igames.models.game import GameSpec
from igames.services.interfaces import StackelbergServiceInterface


class StackelbergService(StackelbergServiceInterface):
    """Service for leader-follower equilibrium search"""

    def __init__(self, game_core_service=None, nash_service=None):
        if game_core_service is None:
            from igames.services.game_core_service import GameCoreService
            game_core_service = GameCoreService()
        if nash_service is None:
            from igames.services.nash_service import NashService
            nash_service = NashService(game_core_service)
        self.game_core_service = game_core_service
        self.nash_service = nash_service

    def _anticipate(self, game: GameSpec, leader: int, mode: StackelbergMode,
                    tolerance: float) -> Tuple[List[float], List[int], List[Tuple[int, ...]]]:
        """
        For every leader strategy: the leader cost the follower's reply yields,
        the reply itself and the follower's best-response set.
        """
        follower = 1 - leader
        anticipated: List[float] = []
        replies: List[int] = []
        reply_sets: List[Tuple[int, ...]] = []
        profile = [0, 0]
        for strategy in range(len(game.strategy_sets[leader])):
            profile[leader] = strategy
            best = self.game_core_service.best_response_set(game, follower, profile, tolerance)
            choice, value = None, 0.0
            for reply in best:
                profile[follower] = reply
                cost = game.cost(leader, profile)
                better = cost < value if mode == StackelbergMode.STRONG else cost > value
                if choice is None or better:
                    choice, value = reply, cost
            if len(best) > 1:
                logger.debug("Follower tie {} at leader strategy {}; {} reply {}", best, strategy, mode.value, choice)
            anticipated.append(value)
            replies.append(choice)
            reply_sets.append(best)
        return anticipated, replies, reply_sets

    def _check_two_players(self, game: GameSpec, leader: int) -> None:
        if game.n_players != 2:
            raise GameConfigurationError(f"two-player Stackelberg needs exactly 2 players, got {game.n_players}")
        if leader not in (0, 1):
            raise GameConfigurationError(f"leader {leader} is not a player of the game")

    def stackelberg_2p(self, game: GameSpec, leader: int, mode: StackelbergMode,
                       tolerance: float = 0.0) -> EquilibriumResult:
        """
        Leader commits to the strategy with the lowest anticipated cost, where
        each commitment is scored by the follower reply that is best (Strong) or
        worst (Weak) for the leader among the follower's best responses. Ties on
        either side go to the lowest strategy index.
        """
        self._check_two_players(game, leader)
        follower = 1 - leader
        anticipated, replies, reply_sets = self._anticipate(game, leader, mode, tolerance)
        best = min(anticipated)
        optimal = tuple(s for s, value in enumerate(anticipated) if value <= best + tolerance)
        choice = optimal[0]
        indices = [0, 0]
        indices[leader] = choice
        indices[follower] = replies[choice]
        return self.game_core_service.make_result(
            game, indices, len(anticipated), True, f"stackelberg_2p_{mode.value}",
            tie_sets={leader: optimal, follower: reply_sets[choice]},
        )

    def stackelberg_set(self, game: GameSpec, leader: int, mode: StackelbergMode,
                        tolerance: float = 0.0) -> List[Tuple[int, int]]:
        """Every profile meeting the strong or weak definition, in enumeration order"""
        self._check_two_players(game, leader)
        return [
            tuple(profile) for profile in self.game_core_service.enumerate_profiles(game)
            if self._meets_definition(game, leader, mode, profile, tolerance)
        ]

    def weak_stackelberg_set(self, game: GameSpec, leader: int = 0, tolerance: float = 0.0) -> List[Tuple[int, int]]:
        return self.stackelberg_set(game, leader, StackelbergMode.WEAK, tolerance)

    def is_strong_stackelberg(self, game: GameSpec, profile: Sequence[int], leader: int = 0,
                              tolerance: float = 0.0) -> bool:
        self._check_two_players(game, leader)
        return self._meets_definition(game, leader, StackelbergMode.STRONG, profile, tolerance)

    def is_weak_stackelberg(self, game: GameSpec, profile: Sequence[int], leader: int = 0,
                            tolerance: float = 0.0) -> bool:
        self._check_two_players(game, leader)
        return self._meets_definition(game, leader, StackelbergMode.WEAK, profile, tolerance)

    def _meets_definition(self, game: GameSpec, leader: int, mode: StackelbergMode,
                          profile: Sequence[int], tolerance: float) -> bool:
        # follower best-responds, the reply is the mode-selected one and the commitment is optimal
        follower = 1 - leader
        anticipated, _, reply_sets = self._anticipate(game, leader, mode, tolerance)
        commitment = profile[leader]
        if profile[follower] not in reply_sets[commitment]:
            return False
        if abs(game.cost(leader, profile) - anticipated[commitment]) > tolerance:
            return False
        return anticipated[commitment] <= min(anticipated) + tolerance

    def stackelberg_hierarchy(self, game: GameSpec, hierarchy: Hierarchy, mode: StackelbergMode,
                              tolerance: float = 0.0) -> EquilibriumResult:
        """
        Backward induction over the play order, vectorised over the product space.

        Level k (0 = top leader) scores each of its strategies by the
        continuation selected from the reply set of the levels below: the
        continuation cheapest (Strong) or dearest (Weak) for level k, first in
        index order on ties. The reply set a level offers the one above is
        every optimal strategy of that level together with its selected
        continuation; the last level offers its best-response set.
        """
        order = hierarchy.order
        if len(order) != game.n_players:
            raise GameConfigurationError(f"hierarchy {order} does not match {game.n_players} players")
        game.check_enumerable()
        sizes = tuple(game.sizes[p] for p in order)
        n = len(order)
        costs = [np.transpose(game.cost_tensor(p), order) for p in order]

        last = costs[-1]
        mask = last <= last.min(axis=n - 1, keepdims=True) + tolerance
        if n == 1:
            top_optimal = tuple(int(i) for i in np.flatnonzero(mask))
            return self.game_core_service.make_result(
                game, [top_optimal[0]], 0, True, f"stackelberg_hierarchy_{mode.value}",
                tie_sets={hierarchy.leader: top_optimal},
            )

        strong = mode == StackelbergMode.STRONG
        fill = np.inf if strong else -np.inf
        iterations = 0
        follower_mask = None
        top_optimal = ()
        continuation = 0
        for level in range(n - 2, -1, -1):
            trailing = tuple(range(level + 1, n))
            masked = np.where(mask, costs[level], fill)
            value = masked.min(axis=trailing, keepdims=True) if strong else masked.max(axis=trailing, keepdims=True)
            hit = mask & (masked == value)
            prefix = int(np.prod(sizes[:level + 1]))
            tail = int(np.prod(sizes[level + 1:]))
            chosen = np.argmax(hit.reshape(prefix, tail), axis=1)
            anticipated = value.reshape(sizes[:level + 1])
            optimal = anticipated <= anticipated.min(axis=level, keepdims=True) + tolerance
            iterations += prefix
            if level == 0:
                follower_mask = mask
                top_optimal = tuple(int(i) for i in np.flatnonzero(optimal))
                continuation = int(chosen[top_optimal[0]])
                break
            selected = np.zeros((prefix, tail), dtype=bool)
            selected[np.arange(prefix), chosen] = True
            mask = selected.reshape(sizes) & optimal.reshape(sizes[:level + 1] + (1,) * (n - level - 1))

        top = top_optimal[0]
        path = (top,) + tuple(int(i) for i in np.unravel_index(continuation, sizes[1:]))
        indices = [0] * n
        for level, player in enumerate(order):
            indices[player] = path[level]
        follower_replies = follower_mask[top]
        if n > 2:
            follower_replies = np.any(follower_replies, axis=tuple(range(1, n - 1)))
        reply_set = tuple(int(i) for i in np.flatnonzero(follower_replies))
        if len(reply_set) > 1:
            logger.debug("Hierarchy follower {} has tied replies {} to leader strategy {}", order[1], reply_set, top)
        return self.game_core_service.make_result(
            game, indices, iterations, True, f"stackelberg_hierarchy_{mode.value}",
            tie_sets={hierarchy.leader: top_optimal, order[1]: reply_set},
        )

    def stackelberg_pairwise(self, game: GameSpec, ego: int, mode: StackelbergMode,
                             tolerance: float = 0.0) -> EquilibriumResult:
        return self.nash_service.pairwise(
            game, ego, lambda pair, own: self.stackelberg_2p(pair, own, mode, tolerance), f"stackelberg_pairwise_{mode.value}"
        )

    def stackelberg_nash_followers(self, game: GameSpec, leader: int,
                                   cfg: Optional[BrdConfig] = None) -> EquilibriumResult:
        """
        For each leader strategy the followers play best-response dynamics with
        the leader fixed; the leader keeps the commitment whose settled reply
        costs it least (lowest index on ties).
        """
        if game.n_players < 2:
            raise GameConfigurationError(f"Nash followers need at least 2 players, got {game.n_players}")
        if not 0 <= leader < game.n_players:
            raise GameConfigurationError(f"leader {leader} is not a player of the game")
        cfg = cfg or BrdConfig()
        outcomes: List[EquilibriumResult] = []
        for strategy in range(len(game.strategy_sets[leader])):
            outcomes.append(self.nash_service.nash_brd(game.fix(leader, strategy), cfg))
        anticipated = [outcome.costs[leader] for outcome in outcomes]
        best = min(anticipated)
        optimal = tuple(s for s, value in enumerate(anticipated) if value <= best + cfg.tolerance)
        choice = optimal[0]
        indices = list(outcomes[choice].profile_indices)
        indices[leader] = choice
        converged = all(outcome.converged for outcome in outcomes)
        if not converged:
            logger.warning("Follower best-response dynamics failed to converge for some leader strategies")
        ties: Dict[int, Sequence[int]] = {p: (indices[p],) for p in range(game.n_players) if p != leader}
        ties[leader] = optimal
        return self.game_core_service.make_result(
            game, indices, sum(outcome.iterations for outcome in outcomes), converged,
            "stackelberg_nash_followers", tie_sets=ties,
        )

    def nash_followers_pairwise(self, game: GameSpec, ego: int, cfg: Optional[BrdConfig] = None) -> EquilibriumResult:
        return self.nash_service.pairwise(
            game, ego, lambda pair, own: self.stackelberg_nash_followers(pair, own, cfg), "nash_followers_pairwise"
        )
