"""
Cost evaluators: rollout costs of the intersection game and explicit cost tables
"""
from typing import Dict, List, Optional, Sequence, Tuple
import numpy as np
from igames.config import settings
from igames.errors import GameConfigurationError, HorizonMismatchError
from igames.logger import logger
from igames.models.dtos import CostParams
from igames.models.entities import Action, AgentGeometry, Strategy, StrategyProfile, WorldState
from igames.models.game import CostEvaluator, GameSpec, MatrixGame
from igames.services.game_core_service import single_action_strategies
from igames.services.interfaces import CostServiceInterface
from igames.services.vehicle_service import rollout_arrays

FORMULA_ACTIONS: Tuple[Action, ...] = (-1.0, 0.0, 1.0)


def pair_penalty(dx, dy, params: CostParams):
    """Q_ij for scalar or array separations; each factor lies in [0, 2]"""
    x_factor = np.tanh(params.beta * (params.d_xc ** 2 - np.square(dx))) + 1.0
    y_factor = np.tanh(params.beta * (params.d_yc ** 2 - np.square(dy))) + 1.0
    return x_factor * y_factor


class TabularCostEvaluator(CostEvaluator):
    """Costs read from one N-dimensional table per player"""

    def __init__(self, tables: Sequence[np.ndarray]):
        arrays = [np.asarray(table, dtype=np.float64) for table in tables]
        if not arrays:
            raise GameConfigurationError("a tabular game needs at least one player")
        shape = arrays[0].shape
        if len(shape) != len(arrays) or any(a.shape != shape for a in arrays):
            raise GameConfigurationError(f"expected {len(arrays)} tables of one {len(arrays)}-d shape")
        if not all(np.all(np.isfinite(a)) for a in arrays):
            raise GameConfigurationError("cost tables must be finite")
        for array in arrays:
            array.flags.writeable = False
        self.tables = arrays

    @property
    def n_players(self) -> int:
        return len(self.tables)

    def strategy_count(self, player: int) -> int:
        return self.tables[0].shape[player]

    def cost(self, player: int, profile: Sequence[int]) -> float:
        return float(self.tables[player][tuple(profile)])

    def cost_tensor(self, player: int) -> np.ndarray:
        return self.tables[player]

    def restrict(self, players: Sequence[int]) -> "TabularCostEvaluator":
        # A table cannot drop a player, only reorder all of them
        if sorted(players) != list(range(self.n_players)):
            raise GameConfigurationError(
                f"a tabular game of {self.n_players} players cannot be restricted to {tuple(players)}"
            )
        order = list(players)
        return TabularCostEvaluator([np.transpose(self.tables[p], order) for p in order])


class RolloutCostEvaluator(CostEvaluator):
    """
    Rollout cost J_i of every strategy profile from one world state.

    Agents do not interact through the dynamics, so J_i splits into a tracking
    term of the own strategy plus one proximity table per other agent:
    J_i(s) = self_i[s_i] + sum_j pair_ij[s_i, s_j], with pair_ji = pair_ij^T.
    The game is then an exact potential game whose potential holds every
    self term and every pair table once.
    """

    def __init__(self, self_costs: Sequence[np.ndarray], pair_costs: Dict[Tuple[int, int], np.ndarray]):
        self.self_costs = list(self_costs)
        self.pair_costs = pair_costs

    @classmethod
    def from_world(cls, world: WorldState, geoms: Sequence[AgentGeometry], params: CostParams,
                   strategy_sets: Sequence[Sequence[Strategy]]) -> "RolloutCostEvaluator":
        n = world.n_agents
        if len(geoms) != n or len(strategy_sets) != n:
            raise GameConfigurationError(f"{n} agents need {n} geometries and {n} strategy sets")
        horizon = params.horizon_steps
        positions: List[Tuple[np.ndarray, np.ndarray]] = []
        self_costs: List[np.ndarray] = []
        for i, state in enumerate(world.agents):
            if any(strategy.steps != horizon for strategy in strategy_sets[i]):
                raise HorizonMismatchError(f"player {i} has strategies not spanning {horizon} steps")
            z, v = rollout_arrays(state.z, state.v, strategy_sets[i], world.dt)
            # stage costs use states 0..T-1
            z, v = z[:, :horizon], v[:, :horizon]
            vd = params.desired_speed(i)
            self_costs.append(np.sum(np.square(v - vd) / vd, axis=1))
            geom = geoms[i]
            x = geom.lane_offset[0] + geom.heading[0] * z
            y = geom.lane_offset[1] + geom.heading[1] * z
            positions.append((x, y))
        pair_costs: Dict[Tuple[int, int], np.ndarray] = {}
        for i in range(n):
            for j in range(i + 1, n):
                dx = positions[i][0][:, None, :] - positions[j][0][None, :, :]
                dy = positions[i][1][:, None, :] - positions[j][1][None, :, :]
                table = np.sum(pair_penalty(dx, dy, params), axis=2)
                pair_costs[(i, j)] = table
                pair_costs[(j, i)] = table.T
        return cls(self_costs, pair_costs)

    @property
    def n_players(self) -> int:
        return len(self.self_costs)

    def strategy_count(self, player: int) -> int:
        return self.self_costs[player].shape[0]

    def cost(self, player: int, profile: Sequence[int]) -> float:
        own = profile[player]
        total = self.self_costs[player][own]
        for other in range(self.n_players):
            if other != player:
                total = total + self.pair_costs[(player, other)][own, profile[other]]
        return float(total)

    def _spread(self, table: np.ndarray, axes: Tuple[int, ...]) -> np.ndarray:
        """Reshape a table over ascending `axes` so it broadcasts over the product space"""
        shape = [1] * self.n_players
        for axis, length in zip(axes, table.shape):
            shape[axis] = length
        return table.reshape(shape)

    def _full_shape(self) -> Tuple[int, ...]:
        return tuple(self.strategy_count(p) for p in range(self.n_players))

    def cost_tensor(self, player: int) -> np.ndarray:
        tensor = self._spread(self.self_costs[player], (player,))
        for other in range(self.n_players):
            if other != player:
                low, high = sorted((player, other))
                tensor = tensor + self._spread(self.pair_costs[(low, high)], (low, high))
        return np.broadcast_to(tensor, self._full_shape())

    def potential(self, profile: Sequence[int]) -> float:
        """Every tracking term plus every pair term once"""
        n = self.n_players
        total = 0.0
        for i in range(n):
            total += self.self_costs[i][profile[i]]
        for i in range(n):
            for j in range(i + 1, n):
                total += self.pair_costs[(i, j)][profile[i], profile[j]]
        return float(total)

    def potential_tensor(self) -> np.ndarray:
        n = self.n_players
        total = np.zeros([1] * n)
        for i in range(n):
            total = total + self._spread(self.self_costs[i], (i,))
        for i in range(n):
            for j in range(i + 1, n):
                total = total + self._spread(self.pair_costs[(i, j)], (i, j))
        return np.broadcast_to(total, self._full_shape())

    def restrict(self, players: Sequence[int]) -> "RolloutCostEvaluator":
        players = list(players)
        pairs = {
            (a, b): self.pair_costs[(players[a], players[b])]
            for a in range(len(players)) for b in range(len(players)) if a != b
        }
        return RolloutCostEvaluator([self.self_costs[p] for p in players], pairs)


class CostService(CostServiceInterface):
    """Service for stage, rollout and matrix costs and the games built from them"""

    def __init__(self, vehicle_service=None):
        if vehicle_service is None:
            from igames.services.vehicle_service import VehicleService
            vehicle_service = VehicleService()
        self.vehicle_service = vehicle_service

    def stage_pair_penalty(self, pi: Tuple[float, float], pj: Tuple[float, float], params: CostParams) -> float:
        return float(pair_penalty(pi[0] - pj[0], pi[1] - pj[1], params))

    def stage_cost(self, i: int, world: WorldState, geoms: Sequence[AgentGeometry], params: CostParams) -> float:
        vd = params.desired_speed(i)
        cost = (world.agents[i].v - vd) ** 2 / vd
        own = self.vehicle_service.position_2d(geoms[i], world.agents[i])
        for j, state in enumerate(world.agents):
            if j != i:
                cost += self.stage_pair_penalty(own, self.vehicle_service.position_2d(geoms[j], state), params)
        return cost

    def rollout_cost(self, i: int, world: WorldState, profile: StrategyProfile,
                     geoms: Sequence[AgentGeometry], params: CostParams) -> float:
        trajectory = self.vehicle_service.rollout(world, profile)
        horizon = len(trajectory) - 1
        return sum(self.stage_cost(i, state, geoms, params) for state in trajectory[:horizon])

    def matrix_cost_from_formula(self, s_l: Action, s_f: Action) -> Tuple[float, float]:
        if s_l not in FORMULA_ACTIONS or s_f not in FORMULA_ACTIONS:
            raise GameConfigurationError(f"formula costs are defined on {FORMULA_ACTIONS}, got ({s_l}, {s_f})")
        shared = max(10.0, (s_l + s_f) * 5.0 + 10.0)
        return shared + 5.0 * abs(s_l) - 10.0, shared - 5.0 * (s_f + 1.0)

    def matrix_game_from_formula(self, actions: Sequence[Action] = FORMULA_ACTIONS) -> MatrixGame:
        """The 3x3 strong-versus-weak demonstration table"""
        cells = [[self.matrix_cost_from_formula(l, f) for f in actions] for l in actions]
        return MatrixGame(
            leader_actions=tuple(actions),
            follower_actions=tuple(actions),
            leader_costs=tuple(tuple(cell[0] for cell in row) for row in cells),
            follower_costs=tuple(tuple(cell[1] for cell in row) for row in cells),
        )

    def build_rollout_game(self, world: WorldState, geoms: Sequence[AgentGeometry], params: CostParams,
                           strategies: Sequence[Strategy], cap: Optional[int] = None) -> GameSpec:
        sets = tuple(tuple(strategies) for _ in range(world.n_agents))
        evaluator = RolloutCostEvaluator.from_world(world, geoms, params, sets)
        logger.debug("Built rollout game: {} players x {} strategies at epoch {}", world.n_agents, len(strategies), world.epoch)
        return GameSpec(
            players=tuple(range(world.n_agents)),
            strategy_sets=sets,
            evaluator=evaluator,
            cap=settings.PROFILE_CAP if cap is None else cap,
        )

    def build_matrix_game(self, matrix: MatrixGame) -> GameSpec:
        """Player 0 plays rows (leader), player 1 plays columns (follower)"""
        evaluator = TabularCostEvaluator(matrix.tables())
        return GameSpec(
            players=(0, 1),
            strategy_sets=(
                single_action_strategies(matrix.leader_actions),
                single_action_strategies(matrix.follower_actions),
            ),
            evaluator=evaluator,
        )

    def build_tabular_game(self, tables: Sequence[np.ndarray], cap: Optional[int] = None) -> GameSpec:
        """N-player game from raw cost tables; strategy k of a player is the constant action k"""
        evaluator = TabularCostEvaluator(tables)
        sets = tuple(
            single_action_strategies([float(k) for k in range(evaluator.strategy_count(p))])
            for p in range(evaluator.n_players)
        )
        return GameSpec(
            players=tuple(range(evaluator.n_players)),
            strategy_sets=sets,
            evaluator=evaluator,
            cap=settings.PROFILE_CAP if cap is None else cap,
        )
