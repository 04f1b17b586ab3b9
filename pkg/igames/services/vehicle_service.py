"""
Longitudinal vehicle dynamics, intersection geometry and strategy rollout
"""
from typing import List, Sequence, Tuple
import numpy as np
from igames.errors import HorizonMismatchError
from igames.models.dtos import Approach
from igames.models.entities import (
    Action, AgentGeometry, LongitudinalState, Strategy, StrategyProfile, WorldState,
)
from igames.services.interfaces import VehicleServiceInterface

_APPROACH_AXES = {
    Approach.NORTH_BOUND: ((0.0, 1.0), (1.0, 0.0)),
    Approach.EAST_BOUND: ((1.0, 0.0), (0.0, -1.0)),
    Approach.WEST_BOUND: ((-1.0, 0.0), (0.0, 1.0)),
    Approach.SOUTH_BOUND: ((0.0, -1.0), (-1.0, 0.0)),
}


def geometry_for(approach: Approach, lane_offset: float) -> AgentGeometry:
    """Right-hand lane of an approach; the intersection centre is the origin"""
    heading, side = _APPROACH_AXES[approach]
    return AgentGeometry(heading=heading, lane_offset=(side[0] * lane_offset, side[1] * lane_offset))


def rollout_arrays(z0: float, v0: float, strategies: Sequence[Strategy], dt: float) -> Tuple[np.ndarray, np.ndarray]:
    """
    Positions and speeds of one vehicle under each strategy.

    Returns two (len(strategies), T+1) arrays; column 0 is the initial state.
    """
    if not strategies:
        return np.empty((0, 1)), np.empty((0, 1))
    steps = strategies[0].steps
    if any(strategy.steps != steps for strategy in strategies):
        raise HorizonMismatchError("strategies in one set must share a horizon")
    accel = np.asarray([strategy.actions() for strategy in strategies], dtype=np.float64)
    z = np.empty((len(strategies), steps + 1))
    v = np.empty((len(strategies), steps + 1))
    z[:, 0] = z0
    v[:, 0] = v0
    for k in range(steps):
        z[:, k + 1] = z[:, k] + dt * v[:, k]
        v[:, k + 1] = np.maximum(0.0, v[:, k] + dt * accel[:, k])
    return z, v


class VehicleService(VehicleServiceInterface):
    """Service for the discrete double-integrator model with a speed floor at zero"""

    def step(self, state: LongitudinalState, u: Action, dt: float) -> LongitudinalState:
        return LongitudinalState(z=state.z + dt * state.v, v=max(0.0, state.v + dt * u))

    def position_2d(self, geom: AgentGeometry, state: LongitudinalState) -> Tuple[float, float]:
        return (
            geom.lane_offset[0] + geom.heading[0] * state.z,
            geom.lane_offset[1] + geom.heading[1] * state.z,
        )

    def rollout(self, world: WorldState, profile: StrategyProfile) -> List[WorldState]:
        if len(profile) != world.n_agents:
            raise HorizonMismatchError(f"profile has {len(profile)} strategies for {world.n_agents} agents")
        horizon = profile[0].steps
        if any(strategy.steps != horizon for strategy in profile.per_player):
            raise HorizonMismatchError("strategies in a profile must cover the same horizon")
        actions = [strategy.actions() for strategy in profile.per_player]
        trajectory = [world]
        current = world
        for k in range(horizon):
            agents = tuple(
                self.step(state, actions[i][k], world.dt) for i, state in enumerate(current.agents)
            )
            current = WorldState(agents=agents, epoch=current.epoch + 1, dt=world.dt)
            trajectory.append(current)
        return trajectory

    def advance(self, world: WorldState, actions: Sequence[Action]) -> WorldState:
        """Commit one action per agent for one tick"""
        if len(actions) != world.n_agents:
            raise HorizonMismatchError(f"{len(actions)} actions for {world.n_agents} agents")
        agents = tuple(self.step(state, actions[i], world.dt) for i, state in enumerate(world.agents))
        return WorldState(agents=agents, epoch=world.epoch + 1, dt=world.dt)

    def distance(self, geom_a: AgentGeometry, state_a: LongitudinalState,
                 geom_b: AgentGeometry, state_b: LongitudinalState) -> float:
        """Euclidean distance between two vehicles in the plane"""
        xa, ya = self.position_2d(geom_a, state_a)
        xb, yb = self.position_2d(geom_b, state_b)
        return float(np.hypot(xa - xb, ya - yb))
