"""
Receding-horizon intersection simulator: scenario generation, target behaviours,
crash detection and batch aggregation
"""
import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from typing import List, Optional, Sequence, Tuple
import numpy as np
from igames.errors import GameConfigurationError
from igames.logger import logger
from igames.models.dtos import (
    BehaviorKind, CostParams, GameKind, Scenario, ScenarioConfig, ScenarioResult, SolutionSetting,
    StackelbergMode, SummaryStats,
)
from igames.models.entities import (
    DEFAULT_ACTIONS, Action, AgentGeometry, EquilibriumResult, Hierarchy, LongitudinalState,
    StrategyProfile, WorldState,
)
from igames.models.game import GameSpec
from igames.services.game_core_service import two_segment_strategies
from igames.services.interfaces import SimulationServiceInterface
from igames.services.vehicle_service import geometry_for

MIN_TARGET_SEPARATION = 0.5
MAX_PLACEMENT_DRAWS = 10000


def _run_scenario_job(cfg: ScenarioConfig, index: int) -> ScenarioResult:
    """Process-pool entry point; every worker builds its own services"""
    return SimulationService().run_scenario(cfg, index)


def summarize(results: Sequence[ScenarioResult]) -> SummaryStats:
    """Aggregate a batch; the decision-time mean runs over every decision"""
    count = len(results)
    crashes = sum(1 for result in results if result.crashed)
    times = [t for result in results for t in result.decision_times]
    return SummaryStats(
        scenario_count=count,
        crash_count=crashes,
        crashes_per_100=crashes * 100.0 / count if count else 0.0,
        mean_ego_speed=sum(result.avg_ego_speed for result in results) / count if count else 0.0,
        mean_decision_time=sum(times) / len(times) if times else 0.0,
        decision_count=len(times),
        nonconverged_decisions=sum(result.nonconverged_decisions for result in results),
    )


class SimulationService(SimulationServiceInterface):
    """Service for closed-loop scenario runs"""

    def __init__(self, vehicle_service=None, cost_service=None, nash_service=None, stackelberg_service=None):
        if vehicle_service is None:
            from igames.services.vehicle_service import VehicleService
            vehicle_service = VehicleService()
        if cost_service is None:
            from igames.services.cost_service import CostService
            cost_service = CostService(vehicle_service)
        if nash_service is None:
            from igames.services.nash_service import NashService
            nash_service = NashService()
        if stackelberg_service is None:
            from igames.services.stackelberg_service import StackelbergService
            stackelberg_service = StackelbergService(nash_service.game_core_service, nash_service)

        self.vehicle_service = vehicle_service
        self.cost_service = cost_service
        self.nash_service = nash_service
        self.stackelberg_service = stackelberg_service

    def generate_scenario(self, cfg: ScenarioConfig, index: int) -> Scenario:
        """
        Ego at its fixed start distance; targets drawn uniformly from the
        configured range by a PCG64 stream keyed on (seed, index), re-drawing
        any distance within 0.5 m of an earlier one.
        """
        low, high = cfg.target_distance_range
        if high <= low:
            raise GameConfigurationError(f"target distance range {cfg.target_distance_range} is degenerate")
        rng = np.random.Generator(np.random.PCG64([cfg.seed, index]))
        distances: List[float] = []
        draws = 0
        while len(distances) < cfg.n_players - 1:
            draws += 1
            if draws > MAX_PLACEMENT_DRAWS:
                raise GameConfigurationError(
                    f"cannot place {cfg.n_players - 1} targets {MIN_TARGET_SEPARATION} m apart in {cfg.target_distance_range}"
                )
            candidate = float(rng.uniform(low, high))
            if all(abs(candidate - other) >= MIN_TARGET_SEPARATION for other in distances):
                distances.append(candidate)

        agents = [LongitudinalState(z=-cfg.ego_start_distance, v=cfg.initial_speed)]
        agents.extend(LongitudinalState(z=-d, v=cfg.initial_speed) for d in distances)
        geometries = tuple(geometry_for(approach, cfg.lane_offset) for approach in cfg.approaches)
        by_distance = sorted(range(len(distances)), key=lambda k: distances[k])
        return Scenario(
            index=index,
            world=WorldState(agents=tuple(agents), epoch=0, dt=cfg.dt),
            geometries=geometries,
            hierarchy=Hierarchy(order=(0,) + tuple(1 + k for k in by_distance)),
            target_distances=tuple(distances),
        )

    def solve(self, kind: GameKind, setting: SolutionSetting, game: GameSpec, ego: int,
              order: Sequence[int], cfg: ScenarioConfig) -> EquilibriumResult:
        """Dispatch one decision to the solver of a (game, setting) cell"""
        brd = cfg.brd_config()
        pairwise = setting == SolutionSetting.PAIRWISE
        if kind == GameKind.NASH_BRD:
            return self.nash_service.nash_pairwise(game, ego, brd) if pairwise else self.nash_service.nash_brd(game, brd)
        if kind == GameKind.NASH_POTENTIAL:
            return self.nash_service.potential_pairwise(game, ego) if pairwise else self.nash_service.nash_potential(game)
        if kind == GameKind.STACKELBERG_NASH_FOLLOWERS:
            if pairwise:
                return self.stackelberg_service.nash_followers_pairwise(game, ego, brd)
            return self.stackelberg_service.stackelberg_nash_followers(game, ego, brd)
        mode = StackelbergMode.STRONG if kind == GameKind.STACKELBERG_STRONG else StackelbergMode.WEAK
        if pairwise:
            return self.stackelberg_service.stackelberg_pairwise(game, ego, mode, cfg.tie_tolerance)
        return self.stackelberg_service.stackelberg_hierarchy(game, Hierarchy(order=tuple(order)), mode, cfg.tie_tolerance)

    def behavior_action(self, kind: BehaviorKind, target: int, world: WorldState,
                        equilibrium: Optional[StrategyProfile], geoms: Sequence[AgentGeometry],
                        params: CostParams, ego_action: Action = 0.0,
                        actions: Sequence[Action] = DEFAULT_ACTIONS) -> Action:
        """
        Ideal and Mismatched targets play the first action of their strategy in
        `equilibrium` (the ego's profile, or the target's own solve). Simple-rules
        targets brake hard when they lack right of way and the one-step
        prediction puts them inside another vehicle's penalty box; otherwise they
        track their desired speed.
        """
        if kind == BehaviorKind.CONSTANT_SPEED:
            return 0.0
        if kind in (BehaviorKind.IDEAL, BehaviorKind.MISMATCHED):
            if equilibrium is None:
                raise GameConfigurationError(f"{kind.value} behaviour needs a solved profile")
            return equilibrium[target].first_action

        state = world.agents[target]
        vd = params.desired_speed(target)
        tracking = min(actions, key=lambda a: abs(state.v + world.dt * a - vd))
        ego_distance = geoms[0].distance_to_intersection(world.agents[0])
        if geoms[target].distance_to_intersection(state) <= ego_distance:
            return tracking
        predicted = [0.0] * world.n_agents
        predicted[0] = ego_action
        predicted[target] = tracking
        ahead = self.vehicle_service.advance(world, predicted)
        own = self.vehicle_service.position_2d(geoms[target], ahead.agents[target])
        for other in range(world.n_agents):
            if other == target:
                continue
            position = self.vehicle_service.position_2d(geoms[other], ahead.agents[other])
            if self.cost_service.stage_pair_penalty(own, position, params) > 0.0:
                return min(actions)
        return tracking

    def _ego_distance(self, world: WorldState, geoms: Sequence[AgentGeometry]) -> float:
        ego = world.agents[0]
        return min(
            self.vehicle_service.distance(geoms[0], ego, geoms[j], world.agents[j])
            for j in range(1, world.n_agents)
        )

    def run_scenario(self, cfg: ScenarioConfig, index: int) -> ScenarioResult:
        """
        Each epoch the ego builds the rollout game from the current state and
        solves it (game construction and solve are timed together), every agent
        commits one action and the world advances one tick. The crash check
        covers ego pairs at every visited state, the initial one included.
        """
        scenario = self.generate_scenario(cfg, index)
        params = cfg.cost_params()
        strategies = two_segment_strategies(cfg.actions, cfg.horizon_steps)
        geoms = scenario.geometries
        order = scenario.hierarchy.order
        world = scenario.world

        min_distance = self._ego_distance(world, geoms)
        speeds: List[float] = []
        times: List[float] = []
        ego_actions: List[float] = []
        labels: List[str] = []
        tie_epochs: List[int] = []
        nonconverged = 0
        trajectory = [world] if cfg.record_trajectory else None

        for epoch in range(cfg.epochs):
            speeds.append(world.agents[0].v)
            start = time.perf_counter()
            game = self.cost_service.build_rollout_game(world, geoms, params, strategies, cfg.profile_cap)
            result = self.solve(cfg.game, cfg.setting, game, 0, order, cfg)
            times.append(time.perf_counter() - start)

            if not result.converged:
                nonconverged += 1
            if cfg.game.supports_hierarchy and result.tie_sets:
                if any(len(members) > 1 for player, members in result.tie_sets.items() if player != 0):
                    tie_epochs.append(epoch)
                    logger.info(f"Scenario {index} epoch {epoch}: follower reply tie under {cfg.game.value}")

            ego_action = result.strategy(0).first_action
            committed = [ego_action]
            for target in range(1, world.n_agents):
                equilibrium = None
                if cfg.behavior == BehaviorKind.IDEAL:
                    equilibrium = result.profile
                elif cfg.behavior == BehaviorKind.MISMATCHED:
                    own_order = (target,) + tuple(p for p in order if p != target)
                    setting = cfg.setting
                    if setting == SolutionSetting.HIERARCHY and not cfg.target_game.supports_hierarchy:
                        setting = SolutionSetting.MULTIPLAYER
                    equilibrium = self.solve(cfg.target_game, setting, game, target, own_order, cfg).profile
                committed.append(self.behavior_action(
                    cfg.behavior, target, world, equilibrium, geoms, params, ego_action, cfg.actions
                ))

            ego_actions.append(ego_action)
            labels.append(result.strategy(0).label())
            world = self.vehicle_service.advance(world, committed)
            if trajectory is not None:
                trajectory.append(world)
            min_distance = min(min_distance, self._ego_distance(world, geoms))

        crashed = min_distance < cfg.crash_distance
        logger.debug(
            f"Scenario {index}: crashed={crashed} min_distance={min_distance:.2f} "
            f"targets at {[round(d, 2) for d in scenario.target_distances]}"
        )
        return ScenarioResult(
            scenario_id=index,
            seed=cfg.seed,
            crashed=crashed,
            min_pairwise_distance=min_distance,
            avg_ego_speed=sum(speeds) / len(speeds),
            decision_times=times,
            ego_actions=ego_actions,
            ego_strategies=labels,
            nonconverged_decisions=nonconverged,
            tie_epochs=tie_epochs,
            trajectory=trajectory,
        )

    def run_batch(self, cfg: ScenarioConfig, count: int, workers: int = 1) -> Tuple[SummaryStats, List[ScenarioResult]]:
        if count < 1:
            raise GameConfigurationError(f"a batch needs at least one scenario, got {count}")
        logger.info(
            f"Running {count} scenarios: {cfg.n_players} players, game={cfg.game.value}, "
            f"setting={cfg.setting.value}, behavior={cfg.behavior.value}, seed={cfg.seed}, workers={workers}"
        )
        if workers <= 1:
            results = [self.run_scenario(cfg, index) for index in range(count)]
        else:
            results = []
            with ProcessPoolExecutor(max_workers=workers) as executor:
                futures = [executor.submit(_run_scenario_job, cfg, index) for index in range(count)]
                for future in as_completed(futures):
                    results.append(future.result())
            results.sort(key=lambda result: result.scenario_id)
        summary = summarize(results)
        logger.info(
            f"Batch done: {summary.crash_count}/{summary.scenario_count} crashes, "
            f"mean ego speed {summary.mean_ego_speed:.3f} m/s, "
            f"mean decision time {summary.mean_decision_time:.6f} s"
        )
        return summary, results
