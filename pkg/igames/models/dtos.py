"""
Configuration and result records exchanged between services, repositories and the CLI
"""
from datetime import datetime, timezone
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple
from pydantic import BaseModel, ConfigDict, Field, model_validator
from igames.config import settings
from igames.models.entities import DEFAULT_ACTIONS, Action, AgentGeometry, Hierarchy, WorldState


def utc_now() -> datetime:
    """Get current UTC datetime with timezone awareness"""
    return datetime.now(timezone.utc)


class GameKind(str, Enum):
    """Game family solved by the ego; values are the CLI names"""
    NASH_BRD = "nbr"
    NASH_POTENTIAL = "npf"
    STACKELBERG_STRONG = "sse"
    STACKELBERG_WEAK = "wse"
    STACKELBERG_NASH_FOLLOWERS = "snf"

    @property
    def supports_hierarchy(self) -> bool:
        """Strong and weak Stackelberg games can be solved over a full play order"""
        return self in (GameKind.STACKELBERG_STRONG, GameKind.STACKELBERG_WEAK)


class SolutionSetting(str, Enum):
    MULTIPLAYER = "multiplayer"
    PAIRWISE = "pairwise"
    HIERARCHY = "hierarchy"


class BehaviorKind(str, Enum):
    """How target vehicles choose their actions"""
    IDEAL = "ideal"
    SIMPLE_RULES = "simple"
    CONSTANT_SPEED = "constant"
    MISMATCHED = "mismatched"


class StackelbergMode(str, Enum):
    """Follower tie-breaking: Strong favours the leader, Weak works against it"""
    STRONG = "strong"
    WEAK = "weak"


class TieBreak(str, Enum):
    LOWEST_INDEX = "lowest_index"
    KEEP_CURRENT = "keep_current"


class BrdInit(str, Enum):
    ZERO = "zero"
    FIRST = "first"


class Approach(str, Enum):
    """Travel direction of a vehicle through the intersection"""
    NORTH_BOUND = "north_bound"
    EAST_BOUND = "east_bound"
    WEST_BOUND = "west_bound"
    SOUTH_BOUND = "south_bound"


DEFAULT_LAYOUTS: Dict[int, Tuple[Approach, ...]] = {
    2: (Approach.NORTH_BOUND, Approach.EAST_BOUND),
    3: (Approach.NORTH_BOUND, Approach.EAST_BOUND, Approach.WEST_BOUND),
    4: (Approach.NORTH_BOUND, Approach.EAST_BOUND, Approach.WEST_BOUND, Approach.SOUTH_BOUND),
}


class BrdConfig(BaseModel):
    """Best-response dynamics knobs"""
    model_config = ConfigDict(frozen=True)

    init: BrdInit = Field(default=BrdInit.ZERO, description="Initial profile rule")
    max_sweeps: int = Field(default=settings.MAX_SWEEPS, ge=1, description="Sweep cap before giving up")
    tie_break: TieBreak = Field(default=TieBreak.LOWEST_INDEX, description="Selection inside a best-response set")
    tolerance: float = Field(default=settings.TIE_TOLERANCE, ge=0.0, description="Cost tie tolerance")


class CostParams(BaseModel):
    """Parameters of the rollout cost"""
    model_config = ConfigDict(frozen=True)

    v_d: float = Field(default=settings.DESIRED_SPEED, gt=0.0, description="Desired speed, m/s")
    desired_speeds: Optional[Tuple[float, ...]] = Field(None, description="Per-player override of v_d")
    d_xc: float = Field(default=settings.SAFE_DISTANCE, gt=0.0, description="Safe x-distance, m")
    d_yc: float = Field(default=settings.SAFE_DISTANCE, gt=0.0, description="Safe y-distance, m")
    beta: float = Field(default=settings.BETA, gt=0.0, description="tanh sharpness, 1/m^2")
    horizon_steps: int = Field(default=settings.HORIZON_STEPS, gt=0, description="Horizon length T in ticks")
    dt: float = Field(default=settings.DT, gt=0.0, description="Sampling time, s")

    def desired_speed(self, player: int) -> float:
        if self.desired_speeds is not None:
            return self.desired_speeds[player]
        return self.v_d


class ScenarioConfig(BaseModel):
    """Everything needed to reproduce one batch of intersection scenarios"""
    model_config = ConfigDict(frozen=True)

    n_players: int = Field(default=2, ge=2, le=4, description="Ego plus targets")
    game: GameKind = Field(default=GameKind.NASH_BRD, description="Game the ego solves")
    setting: SolutionSetting = Field(default=SolutionSetting.MULTIPLAYER, description="Solution setting")
    behavior: BehaviorKind = Field(default=BehaviorKind.IDEAL, description="Target behaviour")
    target_game: GameKind = Field(default=GameKind.NASH_BRD, description="Game mismatched targets solve")
    crash_distance: float = Field(default=settings.CRASH_DISTANCE, gt=0.0, description="Crash threshold D, m")
    epochs: int = Field(default=settings.EPOCHS, ge=1, description="Decisions per scenario")
    seed: int = Field(default=settings.SEED, ge=0, description="Batch seed")
    ego_start_distance: float = Field(default=settings.EGO_START_DISTANCE, gt=0.0, description="Ego distance to centre, m")
    target_distance_range: Tuple[float, float] = Field(
        default=(settings.TARGET_DISTANCE_MIN, settings.TARGET_DISTANCE_MAX),
        description="Uniform placement range of targets, m",
    )
    initial_speed: float = Field(default=settings.INITIAL_SPEED, ge=0.0, description="Initial speed of all vehicles")
    desired_speed: float = Field(default=settings.DESIRED_SPEED, gt=0.0, description="Desired speed of all vehicles")
    safe_distance: float = Field(default=settings.SAFE_DISTANCE, gt=0.0, description="d_xc = d_yc, m")
    beta: float = Field(default=settings.BETA, gt=0.0)
    dt: float = Field(default=settings.DT, gt=0.0)
    horizon_steps: int = Field(default=settings.HORIZON_STEPS, ge=2)
    actions: Tuple[Action, ...] = Field(default=DEFAULT_ACTIONS, min_length=1, description="Action set")
    lane_offset: float = Field(default=settings.LANE_OFFSET, ge=0.0, description="Lane offset from centreline, m")
    layout: Optional[Tuple[Approach, ...]] = Field(None, description="Approach per player; ego first")
    max_sweeps: int = Field(default=settings.MAX_SWEEPS, ge=1)
    profile_cap: int = Field(default=settings.PROFILE_CAP, ge=1)
    tie_tolerance: float = Field(default=settings.TIE_TOLERANCE, ge=0.0)
    record_trajectory: bool = Field(default=False, description="Keep the full state log in results")

    @model_validator(mode="after")
    def _consistent(self) -> "ScenarioConfig":
        low, high = self.target_distance_range
        if low <= self.ego_start_distance:
            raise ValueError("targets must start further from the intersection than the ego")
        if high < low:
            raise ValueError(f"target distance range {self.target_distance_range} is inverted")
        if self.setting == SolutionSetting.HIERARCHY and not self.game.supports_hierarchy:
            raise ValueError("the hierarchy setting requires a strong or weak Stackelberg game")
        if self.layout is not None and len(self.layout) != self.n_players:
            raise ValueError(f"layout names {len(self.layout)} approaches for {self.n_players} players")
        return self

    @property
    def approaches(self) -> Tuple[Approach, ...]:
        return self.layout if self.layout is not None else DEFAULT_LAYOUTS[self.n_players]

    def cost_params(self) -> CostParams:
        return CostParams(
            v_d=self.desired_speed,
            d_xc=self.safe_distance,
            d_yc=self.safe_distance,
            beta=self.beta,
            horizon_steps=self.horizon_steps,
            dt=self.dt,
        )

    def brd_config(self) -> BrdConfig:
        return BrdConfig(max_sweeps=self.max_sweeps, tolerance=self.tie_tolerance)


class Scenario(BaseModel):
    """Initial conditions of one generated scenario"""
    model_config = ConfigDict(frozen=True)

    index: int = Field(ge=0, description="Index within the batch")
    world: WorldState = Field(description="Initial world state; agent 0 is the ego")
    geometries: Tuple[AgentGeometry, ...] = Field(description="Lane geometry of each agent")
    hierarchy: Hierarchy = Field(description="Ego first, then targets by ascending distance")
    target_distances: Tuple[float, ...] = Field(description="Initial distance of each target to the centre, m")


class ScenarioResult(BaseModel):
    """Outcome of one closed-loop scenario"""
    scenario_id: int = Field(description="Index within the batch")
    seed: int = Field(description="Batch seed")
    crashed: bool = Field(description="Ego came within D of any target")
    min_pairwise_distance: float = Field(description="Closest ego-target distance over the run, m")
    avg_ego_speed: float = Field(description="Mean ego speed over all epochs, m/s")
    decision_times: List[float] = Field(default_factory=list, description="Wall-clock seconds per ego decision")
    ego_actions: List[float] = Field(default_factory=list, description="Ego action committed at each epoch")
    ego_strategies: List[str] = Field(default_factory=list, description="Label of the ego strategy solved each epoch")
    nonconverged_decisions: int = Field(default=0, description="Ego decisions whose solver did not converge")
    tie_epochs: List[int] = Field(default_factory=list, description="Epochs whose Stackelberg solve hit a follower tie")
    trajectory: Optional[List[WorldState]] = Field(None, description="Full state log when recorded")

    @property
    def mean_decision_time(self) -> float:
        if not self.decision_times:
            return 0.0
        return sum(self.decision_times) / len(self.decision_times)


class SummaryStats(BaseModel):
    """Aggregates over a batch of scenario results"""
    scenario_count: int = Field(description="Scenarios in the batch")
    crash_count: int = Field(description="Scenarios scored as crashes")
    crashes_per_100: float = Field(description="Crash count scaled to 100 scenarios")
    mean_ego_speed: float = Field(description="Mean of per-scenario average ego speeds, m/s")
    mean_decision_time: float = Field(description="Mean over every ego decision in the batch, s")
    decision_count: int = Field(description="Ego decisions in the batch")
    nonconverged_decisions: int = Field(default=0, description="Decisions whose solver did not converge")


class ScenarioRow(BaseModel):
    """One line of the per-scenario CSV; field order is the CSV header"""
    scenario_id: int
    seed: int
    n_players: int
    game: GameKind
    setting: SolutionSetting
    behavior: BehaviorKind
    crashed: bool
    min_distance_m: float
    avg_ego_speed_mps: float
    mean_decision_time_s: float


class BenchRow(BaseModel):
    """One line of the bench CSV"""
    n_players: int
    game: GameKind
    setting: SolutionSetting
    scenarios: int
    decisions: int
    mean_decision_time_s: float


class RunManifest(BaseModel):
    """Everything needed to re-run a batch (timings aside)"""
    config: Dict[str, Any] = Field(description="Echo of the scenario configuration")
    tool_version: str = Field(description="igames version that produced the run")
    seed: int = Field(description="Batch seed")
    layout: List[str] = Field(description="Approach of each player")
    timestamp: datetime = Field(default_factory=utc_now, description="Run start")
    output_paths: Dict[str, str] = Field(default_factory=dict, description="Files written by the run")


class BatchSummary(BaseModel):
    """JSON summary document: aggregates plus a configuration echo"""
    summary: SummaryStats
    config: Dict[str, Any]
