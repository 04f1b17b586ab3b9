"""
Immutable domain values: strategies, profiles, vehicle states and solver results
"""
from typing import Dict, List, Optional, Tuple
from pydantic import BaseModel, ConfigDict, Field, field_validator

# One-step control: signed longitudinal acceleration in m/s^2
Action = float

DEFAULT_ACTIONS: Tuple[Action, ...] = (-2.0, -1.0, 0.0, 1.0, 2.0)

AXIS_HEADINGS: Tuple[Tuple[float, float], ...] = ((1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0))


class Segment(BaseModel):
    """One constant-acceleration piece of a strategy"""
    model_config = ConfigDict(frozen=True)

    accel: Action = Field(description="Acceleration held during the segment, m/s^2", allow_inf_nan=False)
    steps: int = Field(gt=0, description="Number of dt-ticks the acceleration is held")


class Strategy(BaseModel):
    """Segmented action sequence over the horizon; identity is structural"""
    model_config = ConfigDict(frozen=True)

    segments: Tuple[Segment, ...] = Field(min_length=1, description="Ordered segments")

    @property
    def steps(self) -> int:
        return sum(segment.steps for segment in self.segments)

    @property
    def first_action(self) -> Action:
        return self.segments[0].accel

    @property
    def accelerations(self) -> Tuple[Action, ...]:
        """Per-segment accelerations, used for conservativeness ordering"""
        return tuple(segment.accel for segment in self.segments)

    def actions(self) -> List[Action]:
        """Expand to one action per tick"""
        expanded: List[Action] = []
        for segment in self.segments:
            expanded.extend([segment.accel] * segment.steps)
        return expanded

    def label(self) -> str:
        return "(" + ",".join(f"{accel:+g}" for accel in self.accelerations) + ")"

    @classmethod
    def constant(cls, accel: Action, steps: int) -> "Strategy":
        return cls(segments=(Segment(accel=accel, steps=steps),))


class StrategyProfile(BaseModel):
    """One strategy per player, ordered by player index"""
    model_config = ConfigDict(frozen=True)

    per_player: Tuple[Strategy, ...] = Field(description="Strategy of each player")

    def __len__(self) -> int:
        return len(self.per_player)

    def __getitem__(self, player: int) -> Strategy:
        return self.per_player[player]


class LongitudinalState(BaseModel):
    """Position along the travel axis and speed of one vehicle"""
    model_config = ConfigDict(frozen=True)

    z: float = Field(description="Signed distance travelled along the own axis, m", allow_inf_nan=False)
    v: float = Field(ge=0.0, description="Speed, m/s", allow_inf_nan=False)


class AgentGeometry(BaseModel):
    """Maps a vehicle's longitudinal coordinate onto the intersection plane"""
    model_config = ConfigDict(frozen=True)

    heading: Tuple[float, float] = Field(description="Axis-aligned unit travel direction")
    lane_offset: Tuple[float, float] = Field(description="Plane position at z = 0, m")
    stop_line: float = Field(default=0.0, description="z of the intersection centre, m")

    @field_validator("heading")
    @classmethod
    def _axis_aligned(cls, heading: Tuple[float, float]) -> Tuple[float, float]:
        if tuple(heading) not in AXIS_HEADINGS:
            raise ValueError(f"heading must be one of {AXIS_HEADINGS}, got {heading}")
        return heading

    def distance_to_intersection(self, state: LongitudinalState) -> float:
        """Remaining distance to the centre; negative once the vehicle has crossed"""
        return self.stop_line - state.z


class WorldState(BaseModel):
    """Global system state: every agent's longitudinal state at one tick"""
    model_config = ConfigDict(frozen=True)

    agents: Tuple[LongitudinalState, ...] = Field(min_length=1, description="One state per agent")
    epoch: int = Field(default=0, ge=0, description="Tick index")
    dt: float = Field(default=0.5, gt=0.0, description="Sampling time, s")

    @property
    def n_agents(self) -> int:
        return len(self.agents)


class EquilibriumResult(BaseModel):
    """Solved profile with per-player costs and solver bookkeeping"""
    model_config = ConfigDict(frozen=True)

    profile: StrategyProfile = Field(description="Solved strategy profile")
    profile_indices: Tuple[int, ...] = Field(description="Index of each player's strategy in its set")
    costs: Tuple[float, ...] = Field(description="Cost of each player at the profile")
    iterations: int = Field(ge=0, description="Sweeps (BRD) or subgame solves performed")
    converged: bool = Field(description="Whether the solver reached its fixed point / definition")
    tie_sets: Optional[Dict[int, Tuple[Strategy, ...]]] = Field(
        None, description="Equally-optimal strategies per player, where the solver tracks them"
    )
    solver: str = Field(default="", description="Name of the producing solver")

    def strategy(self, player: int) -> Strategy:
        return self.profile[player]


class Hierarchy(BaseModel):
    """Stackelberg play order; position 0 is the top leader"""
    model_config = ConfigDict(frozen=True)

    order: Tuple[int, ...] = Field(min_length=1, description="Permutation of player indices")

    @field_validator("order")
    @classmethod
    def _permutation(cls, order: Tuple[int, ...]) -> Tuple[int, ...]:
        if sorted(order) != list(range(len(order))):
            raise ValueError(f"hierarchy {order} is not a permutation of 0..{len(order) - 1}")
        return order

    @property
    def leader(self) -> int:
        return self.order[0]
