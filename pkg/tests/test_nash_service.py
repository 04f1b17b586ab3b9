import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from igames.errors import GameConfigurationError, ProfileSpaceTooLargeError
from igames.logger import logger
from igames.models.dtos import Approach, BrdConfig, BrdInit, CostParams, TieBreak
from igames.models.entities import LongitudinalState, Strategy, WorldState
from igames.models.game import MatrixGame
from igames.services.cost_service import CostService
from igames.services.game_core_service import GameCoreService, two_segment_strategies
from igames.services.nash_service import NashService
from igames.services.vehicle_service import geometry_for
from tests.strategies import bimatrix_tables, rollout_worlds, tabular_tables

core = GameCoreService()
nash_service = NashService(core)
cost_service = CostService()

MATCHING_PENNIES = np.array([[0.0, 1.0], [1.0, 0.0]])


def three_car_game(strategies=None):
    world = WorldState(agents=(
        LongitudinalState(z=-40.0, v=4.0),
        LongitudinalState(z=-44.0, v=4.0),
        LongitudinalState(z=-47.0, v=4.0),
    ))
    geoms = [geometry_for(a, 3.5) for a in (Approach.NORTH_BOUND, Approach.EAST_BOUND, Approach.WEST_BOUND)]
    return cost_service.build_rollout_game(world, geoms, CostParams(), strategies or two_segment_strategies())


def test_brd_on_demo_table_settles_in_one_sweep(nash, demo_game):
    result = nash.nash_brd(demo_game)
    assert result.profile_indices == (1, 1)
    assert result.costs == (0.0, 5.0)
    assert result.converged
    assert result.iterations == 1
    assert result.solver == "nash_brd"


def test_brd_counts_the_confirming_sweep(nash):
    game = cost_service.build_tabular_game([np.array([3.0, 1.0, 2.0])])
    result = nash.nash_brd(game)
    assert result.profile_indices == (1,)
    assert result.iterations == 2


def test_brd_reports_non_convergence(nash):
    game = cost_service.build_tabular_game([MATCHING_PENNIES, 1.0 - MATCHING_PENNIES])
    result = nash.nash_brd(game, BrdConfig(max_sweeps=5))
    assert not result.converged
    assert result.iterations == 5


def test_brd_tie_break_rules(nash):
    flat = MatrixGame(
        leader_actions=(-1.0, 0.0, 1.0),
        follower_actions=(-1.0, 0.0, 1.0),
        leader_costs=((1.0,) * 3,) * 3,
        follower_costs=((1.0,) * 3,) * 3,
    )
    game = cost_service.build_matrix_game(flat)
    lowest = nash.nash_brd(game)
    assert lowest.profile_indices == (0, 0)
    assert lowest.iterations == 2
    kept = nash.nash_brd(game, BrdConfig(tie_break=TieBreak.KEEP_CURRENT))
    assert kept.profile_indices == (1, 1)
    assert kept.iterations == 1
    first = nash.nash_brd(game, BrdConfig(init=BrdInit.FIRST, tie_break=TieBreak.KEEP_CURRENT))
    assert first.profile_indices == (0, 0)


@settings(max_examples=150, deadline=None)
@given(bimatrix_tables())
def test_converged_brd_lands_on_a_nash_equilibrium(tables):
    game = cost_service.build_tabular_game(tables)
    result = nash_service.nash_brd(game)
    if result.converged:
        assert core.verify_nash(game, result.profile_indices)
        assert result.profile_indices in core.brute_force_nash(game)


@settings(max_examples=50, deadline=None)
@given(tabular_tables(players=3))
def test_converged_brd_three_players(tables):
    game = cost_service.build_tabular_game(tables)
    result = nash_service.nash_brd(game)
    if result.converged:
        assert result.profile_indices in core.brute_force_nash(game)


def test_most_conservative_orders_by_segment(nash):
    candidates = [
        Strategy(segments=two_segment_strategies()[12].segments),
        two_segment_strategies()[8],
        two_segment_strategies()[6],
    ]
    assert nash.most_conservative(candidates).accelerations == (-1.0, -1.0)


def test_most_conservative_keeps_the_earliest_tie(nash):
    early, late = Strategy.constant(0.0, 4), Strategy.constant(0.0, 8)
    assert nash.most_conservative([early, late]) is early


def test_most_conservative_needs_candidates(nash):
    with pytest.raises(GameConfigurationError):
        nash.most_conservative([])


def test_potential_value_sums_costs(nash, demo_game):
    assert nash.potential_value(demo_game, (1, 1)) == 5.0
    assert nash.potential_value(demo_game, (2, 2)) == 25.0


def test_nash_potential_on_demo_table(nash, demo_game):
    # potential 5 at (-1, +1) and (0, 0); the first in enumeration order wins
    result = nash.nash_potential(demo_game)
    assert result.profile_indices == (0, 2)
    assert result.converged
    assert result.iterations == 1


def test_nash_potential_flags_non_potential_games(nash):
    game = cost_service.build_tabular_game([MATCHING_PENNIES, 1.0 - MATCHING_PENNIES])
    result = nash.nash_potential(game)
    assert result.profile_indices == (0, 0)
    assert not result.converged


def test_nash_potential_respects_the_enumeration_cap(nash):
    game = cost_service.build_tabular_game([np.zeros((4, 4)), np.zeros((4, 4))], cap=10)
    with pytest.raises(ProfileSpaceTooLargeError):
        nash.nash_potential(game)


@settings(max_examples=100, deadline=None)
@given(tabular_tables(players=3))
def test_nash_potential_solves_common_cost_games(tables):
    common = tables[0]
    game = cost_service.build_tabular_game([common, common.copy(), common.copy()])
    result = nash_service.nash_potential(game)
    assert result.converged
    assert result.costs[0] == common.min()


COARSE = two_segment_strategies((-2.0, 0.0, 2.0))


def rollout_game(world_and_geoms):
    world, geoms = world_and_geoms
    return cost_service.build_rollout_game(world, geoms, CostParams(), COARSE)


@settings(max_examples=50, deadline=None)
@given(rollout_worlds(), st.data())
def test_potential_tracks_every_unilateral_cost_change(world_and_geoms, data):
    game = rollout_game(world_and_geoms)
    index = st.integers(0, len(COARSE) - 1)
    for _ in range(20):
        profile = [data.draw(index) for _ in range(game.n_players)]
        player = data.draw(st.integers(0, game.n_players - 1))
        moved = list(profile)
        moved[player] = data.draw(index)
        gain = game.cost(player, moved) - game.cost(player, profile)
        change = nash_service.potential_value(game, moved) - nash_service.potential_value(game, profile)
        assert gain == pytest.approx(change, abs=1e-9)


@settings(max_examples=30, deadline=None)
@given(rollout_worlds())
def test_potential_minimizer_is_an_equilibrium_of_rollout_games(world_and_geoms):
    game = rollout_game(world_and_geoms)
    equilibria = core.brute_force_nash(game, tolerance=1e-9)
    assert equilibria
    result = nash_service.nash_potential(game)
    assert result.profile_indices in equilibria
    lowest = float(nash_service.potential_tensor(game).min())
    assert nash_service.potential_value(game, result.profile_indices) == pytest.approx(lowest, abs=1e-9)


@settings(max_examples=100, deadline=None)
@given(bimatrix_tables(), st.sampled_from([0, 1]))
def test_pairwise_of_two_players_is_plain_brd(tables, ego):
    game = cost_service.build_tabular_game(tables)
    pairwise = nash_service.nash_pairwise(game, ego)
    direct = nash_service.nash_brd(game)
    assert pairwise.profile_indices == direct.profile_indices
    assert pairwise.converged == direct.converged
    assert pairwise.iterations == direct.iterations


@settings(max_examples=100, deadline=None)
@given(bimatrix_tables(), st.sampled_from([0, 1]))
def test_potential_pairwise_of_two_players_is_plain_minimization(tables, ego):
    game = cost_service.build_tabular_game(tables)
    assert nash_service.potential_pairwise(game, ego).profile_indices == nash_service.nash_potential(game).profile_indices


def test_pairwise_needs_two_players(nash):
    game = cost_service.build_tabular_game([np.array([1.0, 2.0])])
    with pytest.raises(GameConfigurationError):
        nash.nash_pairwise(game, 0)


def test_pairwise_three_cars_takes_the_most_conservative_ego_strategy(nash):
    game = three_car_game()
    result = nash.nash_pairwise(game, 0)
    pair_results = [nash.nash_brd(game.restrict((0, other))) for other in (1, 2)]
    expected_ego = nash.most_conservative([r.strategy(0) for r in pair_results])
    assert result.strategy(0) == expected_ego
    assert result.profile_indices[1] == pair_results[0].profile_indices[1]
    assert result.profile_indices[2] == pair_results[1].profile_indices[1]
    assert result.iterations == sum(r.iterations for r in pair_results)
    assert result.costs == game.costs(result.profile_indices)


def test_potential_pairwise_three_cars(nash):
    game = three_car_game()
    result = nash.potential_pairwise(game, 0)
    pair_results = [nash.nash_potential(game.restrict((0, other))) for other in (1, 2)]
    assert result.strategy(0) == nash.most_conservative([r.strategy(0) for r in pair_results])
    assert result.solver == "potential_pairwise"


def test_solver_debug_records_are_formatted_when_enabled(nash):
    records = []
    sink = logger.add(records.append, level="DEBUG", format="{message}")
    try:
        nash.nash_pairwise(three_car_game(), 0)
    finally:
        logger.remove(sink)
    assert any(record.startswith("Pairwise nash_pairwise: ego candidates [") for record in records)
    assert any(record.startswith("Best-response dynamics converged in ") for record in records)
    assert any(record.startswith("Built rollout game: 3 players x 25 strategies at epoch 0") for record in records)
