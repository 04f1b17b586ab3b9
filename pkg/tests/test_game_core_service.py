import numpy as np
import pytest
from hypothesis import given, settings
from igames.errors import GameConfigurationError, ProfileSpaceTooLargeError
from igames.models.entities import Strategy
from igames.models.game import GameSpec
from igames.services.cost_service import CostService, TabularCostEvaluator
from igames.services.game_core_service import GameCoreService, two_segment_strategies
from tests.strategies import bimatrix_tables, tabular_tables

core = GameCoreService()
cost_service = CostService()


def test_follower_best_responses_keep_every_tie(game_core, demo_game):
    # leader plays 0: follower costs 10 / 5 / 5
    assert game_core.best_response_set(demo_game, 1, [1, 0]) == (1, 2)
    # leader plays +1: follower costs 10 / 10 / 10
    assert game_core.best_response_set(demo_game, 1, [2, 0]) == (0, 1, 2)


def test_single_strategy_player_always_best_responds(game_core):
    game = cost_service.build_tabular_game([np.array([[3.0, 1.0, 2.0]]), np.array([[0.0, 5.0, 1.0]])])
    for other in range(3):
        assert game_core.best_response_set(game, 0, [0, other]) == (0,)


def test_best_response_tolerance_widens_the_set(game_core):
    game = cost_service.build_tabular_game([np.array([1.0, 1.05, 2.0])])
    assert game_core.best_response_set(game, 0, [0]) == (0,)
    assert game_core.best_response_set(game, 0, [0], tolerance=0.1) == (0, 1)


def test_empty_strategy_set_is_rejected():
    evaluator = TabularCostEvaluator([np.zeros((2,))])
    with pytest.raises(GameConfigurationError):
        GameSpec(players=(0,), strategy_sets=((),), evaluator=evaluator)


def test_verify_nash_on_demo_table(game_core, demo_game):
    assert game_core.verify_nash(demo_game, [1, 1])
    # leader +1 against follower +1 costs 15 where -1 costs 5
    assert not game_core.verify_nash(demo_game, [2, 2])


def test_verify_nash_single_player_argmin(game_core):
    game = cost_service.build_tabular_game([np.array([4.0, 2.0, 3.0])])
    assert game_core.verify_nash(game, [1])
    assert not game_core.verify_nash(game, [0])


def test_verify_nash_rejects_out_of_range_profile(game_core, demo_game):
    with pytest.raises(GameConfigurationError):
        game_core.verify_nash(demo_game, [3, 0])


def test_deviation_gains_name_the_improving_move(game_core, demo_game):
    gains = game_core.deviation_gains(demo_game, [2, 2])
    assert gains[0] == (10.0, 0)
    assert gains[1] == (0.0, 2)


def test_enumerate_profiles_counts_and_order(game_core, demo_game):
    profiles = list(game_core.enumerate_profiles(demo_game))
    assert len(profiles) == 9
    assert profiles == sorted(profiles)
    assert profiles[0] == (0, 0) and profiles[-1] == (2, 2)


@pytest.mark.parametrize("players,expected", [(2, 625), (4, 390625)])
def test_enumerate_profiles_over_two_segment_sets(game_core, players, expected):
    tables = [np.zeros((25,) * players) for _ in range(players)]
    game = cost_service.build_tabular_game(tables)
    assert sum(1 for _ in game_core.enumerate_profiles(game)) == expected


def test_enumeration_cap(game_core):
    game = cost_service.build_tabular_game([np.zeros((5, 5)), np.zeros((5, 5))], cap=24)
    with pytest.raises(ProfileSpaceTooLargeError) as info:
        list(game_core.enumerate_profiles(game))
    assert info.value.size == 25
    assert info.value.cap == 24


def test_brute_force_nash_on_demo_table(game_core, demo_game):
    # (-1, +1), (0, 0) and (0, +1)
    assert game_core.brute_force_nash(demo_game) == {(0, 2), (1, 1), (1, 2)}


def test_brute_force_nash_dominant_strategies(game_core):
    costs = np.add.outer(np.arange(3.0), np.zeros(3))
    game = cost_service.build_tabular_game([costs, costs.T])
    assert game_core.brute_force_nash(game) == {(0, 0)}


def test_brute_force_nash_matching_pennies_is_empty(game_core):
    leader = np.array([[0.0, 1.0], [1.0, 0.0]])
    game = cost_service.build_tabular_game([leader, 1.0 - leader])
    assert game_core.brute_force_nash(game) == set()


def test_two_segment_strategies_layout():
    strategies = two_segment_strategies()
    assert len(strategies) == 25
    assert strategies[12].accelerations == (0.0, 0.0)
    assert strategies[0].accelerations == (-2.0, -2.0)
    assert strategies[7].accelerations == (-1.0, 0.0)
    assert all(s.steps == 8 and s.segments[0].steps == 4 for s in strategies)
    odd = two_segment_strategies(horizon_steps=5)
    assert odd[0].segments[0].steps == 2 and odd[0].segments[1].steps == 3


def test_strategy_identity_is_structural():
    assert Strategy.constant(1.0, 3) == Strategy.constant(1.0, 3)
    assert Strategy.constant(1.0, 3) != Strategy.constant(1.0, 4)
    assert len(set(two_segment_strategies())) == 25


@settings(max_examples=100, deadline=None)
@given(bimatrix_tables())
def test_verify_nash_matches_best_response_membership(tables):
    game = cost_service.build_tabular_game(tables)
    for profile in core.enumerate_profiles(game):
        in_every_reply_set = all(
            profile[p] in core.best_response_set(game, p, profile) for p in range(2)
        )
        assert core.verify_nash(game, profile) == in_every_reply_set


@settings(max_examples=100, deadline=None)
@given(tabular_tables(players=3))
def test_brute_force_nash_is_exactly_the_verified_profiles(tables):
    game = cost_service.build_tabular_game(tables)
    verified = {p for p in core.enumerate_profiles(game) if core.verify_nash(game, p)}
    assert core.brute_force_nash(game) == verified


@settings(max_examples=100, deadline=None)
@given(bimatrix_tables())
def test_brute_force_nash_invariant_under_positive_affine_rescaling(tables):
    rescaled = [tables[0] * 3.0 + 7.0, tables[1]]
    original = core.brute_force_nash(cost_service.build_tabular_game(tables))
    assert core.brute_force_nash(cost_service.build_tabular_game(rescaled)) == original
