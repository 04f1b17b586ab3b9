"""
Matrix-game commands: the strong-versus-weak demonstration and equilibrium verification
"""
import argparse
from typing import List, Optional, Sequence, Tuple
from igames.api.simulation_controller import guarded
from igames.dependencies import (
    get_cost_service, get_game_core_service, get_matrix_game_repository, get_stackelberg_service,
)
from igames.errors import GameConfigurationError
from igames.logger import logger
from igames.models.dtos import StackelbergMode
from igames.models.game import GameSpec, MatrixGame

PLAYER_NAMES = ("leader", "follower")


def _label(value: float) -> str:
    return f"{value:g}"


def describe(game: GameSpec, indices: Sequence[int]) -> str:
    """'(l, f) costs (cl, cf)' in action values"""
    actions = ", ".join(_label(game.strategy_sets[p][i].first_action) for p, i in enumerate(indices))
    costs = ", ".join(_label(c) for c in game.costs(indices))
    return f"({actions}) costs ({costs})"


def parse_profile(text: str, matrix: MatrixGame) -> Tuple[int, int]:
    """'l,f' action values to row and column indices"""
    parts = text.split(",")
    if len(parts) != 2:
        raise GameConfigurationError(f"profile '{text}' is not 'leader_action,follower_action'")
    try:
        leader, follower = float(parts[0]), float(parts[1])
    except ValueError:
        raise GameConfigurationError(f"profile '{text}' holds a non-numeric action")
    if leader not in matrix.leader_actions:
        raise GameConfigurationError(f"leader action {_label(leader)} is not in {matrix.leader_actions}")
    if follower not in matrix.follower_actions:
        raise GameConfigurationError(f"follower action {_label(follower)} is not in {matrix.follower_actions}")
    return matrix.leader_actions.index(leader), matrix.follower_actions.index(follower)


def cmd_matrix_demo(args: Optional[argparse.Namespace] = None, cost_service=None, game_core_service=None,
                    stackelberg_service=None, matrix_game_repository=None) -> int:
    """Regenerate the 3x3 demonstration table and print its equilibria"""
    cost_service = cost_service or get_cost_service()
    game_core_service = game_core_service or get_game_core_service()
    stackelberg_service = stackelberg_service or get_stackelberg_service()
    matrix_game_repository = matrix_game_repository or get_matrix_game_repository()

    def body() -> int:
        matrix = cost_service.matrix_game_from_formula()
        game = cost_service.build_matrix_game(matrix)
        strong = stackelberg_service.stackelberg_2p(game, 0, StackelbergMode.STRONG)
        weak = stackelberg_service.stackelberg_2p(game, 0, StackelbergMode.WEAK)
        weak_set = stackelberg_service.weak_stackelberg_set(game)
        nash = game_core_service.nash_profiles(game)

        lines: List[str] = ["Cost table (rows: leader action, columns: follower action, cells: leader,follower)"]
        lines.append(matrix_game_repository.dump(matrix).rstrip("\n"))
        lines.append(f"Strong Stackelberg equilibrium: {describe(game, strong.profile_indices)}")
        lines.append("Weak Stackelberg equilibria: " + "; ".join(describe(game, p) for p in weak_set))
        lines.append(f"Weak Stackelberg selected (lowest leader index): {describe(game, weak.profile_indices)}")
        lines.append("Pure Nash equilibria: " + ("; ".join(describe(game, p) for p in nash) or "none"))
        print("\n".join(lines))
        return 0

    return guarded("matrix-demo", body)


def cmd_verify(args: argparse.Namespace, cost_service=None, game_core_service=None,
               stackelberg_service=None, matrix_game_repository=None) -> int:
    """
    Print each player's best unilateral deviation gain and whether the profile
    is a Nash, strong Stackelberg and weak Stackelberg equilibrium (player 0
    leads). Exit 0 when the profile is a Nash equilibrium, 1 otherwise.
    """
    cost_service = cost_service or get_cost_service()
    game_core_service = game_core_service or get_game_core_service()
    stackelberg_service = stackelberg_service or get_stackelberg_service()
    matrix_game_repository = matrix_game_repository or get_matrix_game_repository()

    def body() -> int:
        if args.game:
            matrix = matrix_game_repository.load(args.game)
        else:
            matrix = cost_service.matrix_game_from_formula()
        game = cost_service.build_matrix_game(matrix)
        profile = parse_profile(args.profile, matrix)

        lines = [f"Profile {describe(game, profile)}"]
        for player, (gain, index) in enumerate(game_core_service.deviation_gains(game, profile)):
            if gain > 0.0:
                action = _label(game.strategy_sets[player][index].first_action)
                lines.append(f"  {PLAYER_NAMES[player]}: gains {_label(gain)} by deviating to {action}")
            else:
                lines.append(f"  {PLAYER_NAMES[player]}: no improving deviation")
        is_nash = game_core_service.verify_nash(game, profile)
        lines.append(f"Nash: {'yes' if is_nash else 'no'}")
        lines.append(f"Strong Stackelberg: {'yes' if stackelberg_service.is_strong_stackelberg(game, profile) else 'no'}")
        lines.append(f"Weak Stackelberg: {'yes' if stackelberg_service.is_weak_stackelberg(game, profile) else 'no'}")
        print("\n".join(lines))
        logger.debug(f"Verified profile {profile}: nash={is_nash}")
        return 0 if is_nash else 1

    return guarded("verify", body)


def add_verify_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--game", default=None, help="Matrix-game text file; defaults to the demonstration table")
    parser.add_argument("--profile", required=True,
                        help="Leader and follower action as 'l,f'; write --profile=-1,1 for negative actions")
