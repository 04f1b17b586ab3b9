import pytest
from igames import __version__
from igames.api.game_controller import parse_profile
from igames.api.simulation_controller import guarded
from igames.errors import GameConfigurationError, IGamesError, ProfileSpaceTooLargeError
from igames.main import main
from igames.models.dtos import SummaryStats
from igames.repositories.results_repository import ResultsRepository


def raising(error):
    def body():
        raise error
    return body


def test_matrix_demo_prints_both_stackelberg_solutions(capsys):
    assert main(["matrix-demo"]) == 0
    out = capsys.readouterr().out
    assert "Strong Stackelberg equilibrium: (0, 0) costs (0, 5)" in out
    assert "Weak Stackelberg equilibria: (-1, 1) costs (5, 0); (0, 1) costs (5, 5)" in out
    assert "Weak Stackelberg selected (lowest leader index): (-1, 1) costs (5, 0)" in out
    assert "Pure Nash equilibria: (-1, 1) costs (5, 0); (0, 0) costs (0, 5); (0, 1) costs (5, 5)" in out
    assert "15,10" in out


def test_verify_an_equilibrium(capsys):
    assert main(["verify", "--profile", "0,0"]) == 0
    out = capsys.readouterr().out
    assert "Nash: yes" in out
    assert "Strong Stackelberg: yes" in out
    assert "Weak Stackelberg: no" in out


def test_verify_negative_actions(capsys):
    assert main(["verify", "--profile=-1,1"]) == 0
    assert "Weak Stackelberg: yes" in capsys.readouterr().out


def test_verify_a_non_equilibrium(capsys):
    assert main(["verify", "--profile", "1,1"]) == 1
    out = capsys.readouterr().out
    assert "leader: gains 10 by deviating to -1" in out
    assert "follower: no improving deviation" in out
    assert "Nash: no" in out


def test_verify_a_game_file(tmp_path, capsys):
    game = tmp_path / "pennies.txt"
    game.write_text("L\\F 0 1\n0 0,1 1,0\n1 1,0 0,1\n", encoding="utf-8")
    assert main(["verify", "--game", str(game), "--profile", "0,0"]) == 1
    assert "follower: gains 1 by deviating to 1" in capsys.readouterr().out


@pytest.mark.parametrize("argv", [
    ["verify", "--profile", "0,5"],
    ["verify", "--profile", "0"],
    ["verify", "--profile", "a,b"],
    ["verify", "--game", "no-such-file.txt", "--profile", "0,0"],
    ["simulate", "--players", "7"],
    ["simulate", "--game", "nbr", "--setting", "hierarchy", "--epochs", "1", "--scenarios", "1"],
    ["simulate", "--ego-start", "50", "--epochs", "1", "--scenarios", "1"],
])
def test_usage_and_configuration_errors_exit_2(argv, tmp_path):
    assert main(argv + ["--out", str(tmp_path)] if argv[0] == "simulate" else argv) == 2


def test_version(capsys):
    assert main(["--version"]) == 0
    assert __version__ in capsys.readouterr().out


def test_exit_codes_of_guarded_commands():
    assert guarded("test", lambda: 0) == 0
    assert guarded("test", raising(GameConfigurationError("bad flag"))) == 2
    assert guarded("test", raising(ProfileSpaceTooLargeError(30, 20))) == 3
    assert guarded("test", raising(IGamesError("broken"))) == 4
    assert guarded("test", raising(RuntimeError("boom"))) == 4


def test_parse_profile(costs):
    matrix = costs.matrix_game_from_formula()
    assert parse_profile("-1,1", matrix) == (0, 2)
    assert parse_profile("0.0,0", matrix) == (1, 1)
    with pytest.raises(GameConfigurationError):
        parse_profile("2,0", matrix)


def test_simulate_writes_results(tmp_path, capsys):
    argv = ["simulate", "--scenarios", "2", "--epochs", "2", "--out", str(tmp_path), "--format", "json"]
    assert main(argv) == 0
    summary = SummaryStats.model_validate_json(capsys.readouterr().out)
    assert summary.scenario_count == 2
    assert summary.decision_count == 4
    repository = ResultsRepository()
    rows = repository.read_scenario_rows(tmp_path / "scenarios.csv")
    assert [row.scenario_id for row in rows] == [0, 1]
    assert repository.read_summary(tmp_path / "summary.json").config["scenarios"] == 2
    manifest = repository.read_manifest(tmp_path / "manifest.json")
    assert manifest.tool_version == __version__
    assert manifest.layout == ["north_bound", "east_bound"]


def test_simulate_table_output(tmp_path, capsys):
    argv = ["simulate", "--scenarios", "1", "--epochs", "1", "--game", "sse", "--setting", "hierarchy",
            "--out", str(tmp_path)]
    assert main(argv) == 0
    out = capsys.readouterr().out
    assert "Crashes per 100 Games" in out
    assert "SSE (hierarchy, ideal, N=2)" in out


def test_bench_skips_invalid_cells(tmp_path, capsys):
    argv = ["bench", "--players", "2", "--games", "nbr", "sse", "--settings", "multiplayer", "hierarchy",
            "--scenarios", "1", "--epochs", "1", "--out", str(tmp_path)]
    assert main(argv) == 0
    rows = ResultsRepository().read_bench_rows(tmp_path / "bench.csv")
    assert [(row.game.value, row.setting.value) for row in rows] == [
        ("nbr", "multiplayer"), ("sse", "multiplayer"), ("sse", "hierarchy"),
    ]
    assert all(row.decisions == 1 for row in rows)


@pytest.mark.parametrize("workers", ["1", "2"])
def test_enumeration_cap_exits_3_with_any_worker_count(tmp_path, workers):
    argv = ["simulate", "--game", "sse", "--setting", "hierarchy", "--scenarios", "2", "--epochs", "1",
            "--profile-cap", "100", "--workers", workers, "--out", str(tmp_path)]
    assert main(argv) == 3


def without_timing(path):
    return [line.rsplit(",", 1)[0] for line in path.read_text(encoding="utf-8").splitlines()]


def test_simulate_reruns_match_apart_from_timing(tmp_path):
    for run in ("first", "second"):
        argv = ["simulate", "--players", "3", "--scenarios", "3", "--epochs", "3", "--seed", "5",
                "--out", str(tmp_path / run), "--format", "csv"]
        assert main(argv) == 0
    assert without_timing(tmp_path / "first" / "scenarios.csv") == without_timing(tmp_path / "second" / "scenarios.csv")


def test_bench_reruns_match_apart_from_timing(tmp_path):
    for run in ("first", "second"):
        argv = ["bench", "--players", "2", "--games", "nbr", "sse", "--scenarios", "2", "--epochs", "2",
                "--out", str(tmp_path / run)]
        assert main(argv) == 0
    assert without_timing(tmp_path / "first" / "bench.csv") == without_timing(tmp_path / "second" / "bench.csv")
