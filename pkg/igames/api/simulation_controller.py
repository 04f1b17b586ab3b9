"""
Simulation commands: batch runs with CSV/JSON output and decision-time benchmarks
"""
import argparse
import traceback
from pathlib import Path
from typing import Callable, List, Sequence
from pydantic import ValidationError
from igames import __version__
from igames.config import settings
from igames.dependencies import get_results_repository, get_simulation_service
from igames.errors import IGamesError
from igames.logger import logger
from igames.models.dtos import (
    BatchSummary, BehaviorKind, BenchRow, GameKind, RunManifest, ScenarioConfig, ScenarioResult,
    ScenarioRow, SolutionSetting, SummaryStats,
)

SCENARIOS_FILE = "scenarios.csv"
SUMMARY_FILE = "summary.json"
MANIFEST_FILE = "manifest.json"
BENCH_FILE = "bench.csv"


def render_table(headers: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    """Fixed-width text table"""
    widths = [max(len(str(cell)) for cell in column) for column in zip(headers, *rows)]
    lines = [" | ".join(str(h).ljust(w) for h, w in zip(headers, widths))]
    lines.append("-+-".join("-" * w for w in widths))
    for row in rows:
        lines.append(" | ".join(str(cell).ljust(w) for cell, w in zip(row, widths)))
    return "\n".join(lines)


def summary_table(label: str, summary: SummaryStats) -> str:
    return render_table(
        ["Game", "Crashes per 100 Games", "Ave. Ego Speed (m/s)", "Ave. Decision Time (s)"],
        [[label, f"{summary.crashes_per_100:g}", f"{summary.mean_ego_speed:.3f}", f"{summary.mean_decision_time:.4f}"]],
    )


def build_scenario_config(args: argparse.Namespace) -> ScenarioConfig:
    """Map parsed flags onto a validated ScenarioConfig"""
    return ScenarioConfig(
        n_players=args.players,
        game=GameKind(args.game),
        setting=SolutionSetting(args.setting),
        behavior=BehaviorKind(args.behavior),
        target_game=GameKind(args.target_game),
        crash_distance=args.crash_distance,
        epochs=args.epochs,
        seed=args.seed,
        ego_start_distance=args.ego_start,
        target_distance_range=tuple(args.target_range),
        safe_distance=args.safe_distance,
        lane_offset=args.lane_offset,
        profile_cap=args.profile_cap,
    )


def scenario_row(cfg: ScenarioConfig, result: ScenarioResult) -> ScenarioRow:
    return ScenarioRow(
        scenario_id=result.scenario_id,
        seed=result.seed,
        n_players=cfg.n_players,
        game=cfg.game,
        setting=cfg.setting,
        behavior=cfg.behavior,
        crashed=result.crashed,
        min_distance_m=result.min_pairwise_distance,
        avg_ego_speed_mps=result.avg_ego_speed,
        mean_decision_time_s=result.mean_decision_time,
    )


def guarded(command: str, body: Callable[[], int]) -> int:
    """Run a command body, translating failures into exit codes"""
    try:
        return body()
    except ValidationError as e:
        logger.error(f"Invalid configuration for {command}: {e}")
        return 2
    except IGamesError as e:
        logger.error(f"{command} failed: {e}")
        return e.exit_code
    except Exception as e:
        logger.error(f"Unexpected error in {command}: {e}")
        logger.error(f"Full traceback: {traceback.format_exc()}")
        return 4


def cmd_simulate(args: argparse.Namespace, simulation_service=None, results_repository=None) -> int:
    """
    Run a batch, write scenarios.csv, summary.json and manifest.json under
    --out and print the summary in the requested format.
    """
    simulation_service = simulation_service or get_simulation_service()
    results_repository = results_repository or get_results_repository()

    def body() -> int:
        cfg = build_scenario_config(args)
        summary, results = simulation_service.run_batch(cfg, args.scenarios, args.workers)
        out = Path(args.out)
        echo = dict(cfg.model_dump(mode="json"), scenarios=args.scenarios)
        csv_path = results_repository.write_scenario_rows(out / SCENARIOS_FILE, [scenario_row(cfg, r) for r in results])
        summary_path = results_repository.write_summary(out / SUMMARY_FILE, BatchSummary(summary=summary, config=echo))
        manifest = RunManifest(
            config=echo,
            tool_version=__version__,
            seed=cfg.seed,
            layout=[approach.value for approach in cfg.approaches],
            output_paths={"scenarios": str(csv_path), "summary": str(summary_path), "manifest": str(out / MANIFEST_FILE)},
        )
        results_repository.write_manifest(out / MANIFEST_FILE, manifest)
        logger.info(f"Wrote results of {len(results)} scenarios to {out}")

        if args.format == "json":
            print(summary.model_dump_json(indent=2))
        elif args.format == "csv":
            print(csv_path.read_text(encoding="utf-8"), end="")
        else:
            label = f"{cfg.game.value.upper()} ({cfg.setting.value}, {cfg.behavior.value}, N={cfg.n_players})"
            print(summary_table(label, summary))
        return 0

    return guarded("simulate", body)


def cmd_bench(args: argparse.Namespace, simulation_service=None, results_repository=None) -> int:
    """
    Mean decision time per (players, game, setting) cell. Invalid cells, such
    as the hierarchy setting with a Nash game, are skipped.
    """
    simulation_service = simulation_service or get_simulation_service()
    results_repository = results_repository or get_results_repository()

    def body() -> int:
        rows: List[BenchRow] = []
        for players in args.players:
            for game in args.games:
                for setting in args.settings:
                    try:
                        cfg = ScenarioConfig(
                            n_players=players,
                            game=GameKind(game),
                            setting=SolutionSetting(setting),
                            behavior=BehaviorKind(args.behavior),
                            epochs=args.epochs,
                            seed=args.seed,
                        )
                    except ValidationError:
                        logger.info(f"Skipping bench cell N={players} {game} {setting}: invalid combination")
                        continue
                    summary, _ = simulation_service.run_batch(cfg, args.scenarios)
                    rows.append(BenchRow(
                        n_players=players,
                        game=cfg.game,
                        setting=cfg.setting,
                        scenarios=summary.scenario_count,
                        decisions=summary.decision_count,
                        mean_decision_time_s=summary.mean_decision_time,
                    ))
        path = results_repository.write_bench_rows(Path(args.out) / BENCH_FILE, rows)
        logger.info(f"Wrote {len(rows)} bench rows to {path}")
        print(render_table(
            ["N", "Game", "Setting", "Decisions", "Ave. Decision Time (s)"],
            [[str(r.n_players), r.game.value.upper(), r.setting.value, str(r.decisions), f"{r.mean_decision_time_s:.6f}"]
             for r in rows],
        ))
        return 0

    return guarded("bench", body)


def add_simulate_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--players", type=int, default=2, choices=[2, 3, 4], help="Ego plus targets")
    parser.add_argument("--game", default=GameKind.NASH_BRD.value, choices=[g.value for g in GameKind])
    parser.add_argument("--setting", default=SolutionSetting.MULTIPLAYER.value, choices=[s.value for s in SolutionSetting])
    parser.add_argument("--behavior", default=BehaviorKind.IDEAL.value, choices=[b.value for b in BehaviorKind])
    parser.add_argument("--target-game", default=GameKind.NASH_BRD.value, choices=[g.value for g in GameKind],
                        help="Game solved by mismatched targets")
    parser.add_argument("--scenarios", type=int, default=settings.SCENARIOS)
    parser.add_argument("--seed", type=int, default=settings.SEED)
    parser.add_argument("--epochs", type=int, default=settings.EPOCHS)
    parser.add_argument("--crash-distance", type=float, default=settings.CRASH_DISTANCE)
    parser.add_argument("--safe-distance", type=float, default=settings.SAFE_DISTANCE)
    parser.add_argument("--lane-offset", type=float, default=settings.LANE_OFFSET)
    parser.add_argument("--ego-start", type=float, default=settings.EGO_START_DISTANCE)
    parser.add_argument("--target-range", type=float, nargs=2, metavar=("MIN", "MAX"),
                        default=[settings.TARGET_DISTANCE_MIN, settings.TARGET_DISTANCE_MAX])
    parser.add_argument("--workers", type=int, default=settings.WORKERS)
    parser.add_argument("--profile-cap", type=int, default=settings.PROFILE_CAP,
                        help="Largest strategy profile space a solver may enumerate")
    parser.add_argument("--out", default=settings.OUT_DIR)
    parser.add_argument("--format", default="table", choices=["csv", "json", "table"])


def add_bench_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--players", type=int, nargs="+", default=[2, 4], choices=[2, 3, 4])
    parser.add_argument("--games", nargs="+", default=["nbr", "sse", "wse"], choices=[g.value for g in GameKind])
    parser.add_argument("--settings", nargs="+", default=[SolutionSetting.MULTIPLAYER.value],
                        choices=[s.value for s in SolutionSetting])
    parser.add_argument("--behavior", default=BehaviorKind.IDEAL.value, choices=[b.value for b in BehaviorKind])
    parser.add_argument("--scenarios", type=int, default=5)
    parser.add_argument("--epochs", type=int, default=settings.EPOCHS)
    parser.add_argument("--seed", type=int, default=settings.SEED)
    parser.add_argument("--out", default=settings.OUT_DIR)
