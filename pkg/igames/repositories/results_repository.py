"""
Results repository: CSV rows, JSON summaries and run manifests on the local filesystem
"""
import csv
from pathlib import Path
from typing import List, Type, TypeVar
from pydantic import BaseModel, ValidationError
from igames.errors import GameConfigurationError
from igames.logger import logger
from igames.models.dtos import BatchSummary, BenchRow, RunManifest, ScenarioRow
from igames.repositories.interfaces import PathLike, ResultsRepositoryInterface

SCENARIO_HEADER = list(ScenarioRow.model_fields)
BENCH_HEADER = list(BenchRow.model_fields)

Row = TypeVar("Row", bound=BaseModel)


def _cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if hasattr(value, "value"):
        return str(value.value)
    return str(value)


class ResultsRepository(ResultsRepositoryInterface):
    """Repository for run artefacts"""

    def _write_rows(self, path: PathLike, header: List[str], rows: List[BaseModel]) -> Path:
        target = Path(path)
        target.parent.mkdir(parents=True, exist_ok=True)
        with target.open("w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(header)
            for row in rows:
                writer.writerow([_cell(getattr(row, name)) for name in header])
        logger.debug(f"Wrote {len(rows)} rows to {target}")
        return target

    def _read_rows(self, path: PathLike, header: List[str], model: Type[Row]) -> List[Row]:
        source = Path(path)
        with source.open("r", newline="", encoding="utf-8") as handle:
            reader = csv.DictReader(handle)
            if reader.fieldnames != header:
                raise GameConfigurationError(f"{source} does not have the expected header {','.join(header)}")
            try:
                return [model.model_validate(record) for record in reader]
            except ValidationError as e:
                raise GameConfigurationError(f"Malformed row in {source}: {e}")

    def write_scenario_rows(self, path: PathLike, rows: List[ScenarioRow]) -> Path:
        return self._write_rows(path, SCENARIO_HEADER, rows)

    def read_scenario_rows(self, path: PathLike) -> List[ScenarioRow]:
        return self._read_rows(path, SCENARIO_HEADER, ScenarioRow)

    def write_bench_rows(self, path: PathLike, rows: List[BenchRow]) -> Path:
        return self._write_rows(path, BENCH_HEADER, rows)

    def read_bench_rows(self, path: PathLike) -> List[BenchRow]:
        return self._read_rows(path, BENCH_HEADER, BenchRow)

    def write_summary(self, path: PathLike, summary: BatchSummary) -> Path:
        return self._write_json(path, summary)

    def read_summary(self, path: PathLike) -> BatchSummary:
        return BatchSummary.model_validate_json(Path(path).read_text(encoding="utf-8"))

    def write_manifest(self, path: PathLike, manifest: RunManifest) -> Path:
        return self._write_json(path, manifest)

    def read_manifest(self, path: PathLike) -> RunManifest:
        return RunManifest.model_validate_json(Path(path).read_text(encoding="utf-8"))

    def _write_json(self, path: PathLike, document: BaseModel) -> Path:
        target = Path(path)
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(document.model_dump_json(indent=2), encoding="utf-8")
        logger.debug(f"Wrote {target}")
        return target
