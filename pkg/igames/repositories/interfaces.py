"""
Repository interfaces for run artefacts and game files
"""
from abc import ABC, abstractmethod
from pathlib import Path
from typing import List, Union
from igames.models.dtos import BatchSummary, BenchRow, RunManifest, ScenarioRow
from igames.models.game import MatrixGame

PathLike = Union[str, Path]


class ResultsRepositoryInterface(ABC):
    """Interface for per-scenario CSV, summary JSON, bench CSV and manifests"""

    @abstractmethod
    def write_scenario_rows(self, path: PathLike, rows: List[ScenarioRow]) -> Path:
        """Write per-scenario rows as CSV"""
        pass

    @abstractmethod
    def read_scenario_rows(self, path: PathLike) -> List[ScenarioRow]:
        """Parse a per-scenario CSV written by this repository"""
        pass

    @abstractmethod
    def write_summary(self, path: PathLike, summary: BatchSummary) -> Path:
        """Write the batch summary as JSON"""
        pass

    @abstractmethod
    def read_summary(self, path: PathLike) -> BatchSummary:
        """Parse a summary JSON"""
        pass

    @abstractmethod
    def write_bench_rows(self, path: PathLike, rows: List[BenchRow]) -> Path:
        """Write bench timings as CSV"""
        pass

    @abstractmethod
    def read_bench_rows(self, path: PathLike) -> List[BenchRow]:
        """Parse a bench CSV"""
        pass

    @abstractmethod
    def write_manifest(self, path: PathLike, manifest: RunManifest) -> Path:
        """Write the run manifest as JSON"""
        pass


class MatrixGameRepositoryInterface(ABC):
    """Interface for plain-text matrix games"""

    @abstractmethod
    def parse(self, text: str) -> MatrixGame:
        """Parse a matrix game from text"""
        pass

    @abstractmethod
    def load(self, path: PathLike) -> MatrixGame:
        """Read a matrix game file"""
        pass

    @abstractmethod
    def dump(self, game: MatrixGame) -> str:
        """Render a matrix game as text"""
        pass

    @abstractmethod
    def save(self, path: PathLike, game: MatrixGame) -> Path:
        """Write a matrix game file"""
        pass
