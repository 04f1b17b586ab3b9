"""
Plain-text two-player matrix games.

Whitespace-separated columns. The header row starts with a free label token
followed by the follower actions; every other row starts with a leader action
followed by one "leader_cost,follower_cost" cell per follower action. Blank
lines and lines starting with '#' are ignored:

    L\\F   -1     0      1
    -1    5,10  5,5    5,0
     0    0,10  0,5    5,5
     1    5,10  10,10  15,10
"""
from pathlib import Path
from typing import List, Tuple
from pydantic import ValidationError
from igames.errors import MatrixFormatError
from igames.logger import logger
from igames.models.game import MatrixGame
from igames.repositories.interfaces import MatrixGameRepositoryInterface, PathLike


def _number(token: str, where: str) -> float:
    try:
        return float(token)
    except ValueError:
        raise MatrixFormatError(f"{where}: '{token}' is not a number")


def _format(value: float) -> str:
    value = float(value)
    return str(int(value)) if value.is_integer() and abs(value) < 1e15 else repr(value)


class MatrixGameRepository(MatrixGameRepositoryInterface):
    """Repository for matrix-game text files"""

    def parse(self, text: str) -> MatrixGame:
        lines = [
            (number, line.split()) for number, line in enumerate(text.splitlines(), start=1)
            if line.strip() and not line.lstrip().startswith("#")
        ]
        if len(lines) < 2:
            raise MatrixFormatError("a matrix game needs a header row and at least one leader row")
        header_line, header = lines[0]
        if len(header) < 2:
            raise MatrixFormatError(f"line {header_line}: header needs a label and at least one follower action")
        follower_actions = tuple(_number(token, f"line {header_line}") for token in header[1:])

        leader_actions: List[float] = []
        leader_costs: List[Tuple[float, ...]] = []
        follower_costs: List[Tuple[float, ...]] = []
        for number, tokens in lines[1:]:
            where = f"line {number}"
            if len(tokens) != len(follower_actions) + 1:
                raise MatrixFormatError(f"{where}: expected {len(follower_actions)} cells, got {len(tokens) - 1}")
            leader_actions.append(_number(tokens[0], where))
            row_l, row_f = [], []
            for cell in tokens[1:]:
                parts = cell.split(",")
                if len(parts) != 2:
                    raise MatrixFormatError(f"{where}: cell '{cell}' is not 'leader,follower'")
                row_l.append(_number(parts[0], where))
                row_f.append(_number(parts[1], where))
            leader_costs.append(tuple(row_l))
            follower_costs.append(tuple(row_f))

        try:
            return MatrixGame(
                leader_actions=tuple(leader_actions),
                follower_actions=follower_actions,
                leader_costs=tuple(leader_costs),
                follower_costs=tuple(follower_costs),
            )
        except ValidationError as e:
            raise MatrixFormatError(f"invalid matrix game: {e}")

    def load(self, path: PathLike) -> MatrixGame:
        source = Path(path)
        try:
            text = source.read_text(encoding="utf-8")
        except OSError as e:
            raise MatrixFormatError(f"cannot read matrix game {source}: {e}")
        game = self.parse(text)
        logger.debug(f"Loaded {len(game.leader_actions)}x{len(game.follower_actions)} matrix game from {source}")
        return game

    def dump(self, game: MatrixGame) -> str:
        rows = [["L\\F"] + [_format(a) for a in game.follower_actions]]
        for r, action in enumerate(game.leader_actions):
            pairs = (game.cell(r, c) for c in range(len(game.follower_actions)))
            cells = [f"{_format(l)},{_format(f)}" for l, f in pairs]
            rows.append([_format(action)] + cells)
        width = max(len(token) for row in rows for token in row)
        return "\n".join(" ".join(token.rjust(width) for token in row) for row in rows) + "\n"

    def save(self, path: PathLike, game: MatrixGame) -> Path:
        target = Path(path)
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(self.dump(game), encoding="utf-8")
        return target
