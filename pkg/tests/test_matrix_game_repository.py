import pytest
from igames.errors import GameConfigurationError, MatrixFormatError
from igames.repositories.matrix_game_repository import MatrixGameRepository

DEMO_TEXT = """
# strong versus weak demonstration
L\\F   -1     0      1
-1    5,10  5,5    5,0
 0    0,10  0,5    5,5
 1    5,10  10,10  15,10
"""


@pytest.fixture
def repository():
    return MatrixGameRepository()


def test_parse_demo_table(repository, costs):
    assert repository.parse(DEMO_TEXT) == costs.matrix_game_from_formula()


def test_dump_parses_back(repository, costs):
    matrix = costs.matrix_game_from_formula()
    text = repository.dump(matrix)
    assert text.splitlines()[0].split() == ["L\\F", "-1", "0", "1"]
    assert repository.parse(text) == matrix


def test_fractional_costs_survive(repository):
    matrix = repository.parse("x 0 1\n0 0.25,1 2,3.5\n")
    assert matrix.leader_costs == ((0.25, 2.0),)
    assert repository.parse(repository.dump(matrix)) == matrix


def test_save_and_load(repository, costs, tmp_path):
    matrix = costs.matrix_game_from_formula()
    path = repository.save(tmp_path / "games" / "demo.txt", matrix)
    assert repository.load(path) == matrix


@pytest.mark.parametrize("text", [
    "",
    "L\\F -1 0\n",
    "L\\F\n0 1,1\n",
    "L\\F -1 0\n0 1,1\n",
    "L\\F -1 0\n0 1,1 2\n",
    "L\\F -1 0\n0 1,1 2,x\n",
    "L\\F -1 -1\n0 1,1 2,2\n",
    "L\\F -1 0\n0 1,1 nan,2\n",
])
def test_malformed_tables(repository, text):
    with pytest.raises(MatrixFormatError):
        repository.parse(text)


def test_format_errors_are_configuration_errors(repository, tmp_path):
    with pytest.raises(GameConfigurationError):
        repository.load(tmp_path / "missing.txt")
