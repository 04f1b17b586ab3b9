import pickle
import pytest
from igames.errors import (
    GameConfigurationError, HorizonMismatchError, MatrixFormatError, ProfileSpaceTooLargeError,
)


def test_cap_error_survives_pickling():
    error = pickle.loads(pickle.dumps(ProfileSpaceTooLargeError(625, 100)))
    assert isinstance(error, ProfileSpaceTooLargeError)
    assert (error.size, error.cap) == (625, 100)
    assert error.exit_code == 3
    assert str(error) == str(ProfileSpaceTooLargeError(625, 100))


@pytest.mark.parametrize("error_type", [GameConfigurationError, HorizonMismatchError, MatrixFormatError])
def test_configuration_errors_survive_pickling(error_type):
    error = pickle.loads(pickle.dumps(error_type("bad input")))
    assert type(error) is error_type
    assert str(error) == "bad input"
    assert error.exit_code == 2
