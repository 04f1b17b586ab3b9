"""
Exception hierarchy shared by services, repositories and controllers
"""


class IGamesError(Exception):
    """Base error; exit_code is what the CLI returns when it escapes a command"""
    exit_code: int = 4


class GameConfigurationError(IGamesError, ValueError):
    """Invalid game, strategy set, player count or flag combination"""
    exit_code = 2


class HorizonMismatchError(GameConfigurationError):
    """Strategy segments do not cover the rollout horizon"""


class MatrixFormatError(GameConfigurationError):
    """Malformed plain-text matrix game"""


class ProfileSpaceTooLargeError(IGamesError):
    """Product strategy space exceeds the enumeration cap"""
    exit_code = 3

    def __init__(self, size: int, cap: int):
        super().__init__(f"Strategy profile space has {size} profiles, above the cap of {cap}")
        self.size = size
        self.cap = cap

    def __reduce__(self):
        # rebuilt from (size, cap) when it crosses a process-pool boundary
        return type(self), (self.size, self.cap)
