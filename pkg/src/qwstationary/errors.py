"""Exception hierarchy shared by the library and the CLI."""


class QWStationaryError(Exception):
    """Base class. ``exit_code`` is what the CLI returns for it."""

    exit_code = 1


class GraphFormatError(QWStationaryError, ValueError):
    """Malformed edge list, self-loop, duplicate edge, unreadable file."""

    exit_code = 2


class MarkedSetError(QWStationaryError, ValueError):
    """Invalid marked set. ``code`` is one of the class constants."""

    exit_code = 3

    EMPTY = "MARKED_EMPTY"
    ALL_VERTICES = "MARKED_IS_ALL_VERTICES"
    DISCONNECTED = "MARKED_DISCONNECTED"
    UNKNOWN_VERTEX = "MARKED_UNKNOWN_VERTEX"

    def __init__(self, code: str, message: str):
        super().__init__(f"{code}: {message}")
        self.code = code


class NoStationaryStateError(QWStationaryError):
    exit_code = 4


class NotApplicableError(QWStationaryError):
    """The probability bound's equal-amplitude ansatz does not apply."""

    exit_code = 5


class InfeasibleError(QWStationaryError):
    """Shortage neutralization left a residual above tolerance."""


class NormDriftError(QWStationaryError):
    """Evolution lost unitarity beyond tolerance."""
