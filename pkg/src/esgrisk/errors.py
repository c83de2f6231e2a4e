"""Exception hierarchy shared across the library.

The CLI maps these onto exit statuses: ParameterError -> 1,
DataError (and subclasses) -> 2.
"""


class EsgRiskError(Exception):
    """Base class for all library errors."""


class ParameterError(EsgRiskError):
    """A parameter is outside its admissible range or an operation was
    invoked with an inapplicable combination of arguments."""


class DataError(EsgRiskError):
    """Input data is malformed or insufficient."""


class PanelParseError(DataError):
    """A panel file row could not be parsed; message names the line."""


class InsufficientDataError(DataError):
    """Too few aligned observations to proceed."""


class NotFoundError(EsgRiskError):
    """A requested ticker or label does not exist."""


class InfeasibleHedgeError(EsgRiskError):
    """The target risk level violates the admissibility band of the
    hedge-weight formula; message names the violated bound."""
