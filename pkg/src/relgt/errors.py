"""Exception types raised by the library.

Messages start with the tag the CLI and tests key on (``DegenerateRow: ...``).
"""


class RelGTError(Exception):
    pass


class MalformedInput(RelGTError, ValueError):
    pass


class TopRowImmutable(RelGTError, ValueError):
    pass


class ZeroShift(RelGTError, ValueError):
    pass


class DegenerateRow(RelGTError, ArithmeticError):
    pass


class NotARealization(RelGTError, ValueError):
    pass


class NotMonotone(RelGTError, ValueError):
    pass


class DifferentModule(RelGTError, ValueError):
    pass
