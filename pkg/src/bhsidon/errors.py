"""Exception hierarchy shared by the library and the command line tool.

Each class carries the process exit code the CLI uses for it.
"""


class SidonError(Exception):
    exit_code = 1


class InvalidInput(SidonError, ValueError):
    exit_code = 2


class HypothesisViolation(InvalidInput):
    """A construction was asked for parameters outside its proven range."""


class CeilingExceeded(SidonError):
    exit_code = 3


class VerificationFailed(SidonError):
    """An exhaustive re-check disagreed with a claimed property."""

    exit_code = 1
