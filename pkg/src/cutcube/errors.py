"""Exception hierarchy.  Each class carries the CLI exit code it maps to."""


class CutCubeError(Exception):
    exit_code = 1


class ParseError(CutCubeError):
    exit_code = 1


class ModelError(CutCubeError):
    """The input violates a standing assumption (graph, group, cut sets, divisions)."""

    exit_code = 2


class WallspaceError(ModelError):
    """The division family does not give a usable wallspace on triples."""


class CapExceeded(CutCubeError):
    exit_code = 3


class TheoremViolation(CutCubeError):
    """A lemma or theorem checked on an instance failed.  ``certificate`` holds details."""

    exit_code = 4

    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate or {}


class OracleMismatch(CutCubeError):
    exit_code = 5
