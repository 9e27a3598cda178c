"""Exception hierarchy. Everything the library raises on bad input derives from
:class:`PhaseWebError`, which the CLI maps to exit status 1."""


class PhaseWebError(Exception):
    pass


class UniverseMismatch(PhaseWebError):
    """Operands were built over different sensor sets."""


class GradeError(PhaseWebError, ValueError):
    pass


class NotABlade(PhaseWebError, ValueError):
    pass


class ParseError(PhaseWebError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} at line {line}, column {column}")
        self.line = line
        self.column = column


class TraceError(PhaseWebError):
    """Malformed or non-monotone event trace, or a non-flip event."""


class RegistryError(PhaseWebError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else ""


class LevelError(PhaseWebError):
    pass
