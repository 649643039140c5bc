"""Exception hierarchy shared by every layer of the toolkit."""


class LinInterpError(Exception):
    pass


class UnboundVariable(LinInterpError):
    def __init__(self, var):
        super().__init__(f"unbound variable {var}")
        self.var = var


class TypeMismatch(LinInterpError):
    def __init__(self, expected, found, location=""):
        msg = f"type mismatch: expected {expected}, found {found}"
        if location:
            msg += f" at {location}"
        super().__init__(msg)
        self.expected = expected
        self.found = found
        self.location = location


class ParseError(LinInterpError):
    def __init__(self, message, line=1, column=1):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column


class CheckError(LinInterpError):
    """Base for derivation-checking failures; ``path`` locates the node."""

    def __init__(self, path, reason):
        where = "/".join(str(p) for p in path) or "root"
        super().__init__(f"{type(self).__name__} at {where}: {reason}")
        self.path = tuple(path)
        self.reason = reason


class RuleMismatch(CheckError):
    pass


class EigenvariableViolation(CheckError):
    pass


class RestrictionViolation(CheckError):
    pass


class SystemViolation(CheckError):
    pass


class ModalityRequired(LinInterpError):
    pass


class SlotClassViolation(LinInterpError):
    pass


class UnsupportedInstance(LinInterpError):
    pass


class SignatureMismatch(LinInterpError):
    pass


class Inconclusive(LinInterpError):
    """Raised when model enumeration would exceed the assignment cap."""
