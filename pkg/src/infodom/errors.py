"""Exception types raised across the package.

Every error carries its class name so the command line can report it
verbatim (``Inconsistent: ...``).
"""


class DomainError(Exception):
    """Base class for checked failures inside the library."""

    @property
    def name(self):
        return type(self).__name__

    def __str__(self):
        msg = super().__str__()
        return f"{self.name}: {msg}" if msg else self.name


class Degenerate(DomainError):
    pass


class Inconsistent(DomainError):
    pass


class TooLarge(DomainError):
    pass


class NotBoundedComplete(DomainError):
    pass


class NoCompactTop(DomainError):
    pass


class TopIsBottom(DomainError):
    pass


class ConsistencyViolation(DomainError):
    pass


class NotMonotone(DomainError):
    pass


class SystemMismatch(DomainError):
    pass


class TrivialMapping(DomainError):
    pass


class AxiomViolation(DomainError):
    def __init__(self, index, detail=""):
        self.index = index
        super().__init__(f"axiom {index} fails" + (f" ({detail})" if detail else ""))


class NotARetraction(DomainError):
    pass


class NotFinitary(DomainError):
    pass


class BadWeights(DomainError):
    pass


class BadSource(DomainError):
    pass


class DeficientStructure(DomainError):
    pass


class InternalInconsistency(DomainError):
    """Two routes that must agree produced different answers."""


class ParseError(DomainError):
    def __init__(self, msg, line=None):
        self.line = line
        super().__init__(f"line {line}: {msg}" if line is not None else msg)
