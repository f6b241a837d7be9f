"""Exception hierarchy.

Every error a caller can trigger through bad input derives from
:class:`DomainError`; the CLI maps these to exit status 2 and prints
``to_dict()`` as a structured error object.
"""


class DomainError(Exception):
    def __init__(self, message, **details):
        super().__init__(message)
        self.details = details

    def to_dict(self):
        out = {"error": type(self).__name__, "message": str(self)}
        if self.details:
            out["details"] = self.details
        return out


class PeriodOverflow(DomainError):
    pass


class NotEnoughElements(DomainError):
    pass


class GeneratorCap(DomainError):
    pass


class NotInAlgebra(DomainError):
    pass


class NotAPartition(DomainError):
    pass


class CertificateMismatch(DomainError):
    pass


class ParseError(DomainError):
    pass


class TermTypeError(DomainError):
    pass


class FuelExhausted(DomainError):
    pass


class OracleUnavailable(DomainError):
    pass


class NonUPArgument(DomainError):
    pass
