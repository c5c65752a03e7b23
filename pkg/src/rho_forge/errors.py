"""Exception hierarchy.

Domain errors (bad mathematical input) derive from :class:`DomainError`;
malformed files raise :class:`MatrixFormatError`.  The CLI maps the former
to exit status 2 and the latter to exit status 1.
"""


class RhoForgeError(Exception):
    pass


class DomainError(RhoForgeError):
    pass


class NonSquare(DomainError):
    pass


class NotHermitian(DomainError):
    pass


class NotUnitary(DomainError):
    pass


class NotInvertible(DomainError):
    pass


class ZeroPolynomial(DomainError):
    pass


class IdenticallySingular(DomainError):
    pass


class MidpointDegenerate(DomainError):
    pass


class NearBreakpoint(DomainError):
    pass


class InvalidClassIntersection(DomainError):
    pass


class MatrixFormatError(RhoForgeError):
    pass
