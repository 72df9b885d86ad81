"""Exception hierarchy. Every error raised on bad mathematical input derives from CRError."""


class CRError(ValueError):
    pass


class JacobiViolation(CRError):
    pass


class AntisymmetryViolation(CRError):
    pass


class RepMismatch(CRError):
    pass


class NoRepresentation(CRError):
    pass


class ZeroLine(CRError):
    pass


class NotRegular(CRError):
    pass


class SingularFrame(CRError):
    pass


class DegenerateContact(CRError):
    """The contact coefficient vanishes: L and its conjugate span a subalgebra."""


class Str2Violation(CRError):
    """The computed triple breaks the integrability constraint; indicates a bug."""


class ResidualTooLarge(CRError):
    pass


class UnknownTag(CRError):
    pass


class SingularParameter(CRError):
    pass


class RealRoots(CRError):
    pass


class NotSameHalfPlane(CRError):
    pass


class NotAHomomorphism(CRError):
    pass


class ChartUndefined(CRError):
    pass
