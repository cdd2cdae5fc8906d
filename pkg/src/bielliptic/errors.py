"""Exception hierarchy shared by all modules."""


class BiellipticError(Exception):
    """Base class for every error raised by this package."""


# exact arithmetic

class AmbientMismatch(BiellipticError):
    pass


class FormalProductUndefined(BiellipticError):
    pass


class FormalConjugationUndefined(BiellipticError):
    pass


class FormalNormUndefined(BiellipticError):
    pass


class FormalInverseUndefined(BiellipticError):
    pass


class DivisionByZero(BiellipticError, ZeroDivisionError):
    pass


# lattices

class RankDeficient(BiellipticError):
    pass


class NotASublattice(BiellipticError):
    pass


# isogenies

class NotAMultiplier(BiellipticError):
    pass


class ZeroMultiplier(BiellipticError):
    pass


class CurveMismatch(BiellipticError):
    pass


class ZeroPoint(BiellipticError):
    pass


class ZeroModule(BiellipticError):
    pass


class NoGeneratorFound(BiellipticError):
    """Hom(B, A) is not generated by a single isogeny over End(B)."""


# surfaces and classification

class SpecError(BiellipticError):
    """An invalid surface specification; ``field`` names the offending input."""

    def __init__(self, message, field=None):
        super().__init__(message)
        self.field = field


class UnknownType(SpecError):
    pass


class WrongPointOrder(SpecError):
    pass


class WrongSpecialJ(SpecError):
    pass


class TauEqualsTheta1(SpecError):
    pass


class MissingPoint(SpecError):
    pass


class UnexpectedPoint(SpecError):
    pass


class PointNotOnCurve(SpecError):
    pass


class UnvalidatedSpec(BiellipticError):
    pass


class NotApplicable(BiellipticError):
    pass


class NotIsogenous(BiellipticError):
    pass
