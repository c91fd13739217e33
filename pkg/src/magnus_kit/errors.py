"""Exception types shared across the package.

Each error carries the process exit code the command-line front end maps
it to (0 = computed, 1 = usage/parse, 2 = invalid presentation,
3 = iteration cap, 4 = resource cap).
"""


class MagnusKitError(Exception):
    exit_code = 1


class WordParseError(MagnusKitError):
    pass


class MissingImage(MagnusKitError):
    """A homomorphism was applied to a word containing an unmapped generator."""


class PresentationError(MagnusKitError):
    exit_code = 2


class SharedLetters(PresentationError):
    """u and v have a generator in common."""


class TooFewY(PresentationError):
    """Fewer than two auxiliary generators."""


class EmptyUV(PresentationError):
    pass


class NonPositiveK(PresentationError):
    pass


class UnsupportedGenus(PresentationError):
    pass


class ZeroBExponent(MagnusKitError):
    """The amalgam embedding needs a nonzero b-exponent; use the swapped
    presentation instead."""


class NonzeroXExponent(MagnusKitError):
    """Subgroup rewriting is only defined for words of zero Magnus-generator
    exponent."""


class PreconditionViolated(MagnusKitError):
    pass


class HypothesisViolated(MagnusKitError):
    pass


class TrivialElement(MagnusKitError):
    pass


class IterationCapExceeded(MagnusKitError):
    exit_code = 3


class ResourceCapExceeded(MagnusKitError):
    exit_code = 4
