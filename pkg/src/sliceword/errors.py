"""Exception hierarchy.

Every precondition failure derives from :class:`PreconditionError` (CLI exit
code 2); failed numerical or exact re-checks derive from
:class:`VerificationError` (CLI exit code 3).
"""


class SlicewordError(Exception):
    pass


class PreconditionError(SlicewordError, ValueError):
    pass


class VerificationError(SlicewordError):
    pass


class ParseError(PreconditionError):
    def __init__(self, text: str, position: int, allowed: str):
        self.text = text
        self.position = position
        super().__init__(
            f"unexpected character {text[position]!r} at index {position} "
            f"(allowed: {allowed})"
        )


class EqualWords(PreconditionError):
    pass


class UnequalAbelianization(PreconditionError):
    pass


class InvalidPrefixSequence(PreconditionError):
    pass


class NotInCommutatorSubgroup(PreconditionError):
    pass


class NotInCommutatorImage(VerificationError):
    pass


class NotDivisible(PreconditionError):
    pass


class ZeroPolynomial(PreconditionError):
    pass


class OutsideRegionD(PreconditionError):
    pass


class DegenerateAxis(PreconditionError):
    pass


class PathExitsRegion(VerificationError):
    pass


class NotFiniteWithinCap(PreconditionError):
    pass


NotFinite = NotFiniteWithinCap


class SearchBudgetExceeded(VerificationError):
    pass


class BadParameter(PreconditionError):
    pass


class CriterionNotFired(PreconditionError):
    pass


class StaleWitness(VerificationError):
    pass
