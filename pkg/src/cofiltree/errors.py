"""Exception hierarchy shared by all modules."""


class CofiltreeError(Exception):
    """Base class for every error raised by this package."""


# poset
class CycleInRelation(CofiltreeError):
    pass


class EmptyExtent(CofiltreeError):
    pass


class UnknownElement(CofiltreeError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


# complex
class DuplicateVertexInSimplex(CofiltreeError):
    pass


class NotASubcomplex(CofiltreeError):
    pass


class InvalidSimplicialOrder(CofiltreeError):
    pass


class VertexNotInDomain(CofiltreeError):
    pass


# chains
class RingMismatch(CofiltreeError):
    pass


class DimensionMismatch(CofiltreeError):
    pass


class ZeroChain(CofiltreeError):
    pass


class DimensionZero(UserWarning):
    """Boundary of a 0-chain requested; the zero chain is returned."""


# spanning
class NoPath(CofiltreeError):
    pass


class SpanVerificationFailed(CofiltreeError):
    pass


# persistence
class UnknownGrade(CofiltreeError):
    pass


class SearchBudgetExceeded(CofiltreeError):
    def __init__(self, used, budget):
        super().__init__(f"search budget exceeded: {used} nodes visited (budget {budget})")
        self.used = used
        self.budget = budget


class NotInjective(CofiltreeError):
    def __init__(self, grade):
        super().__init__(f"colimit projection at grade {grade!r} is not injective")
        self.grade = grade


class EdgeNeverExcluded(CofiltreeError):
    pass


class EpimorphismFailed(CofiltreeError):
    def __init__(self, grade, detail=""):
        msg = f"evaluation map is not surjective at grade {grade!r}"
        super().__init__(msg + (f": {detail}" if detail else ""))
        self.grade = grade


class NotOrderPreserving(CofiltreeError):
    pass


class NotDimensionPreserving(CofiltreeError):
    pass


# file format
class ParseError(CofiltreeError):
    def __init__(self, message, line=None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line


class FaceGradeViolation(ParseError):
    pass


class UnknownPosetElement(ParseError):
    pass


class NotASimplicialMap(CofiltreeError):
    pass
