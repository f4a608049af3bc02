"""Exception types shared across the package.

Every error raised on purpose by cgtkit derives from :class:`CGTError`, so a
caller (the CLI in particular) can catch the whole family in one place and
report the class name.
"""


class CGTError(Exception):
    """Base class for all cgtkit errors."""


# permutations
class MalformedCycle(CGTError, ValueError):
    pass


class PointOutOfRange(CGTError, ValueError):
    pass


class DegreeMismatch(CGTError, ValueError):
    pass


# groups
class NotASubgroup(CGTError, ValueError):
    pass


class IndexExceedsLimit(CGTError):
    pass


class StepLimit(CGTError):
    pass


class NotTransitive(CGTError, ValueError):
    pass


class TrivialGroup(CGTError, ValueError):
    pass


class BudgetExceeded(CGTError):
    """A search ran out of its node budget.

    ``partial`` carries whatever was established before the cutoff (found
    generators, node counts) so the caller can report it.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial or {}


# number theory
class FactorizationTimeout(CGTError):
    def __init__(self, message, factors=None, cofactor=None):
        super().__init__(message)
        self.factors = factors or []
        self.cofactor = cofactor


class InternalContradiction(CGTError):
    pass


class InvalidParams(CGTError, ValueError):
    pass


# atlas
class ParseError(CGTError, ValueError):
    def __init__(self, message, line=None, column=None):
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", column {column})" if column is not None else ")")
        super().__init__(message + loc)
        self.line = line
        self.column = column


class OrderMismatch(CGTError):
    def __init__(self, expected, got):
        super().__init__(f"claimed order {expected} but generators give {got}")
        self.expected = expected
        self.got = got


class UnknownName(CGTError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


# coset graphs
class XInsideH(CGTError, ValueError):
    pass


class TooManyVertices(CGTError):
    pass


class BrokenSymmetry(CGTError):
    pass


class NotAnAutomorphism(CGTError, ValueError):
    pass


class DegenerateQuotient(CGTError, ValueError):
    pass


# searcher
class NoHallSubgroupFound(CGTError):
    pass


class NormalizerBudgetExceeded(BudgetExceeded):
    pass


class AmbientTooLarge(CGTError):
    pass


class UnknownClaim(CGTError, KeyError):
    def __str__(self):
        return Exception.__str__(self)
