"""Exception hierarchy for facialnp."""


class FacialError(Exception):
    """Base class for every error raised by this package."""


class DomainError(FacialError, ValueError):
    """A point is not interior to the domain it is evaluated on."""


class StepLeavesDomain(DomainError):
    pass


class BadRatio(FacialError, ValueError):
    pass


class ArityError(FacialError, TypeError):
    pass


class ClassRuleViolation(FacialError, ValueError):
    """An expression would not stay in its declared function class."""


class UnknownName(FacialError, KeyError):
    pass


class ParamOutOfRange(FacialError, ValueError):
    pass


class PoleAtOne(FacialError, ZeroDivisionError):
    pass


class PoleAtMinusI(FacialError, ZeroDivisionError):
    pass


class IdenticallyOne(FacialError, ValueError):
    pass


class ConstantFunction(FacialError, ValueError):
    pass


class NotBPoint(FacialError, ArithmeticError):
    def __init__(self, x, estimate):
        super().__init__(f"quotient diverges at x={x!r}; not a B-point along the probe path")
        self.x = x
        self.estimate = estimate


class NonRealBoundaryValue(FacialError, ArithmeticError):
    def __init__(self, x, value):
        super().__init__(f"boundary value {value!r} at x={x!r} is not real")
        self.x = x
        self.value = value


class EmptyProblem(FacialError, ValueError):
    pass


class ProblemValidationError(FacialError, ValueError):
    pass


class MultipleTargetValues(ProblemValidationError):
    """A problem tried to prescribe more than one boundary value.

    All facial nodes of a solution share a single value, so the problem
    format only carries one.
    """


class VanishingConditionFailed(FacialError, ArithmeticError):
    def __init__(self, node_index, estimate):
        super().__init__(
            f"t*f(node + i t e) does not vanish at node {node_index}: "
            f"estimate {estimate.extrapolated:.6g} (|.|={abs(estimate.extrapolated):.6g})"
        )
        self.node_index = node_index
        self.estimate = estimate


class InsufficientSamples(FacialError, ValueError):
    pass
