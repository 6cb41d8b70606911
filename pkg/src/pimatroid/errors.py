class MatroidToolkitError(Exception):
    pass


class GroundSetTooLarge(MatroidToolkitError):
    pass


class GroundSetTooSmall(MatroidToolkitError):
    pass


class EmptyTargetFamily(MatroidToolkitError):
    pass


class UnsupportedTopology(MatroidToolkitError):
    pass


class TrivialParams(MatroidToolkitError):
    """(min, IS, <=) has the empty set as an optimum and is excluded from reductions."""


class AlphaOutOfRange(MatroidToolkitError):
    pass


class SolverContractViolation(MatroidToolkitError):
    pass


class InvariantViolation(MatroidToolkitError):
    """A property the construction guarantees did not hold; indicates a bug."""


class Infeasible(MatroidToolkitError):
    pass


class EmptyFeasible(MatroidToolkitError):
    pass


class NoBracket(MatroidToolkitError):
    pass


class InfeasiblePattern(NoBracket):
    pass


class ChainSearchFailed(MatroidToolkitError):
    pass


class ProtocolError(MatroidToolkitError):
    pass


class DescriptorError(MatroidToolkitError):
    pass
