"""Exception hierarchy shared by all modules."""


class SpinWitnessError(Exception):
    """Base class for every error raised by this package."""


class NotHermitianError(SpinWitnessError, ValueError):
    pass


class NoConvergenceError(SpinWitnessError, RuntimeError):
    pass


class DimensionMismatchError(SpinWitnessError, ValueError):
    pass


class NotAStateError(SpinWitnessError, ValueError):
    pass


class TooSmallError(SpinWitnessError, ValueError):
    pass


class TooLargeError(SpinWitnessError, ValueError):
    pass


class OddPeriodicSideError(SpinWitnessError, ValueError):
    pass


class NotBipartiteError(SpinWitnessError, ValueError):
    """Raised by two-coloring; ``cycle`` holds an odd cycle of site indices."""

    def __init__(self, cycle):
        self.cycle = tuple(cycle)
        super().__init__(f"graph is not bipartite; odd cycle {list(self.cycle)}")


class IndexOutOfRangeError(SpinWitnessError, IndexError):
    pass


class OddNError(SpinWitnessError, ValueError):
    pass


class BadConfigError(SpinWitnessError, ValueError):
    pass


class BadFillingError(SpinWitnessError, ValueError):
    pass


class ZeroCouplingError(SpinWitnessError, ValueError):
    pass


class UnsupportedError(SpinWitnessError, ValueError):
    pass


class OutOfRangeError(SpinWitnessError, ValueError):
    pass


class NegativeEnergyError(SpinWitnessError, ValueError):
    pass


class UsageError(SpinWitnessError, ValueError):
    pass
