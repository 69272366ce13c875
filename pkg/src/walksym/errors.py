"""Exception hierarchy for walksym."""


class WalkSymError(Exception):
    """Base class for all walksym errors."""


class NonSquareError(WalkSymError, ValueError):
    pass


class DimensionMismatch(WalkSymError, ValueError):
    pass


class HermiticityViolation(WalkSymError, ValueError):
    """Raised when a matrix is too far from Hermitian to be symmetrized.

    ``entry`` is the (row, col) index of the worst asymmetry and
    ``asymmetry`` its magnitude.
    """

    def __init__(self, entry, asymmetry, tol):
        self.entry = entry
        self.asymmetry = asymmetry
        self.tol = tol
        j, k = entry
        super().__init__(
            f"matrix is not Hermitian: |H[{j}][{k}] - conj(H[{k}][{j}])| = "
            f"{asymmetry:.3e} exceeds tolerance {tol:.3e}"
        )


class ConvergenceFailure(WalkSymError, ArithmeticError):
    pass


class StepOffSupport(WalkSymError, ValueError):
    def __init__(self, step):
        self.step = step
        super().__init__(f"walk step {step[0]} -> {step[1]} is not an edge of the support")


class ZeroWeight(WalkSymError, ValueError):
    pass


class VerificationFailure(WalkSymError, ArithmeticError):
    """A constructed witness failed its own check; usually a tolerance problem."""


class NonzeroDiagonal(WalkSymError, ValueError):
    pass


class InvalidGenerator(WalkSymError, ValueError):
    pass


class DocumentError(WalkSymError, ValueError):
    """Malformed Hamiltonian document."""


class InconsistentDocument(WalkSymError, ValueError):
    """Well-formed document whose records contradict each other."""
