"""Exception hierarchy shared by all residuum modules."""


class ResiduumError(Exception):
    """Base class for all errors raised by this package."""


# --- exact algebra ---

class AlgebraError(ResiduumError):
    pass


class ZeroInputError(AlgebraError):
    """An operation received a zero polynomial where nonzero is required."""


class DivisionError(AlgebraError):
    """Exact polynomial division failed (the divisor does not divide)."""


# --- denominator preparation ---

class DenominatorError(ResiduumError):
    pass


class CoprimalityViolation(DenominatorError):
    """Two denominator factors share a root sheet in the distinguished variable."""


class NonSquarefreeFactor(DenominatorError):
    """A denominator factor is not squarefree in the distinguished variable."""


class LeadingCoefficientVanishesAtOrigin(DenominatorError):
    """The leading coefficient of a factor vanishes at the origin."""


class FactorFreeOfVariable(DenominatorError):
    """A factor has degree zero in the distinguished variable."""


class MultiplePole(DenominatorError):
    """A simple-pole-only operation was called with a higher multiplicity."""


# --- one-variable residues ---

class IrrationalPole(ResiduumError):
    """The denominator admits no exact linear split over the Gaussian rationals."""

    def __init__(self, message, numeric_roots=None):
        super().__init__(message)
        self.numeric_roots = numeric_roots


# --- Leray reduction ---

class PoleReductionObstruction(ResiduumError):
    """A residual high-order pole term is not exact; pole lowering failed."""

    def __init__(self, message, offending_term=None):
        super().__init__(message)
        self.offending_term = offending_term


class NonConstantResidueForm(ResiduumError):
    """A degree-0 reduced residue failed the constancy check on its component."""


class ChartError(ResiduumError):
    """The chosen chart variable is invalid on the hypersurface."""


# --- numerics ---

class NumericsError(ResiduumError):
    pass


class NonConvergent(NumericsError):
    """Extrapolation residual stayed above the configured tolerance."""

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


class RootFindingDivergence(NumericsError):
    """Simultaneous iteration failed to locate all fiber roots."""


class LeadingCoefficientVanishes(NumericsError):
    """The fiber polynomial degenerates at the requested base point."""


class NewtonContinuationFailure(NumericsError):
    """Tube tracing lost a root branch even after shrinking epsilon."""


# --- input handling ---

class SchemaViolation(ResiduumError):
    """A JSON document does not conform to the input schema."""

    def __init__(self, message, pointer=""):
        super().__init__(f"{pointer}: {message}" if pointer else message)
        self.pointer = pointer
