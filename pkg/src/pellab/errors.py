"""Exception hierarchy shared by all pellab modules."""


class PellabError(Exception):
    """Base class for every error raised by this package."""


class InputError(PellabError):
    """Malformed or out-of-contract input document.

    ``location`` is a JSON-pointer-ish path into the offending document.
    """

    def __init__(self, message, location=""):
        super().__init__(message)
        self.location = location

    @property
    def kind(self):
        return type(self).__name__


# -- exact polynomial arithmetic ------------------------------------------

class DivisionByZeroPoly(PellabError):
    pass


class ZeroPolynomial(PellabError):
    pass


class OddDegree(PellabError):
    pass


class LeadingCoeffNotSquare(PellabError):
    pass


class InsufficientWindow(PellabError):
    """A series operation needed coefficients below the known cutoff."""


# -- P-fraction expansion ---------------------------------------------------

class NotExpandable(PellabError):
    """The tail does not admit a normalized P-fraction step."""


class NotNormalized(NotExpandable):
    """First nonvanishing moment of the tail does not have modulus 1."""


class SeriesExhausted(PellabError):
    """A truncated series tail has too few coefficients to certify a step."""


# -- generalized Jacobi matrices -------------------------------------------

class NotMonic(PellabError):
    pass


class IrrationalCoupling(PellabError):
    """Some coupling b_j = sqrt(beta_j) is irrational; no dense truncation."""


class SingularSystem(PellabError):
    pass


# -- monodromy and reconstruction ------------------------------------------

class NotAdmissible(PellabError):
    pass


class InconsistentScale(PellabError):
    """No positive final beta reproduces the given scaled matrix."""


class NonsquareObstruction(PellabError):
    """An exact division failed: the matrix is not of periodic-m-function type."""


class DegenerateTrace(PellabError):
    """The trace of the matrix is constant; no algebraic form exists."""


# -- spectrum and m-function -----------------------------------------------

class RootFindingFailure(PellabError):
    pass


class OnSpectrum(PellabError):
    """Evaluation point is (numerically) on the spectrum."""


# -- Pell-Abel pipeline ------------------------------------------------------

class PerfectSquareR(PellabError):
    pass


class DegreeConstraintViolated(PellabError):
    pass


class NoDecayingBranch(PellabError):
    """Neither branch of (sqrt(R) - U)/V tends to zero at infinity."""
