"""Exception hierarchy shared by all curvelab modules."""


class CurvelabError(Exception):
    """Base class for every error raised by this package."""


class NumericalError(CurvelabError):
    """A numerical procedure failed to deliver its accuracy contract."""


class NonConvergence(NumericalError):
    pass


class TailBoundFailure(NumericalError):
    pass


class ConvergenceFailure(NumericalError):
    pass


class IllConditioned(NumericalError):
    pass


class DomainError(CurvelabError, ValueError):
    pass


class SingularInput(CurvelabError, ValueError):
    pass


class BranchPointError(DomainError):
    pass


class RealAxisError(CurvelabError, ValueError):
    pass


class EdgeProximity(DomainError):
    pass


class DegenerateSpectrum(NumericalError):
    pass


class EmptyWindow(CurvelabError, ValueError):
    pass


class TooFewSamples(CurvelabError, ValueError):
    pass


class AsymmetricGrid(CurvelabError, ValueError):
    pass


class NonHermitianSamples(CurvelabError, ValueError):
    pass
