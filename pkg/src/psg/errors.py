"""Exception types raised across the package."""


class PSGError(Exception):
    """Base class for every error raised by psg."""


class InvalidState(PSGError, ValueError):
    """Gaussian parameters violate positivity or the uncertainty relation."""


class DegenerateSplitter(PSGError, ValueError):
    """Beam-splitter transmittivity outside the open interval (0, 1)."""


class ZeroProbabilityHerald(PSGError):
    """The requested heralding outcome has (numerically) zero probability."""


class DivergentIntegral(PSGError):
    """A term of a characteristic-function sum is not Gaussian-decaying."""


class NotSqueezedInput(PSGError, ValueError):
    """Operation requires A < 1 < B."""


class NoThresholdBelowOne(PSGError):
    """No efficiency eta <= 1 yields a negative Wigner function."""


class UnderTruncated(PSGError):
    """Fock truncation too small: population leaks into the top photon numbers."""
