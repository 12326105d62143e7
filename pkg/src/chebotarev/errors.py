"""Exception hierarchy shared across the package."""


class ChebotarevError(Exception):
    """Base class for all package-specific errors."""


class DegreeMismatchError(ChebotarevError):
    """A permutation has the wrong degree for the requested operation."""


class OrderCapError(ChebotarevError):
    """A group (or enumeration) exceeds the configured desk-scale cap."""


class NotNormalError(ChebotarevError):
    """The given subgroup is not normal in its parent."""


class BadSectionError(ChebotarevError):
    """X/Y is not a valid section (containment or normality fails, or it is nonabelian)."""


class TrivialGroupError(ChebotarevError):
    """The operation is undefined for the trivial group."""


class NotAbelianFactorError(ChebotarevError):
    """The chief factor is nonabelian where an abelian one is required."""


class NotChiefFactorError(ChebotarevError):
    """The section X/Y admits an intermediate normal subgroup, so it is not chief."""


class NotIrreducibleError(ChebotarevError):
    """The commutant of the module action is not a field, so the module is not irreducible."""


class SearchCapError(ChebotarevError):
    """A brute-force search space exceeds the configured cap."""


class TooManySievesError(ChebotarevError):
    """More reduced conjugate-unions than the subset-enumeration cap allows.

    Callers should fall back to Monte Carlo estimation.
    """


class NotPrimeError(ChebotarevError):
    """An argument required to be prime is not."""


class BadProbabilityError(ChebotarevError):
    """A probability argument lies outside (0, 1]."""


class UnclassifiedRatioError(ChebotarevError):
    """The waiting-time ratio check failed but matches none of the known exceptional cases."""


class TrialCapError(ChebotarevError):
    """A Monte Carlo trial exceeded the hard per-trial draw cap (sieve-system bug)."""


class ParseError(ChebotarevError):
    """A group specification string is malformed."""


class SingularMatrixError(ChebotarevError):
    """A matrix given as a linear-group generator is not invertible mod p."""
