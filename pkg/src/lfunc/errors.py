"""Exception hierarchy shared by all lfunc modules."""


class LfuncError(Exception):
    """Base class for all lfunc errors."""


class NotPrime(LfuncError):
    pass


class NoIrreducibleFound(LfuncError):
    """Internal error: modulus search failed (must not happen for f <= 12)."""


class SizeLimitExceeded(LfuncError):
    """Requested object is beyond the supported desk-scale range."""


class BaseMismatch(LfuncError):
    """Arithmetic between rational functions with different base q."""


class DivByZeroFunction(LfuncError):
    pass


class DidNotConverge(LfuncError):
    """Root finding failed to reach the requested residual."""


class PlaceMismatch(LfuncError):
    pass


class RankMismatch(LfuncError):
    pass


class RamifiedInput(LfuncError):
    """Operation requires unramified character data."""


class WrongTag(LfuncError):
    pass


class NotTempered(LfuncError):
    pass


class EpsNotMonomial(LfuncError):
    """Tempered epsilon-factor failed the monomial check (inconsistent input data)."""


class MissingDualData(LfuncError):
    pass


class MissingFormalPairing(LfuncError):
    """A formal supercuspidal leaf has no table entry for the requested partner."""


class MissingLiftData(LfuncError):
    pass


class NotClosedForm(LfuncError):
    """Global pair has formal local data without a lift description."""


class NotSelfDual(LfuncError):
    pass


class SizeMismatch(LfuncError):
    pass


class DuplicateConstituent(LfuncError):
    pass


class TypeMismatch(LfuncError):
    pass


class PreconditionFailed(LfuncError):
    """A property-check precondition is violated; the message names the condition."""


class SchemaError(LfuncError):
    """Malformed JSON input."""
