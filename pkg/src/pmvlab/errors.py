"""Exception hierarchy shared by all pmvlab modules."""


class PMVError(Exception):
    """Base class for all pmvlab errors."""


class MalformedTable(PMVError):
    """Finite table has inconsistent dimensions or out-of-range entries."""


class OutOfCarrier(PMVError):
    """An argument does not belong to the algebra's carrier."""


class InternalInconsistency(PMVError):
    """Equivalent characterizations disagree; the input table is corrupt."""


class NotEnumerable(PMVError):
    """The requested enumeration is unavailable for this algebra."""


class CapExceeded(PMVError):
    """A configured size cap was exceeded."""


class ShapeMismatch(PMVError):
    """A group element does not match the block list it is used with."""


class BadPartition(PMVError):
    """Linkage is not a valid partition of the block indices."""


class UnitNotInG(PMVError):
    """The designated unit fails the linkage constraints."""


class UnitNotStrong(PMVError):
    """The designated unit is not a strong unit."""


class ClosureViolation(PMVError):
    """Sampled closure check of a presentation failed; carries a witness."""


class NotInCarrier(PMVError):
    """Element lies outside the interval [0, u] or fails linkage."""


class NotInG(PMVError):
    """Element fails the presentation's linkage constraints."""


class NotChainFactor(PMVError):
    """A directly indecomposable factor is not totally ordered."""


class NotNormal(PMVError):
    """The ideal is not normal, so the quotient is undefined."""


class NoDecomposition(PMVError):
    """No family of prime normal ideals intersects to zero."""


class NotSummand(PMVError):
    """The ideal is not a summand-ideal."""


class NotStronglyProjectable(PMVError):
    """Operation requires a strongly projectable algebra."""


class IsoFailure(PMVError):
    """A claimed isomorphism failed verification."""


class PreconditionFailed(PMVError):
    """A stated operation precondition does not hold for the arguments."""


class NoSplit(PMVError):
    """No Riesz decomposition exists; signals a non-MV table."""


class NotFiniteIndex(PMVError):
    """Orthocompletion requires a finite block index set."""


class NotLarge(PMVError):
    """The subalgebra could not be certified large in the extension."""


class CorrespondenceFailure(PMVError):
    """A polar/ideal correspondence check failed; carries a witness."""


class SchemaError(PMVError):
    """A document failed schema validation.

    ``path`` is a JSON-pointer-like string locating the offending value.
    """

    def __init__(self, message, path=""):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path
