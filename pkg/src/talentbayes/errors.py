"""Exception hierarchy. Everything user-facing derives from TalentBayesError."""


class TalentBayesError(Exception):
    """Base class for data/validation errors raised by this package."""


class SchemaError(TalentBayesError):
    """Malformed or inconsistent attribute schema."""


class DataError(TalentBayesError):
    """Bad dataset, instance, or request payload."""


class ModelFormatError(TalentBayesError):
    """Unreadable or invariant-violating persisted model document."""
