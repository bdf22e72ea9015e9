"""Exception and warning types shared across the pipeline."""


class EquisummError(Exception):
    """Base class for all pipeline errors."""


class MalformedRecord(EquisummError):
    def __init__(self, row: int, reason: str) -> None:
        super().__init__(f"row {row}: {reason}")
        self.row = row
        self.reason = reason


class EmptyCorpus(EquisummError):
    pass


class MissingField(EquisummError):
    pass


class OverlappingEntry(EquisummError):
    def __init__(self, terms) -> None:
        self.terms = sorted(terms)
        super().__init__("terms listed as both male and female: " + ", ".join(self.terms))


class EmptyLexicon(EquisummError):
    pass


class ServiceUnavailable(EquisummError):
    pass


class DimensionMismatch(EquisummError):
    pass


class ZeroVector(EquisummError):
    pass


class EmptySeedSet(EquisummError):
    pass


class NoSeedClusters(EquisummError):
    pass


class ConfigError(EquisummError):
    pass


class MalformedRecordWarning(UserWarning):
    """A record was dropped at ingest (for example, blank text)."""


class NonConvergence(RuntimeWarning):
    """Power iteration hit max_iter before reaching tolerance."""


class RankDeficient(RuntimeWarning):
    """Term matrix rank is below the requested number of concepts."""
