"""Exception types shared across the package."""


class NewsDepsError(Exception):
    """Base class for all newsdeps errors."""


class MalformedInput(NewsDepsError):
    """The import document is not valid JSON or not an array of articles."""


class InvalidArticle(NewsDepsError):
    """An article failed validation; carries the array index and the field name."""

    def __init__(self, index: int, field: str, message: str = ""):
        self.index = index
        self.field = field
        super().__init__(message or f"article {index}: invalid or missing field '{field}'")


class ParseFailure(NewsDepsError):
    """A required article field could not be resolved from an HTML document."""

    def __init__(self, field: str, message: str = ""):
        self.field = field
        super().__init__(message or f"could not resolve required field '{field}'")


class FetchFailure(NewsDepsError):
    """A remote document could not be retrieved."""


class CorpusTooSmall(NewsDepsError):
    """Similarity analysis needs at least two articles."""


class EmptyMatrix(NewsDepsError):
    """The operation requires a matrix with at least one entry."""


class MismatchedIds(NewsDepsError):
    """Matrix and corpus disagree on article identities."""
