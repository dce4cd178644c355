"""Typed errors for the whole package.

Every failure mode a caller is expected to handle gets its own class so the
service layer can map errors to HTTP statuses (or in-stream events) without
string matching.
"""


class TableCheckError(Exception):
    """Base class for all package errors."""


# --- table parsing ---------------------------------------------------------

class NoDelimiter(TableCheckError):
    """No candidate delimiter splits any line into two or more fields."""


class EmptyTable(TableCheckError):
    """Parsing or recognition produced zero data rows."""


class TableTooLarge(TableCheckError):
    """Input exceeds the row/column cap that protects prompt length."""


class MalformedRender(TableCheckError):
    """A serialized table is missing required schema keys."""


# --- prompting -------------------------------------------------------------

class PromptTooLong(TableCheckError):
    """Prompt exceeds the model's context budget; caller should prune via RAG."""


# --- retrieval -------------------------------------------------------------

class ZeroVector(TableCheckError):
    """Cosine similarity is undefined for a zero-norm vector."""


# --- inference gateway -----------------------------------------------------

class ModelUnavailable(TableCheckError):
    """Connect failure or 5xx from the inference backend."""


class StreamStalled(TableCheckError):
    """The model stream exceeded the inter-chunk or total timeout."""


class UnknownModel(TableCheckError):
    """model_id is not present in the registry."""


class DuplicateModelId(TableCheckError):
    """Registry configuration contains the same model_id twice."""


class DimensionMismatch(TableCheckError):
    """Embedding backend returned a vector of the wrong dimension."""


class ImageTooLarge(TableCheckError):
    """Uploaded image exceeds the configured size cap."""


# --- OCR -------------------------------------------------------------------

class OcrFailed(TableCheckError):
    """The OCR backend raised; the original error is chained as __cause__."""


class UnsupportedImage(TableCheckError):
    """Image format is not PNG or JPEG."""


# --- verdict parsing -------------------------------------------------------

class Unverifiable(TableCheckError):
    """Neither structured nor keyword recovery found a verdict in the output."""
