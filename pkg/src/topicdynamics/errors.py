"""Exception types raised by the library.

Everything derives from ``TopicDynamicsError`` so callers can catch the
package's failures with one ``except`` clause.  The subclasses also derive
from ``ValueError`` where that is the natural builtin, so code written
against plain numpy conventions keeps working.
"""


class TopicDynamicsError(Exception):
    """Base class for all errors raised by this package."""


class InvalidParameterError(TopicDynamicsError, ValueError):
    """A configuration or function parameter is out of its legal range."""


class InvalidInputError(TopicDynamicsError, ValueError):
    """Input data violates a documented precondition (e.g. not normalized)."""


class IncompatibleVectorsError(InvalidInputError):
    """Two vectors that must share a length (or grid) do not."""


class DegenerateTopicError(TopicDynamicsError, ValueError):
    """A topic has no activity at all and cannot be normalized or scored."""


class InsufficientDataError(TopicDynamicsError, ValueError):
    """Fewer data points than the operation requires (e.g. < 2 topics)."""


class MalformedTreeError(TopicDynamicsError, ValueError):
    """An edge list or merge tree is not a valid spanning tree / hierarchy."""


class IngestError(TopicDynamicsError, ValueError):
    """An input file could not be parsed; message carries the line number."""


class DuplicateKeyError(IngestError):
    """The same (topic_id, date) pair appeared more than once in the input."""
