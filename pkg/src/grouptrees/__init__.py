"""grouptrees: exact-arithmetic toolkit for subgroups of free groups,
marked metric graphs, and finite systems of interval isometries."""

from .core import Scalar, Word, enumerate_words, parse_word
from .errors import GroupTreesError

__version__ = "0.1.0"

__all__ = [
    "Scalar",
    "Word",
    "enumerate_words",
    "parse_word",
    "GroupTreesError",
    "__version__",
]
