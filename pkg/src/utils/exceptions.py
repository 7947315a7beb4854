# src/utils/exceptions.py


class BotLexError(ValueError):
    """Base class for every domain error raised by botlex."""


class LexiconError(BotLexError):
    """Raised when a lexicon file is missing, empty or fails its checksum."""


class DataError(BotLexError):
    """Raised for corpus, CSV and feature-extraction problems."""


class ModelError(BotLexError):
    """Raised when a classifier cannot be trained or applied."""


class EvaluationError(BotLexError):
    """Raised when a metric or a cross-validation split is undefined."""


class UsageError(BotLexError):
    """Raised for invalid command-line usage."""
