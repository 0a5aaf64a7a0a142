from .validation import (
    HarmoniumError, LengthTooShortError, DegreeOutOfRangeError, LevelOutOfRangeError,
    WordTooShortOrRepetitiveError, UnknownNameError, NotADegreeError,
    SearchBudgetExceededError, NotFiveLimitError, NonPositiveError, NotJustTunedError,
    IndexOutOfRangeError, CycleUnderflowError, EmptyListError, ZeroIndexError,
    MalformedPieceError, EmptyPieceError, WavWriteError, InexactPulsationError,
    ConfigError, EmptyContextError, DuplicateTonalityError, NotASymmetryError,
)
from .config import Config, load_config, REFERENCE_NOTE, REFERENCE_TIME
from .ratio import parse_ratio, format_ratio
