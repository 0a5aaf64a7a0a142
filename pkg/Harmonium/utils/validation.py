from fractions import Fraction
from numbers import Real
from typing import Sequence


class HarmoniumError(ValueError):
    """Base class of every error raised by Harmonium on bad input."""


class LengthTooShortError(HarmoniumError):
    """A word is too short for the requested operation."""


class DegreeOutOfRangeError(HarmoniumError):
    """A degree index lies outside 1..len(word)."""


class LevelOutOfRangeError(HarmoniumError):
    """A chord level lies outside 1..maxlevel(word)."""


class WordTooShortOrRepetitiveError(HarmoniumError):
    """A word has fewer than five letters or repeats a letter."""


class UnknownNameError(HarmoniumError):
    """A catalog or context name is not known."""


class NotADegreeError(HarmoniumError):
    """A chord is not among the degree chords of a tonality."""


class SearchBudgetExceededError(HarmoniumError):
    """An exhaustive search would visit more candidates than allowed."""


class NotFiveLimitError(HarmoniumError):
    """A ratio has a prime factor other than 2, 3 or 5."""


class NonPositiveError(HarmoniumError):
    """A frequency, ratio or count must be strictly positive."""


class NotJustTunedError(HarmoniumError):
    """A ratio has no integer-exponent Euler point."""


class IndexOutOfRangeError(HarmoniumError):
    """A position index lies outside the word."""


class CycleUnderflowError(HarmoniumError):
    """A fifth-cycle index would become negative."""


class EmptyListError(HarmoniumError):
    """A list needs at least two entries."""


class ZeroIndexError(HarmoniumError):
    """A pure oscillator cannot sit on harmonic index zero."""


class MalformedPieceError(HarmoniumError):
    """The segments of a piece do not alternate correctly."""


class EmptyPieceError(HarmoniumError):
    """A piece with no events cannot be rendered."""


class WavWriteError(HarmoniumError):
    """Writing the WAV file failed."""


class InexactPulsationError(HarmoniumError):
    """Exact mode was asked for with a floating point pulsation."""


class ConfigError(HarmoniumError):
    """A configuration file or value is invalid."""


class EmptyContextError(HarmoniumError):
    """A context holds no tonality."""


class DuplicateTonalityError(HarmoniumError):
    """A context holds the same tonality twice."""


class NotASymmetryError(HarmoniumError):
    """The map passed as a symmetry does not fix the word pointwise."""


def check_positive(value: Real, name: str = "value") -> Real:
    """
    Checks that a number is strictly positive.

    Parameters:
    value : Real
        The number to check.
    name : str
        Name used in the error message.

    Returns:
    Real
        The value itself, so the call can be inlined.
    """
    if not value > 0:
        raise NonPositiveError(f"{name} must be positive, got {value}")
    return value


def check_degree(degree: int, length: int) -> int:
    """Checks that a 1-based degree index fits a word of the given length."""
    if not 1 <= degree <= length:
        raise DegreeOutOfRangeError(f"degree {degree} outside 1..{length}")
    return degree


def check_index(index: int, length: int) -> int:
    if not 1 <= index <= length:
        raise IndexOutOfRangeError(f"index {index} outside 1..{length}")
    return index


def check_budget(candidates: int, budget: int, what: str = "candidates") -> None:
    """Raises SearchBudgetExceededError when a search would be too large."""
    if candidates > budget:
        raise SearchBudgetExceededError(
            f"{candidates} {what} exceed the search budget of {budget}"
        )


def is_nonrepetitive(letters: Sequence) -> bool:
    """True when no letter occurs twice."""
    return len(set(letters)) == len(letters)


def is_exact(value) -> bool:
    """True for ints and Fractions, the values exact arithmetic accepts."""
    return isinstance(value, (int, Fraction)) and not isinstance(value, bool)
