import logging
import random
from dataclasses import dataclass
from enum import Enum
from itertools import combinations, permutations, product
from typing import Dict, Iterator, List, Sequence, Tuple

from ..utils.validation import (
    LengthTooShortError, LevelOutOfRangeError, UnknownNameError,
    WordTooShortOrRepetitiveError, check_degree, is_nonrepetitive,
)

logger = logging.getLogger(__name__)

ALPHABET_SIZE = 12

Letter = int
Word = Tuple[Letter, ...]

NOTE_NAMES = ("C", "C#", "D", "D#", "E", "F", "F#", "G", "G#", "A", "A#", "B")
_FLATS = {"Db": 1, "Eb": 3, "Gb": 6, "Ab": 8, "Bb": 10}


def letter(n: int) -> Letter:
    """Residue class of n modulo 12."""
    return n % ALPHABET_SIZE


def letter_from_name(name: str) -> Letter:
    """
    Maps a note name (C, C#, Db, ..., B) to its pitch class.

    Raises UnknownNameError for anything else.
    """
    key = name.strip()
    if key in NOTE_NAMES:
        return NOTE_NAMES.index(key)
    if key in _FLATS:
        return _FLATS[key]
    raise UnknownNameError(f"unknown note name {name!r}")


def make_word(letters: Sequence[int]) -> Word:
    """Builds a word, reducing every letter modulo 12."""
    return tuple(letter(x) for x in letters)


@dataclass(frozen=True)
class TIMap:
    """
    A translation or inversion of Z12.

    The map sends x to shift + x, or to shift - x when ``invert`` is set.
    """
    invert: bool = False
    shift: Letter = 0

    def __post_init__(self):
        object.__setattr__(self, "shift", letter(self.shift))

    def __call__(self, x: Letter) -> Letter:
        return letter(self.shift - x) if self.invert else letter(self.shift + x)

    def compose(self, other: "TIMap") -> "TIMap":
        """Returns self after other, x -> self(other(x))."""
        sign = -1 if self.invert else 1
        return TIMap(invert=self.invert != other.invert, shift=self.shift + sign * other.shift)

    @classmethod
    def translation(cls, z: int) -> "TIMap":
        return cls(invert=False, shift=z)

    @classmethod
    def inversion(cls, shift: int = 0) -> "TIMap":
        return cls(invert=True, shift=shift)

    @classmethod
    def identity(cls) -> "TIMap":
        return cls()

    @classmethod
    def all(cls) -> List["TIMap"]:
        """The 24 translations and inversions, translations first."""
        return [cls(invert=inv, shift=z) for inv in (False, True) for z in range(ALPHABET_SIZE)]

    def __str__(self) -> str:
        return f"x -> {self.shift} - x" if self.invert else f"x -> x + {self.shift}"


def word_transform(w: Sequence[Letter], m: TIMap) -> Word:
    """Applies a TIMap letterwise."""
    return tuple(m(x) for x in w)


def translate(w: Sequence[Letter], z: int) -> Word:
    return word_transform(w, TIMap.translation(z))


def invert(w: Sequence[Letter]) -> Word:
    return word_transform(w, TIMap.inversion())


def is_inversion_invariant(w: Sequence[Letter]) -> bool:
    return tuple(w) == invert(w)


class Equivalence(Enum):
    TRANSLATIONAL = "translational"
    INVERSIONAL = "inversional"


def translation_distance(w1: Sequence[Letter], w2: Sequence[Letter]):
    """Smallest z with T_z(w1) = w2, or None."""
    w2 = tuple(w2)
    if len(w1) != len(w2):
        return None
    for z in range(ALPHABET_SIZE):
        if translate(w1, z) == w2:
            return z
    return None


def equivalent(w1: Sequence[Letter], w2: Sequence[Letter],
               relation: Equivalence = Equivalence.TRANSLATIONAL) -> bool:
    """
    Tests two words for translational or inversional equivalence.

    Parameters:
    w1, w2 : Sequence[Letter]
        The words to compare.
    relation : Equivalence
        TRANSLATIONAL asks for some z with T_z(w1) = w2; INVERSIONAL asks for
        w2 = Inv(w1), letter by letter.

    Returns:
    bool
    """
    relation = Equivalence(relation)
    if relation is Equivalence.TRANSLATIONAL:
        return translation_distance(w1, w2) is not None
    return invert(w1) == tuple(w2)


@dataclass(frozen=True)
class IntervalVector:
    """Successive differences of a word, one entry fewer than the word."""
    steps: Tuple[Letter, ...]

    def __len__(self) -> int:
        return len(self.steps)


@dataclass(frozen=True)
class StepVector:
    """Successive differences closed cyclically back to the first letter."""
    steps: Tuple[Letter, ...]

    def __len__(self) -> int:
        return len(self.steps)


def interval_vector(w: Sequence[Letter]) -> IntervalVector:
    if len(w) < 2:
        raise LengthTooShortError(f"interval vector needs at least 2 letters, got {len(w)}")
    return IntervalVector(tuple(letter(w[k + 1] - w[k]) for k in range(len(w) - 1)))


def cyclic_step_vector(w: Sequence[Letter]) -> StepVector:
    if len(w) < 2:
        raise LengthTooShortError(f"step vector needs at least 2 letters, got {len(w)}")
    return StepVector(interval_vector(w).steps + (letter(w[0] - w[-1]),))


def _rotate(w: Sequence, k: int) -> tuple:
    w = tuple(w)
    if not w:
        return w
    k %= len(w)
    return w[k:] + w[:k]


def mode(w: Sequence, i: int) -> tuple:
    """The i-th mode of w: w rotated left by i - 1 places."""
    check_degree(i, len(w))
    return _rotate(w, i - 1)


def maxlevel(w: Sequence) -> int:
    """
    Largest chord level of a word that adds no repeated letter.

    This is |w| - 2 for odd lengths and |w|/2 - 2 for even ones.
    """
    n = len(w)
    if n < 5:
        raise WordTooShortOrRepetitiveError(f"maxlevel needs at least 5 letters, got {n}")
    return 1 + (n - 5) // 2 - ((-1) ** n - 1) // 2 * (n // 2)


def chord(w: Sequence, i: int, level: int) -> tuple:
    """
    Chord on degree i of a word at the given level.

    The chord holds level + 2 letters: positions 1, 3, 5, ... of mode(w, i),
    counted cyclically. Letters can be anything hashable, so the same rule
    builds chords over Pythagorean letters.

    Parameters:
    w : Sequence
        A nonrepetitive word of length at least 5.
    i : int
        Degree, 1-based.
    level : int
        Chord level, 1..maxlevel(w).

    Returns:
    tuple
        The chord letters in stacking order.
    """
    if len(w) < 5 or not is_nonrepetitive(w):
        raise WordTooShortOrRepetitiveError(
            f"chords need a nonrepetitive word of length >= 5, got {tuple(w)}")
    top = maxlevel(w)
    if not 1 <= level <= top:
        raise LevelOutOfRangeError(f"level {level} outside 1..{top}")
    rotated = mode(w, i)
    n = len(rotated)
    positions = ((2 * j + 1) % n or n for j in range(level + 2))
    return tuple(rotated[p - 1] for p in positions)


def iter_words(length: int, nonrepetitive: bool = False,
               all_orderings: bool = False) -> Iterator[Word]:
    """Lazy version of enumerate_words."""
    letters = range(ALPHABET_SIZE)
    if not nonrepetitive:
        return product(letters, repeat=length)
    if all_orderings:
        return permutations(letters, length)
    return combinations(letters, length)


def enumerate_words(length: int, nonrepetitive: bool = False,
                    all_orderings: bool = False) -> List[Word]:
    """
    All words of a given length in lexicographic order.

    Nonrepetitive words are counted as letter sets, each written in ascending
    order, which gives binomial(12, n) of them. Set ``all_orderings`` to get
    every ordering of every set instead.
    """
    if length < 0:
        raise LengthTooShortError(f"length must be non-negative, got {length}")
    return list(iter_words(length, nonrepetitive, all_orderings))


def words_up_to(length: int, nonrepetitive: bool = False) -> List[Word]:
    """Words of lengths 1..length, shorter words first."""
    out: List[Word] = []
    for n in range(1, length + 1):
        out.extend(iter_words(n, nonrepetitive))
    return out


def random_word(length: int, rng: random.Random) -> Word:
    """A word of uniformly drawn letters."""
    return tuple(rng.randrange(ALPHABET_SIZE) for _ in range(length))


_BASE_WORDS: Dict[str, Word] = {
    "major": (0, 2, 4, 5, 7, 9, 11),
    "minor": (0, 2, 3, 5, 7, 8, 10),
    "harmonicminor": (0, 2, 3, 5, 7, 8, 11),
    "tziganminor": (0, 2, 3, 6, 7, 8, 11),
    "jewish": (0, 1, 4, 5, 7, 8, 10),
    "indian": (0, 1, 4, 5, 7, 8, 11),
    "majorpentatonic": (0, 2, 4, 7, 9),
    "blues": (0, 3, 5, 6, 7, 10),
    "esatonal": (0, 2, 4, 6, 8, 10),
    "augmented": (0, 3, 4, 7, 8, 11),
    "halfwholediminished": (0, 1, 3, 4, 6, 7, 9, 10),
    "wholehalfdiminished": (0, 2, 3, 5, 6, 8, 9, 11),
    "wholetonediminished": (0, 1, 3, 4, 6, 8, 10),
    "bebopmajor": (0, 2, 4, 5, 7, 8, 9, 11),
    "bebopdominant": (0, 2, 4, 5, 7, 9, 10, 11),
    "chromatic": tuple(range(ALPHABET_SIZE)),
}

# name: (parent, rotation degree, translation)
_DERIVED_WORDS = {
    "dorian": ("major", 2, -2),
    "phrigian": ("major", 3, -4),
    "lydian": ("major", 4, -5),
    "mixolydian": ("major", 5, -7),
    "locrian": ("major", 7, -11),
    "minorpentatonic": ("majorpentatonic", 6, -9),
}


def _build_catalog() -> Dict[str, Word]:
    catalog = dict(_BASE_WORDS)
    for name, (parent, degree, z) in _DERIVED_WORDS.items():
        # the rotation wraps: the pentatonic word rotated by 5 is itself
        catalog[name] = translate(_rotate(_BASE_WORDS[parent], degree - 1), z)
    return catalog


_CATALOG = _build_catalog()

CATALOG_NAMES = (
    "major", "minor", "harmonicminor", "dorian", "phrigian", "lydian", "mixolydian",
    "locrian", "tziganminor", "jewish", "indian", "majorpentatonic", "minorpentatonic",
    "blues", "esatonal", "augmented", "halfwholediminished", "wholehalfdiminished",
    "wholetonediminished", "bebopmajor", "bebopdominant", "chromatic",
)


def named_word(name: str, root: int = 0) -> Word:
    """
    A catalog word translated to the given root.

    Parameters:
    name : str
        Lowercase catalog key, e.g. "major" or "jewish".
    root : int
        Pitch class the root-0 word is translated by.

    Returns:
    Word
    """
    try:
        base = _CATALOG[name]
    except KeyError:
        raise UnknownNameError(
            f"unknown word {name!r}; known words: {', '.join(CATALOG_NAMES)}") from None
    return translate(base, root)


class SymmetryMode(Enum):
    POINTWISE = "pointwise"
    SETWISE = "setwise"


def symmetry_group(w: Sequence[Letter], kind: SymmetryMode = SymmetryMode.POINTWISE) -> List[TIMap]:
    """
    The TIMaps that fix a word.

    POINTWISE keeps every letter in place, SETWISE only has to permute the
    letter set. The identity is always first.
    """
    kind = SymmetryMode(kind)
    w = tuple(w)
    letters = frozenset(w)
    group = []
    for g in TIMap.all():
        image = word_transform(w, g)
        if (image == w) if kind is SymmetryMode.POINTWISE else (frozenset(image) == letters):
            group.append(g)
    return group


def is_proper_prefix(a: Sequence, b: Sequence) -> bool:
    """True when a is b[:k] for some 1 <= k < len(b)."""
    return 1 <= len(a) < len(b) and tuple(b[:len(a)]) == tuple(a)
