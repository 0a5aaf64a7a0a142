import logging
from enum import Enum
from functools import lru_cache
from itertools import combinations, product
from typing import Callable, Dict, Iterable, Iterator, List, NamedTuple, Sequence, Tuple

from ..utils.config import DEFAULT_CADENCE_BUDGET
from ..utils.validation import (
    DuplicateTonalityError, EmptyContextError, HarmoniumError, NotADegreeError,
    UnknownNameError, check_budget, check_degree,
)
from .pcset import ALPHABET_SIZE, chord, enumerate_words, maxlevel, mode, named_word

logger = logging.getLogger(__name__)

Chord = tuple


def chord_to_list(c: Sequence) -> list:
    """A chord as a JSON list; letters carrying a to_dict (Pythagorean letters) become objects."""
    return [x.to_dict() if hasattr(x, "to_dict") else x for x in c]


def hw_to_list(hw: Iterable[Sequence]) -> list:
    return [chord_to_list(c) for c in hw]


class HarmonicWord(tuple):
    """An ordered sequence of chords, i.e. a chord progression."""

    def __new__(cls, chords: Iterable[Sequence] = ()):
        return super().__new__(cls, (tuple(c) for c in chords))

    def map_letters(self, fn: Callable) -> "HarmonicWord":
        """Applies fn to every letter of every chord."""
        return HarmonicWord(tuple(fn(x) for x in c) for c in self)

    def translate(self, z: int) -> "HarmonicWord":
        return self.map_letters(lambda x: (x + z) % ALPHABET_SIZE)

    def __repr__(self) -> str:
        return f"HarmonicWord({list(self)})"


class Tonality:
    """
    A nonrepetitive word with a chord level.

    Attributes:
        word (tuple): The underlying word.
        level (int): The chord level.
        degree_chords (Tuple[tuple, ...]): chord(word, i, level) for every degree i.

    Two tonalities are equal when word and level are; rotations of a word
    give different tonalities even though their chords coincide as a set.
    """

    def __init__(self, word: Sequence, level: int):
        self.word = tuple(word)
        self.level = level
        self.degree_chords = tuple(chord(self.word, i, level) for i in range(1, len(self.word) + 1))
        self._chords = frozenset(self.degree_chords)

    def __len__(self) -> int:
        return len(self.degree_chords)

    def chord_at(self, degree: int) -> Chord:
        check_degree(degree, len(self))
        return self.degree_chords[degree - 1]

    def has_chord(self, c: Sequence) -> bool:
        return tuple(c) in self._chords

    def contains(self, hw: Iterable[Sequence]) -> bool:
        """True when every chord of hw is a degree chord of this tonality."""
        return all(tuple(c) in self._chords for c in hw)

    @property
    def chord_set(self) -> frozenset:
        return self._chords

    def translate_letter(self, x, z: int):
        return (x + z) % ALPHABET_SIZE

    def translate(self, z: int) -> "Tonality":
        return type(self)(tuple(self.translate_letter(x, z) for x in self.word), self.level)

    def to_dict(self) -> dict:
        return {
            "word": chord_to_list(self.word),
            "level": self.level,
            "degrees": hw_to_list(self.degree_chords),
        }

    def __eq__(self, other) -> bool:
        if not isinstance(other, Tonality):
            return NotImplemented
        return self.word == other.word and self.level == other.level

    def __hash__(self) -> int:
        return hash((self.word, self.level))

    def __repr__(self) -> str:
        return f"{type(self).__name__}(word={list(self.word)}, level={self.level})"


class Context:
    """
    A finite ordered collection of distinct tonalities.

    Cadences are always judged against a context.
    """

    def __init__(self, tonalities: Iterable[Tonality], name: str = ""):
        self.tonalities = tuple(tonalities)
        self.name = name
        self._validate()

    def _validate(self):
        if not self.tonalities:
            raise EmptyContextError("a context needs at least one tonality")
        if len(set(self.tonalities)) != len(self.tonalities):
            raise DuplicateTonalityError(f"context {self.name!r} lists a tonality twice")

    def __len__(self) -> int:
        return len(self.tonalities)

    def __iter__(self) -> Iterator[Tonality]:
        return iter(self.tonalities)

    def __contains__(self, t: Tonality) -> bool:
        return t in self.tonalities

    def index(self, t: Tonality) -> int:
        return self.tonalities.index(t)

    def translate(self, z: int) -> "Context":
        return Context((t.translate(z) for t in self.tonalities), name=self.name)

    def __repr__(self) -> str:
        return f"Context(name={self.name!r}, size={len(self)})"


class CadenceRule(Enum):
    """
    How a context decides that a harmonic word declares its tonality.

    STRICT: the tonality contains the word and no other context member does.
    UNIQUE: exactly one context member contains the word.
    The two agree whenever the tonality belongs to the context.
    """
    STRICT = "strict"
    UNIQUE = "unique"


class PivotalDegree(NamedTuple):
    chord: Chord
    source_degree: int
    target_degree: int

    def to_dict(self) -> dict:
        return {"chord": chord_to_list(self.chord), "source_degree": self.source_degree,
                "target_degree": self.target_degree}


def make_tonality(w: Sequence, level: int) -> Tonality:
    return Tonality(w, level)


def iter_harmonic_words(t: Tonality, length: int, upto: bool = False) -> Iterator[HarmonicWord]:
    lengths = range(1, length + 1) if upto else (length,)
    for n in lengths:
        for chords in product(t.degree_chords, repeat=n):
            yield HarmonicWord(chords)


def harmonic_words(t: Tonality, length: int, upto: bool = False) -> List[HarmonicWord]:
    """
    Harmonic words of a tonality, ordered by degree indices.

    Parameters:
    t : Tonality
        The tonality whose degree chords are used.
    length : int
        Word length; with ``upto`` every length 1..length is listed, shorter first.
    upto : bool
        See above.

    Returns:
    List[HarmonicWord]
    """
    return list(iter_harmonic_words(t, length, upto))


def contains(t: Tonality, hw: Iterable[Sequence]) -> bool:
    return t.contains(hw)


def degree_of(t: Tonality, c: Sequence) -> int:
    """1-based index of the first degree chord equal to c."""
    try:
        return t.degree_chords.index(tuple(c)) + 1
    except ValueError:
        raise NotADegreeError(f"{tuple(c)} is not a degree chord of {t!r}") from None


def degrees_of(t: Tonality, hw: Iterable[Sequence]) -> Tuple[int, ...]:
    return tuple(degree_of(t, c) for c in hw)


def hw_from_degrees(t: Tonality, degrees: Iterable[int]) -> HarmonicWord:
    return HarmonicWord(t.chord_at(d) for d in degrees)


def pivotal_degrees(t1: Tonality, t2: Tonality) -> List[PivotalDegree]:
    """Chords shared by both tonalities, with their degree in each, ordered by degree in t1."""
    return [PivotalDegree(c, i, degree_of(t2, c))
            for i, c in enumerate(t1.degree_chords, start=1) if t2.has_chord(c)]


def pivot_degree_lists(pivots: Sequence[PivotalDegree]) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """The two numberings of a pivot list, e.g. ((1, 3, 5, 6), (4, 6, 1, 2))."""
    return tuple(p.source_degree for p in pivots), tuple(p.target_degree for p in pivots)


class _CadenceOracle:
    """
    Answers is_cadence for harmonic words of one tonality against one context.

    Each degree chord is mapped to the bit set of context members holding it;
    a harmonic word is contained in exactly the members in the intersection.
    """

    def __init__(self, t: Tonality, ctx: Context, rule: CadenceRule):
        self.t = t
        self.rule = CadenceRule(rule)
        self._everyone = (1 << len(ctx)) - 1
        self._own = 1 << ctx.index(t) if t in ctx else 0
        self._masks: Dict[Chord, int] = {}
        for c in t.degree_chords:
            mask = 0
            for k, u in enumerate(ctx):
                if u.has_chord(c):
                    mask |= 1 << k
            self._masks[c] = mask
        self._memo: Dict[HarmonicWord, bool] = {}

    def holders(self, hw: Sequence[Chord]) -> int:
        mask = self._everyone
        for c in hw:
            mask &= self._masks.get(tuple(c), 0)
        return mask

    def __call__(self, hw: HarmonicWord) -> bool:
        if not hw or not self.t.contains(hw):
            return False
        cached = self._memo.get(hw)
        if cached is None:
            mask = self.holders(hw)
            if self.rule is CadenceRule.STRICT:
                cached = (mask & ~self._own) == 0
            else:
                cached = bin(mask).count("1") == 1
            self._memo[hw] = cached
        return cached

    def is_minimal(self, hw: HarmonicWord) -> bool:
        return self(hw) and not any(self(HarmonicWord(hw[:k])) for k in range(1, len(hw)))


def is_cadence(hw: Sequence[Sequence], t: Tonality, ctx: Context,
               rule: CadenceRule = CadenceRule.STRICT) -> bool:
    """
    Whether hw declares t inside ctx.

    Parameters:
    hw : Sequence of chords
        The harmonic word; an empty word is never a cadence.
    t : Tonality
        The tonality to be declared.
    ctx : Context
        The competing tonalities.
    rule : CadenceRule
        STRICT (default) or UNIQUE, see CadenceRule.

    Returns:
    bool
    """
    hw = HarmonicWord(hw)
    if not hw or not t.contains(hw):
        return False
    holders = [u for u in ctx if u.contains(hw)]
    if CadenceRule(rule) is CadenceRule.STRICT:
        return all(u == t for u in holders)
    return len(holders) == 1


def cadences(t: Tonality, ctx: Context, maxlen: int = 3, minimal: bool = False,
             rule: CadenceRule = CadenceRule.STRICT,
             budget: int = DEFAULT_CADENCE_BUDGET) -> List[HarmonicWord]:
    """
    Cadences of t with respect to ctx.

    Without ``minimal`` every cadence of length 1..maxlen is returned, shorter
    first. With ``minimal`` only words of length exactly maxlen are tried and
    those having a cadence as a proper prefix are dropped. Within a length the
    order is lexicographic in the degree indices.

    Parameters:
    t : Tonality
        The tonality.
    ctx : Context
        The context of competing tonalities.
    maxlen : int
        Longest harmonic word to try.
    minimal : bool
        Keep only minimal cadences of length maxlen.
    rule : CadenceRule
        STRICT or UNIQUE.
    budget : int
        Largest admissible len(t) ** maxlen.

    Returns:
    List[HarmonicWord]
    """
    if maxlen < 1:
        raise HarmoniumError(f"maxlen must be at least 1, got {maxlen}")
    check_budget(len(t) ** maxlen, budget, "harmonic words")
    oracle = _CadenceOracle(t, ctx, rule)
    if minimal:
        found = [hw for hw in iter_harmonic_words(t, maxlen) if oracle.is_minimal(hw)]
    else:
        found = [hw for hw in iter_harmonic_words(t, maxlen, upto=True) if oracle(hw)]
    logger.debug("%d cadences of %r against %d tonalities (maxlen=%d, minimal=%s, rule=%s)",
                 len(found), t, len(ctx), maxlen, minimal, oracle.rule.value)
    return found


def cadence_degrees(t: Tonality, ctx: Context, maxlen: int = 3, minimal: bool = False,
                    rule: CadenceRule = CadenceRule.STRICT,
                    budget: int = DEFAULT_CADENCE_BUDGET) -> List[Tuple[int, ...]]:
    """Cadences rendered as degree-index tuples, e.g. [(5,), (7,)]."""
    return [degrees_of(t, hw) for hw in cadences(t, ctx, maxlen, minimal, rule, budget)]


def natural_context_of(t: Tonality) -> Context:
    """
    Tonalities of all translates of t's word at t's level.

    Translates whose degree chords coincide as a set with an earlier one are
    skipped, so the chromatic word gives a single tonality. z = 0 comes
    first, hence t itself always belongs to its natural context.
    """
    seen = set()
    members = []
    for z in range(ALPHABET_SIZE):
        u = t.translate(z)
        if u.chord_set in seen:
            continue
        seen.add(u.chord_set)
        members.append(u)
    return Context(members, name="natural")


def natural_context(w: Sequence, level: int) -> Context:
    return natural_context_of(make_tonality(w, level))


def _catalog_context(name: str, level: int) -> List[Tonality]:
    return [make_tonality(named_word(name, root), level) for root in range(ALPHABET_SIZE)]


def _gregorian(level: int) -> List[Tonality]:
    return [make_tonality(mode(named_word("major", root), j), level)
            for j in range(1, 8) for root in range(ALPHABET_SIZE)]


def _mazzola(level: int) -> List[Tonality]:
    return [make_tonality(w, level) for w in enumerate_words(7, nonrepetitive=True)]


_STANDARD_CONTEXTS = {
    "major": lambda level: _catalog_context("major", level),
    "minor": lambda level: _catalog_context("minor", level),
    "classical": lambda level: _catalog_context("major", level) + _catalog_context("minor", level),
    "gregorian": _gregorian,
    "mazzola": _mazzola,
    "jewish": lambda level: _catalog_context("jewish", level),
}

STANDARD_CONTEXT_NAMES = tuple(_STANDARD_CONTEXTS)


@lru_cache(maxsize=64)
def standard_context(name: str, level: int) -> Context:
    """
    One of the named contexts: major (12), minor (12), classical (24),
    gregorian (84), mazzola (792) or jewish (12), all at the given level.
    """
    try:
        build = _STANDARD_CONTEXTS[name]
    except KeyError:
        raise UnknownNameError(
            f"unknown context {name!r}; known contexts: {', '.join(STANDARD_CONTEXT_NAMES)}") from None
    return Context(build(level), name=name)


def count_tonalities_by_size() -> Dict[int, int]:
    """Number of tonalities contributed by nonrepetitive letter sets of each size 5..12."""
    return {n: sum(maxlevel(w) for w in combinations(range(ALPHABET_SIZE), n))
            for n in range(5, ALPHABET_SIZE + 1)}


def count_all_tonalities() -> int:
    return sum(count_tonalities_by_size().values())


def law_resolution_on_tonic(hw: Sequence[Sequence], t: Tonality) -> bool:
    """The harmonic word stays in t and ends on the tonic chord."""
    hw = HarmonicWord(hw)
    return bool(hw) and t.contains(hw) and hw[-1] == t.degree_chords[0]


HarmonyLaw = Callable[[HarmonicWord, Tonality], bool]


def check_translation_invariance(law: HarmonyLaw, hw: Sequence[Sequence], t: Tonality, z: int) -> bool:
    """law(hw, t) == law(T_z hw, T_z t), T_z acting letterwise on chords and on t's word."""
    hw = HarmonicWord(hw)
    moved = hw.map_letters(lambda x: t.translate_letter(x, z))
    return law(hw, t) == law(moved, t.translate(z))


def is_translation_invariant(law: HarmonyLaw, hw: Sequence[Sequence], t: Tonality) -> bool:
    return all(check_translation_invariance(law, hw, t, z) for z in range(ALPHABET_SIZE))
