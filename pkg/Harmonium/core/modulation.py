import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import List, NamedTuple, Optional, Sequence, Tuple, Union

from ..utils.config import DEFAULT_CADENCE_BUDGET
from ..utils.validation import LevelOutOfRangeError, MalformedPieceError, NotASymmetryError
from .pcset import SymmetryMode, TIMap, is_inversion_invariant, named_word, symmetry_group, translation_distance
from .tonality import (
    CadenceRule, Context, HarmonicWord, PivotalDegree, Tonality, cadences, degree_of,
    hw_from_degrees, hw_to_list, is_cadence, make_tonality, natural_context_of, pivotal_degrees,
)

logger = logging.getLogger(__name__)

II_V_I = (2, 5, 1)
FIFTH = 7


@dataclass(frozen=True)
class Modulation:
    """A pivot chord shared by source and target, then a cadence of the target."""
    pivot: PivotalDegree
    cadence: HarmonicWord

    def to_dict(self) -> dict:
        return {"pivot": self.pivot.to_dict(), "cadence": hw_to_list(self.cadence)}


class MazzolaModulator(TIMap):
    """The symmetry carrying the source word onto the target word."""


class MazzolaModulation(NamedTuple):
    modulator: MazzolaModulator
    cadence: HarmonicWord


def modulations(t1: Tonality, t2: Tonality, cadence_maxlen: int = 1,
                context: Optional[Context] = None, minimal: bool = False,
                rule: CadenceRule = CadenceRule.STRICT,
                budget: int = DEFAULT_CADENCE_BUDGET) -> List[Modulation]:
    """
    Every (pivot, cadence) pair leading from t1 to t2.

    Parameters:
    t1, t2 : Tonality
        Source and target.
    cadence_maxlen : int
        Longest cadence to look for.
    context : Context, optional
        Context for the cadences of t2 (default is the natural context of t2).
    minimal : bool
        Use minimal cadences of length cadence_maxlen only.
    rule : CadenceRule
        Cadence rule, see CadenceRule.
    budget : int
        Search budget for the cadence search.

    Returns:
    List[Modulation]
        Ordered by pivot degree in t1, then by cadence.
    """
    pivots = pivotal_degrees(t1, t2)
    if not pivots:
        return []
    ctx = natural_context_of(t2) if context is None else context
    closing = cadences(t2, ctx, cadence_maxlen, minimal, rule, budget)
    found = [Modulation(p, c) for p in pivots for c in closing]
    logger.debug("%d pivots x %d cadences from %r to %r", len(pivots), len(closing), t1, t2)
    return found


def mazzola_modulator(t1: Tonality, t2: Tonality,
                      symmetry: Optional[TIMap] = None) -> Optional[MazzolaModulator]:
    """
    The map g = T_z o h taking the word of t1 onto the word of t2.

    z is the translation with T_z(word1) = word2. Without an explicit
    symmetry, h is the inversion when word1 is fixed by it letter by letter,
    the identity otherwise. Returns None when the words are not translates.

    Parameters:
    t1, t2 : Tonality
        Source and target.
    symmetry : TIMap, optional
        A pointwise symmetry h of word1 to use instead.

    Returns:
    Optional[MazzolaModulator]
    """
    z = translation_distance(t1.word, t2.word)
    if z is None:
        return None
    if symmetry is None:
        h = TIMap.inversion() if is_inversion_invariant(t1.word) else TIMap.identity()
    else:
        if symmetry not in symmetry_group(t1.word, SymmetryMode.POINTWISE):
            raise NotASymmetryError(f"{symmetry} does not fix {list(t1.word)} pointwise")
        h = symmetry
    g = TIMap.translation(z).compose(h)
    return MazzolaModulator(invert=g.invert, shift=g.shift)


def mazzola_modulations(t1: Tonality, t2: Tonality, cadence_maxlen: int = 1,
                        minimal: bool = False,
                        budget: int = DEFAULT_CADENCE_BUDGET) -> List[MazzolaModulation]:
    g = mazzola_modulator(t1, t2)
    if g is None:
        return []
    closing = cadences(t2, natural_context_of(t2), cadence_maxlen, minimal, budget=budget)
    return [MazzolaModulation(g, c) for c in closing]


class PieceKind(Enum):
    GENERAL = "general"
    MAZZOLA = "mazzola"


Transition = Union[Modulation, MazzolaModulation]


@dataclass(frozen=True)
class Piece:
    """
    A tonal piece: hw_1, m_1, hw_2, ..., m_{k-1}, hw_k over tonalities t_1..t_k.

    Attributes:
        tonalities (Tuple[Tonality, ...]): t_1..t_k.
        harmonic_words (Tuple[HarmonicWord, ...]): hw_1..hw_k.
        modulations (Tuple[Transition, ...]): m_1..m_{k-1}.
    """
    tonalities: Tuple[Tonality, ...]
    harmonic_words: Tuple[HarmonicWord, ...]
    modulations: Tuple[Transition, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "tonalities", tuple(self.tonalities))
        object.__setattr__(self, "harmonic_words", tuple(HarmonicWord(h) for h in self.harmonic_words))
        object.__setattr__(self, "modulations", tuple(self.modulations))
        self._validate_shape()

    def _validate_shape(self):
        k = len(self.tonalities)
        if k == 0:
            raise MalformedPieceError("a piece needs at least one tonality")
        if len(self.harmonic_words) != k:
            raise MalformedPieceError(
                f"{k} tonalities need {k} harmonic words, got {len(self.harmonic_words)}")
        if len(self.modulations) != k - 1:
            raise MalformedPieceError(
                f"{k} tonalities need {k - 1} modulations, got {len(self.modulations)}")

    @classmethod
    def from_segments(cls, segments: Sequence, tonalities: Sequence[Tonality]) -> "Piece":
        """Builds a piece from the alternating list hw_1, m_1, hw_2, ..., hw_k."""
        segments = list(segments)
        if len(segments) % 2 == 0:
            raise MalformedPieceError("segments must start and end with a harmonic word")
        words, transitions = segments[0::2], segments[1::2]
        for m in transitions:
            if not isinstance(m, (Modulation, MazzolaModulation)):
                raise MalformedPieceError(f"expected a modulation between harmonic words, got {m!r}")
        for hw in words:
            if isinstance(hw, (Modulation, MazzolaModulation)):
                raise MalformedPieceError("two modulations in a row")
        return cls(tuple(tonalities), tuple(words), tuple(transitions))

    def segments(self) -> list:
        out: list = [self.harmonic_words[0]]
        for m, hw in zip(self.modulations, self.harmonic_words[1:]):
            out.extend([m, hw])
        return out

    def to_dict(self) -> dict:
        return {
            "tonalities": [t.to_dict() for t in self.tonalities],
            "harmonic_words": [hw_to_list(hw) for hw in self.harmonic_words],
            "modulations": [transition_dict(m) for m in self.modulations],
        }


def transition_dict(m: Transition) -> dict:
    """JSON form of a pivot modulation or a Mazzola modulation."""
    if isinstance(m, Modulation):
        return m.to_dict()
    return {
        "modulator": {"invert": m.modulator.invert, "shift": m.modulator.shift},
        "cadence": hw_to_list(m.cadence),
    }


class Violation(NamedTuple):
    segment: int
    message: str


@dataclass(frozen=True)
class ValidationReport:
    violations: Tuple[Violation, ...] = ()

    @property
    def is_valid(self) -> bool:
        return not self.violations

    def __str__(self) -> str:
        if self.is_valid:
            return "valid"
        return "\n".join(f"segment {v.segment}: {v.message}" for v in self.violations)


def _check_modulation(m: Transition, source: Tonality, target: Tonality,
                      kind: PieceKind, target_context: Context) -> List[str]:
    problems = []
    if kind is PieceKind.MAZZOLA:
        if not isinstance(m, MazzolaModulation):
            return ["expected a Mazzola modulation"]
        expected = mazzola_modulator(source, target)
        if expected is None:
            problems.append("source and target words are not translates")
        elif TIMap(m.modulator.invert, m.modulator.shift) != TIMap(expected.invert, expected.shift):
            problems.append(f"modulator {m.modulator} differs from {expected}")
    else:
        if not isinstance(m, Modulation):
            return ["expected a pivot modulation"]
        pivots = pivotal_degrees(source, target)
        if m.pivot not in pivots:
            problems.append(f"pivot {list(m.pivot.chord)} is not a pivotal degree of the pair")
    if not is_cadence(m.cadence, target, target_context):
        problems.append(f"{[list(c) for c in m.cadence]} is not a cadence of the target tonality")
    return problems


def validate_piece(piece: Piece, kind: PieceKind = PieceKind.GENERAL) -> ValidationReport:
    """
    Checks every membership and modulation condition of a piece.

    Segments are numbered in the alternating order hw_1 = 0, m_1 = 1, hw_2 = 2, ...

    Parameters:
    piece : Piece
        The piece to check.
    kind : PieceKind
        GENERAL for pivot modulations, MAZZOLA for modulator-based ones.

    Returns:
    ValidationReport
        Empty exactly when the piece is valid.
    """
    kind = PieceKind(kind)
    violations: List[Violation] = []
    for i, (t, hw) in enumerate(zip(piece.tonalities, piece.harmonic_words)):
        if not t.contains(hw):
            foreign = [list(c) for c in hw if not t.has_chord(c)]
            violations.append(Violation(2 * i, f"chords {foreign} do not belong to {t!r}"))
    for i, m in enumerate(piece.modulations):
        source, target = piece.tonalities[i], piece.tonalities[i + 1]
        for message in _check_modulation(m, source, target, kind, natural_context_of(target)):
            violations.append(Violation(2 * i + 1, message))
    return ValidationReport(tuple(violations))


def fifths_cycle_roots(steps: int) -> List[int]:
    """0, 7, 2, ...: steps + 1 roots along the cycle of fifths."""
    roots = [0]
    for _ in range(steps):
        roots.append((roots[-1] + FIFTH) % 12)
    return roots


def _check_fifths_level(level: int):
    # the C degree 6 = G degree 2 pivot vanishes at level 5
    if not 1 <= level <= 4:
        raise LevelOutOfRangeError(f"the fifths cycle needs a level in 1..4, got {level}")


def fifths_cycle_piece(level: int, steps: int = 12, degrees: Sequence[int] = II_V_I) -> List[tuple]:
    """
    The progression on ``degrees`` repeated in each major tonality along the fifths cycle.

    Returns the flat list of chords over the roots 0, 7, 2, ... (steps + 1 of them).
    """
    _check_fifths_level(level)
    chords: List[tuple] = []
    for root in fifths_cycle_roots(steps):
        chords.extend(hw_from_degrees(make_tonality(named_word("major", root), level), degrees))
    return chords


def fifths_cycle_as_piece(level: int, steps: int = 12, degrees: Sequence[int] = II_V_I) -> Piece:
    """
    The fifths-cycle progression as a validated-shape Piece.

    Each step modulates through the chord on degree 6 of the old tonality,
    which is degree 2 of the new one, and closes with the progression on
    ``degrees`` in the new tonality.
    """
    _check_fifths_level(level)
    tonalities = [make_tonality(named_word("major", root), level) for root in fifths_cycle_roots(steps)]
    words = [hw_from_degrees(t, degrees) for t in tonalities]
    transitions = []
    for source, target, hw in zip(tonalities, tonalities[1:], words[1:]):
        pivot_chord = source.chord_at(6)
        transitions.append(Modulation(PivotalDegree(pivot_chord, 6, degree_of(target, pivot_chord)), hw))
    return Piece(tuple(tonalities), tuple(words), tuple(transitions))
