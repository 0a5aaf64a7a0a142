import logging
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import List, NamedTuple, Optional, Sequence, Tuple

from ..core.modulation import Modulation, modulations
from ..core.pcset import ALPHABET_SIZE
from ..core.tonality import (
    CadenceRule, Context, HarmonicWord, PivotalDegree, Tonality, cadences, natural_context_of,
    pivotal_degrees, standard_context,
)
from ..utils.config import DEFAULT_CADENCE_BUDGET, REFERENCE_NOTE
from ..utils.validation import CycleUnderflowError, HarmoniumError, check_index
from .euler import FIFTH_COMMA, coordination_value
from .scales import scale_at_fixed_interval

logger = logging.getLogger(__name__)

FIFTH_COMMA_RATIO: Fraction = coordination_value(FIFTH_COMMA)


class PytLetter(NamedTuple):
    """A pitch class tagged with the fifth cycle it was reached on."""
    pc: int
    cycle: int

    def to_dict(self) -> dict:
        return {"pc": self.pc, "cycle": self.cycle}


PytWord = Tuple[PytLetter, ...]


def pyt_letter(pc: int, cycle: int = 0) -> PytLetter:
    if cycle < 0:
        raise CycleUnderflowError(f"cycle must be non-negative, got {cycle}")
    return PytLetter(pc % ALPHABET_SIZE, cycle)


def pyt_word(w: Sequence[int], cycle: int = 0) -> PytWord:
    """Every letter of w on the given cycle."""
    return tuple(pyt_letter(x, cycle) for x in w)


def fifth_cycle_precedes(a: PytLetter, b: PytLetter) -> bool:
    """The fifth-cycle order: the cycle decides first, the pitch class second."""
    return (a.cycle, a.pc) < (b.cycle, b.pc)


def pyt_alphabet(cycles: int) -> List[PytLetter]:
    """The 12 * (cycles + 1) letters of cycles 0..cycles in fifth-cycle order."""
    if cycles < 0:
        raise CycleUnderflowError(f"cycles must be non-negative, got {cycles}")
    return [PytLetter(pc, n) for n in range(cycles + 1) for pc in range(ALPHABET_SIZE)]


class Construction(Enum):
    """
    CHAIN: the cycle-0 note times one fifth comma per cycle.
    BLOCK: the sorted block of 12 consecutive fifths belonging to the cycle.
    The two agree up to cycle 3 and part ways from cycle 4, when the top
    note of a block wraps past the octave.
    """
    CHAIN = "chain"
    BLOCK = "block"


@lru_cache(maxsize=256)
def _cycle_block(cycle: int, reference: Fraction) -> Tuple[Fraction, ...]:
    notes = scale_at_fixed_interval(reference, 3, 12 * cycle + 11).notes
    return tuple(sorted(notes[-12:]))


def pyt_freq(l: PytLetter, construction: Construction = Construction.CHAIN,
             reference=REFERENCE_NOTE) -> Fraction:
    """
    Exact frequency of a Pythagorean letter.

    Parameters:
    l : PytLetter
        The letter.
    construction : Construction
        CHAIN (default) or BLOCK.
    reference : Fraction
        Frequency of letter (0, 0).

    Returns:
    Fraction
    """
    construction = Construction(construction)
    reference = Fraction(reference)
    if construction is Construction.CHAIN:
        return _cycle_block(0, reference)[l.pc] * FIFTH_COMMA_RATIO ** l.cycle
    return _cycle_block(l.cycle, reference)[l.pc]


def pyt_scale(cycles: int, construction: Construction = Construction.CHAIN,
              reference=REFERENCE_NOTE) -> List[Fraction]:
    """Frequencies of pyt_alphabet(cycles), in alphabet order."""
    return [pyt_freq(l, construction, reference) for l in pyt_alphabet(cycles)]


class PytOp(Enum):
    TRANSLATE = "translate"
    INVERT = "invert"
    RAISE = "raise"
    LOWER = "lower"


def pyt_translate(w: Sequence[PytLetter], z: int) -> PytWord:
    return tuple(PytLetter((l.pc + z) % ALPHABET_SIZE, l.cycle) for l in w)


def pyt_invert(w: Sequence[PytLetter]) -> PytWord:
    return tuple(PytLetter((-l.pc) % ALPHABET_SIZE, l.cycle) for l in w)


def cycle_raise(w: Sequence[PytLetter], i: int) -> PytWord:
    """Moves the i-th letter (1-based) one fifth cycle up."""
    check_index(i, len(w))
    return tuple(PytLetter(l.pc, l.cycle + 1) if k == i else l for k, l in enumerate(w, start=1))


def cycle_lower(w: Sequence[PytLetter], i: int) -> PytWord:
    check_index(i, len(w))
    if w[i - 1].cycle < 1:
        raise CycleUnderflowError(f"letter {i} is already on cycle 0")
    return tuple(PytLetter(l.pc, l.cycle - 1) if k == i else l for k, l in enumerate(w, start=1))


def pyt_transform(w: Sequence[PytLetter], op: PytOp, arg: Optional[int] = None) -> PytWord:
    """
    Applies a Pythagorean word operation.

    TRANSLATE and INVERT act on pitch classes and keep cycles; RAISE and
    LOWER change the cycle of the letter at position ``arg``.
    """
    op = PytOp(op)
    if op is PytOp.INVERT:
        return pyt_invert(w)
    if arg is None:
        raise HarmoniumError(f"{op.value} needs an argument")
    if op is PytOp.TRANSLATE:
        return pyt_translate(w, arg)
    if op is PytOp.RAISE:
        return cycle_raise(w, arg)
    return cycle_lower(w, arg)


class PytTonality(Tonality):
    """A tonality over Pythagorean letters; chords compare by (pc, cycle)."""

    def __init__(self, word: Sequence[PytLetter], level: int):
        super().__init__(tuple(PytLetter(*l) for l in word), level)

    def translate_letter(self, x: PytLetter, z: int) -> PytLetter:
        return PytLetter((x.pc + z) % ALPHABET_SIZE, x.cycle)


def pyt_tonality(w: Sequence[PytLetter], level: int) -> PytTonality:
    return PytTonality(w, level)


def pyt_pivotal(t1: PytTonality, t2: PytTonality) -> List[PivotalDegree]:
    return pivotal_degrees(t1, t2)


def pyt_natural_context(w: Sequence[PytLetter], level: int) -> Context:
    """Tonalities of the Pythagorean translates of w, cycles kept."""
    return natural_context_of(pyt_tonality(w, level))


def pyt_standard_context(name: str, level: int, cycle: int = 0) -> Context:
    """A named context with every word lifted to the given cycle."""
    members = [pyt_tonality(pyt_word(t.word, cycle), level) for t in standard_context(name, level)]
    return Context(members, name=f"{name}@{cycle}")


def pyt_cadences(t: PytTonality, ctx: Context, maxlen: int = 3, minimal: bool = False,
                 rule: CadenceRule = CadenceRule.UNIQUE,
                 budget: int = DEFAULT_CADENCE_BUDGET) -> List[HarmonicWord]:
    return cadences(t, ctx, maxlen, minimal, rule, budget)


def pyt_modulations(t1: PytTonality, t2: PytTonality, cadence_maxlen: int = 1,
                    context: Optional[Context] = None, minimal: bool = False,
                    rule: CadenceRule = CadenceRule.UNIQUE,
                    budget: int = DEFAULT_CADENCE_BUDGET) -> List[Modulation]:
    """Pivot and cadence pairs from t1 to t2; the context defaults to t2's natural context."""
    return modulations(t1, t2, cadence_maxlen, context, minimal, rule, budget)


def comma_equivalent(w1: Sequence[PytLetter], w2: Sequence[PytLetter]) -> bool:
    """Same length and the same pitch classes in order, whatever the cycles."""
    return len(w1) == len(w2) and all(a.pc == b.pc for a, b in zip(w1, w2))


def comma_modulations(t1: PytTonality, t2: PytTonality, context: Context, maxlen: int = 1,
                      minimal: bool = False, rule: CadenceRule = CadenceRule.UNIQUE,
                      budget: int = DEFAULT_CADENCE_BUDGET) -> List[Modulation]:
    """
    Modulations between comma-displaced versions of one word.

    Empty unless the two words differ only in their cycles.
    """
    if not comma_equivalent(t1.word, t2.word):
        return []
    return pyt_modulations(t1, t2, maxlen, context, minimal, rule, budget)
