import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, NamedTuple, Optional, Tuple, Union

from ..utils.config import REFERENCE_NOTE
from ..utils.validation import HarmoniumError, IndexOutOfRangeError, check_positive, is_exact
from .euler import pitch_of_ratio

logger = logging.getLogger(__name__)

Freq = Union[int, Fraction, float]

CLOSURE_RTOL = 1e-12


def harmonic_of(nu: Freq, n: int) -> Freq:
    """The n-th harmonic (n + 1) * nu; the first harmonic is the octave."""
    if n < 1:
        raise IndexOutOfRangeError(f"harmonic index must be at least 1, got {n}")
    return (n + 1) * nu


class ScaleRange(NamedTuple):
    """The half-open interval [low, high) with high = 2 * low."""
    low: Freq
    high: Freq

    def __contains__(self, x: Freq) -> bool:
        return self.low <= x < self.high


def scale_range(nu: Freq) -> ScaleRange:
    check_positive(nu, "note")
    return ScaleRange(nu, harmonic_of(nu, 1))


def _times_power_of_two(mu: Freq, k: int) -> Freq:
    if is_exact(mu):
        return Fraction(mu) * (Fraction(2) ** k)
    return math.ldexp(float(mu), k)


def rescale_to_range(nu: Freq, mu: Freq) -> Freq:
    """
    The unique mu * 2^k lying in [nu, 2 nu).

    Exact for ints and Fractions; floats get a log2 estimate corrected by
    whole octaves until the bounds hold.

    Parameters:
    nu : Freq
        Lower end of the target range.
    mu : Freq
        The note to move by octaves.

    Returns:
    Freq
    """
    check_positive(nu, "note")
    check_positive(mu, "note")
    if is_exact(nu) and is_exact(mu):
        q = Fraction(nu) / Fraction(mu)
        k = q.numerator.bit_length() - q.denominator.bit_length()
    else:
        k = math.ceil(math.log2(float(nu) / float(mu)))
    out = _times_power_of_two(mu, k)
    while out < nu:
        k += 1
        out = _times_power_of_two(mu, k)
    while out >= 2 * nu:
        k -= 1
        out = _times_power_of_two(mu, k)
    return out


def congruent_mod_powers(a: Freq, b: Freq, c: Freq = 2) -> bool:
    """
    True when a / b is an integer power of c.

    Exact for rational inputs, relative tolerance 1e-12 otherwise.
    """
    check_positive(a, "a")
    check_positive(b, "b")
    if not c > 1:
        raise HarmoniumError(f"base must exceed 1, got {c}")
    if is_exact(a) and is_exact(b) and is_exact(c):
        q, c = Fraction(a) / Fraction(b), Fraction(c)
        if q < 1:
            q = 1 / q
        while q >= c:
            q /= c
        return q == 1
    ratio = float(a) / float(b)
    k = round(math.log(ratio) / math.log(float(c)))
    return math.isclose(ratio, float(c) ** k, rel_tol=CLOSURE_RTOL)


def _same_note(x: Freq, y: Freq) -> bool:
    if is_exact(x) and is_exact(y):
        return x == y
    # rounding can leave a returning seed just under the range and fold it to 2 * seed
    return congruent_mod_powers(x, y)


@dataclass(frozen=True)
class GeneratedScale:
    """
    Notes produced by repeatedly applying an interval and folding into the octave.

    Attributes:
        notes (Tuple[Freq, ...]): Notes in generation order, the seed first.
        closed (bool): Whether the seed came back.
        period (int, optional): Step at which it came back.
    """
    notes: Tuple[Freq, ...]
    closed: bool = False
    period: Optional[int] = None

    def __len__(self) -> int:
        return len(self.notes)

    def __iter__(self):
        return iter(self.notes)

    def sorted(self) -> List[Freq]:
        return ordered(self.notes)

    def cents(self, reference: Optional[Freq] = None) -> List[float]:
        """Pitch of every note relative to the reference (default is the seed)."""
        reference = self.notes[0] if reference is None else reference
        return [pitch_of_ratio(nu, reference) for nu in self.notes]


def scale_at_fixed_interval(omega: Freq, ratio: Freq, max_steps: int) -> GeneratedScale:
    """
    The scale generated from omega by the interval ``ratio``.

    omega_0 = omega and omega_n = rescale_to_range(omega, ratio * omega_{n-1}).
    Generation stops when omega recurs (the scale closes with that period) or
    after ``max_steps`` steps.

    Parameters:
    omega : Freq
        The seed note.
    ratio : Freq
        The generating interval.
    max_steps : int
        Largest number of steps.

    Returns:
    GeneratedScale
    """
    check_positive(omega, "seed note")
    check_positive(ratio, "ratio")
    if max_steps < 0:
        raise HarmoniumError(f"max_steps must be non-negative, got {max_steps}")
    notes = [omega]
    current = omega
    for step in range(1, max_steps + 1):
        current = rescale_to_range(omega, current * ratio)
        if _same_note(current, omega):
            logger.debug("scale of ratio %s closes after %d steps", ratio, step)
            return GeneratedScale(tuple(notes), closed=True, period=step)
        notes.append(current)
    return GeneratedScale(tuple(notes))


def ordered(seq: Iterable[Freq]) -> List[Freq]:
    return sorted(seq)


def pythagorean_scale(omega: Freq, count: int) -> GeneratedScale:
    """The first ``count`` notes of the natural cycle of fifths from omega."""
    if count < 1:
        raise HarmoniumError(f"count must be at least 1, got {count}")
    return scale_at_fixed_interval(omega, 3, count - 1)


def tempered_ratio(divisions: int) -> Freq:
    """2^(7/N): exact when N divides 7, a float otherwise."""
    if divisions < 1:
        raise HarmoniumError(f"divisions must be at least 1, got {divisions}")
    if 7 % divisions == 0:
        return Fraction(2) ** (7 // divisions)
    return 2 ** (7 / divisions)


def tempered_scale(omega: Freq, divisions: int) -> GeneratedScale:
    """N-equally-tempered scale from omega; closes after N / gcd(7, N) steps."""
    return scale_at_fixed_interval(omega, tempered_ratio(divisions), divisions)


def letter_frequency(pc: int, reference: Freq = REFERENCE_NOTE) -> Freq:
    """Frequency of a pitch class in 12-tone equal temperament, reference * 2^(pc/12)."""
    pc %= 12
    if pc == 0:
        return reference
    return float(reference) * 2 ** (pc / 12)
