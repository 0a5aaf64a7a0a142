import logging
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import product
from typing import FrozenSet, List, NamedTuple, Optional, Sequence, Tuple, Union

import sympy

from ..utils.config import REFERENCE_NOTE
from ..utils.validation import (
    CycleUnderflowError, NonPositiveError, NotFiveLimitError, NotJustTunedError, check_positive,
    is_exact,
)

logger = logging.getLogger(__name__)

Exponent = Union[int, Fraction]
Cents = float

PRIMES = (2, 3, 5)
PRIME_LOGS = tuple(math.log(p) for p in PRIMES)
CENTS_PER_NEPER = 1200 / math.log(2)


@dataclass(frozen=True)
class EulerPoint:
    """
    Exponents of 2, 3 and 5: the point of 2^e2 * 3^e3 * 5^e5.

    Differences of points are intervals, so the same type serves both.
    """
    e2: Fraction = Fraction(0)
    e3: Fraction = Fraction(0)
    e5: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("e2", "e3", "e5"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))

    @property
    def exponents(self) -> Tuple[Fraction, Fraction, Fraction]:
        return (self.e2, self.e3, self.e5)

    @property
    def is_integer(self) -> bool:
        return all(e.denominator == 1 for e in self.exponents)

    def __add__(self, other: "EulerPoint") -> "EulerPoint":
        return EulerPoint(*(a + b for a, b in zip(self.exponents, other.exponents)))

    def __sub__(self, other: "EulerPoint") -> "EulerPoint":
        return EulerPoint(*(a - b for a, b in zip(self.exponents, other.exponents)))

    def __neg__(self) -> "EulerPoint":
        return EulerPoint(*(-a for a in self.exponents))

    def __mul__(self, k: Exponent) -> "EulerPoint":
        return EulerPoint(*(k * a for a in self.exponents))

    __rmul__ = __mul__

    def __str__(self) -> str:
        return "(" + ", ".join(str(e) for e in self.exponents) + ")"


EulerInterval = EulerPoint

OCTAVE = EulerPoint(1, 0, 0)
FIFTH = EulerPoint(0, 1, 0)
THIRD = EulerPoint(0, 0, 1)

FIFTH_COMMA = -7 * OCTAVE + 12 * (FIFTH - OCTAVE)
THIRD_COMMA = 2 * OCTAVE - 4 * (FIFTH - OCTAVE) + (THIRD - 2 * OCTAVE)


def canonical_notes_basis() -> Tuple[EulerPoint, EulerPoint, EulerPoint]:
    return (OCTAVE, FIFTH, THIRD)


def canonical_intervals_basis() -> Tuple[EulerPoint, EulerPoint, EulerPoint]:
    """Octave, fifth and major third as intervals: o, f - o, t - 2o."""
    return (OCTAVE, FIFTH - OCTAVE, THIRD - 2 * OCTAVE)


def coordination(exponents: Sequence[Exponent]) -> Union[Fraction, float]:
    """
    prod_i prime(i) ** x_i over the first len(exponents) primes.

    Exact when every exponent is an integer, a float otherwise.
    """
    exponents = [Fraction(x) for x in exponents]
    primes = [int(sympy.prime(i + 1)) for i in range(len(exponents))]
    if all(x.denominator == 1 for x in exponents):
        value = Fraction(1)
        for p, x in zip(primes, exponents):
            value *= Fraction(p) ** int(x)
        return value
    return math.exp(sum(float(x) * math.log(p) for p, x in zip(primes, exponents)))


def coordination_value(p: EulerPoint) -> Union[Fraction, float]:
    return coordination(p.exponents)


def point_from_ratio(r: Union[int, Fraction]) -> EulerPoint:
    """
    The integer-exponent Euler point of a positive 5-limit rational.

    Parameters:
    r : int or Fraction
        The ratio.

    Returns:
    EulerPoint
    """
    r = Fraction(r)
    check_positive(r, "ratio")
    exps = dict.fromkeys(PRIMES, 0)
    for part, sign in ((r.numerator, 1), (r.denominator, -1)):
        for prime, e in sympy.factorint(part).items():
            if prime not in exps:
                raise NotFiveLimitError(f"{r} has the prime factor {prime}")
            exps[prime] += sign * e
    return EulerPoint(exps[2], exps[3], exps[5])


def pitch_of_point(p: EulerPoint) -> Cents:
    """Cents of the point's coordination value, 1200/ln2 * <e, (ln2, ln3, ln5)>."""
    return CENTS_PER_NEPER * sum(float(e) * lg for e, lg in zip(p.exponents, PRIME_LOGS))


def pitch_of_ratio(nu, reference=REFERENCE_NOTE) -> Cents:
    """
    Signed pitch of a frequency in cents, 1200 * log2(nu / reference).

    Parameters:
    nu : int, Fraction or float
        The frequency (or ratio, with reference = 1).
    reference : int, Fraction or float
        Frequency of pitch 0 (default is the 132 Hz reference note).

    Returns:
    Cents
    """
    if not nu > 0:
        raise NonPositiveError(f"frequency must be positive, got {nu}")
    check_positive(reference, "reference")
    if is_exact(nu) and is_exact(reference):
        q = Fraction(nu) / Fraction(reference)
        # log of numerator and denominator separately keeps huge exact ratios finite
        return 1200 * (math.log2(q.numerator) - math.log2(q.denominator))
    return 1200 * math.log2(float(nu) / float(reference))


def frequency_of_pitch(cents: Cents, reference=REFERENCE_NOTE) -> float:
    """Inverse of pitch_of_ratio."""
    return float(reference) * 2 ** (cents / 1200)


class PointClass(Enum):
    JUST = "just"
    PYTHAGOREAN = "pyt"
    TEMPERED = "n-tempered"
    MULTI_TEMPERED = "n1n2n3-tempered"


def _in_lattice(e: Fraction, n: int) -> bool:
    return (e * n).denominator == 1


def classify_point(p: EulerPoint, n: Optional[int] = None,
                   ns: Optional[Tuple[int, int, int]] = None) -> FrozenSet[PointClass]:
    """
    The tuned subsets a point belongs to.

    Parameters:
    p : EulerPoint
        The point.
    n : int, optional
        Test n-tempered: e3 = e5 = 0 and e2 in Z/n.
    ns : (n1, n2, n3), optional
        Test n1,n2,n3-tempered: e_i in Z/n_i.

    Returns:
    FrozenSet[PointClass]
    """
    flags = set()
    if p.is_integer:
        flags.add(PointClass.JUST)
        if p.e5 == 0:
            flags.add(PointClass.PYTHAGOREAN)
    if n is not None and p.e3 == 0 and p.e5 == 0 and _in_lattice(p.e2, n):
        flags.add(PointClass.TEMPERED)
    if ns is not None and all(_in_lattice(e, k) for e, k in zip(p.exponents, ns)):
        flags.add(PointClass.MULTI_TEMPERED)
    return frozenset(flags)


class Comma(NamedTuple):
    name: str
    interval: EulerPoint
    ratio: Fraction
    cents: Cents


def commas() -> Tuple[Comma, Comma]:
    """The fifth (Pythagorean) comma Kf and the third (syntonic) comma Kt."""
    return tuple(Comma(name, point, coordination_value(point), pitch_of_point(point))
                 for name, point in (("Kf", FIFTH_COMMA), ("Kt", THIRD_COMMA)))


def gradus(x: Union[int, Fraction]) -> int:
    """
    Euler's gradus suavitatis.

    For an integer with factorisation prod p_k^e_k this is 1 + sum e_k (p_k - 1);
    a fraction p/q in lowest terms gets the gradus of p*q.
    """
    x = Fraction(x)
    if x <= 0:
        raise NonPositiveError(f"gradus needs a positive number, got {x}")
    n = x.numerator * x.denominator
    return 1 + sum((p - 1) * e for p, e in sympy.factorint(n).items())


def _just_ratio(nu) -> Fraction:
    if isinstance(nu, EulerPoint):
        if not nu.is_integer:
            raise NotJustTunedError(f"{nu} has non-integer exponents")
        return coordination_value(nu)
    if not is_exact(nu):
        raise NotJustTunedError(f"{nu!r} is not an exact ratio")
    try:
        point_from_ratio(nu)
    except NotFiveLimitError as exc:
        raise NotJustTunedError(str(exc)) from exc
    return Fraction(nu)


def gradus_bichord(nu1, nu2) -> int:
    """Gradus of the interval between two just-tuned notes, gradus(nu2 / nu1)."""
    return gradus(_just_ratio(nu2) / _just_ratio(nu1))


def esm(r: Union[int, Fraction], denominator: Optional[int] = None) -> Fraction:
    """
    Empirical simplicity measure (1 / gcd(n, m)) * (n + m) / (n * m) of n/m.

    Pass ``denominator`` to evaluate on an unreduced representation n/m;
    otherwise r is taken in lowest terms.
    """
    if denominator is None:
        r = Fraction(r)
        n, m = r.numerator, r.denominator
    else:
        n, m = int(r), int(denominator)
    if n <= 0 or m <= 0:
        raise NonPositiveError(f"esm needs positive n and m, got {n}/{m}")
    return Fraction(1, math.gcd(n, m)) * Fraction(n + m, n * m)


JUST_DIATONIC_RATIOS = (
    Fraction(1), Fraction(9, 8), Fraction(5, 4), Fraction(4, 3),
    Fraction(3, 2), Fraction(5, 3), Fraction(15, 8),
)

VOGEL_RATIOS = (
    Fraction(1), Fraction(16, 15), Fraction(9, 8), Fraction(6, 5), Fraction(5, 4), Fraction(4, 3),
    Fraction(45, 32), Fraction(3, 2), Fraction(8, 5), Fraction(5, 3), Fraction(16, 9), Fraction(15, 8),
)


class JustRow(NamedTuple):
    frequency: Fraction
    ratio: Fraction
    cents: Cents


class VogelRow(NamedTuple):
    ratio: Fraction
    point: EulerPoint


def just_diatonic(reference=REFERENCE_NOTE) -> List[JustRow]:
    """The just diatonic scale of C: frequency, ratio and cents of its 7 notes."""
    return [JustRow(r * reference, r, pitch_of_ratio(r, 1)) for r in JUST_DIATONIC_RATIOS]


def vogel_chromatic() -> List[VogelRow]:
    """Vogel's 12-note just chromatic scale with the Euler point of each ratio."""
    return [VogelRow(r, point_from_ratio(r)) for r in VOGEL_RATIOS]


def just_letter(i: int, cycle: int) -> Tuple[Fraction, Cents]:
    """
    Letter i of the just-intonation ansatz on the given cycle.

    Each cycle lowers the Vogel ratio by one syntonic comma 80/81.
    """
    if cycle < 0:
        raise CycleUnderflowError(f"cycle must be non-negative, got {cycle}")
    ratio = VOGEL_RATIOS[i % 12] * coordination_value(THIRD_COMMA) ** cycle
    return ratio, pitch_of_ratio(ratio, 1)


def pitch_grid(bound: int = 1) -> List[Tuple[EulerPoint, Cents]]:
    """Pitches of every integer point with all |e_i| <= bound, lowest first."""
    span = range(-bound, bound + 1)
    points = [EulerPoint(*e) for e in product(span, repeat=3)]
    return sorted(((p, pitch_of_point(p)) for p in points), key=lambda row: row[1])
