import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import sympy

from ..utils.config import DEFAULT_CONSONANCE_BUDGET
from ..utils.validation import (
    EmptyListError, HarmoniumError, InexactPulsationError, ZeroIndexError, check_budget,
    check_positive, is_exact,
)

logger = logging.getLogger(__name__)

Amplitude = Union[int, Fraction, float, complex]
Pulsation = Union[int, Fraction, float, sympy.Expr]

COMMENSURABILITY_BOUND = 12
DIVERGENCE_THRESHOLD = 0.1

# int64 sums stay exact below this bound
_INT64_SAFE = 2 ** 62


@dataclass(frozen=True)
class Spectrum:
    """
    Harmonic amplitudes a_n of an instrument, truncated at |n| <= n_max.

    Attributes:
        coeffs (Dict[int, Amplitude]): Nonzero amplitudes by harmonic index.
        n_max (int): Truncation bound; indices beyond it read as 0.
    """
    coeffs: Dict[int, Amplitude] = field(default_factory=dict)
    n_max: int = 0

    def __post_init__(self):
        if self.n_max < 0:
            raise HarmoniumError(f"n_max must be non-negative, got {self.n_max}")

    def __getitem__(self, n: int) -> Amplitude:
        if abs(n) > self.n_max:
            return 0
        return self.coeffs.get(n, 0)

    def energy(self) -> Amplitude:
        """The admissibility sum of a_n * a_{-n} over the truncation window."""
        return sum((self[n] * self[-n] for n in range(-self.n_max, self.n_max + 1)), 0)


@dataclass(frozen=True)
class Sound:
    """A note of pulsation omega played by an instrument with the given spectrum."""
    pulsation: Pulsation
    spectrum: Spectrum

    def __post_init__(self):
        check_positive(self.pulsation, "pulsation")


Instrument = Callable[[int], Spectrum]


def pure_oscillator(a: Amplitude, k: int, n_max: Optional[int] = None) -> Spectrum:
    """
    An instrument with a single harmonic: a_n = a if n == k, else 0.

    Parameters:
    a : Amplitude
        The amplitude.
    k : int
        The harmonic index, nonzero.
    n_max : int, optional
        Truncation bound (default |k|).

    Returns:
    Spectrum
    """
    if k == 0:
        raise ZeroIndexError("a pure oscillator needs a nonzero harmonic index")
    n_max = abs(k) if n_max is None else n_max
    return Spectrum({k: a} if abs(k) <= n_max else {}, n_max)


def ideal_spectrum(a: Amplitude, n_max: int) -> Spectrum:
    """The slowest-decaying instrument a_n = a / |n| for 1 <= |n| <= n_max, a_0 = 0."""
    if n_max < 1:
        raise HarmoniumError(f"an ideal spectrum needs n_max >= 1, got {n_max}")
    coeffs = {}
    for n in range(1, n_max + 1):
        value = Fraction(a) / n if is_exact(a) else a / n
        coeffs[n] = coeffs[-n] = value
    return Spectrum(coeffs, n_max)


def parse_instrument(text: str, amplitude: Amplitude = 1) -> Instrument:
    """Reads ``ideal`` or ``pure:k`` into an instrument, a function of the truncation bound."""
    name, _, arg = text.partition(":")
    if name == "ideal" and not arg:
        return lambda n_max: ideal_spectrum(amplitude, n_max)
    if name == "pure":
        try:
            k = int(arg)
        except ValueError:
            raise HarmoniumError(f"pure oscillator needs an integer index, got {arg!r}") from None
        return lambda n_max: pure_oscillator(amplitude, k, n_max)
    raise HarmoniumError(f"unknown instrument {text!r}; use 'ideal' or 'pure:k'")


def _to_sympy(x: Pulsation) -> sympy.Expr:
    if isinstance(x, Fraction):
        return sympy.Rational(x.numerator, x.denominator)
    return sympy.sympify(x)


def _rational_classes(pulsations: Sequence[Pulsation]) -> List[List[Tuple[int, Fraction]]]:
    """
    Groups exact pulsations by rational ratio.

    Each class is a list of (position, q) with pulsation = q * representative.
    Distinct classes are taken to be linearly independent over Q.
    """
    classes: List[List[Tuple[int, Fraction]]] = []
    representatives: List[sympy.Expr] = []
    for i, x in enumerate(pulsations):
        value = _to_sympy(x)
        for members, rep in zip(classes, representatives):
            ratio = sympy.simplify(value / rep)
            if ratio.is_rational:
                ratio = sympy.Rational(ratio)
                members.append((i, Fraction(int(ratio.p), int(ratio.q))))
                break
            if ratio.is_rational is None:
                logger.warning("cannot decide whether %s / %s is rational; treating it as irrational",
                               value, rep)
        else:
            classes.append([(i, Fraction(1))])
            representatives.append(value)
    return classes


def _integer_weights(classes: List[List[Tuple[int, Fraction]]], count: int) -> List[List[int]]:
    """One integer row per class, proportional to the rational coefficients."""
    rows = []
    for members in classes:
        scale = math.lcm(*(q.denominator for _, q in members))
        row = [0] * count
        for i, q in members:
            row[i] = int(q * scale)
        rows.append(row)
    return rows


def _lattice_sum(weights: Sequence, n_max: int, dtype) -> np.ndarray:
    """sum_i n_i * w_i over the grid [-n_max, n_max]^k, one axis per weight."""
    k = len(weights)
    span = np.array(range(-n_max, n_max + 1), dtype=dtype)
    total = np.zeros((1,) * k, dtype=dtype)
    for i, w in enumerate(weights):
        shape = [1] * k
        shape[i] = -1
        total = total + (span * w).reshape(shape)
    return np.broadcast_to(total, (2 * n_max + 1,) * k)


def _exact_mask(pulsations: Sequence[Pulsation], n_max: int) -> np.ndarray:
    rows = _integer_weights(_rational_classes(pulsations), len(pulsations))
    mask = np.ones((2 * n_max + 1,) * len(pulsations), dtype=bool)
    for row in rows:
        bound = n_max * sum(abs(w) for w in row)
        dtype = np.int64 if bound < _INT64_SAFE else object
        mask &= _lattice_sum(row, n_max, dtype) == 0
    return mask


def _eps_mask(pulsations: Sequence[Pulsation], n_max: int, eps: float) -> np.ndarray:
    total = _lattice_sum([float(x) for x in pulsations], n_max, np.float64)
    return np.abs(total) <= eps


def _check_mode(pulsations: Sequence[Pulsation], eps: float):
    if eps < 0:
        raise HarmoniumError(f"eps must be non-negative, got {eps}")
    if eps == 0:
        inexact = [x for x in pulsations if isinstance(x, float)]
        if inexact:
            raise InexactPulsationError(
                f"exact mode needs rational or symbolic pulsations, got {inexact}; pass eps > 0")


def _relation_mask(pulsations: Sequence[Pulsation], n_max: int, eps: float, budget: int) -> np.ndarray:
    if n_max < 0:
        raise HarmoniumError(f"n_max must be non-negative, got {n_max}")
    check_budget((2 * n_max + 1) ** len(pulsations), budget, "index vectors")
    if eps == 0:
        return _exact_mask(pulsations, n_max)
    return _eps_mask(pulsations, n_max, eps)


def commensurable(freqs: Sequence[Pulsation], eps: float = 0, n_max: Optional[int] = None,
                  budget: int = DEFAULT_CONSONANCE_BUDGET) -> bool:
    """
    Whether some nonzero integer vector n has sum_i n_i * omega_i = 0.

    In exact mode (eps = 0) pulsations are ints, Fractions or sympy numbers.
    Without ``n_max`` the answer is exact: a relation exists as soon as two
    pulsations have a rational ratio. With ``n_max`` the search is limited to
    |n_i| <= n_max. In eps mode the condition is |sum| <= eps and the search
    runs over |n_i| <= n_max (default COMMENSURABILITY_BOUND).

    Parameters:
    freqs : Sequence[Pulsation]
        At least two positive pulsations.
    eps : float
        Tolerance, 0 for exact arithmetic.
    n_max : int, optional
        Bound of the integer search.
    budget : int
        Largest number of index vectors to visit.

    Returns:
    bool
    """
    freqs = list(freqs)
    if len(freqs) < 2:
        raise EmptyListError(f"commensurability needs at least two pulsations, got {len(freqs)}")
    for x in freqs:
        check_positive(x, "pulsation")
    _check_mode(freqs, eps)
    if eps == 0 and n_max is None:
        return any(len(members) > 1 for members in _rational_classes(freqs))
    n_max = COMMENSURABILITY_BOUND if n_max is None else n_max
    mask = _relation_mask(freqs, n_max, eps, budget).copy()
    mask[(n_max,) * len(freqs)] = False
    return bool(mask.any())


def consonance_index(sounds: Sequence[Sound], n_max: int, eps: float = 0,
                     budget: int = DEFAULT_CONSONANCE_BUDGET) -> Amplitude:
    """
    Physical index of consonance of several sounds, truncated at |n_i| <= n_max.

    Sums sum_i a^(i)_{n_i} over every index vector whose combination
    sum_i n_i * omega_i vanishes (exact mode) or stays within eps.

    Parameters:
    sounds : Sequence[Sound]
        At least two sounds.
    n_max : int
        Truncation bound of the index lattice.
    eps : float
        Tolerance, 0 for exact arithmetic on exact pulsations.
    budget : int
        Largest admissible (2 * n_max + 1) ** len(sounds).

    Returns:
    Amplitude
        Exact when the pulsations and amplitudes are.
    """
    sounds = list(sounds)
    if len(sounds) < 2:
        raise EmptyListError(f"the consonance index needs at least two sounds, got {len(sounds)}")
    pulsations = [s.pulsation for s in sounds]
    _check_mode(pulsations, eps)
    mask = _relation_mask(pulsations, n_max, eps, budget)
    k = len(sounds)
    index: Amplitude = 0
    # each vector contributes one amplitude per sound, so count vectors by the i-th index
    for i, sound in enumerate(sounds):
        counts = mask.sum(axis=tuple(j for j in range(k) if j != i))
        for n, count in zip(range(-n_max, n_max + 1), counts):
            if count:
                index += sound.spectrum[n] * int(count)
    logger.debug("consonance index of %s at n_max=%d: %s", pulsations, n_max, index)
    return index


def instrument_index(pulsations: Sequence[Pulsation], instrument: Instrument, n_max: int,
                     eps: float = 0, budget: int = DEFAULT_CONSONANCE_BUDGET) -> Amplitude:
    """Index of several notes all played by one instrument."""
    spectrum = instrument(n_max)
    return consonance_index([Sound(p, spectrum) for p in pulsations], n_max, eps, budget)


@dataclass(frozen=True)
class DivergenceReport:
    n_max: int
    index: Amplitude
    doubled_index: Amplitude
    diverges: bool

    @property
    def growth(self) -> Amplitude:
        return self.doubled_index - self.index


def divergence_check(pulsations: Sequence[Pulsation], instrument: Instrument, n_max: int,
                     threshold: float = DIVERGENCE_THRESHOLD, eps: float = 0,
                     budget: int = DEFAULT_CONSONANCE_BUDGET) -> DivergenceReport:
    """
    Compares the index at n_max and 2 * n_max, spectra rebuilt at each bound.

    The index is flagged divergent when doubling the bound grows it by more
    than ``threshold``.
    """
    low = instrument_index(pulsations, instrument, n_max, eps, budget)
    high = instrument_index(pulsations, instrument, 2 * n_max, eps, budget)
    diverges = abs(high - low) > threshold
    if diverges:
        logger.info("index of %s still grows from %s to %s between n_max=%d and %d",
                    list(pulsations), low, high, n_max, 2 * n_max)
    return DivergenceReport(n_max, low, high, diverges)


def beat_envelope(a1, phi1, a2, phi2, delta_omega, t) -> Tuple[np.ndarray, np.ndarray]:
    """
    Amplitude and phase of the slow envelope of two superposed sines.

    a1 e^{i phi1} + a2 e^{i (phi2 + delta_omega t)} written in polar form;
    every argument may be a scalar or a numpy array.

    Returns:
    Tuple[np.ndarray, np.ndarray]
        (amplitude, phase)
    """
    a1, phi1, a2, phi2 = (np.asarray(v, dtype=float) for v in (a1, phi1, a2, phi2))
    drift = phi2 + np.asarray(delta_omega, dtype=float) * np.asarray(t, dtype=float)
    amplitude = np.sqrt(np.maximum(a1 ** 2 + a2 ** 2 + 2 * a1 * a2 * np.cos(phi1 - drift), 0.0))
    phase = np.arctan2(a1 * np.sin(phi1) + a2 * np.sin(drift), a1 * np.cos(phi1) + a2 * np.cos(drift))
    return amplitude, phase


def combinational_tones(omega1: Pulsation, omega2: Pulsation) -> Tuple[Pulsation, Pulsation]:
    """Sum and difference tones (omega1 + omega2, |omega1 - omega2|)."""
    check_positive(omega1, "pulsation")
    check_positive(omega2, "pulsation")
    return omega1 + omega2, abs(omega1 - omega2)
