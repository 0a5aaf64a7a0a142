import logging
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, List, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.io import wavfile

from ..tuning.pythag import Construction, PytLetter, pyt_freq
from ..tuning.scales import letter_frequency
from ..utils.config import Config
from ..utils.validation import EmptyPieceError, UnknownNameError, WavWriteError, check_positive

logger = logging.getLogger(__name__)

# Note values as fractions of the reference time
SEMIBREVE = Fraction(1)
MINIM = Fraction(1, 2)
CROTCHET = Fraction(1, 4)
QUAVER = Fraction(1, 8)
SEMIQUAVER = Fraction(1, 16)
DEMISEMIQUAVER = Fraction(1, 32)
HEMIDEMISEMIQUAVER = Fraction(1, 64)

DURATIONS = {
    "semibreve": SEMIBREVE,
    "minim": MINIM,
    "crotchet": CROTCHET,
    "quaver": QUAVER,
    "semiquaver": SEMIQUAVER,
    "demisemiquaver": DEMISEMIQUAVER,
    "hemidemisemiquaver": HEMIDEMISEMIQUAVER,
}

PEAK = 0.8
FULL_SCALE = 32767


def duration_from_name(name: str) -> Fraction:
    try:
        return DURATIONS[name]
    except KeyError:
        raise UnknownNameError(f"unknown duration {name!r}; known: {', '.join(DURATIONS)}") from None


class TimedEvent(NamedTuple):
    """A chord sounding for ``duration`` reference times; an empty chord is a rest."""
    chord: tuple
    duration: Fraction


@dataclass(frozen=True)
class TimedPiece:
    """
    A sequence of timed chords ready for rendering.

    Attributes:
        events (Tuple[TimedEvent, ...]): The events in playing order.
    """
    events: Tuple[TimedEvent, ...] = field(default_factory=tuple)

    def __post_init__(self):
        events = tuple(TimedEvent(tuple(c), Fraction(d)) for c, d in self.events)
        for e in events:
            check_positive(e.duration, "duration")
        object.__setattr__(self, "events", events)

    def __len__(self) -> int:
        return len(self.events)

    @property
    def total_duration(self) -> Fraction:
        return sum((e.duration for e in self.events), Fraction(0))


def piece_from_chords(chords: Iterable[Sequence], duration: Fraction = CROTCHET) -> TimedPiece:
    return TimedPiece(tuple(TimedEvent(tuple(c), duration) for c in chords))


def monodic_piece(word: Sequence, duration: Fraction = CROTCHET) -> TimedPiece:
    """The letters of a word played one after the other."""
    return piece_from_chords(((x,) for x in word), duration)


def chord_piece(word: Sequence, duration: Fraction = SEMIBREVE) -> TimedPiece:
    """All letters of a word sounding together."""
    return TimedPiece((TimedEvent(tuple(word), duration),))


def harmonic_word_piece(hw: Iterable[Sequence], duration: Fraction = MINIM) -> TimedPiece:
    return piece_from_chords(hw, duration)


def chord_frequencies(chord: Sequence[Union[int, PytLetter]], config: Optional[Config] = None) -> List[float]:
    """
    Frequencies in Hz of the letters of a chord.

    Integer letters follow the 12-tone tempered map; Pythagorean letters use
    the exact pyt_freq, converted to float only here.
    """
    config = config or Config()
    construction = Construction(config.pyt_construction)
    out = []
    for x in chord:
        if isinstance(x, PytLetter):
            out.append(float(pyt_freq(x, construction, config.reference_note)))
        else:
            out.append(float(letter_frequency(x, config.reference_note)))
    return out


def event_sample_count(duration: Fraction, config: Optional[Config] = None) -> int:
    config = config or Config()
    return round(Fraction(duration) * config.reference_time * config.sample_rate)


def _ramp(signal: np.ndarray, ramp_ms: float, sample_rate: int) -> np.ndarray:
    width = min(int(sample_rate * ramp_ms / 1000), len(signal) // 2)
    if width < 1:
        return signal
    fade = np.linspace(0.0, 1.0, width, endpoint=False)
    signal[:width] *= fade
    signal[-width:] *= fade[::-1]
    return signal


def _render_event(event: TimedEvent, config: Config) -> np.ndarray:
    n = event_sample_count(event.duration, config)
    t = np.arange(n) / config.sample_rate
    signal = np.zeros(n)
    for freq in chord_frequencies(event.chord, config):
        signal += np.sin(2 * np.pi * freq * t)
    peak = np.max(np.abs(signal)) if n else 0.0
    if peak > 0:
        signal *= PEAK / peak
    if config.ramp_ms > 0:
        signal = _ramp(signal, config.ramp_ms, config.sample_rate)
    return signal


def synthesize(piece: TimedPiece, config: Optional[Config] = None) -> np.ndarray:
    """
    Mono 16-bit samples of a piece.

    Each event is the equal-amplitude sum of sines at its frequencies,
    normalized to a peak of 0.8 full scale, then quantized as floor(32767 x).
    """
    config = config or Config()
    if not piece.events:
        raise EmptyPieceError("nothing to render: the piece has no events")
    signal = np.concatenate([_render_event(e, config) for e in piece.events])
    return np.floor(FULL_SCALE * signal).astype(np.int16)


def render_wav(piece: TimedPiece, out: Union[str, Path], config: Optional[Config] = None) -> Path:
    """
    Writes a piece as a mono 16-bit PCM WAV file.

    Parameters:
    piece : TimedPiece
        The events to play.
    out : str or Path
        Target file.
    config : Config, optional
        Sample rate, reference note and reference time (defaults otherwise).

    Returns:
    Path
        The written file.
    """
    config = config or Config()
    samples = synthesize(piece, config)
    out = Path(out)
    try:
        wavfile.write(str(out), config.sample_rate, samples)
    except OSError as exc:
        raise WavWriteError(f"cannot write {out}: {exc}") from exc
    logger.info("wrote %d samples (%d events) to %s", len(samples), len(piece), out)
    return out
