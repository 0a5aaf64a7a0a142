"""
Command-line front end.

Each subcommand turns its arguments into a library call and hands the
result to ``emit`` as a Report; ``--json`` switches the rendering. Exit
status is 0 on success, 1 when the library rejects the input and 2 on a
usage error.
"""
import argparse
import contextlib
import logging
import sys
from fractions import Fraction
from typing import List, Optional, TextIO

import sympy

from ..acoustics.consonance import divergence_check, instrument_index, parse_instrument
from ..audio.render import (
    DURATIONS, chord_piece, duration_from_name, event_sample_count, monodic_piece,
    piece_from_chords, render_wav,
)
from ..core.modulation import (
    fifths_cycle_as_piece, fifths_cycle_piece, mazzola_modulations, modulations, validate_piece,
)
from ..core.pcset import enumerate_words, letter_from_name, named_word, words_up_to
from ..core.tonality import (
    STANDARD_CONTEXT_NAMES, CadenceRule, cadences, count_tonalities_by_size, make_tonality,
    natural_context_of, pivotal_degrees, standard_context,
)
from ..tuning.euler import (
    commas, esm, gradus, gradus_bichord, just_diatonic, pitch_grid, pitch_of_ratio, point_from_ratio,
    vogel_chromatic,
)
from ..tuning.pythag import (
    Construction, comma_modulations, cycle_raise, pyt_alphabet, pyt_pivotal, pyt_scale,
    pyt_standard_context, pyt_tonality, pyt_word,
)
from ..tuning.scales import pythagorean_scale, scale_at_fixed_interval, tempered_scale
from ..utils.config import Config, load_config
from ..utils.ratio import parse_ratio
from ..utils.validation import HarmoniumError, check_budget
from . import emit as reports
from .emit import emit

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(levelname)s:%(name)s: %(message)s"


class UsageError(Exception):
    """Raised instead of argparse's own exit so dispatch can report status 2."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _letter_arg(text: str) -> int:
    try:
        return int(text) % 12
    except ValueError:
        pass
    try:
        return letter_from_name(text)
    except HarmoniumError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _letters_arg(text: str) -> tuple:
    return tuple(_letter_arg(x) for x in text.split(",") if x.strip())


def _degrees_arg(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated degrees, got {text!r}") from None


def _ratio_arg(text: str):
    try:
        return parse_ratio(text)
    except HarmoniumError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _rational_arg(text: str) -> Fraction:
    value = _ratio_arg(text)
    if not isinstance(value, Fraction):
        raise argparse.ArgumentTypeError(f"{text!r} is not a rational number")
    return value


def _numeric(x):
    """Symbolic irrationals become floats; exact values stay exact."""
    return float(x) if isinstance(x, sympy.Expr) else x


def _common_options() -> argparse.ArgumentParser:
    # SUPPRESS keeps a flag given before the subcommand from being reset after it
    common = _Parser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("-v", "--verbose", action="count", help="-v for INFO logs, -vv for DEBUG")
    common.add_argument("--json", action="store_true", help="print JSON instead of a table")
    common.add_argument("--config", help="key = value configuration file")
    common.add_argument("--reference-note", help="frequency of pitch class 0 in Hz (default 132)")
    common.add_argument("--reference-time", help="seconds of a semibreve (default 4)")
    common.add_argument("--sample-rate", help="WAV sample rate (default 44100)")
    common.add_argument("--budget", type=int, help="largest number of candidates a search may visit")
    return common


def _add_word_options(p: argparse.ArgumentParser, prefix: str = "", root_default: int = 0):
    label = "target " if prefix else ""
    flag = prefix.replace("_", "-")
    p.add_argument(f"--{flag}word", default="major", help=f"{label}catalog word name (default major)")
    p.add_argument(f"--{flag}letters", type=_letters_arg, help=f"{label}explicit letters, e.g. 0,2,4,5,7,9,11")
    p.add_argument(f"--{flag}root", type=_letter_arg, default=root_default,
                   help=f"{label}root as a pitch class or note name")


def _word(args, prefix: str = "") -> tuple:
    letters = getattr(args, f"{prefix}letters")
    if letters:
        return letters
    return named_word(getattr(args, f"{prefix}word"), getattr(args, f"{prefix}root"))


def _context(name: str, t, level: int):
    return natural_context_of(t) if name == "natural" else standard_context(name, level)


def _cmd_scale(args, config: Config):
    root = config.reference_note if args.root is None else _numeric(args.root)
    if args.scale_kind == "gen":
        scale = scale_at_fixed_interval(root, _numeric(args.ratio), args.max)
        title = f"scale of ratio {args.ratio} from {root}"
    elif args.scale_kind == "pyt":
        scale = pythagorean_scale(root, args.count)
        title = f"Pythagorean scale of {args.count} notes from {root}"
    else:
        scale = tempered_scale(root, args.divisions)
        title = f"{args.divisions}-tempered scale from {root}"
    return reports.scale_report(title, scale)


def _cmd_tonality(args, config: Config):
    return reports.tonality_report(make_tonality(_word(args), args.level))


def _cmd_pivots(args, config: Config):
    t1 = make_tonality(_word(args), args.level)
    t2 = make_tonality(_word(args, "to_"), args.level)
    return reports.pivots_report(t1, t2, pivotal_degrees(t1, t2))


def _cmd_cadences(args, config: Config):
    t = make_tonality(_word(args), args.level)
    ctx = _context(args.context, t, args.level)
    found = cadences(t, ctx, args.maxlen, args.minimal, CadenceRule(args.rule), config.cadence_budget)
    return reports.cadences_report(t, ctx, found)


def _cmd_modulate(args, config: Config):
    t1 = make_tonality(_word(args), args.level)
    t2 = make_tonality(_word(args, "to_"), args.level)
    if args.mazzola:
        found = mazzola_modulations(t1, t2, args.maxlen, args.minimal, config.cadence_budget)
    else:
        ctx = _context(args.context, t2, args.level)
        found = modulations(t1, t2, args.maxlen, ctx, args.minimal, CadenceRule(args.rule),
                            config.cadence_budget)
    return reports.modulations_report(t1, t2, found)


def _cmd_piece(args, config: Config):
    piece = fifths_cycle_as_piece(args.fifths_level, args.steps, args.degrees)
    validation = validate_piece(piece) if args.validate else None
    return reports.piece_report(piece, validation)


def _cmd_pythag(args, config: Config):
    if args.pythag_kind == "scale":
        construction = Construction(args.construction or config.pyt_construction)
        letters = pyt_alphabet(args.cycles)
        freqs = pyt_scale(args.cycles, construction, config.reference_note)
        cents = [pitch_of_ratio(f, config.reference_note) for f in freqs]
        if args.plot:
            from ..visualization.plotting import plot_fifths_spiral
            plot_fifths_spiral(args.cycles, construction, save_path=args.plot,
                               reference=config.reference_note)
        return reports.frequencies_report(
            f"Pythagorean letters up to cycle {args.cycles} ({construction.value})", letters, freqs, cents)
    if args.pythag_kind == "pivots":
        t1 = pyt_tonality(pyt_word(_word(args), args.cycle), args.level)
        t2 = pyt_tonality(pyt_word(_word(args, "to_"), args.to_cycle), args.level)
        return reports.pivots_report(t1, t2, pyt_pivotal(t1, t2))
    t1 = pyt_tonality(pyt_word(_word(args)), args.level)
    t2 = pyt_tonality(cycle_raise(t1.word, args.raise_at), args.level)
    ctx = pyt_standard_context(args.context, args.level, args.cycle)
    found = comma_modulations(t1, t2, ctx, args.maxlen, args.minimal, CadenceRule(args.rule),
                              config.cadence_budget)
    return reports.comma_report(t1, t2, found)


def _cmd_euler(args, config: Config):
    kind = args.euler_kind
    if kind == "point":
        return reports.euler_point_report(args.ratio, point_from_ratio(args.ratio))
    if kind == "gradus":
        if args.second is None:
            return reports.gradus_report(args.ratio, gradus(args.ratio))
        return reports.gradus_report(args.second / args.ratio, gradus_bichord(args.ratio, args.second))
    if kind == "esm":
        if args.denominator is None:
            return reports.esm_report(args.ratio, esm(args.ratio))
        if args.ratio.denominator != 1:
            raise HarmoniumError("with --denominator the first argument must be an integer")
        value = esm(args.ratio.numerator, args.denominator)
        return reports.esm_report(Fraction(args.ratio.numerator, args.denominator), value)
    if kind == "commas":
        return reports.commas_report(commas())
    if kind == "vogel":
        return reports.vogel_report(vogel_chromatic())
    if kind == "diatonic":
        return reports.diatonic_report(just_diatonic(config.reference_note))
    grid = pitch_grid(args.bound)
    if args.plot:
        from ..visualization.plotting import plot_euler_lattice
        plot_euler_lattice([p for p, _ in grid], save_path=args.plot)
    return reports.lattice_report(grid)


def _cmd_consonance(args, config: Config):
    instrument = parse_instrument(args.instrument)
    index = instrument_index(args.notes, instrument, args.nmax, args.eps, config.consonance_budget)
    divergence = None
    if args.check_divergence:
        divergence = divergence_check(args.notes, instrument, args.nmax, args.threshold, args.eps,
                                      config.consonance_budget)
    return reports.consonance_report(args.notes, index, divergence)


def _cmd_enumerate(args, config: Config):
    if args.tonalities:
        return reports.tonality_counts_report(count_tonalities_by_size())
    if not args.nonrepetitive:
        check_budget(12 ** args.length, config.cadence_budget, "words")
    if args.upto:
        words = words_up_to(args.length, args.nonrepetitive)
    else:
        words = enumerate_words(args.length, args.nonrepetitive, args.all_orderings)
    kind = "nonrepetitive words" if args.nonrepetitive else "words"
    span = "up to" if args.upto else "of"
    return reports.words_report(f"{kind} {span} length {args.length}", words, args.count)


def _cmd_render(args, config: Config):
    config = config.with_overrides(ramp_ms=args.ramp_ms)
    duration = duration_from_name(args.duration)
    if args.fifths_level is not None:
        piece = piece_from_chords(fifths_cycle_piece(args.fifths_level, args.steps), duration)
    elif args.as_ == "chord":
        piece = chord_piece(_word(args), duration)
    else:
        piece = monodic_piece(_word(args), duration)
    path = render_wav(piece, args.out, config)
    samples = sum(event_sample_count(e.duration, config) for e in piece.events)
    return reports.render_report(path, piece, samples, config.sample_rate)


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = _Parser(prog="harmonium", parents=[common],
                     description="Exact computations on tonal harmony, tunings and consonance.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)

    def command(name: str, handler, help_text: str, **kwargs) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help_text, description=help_text, **kwargs)
        p.set_defaults(handler=handler)
        return p

    p = command("scale", _cmd_scale, "scales generated by a fixed interval")
    kinds = p.add_subparsers(dest="scale_kind", required=True)
    gen = kinds.add_parser("gen", parents=[common], help="scale at a fixed ratio")
    gen.add_argument("--root", type=_ratio_arg, help="seed frequency (default the reference note)")
    gen.add_argument("--ratio", type=_ratio_arg, required=True, help="p/q, integer, decimal or b^(p/q)")
    gen.add_argument("--max", type=int, default=12, help="largest number of steps")
    pyt = kinds.add_parser("pyt", parents=[common], help="natural cycle of fifths")
    pyt.add_argument("--root", type=_ratio_arg)
    pyt.add_argument("--count", type=int, default=12)
    tempered = kinds.add_parser("tempered", parents=[common], help="N-equally-tempered scale")
    tempered.add_argument("--root", type=_ratio_arg)
    tempered.add_argument("--divisions", type=int, default=12)

    p = command("tonality", _cmd_tonality, "degree chords of a tonality")
    _add_word_options(p)
    p.add_argument("--level", type=int, default=1)

    p = command("pivots", _cmd_pivots, "pivotal degrees between two tonalities")
    _add_word_options(p)
    _add_word_options(p, "to_", root_default=7)
    p.add_argument("--level", type=int, default=1)

    context_names = STANDARD_CONTEXT_NAMES + ("natural",)
    p = command("cadences", _cmd_cadences, "cadences of a tonality in a context")
    _add_word_options(p)
    p.add_argument("--level", type=int, default=1)
    p.add_argument("--context", choices=context_names, default="natural")
    p.add_argument("--maxlen", type=int, default=1)
    p.add_argument("--minimal", action="store_true", help="only minimal cadences of length maxlen")
    p.add_argument("--rule", choices=[r.value for r in CadenceRule], default=CadenceRule.STRICT.value)

    p = command("modulate", _cmd_modulate, "modulations between two tonalities")
    _add_word_options(p)
    _add_word_options(p, "to_", root_default=7)
    p.add_argument("--level", type=int, default=1)
    p.add_argument("--context", choices=context_names, default="natural",
                   help="context judging the cadences of the target")
    p.add_argument("--maxlen", type=int, default=1)
    p.add_argument("--minimal", action="store_true")
    p.add_argument("--rule", choices=[r.value for r in CadenceRule], default=CadenceRule.STRICT.value)
    p.add_argument("--mazzola", action="store_true", help="modulate through the word symmetry instead of a pivot")

    p = command("piece", _cmd_piece, "the fifths-cycle piece")
    p.add_argument("--fifths-level", type=int, required=True)
    p.add_argument("--steps", type=int, default=12)
    p.add_argument("--degrees", type=_degrees_arg, default=(2, 5, 1))
    p.add_argument("--validate", action="store_true")

    p = command("pythag", _cmd_pythag, "Pythagorean letters, pivots and comma modulations")
    kinds = p.add_subparsers(dest="pythag_kind", required=True)
    scale = kinds.add_parser("scale", parents=[common], help="frequencies of the Pythagorean alphabet")
    scale.add_argument("--cycles", type=int, default=1)
    scale.add_argument("--construction", choices=[c.value for c in Construction])
    scale.add_argument("--plot", metavar="PATH", help="save the fifths spiral to PATH")
    pivots = kinds.add_parser("pivots", parents=[common], help="pivots between words on two cycles")
    _add_word_options(pivots)
    _add_word_options(pivots, "to_")
    pivots.add_argument("--level", type=int, default=1)
    pivots.add_argument("--cycle", type=int, default=0)
    pivots.add_argument("--to-cycle", type=int, default=1)
    comma = kinds.add_parser("comma-modulate", parents=[common],
                             help="raise one letter by a comma and look for modulations")
    _add_word_options(comma)
    comma.add_argument("--level", type=int, default=1)
    comma.add_argument("--raise", dest="raise_at", type=int, required=True, help="1-based letter to raise")
    comma.add_argument("--maxlen", type=int, default=2)
    comma.add_argument("--minimal", action="store_true")
    comma.add_argument("--context", choices=STANDARD_CONTEXT_NAMES, default="major")
    comma.add_argument("--cycle", type=int, default=0, help="cycle of the context words")
    comma.add_argument("--rule", choices=[r.value for r in CadenceRule], default=CadenceRule.UNIQUE.value)

    p = command("euler", _cmd_euler, "Euler points, gradus, commas and just scales")
    kinds = p.add_subparsers(dest="euler_kind", required=True)
    point = kinds.add_parser("point", parents=[common], help="Euler point of a 5-limit ratio")
    point.add_argument("ratio", type=_rational_arg)
    grad = kinds.add_parser("gradus", parents=[common], help="gradus of a ratio, or of the interval between two")
    grad.add_argument("ratio", type=_rational_arg)
    grad.add_argument("second", type=_rational_arg, nargs="?")
    simplicity = kinds.add_parser("esm", parents=[common], help="empirical simplicity measure")
    simplicity.add_argument("ratio", type=_rational_arg)
    simplicity.add_argument("--denominator", type=int, help="evaluate the unreduced n/m")
    kinds.add_parser("commas", parents=[common], help="fifth and third commas")
    kinds.add_parser("vogel", parents=[common], help="12-note just chromatic scale")
    kinds.add_parser("diatonic", parents=[common], help="7-note just diatonic scale")
    lattice = kinds.add_parser("lattice", parents=[common], help="pitches of the integer Euler grid")
    lattice.add_argument("--bound", type=int, default=1)
    lattice.add_argument("--plot", metavar="PATH", help="save the lattice plot to PATH")

    p = command("consonance", _cmd_consonance, "physical consonance index of several notes")
    p.add_argument("--notes", type=_ratio_arg, nargs="+", required=True)
    p.add_argument("--instrument", default="ideal", help="ideal or pure:k")
    p.add_argument("--nmax", type=int, default=8)
    p.add_argument("--eps", type=float, default=0.0, help="tolerance, 0 for exact arithmetic")
    p.add_argument("--check-divergence", action="store_true", help="also evaluate at 2 * nmax")
    p.add_argument("--threshold", type=float, default=0.1)

    p = command("enumerate", _cmd_enumerate, "words in lexicographic order, or tonality counts")
    what = p.add_mutually_exclusive_group(required=True)
    what.add_argument("--length", type=int)
    what.add_argument("--tonalities", action="store_true", help="count tonalities by word size")
    p.add_argument("--nonrepetitive", action="store_true")
    p.add_argument("--all-orderings", action="store_true", help="every ordering of each letter set")
    p.add_argument("--upto", action="store_true", help="every length from 1 to --length")
    p.add_argument("--count", action="store_true", help="print only the number of words")

    p = command("render", _cmd_render, "render a piece to a 16-bit mono WAV file",
                epilog="Each event is normalized on its own to a peak of 0.8 full scale.")
    p.add_argument("--out", required=True)
    _add_word_options(p)
    p.add_argument("--as", dest="as_", choices=("chord", "monodic"), default="monodic")
    p.add_argument("--fifths-level", type=int, help="render the fifths-cycle piece instead of a word")
    p.add_argument("--steps", type=int, default=12)
    p.add_argument("--duration", choices=tuple(DURATIONS), default="crotchet")
    p.add_argument("--ramp-ms", type=float, help="linear fade at both ends of each event")
    return parser


def _configure_logging(verbosity: int, stream: TextIO):
    level = {0: logging.WARNING, 1: logging.INFO}.get(verbosity, logging.DEBUG)
    logging.basicConfig(level=level, stream=stream, format=LOG_FORMAT, force=True)


def _load_config(args) -> Config:
    budget = getattr(args, "budget", None)
    overrides = {
        "reference_note": getattr(args, "reference_note", None),
        "reference_time": getattr(args, "reference_time", None),
        "sample_rate": getattr(args, "sample_rate", None),
        "cadence_budget": budget,
        "consonance_budget": budget,
    }
    return load_config(getattr(args, "config", None), overrides=overrides)


def dispatch(argv: Optional[List[str]] = None, stdout: Optional[TextIO] = None,
             stderr: Optional[TextIO] = None) -> int:
    """
    Runs one command.

    Parameters:
    argv : List[str], optional
        Arguments without the program name (default sys.argv[1:]).
    stdout, stderr : TextIO, optional
        Streams for output and for errors and logs.

    Returns:
    int
        0 on success, 1 on a rejected input, 2 on a usage error.
    """
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(stdout), contextlib.redirect_stderr(stderr):
            args = parser.parse_args(argv)
    except UsageError as exc:
        stderr.write(parser.format_usage())
        stderr.write(f"usage error: {exc}\n")
        return 2
    except SystemExit as exc:
        # --help
        return exc.code or 0

    _configure_logging(getattr(args, "verbose", 0), stderr)
    try:
        config = _load_config(args)
        report = args.handler(args, config)
    except HarmoniumError as exc:
        logger.debug("%s failed", args.command, exc_info=True)
        stderr.write(f"error: {exc}\n")
        return 1
    stdout.write(emit(report, "json" if getattr(args, "json", False) else "table"))
    return 0


def main():
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
