"""
Table and JSON rendering of command results.

Every command builds a Report: a title, an optional summary line in the
brace notation ({{5},{7}}), an aligned table and the JSON payload holding
the same data.
"""
import json
from dataclasses import dataclass, field
from typing import Any, List, Optional, Sequence

from ..core.modulation import MazzolaModulation, Modulation, Piece, ValidationReport, transition_dict
from ..core.tonality import Context, HarmonicWord, PivotalDegree, Tonality, degrees_of, hw_to_list
from ..tuning.euler import Comma, EulerPoint, JustRow, VogelRow, pitch_of_point
from ..tuning.pythag import PytLetter
from ..tuning.scales import GeneratedScale
from ..utils.ratio import format_ratio, json_ratio

FORMATS = ("table", "json")


def braces(value: Any) -> str:
    """Nested sequences in brace notation, e.g. ((1, 3), (4, 6)) -> {{1,3},{4,6}}."""
    if isinstance(value, PytLetter):
        return f"{value.pc}@{value.cycle}"
    if isinstance(value, (list, tuple)):
        return "{" + ",".join(braces(v) for v in value) + "}"
    return str(value)


@dataclass
class Report:
    title: str
    payload: Any
    headers: Sequence[str] = ()
    rows: List[Sequence] = field(default_factory=list)
    summary: Optional[str] = None


def format_table(headers: Sequence[str], rows: Sequence[Sequence]) -> str:
    """Left-aligned columns separated by two spaces, with a dashed rule under the header."""
    cells = [[str(h) for h in headers]] + [[str(v) for v in row] for row in rows]
    widths = [max(len(r[k]) for r in cells) for k in range(len(headers))]
    lines = ["  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def emit(report: Report, fmt: str = "table") -> str:
    """
    Renders a report.

    Parameters:
    report : Report
        The result to render.
    fmt : str
        "table" (summary line, then an aligned table) or "json".

    Returns:
    str
        Text ending in a newline.
    """
    if fmt not in FORMATS:
        raise ValueError(f"format must be one of {FORMATS}, got {fmt!r}")
    if fmt == "json":
        return json.dumps(report.payload, indent=2, ensure_ascii=False) + "\n"
    parts = [report.title]
    if report.summary is not None:
        parts.append(report.summary)
    if report.headers:
        parts.append(format_table(report.headers, report.rows))
    return "\n".join(parts) + "\n"


def tonality_report(t: Tonality) -> Report:
    rows = [(i, braces(c)) for i, c in enumerate(t.degree_chords, start=1)]
    return Report(f"tonality {braces(t.word)} at level {t.level}", t.to_dict(),
                  ("degree", "chord"), rows)


def pivots_report(t1: Tonality, t2: Tonality, pivots: Sequence[PivotalDegree]) -> Report:
    source = tuple(p.source_degree for p in pivots)
    target = tuple(p.target_degree for p in pivots)
    payload = {
        "source": t1.to_dict(),
        "target": t2.to_dict(),
        "pivots": [p.to_dict() for p in pivots],
    }
    rows = [(p.source_degree, p.target_degree, braces(p.chord)) for p in pivots]
    summary = braces((source, target)) if pivots else "{}"
    return Report(f"pivotal degrees {braces(t1.word)} -> {braces(t2.word)}", payload,
                  ("source", "target", "chord"), rows, summary)


def cadences_report(t: Tonality, ctx: Context, found: Sequence[HarmonicWord]) -> Report:
    degrees = [degrees_of(t, hw) for hw in found]
    payload = {
        "tonality": t.to_dict(),
        "context": ctx.name,
        "cadences": [{"degrees": list(d), "chords": hw_to_list(hw)} for d, hw in zip(degrees, found)],
    }
    rows = [(braces(d), braces(hw)) for d, hw in zip(degrees, found)]
    return Report(f"cadences of {braces(t.word)} at level {t.level} in context {ctx.name!r}",
                  payload, ("degrees", "chords"), rows, braces(degrees))


def _transition_row(t2: Tonality, m) -> tuple:
    if isinstance(m, MazzolaModulation):
        return (str(m.modulator), "", braces(degrees_of(t2, m.cadence)))
    return (m.pivot.source_degree, m.pivot.target_degree, braces(degrees_of(t2, m.cadence)))


def modulations_report(t1: Tonality, t2: Tonality, found: Sequence) -> Report:
    payload = {
        "source": t1.to_dict(),
        "target": t2.to_dict(),
        "modulations": [transition_dict(m) for m in found],
    }
    rows = [_transition_row(t2, m) for m in found]
    return Report(f"modulations {braces(t1.word)} -> {braces(t2.word)} at level {t1.level}",
                  payload, ("pivot", "target degree", "cadence"), rows, f"{len(found)} found")


def piece_report(piece: Piece, validation: Optional[ValidationReport] = None) -> Report:
    payload = piece.to_dict()
    if validation is not None:
        payload["valid"] = validation.is_valid
        payload["violations"] = [{"segment": v.segment, "message": v.message}
                                 for v in validation.violations]
    rows = []
    for i, segment in enumerate(piece.segments()):
        if isinstance(segment, (Modulation, MazzolaModulation)):
            rows.append((i, "modulation", braces(segment.cadence)))
        else:
            rows.append((i, "harmonic word", braces(segment)))
    summary = None if validation is None else str(validation)
    return Report(f"piece over {len(piece.tonalities)} tonalities", payload,
                  ("segment", "kind", "chords"), rows, summary)


def scale_report(title: str, scale: GeneratedScale) -> Report:
    cents = scale.cents()
    payload = {
        "notes": [json_ratio(x) for x in scale.notes],
        "cents": cents,
        "closed": scale.closed,
        "period": scale.period,
    }
    rows = [(k, format_ratio(x), f"{c:.3f}") for k, (x, c) in enumerate(zip(scale.notes, cents))]
    summary = f"closed after {scale.period} steps" if scale.closed else "open"
    return Report(title, payload, ("step", "frequency", "cents"), rows, summary)


def frequencies_report(title: str, letters: Sequence[PytLetter], freqs: Sequence, cents: Sequence[float]) -> Report:
    payload = {"letters": [
        {"letter": l.to_dict(), "frequency": json_ratio(f), "cents": c}
        for l, f, c in zip(letters, freqs, cents)
    ]}
    rows = [(braces(l), f"{float(f):.16g}", f"{c:.3f}") for l, f, c in zip(letters, freqs, cents)]
    return Report(title, payload, ("letter", "frequency", "cents"), rows)


def _point_json(p: EulerPoint) -> list:
    return [json_ratio(e) for e in p.exponents]


def euler_point_report(ratio, point: EulerPoint) -> Report:
    cents = pitch_of_point(point)
    payload = {"ratio": json_ratio(ratio), "point": _point_json(point), "cents": cents}
    return Report(f"Euler point of {format_ratio(ratio)}", payload,
                  ("ratio", "point", "cents"), [(format_ratio(ratio), str(point), f"{cents:.3f}")])


def gradus_report(ratio, value: int) -> Report:
    return Report(f"gradus suavitatis of {format_ratio(ratio)}",
                  {"ratio": json_ratio(ratio), "gradus": value},
                  ("ratio", "gradus"), [(format_ratio(ratio), value)])


def esm_report(ratio, value) -> Report:
    return Report(f"empirical simplicity of {format_ratio(ratio)}",
                  {"ratio": json_ratio(ratio), "esm": json_ratio(value)},
                  ("ratio", "esm"), [(format_ratio(ratio), format_ratio(value))])


def commas_report(found: Sequence[Comma]) -> Report:
    payload = {c.name: {"interval": _point_json(c.interval), "ratio": json_ratio(c.ratio), "cents": c.cents}
               for c in found}
    rows = [(c.name, str(c.interval), format_ratio(c.ratio), f"{c.cents:.3f}") for c in found]
    return Report("commas", payload, ("name", "interval", "ratio", "cents"), rows)


def vogel_report(rows_in: Sequence[VogelRow]) -> Report:
    payload = [{"ratio": json_ratio(r.ratio), "point": _point_json(r.point)} for r in rows_in]
    rows = [(pc, format_ratio(r.ratio), str(r.point)) for pc, r in enumerate(rows_in)]
    return Report("just chromatic scale", payload, ("pc", "ratio", "point"), rows)


def diatonic_report(rows_in: Sequence[JustRow]) -> Report:
    payload = [{"frequency": json_ratio(r.frequency), "ratio": json_ratio(r.ratio), "cents": r.cents}
               for r in rows_in]
    rows = [(k, format_ratio(r.frequency), format_ratio(r.ratio), f"{r.cents:.3f}")
            for k, r in enumerate(rows_in, start=1)]
    return Report("just diatonic scale", payload, ("degree", "frequency", "ratio", "cents"), rows)


def lattice_report(grid) -> Report:
    payload = [{"point": _point_json(p), "cents": c} for p, c in grid]
    rows = [(str(p), f"{c:.3f}") for p, c in grid]
    return Report("pitches of the Euler grid", payload, ("point", "cents"), rows)


def consonance_report(pulsations, index, divergence=None) -> Report:
    payload = {"notes": [json_ratio(x) for x in pulsations], "index": json_ratio(index)}
    rows = [("index", format_ratio(index))]
    if divergence is not None:
        payload["divergence"] = {
            "n_max": divergence.n_max,
            "doubled_index": json_ratio(divergence.doubled_index),
            "diverges": divergence.diverges,
        }
        rows.append((f"index at n_max={2 * divergence.n_max}", format_ratio(divergence.doubled_index)))
        rows.append(("diverges", divergence.diverges))
    title = "consonance of " + " ".join(format_ratio(x) for x in pulsations)
    return Report(title, payload, ("quantity", "value"), rows)


def words_report(title: str, words: Sequence[Sequence[int]], count_only: bool = False) -> Report:
    if count_only:
        return Report(title, {"count": len(words)}, summary=str(len(words)))
    return Report(title, {"count": len(words), "words": [list(w) for w in words]},
                  ("index", "word"), [(k, braces(w)) for k, w in enumerate(words, start=1)],
                  str(len(words)))


def tonality_counts_report(by_size) -> Report:
    total = sum(by_size.values())
    payload = {"by_size": {str(n): c for n, c in by_size.items()}, "total": total}
    rows = [(n, c) for n, c in by_size.items()]
    return Report("tonalities by word size", payload, ("size", "tonalities"), rows, str(total))


def render_report(path, piece, samples: int, sample_rate: int) -> Report:
    payload = {"path": str(path), "events": len(piece), "samples": samples, "sample_rate": sample_rate}
    return Report(f"wrote {path}", payload, ("events", "samples", "sample rate"),
                  [(len(piece), samples, sample_rate)])


def comma_report(t1: Tonality, t2: Tonality, found: Sequence[Modulation]) -> Report:
    """Modulations between two comma-displaced tonalities, summarised by pivots and cadences."""
    pivots = list(dict.fromkeys(m.pivot for m in found))
    closing = list(dict.fromkeys(m.cadence for m in found))
    degrees = [degrees_of(t2, hw) for hw in closing]
    pivot_degrees = (tuple(p.source_degree for p in pivots), tuple(p.target_degree for p in pivots))
    payload = {
        "source": t1.to_dict(),
        "target": t2.to_dict(),
        "pivots": [p.to_dict() for p in pivots],
        "cadences": [{"degrees": list(d), "chords": hw_to_list(hw)} for d, hw in zip(degrees, closing)],
        "modulations": [m.to_dict() for m in found],
    }
    rows = [_transition_row(t2, m) for m in found]
    summary = f"pivots {braces(pivot_degrees) if pivots else '{}'}  cadences {braces(degrees)}"
    return Report(f"comma modulation {braces(t1.word)} -> {braces(t2.word)}", payload,
                  ("pivot", "target degree", "cadence"), rows, summary)
