"""Text file formats: beat lists, activation curves, scenario scripts.

All three formats are line oriented UTF-8; blank lines and lines whose
first non-space character is ``#`` are ignored, and a trailing
``# comment`` is allowed on any line.  Writers emit six decimal places,
which is far below the matching tolerances in use.
"""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np

from .core import ActivationFunction, BeatcoverError, BeatSequence, Condition, validate_beats
from .synth import Scenario, Segment

__all__ = [
    "ParseError",
    "MissingFpsError",
    "ValueOutOfRangeError",
    "parse_beats_file",
    "write_beats_file",
    "parse_activation_file",
    "write_activation_file",
    "parse_scenario_file",
]


class ParseError(BeatcoverError):
    """A line in an input file could not be interpreted."""

    def __init__(self, path, lineno: int | None, message: str):
        where = f"{path}:{lineno}" if lineno is not None else str(path)
        super().__init__(f"{where}: {message}")
        self.path = path
        self.lineno = lineno


class MissingFpsError(ParseError):
    """An activation file does not start with an ``fps=`` header."""


class ValueOutOfRangeError(ParseError):
    """An activation value lies outside [0, 1]."""


def _content_lines(path):
    """Yield (lineno, text) for lines that carry content."""
    text = Path(path).read_text(encoding="utf-8")
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def parse_beats_file(path) -> BeatSequence:
    """Read one beat time per line; extra columns are ignored.

    Annotation files often carry a beat-in-bar label in a second
    column; only the first field counts.  The parsed times go through
    :func:`beatcover.core.validate_beats`, so exact duplicates are
    collapsed with a warning and ordering violations raise.
    """
    times = []
    for lineno, line in _content_lines(path):
        field = line.split()[0]
        try:
            value = float(field)
        except ValueError:
            raise ParseError(path, lineno, f"not a number: {field!r}") from None
        if not math.isfinite(value):
            raise ParseError(path, lineno, f"beat time must be finite, got {field!r}")
        times.append(value)
    if not times:
        raise ParseError(path, None, "no beat times found")
    return validate_beats(times)


def write_beats_file(beats: BeatSequence, path) -> None:
    lines = [f"{t:.6f}" for t in beats.times]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def parse_activation_file(path) -> ActivationFunction:
    """Read an activation curve: ``fps=<rate>`` header, one value per line.

    Raises:
        MissingFpsError: the first content line is not an fps header.
        ValueOutOfRangeError: a value lies outside [0, 1].
        ParseError: a line is not a number at all.
    """
    fps = None
    values = []
    for lineno, line in _content_lines(path):
        if fps is None:
            if not line.replace(" ", "").startswith("fps="):
                raise MissingFpsError(path, lineno, "first line must be 'fps=<rate>'")
            field = line.split("=", 1)[1].strip()
            try:
                fps = float(field)
            except ValueError:
                raise ParseError(path, lineno, f"fps is not a number: {field!r}") from None
            if not fps > 0 or not math.isfinite(fps):
                raise ParseError(path, lineno, f"fps must be a positive real, got {field}")
            continue
        try:
            value = float(line.split()[0])
        except ValueError:
            raise ParseError(path, lineno, f"not a number: {line!r}") from None
        if not 0.0 <= value <= 1.0:
            raise ValueOutOfRangeError(path, lineno, f"value {value} outside [0, 1]")
        values.append(value)
    if fps is None:
        raise MissingFpsError(path, None, "missing 'fps=<rate>' header")
    return ActivationFunction(fps=fps, values=np.asarray(values))


def write_activation_file(act: ActivationFunction, path) -> None:
    lines = [f"fps={act.fps!r}"]
    lines.extend(f"{v:.6f}" for v in act.values)
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def _parse_tempo(path, lineno: int, text: str):
    """A bare BPM, or comma-separated ``time:bpm`` knots."""
    if ":" not in text:
        try:
            return float(text)
        except ValueError:
            raise ParseError(path, lineno, f"tempo is not a number: {text!r}") from None
    points = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        try:
            t, bpm = chunk.split(":")
            points.append((float(t), float(bpm)))
        except ValueError:
            raise ParseError(path, lineno, f"bad tempo knot {chunk!r}, expected time:bpm") from None
    return points


def _parse_segment(path, lineno: int, text: str) -> Segment:
    fields = text.split()
    if len(fields) not in (2, 3):
        raise ParseError(path, lineno, "segment needs '<start> <condition> [jitter_std]'")
    try:
        start = int(fields[0])
    except ValueError:
        raise ParseError(path, lineno, f"segment start is not an integer: {fields[0]!r}") from None
    try:
        condition = Condition.parse(fields[1])
    except ValueError as exc:
        raise ParseError(path, lineno, str(exc)) from None
    jitter = 0.0
    if len(fields) == 3:
        try:
            jitter = float(fields[2])
        except ValueError:
            raise ParseError(path, lineno, f"jitter_std is not a number: {fields[2]!r}") from None
    return Segment(start=start, condition=condition, jitter_std=jitter)


def parse_scenario_file(path) -> Scenario:
    """Read a scenario script.

    Recognized keys, one ``key = value`` pair per line::

        duration = 16.0
        tempo = 120            # or time:bpm knots: 0:120, 8:150
        segment = 0 onbeat     # start index, condition, optional jitter std
        segment = 16 harmonic_double 0.002

    ``segment`` repeats; everything else appears once.
    """
    duration = None
    tempo = None
    segments: list[Segment] = []
    for lineno, line in _content_lines(path):
        if "=" not in line:
            raise ParseError(path, lineno, f"expected 'key = value', got {line!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key == "duration":
            try:
                duration = float(value)
            except ValueError:
                raise ParseError(path, lineno, f"duration is not a number: {value!r}") from None
        elif key == "tempo":
            tempo = _parse_tempo(path, lineno, value)
        elif key == "segment":
            segments.append(_parse_segment(path, lineno, value))
        else:
            raise ParseError(path, lineno, f"unknown key {key!r}")
    if duration is None:
        raise ParseError(path, None, "missing required key 'duration'")
    if tempo is None:
        raise ParseError(path, None, "missing required key 'tempo'")
    if not segments:
        raise ParseError(path, None, "missing required key 'segment'")
    try:
        return Scenario(tempo_curve=tempo, duration=duration, segments=tuple(segments))
    except ValueError as exc:
        raise ParseError(path, None, str(exc)) from None
