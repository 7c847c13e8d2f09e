"""Deterministic SVG rendering of a coverage matrix.

The figure stacks an optional beats panel (activation curve, reference
ticks up, estimate ticks down) above one row per condition plus the
offbeat-union and any-level rows.  Each maximal run of covered beats
becomes one bar.  All coordinates are formatted with fixed decimals,
so identical inputs produce byte-identical files.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .core import ActivationFunction, BeatSequence, Condition, CoverageMatrix

__all__ = ["render_coverage_svg"]

_ROW_COLORS = {
    Condition.ONBEAT: "#1b7837",
    Condition.OFFBEAT_HALF: "#d95f02",
    Condition.OFFBEAT_ONE_THIRD: "#e08214",
    Condition.OFFBEAT_TWO_THIRD: "#b35806",
    Condition.SUBHARMONIC_HALF: "#542788",
    Condition.SUBHARMONIC_THIRD: "#7b3294",
    Condition.SUBHARMONIC_QUARTER: "#998ec3",
    Condition.HARMONIC_DOUBLE: "#2166ac",
    Condition.HARMONIC_TRIPLE: "#4393c3",
    Condition.HARMONIC_QUADRUPLE: "#92c5de",
}
_UNION_COLORS = {"offbeat_union": "#c51b7d", "any": "#252525"}

_MARGIN_LEFT = 170.0
_MARGIN_RIGHT = 20.0
_PLOT_WIDTH = 720.0
_ROW_HEIGHT = 20.0
_ROW_GAP = 6.0
_PANEL_HEIGHT = 110.0
_AXIS_HEIGHT = 34.0
_TOP = 16.0


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def _runs(row: np.ndarray):
    """Maximal runs of True as (first, last) index pairs."""
    idx = np.flatnonzero(row)
    if idx.size == 0:
        return []
    breaks = np.flatnonzero(np.diff(idx) > 1)
    starts = np.concatenate(([0], breaks + 1))
    ends = np.concatenate((breaks, [idx.size - 1]))
    return [(int(idx[a]), int(idx[b])) for a, b in zip(starts, ends)]


def _tick_step(t_max: float) -> float:
    for step in (0.5, 1.0, 2.0, 5.0, 10.0, 30.0, 60.0, 120.0, 300.0):
        if t_max / step <= 12.0:
            return step
    return 600.0


def render_coverage_svg(
    cm: CoverageMatrix,
    ref: BeatSequence,
    act: ActivationFunction | None = None,
    est: BeatSequence | None = None,
    path=None,
) -> str:
    """Build the SVG text; also write it to ``path`` when given.

    Raises:
        ValueError: the matrix and reference disagree on beat count.
    """
    if cm.n_beats != len(ref):
        raise ValueError(f"matrix has {cm.n_beats} beats but reference has {len(ref)}")
    t = ref.times
    t_max = float(t[-1]) if len(ref) else 1.0
    if act is not None:
        t_max = max(t_max, act.duration)
    if est is not None and len(est):
        t_max = max(t_max, float(est.times[-1]))
    if t_max <= 0.0:
        t_max = 1.0

    def x(time: float) -> float:
        return _MARGIN_LEFT + time / t_max * _PLOT_WIDTH

    pad = 0.5 * float(np.mean(ref.ibis)) if len(ref) >= 2 else 0.25
    width = _MARGIN_LEFT + _PLOT_WIDTH + _MARGIN_RIGHT
    panel = act is not None or est is not None
    rows = [(c.value, cm.covered[c], _ROW_COLORS[c]) for c in Condition]
    rows.append(("offbeat_union", cm.offbeat_row, _UNION_COLORS["offbeat_union"]))
    rows.append(("any", cm.any_row, _UNION_COLORS["any"]))
    rows_top = _TOP + (_PANEL_HEIGHT + 12.0 if panel else 0.0)
    height = rows_top + len(rows) * (_ROW_HEIGHT + _ROW_GAP) + _AXIS_HEIGHT

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(width)}" '
        f'height="{_fmt(height)}" viewBox="0 0 {_fmt(width)} {_fmt(height)}" '
        f'font-family="monospace" font-size="12">',
        f'<rect x="0" y="0" width="{_fmt(width)}" height="{_fmt(height)}" fill="#ffffff"/>',
    ]

    if panel:
        p_top, p_bot = _TOP, _TOP + _PANEL_HEIGHT
        mid = 0.5 * (p_top + p_bot)
        parts.append('<g id="beats-panel">')
        parts.append(
            f'<rect x="{_fmt(_MARGIN_LEFT)}" y="{_fmt(p_top)}" width="{_fmt(_PLOT_WIDTH)}" '
            f'height="{_fmt(_PANEL_HEIGHT)}" fill="#f7f7f7" stroke="#cccccc"/>'
        )
        if act is not None and len(act):
            pts = " ".join(
                f"{_fmt(x(n / act.fps))},{_fmt(p_bot - v * (_PANEL_HEIGHT - 8.0))}"
                for n, v in enumerate(act.values.tolist())
            )
            parts.append(
                f'<polyline points="{pts}" fill="none" stroke="#888888" stroke-width="1"/>'
            )
        for time in t.tolist():
            parts.append(
                f'<line class="ref-beat" x1="{_fmt(x(time))}" y1="{_fmt(p_top)}" '
                f'x2="{_fmt(x(time))}" y2="{_fmt(mid)}" stroke="#1b7837" stroke-width="1"/>'
            )
        if est is not None:
            for time in est.times.tolist():
                parts.append(
                    f'<line class="est-beat" x1="{_fmt(x(time))}" y1="{_fmt(mid)}" '
                    f'x2="{_fmt(x(time))}" y2="{_fmt(p_bot)}" stroke="#b2182b" stroke-width="1"/>'
                )
        parts.append(
            f'<text x="{_fmt(_MARGIN_LEFT - 8.0)}" y="{_fmt(mid)}" text-anchor="end">beats</text>'
        )
        parts.append("</g>")

    for k, (key, row, color) in enumerate(rows):
        y = rows_top + k * (_ROW_HEIGHT + _ROW_GAP)
        parts.append(f'<g id="row-{key}">')
        parts.append(
            f'<rect x="{_fmt(_MARGIN_LEFT)}" y="{_fmt(y)}" width="{_fmt(_PLOT_WIDTH)}" '
            f'height="{_fmt(_ROW_HEIGHT)}" fill="#f7f7f7" stroke="#dddddd"/>'
        )
        label = key.replace("_", " ")
        parts.append(
            f'<text x="{_fmt(_MARGIN_LEFT - 8.0)}" y="{_fmt(y + _ROW_HEIGHT - 5.0)}" '
            f'text-anchor="end">{label}</text>'
        )
        for first, last in _runs(row):
            x1 = max(x(float(t[first]) - pad), _MARGIN_LEFT)
            x2 = min(x(float(t[last]) + pad), _MARGIN_LEFT + _PLOT_WIDTH)
            parts.append(
                f'<rect class="cover" x="{_fmt(x1)}" y="{_fmt(y + 3.0)}" '
                f'width="{_fmt(x2 - x1)}" height="{_fmt(_ROW_HEIGHT - 6.0)}" fill="{color}"/>'
            )
        parts.append("</g>")

    axis_y = rows_top + len(rows) * (_ROW_HEIGHT + _ROW_GAP) + 6.0
    parts.append('<g id="time-axis">')
    parts.append(
        f'<line x1="{_fmt(_MARGIN_LEFT)}" y1="{_fmt(axis_y)}" '
        f'x2="{_fmt(_MARGIN_LEFT + _PLOT_WIDTH)}" y2="{_fmt(axis_y)}" stroke="#000000"/>'
    )
    step = _tick_step(t_max)
    tick = 0.0
    while tick <= t_max + 1e-9:
        parts.append(
            f'<line x1="{_fmt(x(tick))}" y1="{_fmt(axis_y)}" '
            f'x2="{_fmt(x(tick))}" y2="{_fmt(axis_y + 5.0)}" stroke="#000000"/>'
        )
        parts.append(
            f'<text x="{_fmt(x(tick))}" y="{_fmt(axis_y + 18.0)}" '
            f'text-anchor="middle">{tick:.1f}</text>'
        )
        tick += step
    parts.append(
        f'<text x="{_fmt(_MARGIN_LEFT + _PLOT_WIDTH)}" y="{_fmt(axis_y + 30.0)}" '
        f'text-anchor="end">time (s)</text>'
    )
    parts.append("</g>")
    parts.append("</svg>")
    text = "\n".join(parts) + "\n"
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text
