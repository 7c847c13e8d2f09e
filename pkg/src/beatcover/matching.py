"""Locating variant windows inside an estimated beat sequence.

A window matches when some run of consecutive estimated beats lands
within the window tolerance of every expected tap.  Requiring the run
to be consecutive is the point: isolated coincidences do not count as
following a pulse.
"""

from __future__ import annotations

from dataclasses import replace

import numpy as np

from .core import BeatSequence, Condition, CoverageMatrix, ToleranceParams
from .variants import VariantWindow, offbeat_variant, subharmonic_variant, variant_window

__all__ = ["window_match", "coverage_matrix", "l_correct_detection"]


def window_match(window: VariantWindow, est: BeatSequence) -> int | None:
    """Smallest index ``j`` where ``window`` matches ``est``, or None.

    A match at ``j`` means ``|window.times[t] - est.times[j + t]| <=
    window.epsilon`` for every position ``t`` of the window (closed
    comparison, so a distance of exactly epsilon still matches).
    """
    w = window.times
    e = est.times
    span = len(w)
    if len(e) < span:
        return None
    # Any match must align the first expected tap, so only candidates
    # within epsilon of w[0] need the full check.
    lo = int(np.searchsorted(e, w[0] - window.epsilon, side="left"))
    hi = int(np.searchsorted(e, w[0] + window.epsilon, side="right"))
    for j in range(lo, min(hi, len(e) - span + 1)):
        if np.all(np.abs(w - e[j : j + span]) <= window.epsilon):
            return j
    return None


def coverage_matrix(
    ref: BeatSequence, est: BeatSequence, params: ToleranceParams = ToleranceParams()
) -> CoverageMatrix:
    """Which reference beats are covered, per condition.

    A reference beat is covered under a condition when it lies in the
    cover set of at least one fully matched window of that condition.
    """
    n = len(ref)
    rows: dict[Condition, np.ndarray] = {c: np.zeros(n, dtype=bool) for c in Condition}
    for condition in Condition:
        row = rows[condition]
        for instance in range(n):
            win = variant_window(ref, instance, condition, params)
            if win is None:
                continue
            if window_match(win, est) is not None:
                row[sorted(win.cover_set)] = True
    return CoverageMatrix.from_rows(rows)


def l_correct_detection(
    ref: BeatSequence, est: BeatSequence, params: ToleranceParams = ToleranceParams()
) -> tuple[np.ndarray, np.ndarray]:
    """Window-verified detection flags under a fixed tolerance.

    Reproduces the stricter detection rule used as a baseline: only
    onbeat and half-offbeat windows count, and the tolerance is the
    fixed cap rather than the tempo-adaptive value.  Returns Boolean
    flags over the reference beats and over the estimated beats; an
    estimated beat is flagged when it takes part in any matched window.
    """
    n = len(ref)
    ref_flags = np.zeros(n, dtype=bool)
    est_flags = np.zeros(len(est), dtype=bool)
    for instance in range(n):
        for win in (
            subharmonic_variant(ref, instance, params.context, 1, params),
            offbeat_variant(ref, instance, params.context, 0.5, params),
        ):
            if win is None:
                continue
            win = replace(win, epsilon=params.cap)
            j = window_match(win, est)
            if j is None:
                continue
            ref_flags[sorted(win.cover_set)] = True
            est_flags[j : j + len(win)] = True
    return ref_flags, est_flags
