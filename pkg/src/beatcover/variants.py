"""Construction of modified reference windows.

A tracker that taps twice as fast, or on the offbeat, is still locked
to the annotation in a useful way.  Each metric-level condition turns a
run of consecutive reference beats into a short "variant window" of
expected tap times; the matcher then looks for that window inside the
estimate.  Windows near the end of the sequence that would need beats
beyond the last annotation do not exist and the builders return None
for them.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    BeatSequence,
    Condition,
    ToleranceParams,
    WindowTooShortError,
    _frozen_array,
)

__all__ = [
    "VariantWindow",
    "adaptive_epsilon",
    "subharmonic_variant",
    "harmonic_variant",
    "offbeat_variant",
    "variant_window",
    "all_variants",
]

# float(1/3) and float(2/3) are the exact doubles produced by the
# literal divisions below, so dictionary lookup by value is safe.
_STEP_TO_CONDITION = {
    1: Condition.ONBEAT,
    2: Condition.SUBHARMONIC_HALF,
    3: Condition.SUBHARMONIC_THIRD,
    4: Condition.SUBHARMONIC_QUARTER,
}
_FACTOR_TO_CONDITION = {
    2: Condition.HARMONIC_DOUBLE,
    3: Condition.HARMONIC_TRIPLE,
    4: Condition.HARMONIC_QUADRUPLE,
}
_FRACTION_TO_CONDITION = {
    0.5: Condition.OFFBEAT_HALF,
    1.0 / 3.0: Condition.OFFBEAT_ONE_THIRD,
    2.0 / 3.0: Condition.OFFBEAT_TWO_THIRD,
}

CONDITION_STEPS = {c: s for s, c in _STEP_TO_CONDITION.items()}
CONDITION_FACTORS = {c: f for f, c in _FACTOR_TO_CONDITION.items()}
CONDITION_FRACTIONS = {c: f for f, c in _FRACTION_TO_CONDITION.items()}


@dataclass(frozen=True, eq=False)
class VariantWindow:
    """Expected tap times for one condition anchored at one beat.

    times: strictly increasing expected tap times in seconds.
    epsilon: per-window matching tolerance in seconds.
    cover_set: indices of the reference beats this window accounts for.
    """

    condition: Condition
    instance: int
    times: np.ndarray
    epsilon: float
    cover_set: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "times", _frozen_array(self.times))
        if len(self.times) < 2:
            raise WindowTooShortError("a variant window needs at least two times")

    def __len__(self) -> int:
        return int(self.times.size)


def adaptive_epsilon(times, params: ToleranceParams = ToleranceParams()) -> float:
    """Matching tolerance for one window: min(cap, gamma * mean interval).

    Slow passages get a wide but capped tolerance; fast subdivided
    windows get a proportionally tight one.

    Raises:
        WindowTooShortError: fewer than two times, so no interval exists.
    """
    arr = np.asarray(times, dtype=np.float64).reshape(-1)
    if arr.size < 2:
        raise WindowTooShortError("epsilon needs at least two times")
    return min(params.cap, params.gamma * float(np.mean(np.diff(arr))))


def _check_args(beats: BeatSequence, instance: int, length: int) -> None:
    if length < 2:
        raise WindowTooShortError(f"window length must be >= 2, got {length}")
    if not 0 <= instance < len(beats):
        raise ValueError(f"instance {instance} out of range for {len(beats)} beats")


def subharmonic_variant(
    beats: BeatSequence,
    instance: int,
    length: int,
    step: int,
    tol: ToleranceParams = ToleranceParams(),
) -> VariantWindow | None:
    """Window of every ``step``-th beat starting at ``instance``.

    step=1 is the plain onbeat window; steps 2..4 model tapping at a
    half, third, or quarter of the annotated tempo.  Returns None when
    the last required beat index falls outside the sequence.
    """
    _check_args(beats, instance, length)
    if step not in _STEP_TO_CONDITION:
        raise ValueError(f"step must be one of {sorted(_STEP_TO_CONDITION)}, got {step}")
    last = instance + step * (length - 1)
    if last >= len(beats):
        return None
    idx = range(instance, last + 1, step)
    times = beats.times[instance : last + 1 : step]
    return VariantWindow(
        condition=_STEP_TO_CONDITION[step],
        instance=instance,
        times=times,
        epsilon=adaptive_epsilon(times, tol),
        cover_set=frozenset(idx),
    )


def harmonic_variant(
    beats: BeatSequence,
    instance: int,
    length: int,
    factor: int,
    tol: ToleranceParams = ToleranceParams(),
) -> VariantWindow | None:
    """Window with ``factor - 1`` extra taps interpolated into each interval.

    Models tapping at 2x, 3x, or 4x the annotated tempo.  A window over
    ``length`` anchor beats has ``length + (factor - 1) * (length - 1)``
    times, but only the anchors appear in the cover set: the interpolated
    taps exist to verify the faster pulse, not to credit extra beats.
    Returns None when the anchors run past the end of the sequence.
    """
    _check_args(beats, instance, length)
    if factor not in _FACTOR_TO_CONDITION:
        raise ValueError(f"factor must be one of {sorted(_FACTOR_TO_CONDITION)}, got {factor}")
    if instance + length - 1 >= len(beats):
        return None
    anchors = beats.times[instance : instance + length]
    parts = []
    for m in range(length - 1):
        lo, hi = anchors[m], anchors[m + 1]
        parts.append(lo + (hi - lo) * np.arange(factor) / factor)
    parts.append(anchors[-1:])
    times = np.concatenate(parts)
    return VariantWindow(
        condition=_FACTOR_TO_CONDITION[factor],
        instance=instance,
        times=times,
        epsilon=adaptive_epsilon(times, tol),
        cover_set=frozenset(range(instance, instance + length)),
    )


def offbeat_variant(
    beats: BeatSequence,
    instance: int,
    length: int,
    fraction: float,
    tol: ToleranceParams = ToleranceParams(),
) -> VariantWindow | None:
    """Window of taps displaced ``fraction`` of the way into each interval.

    fraction must be one of 1/2, 1/3, 2/3.  Each of the ``length`` taps
    needs the interval after its anchor beat, so the window additionally
    requires beat ``instance + length`` to exist; returns None otherwise.
    """
    _check_args(beats, instance, length)
    if fraction not in _FRACTION_TO_CONDITION:
        valid = sorted(_FRACTION_TO_CONDITION)
        raise ValueError(f"fraction must be one of {valid}, got {fraction}")
    if instance + length >= len(beats):
        return None
    anchors = beats.times[instance : instance + length + 1]
    times = anchors[:-1] + fraction * np.diff(anchors)
    return VariantWindow(
        condition=_FRACTION_TO_CONDITION[fraction],
        instance=instance,
        times=times,
        epsilon=adaptive_epsilon(times, tol),
        cover_set=frozenset(range(instance, instance + length)),
    )


def variant_window(
    beats: BeatSequence,
    instance: int,
    condition: Condition,
    params: ToleranceParams = ToleranceParams(),
) -> VariantWindow | None:
    """Build the window for one condition at one anchor, or None.

    The window length is ``params.context``.
    """
    if condition in CONDITION_STEPS:
        return subharmonic_variant(beats, instance, params.context, CONDITION_STEPS[condition], params)
    if condition in CONDITION_FACTORS:
        return harmonic_variant(beats, instance, params.context, CONDITION_FACTORS[condition], params)
    return offbeat_variant(beats, instance, params.context, CONDITION_FRACTIONS[condition], params)


def all_variants(
    beats: BeatSequence, params: ToleranceParams = ToleranceParams()
) -> list[VariantWindow]:
    """Every existing window of every condition, in deterministic order.

    Anchor indices ascend; for one anchor the conditions iterate in
    declaration order.
    """
    out = []
    for instance in range(len(beats)):
        for condition in Condition:
            win = variant_window(beats, instance, condition, params)
            if win is not None:
                out.append(win)
    return out
