"""Batch evaluation and the JSON report format.

Reference and estimate files pair by filename stem.  Every numeric
value is rounded to six decimal places before it enters a report, so
serializing and re-parsing a report reproduces it exactly and the
stored means equal the means recomputed (with the same rounding) from
the stored tracks.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .core import BeatcoverError, BeatSequence, Condition, ToleranceParams
from .fileio import parse_beats_file
from .metrics import TrackReport, evaluate_track, mean_track_tempo

__all__ = [
    "SCHEMA_VERSION",
    "NoPairsFoundError",
    "StemCollisionError",
    "DatasetStats",
    "DatasetReport",
    "METRIC_GROUPS",
    "SCALAR_FIELDS",
    "dataset_stats_from_refs",
    "compute_means",
    "evaluate_dataset",
    "serialize_report",
    "parse_report",
    "write_report",
    "read_report",
]

SCHEMA_VERSION = 1

# Scalar TrackReport fields in report order.
SCALAR_FIELDS = (
    "f1",
    "precision",
    "recall",
    "cmlt",
    "amlt",
    "l_correct_f",
    "l_correct_p",
    "l_correct_r",
    "acr_any",
    "acr_offbeat",
    "mlsr",
)

# CLI --metrics groups and the report fields they keep.
METRIC_GROUPS = {
    "f1": ("f1", "precision", "recall"),
    "continuity": ("cmlt", "amlt"),
    "l_correct": ("l_correct_f", "l_correct_p", "l_correct_r"),
    "acr": ("acr", "acr_any", "acr_offbeat"),
    "mlsr": ("mlsr",),
}


class NoPairsFoundError(BeatcoverError):
    """No reference/estimate filename stems matched."""


class StemCollisionError(BeatcoverError):
    """Two files in one directory share a stem, so pairing is ambiguous."""


@dataclass(frozen=True)
class DatasetStats:
    """Reference-side statistics over the evaluated tracks.

    total_duration sums the annotated spans (last beat minus first) in
    seconds.  percent_stable_tempi pools every inter-beat interval of
    every track and reports the stable share on a 0..100 scale.
    mean_track_tempo is the unweighted mean of per-track tempi in BPM.
    """

    n_tracks: int
    total_duration: float
    percent_stable_tempi: float
    mean_track_tempo: float


@dataclass(frozen=True)
class DatasetReport:
    tracks: tuple[TrackReport, ...]
    means: dict[str, float]
    dataset_stats: DatasetStats
    warnings: tuple[str, ...]
    params: ToleranceParams


def _r6(x: float) -> float:
    return round(float(x), 6)


def dataset_stats_from_refs(refs: list[BeatSequence]) -> DatasetStats:
    """Table-style statistics from reference sequences alone.

    Every track needs at least two beats (a track without one interval
    has no tempo).
    """
    if not refs:
        raise NoPairsFoundError("no reference tracks")
    spans = []
    tempi = []
    stable = 0
    intervals = 0
    for beats in refs:
        tempo = mean_track_tempo(beats)  # raises on fewer than two beats
        tempi.append(tempo)
        spans.append(beats.times[-1] - beats.times[0])
        normalized = (60.0 / beats.ibis) / tempo
        stable += int(np.count_nonzero((normalized >= 0.96) & (normalized <= 1.04)))
        intervals += len(beats.ibis)
    return DatasetStats(
        n_tracks=len(refs),
        total_duration=_r6(sum(spans)),
        percent_stable_tempi=_r6(100.0 * stable / intervals),
        mean_track_tempo=_r6(float(np.mean(tempi))),
    )


def compute_means(tracks) -> dict[str, float]:
    """Unweighted per-metric means, flat keyed, rounded to 6 decimals.

    Per-condition coverage means appear as ``acr_<condition>`` keys.
    """
    means = {}
    for name in SCALAR_FIELDS:
        means[name] = _r6(np.mean([getattr(t, name) for t in tracks]))
    for cond in Condition:
        means[f"acr_{cond.value}"] = _r6(np.mean([t.acr[cond] for t in tracks]))
    return means


def _listdir(directory) -> list[Path]:
    d = Path(directory)
    if not d.is_dir():
        raise NotADirectoryError(f"not a directory: {d}")
    return sorted(p for p in d.iterdir() if p.is_file() and not p.name.startswith("."))


def _by_stem(directory) -> dict[str, Path]:
    out: dict[str, Path] = {}
    for p in _listdir(directory):
        if p.stem in out:
            raise StemCollisionError(f"duplicate stem {p.stem!r}: {out[p.stem].name} and {p.name}")
        out[p.stem] = p
    return out


def evaluate_dataset(
    ref_dir,
    est_dir,
    params: ToleranceParams = ToleranceParams(),
    workers: int = 1,
) -> DatasetReport:
    """Evaluate every stem-matched (reference, estimate) file pair.

    Unmatched files become warnings; the result is independent of
    directory listing order and of ``workers``.

    Raises:
        NoPairsFoundError: no stem matched at all.
        StemCollisionError: a directory has two files with one stem.
    """
    refs = _by_stem(ref_dir)
    ests = _by_stem(est_dir)
    stems = sorted(set(refs) & set(ests))
    if not stems:
        raise NoPairsFoundError(f"no matching stems between {ref_dir} and {est_dir}")
    warnings = tuple(
        [f"no estimate for reference {s!r}" for s in sorted(set(refs) - set(ests))]
        + [f"no reference for estimate {s!r}" for s in sorted(set(ests) - set(refs))]
    )

    def one(stem: str) -> tuple[TrackReport, BeatSequence]:
        ref = parse_beats_file(refs[stem])
        est = parse_beats_file(ests[stem])
        return evaluate_track(stem, ref, est, params), ref

    if workers <= 1:
        results = [one(s) for s in stems]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(one, stems))
    # stems were sorted, and map preserves order, so tracks are sorted.
    tracks = tuple(r for r, _ in results)
    ref_seqs = [ref for _, ref in results]
    return DatasetReport(
        tracks=tracks,
        means=compute_means(tracks),
        dataset_stats=dataset_stats_from_refs(ref_seqs),
        warnings=warnings,
        params=params,
    )


def _selected_fields(metrics) -> tuple[str, ...]:
    if metrics is None:
        names = list(METRIC_GROUPS)
    else:
        names = list(metrics)
        unknown = [m for m in names if m not in METRIC_GROUPS]
        if unknown:
            raise ValueError(f"unknown metric group(s) {unknown}; valid: {sorted(METRIC_GROUPS)}")
    fields: list[str] = []
    for name in METRIC_GROUPS:
        if name in names:
            fields.extend(METRIC_GROUPS[name])
    return tuple(fields)


def _track_to_json(track: TrackReport, fields) -> dict:
    obj: dict = {"track_id": track.track_id}
    for name in SCALAR_FIELDS:
        if name in fields:
            obj[name] = getattr(track, name)
    if "acr" in fields:
        obj["acr"] = {c.value: track.acr[c] for c in Condition}
    return obj


def serialize_report(report: DatasetReport, metrics=None) -> str:
    """Deterministic JSON text for a report.

    ``metrics`` optionally restricts the emitted metric groups (keys of
    ``METRIC_GROUPS``); only unrestricted reports are guaranteed to
    parse back into a full ``DatasetReport``.
    """
    fields = _selected_fields(metrics)
    mean_keys = [k for k in SCALAR_FIELDS if k in fields]
    if "acr" in fields:
        mean_keys += [f"acr_{c.value}" for c in Condition]
    obj = {
        "schema_version": SCHEMA_VERSION,
        "params": {
            "cap": report.params.cap,
            "gamma": report.params.gamma,
            "context": report.params.context,
        },
        "dataset_stats": {
            "n_tracks": report.dataset_stats.n_tracks,
            "total_duration": report.dataset_stats.total_duration,
            "percent_stable_tempi": report.dataset_stats.percent_stable_tempi,
            "mean_track_tempo": report.dataset_stats.mean_track_tempo,
        },
        "means": {k: report.means[k] for k in mean_keys},
        "tracks": [_track_to_json(t, fields) for t in report.tracks],
        "warnings": list(report.warnings),
    }
    return json.dumps(obj, indent=2) + "\n"


def parse_report(text: str) -> DatasetReport:
    """Parse a full JSON report back into a DatasetReport."""
    obj = json.loads(text)
    version = obj.get("schema_version")
    if version != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema_version {version!r}")
    params = ToleranceParams(
        cap=obj["params"]["cap"],
        gamma=obj["params"]["gamma"],
        context=obj["params"]["context"],
    )
    tracks = []
    for t in obj["tracks"]:
        tracks.append(
            TrackReport(
                track_id=t["track_id"],
                f1=t["f1"],
                precision=t["precision"],
                recall=t["recall"],
                cmlt=t["cmlt"],
                amlt=t["amlt"],
                l_correct_f=t["l_correct_f"],
                l_correct_p=t["l_correct_p"],
                l_correct_r=t["l_correct_r"],
                acr={Condition.parse(k): v for k, v in t["acr"].items()},
                acr_any=t["acr_any"],
                acr_offbeat=t["acr_offbeat"],
                mlsr=t["mlsr"],
                params=params,
            )
        )
    ds = obj["dataset_stats"]
    return DatasetReport(
        tracks=tuple(tracks),
        means=dict(obj["means"]),
        dataset_stats=DatasetStats(
            n_tracks=ds["n_tracks"],
            total_duration=ds["total_duration"],
            percent_stable_tempi=ds["percent_stable_tempi"],
            mean_track_tempo=ds["mean_track_tempo"],
        ),
        warnings=tuple(obj["warnings"]),
        params=params,
    )


def write_report(report: DatasetReport, path, metrics=None) -> None:
    Path(path).write_text(serialize_report(report, metrics), encoding="utf-8")


def read_report(path) -> DatasetReport:
    return parse_report(Path(path).read_text(encoding="utf-8"))
