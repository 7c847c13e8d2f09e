"""Command-line interface.

Subcommands: eval (batch evaluation to JSON), track (run a
post-processing tracker on an activation file), viz (coverage SVG),
synth (scenario to reference/estimate files), stats (dataset
statistics).  Exit codes: 0 success, 1 usage error, 2 data error.
"""

from __future__ import annotations

import argparse
import sys

from .core import BeatcoverError, ToleranceParams
from .fileio import (
    parse_activation_file,
    parse_beats_file,
    parse_scenario_file,
    write_activation_file,
    write_beats_file,
)
from .matching import coverage_matrix
from .report import METRIC_GROUPS, dataset_stats_from_refs, evaluate_dataset, write_report
from .synth import gen_activation, gen_estimate, gen_reference
from .trackers import dp_track, global_tempo_from_reference, sppk
from .viz import render_coverage_svg

__all__ = ["main", "build_parser"]


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage problems by default; this tool reserves
    # 2 for data errors, so usage errors are remapped to 1.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _metric_groups(text: str) -> list[str]:
    names = [part.strip() for part in text.split(",") if part.strip()]
    unknown = [n for n in names if n not in METRIC_GROUPS]
    if unknown:
        raise argparse.ArgumentTypeError(
            f"unknown metric group(s) {unknown}; valid: {sorted(METRIC_GROUPS)}"
        )
    return names


def build_parser() -> _Parser:
    parser = _Parser(prog="beatcover", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND", parser_class=_Parser)

    p = sub.add_parser("eval", help="evaluate estimate files against references")
    p.add_argument("--ref", required=True, help="directory of reference beat files")
    p.add_argument("--est", required=True, help="directory of estimated beat files")
    p.add_argument("--L", type=int, default=2, help="window length in beats (default 2)")
    p.add_argument("--cap", type=float, default=0.070, help="tolerance cap in seconds (default 0.070)")
    p.add_argument("--gamma", type=float, default=0.175, help="tolerance/IBI ratio (default 0.175)")
    p.add_argument("--metrics", type=_metric_groups, default=None,
                   help=f"comma-separated groups to report (default all): {','.join(METRIC_GROUPS)}")
    p.add_argument("--workers", type=int, default=1, help="concurrent tracks (default 1)")
    p.add_argument("--out", required=True, help="output JSON path")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("track", help="run a post-processing tracker")
    p.add_argument("--activation", required=True, help="activation file (fps=... header)")
    p.add_argument("--ppt", required=True, choices=("dp", "sppk"), help="tracker to run")
    p.add_argument("--tempo", type=float, default=None, help="global tempo in BPM (dp)")
    p.add_argument("--ref", default=None, help="reference beats to take the global tempo from (dp)")
    p.add_argument("--threshold", type=float, default=0.3, help="sppk threshold (default 0.3)")
    p.add_argument("--min-gap", type=float, default=0.15, help="sppk suppression gap in seconds (default 0.15)")
    p.add_argument("--tightness", type=float, default=100.0, help="dp tempo adherence (default 100)")
    p.add_argument("--out", required=True, help="output beats path")
    p.set_defaults(func=_cmd_track)

    p = sub.add_parser("viz", help="render a coverage SVG for one track")
    p.add_argument("--ref", required=True, help="reference beats file")
    p.add_argument("--est", required=True, help="estimated beats file")
    p.add_argument("--activation", default=None, help="optional activation file for the top panel")
    p.add_argument("--L", type=int, default=2, help="window length in beats (default 2)")
    p.add_argument("--out", required=True, help="output SVG path")
    p.set_defaults(func=_cmd_viz)

    p = sub.add_parser("synth", help="generate reference/estimate files from a scenario")
    p.add_argument("--scenario", required=True, help="scenario script path")
    p.add_argument("--seed", type=int, default=0, help="jitter seed (default 0)")
    p.add_argument("--out-ref", required=True, help="output reference beats path")
    p.add_argument("--out-est", required=True, help="output estimated beats path")
    p.add_argument("--out-act", default=None, help="optional output activation path")
    p.add_argument("--fps", type=float, default=100.0, help="activation frame rate (default 100)")
    p.set_defaults(func=_cmd_synth)

    p = sub.add_parser("stats", help="dataset statistics from reference files")
    p.add_argument("--ref", required=True, help="directory of reference beat files")
    p.set_defaults(func=_cmd_stats)

    return parser


def _cmd_eval(args) -> int:
    params = ToleranceParams(cap=args.cap, gamma=args.gamma, context=args.L)
    report = evaluate_dataset(args.ref, args.est, params, workers=args.workers)
    write_report(report, args.out, metrics=args.metrics)
    for warning in report.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    print(f"evaluated {len(report.tracks)} track(s) -> {args.out}")
    return 0


def _cmd_track(args) -> int:
    act = parse_activation_file(args.activation)
    if args.ppt == "sppk":
        beats = sppk(act, threshold=args.threshold, min_gap=args.min_gap)
    else:
        if args.tempo is None and args.ref is None:
            print("beatcover track: error: --ppt dp needs --tempo or --ref", file=sys.stderr)
            return 1
        tempo = args.tempo if args.tempo is not None else global_tempo_from_reference(
            parse_beats_file(args.ref)
        )
        beats = dp_track(act, tempo, tightness=args.tightness)
    write_beats_file(beats, args.out)
    print(f"wrote {len(beats)} beat(s) -> {args.out}")
    return 0


def _cmd_viz(args) -> int:
    ref = parse_beats_file(args.ref)
    est = parse_beats_file(args.est)
    act = parse_activation_file(args.activation) if args.activation else None
    params = ToleranceParams(context=args.L)
    cm = coverage_matrix(ref, est, params)
    render_coverage_svg(cm, ref, act=act, est=est, path=args.out)
    print(f"wrote coverage figure -> {args.out}")
    return 0


def _cmd_synth(args) -> int:
    scenario = parse_scenario_file(args.scenario)
    ref = gen_reference(scenario.tempo_curve, scenario.duration)
    est = gen_estimate(ref, scenario, seed=args.seed)
    write_beats_file(ref, args.out_ref)
    write_beats_file(est, args.out_est)
    if args.out_act:
        write_activation_file(gen_activation(ref, fps=args.fps), args.out_act)
    print(f"wrote {len(ref)} reference and {len(est)} estimated beat(s)")
    return 0


def _cmd_stats(args) -> int:
    from .report import _listdir  # deterministic listing shared with eval

    paths = _listdir(args.ref)
    refs = [parse_beats_file(p) for p in paths]
    stats = dataset_stats_from_refs(refs)
    print(f"tracks:              {stats.n_tracks}")
    print(f"total annotated span: {stats.total_duration:.2f} s")
    print(f"mean track tempo:    {stats.mean_track_tempo:.2f} BPM")
    print(f"stable tempi:        {stats.percent_stable_tempi:.2f} %")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (BeatcoverError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
