import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from beatcover import (
    BeatSequence,
    Condition,
    CoverageMatrix,
    TooFewBeatsError,
    ToleranceParams,
    acr_scores,
    amlt,
    cmlt,
    continuity_correct,
    coverage_matrix,
    evaluate_track,
    f1_score,
    l_correct_fmeasure,
    mean_track_tempo,
    mlsr,
    stable_tempi_percentage,
)
from conftest import constant_beats, random_times


def ref_est_strategy():
    times = st.lists(
        st.floats(min_value=0.0, max_value=12.0, allow_nan=False),
        min_size=2,
        max_size=20,
        unique=True,
    ).map(sorted)
    return st.tuples(times, times)


class TestF1Score:
    def test_identity(self):
        ref = constant_beats(120, 16)
        assert f1_score(ref, ref) == (1.0, 1.0, 1.0)

    def test_offset_within_window_still_perfect(self):
        ref = constant_beats(120, 16)
        est = BeatSequence(ref.times + 0.05)
        assert f1_score(ref, est) == (1.0, 1.0, 1.0)

    def test_double_tempo_estimate(self):
        # every reference beat is found but half the estimates are spurious
        ref = constant_beats(120, 12)
        est = constant_beats(240, 23)
        precision, recall, f1 = f1_score(ref, est)
        assert recall == pytest.approx(1.0)
        assert precision == pytest.approx(12 / 23)
        assert f1 == pytest.approx(24 / 35)

    def test_empty_estimate(self):
        ref = constant_beats(120, 8)
        assert f1_score(ref, BeatSequence([])) == (0.0, 0.0, 0.0)

    def test_matching_is_one_to_one(self):
        # two estimates near one reference beat: only one can match
        ref = BeatSequence([1.0, 5.0])
        est = BeatSequence([0.97, 1.03])
        precision, recall, f1 = f1_score(ref, est)
        assert precision == pytest.approx(0.5)
        assert recall == pytest.approx(0.5)

    @given(ref_est_strategy())
    def test_greedy_count_is_maximum_matching(self, pair):
        ref_raw, est_raw = pair
        ref, est = BeatSequence(ref_raw), BeatSequence(est_raw)
        precision, recall, _ = f1_score(ref, est)
        best = oracles.oracle_f1_matched(ref_raw, est_raw)
        assert precision * len(est) == pytest.approx(best)
        assert recall * len(ref) == pytest.approx(best)


class TestContinuity:
    def test_identity_all_correct(self):
        ref = constant_beats(120, 10)
        assert continuity_correct(ref, ref).all()

    def test_large_phase_error_fails(self):
        ref = constant_beats(120, 10)
        est = BeatSequence(ref.times + 0.2)  # 0.2 > 0.175 * 0.5
        assert not continuity_correct(ref, est).any()

    def test_first_estimate_judged_on_phase_alone(self):
        ref = constant_beats(120, 10)
        est = BeatSequence([ref[3]])
        assert continuity_correct(ref, est).tolist() == [True]

    def test_needs_two_reference_beats(self):
        with pytest.raises(TooFewBeatsError):
            continuity_correct(BeatSequence([1.0]), constant_beats(120, 4))

    def test_empty_estimate(self):
        assert continuity_correct(constant_beats(120, 4), BeatSequence([])).size == 0

    @given(ref_est_strategy())
    def test_matches_oracle(self, pair):
        ref_raw, est_raw = pair
        got = continuity_correct(BeatSequence(ref_raw), BeatSequence(est_raw))
        assert got.tolist() == oracles.oracle_continuity(ref_raw, est_raw)


class TestCmltAmlt:
    def test_identity(self):
        ref = constant_beats(120, 16)
        assert cmlt(ref, ref) == 1.0
        assert amlt(ref, ref) == 1.0

    def test_double_tempo_kills_cmlt_not_amlt(self):
        ref = constant_beats(120, 12)
        est = constant_beats(240, 23)
        # only the first estimate (phase-only rule) survives at the
        # annotated level; the double-tempo variant matches everything
        assert cmlt(ref, est) == pytest.approx(1 / 23)
        assert amlt(ref, est) == pytest.approx(1.0)

    def test_half_tempo_estimate(self):
        ref = constant_beats(120, 12)
        est = BeatSequence(ref.times[0::2])
        assert cmlt(ref, est) == pytest.approx(1 / 12)
        assert amlt(ref, est) == pytest.approx(1.0)

    def test_offbeat_estimate(self):
        ref = constant_beats(120, 12)
        est = BeatSequence(ref.times[:-1] + 0.25)
        # no estimate is ever in phase at the annotated level
        assert cmlt(ref, est) == 0.0
        assert amlt(ref, est) == pytest.approx(1.0)

    def test_overgeneration_penalized(self):
        ref = constant_beats(120, 10)
        extra = np.sort(np.concatenate([ref.times, ref.times[:-1] + 0.13]))
        est = BeatSequence(extra)
        assert cmlt(ref, est) <= 10 / 19

    @given(ref_est_strategy())
    def test_amlt_dominates_cmlt(self, pair):
        ref_raw, est_raw = pair
        ref, est = BeatSequence(ref_raw), BeatSequence(est_raw)
        assert amlt(ref, est) >= cmlt(ref, est) - 1e-12


class TestLCorrectFMeasure:
    def test_identity(self):
        ref = constant_beats(120, 10)
        assert l_correct_fmeasure(ref, ref) == (1.0, 1.0, 1.0)

    def test_half_offbeat_misses_only_last_beat(self):
        # the tapped track is verified through offbeat windows, whose
        # cover sets can never include the final reference beat
        ref = constant_beats(120, 10)
        est = BeatSequence(ref.times[:-1] + 0.25)
        recall, precision, f = l_correct_fmeasure(ref, est)
        assert recall == pytest.approx(9 / 10)
        assert precision == pytest.approx(1.0)
        assert f == pytest.approx(2 * 0.9 / 1.9)

    def test_scattered_estimate_scores_zero(self):
        ref = constant_beats(120, 10)
        est = BeatSequence(ref.times[: 1])
        recall, precision, f = l_correct_fmeasure(ref, est)
        assert (recall, precision, f) == (0.0, 0.0, 0.0)

    def test_needs_context_beats(self):
        with pytest.raises(TooFewBeatsError):
            l_correct_fmeasure(BeatSequence([0.0]), constant_beats(120, 4))


def matrix_from(rows):
    return CoverageMatrix.from_rows({Condition.parse(k): np.array(v) for k, v in rows.items()})


class TestAcrScores:
    def test_fractions(self):
        cm = matrix_from(
            {
                "onbeat": [True, True, False, False],
                "offbeat_half": [False, True, True, False],
            }
        )
        scores = acr_scores(cm)
        assert scores.per_condition[Condition.ONBEAT] == pytest.approx(0.5)
        assert scores.per_condition[Condition.OFFBEAT_HALF] == pytest.approx(0.5)
        assert scores.per_condition[Condition.HARMONIC_DOUBLE] == 0.0
        assert scores.acr_any == pytest.approx(0.75)
        assert scores.acr_offbeat == pytest.approx(0.5)

    def test_any_union_dominates(self, rng):
        for _ in range(25):
            n = int(rng.integers(1, 12))
            rows = {c: rng.random(n) < 0.4 for c in Condition}
            scores = acr_scores(CoverageMatrix.from_rows(rows))
            for c in Condition:
                assert scores.acr_any >= scores.per_condition[c]
            assert scores.acr_any >= scores.acr_offbeat
            assert 0.0 <= scores.acr_any <= 1.0


class TestMlsr:
    def test_single_level_no_switch(self):
        cm = matrix_from({"onbeat": [True] * 6})
        assert mlsr(cm) == 0.0

    def test_disjoint_adjacent_levels_switch(self):
        cm = matrix_from(
            {
                "onbeat": [True, True, False, False],
                "harmonic_double": [False, False, True, True],
            }
        )
        # one switch between beats 1 and 2, four covered beats
        assert mlsr(cm) == pytest.approx(0.25)

    def test_shared_condition_bridges(self):
        cm = matrix_from(
            {
                "onbeat": [True, True, True, True],
                "harmonic_double": [False, False, True, True],
            }
        )
        assert mlsr(cm) == 0.0

    def test_uncovered_beats_are_skipped(self):
        cm = matrix_from(
            {
                "onbeat": [True, True, False, False, False],
                "harmonic_triple": [False, False, False, True, True],
            }
        )
        # the gap at beat 2 does not count; the (1, 3) pair is a switch
        assert mlsr(cm) == pytest.approx(0.25)

    def test_empty_coverage(self):
        cm = matrix_from({"onbeat": [False, False, False]})
        assert mlsr(cm) == 0.0


class TestTempoStats:
    def test_mean_track_tempo(self):
        assert mean_track_tempo(constant_beats(120, 9)) == pytest.approx(120.0)
        assert mean_track_tempo(BeatSequence([0.0, 0.5, 1.5])) == pytest.approx(80.0)

    def test_constant_curve_fully_stable(self):
        assert stable_tempi_percentage(constant_beats(97, 40)) == 1.0

    def test_alternating_intervals_fully_unstable(self):
        times = np.cumsum([0.0] + [0.5, 0.6] * 10)
        assert stable_tempi_percentage(BeatSequence(times)) == 0.0

    def test_single_beat_raises(self):
        with pytest.raises(TooFewBeatsError):
            mean_track_tempo(BeatSequence([1.0]))


class TestEvaluateTrack:
    def test_identity_scores_perfectly(self):
        ref = constant_beats(120, 20)
        report = evaluate_track("demo", ref, ref)
        assert report.f1 == report.precision == report.recall == 1.0
        assert report.cmlt == report.amlt == 1.0
        assert report.l_correct_f == 1.0
        assert report.acr[Condition.ONBEAT] == 1.0
        assert report.acr_any == 1.0
        assert report.mlsr == 0.0

    def test_values_come_out_rounded(self, rng):
        ref = BeatSequence(random_times(rng, 14))
        est = BeatSequence(random_times(rng, 18))
        report = evaluate_track("t", ref, est, ToleranceParams(context=3))
        scalars = [
            report.f1, report.precision, report.recall, report.cmlt,
            report.amlt, report.l_correct_f, report.l_correct_p,
            report.l_correct_r, report.acr_any, report.acr_offbeat, report.mlsr,
        ]
        for value in scalars + list(report.acr.values()):
            assert value == round(value, 6)

    def test_coverage_and_report_agree(self):
        ref = constant_beats(120, 12)
        est = constant_beats(240, 23)
        report = evaluate_track("dbl", ref, est)
        cm = coverage_matrix(ref, est)
        scores = acr_scores(cm)
        assert report.acr_any == round(scores.acr_any, 6)
        assert report.acr[Condition.HARMONIC_DOUBLE] == 1.0
        assert report.acr[Condition.ONBEAT] == 0.0
