import xml.etree.ElementTree as ET

import pytest

from beatcover import (
    BeatSequence,
    Condition,
    coverage_matrix,
    gen_activation,
    gen_estimate,
    gen_reference,
    render_coverage_svg,
    Scenario,
    Segment,
)

SVG = "{http://www.w3.org/2000/svg}"


def render_parsed(**kwargs):
    ref = gen_reference(120, 8.0)
    sc = Scenario(120, 8.0, (Segment(0, Condition.HARMONIC_DOUBLE),))
    est = gen_estimate(ref, sc)
    cm = coverage_matrix(ref, est)
    text = render_coverage_svg(cm, ref, **kwargs)
    return text, ET.fromstring(text), ref, est, cm


class TestRenderCoverageSvg:
    def test_is_well_formed_svg(self):
        text, root, *_ = render_parsed()
        assert root.tag == f"{SVG}svg"
        assert text.startswith("<svg")

    def test_one_group_per_condition_plus_unions(self):
        _, root, *_ = render_parsed()
        ids = {g.get("id") for g in root.iter(f"{SVG}g")}
        for condition in Condition:
            assert f"row-{condition.value}" in ids
        assert "row-offbeat_union" in ids
        assert "row-any" in ids
        assert "time-axis" in ids

    def test_covered_rows_have_bars_and_empty_rows_do_not(self):
        _, root, *_ = render_parsed()
        bars = {}
        for g in root.iter(f"{SVG}g"):
            gid = g.get("id") or ""
            if gid.startswith("row-"):
                bars[gid[4:]] = [
                    r for r in g.iter(f"{SVG}rect") if r.get("class") == "cover"
                ]
        # a pure double-tempo estimate: one continuous bar on its row and
        # on the any row, nothing on the onbeat row
        assert len(bars["harmonic_double"]) == 1
        assert len(bars["any"]) == 1
        assert bars["onbeat"] == []
        assert bars["offbeat_union"] == []

    def test_beats_panel_only_when_signals_given(self):
        _, bare_root, ref, est, cm = render_parsed()
        assert not any(g.get("id") == "beats-panel" for g in bare_root.iter(f"{SVG}g"))
        act = gen_activation(ref)
        text = render_coverage_svg(cm, ref, act=act, est=est)
        root = ET.fromstring(text)
        assert any(g.get("id") == "beats-panel" for g in root.iter(f"{SVG}g"))
        ref_ticks = [e for e in root.iter(f"{SVG}line") if e.get("class") == "ref-beat"]
        est_ticks = [e for e in root.iter(f"{SVG}line") if e.get("class") == "est-beat"]
        assert len(ref_ticks) == len(ref)
        assert len(est_ticks) == len(est)
        assert any(e.tag == f"{SVG}polyline" for e in root.iter())

    def test_identical_input_yields_identical_bytes(self):
        a, *_ = render_parsed()
        b, *_ = render_parsed()
        assert a == b

    def test_writes_file_when_path_given(self, tmp_path):
        ref = gen_reference(120, 4.0)
        cm = coverage_matrix(ref, ref)
        out = tmp_path / "cover.svg"
        text = render_coverage_svg(cm, ref, path=out)
        assert out.read_text(encoding="utf-8") == text

    def test_beat_count_mismatch_rejected(self):
        ref = gen_reference(120, 4.0)
        cm = coverage_matrix(ref, ref)
        with pytest.raises(ValueError):
            render_coverage_svg(cm, BeatSequence(ref.times[:-1]))

    def test_split_coverage_renders_multiple_bars(self):
        ref = gen_reference(120, 8.0)  # 16 beats
        sc = Scenario(
            120, 8.0,
            (Segment(0, Condition.ONBEAT), Segment(8, Condition.OFFBEAT_HALF)),
        )
        est = gen_estimate(ref, sc)
        cm = coverage_matrix(ref, est)
        root = ET.fromstring(render_coverage_svg(cm, ref))
        for g in root.iter(f"{SVG}g"):
            if g.get("id") == "row-onbeat":
                bars = [r for r in g.iter(f"{SVG}rect") if r.get("class") == "cover"]
                assert len(bars) == 1
