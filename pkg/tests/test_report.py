import json

import pytest

from kkw.pipeline import Path
from kkw.report import STEPS, case_labels, verify


@pytest.fixture(scope="module", params=[3, 4, 6])
def report(request):
    return request.param, verify(request.param)


def test_entry_layout(report):
    n, entries = report
    labels = case_labels(n) + ([] if n == 3 else ["total"])
    for path in Path:
        assert [e.label for e in entries if e.path is path] == labels


def test_json_shape(report):
    _, entries = report
    for e in entries:
        js = e.to_json()
        assert set(js) == {"label", "path", "phi", "paper_value", "match", "first_divergent_step",
                           "components", "source", "flags"}
        assert set(js["components"]) == {"T", "N"}
        assert js["match"] in ("exact", "mismatch")
        json.dumps(js)


def test_steps_follow_pipeline_order(report):
    _, entries = report
    for e in entries:
        for c in e.components:
            idx = [STEPS.index(s) for s in c.divergent_steps]
            assert idx == sorted(idx)
        assert e.first_divergent_step in STEPS + ("none",)


def test_exact_entries_have_no_divergence(report):
    _, entries = report
    for e in entries:
        if e.match == "exact":
            assert e.first_divergent_step == "none"
        else:
            assert e.first_divergent_step != "none"


def test_transcribed_path_never_blames_the_integrand(report):
    _, entries = report
    for e in entries:
        if e.path is Path.TRANSCRIBED:
            assert all("trace_integrand" not in c.divergent_steps for c in e.components)


def test_three_dimensional_divergence_is_in_the_residue():
    (entry,) = [e for e in verify(3, paths=(Path.TRANSCRIBED,))]
    assert entry.first_divergent_step == "residue_evaluation"
    for c in entry.components:
        assert c.divergent_steps[0] == "residue_evaluation"
        assert c.reference_chain_value is not None and c.reference_chain_value != c.paper_value


def test_reference_total_consistency_flag():
    six = next(e for e in verify(6, paths=(Path.FULL,)) if e.label == "total")
    assert six.flags == ["reference cases minus reference total = (-3/2)*HP*PI*OMEGA4*N"]


def test_vanishing_case_matches():
    for n in (4, 6):
        first = verify(n)[0]
        assert first.label == "aI" and first.match == "exact"


def test_both_sphere_readings_reported():
    e = next(e for e in verify(4, paths=(Path.FULL,)) if e.label == "aIII")
    t = next(c for c in e.components if c.name == "T")
    assert t.engine_value != t.engine_value_reference_sphere
    assert "OMEGA3" in t.engine_value_reference_sphere.canonical()
    assert "OMEGA2" in t.engine_value.canonical()
