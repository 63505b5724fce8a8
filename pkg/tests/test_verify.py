import json
from pathlib import Path

import pytest

from magmas import build
from magmas.preorder import PreOrder, format_preorder
from magmas.verify import (ConfigError, Counterexample, SUITES, SuiteConfig,
                           render_report, replay, report_to_json, run_suite)

GOLDEN = Path(__file__).parent / "golden" / "report_max2.txt"


def strip_timing(text):
    return "\n".join(l for l in text.splitlines()
                     if not l.startswith("wall_time_s:"))


def break_closure(p):
    """Turn the discrete 3-antichain into an unclosed 3-cycle."""
    if p.n == 3 and all(p.pred[b] == 1 << b for b in range(3)):
        a, b, c = 1, 2, 4
        return PreOrder(p.labels, (a | c, a | b, b | c))
    return p


@pytest.fixture(scope="module")
def small_report():
    return run_suite(SuiteConfig(max_size=2))


def test_all_suites_pass(small_report):
    assert small_report.passed
    assert not small_report.failures


def test_every_registered_suite_reported(small_report):
    assert [r.suite_id for r in small_report.results] == list(SUITES)
    assert all(not r.skipped for r in small_report.results)


def test_model_counts(small_report):
    finite = {s.suite_id for s in SUITES.values() if s.scope == "finite"}
    for r in small_report.results:
        if r.suite_id in finite:
            assert r.models_checked == 5  # 1 + 4 labeled models
        else:
            assert r.models_checked >= 1


def test_model_counts_at_three():
    report = run_suite(SuiteConfig(suites=("closure-idempotence",), max_size=3))
    checked = {r.suite_id: r for r in report.results}
    assert checked["closure-idempotence"].models_checked == 34  # 1 + 4 + 29


def test_model_counts_at_default_size():
    report = run_suite(SuiteConfig(suites=("strict-part-laws",)))
    checked = {r.suite_id: r for r in report.results}
    assert checked["strict-part-laws"].models_checked == 389  # 1 + 4 + 29 + 355
    assert report.passed


def test_unselected_suites_marked_skipped():
    report = run_suite(SuiteConfig(suites=("strict-part-laws",), max_size=1))
    by_id = {r.suite_id: r for r in report.results}
    assert not by_id["strict-part-laws"].skipped
    assert by_id["minimal-open-characterizations"].skipped
    assert len(report.results) == len(SUITES)  # nothing silently absent
    assert report.passed


def test_report_deterministic():
    a = render_report(run_suite(SuiteConfig(max_size=2)))
    b = render_report(run_suite(SuiteConfig(max_size=2)))
    assert strip_timing(a) == strip_timing(b)


def test_report_matches_golden(small_report):
    text = render_report(small_report, timing=False)
    if not text.endswith("\n"):
        text += "\n"
    assert text == GOLDEN.read_text()


def test_config_validation():
    with pytest.raises(ConfigError):
        run_suite(SuiteConfig(max_size=6))
    with pytest.raises(ConfigError):
        run_suite(SuiteConfig(depth=0))
    with pytest.raises(ConfigError):
        run_suite(SuiteConfig(suites=("no-such-suite",)))
    with pytest.raises(ConfigError):
        run_suite(SuiteConfig(symbolic_depth=1))


def test_injected_fault_fails_with_counterexample():
    cfg = SuiteConfig(suites=("minimal-open-characterizations",), max_size=3)
    report = run_suite(cfg, _model_hook=break_closure)
    assert not report.passed
    [cx] = report.failures
    assert cx.suite == "minimal-open-characterizations"
    assert cx.witness["brute"] != cx.witness["cone"]
    assert "atoms:" in cx.model_text  # renders as feedable input
    assert cx.rows  # raw relation for exact replay


def test_replay_reproduces_verdicts():
    cfg = SuiteConfig(suites=("minimal-open-characterizations",), max_size=3)
    report = run_suite(cfg, _model_hook=break_closure)
    blob = report.failures[0].to_blob()
    assert json.loads(json.dumps(blob)) == blob  # serializable
    assert replay(blob) is False
    assert replay(blob, SuiteConfig(seed=123)) is False  # seed-independent

    chain = build("abc", [("a", "b"), ("b", "c")])
    passing = dict(blob, labels=list(chain.labels), rows=list(chain.pred),
                   model_text=format_preorder(chain))
    assert replay(passing) is True


def test_replay_rejects_malformed_blobs():
    with pytest.raises(ValueError):
        replay({"suite": "no-such-suite", "model": "x"})
    with pytest.raises(ValueError):
        Counterexample.from_blob({"model": "missing suite"})
    with pytest.raises(ValueError):
        replay({"suite": "closure-idempotence", "model": "n=1#0",
                "labels": [], "rows": []})


def test_replay_symbolic_witness():
    blob = {
        "suite": "generator-subset-semantics",
        "model": "prefix",
        "witness": {"g1": ["01"], "g2": ["0"]},
    }
    assert replay(blob) is True  # pr(01) really is below pr(0)


def test_seeded_suites_carry_concrete_witnesses():
    for sid in ("limit-partition", "union-criterion", "magma-set-atom-trichotomy"):
        assert SUITES[sid].recheck is not None


def test_cap_exceeded_noted_not_fatal():
    cfg = SuiteConfig(suites=("hierarchy-levels",), max_size=3, depth=4)
    report = run_suite(cfg)
    res = {r.suite_id: r for r in report.results}["hierarchy-levels"]
    assert "cap exceeded" in res.note  # antichain-3 level 3 has 81 elements
    assert report.passed  # reported per-suite, not a failure


def test_json_report_shape(small_report):
    blob = report_to_json(small_report)
    assert blob["passed"] is True
    assert blob["config"]["max_size"] == 2
    assert len(blob["results"]) == len(SUITES)
    json.dumps(blob)  # round-trippable


def test_render_shows_counterexamples():
    cfg = SuiteConfig(suites=("minimal-open-characterizations",), max_size=3)
    text = render_report(run_suite(cfg, _model_hook=break_closure))
    assert "status: fail" in text
    assert "counterexample_1:" in text
    assert "model_text: |" in text
