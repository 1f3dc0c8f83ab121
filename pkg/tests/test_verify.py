import ast
import math
from dataclasses import replace
from pathlib import Path

import pytest

import kdfkit
from kdfkit.catalog import IdentityInstance, lhs_spec
from kdfkit.errors import MissingParam, UnknownIdentity
from kdfkit.series import EvalResult, KdFSpec, Status
from kdfkit.verify import (
    REL_ERR_FLOOR,
    SweepConfig,
    Verdict,
    _compare,
    evaluate_side,
    precheck,
    run_sweep,
    sample_params,
    summarize,
    verify_one,
)


def test_theorem_four_passes():
    rec = verify_one(IdentityInstance("thm3.4b", i=0, alpha=1, beta=4), 1e-8)
    assert rec.verdict is Verdict.PASS
    assert rec.lhs.value == pytest.approx(2.0, rel=1e-9)
    assert rec.rhs.value == pytest.approx(2.0, rel=1e-13)


def test_theorem_one_printed_fails_and_corrected_passes():
    rec = verify_one(IdentityInstance("thm3.1a", i=0, alpha=0.3, beta=1.2, epsilon=0.4), 1e-8)
    assert rec.interpretation == "printed"
    assert rec.verdict is Verdict.FAIL
    # the printed right side is exactly twice the value of the left side
    assert rec.rhs.value == pytest.approx(2 * rec.lhs.value, rel=1e-8)
    rhs, rel, verdict = rec.alternatives["corrected"]
    assert verdict is Verdict.PASS and rel <= 1e-8


def test_theorem_one_reduction_passes():
    cor = kdfkit.corollary_instance(IdentityInstance("thm3.1a", i=0, alpha=0.3, beta=1.2, epsilon=0.4))
    assert verify_one(cor).verdict is Verdict.PASS


def test_divergent_edge_is_inconclusive():
    rec = verify_one(IdentityInstance("thm3.13a", i=1, alpha=-4.7, gamma=0.6), 1e-8)
    assert rec.verdict is Verdict.INCONCLUSIVE
    assert rec.lhs.status is Status.INCONCLUSIVE
    assert rec.reason
    assert math.isnan(rec.rel_err)


def test_invalid_instances_raise():
    with pytest.raises(MissingParam):
        verify_one(IdentityInstance("thm3.4b", i=0, alpha=1))
    with pytest.raises(UnknownIdentity):
        verify_one(IdentityInstance("thm0.0a", i=0, alpha=1))
    with pytest.raises(KeyError):
        verify_one(IdentityInstance("thm3.4b", i=0, alpha=1, beta=4), interpretation="corrected")


def test_sampler_avoids_vanishing_right_side():
    # beta = 2 puts a denominator Gamma argument on a pole, so the right side is exactly 0
    # and the floored relative error magnifies rounding noise in the left side
    rec = verify_one(IdentityInstance("thm3.4b", i=0, alpha=1, beta=2))
    assert rec.rhs.value == 0.0 and abs(rec.lhs.value) < 1e-15
    assert not precheck(IdentityInstance("thm3.4b", i=0, alpha=1, beta=2.03))[0]


def ok(v):
    return EvalResult(v, 0.0, 1, Status.CONVERGED)


def test_rel_err_uses_floor():
    rel, verdict, _ = _compare(ok(1e-20), ok(0.0), 1e-8)
    assert rel == pytest.approx(1e-20 / REL_ERR_FLOOR)
    assert verdict is Verdict.FAIL
    rel, verdict, _ = _compare(ok(1e-40), ok(0.0), 1e-8)
    assert rel == pytest.approx(1e-10) and verdict is Verdict.PASS
    rel, verdict, _ = _compare(ok(0.0), ok(0.0), 1e-8)
    assert rel == 0.0 and verdict is Verdict.PASS


def test_inconclusive_side_never_fails():
    bad = EvalResult(1.0, math.inf, 5, Status.INCONCLUSIVE, "x")
    assert _compare(bad, ok(7.0), 1e-8)[1] is Verdict.INCONCLUSIVE
    assert _compare(ok(7.0), bad, 1e-8)[1] is Verdict.INCONCLUSIVE


def test_sampling_is_deterministic_and_keyed():
    a = sample_params("thm3.2a", 1, 3, 42)
    assert a == sample_params("thm3.2a", 1, 3, 42)
    assert a != sample_params("thm3.2a", 1, 4, 42)
    assert a != sample_params("thm3.2a", 1, 3, 43)


def test_samples_pass_precheck():
    for k in range(10):
        params, accepted, _ = sample_params("thm3.11a", 2, k, 0)
        if accepted:
            assert precheck(IdentityInstance("thm3.11a", 2, params))[0]


def test_sweep_counts_and_order():
    res = run_sweep(SweepConfig(ids=("lw2.1", "lw2.2"), samples=10, seed=7))
    assert len(res.records) == 20
    assert [r.id for r in res.records] == ["lw2.1"] * 10 + ["lw2.2"] * 10
    assert [s.id for s in res.summary] == ["lw2.1", "lw2.2"]


def test_reduction_one_sweep_all_pass():
    res = run_sweep(SweepConfig(ids=("lw2.1",), samples=50, seed=0))
    assert len(res.records) == 50
    assert all(r.verdict is Verdict.PASS for r in res.records)


def test_sweep_is_repeatable():
    cfg = SweepConfig(ids=("thm3.3a", "thm3.7b"), i_max=2, samples=5, seed=42)
    a, b = run_sweep(cfg), run_sweep(cfg)
    assert [(r.params, r.lhs, r.rhs, r.verdict) for r in a.records] == \
           [(r.params, r.lhs, r.rhs, r.verdict) for r in b.records]


def test_parallel_sweep_matches_serial():
    cfg = SweepConfig(ids=("thm3.3a", "lw2.3"), i_max=1, samples=6, seed=3)
    serial = run_sweep(cfg, workers=1)
    parallel = run_sweep(cfg, workers=3)
    assert [(r.id, r.i, r.params, r.lhs, r.rhs) for r in serial.records] == \
           [(r.id, r.i, r.params, r.lhs, r.rhs) for r in parallel.records]


def test_misprint_summary_flags():
    res = run_sweep(SweepConfig(ids=("thm3.1a", "thm3.4b"), samples=10, seed=1))
    rows = {s.id: s for s in res.summary}
    assert rows["thm3.1a"].suspected_misprint
    assert "corrected" in rows["thm3.1a"].passing_interpretations()
    assert rows["thm3.4b"].verified and not rows["thm3.4b"].suspected_misprint


def test_summary_counts_interpretations():
    res = run_sweep(SweepConfig(ids=("thm3.15a",), samples=10, seed=2))
    row = res.summary[0]
    assert set(row.by_interpretation) == {"alpha-substituted", "alpha-dropped"}
    assert row.passing_interpretations() == ["alpha-substituted"]
    assert sum(row.by_interpretation["alpha-dropped"]) == 10


def test_summarize_empty():
    (row,) = summarize([], ["lw2.1"])
    assert row.conclusive == 0 and row.pass_rate is None and not row.verified


def test_config_validation():
    with pytest.raises(ValueError):
        SweepConfig(samples=0)
    with pytest.raises(ValueError):
        SweepConfig(tolerance=1e-12, rel_tol=1e-12)
    with pytest.raises(ValueError):
        SweepConfig(ids="everything")
    with pytest.raises(ValueError):
        SweepConfig(i_max=9)
    with pytest.raises(UnknownIdentity):
        SweepConfig(ids=("lw9.9",))
    with pytest.raises(ValueError):
        SweepConfig.from_dict({"ids": "all", "colour": "blue"})


def test_config_round_trip():
    cfg = SweepConfig(ids=("lw2.1", "thm3.2b"), i_max=2, samples=3, seed=99)
    assert SweepConfig.from_dict(cfg.to_dict()) == cfg
    assert SweepConfig.from_dict(SweepConfig().to_dict()) == SweepConfig()


def test_jobs_skip_offsets_for_reductions():
    jobs = SweepConfig(ids=("lw2.1", "thm3.2a"), i_max=2, samples=2).jobs()
    assert jobs == [("lw2.1", 0, 0), ("lw2.1", 0, 1)] + [("thm3.2a", i, k) for i in range(3) for k in range(2)]


def _imports(module: str) -> set[str]:
    src = Path(kdfkit.__file__).with_name(module + ".py").read_text()
    names = set()
    for node in ast.walk(ast.parse(src)):
        if isinstance(node, ast.ImportFrom):
            names.add(node.module or "")
            names.update(a.name for a in node.names)
        elif isinstance(node, ast.Import):
            names.update(a.name for a in node.names)
    return names


@pytest.mark.parametrize("module", ["gamma", "accel", "series", "catalog", "verify"])
def test_left_side_path_avoids_closed_forms(module):
    assert not any("theorems" in n for n in _imports(module))


def test_evaluate_side_handles_both_shapes():
    f3 = lhs_spec(IdentityInstance("lw2.4", alpha=0.5, beta=2, gamma=0.3, epsilon=0.7, x=0.4))
    as_kdf = replace(f3, f3=None, kdf=f3.as_kdf())
    assert evaluate_side(f3).value == pytest.approx(evaluate_side(as_kdf).value, rel=1e-9)
    assert evaluate_side(kdfkit.SideSpec(kdf=KdFSpec(x=0.1, y=0.2))).value == pytest.approx(math.exp(0.3))
