import json
import math

import pytest
from hypothesis import given, settings, strategies as st

from evtrenyi.errors import ConfigError
from evtrenyi.lab import (CSV_HEADER, ConvergenceRecord, ExperimentConfig, emit_csv, emit_plot_data,
                          load_config, read_csv, render_csv, resolve_domain, run_convergence)


def cfg(**kw):
    base = {"family": "uniform", "betas": [2.0], "ns": [100]}
    base.update(kw)
    return ExperimentConfig.from_dict(base)


def test_uniform_example():
    (rec,) = run_convergence(cfg())
    assert rec.h_gn == pytest.approx(-math.log(100 / 199), abs=1e-10)
    assert rec.h_gn == pytest.approx(0.68813, abs=1e-5)
    assert rec.h_limit == pytest.approx(math.log(2), abs=1e-15)
    assert rec.abs_error == pytest.approx(0.00501, abs=1e-5)
    assert rec.alpha == pytest.approx(1.0) and rec.error is None


def test_pareto_limit_value():
    recs = run_convergence(cfg(family="pareto", params=[1.0], ns=[100, 1000]))
    assert all(r.h_limit == pytest.approx(2 * math.log(2), abs=1e-6) for r in recs)
    assert recs[1].abs_error < recs[0].abs_error


def test_ordering_beta_major():
    recs = run_convergence(cfg(family="exponential", betas=[3.0, 1.5], ns=[10, 100]))
    assert [(r.beta, r.n) for r in recs] == [(3.0, 10), (3.0, 100), (1.5, 10), (1.5, 100)]


@pytest.mark.parametrize("bad", [
    {"betas": [2.0], "ns": [100]},
    {"family": "uniform", "betas": [2.0], "ns": [100], "typo": 1},
    {"family": "uniform", "betas": [2.0], "ns": [100, 100]},
    {"family": "uniform", "betas": [2.0], "ns": [0]},
    {"family": "uniform", "betas": [1.0], "ns": [10]},
    {"family": "uniform", "betas": [], "ns": [10]},
    {"family": "uniform", "betas": [2.0], "ns": [10], "domain": "normal"},
    {"family": "nope", "betas": [2.0], "ns": [10]},
    {"family": "uniform", "betas": [2.0], "ns": [10], "quad_rel_tol": 0},
    {"family": "uniform", "betas": [2.0], "ns": [10], "theorem_mode": "yes"},
    {"family": "pareto", "betas": [2.0], "ns": [10]},
])
def test_config_rejected(bad):
    with pytest.raises(ConfigError):
        ExperimentConfig.from_dict(bad).build_family()


def test_theorem_mode_gate():
    with pytest.raises(ConfigError, match="beta > 1"):
        cfg(betas=[0.8])
    loose = cfg(betas=[0.8], theorem_mode=False)
    (rec,) = run_convergence(loose)
    assert math.isfinite(rec.h_gn)


def test_domain_mismatch_and_hypotheses():
    with pytest.raises(ConfigError, match="classifies as weibull"):
        resolve_domain(cfg(domain="gumbel"))
    with pytest.raises(ConfigError, match="eventually decreasing"):
        run_convergence(cfg(family="reversed_power", params=[0.5]))
    with pytest.raises(ConfigError, match="not finite"):
        run_convergence(cfg(family="reversed_power", params=[0.5], betas=[3.0], theorem_mode=False))


def test_failed_cell_becomes_error_row(monkeypatch):
    from evtrenyi import lab
    from evtrenyi.errors import DivergenceError

    def boom(*a, **k):
        raise DivergenceError("synthetic")

    monkeypatch.setattr(lab, "limit_renyi_entropy", boom)
    (rec,) = run_convergence(cfg())
    assert rec.error == "synthetic" and math.isnan(rec.h_gn)
    assert render_csv([rec]).splitlines()[1].split(",")[2:] == ["2", "100", "nan", "nan", "nan", "nan"]


def test_csv_header_only(tmp_path):
    p = tmp_path / "empty.csv"
    emit_csv([], p)
    assert p.read_bytes() == (",".join(CSV_HEADER) + "\n").encode()


def test_csv_two_lines(tmp_path):
    p = tmp_path / "one.csv"
    emit_csv([ConvergenceRecord("uniform", 1.0, 2.0, 100, 0.1, 0.2, 0.1, 1e-12)], p)
    lines = p.read_text(encoding="utf-8").split("\n")
    assert lines == ["family,alpha,beta,n,h_gn,h_limit,abs_error,quad_error",
                     "uniform,1,2,100,0.10000000000000001,0.20000000000000001,0.10000000000000001,9.9999999999999998e-13", ""]


finite = st.floats(allow_nan=False, allow_infinity=False, width=64)
records = st.builds(
    ConvergenceRecord,
    family=st.sampled_from(["uniform", "pareto(1)", "exponential", "weibull_min(2)"]),
    alpha=st.one_of(st.none(), st.floats(0.01, 100)),
    beta=st.floats(1.01, 10),
    n=st.integers(1, 10 ** 9),
    h_gn=finite, h_limit=finite,
    abs_error=st.floats(0, 1e300), quad_error=st.floats(0, 1e300),
)


@settings(max_examples=50, deadline=None)
@given(st.lists(records, max_size=6))
def test_csv_round_trip(tmp_path_factory, recs):
    p = tmp_path_factory.mktemp("rt") / "x.csv"
    emit_csv(recs, p)
    back = read_csv(p)
    assert [r.row() for r in back] == [r.row() for r in recs]
    assert back == recs


def test_determinism_and_worker_independence():
    c = cfg(family="exponential", betas=[2.0, 3.0], ns=[100, 1000])
    a = render_csv(run_convergence(c))
    assert a == render_csv(run_convergence(c))
    assert a == render_csv(run_convergence(c, workers=4))


def test_plot_data(tmp_path):
    recs = run_convergence(cfg(ns=[10, 100]))
    p = tmp_path / "plot.csv"
    emit_plot_data(recs, p)
    lines = p.read_text().splitlines()
    assert lines[0] == "beta,n,abs_error" and len(lines) == 3 and lines[1].startswith("2,10,")


def test_load_config(tmp_path):
    p = tmp_path / "c.json"
    p.write_text(json.dumps({"family": "exponential", "betas": [2], "ns": [10]}))
    assert load_config(p).family == "exponential"
    p.write_text("{not json")
    with pytest.raises(ConfigError):
        load_config(p)
    with pytest.raises(OSError):
        load_config(tmp_path / "missing.json")


def test_shipped_config_loads():
    from pathlib import Path
    c = load_config(Path(__file__).resolve().parents[1] / "configs" / "exponential_beta2.json")
    assert c.ns == (100, 1000, 10000) and c.betas == (2.0,) and c.domain == "gumbel"
