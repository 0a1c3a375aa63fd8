import json
import os
import subprocess

import pytest

import qhm


def params(c=1, mu="1/4", nu="1/6"):
    return qhm.Params(c, mu, nu)


def test_params_roundtrip():
    pr = qhm.Params(1, "1/2*sqrt(2)", "1/3")
    assert pr.c == 1
    assert pr.d == 2
    assert pr.mu == "1/2*sqrt(2)"
    assert "Params" in repr(pr)


def test_unit_trace_is_exact():
    u = qhm.Element.unit(params())
    assert u.support() == [0]
    assert qhm.trace(u, n=128) == 1.0 + 0.0j


def test_element_algebra():
    pr = params()
    a = qhm.Element.single(pr, 1, "abs(sinpi(x))")
    aa = a * a.adjoint()
    assert 0 in aa.support()
    tau = qhm.trace(aa, n=256)
    assert abs(tau - 0.5) < 1e-9

    b = qhm.Element.from_json(a.to_json())
    assert b.support() == a.support()
    assert b.value(1, "1/3", "1/7") == a.value(1, "1/3", "1/7")


def test_parse_errors_are_value_errors():
    with pytest.raises(ValueError):
        qhm.Element.single(params(), 0, "e(x+")
    with pytest.raises(ValueError):
        qhm.Params(1, "1/0", "0")


def test_trace_range_canonical_form():
    g = qhm.trace_range(params())
    assert g["d"] == 0
    assert g["D"] == 6
    assert g["rows"] == [[1]]
    assert g["text"] == "(1/6)Z"

    h = qhm.trace_range(qhm.Params(1, "1/2*sqrt(2)", "1/3"))
    assert h["d"] == 2
    assert h["D"] == 3
    assert h["rows"] == [[1, 0], [0, 3]]


def test_isomorphism_verdicts():
    p1 = qhm.Params(1, "1/2*sqrt(2)", "1/3")
    p2 = qhm.Params(1, "1/3+1/2*sqrt(2)", "1/3")  # T-image of p1
    assert qhm.decide_isomorphism(p1, p2)["kind"] == "isomorphic"
    p3 = qhm.Params(2, "1/2*sqrt(2)", "1/3")
    assert qhm.decide_isomorphism(p1, p3)["kind"] == "not-isomorphic"
    rational = qhm.decide_isomorphism(params(), qhm.Params(1, "1/6", "1/4"))
    assert rational["kind"] == "rational-orbit-only"
    assert rational["orbit_equal"] is True


def test_norm_bounds_monotone():
    a = qhm.Element.single(params(), 1, "e(0x+1y+0)")
    bounds = qhm.norm_lower_bound(a, grids=[2, 4], cutoffs=[2, 3])
    assert len(bounds) == 2
    assert bounds[0] <= bounds[1] <= 1.0 + 1e-12

    unit = qhm.norm_lower_bound(qhm.Element.unit(params()), grids=[4], cutoffs=[1])
    assert unit == [1.0]


def test_verify_reports_deterministic():
    pr = qhm.Params(2, "1/3", "1/5")
    r1 = qhm.verify_cocycle(pr, seed=9, samples=50)
    r2 = qhm.verify_cocycle(pr, seed=9, samples=50)
    assert r1 == r2
    report = json.loads(r1)
    assert report["pass"] is True
    assert report["seed"] == 9


cli = pytest.mark.skipif("QHM_CLI" not in os.environ, reason="QHM_CLI not set")


@cli
def test_cli_trace_range():
    out = subprocess.run(
        [os.environ["QHM_CLI"], "trace-range", "--c", "1", "--mu", "1/4", "--nu", "1/6"],
        capture_output=True,
        text=True,
    )
    assert out.returncode == 0
    doc = json.loads(out.stdout)
    assert doc["D"] == 6
    assert doc["H"] == [[1]]


@cli
def test_cli_usage_exit_code():
    out = subprocess.run([os.environ["QHM_CLI"], "bogus"], capture_output=True)
    assert out.returncode == 2
