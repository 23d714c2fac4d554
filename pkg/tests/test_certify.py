import math

import pytest
from hypothesis import given, settings, strategies as st

from rsquad.certify import (
    CSV_COLUMNS, Certifier, GridSpec, HypothesisError, PUBLISHED_INTEGRAL_SECOND_EXTREMAL, certify_one,
    sharpness_suite, sweep,
)
from rsquad.rules import NodeTriple


def test_soundness_example():
    c = certify_one("power:r=0.5", "poly:1x", (0.25, 0.5, 0.75), "thm1", p=1.0)
    assert c.bound == pytest.approx(0.5, rel=1e-15)
    assert c.remainder_abs < c.bound
    assert c.verdict == "holds"


@pytest.mark.parametrize("r", [0.25, 0.5, 1.0])
def test_first_extremal_is_equality(r):
    c = certify_one(f"power:r={r}", "heaviside0", (0.5, 1.0, 1.0), "thm1")
    assert c.oracle_method == "exact-step"
    assert c.remainder_abs == pytest.approx(0.5**r, abs=1e-15)
    assert c.bound == pytest.approx(0.5**r, abs=1e-15)
    assert c.verdict == "equality"


def test_constant_integrand_zero_bound():
    c = certify_one("const:c=2", "sine:freq=5", (0.1, 0.6, 0.9), "thm1")
    assert c.bound == 0.0 and c.verdict == "equality"


@pytest.mark.parametrize("thm, f, u", [
    ("thm2", "identity", "heaviside1"),      # step integrator: no Lipschitz constant
    ("thm1", "heaviside1", "identity"),      # step integrand: no Hölder constant
    ("thm3", "identity", "identity"),        # p = 1
    ("eq3.6", "identity", "square"),         # integrator must be a power
])
def test_hypothesis_mismatch(thm, f, u):
    with pytest.raises(HypothesisError):
        certify_one(f, u, (0.25, 0.5, 0.75), thm)


def test_required_order_is_checked():
    with pytest.raises(HypothesisError):
        certify_one("power:r=0.5", "identity", (0.25, 0.5, 0.75), "thm1", r=1.0)
    assert certify_one("power:r=0.5", "identity", (0.25, 0.5, 0.75), "thm1", r=0.5).verdict == "holds"


def test_ordering_required_for_middle_theorems():
    with pytest.raises(HypothesisError):
        certify_one("identity", "identity", (0.5, 0.2, 0.8), "thm1")
    assert certify_one("identity", "identity", (0.5, 0.2, 0.8), "thm5").verdict in ("holds", "equality")


def test_thm3_uses_class_member():
    c = certify_one("up1", "identity", (0.25, 0.5, 0.75), "thm3", p=2.0)
    assert c.verdict == "holds"
    assert c.notes["f_derivative_norm"] > 0


@pytest.mark.parametrize("thm", ["thm1", "thm4", "thm2", "thm5", "lemma1", "lemma2", "cor4", "eq3.7"])
def test_smooth_pair_all_theorems(thm):
    c = certify_one("power:r=0.5" if thm in ("thm1", "thm2", "cor4") else "square",
                    "identity" if thm != "thm4" else "power:r=0.5", (0.2, 0.5, 0.9), thm)
    assert c.verdict != "violated"


def test_sweep_example_no_violations():
    rep = sweep("power:r=0.5", "identity", "thm1", GridSpec.uniform(0.0, 1.0, 21))
    assert rep.violation_count == 0
    assert len(rep.certificates) == 1771  # t0 <= x <= t1 on 21 points: C(23, 3)
    assert rep.to_csv().splitlines()[0] == ",".join(CSV_COLUMNS)


def test_sweep_reports_proof_safe_bound():
    rep = sweep("power:r=0.5", "risefall", "thm1", GridSpec.uniform(0.0, 1.0, 11), p=2.0)
    assert rep.certificates
    assert all(c.bound_safe is not None and c.bound_safe >= 0 for c in rep.certificates)


def test_degenerate_grid_is_finite():
    grid = GridSpec.parse("t0:0.5:0.5:1,x:0.5:0.5:1,t1:0.5:0.5:1", 0.0, 1.0)
    for thm in ("thm1", "thm2", "thm4", "thm5", "lemma1", "lemma2"):
        rep = sweep("identity", "identity", thm, grid, p=2.0 if thm in ("thm2", "thm5", "lemma2") else 1.0)
        c, = rep.certificates
        assert all(math.isfinite(v) for v in (c.bound, c.remainder, c.slack))


def test_grid_parse_and_errors():
    g = GridSpec.parse("t0:0:1:3,x:0:1:5,t1:0:1:2", 0.0, 1.0)
    assert len(list(g.points())) == 30
    with pytest.raises(ValueError):
        GridSpec.parse("t0:0:1", 0.0, 1.0)


def test_sweep_is_deterministic():
    g = GridSpec.uniform(0.0, 1.0, 7)
    a = sweep("sine:freq=5", "up1", "thm2", g, p=2.0).to_csv()
    b = sweep("sine:freq=5", "up1", "thm2", g, p=2.0).to_csv()
    assert a == b


def test_csv_round_trips_floats():
    rep = sweep("sine:freq=5", "up1", "thm2", GridSpec.uniform(0.0, 1.0, 5), p=2.0)
    rows = rep.to_csv().splitlines()[1:]
    for row, c in zip(rows, rep.certificates):
        cells = row.split(",")
        assert float(cells[4]) == c.integral
        assert float(cells[6]) == c.bound


def test_sweep_proof_safe_below_stated_at_p1():
    rep = sweep("power:r=0.5", "sine:freq=7", "thm1", GridSpec.uniform(0.0, 1.0, 11))
    assert all(c.bound_safe <= c.bound * (1 + 1e-12) for c in rep.certificates)
    rep = sweep("sine:freq=7", "power:r=0.5", "thm4", GridSpec.uniform(0.0, 1.0, 11))
    assert all(c.bound_safe <= c.bound * (1 + 1e-12) for c in rep.certificates)


def test_sharpness_suite():
    certs = sharpness_suite()
    verdicts = [(c.notes["construction"], c.notes["r"], c.verdict) for c in certs]
    assert all(v == "equality" for k, _, v in verdicts if k in ("thm1-first", "thm4"))
    second = certs[-1]
    assert second.notes["construction"] == "thm1-second"
    assert second.integral == 1.0
    assert second.notes["published_integral"] == PUBLISHED_INTEGRAL_SECOND_EXTREMAL


@settings(max_examples=40, deadline=None)
@given(t0=st.floats(0, 1), x=st.floats(0, 1), t1=st.floats(0, 1),
       pair=st.sampled_from([("power:r=0.5", "identity"), ("sine:freq=4", "heaviside0"), ("up1", "risefall")]))
def test_thm1_dominance_random_nodes(t0, x, t1, pair):
    t0, x, t1 = sorted((t0, x, t1))
    c = certify_one(*pair, (t0, x, t1), "thm1")
    assert c.verdict != "violated"


def test_certifier_caches_oracle():
    cert = Certifier("square", "identity")
    a = cert.certify(NodeTriple(0.1, 0.5, 0.9, 0, 1), "thm2")
    b = cert.certify(NodeTriple(0.2, 0.5, 0.8, 0, 1), "thm2")
    assert a.integral == b.integral
