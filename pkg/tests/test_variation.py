import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rsquad.catalog import build_map
from rsquad.variation import (
    VariationError, derivative_norm, max_power_sum, oscillation, p_variation, witness_csv, witness_rows,
)
from conftest import CATALOG_01, SMOOTH_01, TWO_PI

P_LADDER = (1.0, 1.5, 2.0, 4.0, 10.0)


def brute_power_sum(v, p):
    """Exhaustive search over subsequences that keep both ends."""
    inner = range(1, len(v) - 1)
    best = 0.0
    for k in range(len(v) - 1):
        for sub in itertools.combinations(inner, k):
            idx = (0, *sub, len(v) - 1)
            best = max(best, sum(abs(v[j] - v[i]) ** p for i, j in zip(idx, idx[1:])))
    return best


@pytest.mark.parametrize("spec, c, d, expected", [
    ("identity", 0.0, 1.0, 1.0),
    ("sine", 0.0, TWO_PI, 2.0),
    ("heaviside0", 0.0, 1.0, 1.0),
])
def test_oscillation_examples(spec, c, d, expected):
    m = build_map(spec, 0.0, d if spec == "sine" else 1.0)
    assert oscillation(m, c, d).value == pytest.approx(expected, abs=1e-15)


@pytest.mark.parametrize("p", P_LADDER)
def test_identity_variation_is_one(p):
    est = p_variation(build_map("identity"), p, 0.0, 1.0)
    assert est.value == 1.0 and est.is_exact


@pytest.mark.parametrize("p", P_LADDER)
def test_heaviside_variation_is_one(p):
    assert p_variation(build_map("heaviside0"), p, 0.0, 1.0).value == pytest.approx(1.0, abs=1e-15)


@pytest.mark.parametrize("p", P_LADDER)
def test_two_jump_indicator(p):
    est = p_variation(build_map("ends"), p, 0.0, 1.0)
    assert est.method == "exact-step"
    assert est.value == pytest.approx(2 ** (1 / p), rel=1e-14)


def test_sine_derivative_norm_is_sqrt_pi():
    m = build_map("sine", 0.0, TWO_PI)
    dn = p_variation(m, 2.0, 0.0, TWO_PI, method="derivative-norm")
    assert dn.value == pytest.approx(math.sqrt(math.pi), abs=1e-6)
    assert not dn.is_exact  # the L^p norm of f' is not the p-variation for p > 1


def test_sine_two_variation_exact_value():
    # turning values 0, 1, -1, 0: best partition 0 -> 1 -> -1 -> 0 gives 1 + 4 + 1
    m = build_map("sine", 0.0, TWO_PI)
    est = p_variation(m, 2.0, 0.0, TWO_PI)
    assert est.method == "exact-extremal"
    assert est.value == pytest.approx(math.sqrt(6.0), rel=1e-14)
    assert p_variation(m, 2.0, 0.0, TWO_PI, method="partition").value == pytest.approx(math.sqrt(6.0), rel=1e-6)


def test_risefall_two_variation():
    m = build_map("risefall")
    assert p_variation(m, 2.0, 0.0, 1.0).value == pytest.approx(math.sqrt(2.0), rel=1e-15)
    halves = p_variation(m, 2.0, 0.0, 0.5).value + p_variation(m, 2.0, 0.5, 1.0).value
    assert halves == pytest.approx(2.0)


def test_p_infinity_routes_to_oscillation():
    est = p_variation(build_map("sine", 0.0, TWO_PI), math.inf, 0.0, TWO_PI)
    assert est.method == "oscillation" and est.value == pytest.approx(2.0)


def test_rejects_small_p_and_bad_interval():
    m = build_map("identity")
    with pytest.raises(VariationError):
        p_variation(m, 0.5, 0.0, 1.0)
    with pytest.raises(VariationError):
        p_variation(m, 1.0, 0.8, 0.2)
    with pytest.raises(VariationError):
        p_variation(m, 1.0, 0.0, 2.0)


def test_degenerate_interval():
    assert p_variation(build_map("sine"), 2.0, 0.3, 0.3).value == 0.0


@pytest.mark.parametrize("spec", CATALOG_01)
def test_decreasing_in_p(spec):
    m = build_map(spec)
    vals = [p_variation(m, p, 0.0, 1.0).value for p in P_LADDER]
    assert all(v2 <= v1 * (1 + 1e-12) + 1e-15 for v1, v2 in zip(vals, vals[1:]))


@pytest.mark.parametrize("spec", CATALOG_01)
def test_sandwich(spec):
    m = build_map(spec)
    osc = oscillation(m, 0.0, 1.0).value
    v1 = p_variation(m, 1.0, 0.0, 1.0).value
    for p in P_LADDER:
        vp = p_variation(m, p, 0.0, 1.0).value
        assert osc <= vp * (1 + 1e-12) + 1e-15
        assert vp <= v1 * (1 + 1e-12) + 1e-15


@pytest.mark.parametrize("spec", CATALOG_01)
@pytest.mark.parametrize("x", [0.0, 0.1, 0.3, 0.5, 0.77, 1.0])
def test_total_variation_additive(spec, x):
    m = build_map(spec)
    whole = p_variation(m, 1.0, 0.0, 1.0).value
    parts = p_variation(m, 1.0, 0.0, x).value + p_variation(m, 1.0, x, 1.0).value
    assert parts == pytest.approx(whole, abs=1e-12)


@pytest.mark.parametrize("spec", SMOOTH_01)
def test_partition_close_to_derivative_norm_at_p1(spec):
    m = build_map(spec)
    exact = derivative_norm(m, 1.0, 0.0, 1.0)
    lower = p_variation(m, 1.0, 0.0, 1.0, method="partition", n_samples=1001).value
    assert lower <= exact * (1 + 1e-9)
    assert lower >= 0.99 * exact


@pytest.mark.parametrize("spec", CATALOG_01)
@pytest.mark.parametrize("p", [1.0, 2.0, 4.0])
def test_partition_never_exceeds_exact(spec, p):
    m = build_map(spec)
    exact = p_variation(m, p, 0.0, 1.0).value
    lower = p_variation(m, p, 0.0, 1.0, method="partition").value
    assert lower <= exact * (1 + 1e-12) + 1e-15


@settings(max_examples=60, deadline=None)
@given(spec=st.sampled_from(CATALOG_01), p=st.sampled_from(P_LADDER),
       pts=st.lists(st.floats(0.0, 1.0), min_size=4, max_size=4))
def test_subinterval_monotone(spec, p, pts):
    c, c2, d2, d = sorted(pts)
    m = build_map(spec)
    assert p_variation(m, p, c2, d2).value <= p_variation(m, p, c, d).value * (1 + 1e-12) + 1e-15


@settings(max_examples=80, deadline=None)
@given(v=st.lists(st.floats(-5, 5), min_size=2, max_size=8), p=st.sampled_from(P_LADDER))
def test_dynamic_program_matches_brute_force(v, p):
    s, idx = max_power_sum(np.array(v), p)
    assert s == pytest.approx(brute_power_sum(v, p), rel=1e-12, abs=1e-12)
    assert idx[0] == 0 and idx[-1] == len(v) - 1
    assert sum(abs(v[j] - v[i]) ** p for i, j in zip(idx, idx[1:])) == pytest.approx(s, rel=1e-12, abs=1e-12)


@settings(max_examples=40, deadline=None)
@given(vals=st.lists(st.floats(-3, 3), min_size=3, max_size=7), p=st.sampled_from(P_LADDER))
def test_piecewise_linear_matches_knot_brute_force(vals, p):
    knots = np.linspace(0, 1, len(vals))
    spec = "pl:knots=" + ",".join(repr(float(k)) for k in knots) + ";values=" + ",".join(repr(float(v)) for v in vals)
    m = build_map(spec)
    assert p_variation(m, p, 0.0, 1.0).value == pytest.approx(brute_power_sum(vals, p) ** (1 / p), rel=1e-12, abs=1e-12)


def test_witness_reproduces_value():
    m = build_map("sine", 0.0, TWO_PI)
    est = p_variation(m, 2.0, 0.0, TWO_PI)
    rows = witness_rows(m, est)
    assert math.fsum(abs(r[2]) ** 2 for r in rows) ** 0.5 == pytest.approx(est.value, rel=1e-14)
    text = witness_csv(m, est)
    assert text.splitlines()[0] == "point,value,increment"
    assert len(text.splitlines()) == len(rows) + 1
