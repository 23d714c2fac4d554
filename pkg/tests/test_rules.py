import math

import pytest
from hypothesis import assume, given, settings, strategies as st

from rsquad.bounds import thm1_bound
from rsquad.catalog import build_map
from rsquad.rules import (
    MIDDLE, NodeError, NodeTriple, composite_rule, parse_preset, preset_nodes, remainder, two_point_eval,
)
from rsquad.variation import p_variation
from conftest import CATALOG_01

unit = st.floats(0.0, 1.0)


@st.composite
def nodes01(draw):
    t0, t1 = sorted((draw(unit), draw(unit)))
    return NodeTriple(t0, draw(unit), t1, 0.0, 1.0)


@pytest.mark.parametrize("nodes", [(0.0, 0.5, 1.0), (0.1, 0.9, 0.2), (0.3, 0.3, 0.3)])
def test_constant_integrand_value(nodes):
    q = two_point_eval(build_map("const:c=2.5"), build_map("identity"), NodeTriple(*nodes, 0.0, 1.0))
    assert q == pytest.approx(2.5, abs=1e-15)


def test_identity_trapezoid_value():
    nodes = NodeTriple(0.0, 0.5, 1.0, 0.0, 1.0)
    assert two_point_eval(build_map("identity"), build_map("identity"), nodes) == 0.5
    assert remainder(build_map("identity"), build_map("identity"), nodes).remainder == pytest.approx(0.0, abs=1e-15)


def test_square_quartile_value_and_remainder():
    nodes = NodeTriple(0.25, 0.5, 0.75, 0.0, 1.0)
    f, u = build_map("square"), build_map("identity")
    assert two_point_eval(f, u, nodes) == 5 / 16
    assert remainder(f, u, nodes).remainder == pytest.approx(1 / 48, abs=1e-12)


@pytest.mark.parametrize("r", [0.25, 0.5, 1.0])
def test_first_extremal_remainder(r):
    x = 1.0
    res = remainder(build_map(f"power:r={r}"), build_map("heaviside0"), NodeTriple(x / 2, x, 1.0, 0.0, 1.0))
    assert abs(res.remainder) == pytest.approx(0.5**r, abs=1e-15)


@pytest.mark.parametrize("bad", [(0.6, 0.5, 0.4), (-0.1, 0.5, 0.5), (0.2, 1.2, 0.5), (0.2, math.nan, 0.5)])
def test_invalid_nodes(bad):
    with pytest.raises(NodeError):
        NodeTriple(*bad, 0.0, 1.0)


def test_ordering_labels():
    assert NodeTriple(0.2, 0.5, 0.7, 0, 1).ordering == MIDDLE
    assert NodeTriple(0.2, 0.1, 0.7, 0, 1).ordering == "x<=t0"
    assert NodeTriple(0.2, 0.9, 0.7, 0, 1).ordering == "t1<=x"


@pytest.mark.parametrize("name, params, a, b, expected", [
    ("quartile", {}, 0.0, 1.0, (0.25, 0.5, 0.75)),
    ("symmetric", {"y": 2.0}, 2.0, 6.0, (2.0, 4.0, 6.0)),
    ("half-nodes", {"x": 0.5}, 0.0, 1.0, (0.25, 0.5, 0.75)),
    ("half-nodes", {"x": 0.2}, 0.0, 1.0, (0.1, 0.2, 0.6)),
    ("trapezoid", {"x": 0.3}, 0.0, 1.0, (0.0, 0.3, 1.0)),
    ("midpoint", {"t0": 0.1, "t1": 0.8}, 0.0, 1.0, (0.1, 0.5, 0.8)),
])
def test_presets(name, params, a, b, expected):
    assert preset_nodes(name, a, b, **params).as_tuple() == pytest.approx(expected, abs=1e-15)


def test_preset_errors():
    with pytest.raises(NodeError):
        preset_nodes("simpson", 0, 1)
    with pytest.raises(NodeError):
        preset_nodes("symmetric", 0, 1, y=0.8)
    with pytest.raises(NodeError):
        preset_nodes("quartile", 0, 1, x=0.3)


def test_parse_preset():
    assert parse_preset("half-nodes:x=0.3") == ("half-nodes", {"x": 0.3})
    assert parse_preset("midpoint:t0=0.1,t1=0.9") == ("midpoint", {"t0": 0.1, "t1": 0.9})
    assert parse_preset("quartile") == ("quartile", {})


def test_composite_trapezoid_improves():
    f, u = build_map("square"), build_map("identity")
    one = composite_rule(f, u, 1, "trapezoid", {"x": 0.5})
    two = composite_rule(f, u, 2, "trapezoid", {"x": 0.5})
    per_cell = [two_point_eval(f, u, c) for c in two.cells]
    assert two.q_total == pytest.approx(math.fsum(per_cell), abs=1e-15)
    assert abs(two.remainder_total) < abs(one.remainder_total)


def test_composite_half_nodes_identity():
    f = u = build_map("identity")
    n = 4
    h = 1 / n
    comp = composite_rule(f, u, n)
    per_cell = [thm1_bound(1.0, 1.0, c, p_variation(u, 1.0, c.a, c.b)).value for c in comp.cells]
    total = math.fsum(per_cell)
    # H * (h/4) * V(cell) per cell at half-nodes, V(cell) = h
    assert total == pytest.approx(n * (h / 4) * h, abs=1e-15)
    assert total <= 1 / 8
    assert abs(comp.remainder_total) <= total + comp.oracle.error_estimate


def test_composite_breakpoints():
    f, u = build_map("square"), build_map("identity")
    comp = composite_rule(f, u, 0, breakpoints=[0.0, 0.1, 0.5, 1.0])
    assert len(comp.cells) == 3
    with pytest.raises(NodeError):
        composite_rule(f, u, 0, breakpoints=[0.0, 0.6, 0.5, 1.0])


@settings(max_examples=80, deadline=None)
@given(nodes=nodes01(), u=st.sampled_from(CATALOG_01), c=st.floats(-5, 5))
def test_exact_on_constants(nodes, u, c):
    res = remainder(build_map(f"const:c={c!r}"), build_map(u), nodes)
    assert abs(res.remainder) <= res.oracle.error_estimate + 1e-12 * (1 + abs(c))


@settings(max_examples=60, deadline=None)
@given(nodes=nodes01(), a=st.floats(-3, 3), w=st.floats(0.1, 5))
def test_affine_consistency(nodes, a, w):
    # f(t) = g((t - a)/w) with g = up1 and u(t) = v((t - a)/w) with v = square, written as polynomials in t
    from numpy.polynomial import Polynomial
    lin = Polynomial([-a / w, 1 / w])
    g, v = Polynomial([1, 0, 3, -2]), Polynomial([0, 0, 1])
    fid = "poly:c=" + ",".join(repr(float(c)) for c in g(lin).coef)
    uid = "poly:c=" + ",".join(repr(float(c)) for c in v(lin).coef)
    b = a + w
    mapped = NodeTriple(*(min(max(a + w * s, a), b) for s in nodes.as_tuple()), a, b)
    assume(mapped.t0 <= mapped.t1)
    q_ref = two_point_eval(build_map("up1"), build_map("square"), nodes)
    q_map = two_point_eval(build_map(fid, a, b), build_map(uid, a, b), mapped)
    assert q_map == pytest.approx(q_ref, rel=1e-9, abs=1e-9)


def test_reflection_is_involution():
    n = NodeTriple(0.1, 0.4, 0.7, 0.0, 1.0)
    assert n.reflected().reflected().as_tuple() == pytest.approx(n.as_tuple())
