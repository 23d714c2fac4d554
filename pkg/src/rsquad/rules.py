"""Two-point quadrature rule Q(f, u; t0, x, t1) on [a, b] and its remainder.

    Q = [u(x) - u(a)] f(t0) + [u(b) - u(x)] f(t1)
    R = integral of f du over [a, b] - Q
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .catalog import RealMap
from .oracle import DEFAULT_TOL, IntegralResult, rs_integral

PRESETS = ("trapezoid", "midpoint", "symmetric", "half-nodes", "quartile")
MIDDLE = "t0<=x<=t1"


class NodeError(ValueError):
    pass


@dataclass(frozen=True)
class NodeTriple:
    t0: float
    x: float
    t1: float
    a: float
    b: float

    def __post_init__(self):
        vals = (self.t0, self.x, self.t1, self.a, self.b)
        if not all(math.isfinite(v) for v in vals):
            raise NodeError("nodes must be finite")
        if not self.a < self.b:
            raise NodeError(f"invalid interval [{self.a}, {self.b}]")
        if not (self.a <= self.t0 <= self.t1 <= self.b):
            raise NodeError(f"need a <= t0 <= t1 <= b, got t0={self.t0}, t1={self.t1} on [{self.a}, {self.b}]")
        if not (self.a <= self.x <= self.b):
            raise NodeError(f"x={self.x} outside [{self.a}, {self.b}]")

    @property
    def ordering(self) -> str:
        if self.t0 <= self.x <= self.t1:
            return MIDDLE
        return "x<=t0" if self.x < self.t0 else "t1<=x"

    def require_middle(self) -> None:
        if self.ordering != MIDDLE:
            raise NodeError(f"nodes must satisfy t0 <= x <= t1, got ({self.t0}, {self.x}, {self.t1})")

    def as_tuple(self) -> tuple:
        return (self.t0, self.x, self.t1)

    def reflected(self) -> "NodeTriple":
        s = self.a + self.b
        return NodeTriple(s - self.t1, s - self.x, s - self.t0, self.a, self.b)


@dataclass(frozen=True)
class RuleResult:
    q_value: float
    oracle: IntegralResult

    @property
    def remainder(self) -> float:
        return self.oracle.value - self.q_value


def _check_shared_domain(f: RealMap, u: RealMap, nodes: NodeTriple) -> None:
    for m in (f, u):
        if nodes.a < m.a or nodes.b > m.b:
            raise NodeError(f"[{nodes.a}, {nodes.b}] not inside the domain of {m.spec_id}")


def two_point_eval(f: RealMap, u: RealMap, nodes: NodeTriple) -> float:
    _check_shared_domain(f, u, nodes)
    ua, ux, ub = (float(v) for v in u.values(np.array([nodes.a, nodes.x, nodes.b])))
    f0, f1 = (float(v) for v in f.values(np.array([nodes.t0, nodes.t1])))
    return math.fsum([(ux - ua) * f0, (ub - ux) * f1])


def remainder(f: RealMap, u: RealMap, nodes: NodeTriple, tol: float = DEFAULT_TOL,
              oracle: Optional[IntegralResult] = None) -> RuleResult:
    """Rule value and remainder; pass ``oracle`` to reuse an integral already computed on [a, b]."""
    q = two_point_eval(f, u, nodes)
    if oracle is None:
        oracle = rs_integral(f, u, nodes.a, nodes.b, tol)
    return RuleResult(q, oracle)


def preset_nodes(name: str, a: float, b: float, **params: float) -> NodeTriple:
    """Node triple for a named preset.

    trapezoid(x) -> (a, x, b); midpoint(t0, t1) -> (t0, (a+b)/2, t1);
    symmetric(y) -> (y, (a+b)/2, a+b-y); half-nodes(x) -> ((a+x)/2, x, (x+b)/2);
    quartile -> ((3a+b)/4, (a+b)/2, (a+3b)/4).
    """
    mid = 0.5 * (a + b)
    allowed = {"trapezoid": {"x"}, "midpoint": {"t0", "t1"}, "symmetric": {"y"},
               "half-nodes": {"x"}, "quartile": set()}
    if name not in allowed:
        raise NodeError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}")
    extra = set(params) - allowed[name]
    if extra:
        raise NodeError(f"preset {name} takes {sorted(allowed[name]) or 'no parameters'}, got {sorted(extra)}")
    if name == "trapezoid":
        nodes = NodeTriple(a, params.get("x", mid), b, a, b)
    elif name == "midpoint":
        nodes = NodeTriple(params.get("t0", (3 * a + b) / 4), mid, params.get("t1", (a + 3 * b) / 4), a, b)
    elif name == "symmetric":
        y = params.get("y", a)
        if not a <= y <= mid:
            raise NodeError(f"symmetric preset needs y in [a, (a+b)/2], got {y}")
        nodes = NodeTriple(y, mid, a + b - y, a, b)
    elif name == "half-nodes":
        x = params.get("x", mid)
        if not a <= x <= b:
            raise NodeError(f"x={x} outside [{a}, {b}]")
        nodes = NodeTriple(0.5 * (a + x), x, 0.5 * (x + b), a, b)
    else:
        nodes = NodeTriple((3 * a + b) / 4, mid, (a + 3 * b) / 4, a, b)
    nodes.require_middle()
    return nodes


def parse_preset(text: str) -> tuple[str, dict]:
    """'half-nodes:x=0.3' -> ('half-nodes', {'x': 0.3})."""
    name, _, rest = text.partition(":")
    params = {}
    for part in filter(None, (s.strip() for s in rest.replace(";", ",").split(","))):
        k, eq, v = part.partition("=")
        if not eq:
            raise NodeError(f"malformed preset parameter {part!r}")
        params[k.strip()] = float(v)
    return name.strip(), params


@dataclass(frozen=True)
class CompositeResult:
    q_total: float
    oracle: IntegralResult
    cells: tuple  # NodeTriple per cell

    @property
    def remainder_total(self) -> float:
        return self.oracle.value - self.q_total


def composite_rule(f: RealMap, u: RealMap, n: int, preset: str = "half-nodes",
                   relative: Optional[dict] = None, tol: float = DEFAULT_TOL,
                   breakpoints: Optional[Sequence[float]] = None,
                   a: Optional[float] = None, b: Optional[float] = None) -> CompositeResult:
    """Apply the rule on each cell of a partition of [a, b] and sum.

    Cells are uniform unless ``breakpoints`` (including both ends) are given.
    ``relative`` holds preset parameters as fractions of each cell, e.g.
    ``{"x": 0.5}`` puts x at the cell midpoint.
    """
    a = f.a if a is None else a
    b = f.b if b is None else b
    if breakpoints is None:
        if n < 1:
            raise NodeError("n must be a positive integer")
        edges = np.linspace(a, b, int(n) + 1)
    else:
        edges = np.asarray(breakpoints, dtype=float)
        if edges.size < 2 or np.any(np.diff(edges) <= 0) or edges[0] != a or edges[-1] != b:
            raise NodeError("breakpoints must increase strictly from a to b")
    relative = relative or {}
    cells, qs = [], []
    for lo, hi in zip(edges, edges[1:]):
        params = {k: lo + v * (hi - lo) for k, v in relative.items()}
        nodes = preset_nodes(preset, float(lo), float(hi), **params)
        cells.append(nodes)
        qs.append(two_point_eval(f, u, nodes))
    oracle = rs_integral(f, u, a, b, tol)
    return CompositeResult(math.fsum(qs), oracle, tuple(cells))
