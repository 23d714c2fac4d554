"""Closed-form error bounds for the two-point rule.

Pure arithmetic on constants, nodes and variation/norm inputs.  Variation
inputs must come from an exact method unless ``allow_lower_bound`` is set,
because a lower estimate of the variation would understate the bound.

Conventions at the edges: an exponent 1 - 1/p that equals 0 contributes a
factor 1; a zero base under a positive exponent contributes 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .rules import NodeTriple
from .variation import VariationEstimate

THEOREM_IDS = ("thm1", "thm1-safe", "thm2", "thm3", "thm4", "thm4-safe", "thm5",
               "lemma1", "lemma2", "cor4", "eq3.6", "eq3.7")


class BoundError(ValueError):
    pass


@dataclass(frozen=True)
class BoundValue:
    value: float
    theorem: str
    form: str = "stated"
    notes: dict = field(default_factory=dict)

    def __post_init__(self):
        if not (self.value >= 0) or math.isnan(self.value):
            raise BoundError(f"{self.theorem}: bound evaluated to {self.value}")


def _pow(base: float, e: float) -> float:
    if e == 0:
        return 1.0
    if base <= 0.0:
        if base < -1e-12 * max(1.0, abs(base)):
            raise BoundError(f"negative base {base} under a fractional power")
        return 0.0
    return math.exp(e * math.log(base))


def _var(v, allow_lower_bound: bool, what: str = "variation") -> float:
    if isinstance(v, VariationEstimate):
        if not v.is_exact and not allow_lower_bound:
            raise BoundError(f"{what} from method {v.method!r} is not exact; pass allow_lower_bound=True to use it")
        return v.value
    if v is None:
        raise BoundError(f"missing {what}")
    v = float(v)
    if not v >= 0:
        raise BoundError(f"{what} must be nonnegative")
    return v


def _check_p(p: float) -> None:
    if not p >= 1:
        raise BoundError(f"p must be >= 1, got {p}")


def _check_hoelder(H: float, r: float) -> None:
    if not H >= 0:
        raise BoundError("Hölder constant must be nonnegative")
    if not 0 < r <= 1:
        raise BoundError(f"Hölder order must lie in (0, 1], got {r}")


def max_term_left(n: NodeTriple) -> float:
    """(x-a)/2 + |t0 - (a+x)/2|, i.e. max(t0 - a, x - t0)."""
    return (n.x - n.a) / 2 + abs(n.t0 - (n.a + n.x) / 2)


def max_term_right(n: NodeTriple) -> float:
    return (n.b - n.x) / 2 + abs(n.t1 - (n.x + n.b) / 2)


# ---------------------------------------------------------------------------
# lemmas


def lemma1_bound(sup_w: float, variation=None, oscillation=None,
                 allow_lower_bound: bool = False) -> BoundValue:
    """|int w dv| <= sup|w| * V_p(v); with ``oscillation`` the sup|w| * osc(v) variant."""
    if not sup_w >= 0:
        raise BoundError("sup_w must be nonnegative")
    if oscillation is not None:
        return BoundValue(sup_w * _var(oscillation, allow_lower_bound, "oscillation"), "lemma1", "oscillation")
    return BoundValue(sup_w * _var(variation, allow_lower_bound), "lemma1")


def lemma2_bound(L: float, a: float, b: float, p: float, w_norm_p: float) -> BoundValue:
    """L (b-a)^(1-1/p) ||w||_p."""
    _check_p(p)
    if not (L >= 0 and w_norm_p >= 0 and b >= a):
        raise BoundError("lemma2 needs L >= 0, ||w||_p >= 0 and a <= b")
    return BoundValue(L * _pow(b - a, 1 - 1 / p) * w_norm_p, "lemma2")


# ---------------------------------------------------------------------------
# integrand Hölder, integrator of bounded p-variation


def thm1_bound(H: float, r: float, nodes: NodeTriple, variation=None, form: str = "stated",
               variation_left=None, variation_right=None, allow_lower_bound: bool = False) -> BoundValue:
    """H max{(x-a)/2+|t0-(a+x)/2|, (b-x)/2+|t1-(x+b)/2|}^r V_p(u; a, b).

    ``form='proof-safe'`` keeps the two halves apart:
    H [left]^r V_p(u; a, x) + H [right]^r V_p(u; x, b).
    """
    _check_hoelder(H, r)
    nodes.require_middle()
    A, B = max_term_left(nodes), max_term_right(nodes)
    if form == "stated":
        V = _var(variation, allow_lower_bound)
        return BoundValue(H * _pow(max(A, B), r) * V, "thm1", "stated")
    if form == "proof-safe":
        Vl = _var(variation_left, allow_lower_bound, "variation over [a, x]")
        Vr = _var(variation_right, allow_lower_bound, "variation over [x, b]")
        return BoundValue(H * _pow(A, r) * Vl + H * _pow(B, r) * Vr, "thm1-safe", "proof-safe")
    raise BoundError(f"unknown form {form!r}")


def thm1_corollary_bound(case: str, H: float, r: float, a: float, b: float, variation,
                         x: Optional[float] = None, y: Optional[float] = None,
                         t0: Optional[float] = None, t1: Optional[float] = None,
                         allow_lower_bound: bool = False) -> BoundValue:
    _check_hoelder(H, r)
    V = _var(variation, allow_lower_bound)
    mid = (a + b) / 2
    if case == "trapezoid":
        x = mid if x is None else x
        val = H * _pow((b - a) / 2 + abs(x - mid), r) * V
    elif case == "midpoint":
        t0 = (3 * a + b) / 4 if t0 is None else t0
        t1 = (a + 3 * b) / 4 if t1 is None else t1
        m = max((b - a) / 4 + abs(t0 - (3 * a + b) / 4), (b - a) / 4 + abs(t1 - (a + 3 * b) / 4))
        val = H * _pow(m, r) * V
    elif case == "symmetric":
        y = a if y is None else y
        val = H * _pow((b - a) / 4 + abs(y - (3 * a + b) / 4), r) * V
    elif case == "half-nodes":
        x = mid if x is None else x
        val = H / 2**r * _pow((b - a) / 2 + abs(x - mid), r) * V
    else:
        raise BoundError(f"unknown corollary case {case!r}")
    return BoundValue(val, "thm1", f"corollary:{case}")


def cor4_bound(H: float, r: float, nodes: NodeTriple, g_norm_p: float) -> BoundValue:
    """thm1 max-term with the variation replaced by ||g||_p, for u = int g."""
    _check_hoelder(H, r)
    nodes.require_middle()
    if g_norm_p is None or not g_norm_p >= 0:
        raise BoundError("cor4 needs ||g||_p >= 0")
    return BoundValue(H * _pow(max(max_term_left(nodes), max_term_right(nodes)), r) * g_norm_p, "cor4")


# ---------------------------------------------------------------------------
# integrand Hölder, integrator Lipschitz


def thm2_bound(H: float, r: float, L: float, p: float, nodes: NodeTriple) -> BoundValue:
    _check_hoelder(H, r)
    _check_p(p)
    nodes.require_middle()
    a, t0, x, t1, b = nodes.a, nodes.t0, nodes.x, nodes.t1, nodes.b
    q = r * p + 1
    left = _pow(x - a, 1 - 1 / p) * _pow((_pow(t0 - a, q) + _pow(x - t0, q)) / q, 1 / p)
    right = _pow(b - x, 1 - 1 / p) * _pow((_pow(t1 - x, q) + _pow(b - t1, q)) / q, 1 / p)
    return BoundValue(H * L * (left + right), "thm2")


def thm2_corollary_bound(case: str, H: float, r: float, L: float, p: float, a: float, b: float,
                         x: Optional[float] = None, y: Optional[float] = None) -> BoundValue:
    """Preset closed forms.  ``quartile`` is the printed constant, which differs
    from the general formula at quartile nodes by the factor 2^(1/p)."""
    _check_hoelder(H, r)
    _check_p(p)
    q = r * p + 1
    mid = (a + b) / 2
    if case == "trapezoid":
        x = mid if x is None else x
        val = H * L * (_pow(x - a, 1 - 1 / p) * _pow(_pow(x - a, q) / q, 1 / p)
                       + _pow(b - x, 1 - 1 / p) * _pow(_pow(b - x, q) / q, 1 / p))
    elif case == "symmetric":
        y = a if y is None else y
        val = 2 * H * L * _pow((b - a) / 2, 1 - 1 / p) * _pow((_pow(y - a, q) + _pow(mid - y, q)) / q, 1 / p)
    elif case == "quartile":
        val = H * L * _pow(b - a, 1 + r) / (2 ** (2 * r + 1 / p) * q ** (1 / p))
    else:
        raise BoundError(f"unknown corollary case {case!r}")
    return BoundValue(val, "thm2", f"corollary:{case}")


def thm3_constant(p: float, n: int) -> float:
    """(p sin(pi/p) / (pi (p-1)^(1/p)))^n; tends to 1 as p -> inf."""
    if math.isinf(p):
        return 1.0
    if not p > 1:
        raise BoundError("the thm3 constant needs p > 1")
    return (p * math.sin(math.pi / p) / (math.pi * (p - 1) ** (1 / p))) ** n


def thm3_bound(L: float, p: float, n: int, nodes: NodeTriple, fn_norm: float) -> BoundValue:
    """For p = inf pass the sup norm of f^(n) as ``fn_norm``."""
    if n < 1:
        raise BoundError("n must be >= 1")
    nodes.require_middle()
    if fn_norm is None or not fn_norm >= 0:
        raise BoundError("missing ||f^(n)||")
    a, x, b = nodes.a, nodes.x, nodes.b
    C = thm3_constant(p, n)
    e = 1.0 if math.isinf(p) else 1 - 1 / p
    geom = _pow(x - a, e) * max_term_left(nodes) ** n + _pow(b - x, e) * max_term_right(nodes) ** n
    return BoundValue(L * C * geom * fn_norm, "thm3", "limit" if math.isinf(p) else "stated")


# ---------------------------------------------------------------------------
# dual assumptions: integrator Hölder, integrand of bounded p-variation / Lipschitz


def thm4_bound(H: float, r: float, nodes: NodeTriple, variation=None, form: str = "stated",
               variations: Optional[Sequence] = None, allow_lower_bound: bool = False) -> BoundValue:
    """H max{t0-a, (t1-t0)/2+|x-(t0+t1)/2|, b-t1}^r V_p(f; a, b).

    ``form='proof-safe'``: H (t0-a)^r V(a,t0) + H [middle]^r V(t0,t1) + H (b-t1)^r V(t1,b),
    with ``variations`` the three pieces in that order.
    """
    _check_hoelder(H, r)
    nodes.require_middle()
    terms = (nodes.t0 - nodes.a,
             (nodes.t1 - nodes.t0) / 2 + abs(nodes.x - (nodes.t0 + nodes.t1) / 2),
             nodes.b - nodes.t1)
    if form == "stated":
        return BoundValue(H * _pow(max(terms), r) * _var(variation, allow_lower_bound), "thm4", "stated")
    if form == "proof-safe":
        if variations is None or len(variations) != 3:
            raise BoundError("proof-safe form needs three piece variations")
        vs = [_var(v, allow_lower_bound) for v in variations]
        return BoundValue(math.fsum(H * _pow(t, r) * v for t, v in zip(terms, vs)), "thm4-safe", "proof-safe")
    raise BoundError(f"unknown form {form!r}")


def thm5_middle_mass(r: float, p: float, nodes: NodeTriple) -> float:
    """Case-dependent M with int_{t0}^{t1} |s-x|^(rp) ds = M / (rp+1)."""
    q = r * p + 1
    t0, x, t1 = nodes.t0, nodes.x, nodes.t1
    if x <= t0:
        return _pow(t1 - x, q) - _pow(t0 - x, q)
    if x >= t1:
        return _pow(x - t0, q) - _pow(x - t1, q)
    return _pow(x - t0, q) + _pow(t1 - x, q)


def thm5_bound(L: float, H: float, r: float, p: float, nodes: NodeTriple, theorem: str = "thm5") -> BoundValue:
    _check_hoelder(H, r)
    _check_p(p)
    q = r * p + 1
    a, t0, t1, b = nodes.a, nodes.t0, nodes.t1, nodes.b
    M = max(thm5_middle_mass(r, p, nodes), 0.0)
    val = (_pow(t0 - a, r + 1) / q ** (1 / p)
           + _pow(t1 - t0, 1 - 1 / p) * _pow(M / q, 1 / p)
           + _pow(b - t1, r + 1) / q ** (1 / p))
    return BoundValue(L * H * val, theorem, nodes.ordering)


def eq36_bound(L: float, r: float, p: float, nodes: NodeTriple) -> BoundValue:
    """thm5 with u(t) = t^r, whose Hölder constant is 1."""
    return thm5_bound(L, 1.0, r, p, nodes, theorem="eq3.6")


def eq37_bound(L: float, K: float, p: float, nodes: NodeTriple) -> BoundValue:
    """thm5 with a K-Lipschitz integrator (r = 1, H = K)."""
    return thm5_bound(L, K, 1.0, p, nodes, theorem="eq3.7")


# ---------------------------------------------------------------------------
# dispatcher


@dataclass
class BoundInput:
    nodes: NodeTriple
    p: float = 1.0
    hoelder: Optional[tuple] = None
    lipschitz: Optional[float] = None
    variation: object = None
    variations: Optional[Sequence] = None
    norm: Optional[float] = None
    sup_w: Optional[Sequence[float]] = None
    n: Optional[int] = None
    allow_lower_bound: bool = False


def evaluate_bound(theorem: str, inp: BoundInput) -> BoundValue:
    """Evaluate a bound by theorem id.

    For ``thm1-safe`` and ``lemma1`` pass ``variations`` = (V(a,x), V(x,b));
    ``lemma1`` also needs ``sup_w`` = (sup over [a,x] of |f(t0)-f|, same over [x,b] with t1).
    For ``lemma2`` pass ``norm`` = (||f(t0)-f||_p on [a,x], ||f(t1)-f||_p on [x,b]) as ``sup_w``.
    """
    n, p = inp.nodes, inp.p

    def need(value, what):
        if value is None:
            raise BoundError(f"{theorem} needs {what}")
        return value

    if theorem == "thm1":
        H, r = need(inp.hoelder, "a Hölder pair")
        return thm1_bound(H, r, n, inp.variation, allow_lower_bound=inp.allow_lower_bound)
    if theorem == "thm1-safe":
        H, r = need(inp.hoelder, "a Hölder pair")
        vl, vr = need(inp.variations, "variations over [a,x] and [x,b]")
        return thm1_bound(H, r, n, form="proof-safe", variation_left=vl, variation_right=vr,
                          allow_lower_bound=inp.allow_lower_bound)
    if theorem == "thm2":
        H, r = need(inp.hoelder, "a Hölder pair")
        return thm2_bound(H, r, need(inp.lipschitz, "a Lipschitz constant"), p, n)
    if theorem == "thm3":
        return thm3_bound(need(inp.lipschitz, "a Lipschitz constant"), p, need(inp.n, "n"), n,
                          need(inp.norm, "||f^(n)||_p"))
    if theorem == "thm4":
        H, r = need(inp.hoelder, "a Hölder pair")
        return thm4_bound(H, r, n, inp.variation, allow_lower_bound=inp.allow_lower_bound)
    if theorem == "thm4-safe":
        H, r = need(inp.hoelder, "a Hölder pair")
        return thm4_bound(H, r, n, form="proof-safe", variations=need(inp.variations, "three variations"),
                          allow_lower_bound=inp.allow_lower_bound)
    if theorem in ("thm5", "eq3.6", "eq3.7"):
        H, r = need(inp.hoelder, "a Hölder pair")
        L = need(inp.lipschitz, "a Lipschitz constant")
        if theorem == "eq3.6":
            return eq36_bound(L, r, p, n)
        if theorem == "eq3.7":
            if r != 1:
                raise BoundError("eq3.7 needs a Lipschitz integrator (r = 1)")
            return eq37_bound(L, H, p, n)
        return thm5_bound(L, H, r, p, n)
    if theorem == "lemma1":
        sl, sr = need(inp.sup_w, "sup |w| on both halves")
        vl, vr = need(inp.variations, "variations over [a,x] and [x,b]")
        left = lemma1_bound(sl, vl, allow_lower_bound=inp.allow_lower_bound).value
        right = lemma1_bound(sr, vr, allow_lower_bound=inp.allow_lower_bound).value
        return BoundValue(left + right, "lemma1", "split-at-x")
    if theorem == "lemma2":
        nl, nr = need(inp.sup_w, "||w||_p on both halves")
        L = need(inp.lipschitz, "a Lipschitz constant")
        return BoundValue(lemma2_bound(L, n.a, n.x, p, nl).value + lemma2_bound(L, n.x, n.b, p, nr).value,
                          "lemma2", "split-at-x")
    if theorem == "cor4":
        H, r = need(inp.hoelder, "a Hölder pair")
        return cor4_bound(H, r, n, need(inp.norm, "||g||_p"))
    raise BoundError(f"unknown theorem id {theorem!r}")
