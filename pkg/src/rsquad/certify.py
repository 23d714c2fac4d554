"""Certificates: rule value, oracle integral, remainder and a theorem's bound, side by side.

A certificate never decides that a theorem is right; it records whether the
computed bound dominated the computed remainder at one node triple.  Sweeps
collect certificates over node grids and keep violations as data.
"""

from __future__ import annotations

import csv
import io
import itertools
import math
from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Optional

import numpy as np
from scipy import integrate

from . import bounds
from .bounds import BoundError, BoundInput, evaluate_bound
from .catalog import Power, RegularityProfile, make_catalog_entry
from .oracle import DEFAULT_TOL, IntegralResult, OracleError, rs_integral
from .rules import MIDDLE, NodeTriple, two_point_eval
from .variation import derivative_norm, oscillation, p_variation

# theorems whose hypothesis includes t0 <= x <= t1
MIDDLE_ONLY = {"thm1", "thm1-safe", "thm2", "thm3", "thm4", "thm4-safe", "lemma1", "lemma2", "cor4"}
EQUALITY_ATOL = 1e-10
HOLDS_RTOL = 1e-12
CSV_COLUMNS = ("t0", "x", "t1", "q", "integral", "remainder_abs", "bound", "slack", "verdict", "bound_safe")


class HypothesisError(ValueError):
    """Catalog metadata does not meet the requested theorem's hypotheses."""


@dataclass(frozen=True)
class BoundCertificate:
    f_id: str
    u_id: str
    nodes: NodeTriple
    theorem: str
    p: float
    q_value: float
    integral: float
    oracle_error: float
    oracle_method: str
    remainder: float
    bound: float
    form: str
    tol: float
    bound_safe: Optional[float] = None
    notes: dict = field(default_factory=dict)

    def with_notes(self, **notes) -> "BoundCertificate":
        return replace(self, notes={**self.notes, **notes})

    @property
    def remainder_abs(self) -> float:
        return abs(self.remainder)

    @property
    def slack(self) -> float:
        return self.bound - self.remainder_abs

    @property
    def verdict(self) -> str:
        s = self.slack
        if abs(s) <= self.oracle_error + EQUALITY_ATOL:
            return "equality"
        if s >= -(self.oracle_error + HOLDS_RTOL * max(1.0, abs(self.bound))):
            return "holds"
        return "violated"

    def to_dict(self) -> dict:
        return {
            "pair": {"f": self.f_id, "u": self.u_id},
            "interval": [self.nodes.a, self.nodes.b],
            "nodes": {"t0": self.nodes.t0, "x": self.nodes.x, "t1": self.nodes.t1,
                      "ordering": self.nodes.ordering},
            "theorem": self.theorem,
            "p": "inf" if math.isinf(self.p) else self.p,
            "q_value": self.q_value,
            "integral": self.integral,
            "oracle_error": self.oracle_error,
            "oracle_method": self.oracle_method,
            "remainder": self.remainder,
            "remainder_abs": self.remainder_abs,
            "bound": self.bound,
            "form": self.form,
            "bound_safe": self.bound_safe,
            "slack": self.slack,
            "verdict": self.verdict,
            "tolerance": self.oracle_error + HOLDS_RTOL * max(1.0, abs(self.bound)),
            "tol": self.tol,
            **({"notes": self.notes} if self.notes else {}),
        }


def _lp_norm(func, c: float, d: float, p: float, points=()) -> float:
    if d <= c:
        return 0.0
    pts = sorted({float(t) for t in points if c < t < d})
    if math.isinf(p):
        grid = np.unique(np.concatenate((np.linspace(c, d, 4001), pts)))
        return float(np.max(np.abs(func(grid))))
    edges = [c] + pts + [d]
    total = 0.0
    for lo, hi in zip(edges, edges[1:]):
        total += integrate.quad(lambda t: abs(float(func(t))) ** p, lo, hi, epsabs=1e-13, epsrel=1e-11,
                                limit=200)[0]
    return total ** (1 / p)


class Certifier:
    """Certificates for one (f, u) pair on [a, b] at fixed p and tol, with caching."""

    def __init__(self, f_id: str, u_id: str, a: float = 0.0, b: float = 1.0, p: float = 1.0,
                 tol: float = DEFAULT_TOL, n: Optional[int] = None, r: Optional[float] = None):
        self.f_id, self.u_id = f_id, u_id
        self.a, self.b, self.p, self.tol, self.n, self.r = a, b, p, tol, n, r
        self.f, self.f_prof = make_catalog_entry(f_id, a, b)
        self.u, self.u_prof = make_catalog_entry(u_id, a, b)
        self._var = lru_cache(maxsize=None)(self._variation)
        self._sup = lru_cache(maxsize=None)(self._sup_diff)
        self._norm = lru_cache(maxsize=None)(self._diff_norm)
        self._oracle: Optional[IntegralResult] = None
        self._g_norm: Optional[float] = None

    # -- cached ingredients ---------------------------------------------------
    @property
    def oracle(self) -> IntegralResult:
        if self._oracle is None:
            self._oracle = rs_integral(self.f, self.u, self.a, self.b, self.tol)
        return self._oracle

    def _variation(self, which: str, c: float, d: float):
        m = self.f if which == "f" else self.u
        est = p_variation(m, self.p, c, d)
        if not est.is_exact:
            raise HypothesisError(f"no exact {self.p}-variation available for {m.spec_id}")
        return est

    def _sup_diff(self, node: float, c: float, d: float) -> float:
        """sup over s in [c, d] of |f(node) - f(s)|."""
        if d <= c:
            return abs(float(self.f.values(node)) - float(self.f.values(c)))
        osc = oscillation(self.f, c, d)
        lo_pt, hi_pt = osc.partition
        vals = self.f.values(np.array([lo_pt, hi_pt]))
        fn = float(self.f.values(node))
        return max(abs(fn - float(np.min(vals))), abs(fn - float(np.max(vals))))

    def _diff_norm(self, node: float, c: float, d: float) -> float:
        fn = float(self.f.values(node))
        brk = np.concatenate((self.f.breakpoints(), self.f.discontinuities(), [node]))
        return _lp_norm(lambda t: self.f.values(t) - fn, c, d, self.p, brk)

    # -- hypotheses -----------------------------------------------------------
    def _hoelder(self, prof: RegularityProfile, who: str) -> tuple:
        pair = prof.hoelder_pair()
        if pair is None:
            raise HypothesisError(f"{who} has no Hölder constant")
        H, r = pair
        if self.r is not None and abs(r - self.r) > 1e-15:
            raise HypothesisError(f"{who} is Hölder of order {r}, not the requested {self.r}")
        return H, r

    def _lipschitz(self, prof: RegularityProfile, who: str) -> float:
        if prof.lipschitz is None:
            raise HypothesisError(f"{who} has no Lipschitz constant")
        return prof.lipschitz

    def bound_for(self, theorem: str, nodes: NodeTriple) -> tuple[bounds.BoundValue, Optional[float], dict]:
        """The bound, the proof-safe companion (thm1/thm4 only) and notes."""
        p = self.p
        a, x, b, t0, t1 = nodes.a, nodes.x, nodes.b, nodes.t0, nodes.t1
        if theorem in MIDDLE_ONLY and nodes.ordering != MIDDLE:
            raise HypothesisError(f"{theorem} needs t0 <= x <= t1")
        inp = BoundInput(nodes=nodes, p=p)
        notes: dict = {}
        safe = None
        if theorem in ("thm1", "thm1-safe"):
            inp.hoelder = self._hoelder(self.f_prof, "f")
            inp.variation = self._var("u", a, b)
            inp.variations = (self._var("u", a, x), self._var("u", x, b))
            safe = evaluate_bound("thm1-safe", inp).value
        elif theorem == "thm2":
            inp.hoelder = self._hoelder(self.f_prof, "f")
            inp.lipschitz = self._lipschitz(self.u_prof, "u")
        elif theorem == "thm3":
            if not p > 1:
                raise HypothesisError("thm3 needs p > 1")
            orders = self.f_prof.up_orders
            n = self.n if self.n is not None else (orders[0] if orders else None)
            if n is None or n not in orders:
                raise HypothesisError(f"f is not marked as a member of the order-{n} class")
            inp.n = n
            inp.lipschitz = self._lipschitz(self.u_prof, "u")
            inp.norm = derivative_norm(self.f, p, a, b, order=n)
            notes["f_derivative_norm"] = inp.norm
        elif theorem in ("thm4", "thm4-safe"):
            inp.hoelder = self._hoelder(self.u_prof, "u")
            inp.variation = self._var("f", a, b)
            inp.variations = (self._var("f", a, t0), self._var("f", t0, t1), self._var("f", t1, b))
            safe = evaluate_bound("thm4-safe", inp).value
        elif theorem in ("thm5", "eq3.7"):
            inp.hoelder = self._hoelder(self.u_prof, "u")
            inp.lipschitz = self._lipschitz(self.f_prof, "f")
            if theorem == "eq3.7":
                inp.hoelder = (self._lipschitz(self.u_prof, "u"), 1.0)
        elif theorem == "eq3.6":
            if not isinstance(self.u, Power) or self.u.r > 1:
                raise HypothesisError("eq3.6 needs u = power(r) with r <= 1")
            inp.hoelder = (1.0, self.u.r)
            inp.lipschitz = self._lipschitz(self.f_prof, "f")
        elif theorem == "lemma1":
            inp.variations = (self._var("u", a, x), self._var("u", x, b))
            inp.sup_w = (self._sup(t0, a, x), self._sup(t1, x, b))
        elif theorem == "lemma2":
            inp.lipschitz = self._lipschitz(self.u_prof, "u")
            inp.sup_w = (self._norm(t0, a, x), self._norm(t1, x, b))
        elif theorem == "cor4":
            inp.hoelder = self._hoelder(self.f_prof, "f")
            if self.u.derivative_order_available < 1 or not self.u.is_continuous:
                raise HypothesisError("cor4 needs u = int g with g = u' available")
            if self._g_norm is None:
                self._g_norm = _lp_norm(lambda t: self.u.derivative(t, 1), a, b, p, self.u.breakpoints())
            inp.norm = self._g_norm
        else:
            raise HypothesisError(f"unknown theorem id {theorem!r}")
        try:
            bv = evaluate_bound(theorem, inp)
        except BoundError as exc:
            raise HypothesisError(str(exc)) from exc
        return bv, safe, notes

    def certify(self, nodes: NodeTriple, theorem: str) -> BoundCertificate:
        bv, safe, notes = self.bound_for(theorem, nodes)
        q = two_point_eval(self.f, self.u, nodes)
        orc = self.oracle
        return BoundCertificate(
            f_id=self.f.spec_id, u_id=self.u.spec_id, nodes=nodes, theorem=theorem, p=self.p,
            q_value=q, integral=orc.value, oracle_error=orc.error_estimate, oracle_method=orc.method,
            remainder=orc.value - q, bound=bv.value, form=bv.form, tol=self.tol, bound_safe=safe, notes=notes,
        )


def certify_one(f_id: str, u_id: str, nodes, theorem: str, p: float = 1.0, tol: float = DEFAULT_TOL,
                a: Optional[float] = None, b: Optional[float] = None, n: Optional[int] = None,
                r: Optional[float] = None) -> BoundCertificate:
    """Certificate for one configuration; ``nodes`` is a NodeTriple or (t0, x, t1)."""
    if isinstance(nodes, NodeTriple):
        a, b = nodes.a, nodes.b
    else:
        a = 0.0 if a is None else a
        b = 1.0 if b is None else b
        nodes = NodeTriple(*nodes, a, b)
    return Certifier(f_id, u_id, a, b, p, tol, n=n, r=r).certify(nodes, theorem)


# ---------------------------------------------------------------------------
# sweeps


@dataclass(frozen=True)
class GridSpec:
    t0: tuple
    x: tuple
    t1: tuple

    @classmethod
    def uniform(cls, a: float, b: float, steps: int = 21) -> "GridSpec":
        return cls((a, b, steps), (a, b, steps), (a, b, steps))

    @classmethod
    def parse(cls, text: str, a: float, b: float) -> "GridSpec":
        """'t0:lo:hi:steps,x:lo:hi:steps,t1:lo:hi:steps'; missing axes default to [a, b] with 21 steps."""
        axes = {"t0": (a, b, 21), "x": (a, b, 21), "t1": (a, b, 21)}
        for part in filter(None, (s.strip() for s in text.split(","))):
            bits = part.split(":")
            if len(bits) != 4 or bits[0] not in axes:
                raise ValueError(f"malformed grid axis {part!r}")
            axes[bits[0]] = (float(bits[1]), float(bits[2]), int(bits[3]))
        return cls(axes["t0"], axes["x"], axes["t1"])

    @staticmethod
    def _axis(spec: tuple) -> np.ndarray:
        lo, hi, steps = spec
        if steps < 1:
            raise ValueError("grid steps must be >= 1")
        return np.linspace(lo, hi, int(steps)) if steps > 1 else np.array([float(lo)])

    def points(self):
        return itertools.product(self._axis(self.t0), self._axis(self.x), self._axis(self.t1))

    def to_dict(self) -> dict:
        return {"t0": list(self.t0), "x": list(self.x), "t1": list(self.t1)}


@dataclass
class SweepReport:
    f_id: str
    u_id: str
    theorem: str
    p: float
    grid: GridSpec
    certificates: list
    failures: list  # (nodes tuple, message)
    skipped: int

    @property
    def violation_count(self) -> int:
        return sum(1 for c in self.certificates if c.verdict == "violated")

    def summary(self) -> dict:
        if not self.certificates:
            return {"points": 0, "violations": 0, "failures": len(self.failures), "skipped": self.skipped}
        slacks = np.array([c.slack for c in self.certificates])
        i = int(np.argmin(slacks))
        ratios = np.array([c.remainder_abs / c.bound for c in self.certificates if c.bound > 0])
        hist, edges = np.histogram(np.clip(ratios, 0, 2), bins=np.linspace(0, 2, 21)) if ratios.size else ([], [])
        verdicts = {}
        for c in self.certificates:
            verdicts[c.verdict] = verdicts.get(c.verdict, 0) + 1
        return {
            "points": len(self.certificates),
            "violations": self.violation_count,
            "verdicts": verdicts,
            "failures": len(self.failures),
            "skipped": self.skipped,
            "min_slack": float(slacks[i]),
            "argmin_nodes": list(self.certificates[i].nodes.as_tuple()),
            "max_tightness": float(ratios.max()) if ratios.size else None,
            "tightness_histogram": {"edges": [float(e) for e in edges], "counts": [int(h) for h in hist]},
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for c in self.certificates:
            w.writerow(certificate_row(c))
        return buf.getvalue()


def _g(v: Optional[float]) -> str:
    return "" if v is None else format(float(v), ".17g")


def certificate_row(c: BoundCertificate) -> list:
    n = c.nodes
    return [_g(n.t0), _g(n.x), _g(n.t1), _g(c.q_value), _g(c.integral), _g(c.remainder_abs),
            _g(c.bound), _g(c.slack), c.verdict, _g(c.bound_safe)]


def sweep(f_id: str, u_id: str, theorem: str, grid: Optional[GridSpec] = None, p: float = 1.0,
          tol: float = DEFAULT_TOL, a: float = 0.0, b: float = 1.0, n: Optional[int] = None,
          r: Optional[float] = None) -> SweepReport:
    """Certificates over a node grid, in lexicographic (t0, x, t1) order.

    Grid points outside the ordering class the theorem needs are skipped and
    counted; an oracle failure marks its point and the sweep carries on.
    """
    grid = grid or GridSpec.uniform(a, b)
    cert = Certifier(f_id, u_id, a, b, p, tol, n=n, r=r)
    certs, failures, skipped = [], [], 0
    for t0, x, t1 in sorted(grid.points()):
        t0, x, t1 = float(t0), float(x), float(t1)
        if not (a <= t0 <= t1 <= b and a <= x <= b):
            skipped += 1
            continue
        nodes = NodeTriple(t0, x, t1, a, b)
        if theorem in MIDDLE_ONLY and nodes.ordering != MIDDLE:
            skipped += 1
            continue
        try:
            certs.append(cert.certify(nodes, theorem))
        except OracleError as exc:
            failures.append(((t0, x, t1), str(exc)))
    return SweepReport(cert.f.spec_id, cert.u.spec_id, theorem, p, grid, certs, failures, skipped)


# ---------------------------------------------------------------------------
# extremal configurations


PUBLISHED_INTEGRAL_SECOND_EXTREMAL = 0.0


def sharpness_suite(r_values=(0.25, 0.5, 1.0), second_r: float = 0.5) -> list[BoundCertificate]:
    """Extremal configurations for the thm1 and thm4 constants.

    (i) f = t^r, u = -1 at 0 and 0 on (0, 1], nodes (1/2, 1, 1): equality for thm1.
    (ii) u = t^r, f = 1 at {0, 1} and 0 inside, nodes (0, 1/2, 1), p = 1/r:
         equality for thm4 with V_p(f) = 2^(1/p).
    (iii) f = t^r, u = 0 on [0, 1) and 1 at 1, nodes (0, 0, 1/2): the exact
         integral is f(1) = 1; it is recorded next to the published value 0.
    """
    out = []
    for r in r_values:
        out.append(certify_one(f"power:r={r!r}", "heaviside0", (0.5, 1.0, 1.0), "thm1", p=1.0)
                   .with_notes(construction="thm1-first", r=r))
    for r in r_values:
        out.append(certify_one("ends", f"power:r={r!r}", (0.0, 0.5, 1.0), "thm4", p=1.0 / r)
                   .with_notes(construction="thm4", r=r))
    c = certify_one(f"power:r={second_r!r}", "heaviside1", (0.0, 0.0, 0.5), "thm1", p=1.0)
    out.append(c.with_notes(
        construction="thm1-second", r=second_r,
        published_integral=PUBLISHED_INTEGRAL_SECOND_EXTREMAL,
        oracle_integral=c.integral,
        published_remainder_abs=abs(PUBLISHED_INTEGRAL_SECOND_EXTREMAL - c.q_value),
    ))
    return out

