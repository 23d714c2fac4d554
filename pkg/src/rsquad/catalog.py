"""Closed catalog of integrands/integrators with regularity metadata.

Every map lives on a closed interval ``[a, b]`` and knows enough about itself
(derivatives, turning points, jump structure) for the variation and oracle
modules to work exactly.  Regularity constants are declared per kind in closed
form and can be audited by random sampling with :func:`validate_profile`.

Catalog ids are strings of the form ``kind:key=value;key=value`` where list
values are comma separated, e.g. ``power:r=0.5`` or
``step:points=0;left=-1;right=0``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import ClassVar, Optional

import numpy as np
from numpy.polynomial import Polynomial


class CatalogError(ValueError):
    """Unsupported kind, malformed id, or parameters violating kind constraints."""


class DomainError(ValueError):
    """Evaluation point outside the map's domain."""


def _fmt(v: float) -> str:
    return repr(float(v)) if not float(v).is_integer() else str(int(v))


def _as_array(t):
    return np.asarray(t, dtype=float)


@dataclass(frozen=True)
class RealMap:
    """Base class; concrete kinds below."""

    a: float
    b: float

    kind: ClassVar[str] = "abstract"

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.b)) or not self.a < self.b:
            raise CatalogError(f"invalid domain [{self.a}, {self.b}]")

    # -- evaluation -------------------------------------------------------
    def __call__(self, t: float) -> float:
        return evaluate(self, t)

    def values(self, t) -> np.ndarray:
        """Vectorised evaluation without the domain check."""
        raise NotImplementedError

    @property
    def derivative_order_available(self) -> int:
        return 0

    def derivative(self, t, k: int = 1) -> np.ndarray:
        """k-th closed-form derivative, vectorised."""
        raise CatalogError(f"{self.kind} exposes no derivative of order {k}")

    # -- structure ----------------------------------------------------------
    @property
    def is_continuous(self) -> bool:
        return True

    @property
    def is_piecewise_constant(self) -> bool:
        return False

    def turning_points(self, c: float, d: float) -> Optional[np.ndarray]:
        """Points in the open interval (c, d) where the map may change direction.

        Between consecutive returned points (and c, d) the map is monotone.
        ``None`` means the kind cannot say.
        """
        return None

    def breakpoints(self) -> np.ndarray:
        """Interior points where derivatives are discontinuous."""
        return np.empty(0)

    def discontinuities(self) -> np.ndarray:
        return np.empty(0)

    def one_sided(self, t: float, side: str) -> float:
        """Limit from the right (``side='+'``) or left (``side='-'``)."""
        return float(self.values(t))

    @property
    def spec_id(self) -> str:
        raise NotImplementedError

    def check_domain(self, t: float) -> None:
        if not (self.a <= t <= self.b):
            raise DomainError(f"t={t} outside [{self.a}, {self.b}]")


def evaluate(m: RealMap, t: float) -> float:
    """Evaluate ``m`` at a single point of its domain."""
    t = float(t)
    m.check_domain(t)
    return float(m.values(t))


@dataclass(frozen=True)
class Power(RealMap):
    """t -> t**r on a domain inside [0, inf)."""

    r: float = 1.0
    kind: ClassVar[str] = "power"

    def __post_init__(self):
        super().__post_init__()
        if not self.r > 0:
            raise CatalogError("power exponent must be positive")
        if self.a < 0:
            raise CatalogError("power maps need a nonnegative domain")

    def values(self, t):
        return np.power(_as_array(t), self.r)

    @property
    def derivative_order_available(self) -> int:
        return 2

    def derivative(self, t, k: int = 1):
        if k not in (1, 2):
            raise CatalogError(f"power exposes derivatives up to order 2, not {k}")
        t = _as_array(t)
        coef = self.r if k == 1 else self.r * (self.r - 1.0)
        if coef == 0.0:
            return np.zeros_like(t)
        with np.errstate(divide="ignore"):
            return coef * np.power(t, self.r - k)

    def turning_points(self, c, d):
        return np.empty(0)

    @property
    def spec_id(self):
        return f"power:r={_fmt(self.r)}"


@dataclass(frozen=True)
class PolynomialMap(RealMap):
    """Polynomial with ascending coefficients c0 + c1 t + c2 t^2 + ..."""

    coefficients: tuple = (0.0, 1.0)
    kind: ClassVar[str] = "poly"

    def __post_init__(self):
        super().__post_init__()
        coefs = tuple(float(c) for c in self.coefficients)
        if not coefs or not all(math.isfinite(c) for c in coefs):
            raise CatalogError("polynomial needs finite coefficients")
        while len(coefs) > 1 and coefs[-1] == 0.0:
            coefs = coefs[:-1]
        object.__setattr__(self, "coefficients", coefs)

    @property
    def poly(self) -> Polynomial:
        return Polynomial(self.coefficients)

    def values(self, t):
        return self.poly(_as_array(t))

    @property
    def derivative_order_available(self) -> int:
        return 8

    def derivative(self, t, k: int = 1):
        return self.poly.deriv(k)(_as_array(t))

    @property
    def is_piecewise_constant(self) -> bool:
        return len(self.coefficients) == 1

    def real_roots(self, poly: Polynomial, c: float, d: float) -> np.ndarray:
        if poly.degree() < 1 or not np.any(poly.coef):
            return np.empty(0)
        roots = poly.roots()
        real = roots[np.abs(roots.imag) <= 1e-12 * np.maximum(1.0, np.abs(roots.real))].real
        return np.unique(real[(real > c) & (real < d)])

    def turning_points(self, c, d):
        return self.real_roots(self.poly.deriv(), c, d)

    @property
    def spec_id(self):
        return "poly:c=" + ",".join(_fmt(c) for c in self.coefficients)


@dataclass(frozen=True)
class Sine(RealMap):
    """t -> scale * sin(freq * t)."""

    scale: float = 1.0
    freq: float = 1.0
    kind: ClassVar[str] = "sine"

    def __post_init__(self):
        super().__post_init__()
        if self.freq == 0 or not math.isfinite(self.freq) or not math.isfinite(self.scale):
            raise CatalogError("sine needs a finite nonzero frequency")

    def values(self, t):
        return self.scale * np.sin(self.freq * _as_array(t))

    @property
    def derivative_order_available(self) -> int:
        return 8

    def derivative(self, t, k: int = 1):
        return self.scale * self.freq**k * np.sin(self.freq * _as_array(t) + k * math.pi / 2)

    def turning_points(self, c, d):
        if self.scale == 0:
            return np.empty(0)
        # freq * t = pi/2 + j*pi
        lo, hi = sorted((self.freq * c, self.freq * d))
        j = np.arange(math.ceil((lo - math.pi / 2) / math.pi), math.floor((hi - math.pi / 2) / math.pi) + 1)
        pts = (math.pi / 2 + j * math.pi) / self.freq
        return np.sort(pts[(pts > c) & (pts < d)])

    @property
    def spec_id(self):
        return f"sine:scale={_fmt(self.scale)};freq={_fmt(self.freq)}"


@dataclass(frozen=True)
class Exponential(RealMap):
    """t -> exp(scale * t)."""

    scale: float = 1.0
    kind: ClassVar[str] = "exp"

    def values(self, t):
        return np.exp(self.scale * _as_array(t))

    @property
    def derivative_order_available(self) -> int:
        return 8

    def derivative(self, t, k: int = 1):
        return self.scale**k * np.exp(self.scale * _as_array(t))

    def turning_points(self, c, d):
        return np.empty(0)

    @property
    def spec_id(self):
        return f"exp:scale={_fmt(self.scale)}"


@dataclass(frozen=True)
class Step(RealMap):
    """Piecewise-constant map with explicit one-sided values at each jump.

    For a jump at an interior point ``c``: ``left`` is u(c-), ``right`` is u(c+)
    and ``at`` is u(c) (defaults to ``right``).  A jump placed at the left end of
    the domain has no left side, so there ``left`` is the value at the point and
    ``right`` is u(a+); symmetrically at the right end ``left`` is u(b-) and
    ``right`` is u(b).  Between jumps the map equals ``right`` of the previous
    jump, which must coincide with ``left`` of the next one.
    """

    points: tuple = ()
    left: tuple = ()
    right: tuple = ()
    at: Optional[tuple] = None
    kind: ClassVar[str] = "step"

    def __post_init__(self):
        super().__post_init__()
        pts = tuple(float(p) for p in self.points)
        lv = tuple(float(v) for v in self.left)
        rv = tuple(float(v) for v in self.right)
        if not pts or len(lv) != len(pts) or len(rv) != len(pts):
            raise CatalogError("step needs equally many points, left and right values")
        if any(q <= p for p, q in zip(pts, pts[1:])):
            raise CatalogError("step jump points must be strictly increasing")
        if pts[0] < self.a or pts[-1] > self.b:
            raise CatalogError("step jump points must lie inside the domain")
        for j in range(len(pts) - 1):
            if rv[j] != lv[j + 1]:
                raise CatalogError(
                    f"step value between jumps {pts[j]} and {pts[j + 1]} is ambiguous: "
                    f"right={rv[j]} but next left={lv[j + 1]}"
                )
        if self.at is None:
            at = []
            for p, l, r in zip(pts, lv, rv):
                at.append(l if p == self.a else r)
            at = tuple(at)
        else:
            at = tuple(float(v) for v in self.at)
            if len(at) != len(pts):
                raise CatalogError("step 'at' needs one value per jump point")
            for p, l, r, v in zip(pts, lv, rv, at):
                if (p == self.a and v != l) or (p == self.b and v != r):
                    raise CatalogError("at an endpoint jump the at-value is fixed by left/right")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "left", lv)
        object.__setattr__(self, "right", rv)
        object.__setattr__(self, "at", at)

    # segment k covers (points[k-1], points[k]); segment 0 is before the first jump
    @property
    def segment_values(self) -> tuple:
        return (self.left[0],) + self.right

    def values(self, t):
        t = _as_array(t)
        pts = np.asarray(self.points)
        seg = np.asarray(self.segment_values)
        out = seg[np.searchsorted(pts, t, side="left")]
        idx = np.searchsorted(pts, t, side="left")
        hit = (idx < len(pts)) & (pts[np.minimum(idx, len(pts) - 1)] == t)
        if np.any(hit):
            out = np.where(hit, np.asarray(self.at)[np.minimum(idx, len(pts) - 1)], out)
        return out if out.ndim else float(out)

    def one_sided(self, t, side):
        t = float(t)
        if side == "+":
            if t >= self.b:
                raise DomainError("no right limit at the right end")
            k = int(np.searchsorted(self.points, t, side="right"))
        elif side == "-":
            if t <= self.a:
                raise DomainError("no left limit at the left end")
            k = int(np.searchsorted(self.points, t, side="left"))
        else:
            raise ValueError(side)
        return self.segment_values[k]

    @property
    def is_continuous(self) -> bool:
        return False

    @property
    def is_piecewise_constant(self) -> bool:
        return True

    def discontinuities(self):
        out = []
        for p, l, r, v in zip(self.points, self.left, self.right, self.at):
            if p == self.a:
                jump = r != l
            elif p == self.b:
                jump = r != l
            else:
                jump = not (l == r == v)
            if jump:
                out.append(p)
        return np.asarray(out)

    @property
    def spec_id(self):
        s = "step:points={};left={};right={}".format(
            ",".join(_fmt(p) for p in self.points),
            ",".join(_fmt(v) for v in self.left),
            ",".join(_fmt(v) for v in self.right),
        )
        default_at = tuple(l if p == self.a else r for p, l, r in zip(self.points, self.left, self.right))
        if self.at != default_at:
            s += ";at=" + ",".join(_fmt(v) for v in self.at)
        return s


@dataclass(frozen=True)
class PiecewiseLinear(RealMap):
    """Linear interpolation through (knots, values), constant outside the knots."""

    knots: tuple = (0.0, 1.0)
    knot_values: tuple = (0.0, 1.0)
    kind: ClassVar[str] = "pl"

    def __post_init__(self):
        super().__post_init__()
        k = tuple(float(v) for v in self.knots)
        v = tuple(float(x) for x in self.knot_values)
        if len(k) < 2 or len(k) != len(v):
            raise CatalogError("piecewise-linear needs >= 2 knots and one value per knot")
        if any(q <= p for p, q in zip(k, k[1:])):
            raise CatalogError("knots must be strictly increasing")
        if k[0] < self.a or k[-1] > self.b:
            raise CatalogError("knots must lie inside the domain")
        object.__setattr__(self, "knots", k)
        object.__setattr__(self, "knot_values", v)

    def values(self, t):
        out = np.interp(_as_array(t), self.knots, self.knot_values)
        return out if np.ndim(out) else float(out)

    @property
    def slopes(self) -> np.ndarray:
        return np.diff(self.knot_values) / np.diff(self.knots)

    @property
    def derivative_order_available(self) -> int:
        return 1

    def derivative(self, t, k: int = 1):
        if k != 1:
            raise CatalogError("piecewise-linear maps expose only the first derivative")
        t = _as_array(t)
        slopes = np.concatenate(([0.0], self.slopes, [0.0]))
        # right-derivative convention at the knots
        return slopes[np.searchsorted(self.knots, t, side="right")]

    def turning_points(self, c, d):
        k = np.asarray(self.knots)
        return k[(k > c) & (k < d)]

    def breakpoints(self):
        return np.asarray(self.knots)

    @property
    def spec_id(self):
        return "pl:knots={};values={}".format(
            ",".join(_fmt(k) for k in self.knots), ",".join(_fmt(v) for v in self.knot_values)
        )


# ---------------------------------------------------------------------------
# regularity metadata


@dataclass(frozen=True)
class RegularityProfile:
    """Analytic facts declared for a catalog map.

    ``hoelder`` is (H, r) with |f(s) - f(t)| <= H |s - t|**r.  A Lipschitz
    constant L implies the pair (L, 1).  ``up_orders`` lists the derivative
    orders n for which the map belongs to the class of functions whose n-th
    derivative vanishes at both ends and is positive inside.
    """

    hoelder: Optional[tuple] = None
    lipschitz: Optional[float] = None
    monotone: Optional[str] = None
    variation_rule: Optional[str] = None
    up_orders: tuple = ()

    def hoelder_pair(self) -> Optional[tuple]:
        if self.hoelder is not None:
            return self.hoelder
        if self.lipschitz is not None:
            return (self.lipschitz, 1.0)
        return None

    def to_dict(self) -> dict:
        return {
            "hoelder": list(self.hoelder) if self.hoelder else None,
            "lipschitz": self.lipschitz,
            "monotone": self.monotone,
            "variation_rule": self.variation_rule,
            "up_orders": list(self.up_orders),
        }


def _poly_profile(m: PolynomialMap) -> RegularityProfile:
    p = m.poly
    dp = p.deriv()
    if p.degree() == 0:
        return RegularityProfile(hoelder=(0.0, 1.0), lipschitz=0.0, monotone="constant",
                                 variation_rule="monotone")
    cands = np.concatenate(([m.a, m.b], m.real_roots(dp.deriv(), m.a, m.b)))
    lip = float(np.max(np.abs(dp(cands))))
    # monotone iff p' keeps one sign inside
    tp = m.turning_points(m.a, m.b)
    probe = np.concatenate(([m.a, m.b], tp, (np.concatenate(([m.a], tp)) + np.concatenate((tp, [m.b]))) / 2))
    slopes = dp(probe)
    monotone = None
    if np.all(slopes >= 0):
        monotone = "increasing"
    elif np.all(slopes <= 0):
        monotone = "decreasing"
    up = []
    for n in (1, 2):
        if p.degree() <= n:
            continue
        dn = p.deriv(n)
        if abs(dn(m.a)) <= 1e-12 and abs(dn(m.b)) <= 1e-12:
            inner = m.real_roots(dn, m.a, m.b)
            if inner.size == 0 and dn((m.a + m.b) / 2) > 0:
                up.append(n)
    return RegularityProfile(
        hoelder=None, lipschitz=lip, monotone=monotone,
        variation_rule="monotone" if monotone else "extremal", up_orders=tuple(up),
    )


def profile_for(m: RealMap) -> RegularityProfile:
    """Strongest closed-form profile known for the map's kind."""
    if isinstance(m, Power):
        r = m.r
        if r <= 1:
            lip = 1.0 if r == 1 else (r * m.a ** (r - 1) if m.a > 0 else None)
            return RegularityProfile(hoelder=(1.0, r), lipschitz=lip, monotone="increasing",
                                     variation_rule="monotone")
        return RegularityProfile(lipschitz=r * m.b ** (r - 1), monotone="increasing",
                                 variation_rule="monotone")
    if isinstance(m, PolynomialMap):
        return _poly_profile(m)
    if isinstance(m, Sine):
        tp = m.turning_points(m.a, m.b)
        mono = None
        if tp.size == 0:
            mono = "increasing" if m.values(m.b) >= m.values(m.a) else "decreasing"
        return RegularityProfile(lipschitz=abs(m.scale * m.freq), monotone=mono,
                                 variation_rule="monotone" if mono else "extremal")
    if isinstance(m, Exponential):
        lip = abs(m.scale) * max(math.exp(m.scale * m.a), math.exp(m.scale * m.b))
        mono = "constant" if m.scale == 0 else ("increasing" if m.scale > 0 else "decreasing")
        return RegularityProfile(lipschitz=lip, monotone=mono, variation_rule="monotone")
    if isinstance(m, Step):
        seq = np.asarray(_step_sequence(m))
        d = np.diff(seq)
        mono = "increasing" if np.all(d >= 0) else ("decreasing" if np.all(d <= 0) else None)
        return RegularityProfile(monotone=mono, variation_rule="step")
    if isinstance(m, PiecewiseLinear):
        s = m.slopes
        mono = "increasing" if np.all(s >= 0) else ("decreasing" if np.all(s <= 0) else None)
        return RegularityProfile(lipschitz=float(np.max(np.abs(s))), monotone=mono,
                                 variation_rule="monotone" if mono else "extremal")
    raise CatalogError(f"no profile for {type(m).__name__}")


def _step_sequence(m: Step) -> list:
    """Values visited left to right, including at-values of the jumps."""
    seq = []
    for k, p in enumerate(m.points):
        if p > m.a:
            seq.append(m.segment_values[k])
        seq.append(m.at[k])
    if m.points[-1] < m.b:
        seq.append(m.segment_values[-1])
    return seq


def validate_profile(m: RealMap, prof: RegularityProfile, n_pairs: int = 10_000, seed: int = 0) -> None:
    """Sampling audit of the declared constants; raises CatalogError on failure."""
    rng = np.random.default_rng(seed)
    s = rng.uniform(m.a, m.b, n_pairs)
    t = rng.uniform(m.a, m.b, n_pairs)
    # include the endpoints, where Hölder quotients of powers peak
    s[:2] = m.a
    t[:2] = (m.b, m.a + 1e-6 * (m.b - m.a))
    lhs = np.abs(m.values(s) - m.values(t))
    checks = []
    if prof.hoelder is not None:
        checks.append(("hoelder", prof.hoelder))
    if prof.lipschitz is not None:
        checks.append(("lipschitz", (prof.lipschitz, 1.0)))
    for name, (H, r) in checks:
        rhs = H * np.abs(s - t) ** r
        bad = lhs > rhs * (1 + 1e-12) + 1e-14
        if np.any(bad):
            i = int(np.argmax(bad))
            raise CatalogError(f"{name} constant {H}, r={r} fails at s={s[i]}, t={t[i]} for {m.spec_id}")
    for n in prof.up_orders:
        dn_end = m.derivative(np.array([m.a, m.b]), n)
        if np.any(np.abs(dn_end) > 1e-12):
            raise CatalogError(f"derivative {n} does not vanish at the ends of {m.spec_id}")
        inner = np.linspace(m.a, m.b, 102)[1:-1]
        if np.any(m.derivative(inner, n) <= 0):
            raise CatalogError(f"derivative {n} not positive inside for {m.spec_id}")


def check_derivatives(m: RealMap, n_points: int = 100, rtol: float = 1e-6) -> None:
    """Compare each exposed derivative with a central difference of the one below."""
    order = min(m.derivative_order_available, 3)
    if order == 0:
        return
    span = m.b - m.a
    t = np.linspace(m.a, m.b, n_points + 2)[1:-1]
    for k in range(1, order + 1):
        h = 1e-5 * span
        lower = (lambda x: m.values(x)) if k == 1 else (lambda x, k=k: m.derivative(x, k - 1))
        fd = (lower(t + h) - lower(t - h)) / (2 * h)
        exact = m.derivative(t, k)
        # five-point stencil for a tighter reference
        fd5 = (-lower(t + 2 * h) + 8 * lower(t + h) - 8 * lower(t - h) + lower(t - 2 * h)) / (12 * h)
        scale = np.maximum(np.abs(exact), np.max(np.abs(exact)) * 1e-3 + 1e-12)
        err = np.minimum(np.abs(fd - exact), np.abs(fd5 - exact)) / scale
        if np.any(err > rtol):
            i = int(np.argmax(err))
            raise CatalogError(f"derivative {k} of {m.spec_id} disagrees with finite differences at {t[i]}")


# ---------------------------------------------------------------------------
# ids

NAMED = {
    "identity": "poly:c=0,1",
    "zero": "poly:c=0",
    "one": "poly:c=1",
    "square": "poly:c=0,0,1",
    "up1": "poly:c=1,0,3,-2",        # f' = 6t(1-t) on [0, 1]
    "up2": "poly:c=1,0,0,2,-1",      # f'' = 12t(1-t) on [0, 1]
    "risefall": "pl:knots=0,0.5,1;values=0,1,0",
    "heaviside0": "step:points=0;left=-1;right=0",
    "heaviside1": "step:points=1;left=0;right=1",
    "ends": "step:points=0,1;left=1,0;right=0,1",
}

_KINDS = {
    "power": "power",
    "poly": "poly",
    "polynomial": "poly",
    "const": "const",
    "constant": "const",
    "sine": "sine",
    "sin": "sine",
    "exp": "exp",
    "exponential": "exp",
    "step": "step",
    "pl": "pl",
    "piecewise-linear": "pl",
}

_TERM = re.compile(r"^([+-]?)((?:\d+(?:\.\d*)?|\.\d+)(?:e[+-]?\d+)?)?\*?(x|t)?(?:\^(\d+))?$")


def _parse_poly_expr(expr: str) -> tuple:
    """'1x', '2+3x^2', '1-x' -> ascending coefficients."""
    s = expr.replace(" ", "").replace("-", "+-")
    coefs: dict = {}
    for term in filter(None, s.split("+")):
        m = _TERM.match(term)
        if not m or (m.group(2) is None and m.group(3) is None):
            raise CatalogError(f"cannot parse polynomial term {term!r}")
        sign, num, var, power = m.groups()
        c = (-1.0 if sign == "-" else 1.0) * (1.0 if num is None else float(num))
        k = 0 if var is None else int(power or 1)
        coefs[k] = coefs.get(k, 0.0) + c
    deg = max(coefs)
    return tuple(coefs.get(k, 0.0) for k in range(deg + 1))


def parse_id(spec: str) -> tuple[str, dict]:
    """Split ``kind:k=v;k=v`` into the canonical kind and a raw parameter dict."""
    spec = spec.strip()
    spec = NAMED.get(spec, spec)
    kind, _, rest = spec.partition(":")
    kind = kind.strip().lower()
    if kind not in _KINDS:
        raise CatalogError(f"unsupported kind {kind!r}")
    kind = _KINDS[kind]
    params: dict = {}
    if rest:
        if kind == "poly" and "=" not in rest:
            return kind, {"c": _parse_poly_expr(rest)}
        for part in rest.split(";"):
            if not part.strip():
                continue
            key, eq, val = part.partition("=")
            if not eq:
                raise CatalogError(f"malformed parameter {part!r} in {spec!r}")
            params[key.strip()] = val.strip()
    return kind, params


def _floats(v, name: str) -> tuple:
    if isinstance(v, (tuple, list)):
        return tuple(float(x) for x in v)
    try:
        return tuple(float(x) for x in str(v).split(",") if x.strip() != "")
    except ValueError as exc:
        raise CatalogError(f"parameter {name} must be numeric: {v!r}") from exc


def _float(params: dict, name: str, default: Optional[float] = None) -> float:
    if name not in params:
        if default is None:
            raise CatalogError(f"missing parameter {name}")
        return default
    vals = _floats(params[name], name)
    if len(vals) != 1:
        raise CatalogError(f"parameter {name} must be a single number")
    return vals[0]


def build_map(spec: str, a: float = 0.0, b: float = 1.0) -> RealMap:
    kind, params = parse_id(spec)
    known = {
        "power": {"r"}, "poly": {"c"}, "const": {"c"}, "sine": {"scale", "freq"},
        "exp": {"scale"}, "step": {"points", "left", "right", "at"}, "pl": {"knots", "values"},
    }[kind]
    extra = set(params) - known
    if extra:
        raise CatalogError(f"unknown parameters {sorted(extra)} for kind {kind}")
    if kind == "power":
        return Power(a, b, r=_float(params, "r"))
    if kind == "poly":
        return PolynomialMap(a, b, coefficients=_floats(params.get("c", "0,1"), "c"))
    if kind == "const":
        return PolynomialMap(a, b, coefficients=(_float(params, "c", 1.0),))
    if kind == "sine":
        return Sine(a, b, scale=_float(params, "scale", 1.0), freq=_float(params, "freq", 1.0))
    if kind == "exp":
        return Exponential(a, b, scale=_float(params, "scale", 1.0))
    if kind == "step":
        at = _floats(params["at"], "at") if "at" in params else None
        for key in ("points", "left", "right"):
            if key not in params:
                raise CatalogError(f"step needs parameter {key}")
        return Step(a, b, points=_floats(params["points"], "points"),
                    left=_floats(params["left"], "left"), right=_floats(params["right"], "right"), at=at)
    if kind == "pl":
        return PiecewiseLinear(a, b, knots=_floats(params["knots"], "knots"),
                               knot_values=_floats(params["values"], "values"))
    raise CatalogError(f"unsupported kind {kind!r}")  # pragma: no cover


def make_catalog_entry(spec: str, a: float = 0.0, b: float = 1.0) -> tuple[RealMap, RegularityProfile]:
    """Resolve a catalog id on ``[a, b]`` to the map and its regularity profile."""
    m = build_map(spec, a, b)
    return m, profile_for(m)
