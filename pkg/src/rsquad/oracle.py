"""Ground-truth Riemann-Stieltjes integrals, independent of the quadrature rule code.

Three routes, chosen from the structure of the pair:

* ``exact-step``: one of the two maps is piecewise constant.  If the integrator
  is, the integral is the compensated sum of f(c) times the jumps of u.  If the
  integrand is and the integrator is continuous, it is the sum over the
  constant pieces of value times the increment of u.
* ``reduce-to-riemann``: u has a closed-form derivative; adaptive quadrature
  of f * u'.
* ``refined-rs-sums``: left- and right-tagged sums on dyadic meshes until the
  two agree within ``tol``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .catalog import RealMap, Step

DEFAULT_TOL = 1e-9
MAX_EVALUATIONS = 2**22


class OracleError(RuntimeError):
    pass


class NonexistenceError(OracleError):
    """f and u share a discontinuity, so the integral need not exist."""


class ConvergenceError(OracleError):
    """Refinement cap reached before the convergence test passed."""


@dataclass(frozen=True)
class IntegralResult:
    value: float
    error_estimate: float
    method: str
    evaluations: int

    def to_dict(self) -> dict:
        return {"value": self.value, "error_estimate": self.error_estimate,
                "method": self.method, "evaluations": self.evaluations}


def _check(f: RealMap, u: RealMap, c: float, d: float, tol: float) -> None:
    if not tol > 0:
        raise ValueError("tol must be positive")
    if not (c <= d):
        raise ValueError(f"inverted interval [{c}, {d}]")
    for m in (f, u):
        if c < m.a or d > m.b:
            raise ValueError(f"[{c}, {d}] outside the domain of {m.spec_id}")


def _jump_integral(f: RealMap, u: Step, c: float, d: float) -> IntegralResult:
    """Sum of f(c_j) * (u(c_j+) - u(c_j-)), with one-sided terms at c and d."""
    terms = []
    contact = []
    if c < d:
        jr = u.one_sided(c, "+") - float(u.values(c))
        if jr:
            terms.append(float(f.values(c)) * jr)
            contact.append((c, "+"))
        for p in u.points:
            if c < p < d:
                jp = u.one_sided(p, "+") - u.one_sided(p, "-")
                if jp:
                    terms.append(float(f.values(p)) * jp)
                    contact.append((p, "both"))
                elif float(u.values(p)) != u.one_sided(p, "+"):
                    # isolated value: the integral sees it from both sides
                    contact.append((p, "both"))
        jl = float(u.values(d)) - u.one_sided(d, "-")
        if jl:
            terms.append(float(f.values(d)) * jl)
            contact.append((d, "-"))
    fd = set(np.asarray(f.discontinuities()).tolist())
    for t, side in contact:
        if t in fd:
            raise NonexistenceError(f"integrand and integrator both jump at t={t}")
    return IntegralResult(math.fsum(terms), 0.0, "exact-step", len(terms) + 2)


def _piece_integral(f: RealMap, u: RealMap, c: float, d: float) -> IntegralResult:
    """Piecewise-constant integrand against a continuous integrator."""
    inner = [float(p) for p in getattr(f, "points", ()) if c < p < d]
    edges = [c] + inner + [d]
    terms = []
    for lo, hi in zip(edges, edges[1:]):
        mid = 0.5 * (lo + hi)
        terms.append(float(f.values(mid)) * (float(u.values(hi)) - float(u.values(lo))))
    return IntegralResult(math.fsum(terms), 0.0, "exact-step", 2 * len(terms) + 1)


def _riemann(f: RealMap, u: RealMap, c: float, d: float, tol: float) -> IntegralResult:
    brk = np.concatenate((f.breakpoints(), u.breakpoints(), f.discontinuities()))
    edges = [c] + sorted({float(t) for t in brk if c < t < d}) + [d]
    value, err, nev = [], 0.0, 0

    def integrand(t):
        return float(f.values(t)) * float(u.derivative(t, 1))

    for lo, hi in zip(edges, edges[1:]):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", integrate.IntegrationWarning)
            v, e, info = integrate.quad(integrand, lo, hi, epsabs=tol / len(edges), epsrel=1e-13,
                                        limit=500, full_output=1)[:3]
        value.append(v)
        err += e
        nev += info["neval"]
    return IntegralResult(math.fsum(value), err, "reduce-to-riemann", nev)


def rs_sums(f: RealMap, u: RealMap, c: float, d: float, level: int) -> tuple[float, float]:
    """Left- and right-tagged Riemann-Stieltjes sums on the uniform mesh with 2**level cells."""
    t = np.linspace(c, d, 2**level + 1)
    fv = np.asarray(f.values(t), dtype=float)
    du = np.diff(np.asarray(u.values(t), dtype=float))
    return math.fsum(fv[:-1] * du), math.fsum(fv[1:] * du)


def _refined(f: RealMap, u: RealMap, c: float, d: float, tol: float, max_evaluations: int) -> IntegralResult:
    evals = 0
    level = 4
    while True:
        n = 2**level + 1
        if evals + 2 * n > max_evaluations:
            raise ConvergenceError(f"refined sums did not converge within {max_evaluations} evaluations")
        left, right = rs_sums(f, u, c, d, level)
        evals += 2 * n
        gap = abs(left - right)
        if gap <= tol:
            return IntegralResult(0.5 * (left + right), gap, "refined-rs-sums", evals)
        level += 1


def rs_integral(f: RealMap, u: RealMap, c: float, d: float, tol: float = DEFAULT_TOL,
                method: str | None = None, max_evaluations: int = MAX_EVALUATIONS) -> IntegralResult:
    """Integral of f du over [c, d]."""
    _check(f, u, c, d, tol)
    if c == d:
        return IntegralResult(0.0, 0.0, method or "exact-step", 0)
    if method is None:
        if isinstance(u, Step):
            method = "exact-step"
        elif f.is_piecewise_constant and u.is_continuous:
            method = "exact-step"
        elif u.derivative_order_available >= 1 and u.is_continuous:
            method = "reduce-to-riemann"
        else:
            method = "refined-rs-sums"
    if method == "exact-step":
        if isinstance(u, Step):
            return _jump_integral(f, u, c, d)
        if f.is_piecewise_constant and u.is_continuous:
            return _piece_integral(f, u, c, d)
        raise ValueError("exact-step needs a step integrator or a piecewise-constant integrand")
    if method == "reduce-to-riemann":
        if u.derivative_order_available < 1 or not u.is_continuous:
            raise ValueError(f"{u.spec_id} has no closed-form derivative")
        return _riemann(f, u, c, d, tol)
    if method == "refined-rs-sums":
        if f.discontinuities().size and u.discontinuities().size and np.intersect1d(
                f.discontinuities(), u.discontinuities()).size:
            raise NonexistenceError("integrand and integrator share a discontinuity")
        return _refined(f, u, c, d, tol, max_evaluations)
    raise ValueError(f"unknown method {method!r}")


def parts_identity_check(f: RealMap, u: RealMap, c: float, d: float, tol: float = DEFAULT_TOL) -> float:
    """|int f du + int u df - [f(d)u(d) - f(c)u(c)]|."""
    fu = rs_integral(f, u, c, d, tol)
    uf = rs_integral(u, f, c, d, tol)
    boundary = float(f.values(d)) * float(u.values(d)) - float(f.values(c)) * float(u.values(c))
    return abs(math.fsum([fu.value, uf.value, -boundary]))
