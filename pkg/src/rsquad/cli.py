"""Command-line front end.

    rsquad integrate  --f ID --u ID [--a A --b B] [--tol T]
    rsquad variation  --f ID --p P [--format json|csv]
    rsquad rule       --f ID --u ID (--nodes t0,x,t1 | --preset name[:k=v])
    rsquad certify    --f ID --u ID (--nodes ... | --preset ...) --thm ID --p P
    rsquad sweep      --f ID --u ID --thm ID --p P [--grid t0:lo:hi:steps,...]
    rsquad sharpness  [--r R]

Exit codes: 0 success (no violation), 1 at least one violated certificate,
2 invalid input or configuration, 3 oracle non-convergence.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import asdict, dataclass, fields
from typing import Optional, Sequence

from .bounds import THEOREM_IDS, BoundError
from .catalog import CatalogError, DomainError, make_catalog_entry
from .certify import GridSpec, HypothesisError, certificate_row, certify_one, sharpness_suite, sweep, CSV_COLUMNS
from .oracle import DEFAULT_TOL, ConvergenceError, NonexistenceError, rs_integral
from .rules import NodeError, NodeTriple, composite_rule, parse_preset, preset_nodes, remainder
from .variation import VariationError, p_variation, witness_csv

COMMANDS = ("integrate", "variation", "rule", "certify", "sweep", "sharpness")
EXIT_OK, EXIT_VIOLATION, EXIT_INVALID, EXIT_NONCONVERGENCE = 0, 1, 2, 3


class ConfigError(ValueError):
    pass


@dataclass
class ExperimentConfig:
    command: str = ""
    f: Optional[str] = None
    u: Optional[str] = None
    a: float = 0.0
    b: float = 1.0
    nodes: Optional[list] = None
    preset: Optional[str] = None
    thm: Optional[str] = None
    p: float = 1.0
    r: Optional[float] = None
    n: Optional[int] = None
    cells: Optional[int] = None
    tol: float = DEFAULT_TOL
    grid: Optional[str] = None
    out: Optional[str] = None
    format: Optional[str] = None

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        for name in ("a", "b", "tol"):
            if not math.isfinite(getattr(self, name)):
                raise ConfigError(f"{name} must be finite")
        if not self.a < self.b:
            raise ConfigError("need a < b")
        if not self.tol > 0:
            raise ConfigError("tol must be positive")
        if math.isnan(self.p) or self.p < 1:
            raise ConfigError("p must be >= 1")
        if self.thm is not None and self.thm not in THEOREM_IDS:
            raise ConfigError(f"unknown theorem id {self.thm!r}; choose from {', '.join(THEOREM_IDS)}")
        if self.format not in (None, "json", "csv"):
            raise ConfigError("format must be json or csv")
        if self.nodes is not None and self.preset is not None:
            raise ConfigError("give either --nodes or --preset, not both")
        if self.nodes is not None:
            if len(self.nodes) != 3 or not all(math.isfinite(v) for v in self.nodes):
                raise ConfigError("nodes must be three finite numbers t0,x,t1")

    def to_json(self) -> dict:
        d = asdict(self)
        if math.isinf(d["p"]):
            d["p"] = "inf"
        return d


def _float(text) -> float:
    if isinstance(text, (int, float)):
        return float(text)
    t = str(text).strip().lower()
    if t in ("inf", "infinity", "+inf"):
        return math.inf
    return float(t)


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rsquad", description="Two-point Riemann-Stieltjes quadrature: "
                                 "rules, error bounds and certificates.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--config", help="JSON file with ExperimentConfig fields; flags override it")
    ap.add_argument("--dump-config", metavar="PATH", help="write the resolved configuration to PATH")
    ap.add_argument("--f", help="integrand catalog id")
    ap.add_argument("--u", help="integrator catalog id")
    ap.add_argument("--a", type=float)
    ap.add_argument("--b", type=float)
    ap.add_argument("--nodes", help="t0,x,t1")
    ap.add_argument("--preset", help="trapezoid|midpoint|symmetric|half-nodes|quartile[:k=v,...]")
    ap.add_argument("--thm", help="theorem id: " + ", ".join(THEOREM_IDS))
    ap.add_argument("--p", help="variation / norm exponent (>= 1, or inf)")
    ap.add_argument("--r", type=float, help="required Hölder order; for sharpness, the exponent r")
    ap.add_argument("--n", type=int, help="derivative order for thm3")
    ap.add_argument("--cells", type=int, help="rule: number of uniform cells for the composite rule")
    ap.add_argument("--tol", type=float, help="oracle tolerance (default 1e-9, env RSQUAD_TOL)")
    ap.add_argument("--grid", help="sweep grid, e.g. t0:0:1:21,x:0:1:21,t1:0:1:21")
    ap.add_argument("--out", help="write the payload here instead of stdout")
    ap.add_argument("--format", choices=("json", "csv"))
    return ap


def resolve_config(argv: Sequence[str]) -> tuple[ExperimentConfig, Optional[str]]:
    ns = _parser().parse_args(list(argv))
    cfg = ExperimentConfig(command=ns.command)
    env_tol = os.environ.get("RSQUAD_TOL")
    if env_tol:
        cfg.tol = float(env_tol)
    if ns.config:
        with open(ns.config) as fh:
            data = json.load(fh)
        known = {f.name for f in fields(ExperimentConfig)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config keys {sorted(unknown)}")
        for k, v in data.items():
            if k == "command":
                continue
            setattr(cfg, k, v)
    for k in ("f", "u", "a", "b", "preset", "thm", "r", "n", "cells", "tol", "grid", "out", "format"):
        v = getattr(ns, k)
        if v is not None:
            setattr(cfg, k, v)
    if ns.p is not None:
        cfg.p = ns.p
    if ns.nodes is not None:
        cfg.nodes = ns.nodes
    try:
        cfg.p = _float(cfg.p)
        cfg.a, cfg.b, cfg.tol = float(cfg.a), float(cfg.b), float(cfg.tol)
        if isinstance(cfg.nodes, str):
            cfg.nodes = [float(v) for v in cfg.nodes.split(",")]
        elif cfg.nodes is not None:
            cfg.nodes = [float(v) for v in cfg.nodes]
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc
    cfg.validate()
    return cfg, ns.dump_config


def _nodes(cfg: ExperimentConfig) -> NodeTriple:
    if cfg.nodes is not None:
        return NodeTriple(*cfg.nodes, cfg.a, cfg.b)
    if cfg.preset is not None:
        name, params = parse_preset(cfg.preset)
        return preset_nodes(name, cfg.a, cfg.b, **params)
    raise ConfigError("give --nodes or --preset")


def _need(cfg: ExperimentConfig, *names: str) -> None:
    missing = [n for n in names if getattr(cfg, n) is None]
    if missing:
        raise ConfigError(f"{cfg.command} needs " + ", ".join("--" + n for n in missing))


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def execute(cfg: ExperimentConfig) -> tuple[str, int]:
    """Run the configured command; returns (payload, exit code)."""
    cmd = cfg.command
    if cmd == "integrate":
        _need(cfg, "f", "u")
        f, _ = make_catalog_entry(cfg.f, cfg.a, cfg.b)
        u, _ = make_catalog_entry(cfg.u, cfg.a, cfg.b)
        res = rs_integral(f, u, cfg.a, cfg.b, cfg.tol)
        return _dumps({"f": f.spec_id, "u": u.spec_id, "interval": [cfg.a, cfg.b], **res.to_dict()}), EXIT_OK
    if cmd == "variation":
        _need(cfg, "f")
        f, _ = make_catalog_entry(cfg.f, cfg.a, cfg.b)
        est = p_variation(f, cfg.p, cfg.a, cfg.b)
        if cfg.format == "csv":
            return witness_csv(f, est), EXIT_OK
        return _dumps({"f": f.spec_id, **est.to_dict()}), EXIT_OK
    if cmd == "rule":
        _need(cfg, "f", "u")
        f, _ = make_catalog_entry(cfg.f, cfg.a, cfg.b)
        u, _ = make_catalog_entry(cfg.u, cfg.a, cfg.b)
        if cfg.cells:
            name, params = parse_preset(cfg.preset or "half-nodes")
            rel = {k: (v - cfg.a) / (cfg.b - cfg.a) for k, v in params.items()}
            comp = composite_rule(f, u, cfg.cells, name, rel, cfg.tol, a=cfg.a, b=cfg.b)
            return _dumps({"f": f.spec_id, "u": u.spec_id, "cells": cfg.cells, "preset": name,
                           "q_value": comp.q_total, "integral": comp.oracle.value,
                           "error_estimate": comp.oracle.error_estimate,
                           "remainder": comp.remainder_total}), EXIT_OK
        nodes = _nodes(cfg)
        res = remainder(f, u, nodes, cfg.tol)
        return _dumps({"f": f.spec_id, "u": u.spec_id,
                       "nodes": {"t0": nodes.t0, "x": nodes.x, "t1": nodes.t1},
                       "q_value": res.q_value, "integral": res.oracle.value,
                       "error_estimate": res.oracle.error_estimate, "method": res.oracle.method,
                       "remainder": res.remainder}), EXIT_OK
    if cmd == "certify":
        _need(cfg, "f", "u", "thm")
        cert = certify_one(cfg.f, cfg.u, _nodes(cfg), cfg.thm, p=cfg.p, tol=cfg.tol, n=cfg.n, r=cfg.r)
        code = EXIT_VIOLATION if cert.verdict == "violated" else EXIT_OK
        if cfg.format == "csv":
            import csv, io
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(CSV_COLUMNS)
            w.writerow(certificate_row(cert))
            return buf.getvalue(), code
        return _dumps(cert.to_dict()), code
    if cmd == "sweep":
        _need(cfg, "f", "u", "thm")
        grid = GridSpec.parse(cfg.grid or "", cfg.a, cfg.b)
        rep = sweep(cfg.f, cfg.u, cfg.thm, grid, p=cfg.p, tol=cfg.tol, a=cfg.a, b=cfg.b, n=cfg.n, r=cfg.r)
        code = EXIT_VIOLATION if rep.violation_count else EXIT_OK
        if rep.failures and not rep.certificates:
            code = EXIT_NONCONVERGENCE
        if cfg.format == "json":
            return _dumps({"f": rep.f_id, "u": rep.u_id, "theorem": rep.theorem, "p": cfg.to_json()["p"],
                           "grid": grid.to_dict(), "summary": rep.summary(),
                           "failures": [{"nodes": list(n), "error": e} for n, e in rep.failures],
                           "certificates": [c.to_dict() for c in rep.certificates]}), code
        return rep.to_csv(), code
    if cmd == "sharpness":
        r = 0.5 if cfg.r is None else cfg.r
        certs = sharpness_suite(r_values=(r,), second_r=r)
        code = EXIT_VIOLATION if any(c.verdict == "violated" for c in certs) else EXIT_OK
        return _dumps([c.to_dict() for c in certs]), code
    raise ConfigError(f"unknown command {cmd!r}")  # pragma: no cover


def run(argv: Optional[Sequence[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg, dump = resolve_config(argv)
        if dump:
            with open(dump, "w") as fh:
                json.dump(cfg.to_json(), fh, indent=2)
                fh.write("\n")
        payload, code = execute(cfg)
    except SystemExit as exc:  # argparse usage errors
        return EXIT_INVALID if exc.code else EXIT_OK
    except ConvergenceError as exc:
        print(f"rsquad: oracle did not converge: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENCE
    except (ConfigError, CatalogError, DomainError, NodeError, HypothesisError, BoundError,
            VariationError, NonexistenceError, ValueError, OSError) as exc:
        print(f"rsquad: {exc}", file=sys.stderr)
        return EXIT_INVALID
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
