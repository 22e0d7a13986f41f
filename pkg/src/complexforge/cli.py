"""Command line front end.

    complexforge verify identities --degree 4 --trials 100 --seed 7
    complexforge potential --op rotrot --in field.json --out potential.json
    complexforge decompose --op div --in field.json
    complexforge grid --in domain.txt --bc natural
    complexforge helmholtz --a0 d0.mtx --a1 d1.mtx --trials 100

stdout carries only the JSON report; diagnostics go to stderr.
Exit codes: 0 pass, 1 I/O or parse error, 2 failed check, 3 violated
precondition.
"""
from __future__ import annotations

import argparse
import datetime as _dt
import json
import logging
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from . import fa_toolbox as fa
from .elasticity import (
    as_rigid_motion, decompose_div_domain, decompose_rotrot_domain,
    potential_div_sym, potential_rot_rot_t, potential_sym_grad,
)
from .errors import ComplexForgeError, FieldFormatError, PreconditionError
from .exact_poly import (
    IDENTITY_ARITY, IDENTITY_IDS, FieldSampler, PolyScalarField, PolyTensorField,
    PolyVectorField, cutting_div, cutting_rotrot_residual, div, field_to_dict, grad,
    loads, residual_is_zero, rot, rot_rot_t, sym, sym_grad, tensor_div,
    verify_appendix_identity,
)
from .exact_poly.identities import SYMMETRIC_ONLY
from .grid_complex import (
    build_cubical_complex, grid_report, read_voxel_file,
)

log = logging.getLogger("complexforge")

EXIT_OK, EXIT_IO, EXIT_FAILED, EXIT_PRECONDITION = 0, 1, 2, 3


@dataclass
class RunConfig:
    command: str
    seed: int = 0
    degree: int = 4
    trials: int = 100
    terms: int = 4
    tol: float = fa.TOL_RANK
    input: str | None = None
    output: str | None = None
    bc: str = "natural"
    no_timestamp: bool = False
    extra: dict = field(default_factory=dict)

    def echo(self) -> dict:
        d = {
            "command": self.command, "seed": self.seed, "degree": self.degree,
            "trials": self.trials, "terms": self.terms, "tol": self.tol,
            "in": self.input, "out": self.output, "bc": self.bc,
        }
        d.update(self.extra)
        return d


class DecompositionReport:
    """Accumulates checks; overall status is pass iff every check passes."""

    def __init__(self, config: RunConfig):
        self.config = config
        self.checks: list = []
        self.data: dict = {}
        self._t0 = time.perf_counter()

    def check(self, name: str, passed: bool, **info) -> None:
        entry = {"name": name, "status": "pass" if passed else "fail"}
        entry.update(info)
        self.checks.append(entry)
        if not passed:
            log.error("check failed: %s", name)

    @property
    def passed(self) -> bool:
        return all(c["status"] == "pass" for c in self.checks)

    def to_dict(self) -> dict:
        out = {
            "version": __version__,
            "config": self.config.echo(),
            "checks": self.checks,
            "status": "pass" if self.passed else "fail",
        }
        out.update(self.data)
        if not self.config.no_timestamp:
            out["timing_s"] = round(time.perf_counter() - self._t0, 6)
            out["timestamp"] = _dt.datetime.now(_dt.timezone.utc).isoformat()
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("COMPLEXFORGE_THREADS", "1")))
    except ValueError:
        return 1


def _run_trials(fn, trials: int) -> list:
    n = _threads()
    if n == 1 or trials <= 1:
        return [fn(t) for t in range(trials)]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, range(trials)))


def _sampler(cfg: RunConfig, trial: int) -> FieldSampler:
    # per-trial stream so results do not depend on the thread count
    return FieldSampler(seed=f"{cfg.seed}:{trial}", degree=cfg.degree, terms=cfg.terms)


def _tally(report: DecompositionReport, names, outcomes: list) -> None:
    for name in names:
        results = [o[name] for o in outcomes if name in o]
        if not results:
            report.check(name, True, trials=0, exact_zero=None, skipped=True)
            continue
        report.check(name, all(results), trials=len(results), exact_zero=all(results),
                     failures=sum(not r for r in results))


# -- verify

CUTTING_CHECKS = ("cutting_div", "cutting_rotrot")


def _identity_trial(cfg: RunConfig, fixed=None):
    def trial(t):
        s = _sampler(cfg, t)
        u, v, M = s.scalar(), s.vector(), s.tensor()
        phi = s.scalar()
        if isinstance(fixed, PolyScalarField):
            u = phi = fixed
        elif isinstance(fixed, PolyVectorField):
            v = fixed
        elif isinstance(fixed, PolyTensorField):
            M = fixed
        S = sym(M)
        out = {}
        for ident in IDENTITY_IDS:
            arity = IDENTITY_ARITY[ident]
            if fixed is not None and {"u": PolyScalarField, "v": PolyVectorField,
                                      "M": PolyTensorField}[arity] is not type(fixed):
                continue
            arg = S if ident in SYMMETRIC_ONLY else M
            if fixed is not None and ident in SYMMETRIC_ONLY and not M.is_symmetric():
                continue
            kw = {"u": {"u": u}, "v": {"v": v}, "M": {"M": arg}}[arity]
            out[ident] = residual_is_zero(verify_appendix_identity(ident, **kw))
        if fixed is None or isinstance(fixed, (PolyScalarField, PolyTensorField)):
            N = S if not isinstance(fixed, PolyTensorField) else M
            out["cutting_div"] = cutting_div(phi, N).is_zero()
            if N.is_symmetric():
                out["cutting_rotrot"] = cutting_rotrot_residual(phi, N).is_zero()
        return out
    return trial


def _complex_trial(cfg: RunConfig):
    def trial(t):
        s = _sampler(cfg, t)
        u, v, w, S = s.scalar(), s.vector(), s.vector(), s.symmetric_tensor()
        return {
            "rot_grad": rot(grad(u)).is_zero(),
            "div_rot": div(rot(v)).is_zero(),
            "rotrot_symgrad": rot_rot_t(sym_grad(w)).is_zero(),
            "div_rotrot": tensor_div(rot_rot_t(S)).is_zero(),
        }
    return trial


def _potential_trial(cfg: RunConfig):
    def trial(t):
        s = _sampler(cfg, t)
        w, S, v, S2 = s.vector(), s.symmetric_tensor(), s.vector(), s.symmetric_tensor()
        M = sym_grad(w)
        pv = potential_sym_grad(M)
        N = rot_rot_t(S)
        pm = potential_rot_rot_t(N)
        pn = potential_div_sym(v)
        d1 = decompose_rotrot_domain(S2)
        d2 = decompose_div_domain(S2)
        return {
            "symgrad_roundtrip": sym_grad(pv) == M,
            "rotrot_roundtrip": rot_rot_t(pm) == N and pm.is_symmetric(),
            "div_roundtrip": tensor_div(pn) == v and pn.is_symmetric(),
            "rigid_motion_gauge": as_rigid_motion(pv - w) is not None,
            "decompose_rotrot": d1.residual_zero and d1.smooth_part.is_symmetric(),
            "decompose_div": d2.residual_zero and d2.smooth_part.is_symmetric(),
        }
    return trial


SUITES = {
    "identities": (lambda cfg, fixed: _identity_trial(cfg, fixed),
                   IDENTITY_IDS + CUTTING_CHECKS),
    "complex": (lambda cfg, fixed: _complex_trial(cfg),
                ("rot_grad", "div_rot", "rotrot_symgrad", "div_rotrot")),
    "potentials": (lambda cfg, fixed: _potential_trial(cfg),
                   ("symgrad_roundtrip", "rotrot_roundtrip", "div_roundtrip",
                    "rigid_motion_gauge", "decompose_rotrot", "decompose_div")),
}


def _read_field(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise FieldFormatError(f"cannot read {path}: {exc}") from None
    return loads(text)


def run_verify(cfg: RunConfig, suite: str) -> tuple:
    if cfg.degree < 0 or cfg.trials < 1:
        raise ValueError("need degree >= 0 and trials >= 1")
    fixed = _read_field(cfg.input) if cfg.input else None
    make, names = SUITES[suite]
    trials = 1 if fixed is not None else cfg.trials
    outcomes = _run_trials(make(cfg, fixed), trials)
    report = DecompositionReport(cfg)
    report.data["suite"] = suite
    _tally(report, names, outcomes)
    return report, EXIT_OK if report.passed else EXIT_FAILED


def run_identity_suite(cfg: RunConfig) -> tuple:
    return run_verify(cfg, "identities")


# -- potential / decompose

def _write_or_embed(report: DecompositionReport, cfg: RunConfig, key: str, payload: dict):
    if cfg.output:
        Path(cfg.output).write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n")
        report.data[key + "_path"] = cfg.output
    else:
        report.data[key] = payload


def run_potential(cfg: RunConfig, op: str) -> tuple:
    f = _read_field(cfg.input)
    report = DecompositionReport(cfg)
    expected = PolyVectorField if op == "div" else PolyTensorField
    if not isinstance(f, expected):
        report.check("input_kind", False, expected=expected.__name__, got=type(f).__name__)
        return report, EXIT_PRECONDITION
    try:
        if op == "symgrad":
            p = potential_sym_grad(f)
            back = sym_grad(p)
        elif op == "rotrot":
            p = potential_rot_rot_t(f)
            back = rot_rot_t(p)
        else:
            p = potential_div_sym(f)
            back = tensor_div(p)
    except PreconditionError as exc:
        report.check("precondition", False, message=str(exc))
        if exc.residual is not None:
            report.data["residual"] = field_to_dict(exc.residual)
        return report, EXIT_PRECONDITION
    residual = back - f
    report.check("roundtrip", residual.is_zero(), exact_zero=residual.is_zero())
    _write_or_embed(report, cfg, "output", field_to_dict(p))
    return report, EXIT_OK if report.passed else EXIT_FAILED


def run_decompose(cfg: RunConfig, op: str) -> tuple:
    f = _read_field(cfg.input)
    report = DecompositionReport(cfg)
    if not isinstance(f, PolyTensorField):
        report.check("input_kind", False, expected="PolyTensorField", got=type(f).__name__)
        return report, EXIT_PRECONDITION
    try:
        dec = decompose_rotrot_domain(f) if op == "rotrot" else decompose_div_domain(f)
    except PreconditionError as exc:
        report.check("precondition", False, message=str(exc))
        if exc.residual is not None:
            report.data["residual"] = field_to_dict(exc.residual)
        return report, EXIT_PRECONDITION
    report.check("reconstruction", dec.residual_zero, exact_zero=dec.residual_zero)
    report.check("smooth_symmetric", dec.smooth_part.is_symmetric())
    report.data["summands"] = list(dec.summands)
    _write_or_embed(report, cfg, "decomposition", dec.to_dict())
    return report, EXIT_OK if report.passed else EXIT_FAILED


# -- grid / helmholtz

def run_grid_report(cfg: RunConfig) -> tuple:
    domain = read_voxel_file(cfg.input)
    report = DecompositionReport(cfg)
    g = grid_report(domain, cfg.bc, cfg.tol)
    report.data["grid"] = g
    report.check("boundary_of_boundary", g["boundary_of_boundary_zero"])
    report.check("euler_characteristic", g["euler"]["match"])
    topo = g["topology"]
    report.check("elasticity_dims_6x",
                 topo["elasticity_dirichlet_dim"] == 6 * topo["dirichlet_dim"]
                 and topo["elasticity_neumann_dim"] == 6 * topo["neumann_dim"])
    report.check("harmonic_matches_betti", g["harmonic_dims"] == g["betti"])
    return report, EXIT_OK if report.passed else EXIT_FAILED


def _helmholtz_pairs(cfg: RunConfig, args) -> list:
    if args.grid:
        domain = read_voxel_file(args.grid)
        cx = build_cubical_complex(domain, cfg.bc)
        return [(f"level{k}", cx.pair(k)) for k in range(4) if cx.counts[k]]
    if not (args.a0 and args.a1):
        raise FieldFormatError("helmholtz needs --a0 and --a1, or --grid")
    return [("pair", fa.ComplexPair(fa.read_matrix(args.a0), fa.read_matrix(args.a1)))]


def run_helmholtz(cfg: RunConfig, args) -> tuple:
    report = DecompositionReport(cfg)
    out = {}
    for name, pair in _helmholtz_pairs(cfg, args):
        summary = fa.complex_report(pair, cfg.tol)
        rng = np.random.default_rng(cfg.seed)
        n1 = pair.dims[1]
        xs = [fa.read_vector(cfg.input)] if cfg.input else \
            [rng.standard_normal(n1) for _ in range(cfg.trials)]
        worst_res = worst_orth = 0.0
        for x in xs:
            if x.shape != (n1,):
                raise FieldFormatError(f"vector has length {x.size}, expected {n1}")
            split = fa.helmholtz_split(pair, x, cfg.tol)
            worst_res = max(worst_res, split.residual_norm)
            parts = split.parts()
            xn = pair.h1.norm(x) or 1.0
            for i in range(3):
                for j in range(i + 1, 3):
                    worst_orth = max(worst_orth, abs(pair.h1.inner(parts[i], parts[j])) / xn ** 2)
        summary["residuals"].update({"reconstruction": worst_res, "orthogonality": worst_orth})
        out[name] = summary
        report.check(f"{name}_helmholtz", worst_res <= 1e-10 and worst_orth <= 1e-10,
                     samples=len(xs))
        report.check(f"{name}_rank_nullity", summary["harmonic_dim"] == summary["rank_nullity_dim"])
    report.data["pairs"] = out
    return report, EXIT_OK if report.passed else EXIT_FAILED


# -- argument parsing

def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--degree", type=int, default=4)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--terms", type=int, default=4, help="monomials per random scalar entry")
    p.add_argument("--tol", type=float, default=fa.TOL_RANK)
    p.add_argument("--in", dest="input")
    p.add_argument("--out", dest="output")
    p.add_argument("--bc", choices=("natural", "dirichlet"), default="natural")
    p.add_argument("--no-timestamp", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="complexforge", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run exact identity / complex / potential suites")
    p.add_argument("suite", choices=sorted(SUITES))
    _common(p)

    p = sub.add_parser("potential", help="apply an elasticity potential operator")
    p.add_argument("--op", choices=("symgrad", "rotrot", "div"), required=True)
    _common(p)

    p = sub.add_parser("decompose", help="regular decomposition of a symmetric field")
    p.add_argument("--op", choices=("rotrot", "div"), required=True)
    _common(p)

    p = sub.add_parser("grid", help="topology report for a voxel domain")
    _common(p)

    p = sub.add_parser("helmholtz", help="Helmholtz splitting for a matrix complex")
    p.add_argument("--a0")
    p.add_argument("--a1")
    p.add_argument("--grid", help="voxel file; use its cubical complex levels")
    _common(p)
    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, stream=sys.stderr,
                        format="complexforge: %(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    extra = {k: getattr(args, k) for k in ("suite", "op", "a0", "a1", "grid") if hasattr(args, k)}
    cfg = RunConfig(
        command=args.command, seed=args.seed, degree=args.degree, trials=args.trials,
        terms=args.terms, tol=args.tol, input=args.input, output=args.output,
        bc=args.bc, no_timestamp=args.no_timestamp, extra=extra,
    )
    try:
        if args.command == "verify":
            report, code = run_verify(cfg, args.suite)
        elif args.command in ("potential", "decompose", "grid") and not cfg.input:
            raise FieldFormatError(f"{args.command} needs --in PATH")
        elif args.command == "potential":
            report, code = run_potential(cfg, args.op)
        elif args.command == "decompose":
            report, code = run_decompose(cfg, args.op)
        elif args.command == "grid":
            report, code = run_grid_report(cfg)
        else:
            report, code = run_helmholtz(cfg, args)
    except (ComplexForgeError, OSError, ValueError) as exc:
        log.error("%s", exc)
        return EXIT_IO
    sys.stdout.write(report.dumps() + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
