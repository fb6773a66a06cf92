"""Command-line surface: reproducible evaluation, verification suites and
simulation runs with machine-readable output.

Exit codes: 0 success, 1 verification failure, 2 invalid flags or parameters.
Errors are emitted as one JSON object on stderr.  The default seed is fixed
(0xC0FFEE) so every run is reproducible unless --seed is given.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import numpy as np

from . import __version__
from .errors import DomainError, InvalidParameterError, NotUnimodalError
from .measures import GFGParams, atom_mass, gfg_density, gfg_measure, support
from .transforms import cauchy_transform, r_gfg, s_gfg
from .cumulants import free_cumulant, moment, gfg_r_radius
from .convolution import CATALOG_IDS, default_identity_params, verify_identity
from .gibbs import (
    CLASSICAL_IDS,
    partition_function,
    gibbs_density,
    pearson_residual,
    verify_classical_identity,
)
from .equilibrium import (
    el_residual,
    endpoint_equations,
    effective_potential,
    free_entropy,
    maximality_probe,
)
from .rmt import MEASURE_LEVEL_IDS, RngStream, measure_level_check
from .finite_free import convergence_study, finite_s_at

DEFAULT_SEED = 0xC0FFEE

__all__ = ["main", "run"]


def _fraction_or_float(text: str):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")


def _params(args, exact: bool = False) -> GFGParams:
    """Exact Fractions only where rational arithmetic matters (moments);
    everything else runs in floats."""
    conv = (lambda v: v) if exact else float
    return GFGParams(conv(args.t), conv(args.theta), conv(args.lam))


def _add_param_flags(sub):
    sub.add_argument("--t", type=_fraction_or_float, required=True)
    sub.add_argument("--theta", type=_fraction_or_float, required=True)
    sub.add_argument(
        "--lambda", dest="lam", type=_fraction_or_float, required=True
    )


def _add_io_flags(sub):
    sub.add_argument("--format", choices=("json", "csv"), default="json")
    sub.add_argument("--output", default=None, help="file path; default stdout")


def _emit(args, command: str, meta: dict, header: list, rows: list) -> None:
    out = open(args.output, "w") if args.output else sys.stdout
    try:
        if args.format == "json":
            doc = {
                "schema": 1,
                "command": command,
                "version": __version__,
                **meta,
                "columns": header,
                "rows": rows,
            }
            print(json.dumps(doc, sort_keys=True, default=str), file=out)
        else:
            print(f"# schema: 1", file=out)
            print(f"# command: {command}", file=out)
            print(f"# version: {__version__}", file=out)
            for k in sorted(meta):
                print(f"# {k}: {meta[k]}", file=out)
            print(",".join(header), file=out)
            for row in rows:
                print(",".join(str(v) for v in row), file=out)
    finally:
        if args.output:
            out.close()


def _meta(p: GFGParams, seed=None) -> dict:
    m = {"params": f"t={p.t} theta={p.theta} lambda={p.lam}"}
    if seed is not None:
        m["seed"] = seed
    return m


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_density(args) -> int:
    p = _params(args)
    sup = support(p)
    xs = np.linspace(sup.lo, sup.hi, args.grid + 2)[1:-1]
    rows = [(float(x), gfg_density(p, float(x))) for x in xs]
    meta = _meta(p)
    meta["atom0"] = atom_mass(p)
    meta["support"] = f"({sup.lo}, {sup.hi})"
    _emit(args, "density", meta, ["x", "density"], rows)
    return 0


def _cmd_transform(args) -> int:
    p = _params(args)
    n = args.grid
    rows = []
    if args.which == "cauchy":
        sup = support(p)
        for x in np.linspace(sup.lo - 1, sup.hi + 1, n):
            z = complex(x, 1.0)
            v = cauchy_transform(p, z)
            rows.append((z.real, z.imag, v.real, v.imag))
        header = ["z_re", "z_im", "G_re", "G_im"]
    elif args.which == "r":
        radius = gfg_r_radius(p)
        for x in np.linspace(-0.9 * radius, -0.02 * radius, n):
            v = r_gfg(p, float(x))
            rows.append((float(x), complex(v).real))
        header = ["z", "R"]
    elif args.which == "s":
        lo = -1 + atom_mass(p)
        for x in np.linspace(lo + 0.02, -0.02, n):
            rows.append((float(x), s_gfg(p, float(x))))
        header = ["z", "S"]
    else:  # pragma: no cover - argparse restricts choices
        raise DomainError(f"unknown transform {args.which!r}")
    _emit(args, "transform", _meta(p), header, rows)
    return 0


def _cmd_moments(args) -> int:
    p = _params(args, exact=True)
    rows = []
    for n in range(1, args.n + 1):
        m = moment(p, n)
        k = free_cumulant(p, n)
        rows.append((n, str(m), str(k)))
    _emit(args, "moments", _meta(p), ["n", "moment", "free_cumulant"], rows)
    return 0


def _cmd_verify(args) -> int:
    p = _params(args)
    rng = RngStream(args.seed)
    rows = []
    failed = False

    def note(name, status, detail):
        nonlocal failed
        rows.append((name, status, detail))
        if status == "FAIL":
            failed = True

    if args.suite in ("free", "all"):
        for ident in CATALOG_IDS:
            try:
                rep = verify_identity(ident, default_identity_params(ident, p))
                note(ident, "PASS" if rep.passed else "FAIL",
                     f"max_dev={rep.max_abs_deviation:.3e}")
            except DomainError as exc:
                note(ident, "SKIP", str(exc))
    if args.suite in ("classical", "all"):
        for ident in CLASSICAL_IDS:
            try:
                rep = verify_classical_identity(ident, p, 10**5, rng.child(1))
                note(ident, "PASS" if rep.passed else "FAIL", f"ks={rep.ks:.4f}")
            except DomainError as exc:
                note(ident, "SKIP", str(exc))
    if args.suite in ("entropy", "all"):
        try:
            sup = support(p)
            xs = np.linspace(
                sup.lo + 1e-3 * sup.width, sup.hi - 1e-3 * sup.width, 50
            )
            dev = max(abs(el_residual(p, float(x))) for x in xs)
            note("EULER_LAGRANGE", "PASS" if dev <= 1e-10 else "FAIL",
                 f"max_residual={dev:.3e}")
            eq = endpoint_equations(p)
            ok = abs(eq["eq0"]) <= 1e-8 and abs(eq["eq2"] - 2) <= 1e-8
            note("ENDPOINTS", "PASS" if ok else "FAIL",
                 f"eq0={eq['eq0']:.3e} eq2={eq['eq2']!r}")
        except DomainError as exc:
            note("ENTROPY_SUITE", "SKIP", str(exc))
    _emit(args, "verify", _meta(p, args.seed), ["check", "status", "detail"], rows)
    return 1 if failed else 0


def _cmd_rmt(args) -> int:
    p_dummy = None
    rows = []
    passes = 0
    for k in range(args.seeds):
        rep = measure_level_check(args.identity, args.dim, RngStream(args.seed, k))
        ok = rep["ks"] < 0.07
        passes += ok
        row = [k, rep["ks"], "PASS" if ok else "FAIL"]
        if "atom_gap" in rep:
            row.append(rep["atom_gap"])
        rows.append(tuple(row))
    header = ["seed_stream", "ks", "status"]
    if rows and len(rows[0]) == 4:
        header.append("atom_gap")
    meta = {"identity": args.identity, "dim": args.dim, "seed": args.seed}
    _emit(args, "rmt", meta, header, rows)
    return 0 if passes > args.seeds // 2 else 1


def _cmd_gibbs(args) -> int:
    p = _params(args)
    sup_hi = 8.0 * float(p.t * (p.lam - 1) if p.lam > 1 else p.t**2 / p.theta)
    xs = np.geomspace(sup_hi / 1000, sup_hi, args.grid)
    rows = [(float(x), gibbs_density(p, float(x))) for x in xs]
    meta = _meta(p)
    meta["partition_function"] = partition_function(p)
    meta["pearson_residual_max"] = max(
        abs(pearson_residual(p, float(x))) for x in xs
    )
    _emit(args, "gibbs", meta, ["x", "gibbs_density"], rows)
    return 0


def _cmd_entropy(args) -> int:
    p = _params(args)
    ev = free_entropy(p, gfg_measure(p))
    meta = _meta(p)
    meta["logarithmic_energy"] = ev.logarithmic_energy
    meta["potential_term"] = ev.potential_term
    meta["total"] = ev.total
    rows = []
    code = 0
    if not args.skip_probe:
        probe = maximality_probe(p)
        for fam, mag, val, margin in probe["rows"]:
            rows.append((fam, mag, val, margin))
        meta["all_below"] = probe["all_below"]
        if not probe["all_below"]:
            code = 1
    _emit(args, "entropy", meta, ["family", "magnitude", "total", "margin"], rows)
    return code


def _cmd_finite_free(args) -> int:
    p = _params(args)
    dims = [int(x) for x in args.dims.split(",")]
    table = convergence_study(p, dims)
    rows = [(r["d"], r["w1"], r["ks"]) for r in table]
    meta = _meta(p)
    meta["s_gap_d200_z_half"] = abs(
        finite_s_at(p, 200, 0.5) - s_gfg(p, -0.5)
    )
    _emit(args, "finite-free", meta, ["d", "w1", "ks"], rows)
    w1s = [r["w1"] for r in table]
    return 0 if all(b < a for a, b in zip(w1s, w1s[1:])) else 1


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="freegamma",
        description="Free gamma-type distribution toolkit",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    d = sub.add_parser("density", help="closed-form density on a support grid")
    _add_param_flags(d)
    d.add_argument("--grid", type=int, default=100)
    _add_io_flags(d)
    d.set_defaults(fn=_cmd_density)

    tr = sub.add_parser("transform", help="evaluate a transform on a grid")
    _add_param_flags(tr)
    tr.add_argument("--which", choices=("cauchy", "r", "s"), required=True)
    tr.add_argument("--grid", type=int, default=50)
    _add_io_flags(tr)
    tr.set_defaults(fn=_cmd_transform)

    mo = sub.add_parser("moments", help="exact moments and free cumulants")
    _add_param_flags(mo)
    mo.add_argument("--n", type=int, default=4)
    _add_io_flags(mo)
    mo.set_defaults(fn=_cmd_moments)

    ve = sub.add_parser("verify", help="run verification suites")
    _add_param_flags(ve)
    ve.add_argument(
        "--suite", choices=("free", "classical", "entropy", "all"), default="all"
    )
    ve.add_argument("--seed", type=int, default=DEFAULT_SEED)
    _add_io_flags(ve)
    ve.set_defaults(fn=_cmd_verify)

    rm = sub.add_parser("rmt", help="random-matrix measure-level check")
    rm.add_argument("--identity", choices=MEASURE_LEVEL_IDS, required=True)
    rm.add_argument("--dim", type=int, default=1000)
    rm.add_argument("--seeds", type=int, default=3)
    rm.add_argument("--seed", type=int, default=DEFAULT_SEED)
    _add_io_flags(rm)
    rm.set_defaults(fn=_cmd_rmt)

    gi = sub.add_parser("gibbs", help="Gibbs density, normalizer, Pearson check")
    _add_param_flags(gi)
    gi.add_argument("--grid", type=int, default=100)
    _add_io_flags(gi)
    gi.set_defaults(fn=_cmd_gibbs)

    en = sub.add_parser("entropy", help="weighted entropy and maximality probe")
    _add_param_flags(en)
    en.add_argument("--skip-probe", action="store_true")
    _add_io_flags(en)
    en.set_defaults(fn=_cmd_entropy)

    ff = sub.add_parser("finite-free", help="finite free convergence table")
    _add_param_flags(ff)
    ff.add_argument("--dims", default="16,32,64,128")
    _add_io_flags(ff)
    ff.set_defaults(fn=_cmd_finite_free)

    return ap


def run(argv=None) -> int:
    ap = _build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except (InvalidParameterError, DomainError, NotUnimodalError) as exc:
        print(
            json.dumps(
                {"schema": 1, "error": type(exc).__name__, "message": str(exc)}
            ),
            file=sys.stderr,
        )
        return 2
    except Exception as exc:  # computation-level failure
        print(
            json.dumps(
                {"schema": 1, "error": type(exc).__name__, "message": str(exc)}
            ),
            file=sys.stderr,
        )
        return 1


def main() -> None:
    sys.exit(run())
