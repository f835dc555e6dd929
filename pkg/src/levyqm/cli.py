"""Command-line front end.

Subcommands: exponent, spectrum fit|solve, density, levy-measure,
evolve, propagator, loop, simulate, reproduce-tables.  Every run writes
its results atomically (temp file + rename) together with a JSON
provenance record of the fully resolved parameters; numbers in CSV
carry 17 significant digits so files diff exactly at double precision.

Exit codes: 0 success, 2 domain errors, 3 degenerate spectrum, 4 I/O.
"""

from __future__ import annotations

import argparse
import datetime
import json
import math
import os
import sys
import tempfile
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .densities import (GridSpec, default_grid, levy_density_1d,
                        levy_density_3d, moments, transition_density)
from .evolution import (evolve_modified, evolve_spectral, gaussian_packet,
                        observables)
from .exponents import (ExponentParams, LogCharacteristic,
                        eta_modified_branch, eta_relativistic)
from .presets import PRESET_MASSES, PRESET_NAMES, REFERENCE_LAMBDAS
from .propagators import (LOOP_VARIANTS, find_poles, loop_integral,
                          scan_propagator)
from .sampler import SeededGenerator, ks_validate, sample_endpoints, sample_path
from .spectrum import (CutoffPolynomial, DegenerateRootError, MassTriple,
                       lambdas_from_masses, masses_from_lambdas)

OUTPUT_DIR_ENV = "LEVYQM_OUTPUT_DIR"

EXIT_OK = 0
EXIT_DOMAIN = 2
EXIT_DEGENERATE = 3
EXIT_IO = 4


@dataclass
class RunConfig:
    """Resolved output policy of one CLI run."""

    output: Path
    seed: int | None = None
    digits: int = 17


# ---------------------------------------------------------------------------
# output helpers
# ---------------------------------------------------------------------------

def run_config(args, default_name: str, seed=None) -> RunConfig:
    if getattr(args, "output", None):
        out = Path(args.output)
    else:
        out = Path(os.environ.get(OUTPUT_DIR_ENV, ".")) / default_name
    return RunConfig(output=out, seed=seed)


def _atomic_write(path: Path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _fmt(value, digits: int) -> str:
    return format(float(value), f".{digits}g")


def write_csv(path: Path, header, columns, digits: int = 17) -> None:
    columns = [np.asarray(col) for col in columns]
    lines = [",".join(header)]
    for row in zip(*columns):
        lines.append(",".join(_fmt(v, digits) for v in row))
    _atomic_write(path, "\n".join(lines) + "\n")


def write_json(path: Path, payload: dict) -> None:
    _atomic_write(path, json.dumps(payload, indent=2, sort_keys=True) + "\n")


def provenance(subcommand: str, params: dict, seed=None) -> dict:
    return {
        "tool": "levyqm",
        "version": __version__,
        "subcommand": subcommand,
        "parameters": params,
        "seed": seed,
        "created_utc": datetime.datetime.now(datetime.timezone.utc).isoformat(),
    }


def _meta_path(path: Path) -> Path:
    return path.with_suffix(path.suffix + ".meta.json")


def _parse_floats(text: str, n=None):
    vals = [float(v) for v in text.split(",") if v.strip()]
    if n is not None and len(vals) != n:
        raise ValueError(f"expected {n} comma-separated values, got {len(vals)}")
    return vals


def _cutoff_from_args(args) -> tuple[CutoffPolynomial, float]:
    """(coefficients, base mass) from --preset or --lambdas/--masses."""
    if getattr(args, "preset", None):
        masses = MassTriple.from_values(PRESET_MASSES[args.preset])
        return lambdas_from_masses(masses), masses.m1
    if getattr(args, "lambdas", None):
        if args.mass is None:
            raise ValueError("--lambdas requires --mass")
        return CutoffPolynomial(*_parse_floats(args.lambdas, 3)), args.mass
    if getattr(args, "masses", None):
        masses = MassTriple.from_values(_parse_floats(args.masses, 3))
        base = masses.m1 if args.base == "lightest" else float(args.base)
        return lambdas_from_masses(masses, base=args.base), base
    raise ValueError("supply --preset, --lambdas or --masses")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_exponent(args) -> int:
    params = ExponentParams.from_mass(args.mass)
    u = np.linspace(0.0, args.u_max, args.points)
    if args.root_x is not None:
        eta = eta_modified_branch(u, params, args.root_x)
    else:
        eta = eta_relativistic(u, params)
    cfg = run_config(args, "exponent.csv")
    out = cfg.output
    write_csv(out, ["u", "eta"], [u, eta], cfg.digits)
    write_json(_meta_path(out), {
        "provenance": provenance("exponent", {
            "mass": args.mass, "u_max": args.u_max, "points": args.points,
            "root_x": args.root_x}),
        "summary": {"eta_min": float(np.min(eta))},
    })
    print(f"wrote {out}")
    return EXIT_OK


def cmd_spectrum_fit(args) -> int:
    masses = MassTriple.from_values(_parse_floats(args.masses, 3))
    c = lambdas_from_masses(masses, base=args.base)
    base = masses.m1 if args.base == "lightest" else float(args.base)
    solution = masses_from_lambdas(c, base)
    payload = {
        "lambdas": list(c.as_tuple()),
        **solution.to_dict(),
        "provenance": provenance("spectrum fit", {
            "masses": list(masses.as_tuple()), "base": args.base}),
    }
    out = run_config(args, "spectrum_fit.json").output
    write_json(out, payload)
    print(json.dumps({"lambdas": payload["lambdas"],
                      "degenerate": solution.degenerate}))
    if solution.degenerate:
        print("degenerate spectrum: multiple root, residues undefined",
              file=sys.stderr)
        return EXIT_DEGENERATE
    return EXIT_OK


def cmd_spectrum_solve(args) -> int:
    c = CutoffPolynomial(*_parse_floats(args.lambdas, 3))
    solution = masses_from_lambdas(c, args.mass)
    payload = {
        "lambdas": list(c.as_tuple()),
        **solution.to_dict(),
        "provenance": provenance("spectrum solve", {
            "lambdas": list(c.as_tuple()), "mass": args.mass}),
    }
    out = run_config(args, "spectrum_solve.json").output
    write_json(out, payload)
    print(json.dumps({"roots": payload["roots"], "masses": payload["masses"],
                      "degenerate": solution.degenerate}))
    return EXIT_DEGENERATE if solution.degenerate else EXIT_OK


def cmd_density(args) -> int:
    params = ExponentParams.from_mass(args.mass)
    eta = LogCharacteristic.relativistic(params)
    if args.dx is not None:
        grid = GridSpec(n=args.n, dx=args.dx)
    else:
        grid = default_grid(params, args.dt, n=args.n)
    table = transition_density(args.dt, params, eta, grid)
    cfg = run_config(args, "density.csv")
    out = cfg.output
    write_csv(out, ["x", "value"], [grid.x_centers(), table.values], cfg.digits)
    write_json(_meta_path(out), {
        "provenance": provenance("density", {
            "mass": args.mass, "dt": args.dt, "n": grid.n, "dx": grid.dx}),
        "grid": {"n": grid.n, "dx": grid.dx, "du": grid.du, "u_max": grid.u_max},
        "diagnostics": {"clipped_mass": table.clipped_mass,
                        "max_imag": table.max_imag},
        "summary": {"normalization": table.normalization(),
                    "variance": moments(table, 2)},
    })
    print(f"wrote {out}")
    return EXIT_OK


def cmd_levy_measure(args) -> int:
    params = ExponentParams.from_mass(args.mass)
    if args.log_spacing:
        x = np.geomspace(args.x_min, args.x_max, args.points)
    else:
        x = np.linspace(args.x_min, args.x_max, args.points)
    if args.dim == 1:
        values = levy_density_1d(x, params)
    else:
        values = levy_density_3d(x, params)
    cfg = run_config(args, "levy_measure.csv")
    out = cfg.output
    write_csv(out, ["x", "value"], [x, values], cfg.digits)
    write_json(_meta_path(out), {
        "provenance": provenance("levy-measure", {
            "mass": args.mass, "dim": args.dim, "x_min": args.x_min,
            "x_max": args.x_max, "points": args.points,
            "log_spacing": args.log_spacing}),
        "summary": {"value_at_first": float(values[0]),
                    "value_at_last": float(values[-1])},
    })
    print(f"wrote {out}")
    return EXIT_OK


def cmd_evolve(args) -> int:
    params = ExponentParams.from_mass(args.mass)
    grid = GridSpec(n=args.n, dx=args.dx)
    psi = gaussian_packet(args.x0, args.p0, args.sigma, grid)

    branch_solution = None
    if args.branch is not None:
        c, base = _cutoff_from_args(args)
        base_params = ExponentParams.from_mass(base)
        branch_solution = masses_from_lambdas(c, base)
        stepper = lambda w: evolve_modified(w, args.dt, base_params,
                                            branch_solution, args.branch)
    else:
        eta = LogCharacteristic.relativistic(params)
        stepper = lambda w: evolve_spectral(w, args.dt, eta, params.tau)

    rows = []
    snapshots = []
    cfg = run_config(args, "evolve.csv")
    out = cfg.output
    for step in range(args.steps + 1):
        obs = observables(psi)
        rows.append((step * args.dt, obs.norm, obs.centroid, obs.variance,
                     obs.momentum_centroid))
        if args.snapshot_every and step % args.snapshot_every == 0:
            snap = out.with_name(f"{out.stem}_psi_{step:05d}.csv")
            write_csv(snap, ["x", "re_psi", "im_psi"],
                      [grid.x_centers(), psi.values.real, psi.values.imag])
            snapshots.append(str(snap))
        if step < args.steps:
            psi = stepper(psi)

    cols = list(zip(*rows))
    write_csv(out, ["t", "norm", "centroid", "variance", "momentum_centroid"],
              cols)
    write_json(_meta_path(out), {
        "provenance": provenance("evolve", {
            "mass": args.mass, "x0": args.x0, "p0": args.p0,
            "sigma": args.sigma, "dt": args.dt, "steps": args.steps,
            "n": args.n, "dx": args.dx, "branch": args.branch}),
        "snapshots": snapshots,
        "summary": {"final_norm": rows[-1][1], "final_centroid": rows[-1][2],
                    "final_variance": rows[-1][3]},
    })
    print(f"wrote {out}")
    return EXIT_OK


def cmd_propagator(args) -> int:
    c, mass = _cutoff_from_args(args)
    eps = args.eps if args.eps is not None else 1e-9 * mass ** 2
    p2 = np.linspace(args.p2_min, args.p2_max, args.points)
    points = scan_propagator(p2, mass, c, eps)
    values = np.array([pt.value for pt in points])
    cfg = run_config(args, "propagator.csv")
    out = cfg.output
    write_csv(out, ["p2", "re", "im", "abs"],
              [p2, values.real, values.imag, np.abs(values)], cfg.digits)

    solution, fits = find_poles(mass, c, verify=False)
    write_json(_meta_path(out), {
        "provenance": provenance("propagator", {
            "mass": mass, "lambdas": list(c.as_tuple()), "eps": eps,
            "p2_min": args.p2_min, "p2_max": args.p2_max,
            "points": args.points}),
        "poles": solution.to_dict(),
        "pole_fits": [{
            "root": f.root, "p2_pole": f.p2_pole,
            "fitted_residue": f.fitted_residue,
            "algebraic_residue": f.algebraic_residue,
            "residue_mismatch": f.residue_mismatch,
            "fit_residual": f.fit_residual,
            "residue_x": f.residue_x,
        } for f in fits],
        "summary": {"max_abs": float(np.max(np.abs(values)))},
    })
    print(f"wrote {out}")
    return EXIT_DEGENERATE if solution.degenerate else EXIT_OK


def cmd_loop(args) -> int:
    c, mass = _cutoff_from_args(args)
    pe = args.pe if args.pe is not None else mass
    if args.cutoffs:
        cutoffs = np.asarray(_parse_floats(args.cutoffs))
    else:
        solution = masses_from_lambdas(c, mass)
        top = max([mass] + [m for m in solution.masses if not math.isnan(m)])
        cutoffs = 100.0 * top * 2.0 ** np.arange(0, args.octaves + 1)
    if args.variant == "all":
        variants = LOOP_VARIANTS
    else:
        variants = (f"unmodified-{args.variant}", f"modified-{args.variant}")
    result = loop_integral(pe, mass, c, cutoffs, variants=variants)

    cfg = run_config(args, "loop.csv")
    out = cfg.output
    header = ["cutoff"] + [v.replace("-", "_") for v in variants]
    write_csv(out, header,
              [result.cutoffs] + [result.values[v] for v in variants],
              cfg.digits)
    write_json(_meta_path(out), {
        "provenance": provenance("loop", {
            "mass": mass, "lambdas": list(c.as_tuple()), "pe": pe,
            "cutoffs": result.cutoffs.tolist(), "variant": args.variant}),
        "tail_fits": {v: result.tail_fits[v].to_dict() for v in variants},
    })
    print(f"wrote {out}")
    return EXIT_OK


def cmd_simulate(args) -> int:
    params = ExponentParams.from_mass(args.mass)
    gen = SeededGenerator(seed=args.seed, stream=args.stream)
    endpoints = sample_endpoints(args.t, params, gen, args.paths,
                                 steps=args.steps)
    cfg = run_config(args, "simulate.csv", seed=args.seed)
    out = cfg.output
    write_csv(out, ["endpoint"], [endpoints], cfg.digits)

    paths_file = None
    if args.full_paths:
        pgen = SeededGenerator(seed=args.seed, stream=args.stream + 1)
        rng = pgen.generator()
        ids, times, xs = [], [], []
        for pid in range(min(args.full_paths, args.paths)):
            path = sample_path(args.t, args.steps, params, rng)
            ids.extend([pid] * len(path.times))
            times.extend(path.times)
            xs.extend(path.positions)
        paths_file = out.with_name(out.stem + "_paths.csv")
        write_csv(paths_file, ["path", "t", "x"], [ids, times, xs])

    eta = LogCharacteristic.relativistic(params)
    grid = default_grid(params, args.t)
    reference = transition_density(args.t, params, eta, grid)
    report = ks_validate(endpoints, reference)

    write_json(_meta_path(out), {
        "provenance": provenance("simulate", {
            "mass": args.mass, "t": args.t, "steps": args.steps,
            "paths": args.paths, "stream": args.stream,
            "full_paths": args.full_paths}, seed=cfg.seed),
        "validation": {**report.to_dict(), "seed": cfg.seed},
        "paths_file": str(paths_file) if paths_file else None,
        "summary": {"mean": float(endpoints.mean()),
                    "variance": float(endpoints.var())},
    })
    print(json.dumps({"n": report.n, "d": report.d,
                      "threshold": report.threshold, "pass": report.passed}))
    return EXIT_OK


def cmd_reproduce_tables(args) -> int:
    rows = []
    all_pass = True
    for name in PRESET_NAMES:
        masses = MassTriple.from_values(PRESET_MASSES[name])
        c = lambdas_from_masses(masses)
        reference = REFERENCE_LAMBDAS[name]
        rel = [abs(got / ref - 1.0)
               for got, ref in zip(c.as_tuple(), reference)]
        ok = max(rel) < 5e-3
        all_pass &= ok
        rows.append({
            "preset": name,
            "masses": list(masses.as_tuple()),
            "lambdas_computed": list(c.as_tuple()),
            "lambdas_reference": list(reference),
            "max_rel_err": max(rel),
            "pass": ok,
        })
        print(f"{name}: {'pass' if ok else 'FAIL'} (max rel err {max(rel):.2e})")
    out = run_config(args, "reproduce_tables.json").output
    write_json(out, {
        "rows": rows,
        "passed": sum(r["pass"] for r in rows),
        "total": len(rows),
        "provenance": provenance("reproduce-tables", {}),
    })
    print(f"{sum(r['pass'] for r in rows)}/{len(rows)} rows pass; wrote {out}")
    return EXIT_OK if all_pass else 1


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _add_cutoff_source(p, with_base=True, with_mass=True):
    p.add_argument("--preset", choices=PRESET_NAMES)
    p.add_argument("--lambdas", help="l1,l2,l3")
    p.add_argument("--masses", help="m1,m2,m3 in GeV")
    if with_mass:
        p.add_argument("--mass", type=float, help="base mass in GeV")
    if with_base:
        p.add_argument("--base", default="lightest",
                       help="'lightest' or an explicit base mass in GeV")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="levyqm",
        description="Levy-process relativistic quantum dynamics laboratory")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("exponent", help="tabulate a log-characteristic")
    p.add_argument("--mass", type=float, required=True)
    p.add_argument("--u-max", type=float, default=10.0)
    p.add_argument("--points", type=int, default=256)
    p.add_argument("--root-x", type=float, default=None,
                   help="evaluate the branch exponent of this spectrum root")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_exponent)

    p = sub.add_parser("spectrum", help="cutoff-spectrum algebra")
    spectrum_sub = p.add_subparsers(dest="spectrum_command", required=True)
    pf = spectrum_sub.add_parser("fit", help="coefficients from three masses")
    pf.add_argument("--masses", required=True, help="m1,m2,m3 in GeV")
    pf.add_argument("--base", default="lightest")
    pf.add_argument("-o", "--output")
    pf.set_defaults(func=cmd_spectrum_fit)
    ps = spectrum_sub.add_parser("solve", help="spectrum from coefficients")
    ps.add_argument("--lambdas", required=True, help="l1,l2,l3")
    ps.add_argument("--mass", type=float, required=True)
    ps.add_argument("-o", "--output")
    ps.set_defaults(func=cmd_spectrum_solve)

    p = sub.add_parser("density", help="transition density by FFT inversion")
    p.add_argument("--mass", type=float, required=True)
    p.add_argument("--dt", type=float, required=True)
    p.add_argument("--n", type=int, default=2 ** 14)
    p.add_argument("--dx", type=float, default=None)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("levy-measure", help="tabulate a jump kernel")
    p.add_argument("--mass", type=float, required=True)
    p.add_argument("--dim", type=int, choices=(1, 3), default=1)
    p.add_argument("--x-min", type=float, default=1e-3)
    p.add_argument("--x-max", type=float, default=20.0)
    p.add_argument("--points", type=int, default=512)
    p.add_argument("--log-spacing", action="store_true")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_levy_measure)

    p = sub.add_parser("evolve", help="spectral wave-packet evolution")
    p.add_argument("--mass", type=float, required=True)
    p.add_argument("--x0", type=float, default=0.0)
    p.add_argument("--p0", type=float, default=0.0)
    p.add_argument("--sigma", type=float, default=1.0)
    p.add_argument("--dt", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--n", type=int, default=2 ** 12)
    p.add_argument("--dx", type=float, default=0.05)
    p.add_argument("--branch", type=int, default=None,
                   help="evolve on this spectrum branch (needs a cutoff source)")
    p.add_argument("--snapshot-every", type=int, default=0)
    _add_cutoff_source(p, with_base=False, with_mass=False)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_evolve, base="lightest")

    p = sub.add_parser("propagator", help="scalar propagator scan and poles")
    _add_cutoff_source(p)
    p.add_argument("--p2-min", type=float, default=0.0)
    p.add_argument("--p2-max", type=float, default=4.0)
    p.add_argument("--points", type=int, default=2048)
    p.add_argument("--eps", type=float, default=None)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_propagator)

    p = sub.add_parser("loop", help="cutoff sweep of the self-energy proxy")
    _add_cutoff_source(p)
    p.add_argument("--variant", choices=("scalar", "mass", "all"),
                   default="scalar")
    p.add_argument("--pe", type=float, default=None,
                   help="external Euclidean momentum (default: base mass)")
    p.add_argument("--cutoffs", help="comma-separated cutoff list in GeV")
    p.add_argument("--octaves", type=int, default=8)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_loop)

    p = sub.add_parser("simulate", help="sample the pure-jump process")
    p.add_argument("--mass", type=float, required=True)
    p.add_argument("--t", type=float, default=1.0)
    p.add_argument("--steps", type=int, default=1)
    p.add_argument("--paths", type=int, default=10 ** 5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--stream", type=int, default=0)
    p.add_argument("--full-paths", type=int, default=0,
                   help="also write this many full trajectories")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("reproduce-tables",
                       help="recompute the bundled coefficient tables")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_reproduce_tables)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DegenerateRootError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
