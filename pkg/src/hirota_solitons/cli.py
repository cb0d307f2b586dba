"""Command-line front end.

Subcommands:
  validate  -- parse a spectral-data file and report invariant violations
  sample    -- sample the reconstructed field over a grid, write CSV/JSON
               (optionally render figures alongside the delimited output)
  verify    -- run the selected verification oracles and gate on tolerances

Reports go to stdout as JSON; a short human summary goes to stderr.  Exit
codes: 0 pass, 1 check failure, 2 configuration error, 3 I/O error,
4 numerical degeneracy.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass, field

import numpy as np

from . import engine, gridio, residuals, scattering
from .errors import (
    ConfigError,
    NonFiniteState,
    SingularKernel,
    TailNotDecayed,
)
from .spectral import SpectralConfig, config_digest, parse_config, validate

EXIT_PASS = 0
EXIT_CHECK_FAILED = 1
EXIT_CONFIG_ERROR = 2
EXIT_IO_ERROR = 3
EXIT_DEGENERATE = 4

DEFAULTS = {
    "grid": "-10,10,401,0,0,1",
    "parts": "modulus,real,imag",
    "format": "csv",
    "order": 6,
    "h_x": 1e-2,
    "h_t": 1e-2,
    "oracles": "pde,lax,mass,scatter,closed-form",
    "tol_pde": 1e-6,
    "tol_lax": 1e-5,
    "tol_mass": 1e-8,
    "tol_scatter": 1e-6,
    "tol_closed": 1e-12,
    "scatter_samples": scattering.DEFAULT_N_SAMPLES,
    "scatter_real_lambdas": [0.3, 1.0],
    "mass_n_quad": 4001,
    "mass_times": [-1.0, 0.0, 1.0],
    "pde_window": [-5.0, 5.0, -1.0, 1.0, 9, 5],
    "lax_lambdas": [[1.0, 0.3], [-0.6, 0.8]],
    "lax_points": 5,
    "closed_grid": [-10.0, 10.0, -2.0, 2.0, 51, 51],
    "rng_seed": 20240824,
}


@dataclass
class Outcome:
    check: str
    passed: bool
    measured: float | None
    tolerance: float | None


@dataclass
class RunReport:
    command: str
    config_digest: str
    outcomes: list[Outcome] = field(default_factory=list)
    exit_code: int = EXIT_PASS

    def add(self, check, passed, measured=None, tolerance=None):
        self.outcomes.append(Outcome(check, bool(passed), measured, tolerance))

    def finalize(self):
        if any(not o.passed for o in self.outcomes):
            self.exit_code = EXIT_CHECK_FAILED
        return self


def _emit(report: RunReport, notes=None):
    doc = asdict(report)
    if notes:
        doc["notes"] = notes
    print(json.dumps(doc, indent=2))
    for o in report.outcomes:
        status = "PASS" if o.passed else "FAIL"
        meas = "" if o.measured is None else f" measured={o.measured:.3g}"
        tol = "" if o.tolerance is None else f" tol={o.tolerance:.3g}"
        print(f"[{status}] {o.check}{meas}{tol}", file=sys.stderr)


def _load_config(path: str, strict: bool = True) -> SpectralConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read(), strict=strict)


def _parse_grid(spec: str) -> gridio.GridSpec:
    try:
        x_min, x_max, nx, t_min, t_max, nt = spec.split(",")
        return gridio.GridSpec(
            x_min=float(x_min), x_max=float(x_max),
            t_min=float(t_min), t_max=float(t_max),
            nx=int(nx), nt=int(nt),
        )
    except ValueError as exc:
        raise argparse.ArgumentTypeError(
            f"grid must be 'xmin,xmax,nx,tmin,tmax,nt': {exc}"
        ) from exc


def cmd_validate(args) -> int:
    try:
        config = _load_config(args.config, strict=False)
    except ConfigError as exc:
        print(json.dumps({"command": "validate", "error": str(exc)}, indent=2))
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    violations = validate(config)
    report = RunReport(command="validate", config_digest=config_digest(config))
    for v in violations:
        report.add(f"violation:{v.code}{list(v.point_indices)}", False)
    if not violations:
        report.add("config-valid", True)
    report.finalize()
    _emit(report)
    return report.exit_code


def cmd_sample(args) -> int:
    try:
        config = _load_config(args.config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    grid = args.grid if isinstance(args.grid, gridio.GridSpec) else _parse_grid(args.grid)
    parts = tuple(args.parts.split(","))
    table = gridio.sample_grid(config, grid)
    text = gridio.emit_csv(table, parts) if args.format == "csv" else gridio.emit_json(table, parts)
    try:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        figure_paths = []
        if args.plot:
            from .plotting import render_figures

            figure_paths = [str(p) for p in render_figures(table, parts, args.out)]
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO_ERROR
    report = RunReport(command="sample", config_digest=config_digest(config))
    moduli = np.abs(table.values)
    for j in range(config.n_fields):
        peak = float(np.nanmax(moduli[:, :, j])) if moduli.size else 0.0
        report.add(f"peak_modulus_q{j + 1}", True, measured=peak)
    report.add("nodes_failed", len(table.failures) == 0, measured=float(len(table.failures)))
    report.finalize()
    notes = {"output": args.out, "figures": figure_paths}
    _emit(report, notes=notes)
    return report.exit_code


def _oracle_pde(config, report, args):
    x0, x1, t0, t1, nx, nt = DEFAULTS["pde_window"]
    window = residuals.ResidualWindow(x0, x1, t0, t1, nx, nt)
    stencil = residuals.StencilSpec(order=args.order, h_x=DEFAULTS["h_x"], h_t=DEFAULTS["h_t"])
    rep = residuals.pde_residual(
        residuals.field_evaluator(config), config.epsilon, window, stencil
    )
    report.add("pde-residual", rep.max_abs <= args.tol_pde, rep.max_abs, args.tol_pde)


def _oracle_lax(config, report, args):
    rng = np.random.default_rng(DEFAULTS["rng_seed"])
    stencil = residuals.StencilSpec(order=args.order, h_x=DEFAULTS["h_x"], h_t=DEFAULTS["h_t"])
    lambdas = [complex(re, im) for re, im in DEFAULTS["lax_lambdas"]]
    worst = 0.0
    for _ in range(DEFAULTS["lax_points"]):
        x = float(rng.uniform(-2.0, 2.0))
        t = float(rng.uniform(-1.0, 1.0))
        for lam in lambdas:
            worst = max(worst, residuals.zero_curvature_residual(config, lam, x, t, stencil))
    report.add("zero-curvature", worst <= args.tol_lax, worst, args.tol_lax)


def _oracle_mass(config, report, args):
    L = args.L if args.L else max(20.0, scattering.default_half_width(config))
    fn = residuals.field_evaluator(config)
    masses = [
        residuals.conserved_mass(fn, t, (-2.0 * L, 2.0 * L), DEFAULTS["mass_n_quad"])
        for t in DEFAULTS["mass_times"]
    ]
    mean = float(np.mean(masses))
    spread = max(abs(m - mean) for m in masses) / max(abs(mean), 1e-300)
    report.add("mass-conservation", spread <= args.tol_mass, spread, args.tol_mass)


def _oracle_scatter(config, report, args):
    L = args.L if args.L else scattering.default_half_width(config)
    trace = scattering.trace_potential(config, 0.0, L, DEFAULTS["scatter_samples"])
    worst_reflection = 0.0
    worst_det = 0.0
    worst_unit = 0.0
    for lam_re in DEFAULTS["scatter_real_lambdas"]:
        sm = scattering.scattering_matrix(trace, complex(lam_re, 0.0))
        worst_reflection = max(worst_reflection, float(np.max(np.abs(sm.s[1:, 0]))))
        worst_det = max(worst_det, sm.det_deviation)
        worst_unit = max(worst_unit, sm.unitarity_deviation)
    worst_zero = 0.0
    for p in config.points:
        worst_zero = max(worst_zero, abs(scattering.transmission_coefficient(trace, p.lam)))
    report.add("scatter-reflectionless", worst_reflection <= args.tol_scatter,
               worst_reflection, args.tol_scatter)
    report.add("scatter-det", worst_det <= 1e-8, worst_det, 1e-8)
    report.add("scatter-unitarity", worst_unit <= 1e-6, worst_unit, 1e-6)
    report.add("scatter-eigenvalue-zeros", worst_zero <= args.tol_scatter,
               worst_zero, args.tol_scatter)


def _oracle_closed_form(config, report, args):
    x0, x1, t0, t1, nx, nt = DEFAULTS["closed_grid"]
    worst = 0.0
    for x in np.linspace(x0, x1, nx):
        for t in np.linspace(t0, t1, nt):
            a = engine.evaluate_field(config, float(x), float(t)).q
            b = engine.one_soliton_closed_form(config, float(x), float(t)).q
            denom = np.maximum(np.abs(a) + np.abs(b), 1e-300)
            worst = max(worst, float(np.max(np.abs(a - b) / denom)))
    report.add("closed-form-equivalence", worst <= args.tol_closed, worst, args.tol_closed)


ORACLES = {
    "pde": _oracle_pde,
    "lax": _oracle_lax,
    "mass": _oracle_mass,
    "scatter": _oracle_scatter,
    "closed-form": _oracle_closed_form,
}


def cmd_verify(args) -> int:
    try:
        config = _load_config(args.config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    requested = args.oracles.split(",")
    unknown = set(requested) - set(ORACLES)
    if unknown:
        print(f"unknown oracles: {sorted(unknown)}", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    closed_ok = config.n_fields == 3 and config.n_solitons == 1
    if "closed-form" in requested and not closed_ok:
        if args.oracles == DEFAULTS["oracles"]:
            requested = [o for o in requested if o != "closed-form"]
        else:
            print("closed-form oracle requires a three-field one-soliton config",
                  file=sys.stderr)
            return EXIT_CONFIG_ERROR
    report = RunReport(command="verify", config_digest=config_digest(config))
    try:
        for name in requested:
            ORACLES[name](config, report, args)
    except (SingularKernel, TailNotDecayed, NonFiniteState) as exc:
        print(f"numerical degeneracy: {exc}", file=sys.stderr)
        print(json.dumps({"command": "verify", "error": str(exc)}, indent=2))
        return EXIT_DEGENERATE
    report.finalize()
    _emit(report)
    return report.exit_code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hirota-solitons",
        description="Construct and verify multi-soliton solutions of the "
                    "N-coupled Hirota equations from discrete spectral data.",
    )
    parser.add_argument("--show-defaults", action="store_true",
                        help="print the defaults table as JSON and exit")
    sub = parser.add_subparsers(dest="subcommand")

    p_val = sub.add_parser("validate", help="check a spectral-data file")
    p_val.add_argument("--config", required=True, help="path to the JSON config")

    p_sam = sub.add_parser("sample", help="sample the field over a grid")
    p_sam.add_argument("--config", required=True)
    p_sam.add_argument("--out", required=True, help="output file path")
    p_sam.add_argument("--grid", default=DEFAULTS["grid"],
                       help="xmin,xmax,nx,tmin,tmax,nt")
    p_sam.add_argument("--parts", default=DEFAULTS["parts"],
                       help="comma list from modulus,real,imag")
    p_sam.add_argument("--format", choices=("csv", "json"), default=DEFAULTS["format"])
    p_sam.add_argument("--plot", action="store_true",
                       help="also render one PNG per part next to the output")

    p_ver = sub.add_parser("verify", help="run verification oracles")
    p_ver.add_argument("--config", required=True)
    p_ver.add_argument("--oracles", default=DEFAULTS["oracles"],
                       help="comma list from pde,lax,mass,scatter,closed-form")
    p_ver.add_argument("--order", type=int, choices=(2, 4, 6, 8), default=DEFAULTS["order"])
    p_ver.add_argument("--L", type=float, default=None,
                       help="scattering half-width override")
    p_ver.add_argument("--tol-pde", dest="tol_pde", type=float, default=DEFAULTS["tol_pde"])
    p_ver.add_argument("--tol-lax", dest="tol_lax", type=float, default=DEFAULTS["tol_lax"])
    p_ver.add_argument("--tol-mass", dest="tol_mass", type=float, default=DEFAULTS["tol_mass"])
    p_ver.add_argument("--tol-scatter", dest="tol_scatter", type=float,
                       default=DEFAULTS["tol_scatter"])
    p_ver.add_argument("--tol-closed", dest="tol_closed", type=float,
                       default=DEFAULTS["tol_closed"])
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.show_defaults:
        print(json.dumps(DEFAULTS, indent=2))
        return EXIT_PASS
    if args.subcommand is None:
        parser.print_help(sys.stderr)
        return EXIT_CONFIG_ERROR
    try:
        if args.subcommand == "validate":
            return cmd_validate(args)
        if args.subcommand == "sample":
            return cmd_sample(args)
        return cmd_verify(args)
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO_ERROR


if __name__ == "__main__":
    sys.exit(main())
