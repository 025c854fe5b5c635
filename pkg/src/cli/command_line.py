#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Command-line front end for warpiso.
Parses arguments, dispatches to the numerical modules and emits JSON, CSV or text results
with mapped exit codes.
"""

import argparse
import csv
import io
import logging
import math
import sys
from pathlib import Path

import numpy as np

from src.cli.sweep import expand_sweep, parse_sweep, run_sweep
from src.core.app_settings import WarpisoSettings
from src.core.bounds import (cheeger_region_volume, core_quotient_bound, main_theorem_bound,
                             reference_constants)
from src.core.cheeger_solver import certify
from src.core.curvature import (blowup_ratio, conformal_coordinate, curvature_at, energy_lower_bound_check,
                                gauss_bonnet_energy, gauss_equation_residual, scalar_decay_ratio,
                                sectional_curvatures, slice_shape, stability_integrand)
from src.core.errors import DomainError, WarpisoError
from src.core.numerics import configure_quadrature, fuchsian_alpha
from src.core.oracle import DiscreteLine, discrete_cheeger_intervals
from src.core.profiles import (RATIO_THRESHOLD, ModelGeometry, ProfileCurve, ProfileKind,
                               compare_profiles, equidistant_ratio_curve, foliation_profile_beta,
                               fuchsian_profile, ratio_bounded_everywhere, ratio_minimizer,
                               renvol_estimate, sample_profile, tg_profile)
from src.core.radial_calculus import slab_divergence_check, verify_identities
from src.core.spectrum import (BoundaryCondition, cheeger_inequality_holds, extrapolate_lambda0,
                               lambda0_truncated, sullivan_lambda0)
from src.core.warp_core import (BaseSurface, Slab, WarpedProduct, WarpFamily, WarpFunction, slab_volume,
                                slice_area)
from src.utils.profile_io import curve_to_csv, read_curve
from src.utils.serialization import dumps_canonical, flatten, make_envelope, render_text
from src.utils.syntax_highlighter import highlight_output

logger = logging.getLogger(__name__)

PROG = "warpiso"
EXIT_USAGE = 64
LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

SUITES = ("identities", "curvature", "cheeger", "constants")


class WarpisoArgumentParser(argparse.ArgumentParser):
    """ArgumentParser that exits with the usage code 64"""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# Argument types

def positive_float(text):
    value = float(text)
    if not value > 0 or not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text!r}")
    return value


def non_negative_float(text):
    value = float(text)
    if not value >= 0 or not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"expected a non-negative number, got {text!r}")
    return value


def grid_size(text):
    value = int(text)
    if value < 100:
        raise argparse.ArgumentTypeError(f"grid size must be at least 100, got {text!r}")
    return value


def int_list(text):
    try:
        return [int(item) for item in text.split(",") if item.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of integers, got {text!r}")


def float_list(text):
    try:
        return [float(item) for item in text.split(",") if item.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of numbers, got {text!r}")


def volume_grid(text):
    """start:stop:count for an evenly spaced grid, or a comma-separated list"""
    if ":" in text:
        try:
            start, stop, count = text.split(":")
            return list(np.linspace(float(start), float(stop), int(count)))
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected start:stop:count, got {text!r}")
    return float_list(text)


# Parser

def build_parser():
    """Build the argument parser with one subparser per subcommand"""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--warp", choices=["cosh", "cosh-scaled", "exp", "flat"], default="cosh",
                        help="warping function (default: cosh)")
    common.add_argument("--scale", type=positive_float, default=1.0,
                        help="curvature parameter k of the cosh-scaled warp")
    common.add_argument("--base", choices=["hyperbolic", "sphere", "torus"], default="hyperbolic",
                        help="base surface (default: hyperbolic)")
    common.add_argument("--genus", type=int, default=2, help="genus of a hyperbolic base (default: 2)")
    common.add_argument("--window", type=positive_float, default=None, help="radial window half-width")
    common.add_argument("--tol", type=positive_float, default=None, help="certification tolerance")
    common.add_argument("--format", choices=["json", "csv", "text"], default=None, help="output format")
    common.add_argument("--json", dest="format", action="store_const", const="json",
                        help="shorthand for --format json")
    common.add_argument("--output", "-o", default=None, help="write the result to a file")
    common.add_argument("--jobs", type=int, default=None, help="worker processes for --sweep")
    common.add_argument("--sweep", default=None, metavar="NAME=V1,V2,...",
                        help="run the subcommand once per value of an option")
    common.add_argument("-v", "--verbose", action="count", default=0, help="-v for info, -vv for debug")

    parser = WarpisoArgumentParser(
        prog=PROG,
        description="Cheeger constants, spectra and isoperimetric profiles of warped products",
    )
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")
    subparsers.required = True

    subparsers.add_parser("cheeger", parents=[common], help="certify the Cheeger constant")

    spectrum = subparsers.add_parser("spectrum", parents=[common], help="bottom of the spectrum")
    spectrum.add_argument("-L", "--half-width", type=positive_float, default=None)
    spectrum.add_argument("-n", type=grid_size, default=None, help="grid intervals")
    spectrum.add_argument("--bc", choices=[bc.value for bc in BoundaryCondition], default="dirichlet")
    spectrum.add_argument("--extrapolate", type=float_list, default=None, metavar="L1,L2,...",
                          help="fit lambda(L) = lambda_inf + c/L^2 over these half-widths")
    spectrum.add_argument("--dimension", type=float, default=None,
                          help="also evaluate D(2 - D) for a limit-set dimension D")

    profile = subparsers.add_parser("profile", parents=[common], help="model isoperimetric profiles")
    _add_model_arguments(profile)
    profile.add_argument("--kind", choices=["I_TG", "I_F", "beta"], default="I_TG")
    profile.add_argument("--volumes", type=volume_grid, default=volume_grid("1:100:100"),
                         help="start:stop:count or a comma-separated list")
    profile.add_argument("--compare", default=None, metavar="FILE",
                         help="compare an external profile (CSV or JSON) with the shifted model")
    profile.add_argument("--renvol", default=None, metavar="FILE",
                         help="estimate the renormalized volume from an external profile")

    ratio = subparsers.add_parser("ratio", parents=[common], help="equidistant foliation ratios")
    _add_model_arguments(ratio)
    ratio.add_argument("--t", dest="ts", type=float_list, default=None, metavar="T1,T2,...")

    bound = subparsers.add_parser("bound", parents=[common], help="upper bound on h(M) from end data")
    _add_model_arguments(bound, default_genera="2,2")
    bound.add_argument("--core-volume", type=positive_float, default=None,
                       help="also evaluate the convex core quotient bound")

    oracle = subparsers.add_parser("oracle", parents=[common], help="brute-force discrete Cheeger search")
    oracle.add_argument("-L", "--half-width", type=positive_float, default=None)
    oracle.add_argument("-n", type=grid_size, default=None, help="cells of the discrete line")
    oracle.add_argument("--components", type=int, choices=[1, 2], default=1)

    curvature = subparsers.add_parser("curvature", parents=[common], help="curvature invariants at a radius")
    curvature.add_argument("--r", type=float, default=0.0, help="radius (default: 0)")

    verify = subparsers.add_parser("verify", parents=[common], help="run a verification suite")
    verify.add_argument("--suite", choices=list(SUITES) + ["all"], default="all")
    verify.add_argument("--derivatives", choices=["analytic", "fd"], default="analytic")

    config = subparsers.add_parser("config", parents=[common], help="show or change stored defaults")
    config.add_argument("--show", action="store_true", help="print the effective settings")
    config.add_argument("--set", dest="assignments", action="append", default=[], metavar="KEY=VALUE")

    parser.subcommands = subparsers.choices
    return parser


def _add_model_arguments(parser, default_genera="2"):
    parser.add_argument("--genera", type=int_list, default=int_list(default_genera),
                        help=f"comma-separated end genera (default: {default_genera})")
    parser.add_argument("--tg-core", type=non_negative_float, default=0.0,
                        help="volume of the totally geodesic core")
    parser.add_argument("--outermost", type=non_negative_float, default=None,
                        help="volume of the outermost region (default: the core volume)")


def configure_logging(verbosity):
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr, force=True)


def resolve_defaults(args, settings):
    """Fill unset options from the stored settings"""
    args.identity_tol = args.tol if args.tol is not None else settings.get_identity_tolerance()
    if args.tol is None:
        args.tol = settings.get_tolerance()
    if args.window is None:
        args.window = settings.get_radial_window()
    if args.format is None:
        args.format = settings.get_output_format()
    if args.jobs is None:
        args.jobs = settings.get_jobs()
    elif args.jobs < 1:
        raise DomainError(f"--jobs must be at least 1, got {args.jobs}")
    args.quad_tol = settings.get_quadrature_tolerances()
    configure_quadrature(*args.quad_tol)

    if args.command == "spectrum":
        args.half_width = args.half_width or settings.get_spectrum_half_width()
        args.n = args.n or settings.get_spectrum_grid()
    elif args.command == "oracle":
        args.half_width = args.half_width or settings.get_oracle_half_width()
        args.n = args.n or settings.get_oracle_grid()
    elif args.command == "verify":
        args.spectrum_half_width = settings.get_spectrum_half_width()
        args.spectrum_grid = settings.get_spectrum_grid()


# Manifold construction

def build_warp(args):
    if args.warp == "cosh":
        return WarpFunction.cosh()
    if args.warp == "cosh-scaled":
        return WarpFunction.cosh_scaled(args.scale)
    if args.warp == "exp":
        return WarpFunction.exponential()
    return WarpFunction.flat()


def build_base(args):
    if args.base == "sphere":
        return BaseSurface.sphere()
    if args.base == "torus":
        return BaseSurface.flat_torus()
    return BaseSurface.hyperbolic(args.genus)


def build_manifold(args):
    return WarpedProduct(build_base(args), build_warp(args), args.window)


def h_reference(warp):
    """2k/alpha for the cosh family, None otherwise"""
    if not warp.is_cosh_family:
        return None
    return 2.0 * warp.scale / fuchsian_alpha()


def build_model(args):
    return ModelGeometry.from_genera(args.genera, args.tg_core, args.outermost)


# Subcommands

def cheeger_command(args):
    m = build_manifold(args)
    certificate = certify(m, tol=args.tol)
    return {
        "alpha": certificate.alpha,
        "h_upper": certificate.upper,
        "h_lower": certificate.lower,
        "certified": certificate.certified,
        "gap": certificate.gap,
        "sup_phi_prime": certificate.sup_phi_prime,
        "stationarity_residual": certificate.residual,
        "tolerance": certificate.tolerance,
        "h_reference": h_reference(m.warp),
        "slab_volume": slab_volume(m, Slab.symmetric(certificate.alpha)),
        "warp": m.warp.name,
        "base_area": m.base.area,
    }


def spectrum_command(args):
    m = build_manifold(args)
    result = lambda0_truncated(m, args.half_width, args.n, args.bc)
    payload = result.to_dict()
    payload["warp"] = m.warp.name

    h = h_reference(m.warp)
    if h is not None:
        payload["cheeger_inequality"] = {
            "h": h,
            "h_squared_over_4": h * h / 4.0,
            "holds": cheeger_inequality_holds(h, result.lambda0),
        }
        if result.boundary_condition is BoundaryCondition.DIRICHLET:
            # Ground-state transform: the truncated bottom is k^2 + (pi/2L)^2 exactly
            payload["dirichlet_exact"] = m.warp.scale ** 2 + (math.pi / (2.0 * args.half_width)) ** 2

    if args.extrapolate:
        limit, slope = extrapolate_lambda0(m, args.extrapolate, args.n)
        payload["extrapolated"] = {"lambda_inf": limit, "c": slope, "half_widths": sorted(args.extrapolate)}
    if args.dimension is not None:
        payload["sullivan_lambda0"] = sullivan_lambda0(args.dimension)
    return payload


def profile_command(args):
    model = build_model(args)
    if args.compare:
        external = read_curve(args.compare)
        report = compare_profiles(external, model)
        return {"kind": external.kind.value, "samples": external.samples, "comparison": report.to_dict()}
    if args.renvol:
        external = read_curve(args.renvol)
        estimate = renvol_estimate(external, model)
        return {"kind": external.kind.value, "samples": external.samples, "renormalized_volume": estimate.to_dict()}

    if args.kind == "I_TG":
        curve = sample_profile(lambda V: tg_profile(model, V), args.volumes, ProfileKind.I_TG)
    elif args.kind == "I_F":
        base_area = build_base(args).area
        curve = sample_profile(lambda V: fuchsian_profile(base_area, V), args.volumes, ProfileKind.I_F)
    else:
        m = build_manifold(args)
        curve = sample_profile(lambda V: foliation_profile_beta(m, V)[0], args.volumes, ProfileKind.BETA)
    return {"kind": curve.kind.value, "samples": curve.samples}


def ratio_command(args):
    model = build_model(args)
    ts = args.ts if args.ts else list(np.linspace(1.0, 20.0, 20))
    ts, ratios = equidistant_ratio_curve(model, ts)
    return {
        "ratios": [[t, r] for t, r in zip(ts, ratios)],
        "minimizer": ratio_minimizer(model),
        "ratio_bounded_everywhere": ratio_bounded_everywhere(model),
        "threshold": RATIO_THRESHOLD,
        "genera": list(model.ends.genera),
        "tg_core_volume": model.tg_core_volume,
    }


def bound_command(args):
    model = build_model(args)
    payload = main_theorem_bound(model).to_dict()
    payload["cheeger_regions"] = [
        {"genus": g, "volume": volume, "boundary_area": area}
        for g, (volume, area) in ((g, cheeger_region_volume(g)) for g in model.ends.genera)
    ]
    if args.core_volume is not None:
        payload["core_quotient_bound"] = core_quotient_bound(args.core_volume, model.ends.genera)
    return payload


def oracle_command(args):
    m = build_manifold(args)
    line = DiscreteLine.build(m, args.half_width, args.n)
    cut = discrete_cheeger_intervals(line, args.components)
    payload = {
        "quotient": cut.quotient,
        "intervals": cut.intervals,
        "faces": cut.faces,
        "spacing": line.spacing,
        "half_width": line.half_width,
        "n": line.n,
        "components": args.components,
        "h_reference": h_reference(m.warp),
    }
    if args.components == 2:
        payload["pair_quotient"] = cut.pair_quotient
        payload["pairs_evaluated"] = cut.pairs_evaluated
    return payload


def curvature_command(args):
    m = build_manifold(args)
    r = args.r
    payload = curvature_at(m, r).to_dict()
    shape = slice_shape(m, r)
    area = float(slice_area(m, r))

    payload["slice"] = shape.to_dict()
    payload["slice_area"] = area
    payload["gauss_equation_residual"] = gauss_equation_residual(shape, sectional_curvatures(m, r)[1])
    payload["stability_integrand"] = stability_integrand(m, r)
    payload["conformal_coordinate"] = float(conformal_coordinate(r))
    if m.base.curvature == -1.0:
        payload["gauss_bonnet_energy"] = gauss_bonnet_energy(m, r)
        payload["energy_bound_holds"] = energy_lower_bound_check(shape, area, m.base.genus)
    elif m.base.curvature == 1.0:
        payload["blowup_ratio"] = blowup_ratio(m, r)
        payload["scalar_decay_ratio"] = scalar_decay_ratio(m, r)
    return payload


# Verification suites

def _identity_suite(args):
    m = build_manifold(args)
    tol = args.identity_tol if args.derivatives == "analytic" else max(args.identity_tol, 1e-6)
    report = verify_identities(m, tol=tol, derivatives=args.derivatives)
    return report.passed, report.to_dict()


def _curvature_suite(args):
    radii = np.linspace(-10.0, 10.0, 1000)
    fuchsian = WarpedProduct.fuchsian(2)
    worst_fuchsian = max(
        max(abs(c.ric_radial + 2.0), abs(c.ric_tangential + 2.0), abs(c.scalar + 6.0))
        for c in (curvature_at(fuchsian, r) for r in radii)
    )

    sphere = WarpedProduct(BaseSurface.sphere(), WarpFunction.cosh())
    worst_sphere = 0.0
    for r in np.linspace(-5.0, 5.0, 100):
        c = curvature_at(sphere, r)
        worst_sphere = max(worst_sphere, abs(c.ric_radial + 2.0),
                           abs(c.ric_tangential + 2.0 * math.tanh(r) ** 2),
                           abs(c.scalar + 6.0 - 4.0 / math.cosh(r) ** 2))

    energies = [gauss_bonnet_energy(fuchsian, r) for r in np.linspace(0.0, 20.0, 201)]
    energy_drift = max(abs(e - fuchsian.base.area) for e in energies) / fuchsian.base.area

    details = {"fuchsian_max_error": worst_fuchsian, "sphere_max_error": worst_sphere,
               "energy_relative_drift": energy_drift}
    passed = worst_fuchsian <= 1e-12 and worst_sphere <= 1e-10 and energy_drift <= 1e-9
    return passed, details


def _cheeger_suite(args):
    m = build_manifold(args)
    certificate = certify(m, tol=args.tol)
    h = h_reference(m.warp)
    details = {"certificate": certificate.to_dict(), "h_reference": h}
    passed = certificate.certified
    if h is not None:
        details["upper_error"] = abs(certificate.upper - h)
        details["lower_error"] = abs(certificate.lower - h)
        passed = passed and details["upper_error"] <= 5e-5 and details["lower_error"] <= 5e-5

    if m.warp.family is WarpFamily.COSH:
        alpha = fuchsian_alpha()
        details["alpha_residual"] = abs(1.0 / math.tanh(alpha) - alpha)
        divergence = [slab_divergence_check(m, x) for x in (0.5, alpha, 2.0)]
        details["divergence_equality_at_alpha"] = divergence[1].is_equality
        spectral = lambda0_truncated(m, args.spectrum_half_width, args.spectrum_grid)
        details["lambda0"] = spectral.lambda0
        details["cheeger_inequality"] = cheeger_inequality_holds(h, spectral.lambda0)
        passed = (passed and details["alpha_residual"] < 1e-12 and divergence[1].is_equality
                  and details["cheeger_inequality"])
    return passed, details


def _constants_suite(args):
    table = reference_constants(3)
    passed = (table["fuchsian_cheeger"] < table["hyperbolic_space"]
              and table["fuchsian_cheeger_inequality"] <= table["fuchsian_lambda0"]
              and abs(table["round_sphere"] - 4.0 / math.pi) < 1e-12)
    return passed, table


SUITE_RUNNERS = {
    "identities": _identity_suite,
    "curvature": _curvature_suite,
    "cheeger": _cheeger_suite,
    "constants": _constants_suite,
}


def verify_command(args):
    suites = SUITES if args.suite == "all" else (args.suite,)
    checks = {}
    passed = True
    for name in suites:
        ok, details = SUITE_RUNNERS[name](args)
        checks[name] = {"passed": ok, "details": details}
        passed = passed and ok
        if not ok:
            logger.warning("Verification suite %s failed", name)
    return {"suite": args.suite, "passed": passed, "checks": checks}


COMMAND_RUNNERS = {
    "cheeger": cheeger_command,
    "spectrum": spectrum_command,
    "profile": profile_command,
    "ratio": ratio_command,
    "bound": bound_command,
    "oracle": oracle_command,
    "curvature": curvature_command,
    "verify": verify_command,
}


def config_command(args, settings):
    changed = []
    for assignment in args.assignments:
        key, sep, value = assignment.partition("=")
        if not sep:
            raise DomainError(f"--set expects KEY=VALUE, got {assignment!r}")
        settings.set_setting(key.strip(), value.strip())
        changed.append(key.strip())
    return {"settings": settings.as_dict(), "changed": changed}


# Output

def render(command, payload, output_format):
    """Render a payload as canonical JSON, CSV or text"""
    if output_format == "csv" and "samples" in payload and len(payload) == 2:
        curve = ProfileCurve(tuple(payload["samples"]), ProfileKind(payload["kind"]))
        return curve_to_csv(curve)

    document = make_envelope(command, payload)
    if output_format == "text":
        return render_text(document)
    if output_format == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["key", "value"])
        for key, value in flatten(document):
            writer.writerow([key, value])
        return buffer.getvalue()
    return dumps_canonical(document)


def emit(text, args):
    if args.output:
        with open(Path(args.output), "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
        logger.info("Wrote %s", args.output)
    else:
        sys.stdout.write(highlight_output(text, args.format, sys.stdout))
        sys.stdout.flush()


def sweep_command(parser, args):
    name, values = parse_sweep(args.sweep)
    convert = str
    for action in parser.subcommands[args.command]._actions:
        if action.dest == name:
            convert = action.type or str
            break

    tasks = expand_sweep(args, name, values, convert)
    outcomes = run_sweep(COMMAND_RUNNERS[args.command], tasks, args.jobs)
    for outcome in outcomes:
        if outcome.exit_code:
            error = WarpisoError(f"{name}={outcome.value}: {outcome.message}")
            error.exit_code = outcome.exit_code
            raise error

    passed = all(outcome.payload.get("passed", True) for outcome in outcomes)
    payload = {
        "parameter": name,
        "subcommand": args.command,
        "results": [{"value": outcome.value, "result": outcome.payload} for outcome in outcomes],
    }
    return payload, passed


def main(argv=None):
    """Run the command line and return the exit code"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    configure_logging(args.verbose)
    try:
        settings = WarpisoSettings()
        resolve_defaults(args, settings)

        command = args.command
        if command == "config":
            payload, passed = config_command(args, settings), True
        elif args.sweep:
            payload, passed = sweep_command(parser, args)
            command = "sweep"
        else:
            payload = COMMAND_RUNNERS[command](args)
            passed = payload.get("passed", True)

        emit(render(command, payload, args.format), args)
    except WarpisoError as e:
        sys.stderr.write(f"{PROG}: error: {e}\n")
        return e.exit_code

    # A failed verification still emits its report
    return 0 if passed else 3
