"""
Command-line front end: python -m rindler_gate <subcommand> [flags]

Exit status: 0 success, 1 selftest failure, 2 invalid flags or config,
3 numerical failure (pole collision, bad quadrature set-up, or a
truncation warning under --strict).
"""

import argparse
import json
import logging
import sys
import warnings
from pathlib import Path
from typing import Callable, Dict, List, Optional

from pydantic import ValidationError

from . import interference, ramsey, report, resonance, selftest, spectra, wigner
from .errors import ConfigurationError, RindlerGateError, TruncationWarning
from .models import Channel
from .outputs import (interference_table, pv_table, ramsey_table, resonant_payload,
                      spectra_table, sweet_spot_table, to_jsonable, wigner_table,
                      write_json, write_table)
from .settings import (RunConfig, build_run_config, load_config_file, load_environment,
                       merge_settings, resolve_log_level)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_SELFTEST_FAILED = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3

DEFAULT_RESULTS_DIR = Path("results")
WIGNER_EXTENT = 5.0
WIGNER_POINTS = 201


def _add_common_flags(parser: argparse.ArgumentParser) -> None:
    # Every default is None so that only flags actually given override the config file
    physics = parser.add_argument_group("detector and qubit")
    physics.add_argument("--omega", type=float, help="detector gap omega (default 1)")
    physics.add_argument("--accel", type=float, help="proper acceleration a (default 1)")
    physics.add_argument("--coupling", type=float, help="coupling g (default 1)")
    physics.add_argument("--beta2", type=float, help="excited population |beta|^2 (default 0.5)")
    physics.add_argument("--phi", type=float, help="relative qubit phase (default 0)")

    numerics = parser.add_argument_group("numerics")
    numerics.add_argument("--epsilon", type=float, help="broadening eps (default 0.05)")
    numerics.add_argument("--pv-delta", type=float, help="PV excision half-width")
    numerics.add_argument("--pv-cutoff", type=float, help="PV tail cutoff")
    numerics.add_argument("--pv-points", type=int, help="Gauss-Legendre points per panel (even)")
    numerics.add_argument("--grid-min", type=float, help="lower grid bound")
    numerics.add_argument("--grid-max", type=float, help="upper grid bound")
    numerics.add_argument("--grid-n", type=int, help="number of grid points")

    states = parser.add_argument_group("Wigner, interference and Ramsey")
    states.add_argument("--mode", choices=wigner.MODES, help="target mode (default A+)")
    states.add_argument("--conditioning", choices=wigner.CONDITIONINGS,
                        help="reduction (default partner_detected)")
    states.add_argument("--partner", choices=wigner.MODES, help="detected partner mode")
    states.add_argument("--channel-group", choices=sorted(interference.CHANNEL_GROUPS),
                        help="interference channel group (default: all)")
    states.add_argument("--omega-ratios", help="comma-separated omega/a values for sweet-spot")
    states.add_argument("--gate-strength", type=float, help="Z-gate strength p (default 1)")
    states.add_argument("--gate-repetitions", type=int, help="number of gate applications")
    states.add_argument("--no-gate", dest="gate_applied", action="store_const", const=False,
                        default=None, help="Ramsey fringe without the gate")

    output = parser.add_argument_group("output")
    output.add_argument("--output", help="output file (default results/<subcommand>.<format>)")
    output.add_argument("--format", choices=("csv", "json"), help="output format (default csv)")
    output.add_argument("--strict", action="store_const", const=True, default=None,
                        help="treat truncation warnings as failures")
    output.add_argument("--config", help="dotenv-format config file")
    output.add_argument("--log-level", help="logging level (default WARNING)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rindler_gate",
        description="Two-photon emission amplitudes of a uniformly accelerated qubit detector")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for name, helptext in SUBCOMMAND_HELP.items():
        sub = subparsers.add_parser(name, help=helptext)
        _add_common_flags(sub)
        if name == "report":
            sub.add_argument("--results-dir", default=str(DEFAULT_RESULTS_DIR),
                             help="directory of emitted CSV/JSON files (default results)")
    return parser


def default_output(command: str, config: RunConfig) -> Path:
    if config.output is not None:
        return config.output
    return DEFAULT_RESULTS_DIR / f"{command}.{config.format}"


def _print_rows(title: str, rows: Dict[str, object]) -> None:
    print("\n" + "=" * 80)
    print(title)
    print("=" * 80)
    for label, value in rows.items():
        print(f"{label + ':':<28}{value}")
    print()


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_spectra(config: RunConfig) -> int:
    bound = 4.0 * config.params.omega_ratio() + 2.0
    grid = config.axis(-bound, bound, spectra.DEFAULT_GRID_POINTS)
    result = spectra.emission_spectra(config.params, grid, config.epsilon)
    frame, metadata = spectra_table(result)
    path = write_table(default_output("spectra", config), frame, metadata, config.format)
    dominance = spectra.dominance_table(result)
    rows = {key: f"{sign}  (expected {spectra.DOMINANT_SIGNS[key]})" for key, sign in dominance.items()}
    for key in ("GEG_RR", "EGE_LL"):
        omega, height = result.peak(key)
        rows[f"{key} peak"] = f"{height:.6e} at Omega = {omega:+.4f}"
    rows["written"] = str(path)
    _print_rows("EMISSION SPECTRA", rows)
    return EXIT_OK


def cmd_interference(config: RunConfig) -> int:
    groups = [config.channel_group] if config.channel_group else list(interference.CHANNEL_GROUPS)
    target = default_output("interference", config)
    rows = {}
    for group in groups:
        result = interference.interference_map(config.params, group, epsilon=config.epsilon,
                                               config=config.pv)
        frame, metadata = interference_table(result, config.params)
        path = target.with_name(f"{target.stem}_{interference.file_tag(group)}{target.suffix}")
        write_table(path, frame, metadata, config.format)
        beta2, phi = result.argmax()
        rows[group] = (f"argmax (|beta|^2 = {beta2:.3f}, phi = {phi:.3f}), "
                       f"max|p_int| = {result.max_abs_p_int():.4e}")
        rows[f"{group} written"] = str(path)
    _print_rows("PATHWAY INTERFERENCE", rows)
    return EXIT_OK


def cmd_sweet_spot(config: RunConfig) -> int:
    group = config.channel_group or "RR"
    # per-ratio PV defaults; a single config would not cover every Omega_0
    spots = interference.sweet_spot_scan(config.params, config.omega_ratios, group, config.epsilon)
    frame, metadata = sweet_spot_table(spots, group, config.epsilon, config.params)
    path = write_table(default_output("sweet-spot", config), frame, metadata, config.format)
    peak = interference.interior_maximum(spots)
    _print_rows("SWEET-SPOT SCAN", {
        "channel group": group,
        "ratios scanned": len(spots),
        "interior maximum": f"Omega_0 = {peak.omega_ratio:g}" if peak else "none",
        "written": str(path),
    })
    return EXIT_OK


def cmd_resonant(config: RunConfig) -> int:
    res = resonance.resonant_state(config.params, config.qubit)
    payload = resonant_payload(res, config.params)
    if config.output is not None:
        write_json(config.output, payload)
    print(json.dumps(to_jsonable(payload), indent=2, sort_keys=True))
    return EXIT_OK


def cmd_pv(config: RunConfig) -> int:
    coefficients = {channel.value: resonance.pv_state_coefficients(
        config.params, config.qubit, channel, config.pv) for channel in Channel}
    extra = {
        "pv_delta": config.pv.excision_half_width,
        "pv_cutoff": config.pv.tail_cutoff,
        "pv_points": config.pv.quadrature_points,
    }
    frame, metadata = pv_table(coefficients, config.params, config.beta2, config.phi, extra)
    path = write_table(default_output("pv", config), frame, metadata, config.format)
    rows = {f"{name} ground": f"{c.ground:.10e}" for name, c in coefficients.items()}
    rows.update({f"{name} excited": f"{c.excited:.10e}" for name, c in coefficients.items()})
    for name, c in coefficients.items():
        for message in c.warnings:
            rows[f"{name} ⚠️"] = message
    rows["written"] = str(path)
    _print_rows("PRINCIPAL-VALUE COEFFICIENTS", rows)
    return EXIT_OK


def cmd_wigner(config: RunConfig) -> int:
    res = resonance.resonant_state(config.params, config.qubit)
    rho = wigner.reduced_state(res, config.mode, config.conditioning, config.partner)
    axis = config.axis(-WIGNER_EXTENT, WIGNER_EXTENT, WIGNER_POINTS)
    grid = wigner.wigner_of_fock_mixture(rho, axis, axis)
    negativity = wigner.negativity_volume(grid)
    extra = {
        "mode": config.mode,
        "conditioning": config.conditioning,
        "partner": config.partner or wigner.DEFAULT_PARTNERS[config.mode],
        "negativity_volume": negativity,
        "origin_value": wigner.origin_parity(rho),
    }
    extra.update(wigner.state_summary(rho))
    frame, metadata = wigner_table(grid, config.params, extra)
    path = write_table(default_output("wigner", config), frame, metadata, config.format)
    _print_rows("WIGNER FUNCTION", {
        "mode": f"{config.mode} ({config.conditioning})",
        "W(0, 0)": f"{wigner.origin_parity(rho):+.10f}",
        "negativity volume": f"{negativity:.6f}",
        "grid normalization": f"{grid.normalization():.6f}",
        "written": str(path),
    })
    return EXIT_OK


def cmd_ramsey(config: RunConfig) -> int:
    fringe = ramsey.ramsey_fringe(config.ramsey)
    visibility = ramsey.fringe_visibility(fringe)
    frame, metadata = ramsey_table(fringe, visibility)
    path = write_table(default_output("ramsey", config), frame, metadata, config.format)
    _print_rows("RAMSEY FRINGE", {
        "gate": f"p = {config.ramsey.effective_strength():g} x {config.ramsey.gate_repetitions}",
        "visibility": f"{visibility:+.6f}",
        "inverted": "✓" if visibility < 0 else "✗",
        "written": str(path),
    })
    return EXIT_OK


def cmd_selftest(config: RunConfig) -> int:
    results = selftest.run_selftest()
    selftest.print_selftest_summary(results)
    return EXIT_OK if all(result.passed for result in results) else EXIT_SELFTEST_FAILED


SUBCOMMAND_HELP = {
    "spectra": "broadened emission spectra of both pathways and all channels",
    "interference": "pathway-interference heatmaps over (|beta|^2, phi)",
    "sweet-spot": "max |p_int| against omega/a",
    "resonant": "resonant two-photon state as JSON",
    "pv": "principal-value (off-resonant) coefficients",
    "wigner": "Wigner function of a reduced single-mode state",
    "ramsey": "Ramsey fringe with the vacuum-induced Z gate",
    "selftest": "run the invariant suite",
    "report": "summarise a results directory into REPORT.md",
}

HANDLERS: Dict[str, Callable[[RunConfig], int]] = {
    "spectra": cmd_spectra,
    "interference": cmd_interference,
    "sweet-spot": cmd_sweet_spot,
    "resonant": cmd_resonant,
    "pv": cmd_pv,
    "wigner": cmd_wigner,
    "ramsey": cmd_ramsey,
    "selftest": cmd_selftest,
}


def main(argv: Optional[List[str]] = None) -> int:
    load_environment()
    args = build_parser().parse_args(argv)
    try:
        level = resolve_log_level(args.log_level)
    except ConfigurationError as exc:
        print(f"rindler_gate {args.command}: invalid configuration\n{exc}", file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")

    if args.command == "report":
        return report.main(args.results_dir, args.output)

    try:
        config = build_run_config(merge_settings(load_config_file(args.config), vars(args)))
    except (ValidationError, ValueError) as exc:
        print(f"rindler_gate {args.command}: invalid configuration\n{exc}", file=sys.stderr)
        return EXIT_USAGE

    with warnings.catch_warnings():
        if config.strict:
            warnings.simplefilter("error", TruncationWarning)
        try:
            return HANDLERS[args.command](config)
        except TruncationWarning as exc:
            print(f"rindler_gate {args.command}: {exc}", file=sys.stderr)
            return EXIT_NUMERICAL
        except RindlerGateError as exc:
            print(f"rindler_gate {args.command}: {exc}", file=sys.stderr)
            return EXIT_NUMERICAL
