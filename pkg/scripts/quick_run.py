#!/usr/bin/env python3
"""
Quick runner for a single computation
Usage: python quick_run.py <subcommand> [omega] [accel] [format] [--strict]
"""

import os
import subprocess
import sys
from pathlib import Path
from typing import Dict, List, Optional

ROOT = Path(__file__).resolve().parents[1]

SUBCOMMANDS = [
    "spectra",
    "interference",
    "sweet-spot",
    "resonant",
    "pv",
    "wigner",
    "ramsey",
    "selftest",
    "report",
]

FORMATS = ["csv", "json"]


def print_usage():
    print("\n Quick Runner")
    print("=" * 60)
    print("\nUsage: python quick_run.py <subcommand> [omega] [accel] [format] [--strict]")
    print("\nSubcommands:", ", ".join(SUBCOMMANDS))
    print("Omega:       detector gap (default: 1)")
    print("Accel:       proper acceleration (default: 1)")
    print("Format:      csv, json (default: csv)")
    print("\nOptions:")
    print("  --strict    Fail on truncation warnings")
    print("\nExamples:")
    print("  python quick_run.py spectra")
    print("  python quick_run.py interference 2 1")
    print("  python quick_run.py wigner 1 2 json")
    print("  python quick_run.py pv 1 1 csv --strict")
    print("  python quick_run.py selftest")
    print()


def _is_positive_number(text: str) -> bool:
    try:
        return float(text) > 0
    except ValueError:
        return False


def build_command(argv: List[str]) -> Optional[List[str]]:
    """Module CLI invocation for the positional arguments, or None if they are invalid"""
    argv = list(argv)
    strict = "--strict" in argv
    argv = [arg for arg in argv if arg != "--strict"]
    if not argv or argv[0] not in SUBCOMMANDS:
        return None

    subcommand = argv[0]
    omega = argv[1] if len(argv) > 1 else "1"
    accel = argv[2] if len(argv) > 2 else "1"
    fmt = argv[3] if len(argv) > 3 else "csv"
    if not (_is_positive_number(omega) and _is_positive_number(accel)) or fmt not in FORMATS:
        return None

    cmd = [sys.executable, "-m", "rindler_gate", subcommand]
    if subcommand not in ("selftest", "report"):
        cmd.extend(["--omega", omega, "--accel", accel, "--format", fmt])
    if strict:
        cmd.append("--strict")
    return cmd


def launch_env() -> Dict[str, str]:
    """Current environment with the repository root first on PYTHONPATH"""
    env = dict(os.environ)
    paths = [str(ROOT)] + [entry for entry in env.get("PYTHONPATH", "").split(os.pathsep) if entry]
    env["PYTHONPATH"] = os.pathsep.join(paths)
    return env


def main():
    cmd = build_command(sys.argv[1:])
    if cmd is None:
        if len(sys.argv) > 1:
            print(f"\n  Invalid arguments: {' '.join(sys.argv[1:])}")
        print_usage()
        sys.exit(1)

    print(f"\n  Running:")
    print(f"   {' '.join(cmd[2:])}")
    print()
    sys.exit(subprocess.run(cmd, env=launch_env()).returncode)


if __name__ == "__main__":
    main()
