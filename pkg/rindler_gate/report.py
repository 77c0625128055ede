"""
Results-directory analysis and REPORT.md generation.

Reads every CSV/JSON file the CLI wrote into a directory, recomputes the
headline numbers from the stored data and writes a markdown summary.
The report carries no timestamp, so the same directory always gives the
same REPORT.md.
"""

import glob
import logging
import os
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np
import pandas as pd

from .outputs import load_json, read_table
from .ramsey import fringe_visibility
from .spectra import DOMINANT_SIGNS

logger = logging.getLogger(__name__)

REPORT_NAME = "REPORT.md"


# ---------------------------------------------------------------------------
# Loading
# ---------------------------------------------------------------------------

def load_results(directory: str = "results") -> Dict[str, List[Dict[str, Any]]]:
    """Group emitted files by their ``table`` metadata entry.

    Each entry is {"path", "frame", "metadata"}; the resonant JSON has no
    frame and keeps its whole payload as metadata.
    """
    grouped: Dict[str, List[Dict[str, Any]]] = {}
    paths = sorted(glob.glob(os.path.join(directory, "*.csv")) +
                   glob.glob(os.path.join(directory, "*.json")))
    for path in paths:
        try:
            with open(path) as handle:
                head = handle.read(1)
            if path.endswith(".json"):
                payload = load_json(path)
                if payload.get("table") == "resonant":
                    entry = {"path": path, "frame": None, "metadata": payload}
                else:
                    frame, metadata = read_table(path)
                    entry = {"path": path, "frame": frame, "metadata": metadata}
            elif head == "#":
                frame, metadata = read_table(path)
                entry = {"path": path, "frame": frame, "metadata": metadata}
            else:
                continue
        except (OSError, ValueError, KeyError, AttributeError) as exc:
            print(f"Warning: Could not load {path}: {exc}")
            continue
        table = entry["metadata"].get("table")
        if table:
            grouped.setdefault(str(table), []).append(entry)
    logger.info("loaded %d result files from %s",
                sum(len(entries) for entries in grouped.values()), directory)
    return grouped


# ---------------------------------------------------------------------------
# Per-table summaries
# ---------------------------------------------------------------------------

def summarize_spectra(frame: pd.DataFrame) -> Dict[str, Any]:
    omegas = frame["Omega"].to_numpy()
    signs = {}
    for key in DOMINANT_SIGNS:
        omega = omegas[int(np.argmax(frame[key].to_numpy()))]
        signs[key] = "+" if omega > 0 else "-"
    positive = omegas > 0
    return {
        "signs": signs,
        "matches": all(signs[key] == DOMINANT_SIGNS[key] for key in DOMINANT_SIGNS),
        "peak_geg_rr": float(np.max(frame["GEG_RR"].to_numpy()[positive])),
        "peak_ege_ll": float(np.max(frame["EGE_LL"].to_numpy()[positive])),
    }


def summarize_wigner(frame: pd.DataFrame) -> Dict[str, float]:
    xs = np.unique(frame["x"].to_numpy())
    ps = np.unique(frame["p"].to_numpy())
    values = frame["W"].to_numpy()
    area = (xs[-1] - xs[0]) / (len(xs) - 1) * (ps[-1] - ps[0]) / (len(ps) - 1)
    return {
        "min_W": float(values.min()),
        "negativity": float(np.sum(np.clip(-values, 0.0, None)) * area),
        "normalization": float(values.sum() * area),
    }


def summarize_ramsey(frame: pd.DataFrame) -> float:
    return fringe_visibility(zip(frame["phi_R"].to_numpy(), frame["P_e"].to_numpy()))


def summarize_interference(frame: pd.DataFrame) -> Dict[str, float]:
    best = int(np.argmax(frame["p_int"].to_numpy()))
    return {
        "beta2": float(frame["beta2"].iloc[best]),
        "phi": float(frame["phi"].iloc[best]),
        "max_abs_p_int": float(np.max(np.abs(frame["p_int"].to_numpy()))),
    }


def _complex(value: Any) -> complex:
    return complex(value["re"], value["im"]) if isinstance(value, dict) else complex(value)


def _name(entry: Dict[str, Any]) -> str:
    return os.path.basename(entry["path"])


# ---------------------------------------------------------------------------
# Console output
# ---------------------------------------------------------------------------

def print_summary(results: Dict[str, List[Dict[str, Any]]]) -> None:
    for entry in results.get("spectra", []):
        summary = summarize_spectra(entry["frame"])
        print("\n" + "=" * 100)
        print(f"SPECTRA  {_name(entry)}")
        print("=" * 100)
        print(f"{'Spectrum':<12} {'Argmax sign':<12} {'Expected':<10}")
        print("-" * 100)
        for key, sign in summary["signs"].items():
            marker = "✓" if sign == DOMINANT_SIGNS[key] else "✗"
            print(f"{key:<12} {sign:<12} {DOMINANT_SIGNS[key]:<10} {marker}")
        print(f"\nPeak heights (Omega > 0): GEG_RR {summary['peak_geg_rr']:.6e}, "
              f"EGE_LL {summary['peak_ege_ll']:.6e}")

    for entry in results.get("resonant", []):
        payload = entry["metadata"]
        print("\n" + "=" * 100)
        print(f"RESONANT STATE  {_name(entry)}")
        print("=" * 100)
        print(f"gamma:          {payload['gamma']:.12g}")
        ground = _complex(payload["qubit_factor"]["ground"])
        excited = _complex(payload["qubit_factor"]["excited"])
        print(f"qubit factor:   ({ground:.6g}, {excited:.6g})")

    for entry in results.get("interference", []):
        summary = summarize_interference(entry["frame"])
        print(f"\nInterference {entry['metadata'].get('channel_group')}: argmax "
              f"(|beta|^2 = {summary['beta2']:.3f}, phi = {summary['phi']:.3f}), "
              f"max|p_int| = {summary['max_abs_p_int']:.4e}")

    for entry in results.get("wigner", []):
        summary = summarize_wigner(entry["frame"])
        print(f"\nWigner {entry['metadata'].get('mode')}: negativity {summary['negativity']:.6f}, "
              f"min W {summary['min_W']:+.6f}")

    for entry in results.get("ramsey", []):
        print(f"\nRamsey {_name(entry)}: visibility {summarize_ramsey(entry['frame']):+.6f}")


# ---------------------------------------------------------------------------
# Markdown report
# ---------------------------------------------------------------------------

def generate_markdown_report(results: Dict[str, List[Dict[str, Any]]],
                             output_file: str = "results/REPORT.md") -> Path:
    """Write the markdown summary; sections appear only for tables that were found"""
    path = Path(output_file)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as f:
        f.write("# Rindler Gate Results\n\n")
        f.write(f"Result files: {sum(len(entries) for entries in results.values())}\n\n")

        # ---- Spectra ----
        if results.get("spectra"):
            f.write("## Dominant emission frequency\n\n")
            f.write("| File | GEG_RR | GEG_LL | EGE_RR | EGE_LL | Matches table | "
                    "Peak GEG_RR (+) | Peak EGE_LL (+) |\n")
            f.write("|------|--------|--------|--------|--------|---------------|"
                    "-----------------|-----------------|\n")
            for entry in results["spectra"]:
                s = summarize_spectra(entry["frame"])
                signs = " | ".join(s["signs"][key] for key in DOMINANT_SIGNS)
                f.write(f"| {_name(entry)} | {signs} | {'yes' if s['matches'] else 'no'} | "
                        f"{s['peak_geg_rr']:.6e} | {s['peak_ege_ll']:.6e} |\n")
            f.write("\n")

        # ---- Resonant state ----
        if results.get("resonant"):
            f.write("## Resonant state\n\n")
            f.write("| File | omega/a | gamma | ground | excited |\n")
            f.write("|------|---------|-------|--------|---------|\n")
            for entry in results["resonant"]:
                payload = entry["metadata"]
                ground = _complex(payload["qubit_factor"]["ground"])
                excited = _complex(payload["qubit_factor"]["excited"])
                f.write(f"| {_name(entry)} | {payload['params']['omega_ratio']:.6g} | "
                        f"{payload['gamma']:.12g} | {ground:.6g} | {excited:.6g} |\n")
            f.write("\n")

        # ---- Interference ----
        if results.get("interference"):
            f.write("## Pathway interference\n\n")
            f.write("| File | Channel group | argmax beta2 | argmax phi | max abs p_int |\n")
            f.write("|------|---------------|--------------|------------|---------------|\n")
            for entry in results["interference"]:
                s = summarize_interference(entry["frame"])
                f.write(f"| {_name(entry)} | {entry['metadata'].get('channel_group')} | "
                        f"{s['beta2']:.3f} | {s['phi']:.4f} | {s['max_abs_p_int']:.4e} |\n")
            f.write("\n")

        # ---- Wigner ----
        if results.get("wigner"):
            f.write("## Wigner negativity\n\n")
            f.write("| File | Mode | Conditioning | min W | Negativity volume | Normalization |\n")
            f.write("|------|------|--------------|-------|-------------------|---------------|\n")
            for entry in results["wigner"]:
                s = summarize_wigner(entry["frame"])
                meta = entry["metadata"]
                f.write(f"| {_name(entry)} | {meta.get('mode')} | {meta.get('conditioning')} | "
                        f"{s['min_W']:+.6f} | {s['negativity']:.6f} | {s['normalization']:.6f} |\n")
            f.write("\n")

        # ---- Ramsey ----
        if results.get("ramsey"):
            f.write("## Ramsey visibility\n\n")
            f.write("| File | Gate strength | Repetitions | Visibility |\n")
            f.write("|------|---------------|-------------|------------|\n")
            for entry in results["ramsey"]:
                meta = entry["metadata"]
                f.write(f"| {_name(entry)} | {meta.get('gate_strength')} | "
                        f"{meta.get('gate_repetitions')} | {summarize_ramsey(entry['frame']):+.6f} |\n")
            f.write("\n")
    logger.info("wrote %s", path)
    return path


def main(directory: str = "results", output_file: Optional[str] = None) -> int:
    print("\n" + "=" * 100)
    print("RINDLER GATE RESULTS REPORT")
    print("=" * 100)

    results = load_results(directory)
    if not results:
        print(f"\n  No result files found in {directory}/")
        print("   Produce some first, e.g.: python -m rindler_gate spectra")
        return 1

    print(f"\n  Loaded {sum(len(v) for v in results.values())} result files")
    print_summary(results)
    path = generate_markdown_report(results, output_file or os.path.join(directory, REPORT_NAME))

    print("\n" + "=" * 100)
    print(f"ANALYSIS COMPLETE  ({path})")
    print("=" * 100 + "\n")
    return 0
