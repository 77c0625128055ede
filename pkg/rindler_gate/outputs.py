"""
CSV and JSON emission and re-parsing.

CSV files open with '#'-prefixed "key: value" metadata lines (sorted by
key), then a header row and the data written with 17 significant digits.
JSON files hold {"metadata": {...}, "data": {column: [values]}} with
sorted keys; complex numbers are stored as {"re": ..., "im": ...}.
Neither format carries timestamps, so identical inputs give identical
bytes.
"""

import json
import logging
import math
from pathlib import Path
from typing import Any, Dict, Iterable, Mapping, Tuple, Union

import numpy as np
import pandas as pd

from .errors import ConfigurationError
from .interference import InterferenceMap, SweetSpot
from .models import DetectorParams
from .ramsey import RamseyFringe
from .resonance import BranchCoefficients, ResonantState
from .spectra import SpectrumGrid
from .wigner import WignerGrid

logger = logging.getLogger(__name__)

FORMATS = ("csv", "json")
FLOAT_FORMAT = "%.17g"

PathLike = Union[str, Path]


# ---------------------------------------------------------------------------
# Generic writers / readers
# ---------------------------------------------------------------------------

def to_jsonable(value: Any) -> Any:
    """Convert numpy and complex values into plain JSON types"""
    if isinstance(value, Mapping):
        return {str(key): to_jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(item) for item in value]
    if isinstance(value, np.ndarray):
        return [to_jsonable(item) for item in value.tolist()]
    if isinstance(value, np.generic):
        return to_jsonable(value.item())
    if isinstance(value, complex):
        return {"re": value.real, "im": value.imag}
    if isinstance(value, float) and not math.isfinite(value):
        return repr(value)
    return value


def _metadata_text(value: Any) -> str:
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if isinstance(value, complex):
        return f"{value.real!r}{value.imag:+}j"
    if isinstance(value, (list, tuple)):
        return ",".join(_metadata_text(item) for item in value)
    return str(value)


def write_csv(path: PathLike, frame: pd.DataFrame, metadata: Mapping[str, Any]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as handle:
        for key in sorted(metadata):
            handle.write(f"# {key}: {_metadata_text(metadata[key])}\n")
        frame.to_csv(handle, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    logger.info("wrote %s (%d rows)", path, len(frame))
    return path


def write_json(path: PathLike, payload: Mapping[str, Any]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as handle:
        json.dump(to_jsonable(payload), handle, indent=2, sort_keys=True)
        handle.write("\n")
    logger.info("wrote %s", path)
    return path


def write_table(path: PathLike, frame: pd.DataFrame, metadata: Mapping[str, Any],
                fmt: str = "csv") -> Path:
    """Write one table in the requested format"""
    if fmt == "csv":
        return write_csv(path, frame, metadata)
    if fmt == "json":
        return write_json(path, {"metadata": dict(metadata),
                                 "data": {column: frame[column].tolist() for column in frame.columns}})
    raise ConfigurationError(f"unknown output format {fmt!r}; expected one of {FORMATS}")


def read_metadata(path: PathLike) -> Dict[str, str]:
    metadata = {}
    with open(path) as handle:
        for line in handle:
            if not line.startswith("#"):
                break
            key, _, value = line[1:].strip().partition(":")
            metadata[key.strip()] = value.strip()
    return metadata


def read_table(path: PathLike) -> Tuple[pd.DataFrame, Dict[str, Any]]:
    """Parse a file written by write_table back into (frame, metadata)"""
    path = Path(path)
    if path.suffix == ".json":
        with open(path) as handle:
            payload = json.load(handle)
        return pd.DataFrame(payload["data"]), payload["metadata"]
    return pd.read_csv(path, comment="#", float_precision="round_trip"), read_metadata(path)


def load_json(path: PathLike) -> Dict[str, Any]:
    with open(path) as handle:
        return json.load(handle)


# ---------------------------------------------------------------------------
# Result tables
# ---------------------------------------------------------------------------

def params_metadata(params: DetectorParams) -> Dict[str, Any]:
    return {
        "omega": params.omega,
        "accel": params.accel,
        "coupling": params.coupling,
        "hbar": params.hbar,
        "omega_ratio": params.omega_ratio(),
        "log_accel": params.log_accel(),
    }


def spectra_table(spectra: SpectrumGrid) -> Tuple[pd.DataFrame, Dict[str, Any]]:
    columns = {"Omega": spectra.omegas}
    columns.update(spectra.values)
    metadata = params_metadata(spectra.params)
    metadata.update({"table": "spectra", "epsilon": spectra.epsilon,
                     "grid_points": len(spectra.omegas)})
    return pd.DataFrame(columns), metadata


def interference_table(result: InterferenceMap,
                       params: DetectorParams) -> Tuple[pd.DataFrame, Dict[str, Any]]:
    beta2, phi = np.meshgrid(result.beta2_axis, result.phi_axis, indexing="ij")
    frame = pd.DataFrame({
        "beta2": beta2.ravel(),
        "phi": phi.ravel(),
        "p_background": result.p_background.ravel(),
        "p_int": result.p_int.ravel(),
        "p_total": result.p_total.ravel(),
    })
    metadata = params_metadata(params)
    metadata.update({
        "table": "interference",
        "channel_group": result.channel_group,
        "epsilon": result.epsilon,
        "overlap_gg": result.overlaps.gg,
        "overlap_ee": result.overlaps.ee,
        "overlap_ge": result.overlaps.ge,
    })
    return frame, metadata


def sweet_spot_table(spots: Iterable[SweetSpot], channel_group: str, epsilon: float,
                     params: DetectorParams) -> Tuple[pd.DataFrame, Dict[str, Any]]:
    spots = list(spots)
    frame = pd.DataFrame({
        "omega_ratio": [spot.omega_ratio for spot in spots],
        "max_abs_p_int": [spot.max_abs_p_int for spot in spots],
        "visibility": [spot.visibility for spot in spots],
    })
    metadata = {"table": "sweet-spot", "channel_group": channel_group, "epsilon": epsilon,
                "accel": params.accel, "coupling": params.coupling}
    return frame, metadata


def pv_table(coefficients: Mapping[str, BranchCoefficients],
             params: DetectorParams, beta2: float, phi: float,
             metadata_extra: Mapping[str, Any]) -> Tuple[pd.DataFrame, Dict[str, Any]]:
    channels = sorted(coefficients)
    frame = pd.DataFrame({
        "channel": channels,
        "ground_re": [coefficients[c].ground.real for c in channels],
        "ground_im": [coefficients[c].ground.imag for c in channels],
        "excited_re": [coefficients[c].excited.real for c in channels],
        "excited_im": [coefficients[c].excited.imag for c in channels],
    })
    metadata = params_metadata(params)
    metadata.update({"table": "pv", "beta2": beta2, "phi": phi})
    metadata.update(metadata_extra)
    return frame, metadata


def wigner_table(grid: WignerGrid, params: DetectorParams,
                 metadata_extra: Mapping[str, Any]) -> Tuple[pd.DataFrame, Dict[str, Any]]:
    x, p = np.meshgrid(grid.x_axis, grid.p_axis, indexing="ij")
    frame = pd.DataFrame({"x": x.ravel(), "p": p.ravel(), "W": grid.values.ravel()})
    metadata = params_metadata(params)
    metadata.update({"table": "wigner", "normalization": "int W dx dp = 1, hbar = 1"})
    metadata.update(metadata_extra)
    return frame, metadata


def ramsey_table(fringe: RamseyFringe, visibility: float) -> Tuple[pd.DataFrame, Dict[str, Any]]:
    frame = pd.DataFrame({"phi_R": fringe.phases, "P_e": fringe.populations})
    metadata = {
        "table": "ramsey",
        "gate_applied": fringe.config.gate_applied,
        "gate_strength": fringe.config.gate_strength,
        "gate_repetitions": fringe.config.gate_repetitions,
        "visibility": visibility,
    }
    return frame, metadata


def resonant_payload(res: ResonantState, params: DetectorParams) -> Dict[str, Any]:
    """JSON document for the resonant state"""
    return {
        "table": "resonant",
        "params": params_metadata(params),
        "gamma": res.gamma,
        "overall": res.overall,
        "terms": dict(res.terms),
        "term_phases": {label: math.atan2(value.imag, value.real)
                        for label, value in res.terms.items()},
        "qubit_factor": {"ground": res.qubit_factor[0], "excited": res.qubit_factor[1]},
    }
