"""JSON / CSV / plot-data serialization shared by the reports."""

from __future__ import annotations

import dataclasses
import hashlib
import json
import math
from pathlib import Path

import numpy as np

from . import __version__
from .families import RNG_ALGORITHM

_SPECIAL = {"inf": math.inf, "-inf": -math.inf, "nan": math.nan}


def jsonable(obj):
    """Plain JSON-compatible structure; non-finite floats become strings."""
    if hasattr(obj, "to_dict"):
        return jsonable(obj.to_dict())
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return jsonable(dataclasses.asdict(obj))
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return x
    return obj


def dumps(obj) -> str:
    """Deterministic JSON: sorted keys, shortest round-trip float repr."""
    return json.dumps(jsonable(obj), sort_keys=True, indent=2, allow_nan=False) + "\n"


def restore_floats(obj):
    """Inverse of the non-finite float encoding in :func:`jsonable`."""
    if isinstance(obj, dict):
        return {k: restore_floats(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [restore_floats(v) for v in obj]
    if isinstance(obj, str) and obj in _SPECIAL:
        return _SPECIAL[obj]
    return obj


def loads(text: str):
    return restore_floats(json.loads(text))


def config_hash(config: dict) -> str:
    return hashlib.sha256(dumps(config).encode()).hexdigest()[:12]


def manifest(subcommand: str, config: dict) -> dict:
    return {
        "tool": "flatpoly",
        "version": __version__,
        "rng_algorithm": RNG_ALGORITHM,
        "subcommand": subcommand,
        "config": config,
        "config_hash": config_hash(config),
    }


def emit_plotdata(table, series, outdir: str | Path, provenance: str = "") -> list[Path]:
    """Write one two-column file per selected series of a TrendTable.

    Header comment lines carry the metric, the size label, fit data when
    present and a provenance string.
    """
    outdir = Path(outdir)
    written = []
    series = list(series)
    for name in series:
        x, y = table.series(name)
        outdir.mkdir(parents=True, exist_ok=True)
        path = outdir / f"{table.name}.{name}.dat"
        lines = [f"# series: {name}", f"# x: {table.size_label}  y: {name} (dimensionless)"]
        fit = table.fits.get(name)
        if fit is not None:
            lines.append(f"# loglog slope: {fit.slope!r}  predicted exponent: {fit.predicted!r}")
        for k, v in sorted(table.params.items()):
            lines.append(f"# {k}: {v!r}")
        if provenance:
            lines.append(f"# provenance: {provenance}")
        lines += [f"{int(a)} {float(b)!r}" for a, b in zip(x, y)]
        path.write_text("\n".join(lines) + "\n")
        written.append(path)
    return written
