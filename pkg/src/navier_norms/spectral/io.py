"""Serialization of the solver artifacts: norm trajectories as CSV, energy
reports as JSON, raw spectral snapshots in a small self-describing binary
layout (all little-endian)."""

from __future__ import annotations

import csv
import json
import math
import struct
from pathlib import Path

import numpy as np

from .diagnostics import EnergyReport, NormTrajectory
from .field import SpectralField

__all__ = [
    "write_norm_csv",
    "read_norm_csv",
    "write_energy_json",
    "write_snapshot",
    "read_snapshot",
]

SNAPSHOT_MAGIC = b"NAVNORM1"


def _fmt(x: float) -> str:
    if x == math.inf:
        return "inf"
    return "%.17g" % x


def write_norm_csv(traj: NormTrajectory, path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["t", "k", "r", "value"])
        for t, k, r, v in traj.records():
            writer.writerow([_fmt(t), k, _fmt(r), _fmt(v)])


def read_norm_csv(path) -> NormTrajectory:
    rows = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        for row in reader:
            rows.append(
                (float(row["t"]), int(row["k"]), float(row["r"]), float(row["value"]))
            )
    times = sorted({t for t, *_ in rows})
    index = {t: i for i, t in enumerate(times)}
    samples: dict = {}
    for t, k, r, v in rows:
        series = samples.setdefault((k, r), np.full(len(times), np.nan))
        series[index[t]] = v
    for pair, series in samples.items():
        if np.any(np.isnan(series)):
            raise ValueError(f"series {pair} is missing samples at some times")
    return NormTrajectory(times=np.asarray(times), samples=samples)


def write_energy_json(report: EnergyReport, path) -> None:
    payload = {
        "times": [float(_fmt(t)) for t in report.times],
        "energy": [float(_fmt(e)) for e in report.energy],
        "dissipation": [float(_fmt(d)) for d in report.dissipation],
        "forcing_work": [float(_fmt(w)) for w in report.forcing_work],
        "leray_residuals": [float(_fmt(x)) for x in report.leray_residuals],
        "energy_balance_residual": float(_fmt(report.energy_balance_residual)),
    }
    Path(path).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")


def write_snapshot(f: SpectralField, time: float, path) -> None:
    """Header: magic, N (uint32), component count (uint32), time (float64);
    payload: the complex coefficients, little-endian 64-bit floats."""
    with open(path, "wb") as fh:
        fh.write(SNAPSHOT_MAGIC)
        fh.write(struct.pack("<IId", f.N, f.coeffs.shape[0], time))
        fh.write(np.ascontiguousarray(f.coeffs, dtype="<c16").tobytes())


def read_snapshot(path, nu: float = 1.0) -> tuple[SpectralField, float]:
    with open(path, "rb") as fh:
        magic = fh.read(len(SNAPSHOT_MAGIC))
        if magic != SNAPSHOT_MAGIC:
            raise ValueError(f"not a snapshot file: bad magic {magic!r}")
        N, ncomp, time = struct.unpack("<IId", fh.read(16))
        payload = np.frombuffer(fh.read(), dtype="<c16")
    coeffs = payload.reshape(ncomp, N, N, N // 2 + 1).astype(np.complex128)
    return SpectralField(N=N, nu=nu, coeffs=coeffs), time
