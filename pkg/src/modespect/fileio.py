"""CSV serialization for time series, mode lists, spectra, and window tracks.

Every float is written with 17 significant digits, so write -> read round
trips reproduce values bit-exactly.  All files start with one ``#`` header
line of space-separated key=value metadata.
"""

from __future__ import annotations

import cmath
import math
from typing import Sequence

import numpy as np

from .decompose import Mode
from .glide import ModeTrack
from .kds import Spectrum
from .signals import TimeSeries

__all__ = [
    "write_timeseries",
    "read_timeseries",
    "write_modes",
    "read_modes",
    "write_spectrum",
    "read_spectrum",
    "write_tracks",
    "read_tracks",
]


def _fmt(value: float) -> str:
    return format(float(value), ".17g")


def _meta_line(pairs: dict) -> str:
    parts = []
    for key, value in pairs.items():
        if isinstance(value, bool):
            text = str(value).lower()
        elif isinstance(value, float):
            text = _fmt(value)
        else:
            text = str(value)
        if " " in text:
            raise ValueError(f"metadata value may not contain spaces: {text!r}")
        parts.append(f"{key}={text}")
    return "# " + " ".join(parts)


def _parse_meta(line: str) -> dict:
    if not line.startswith("#"):
        raise ValueError(f"expected a '#' header line, got {line!r}")
    meta: dict = {}
    for token in line.lstrip("#").split():
        key, _, raw = token.partition("=")
        for cast in (int, float):
            try:
                meta[key] = cast(raw)
                break
            except ValueError:
                continue
        else:
            if raw in ("true", "false"):
                meta[key] = raw == "true"
            else:
                meta[key] = raw
    return meta


def write_timeseries(path, ts: TimeSeries) -> None:
    """Single-channel series: '# dt=.. t0=..' then one sample per line.

    Complex samples take two columns (re,im), real samples one.
    """
    x = np.asarray(ts.samples)
    if x.ndim != 1:
        raise ValueError("CSV serialization handles single-channel series only")
    with open(path, "w", encoding="ascii") as fh:
        fh.write(_meta_line({"dt": ts.dt, "t0": ts.t0}) + "\n")
        if np.iscomplexobj(x):
            for z in x:
                fh.write(f"{_fmt(z.real)},{_fmt(z.imag)}\n")
        else:
            for v in x:
                fh.write(f"{_fmt(v)}\n")


def read_timeseries(path) -> TimeSeries:
    with open(path, "r", encoding="ascii") as fh:
        meta = _parse_meta(fh.readline())
        rows = [line.strip() for line in fh if line.strip()]
    if not rows:
        raise ValueError(f"{path}: no samples")
    width = rows[0].count(",") + 1
    if width == 1:
        samples = np.array([float(r) for r in rows])
    elif width == 2:
        samples = np.array(
            [complex(*(float(p) for p in r.split(","))) for r in rows]
        )
    else:
        raise ValueError(f"{path}: expected 1 (real) or 2 (complex) columns")
    return TimeSeries(samples, dt=float(meta["dt"]), t0=float(meta.get("t0", 0.0)))


def _mode_columns(n_channels: int) -> list[str]:
    cols = ["frequency_hz", "growth_rate", "amplitude", "phase_rad"]
    for c in range(n_channels):
        cols += [f"shape{c}_re", f"shape{c}_im"]
    return cols


def write_modes(
    path,
    modes: Sequence[Mode],
    *,
    dt: float,
    d: int,
    ranks: tuple[int, int, int],
) -> None:
    """Mode list: rates, amplitude, phase, and per-channel shape columns."""
    header = f"# dt={_fmt(dt)} d={d} ranks={ranks[0]},{ranks[1]},{ranks[2]}"
    n_channels = modes[0].shape.size if modes else 1
    with open(path, "w", encoding="ascii") as fh:
        fh.write(header + "\n")
        fh.write(",".join(_mode_columns(n_channels)) + "\n")
        for m in modes:
            fields = [
                _fmt(m.frequency_hz),
                _fmt(m.growth_rate),
                _fmt(m.amplitude),
                _fmt(m.phase_rad),
            ]
            for z in m.shape:
                fields += [_fmt(z.real), _fmt(z.imag)]
            fh.write(",".join(fields) + "\n")


def read_modes(path) -> tuple[list[Mode], dict]:
    """Mode list plus header metadata (dt, d, ranks)."""
    with open(path, "r", encoding="ascii") as fh:
        meta = _parse_meta(fh.readline())
        header = fh.readline().strip().split(",")
        rows = [line.strip() for line in fh if line.strip()]
    dt = float(meta["dt"])
    if isinstance(meta.get("ranks"), str):
        meta["ranks"] = tuple(int(v) for v in meta["ranks"].split(","))
    n_channels = (len(header) - 4) // 2
    modes = []
    for row in rows:
        vals = [float(v) for v in row.split(",")]
        freq, growth, amp, phase = vals[:4]
        shape = np.array(
            [complex(vals[4 + 2 * c], vals[5 + 2 * c]) for c in range(n_channels)]
        )
        eigenvalue = cmath.exp(complex(growth, 2.0 * math.pi * freq) * dt)
        modes.append(
            Mode(
                frequency_hz=freq,
                growth_rate=growth,
                amplitude=amp,
                phase_rad=phase,
                shape=shape,
                eigenvalue=eigenvalue,
            )
        )
    return modes, meta


def write_spectrum(path, spec: Spectrum) -> None:
    """Spectrum: '#' metadata echo, then frequency_hz,value rows."""
    with open(path, "w", encoding="ascii") as fh:
        fh.write(_meta_line(spec.meta) + "\n")
        fh.write("frequency_hz,value\n")
        for f, v in zip(spec.frequencies, spec.values):
            fh.write(f"{_fmt(f)},{_fmt(v)}\n")


def read_spectrum(path) -> Spectrum:
    with open(path, "r", encoding="ascii") as fh:
        meta = _parse_meta(fh.readline())
        fh.readline()  # column names
        rows = [line.strip() for line in fh if line.strip()]
    freqs = np.empty(len(rows))
    values = np.empty(len(rows))
    for i, row in enumerate(rows):
        f, v = row.split(",")
        freqs[i] = float(f)
        values[i] = float(v)
    return Spectrum(freqs, values, meta)


_TRACK_COLUMNS = (
    "window_start_index,window_start_time,frequency_hz,growth_rate,amplitude,phase_rad"
)


def write_tracks(
    path,
    tracks: Sequence[ModeTrack],
    *,
    dt: float,
    window_len: int,
    hop: int,
    d: int,
) -> None:
    """Long-format track table: one row per (window, mode).

    Failed or empty windows contribute no rows; failures stay visible on the
    in-memory tracks.
    """
    header = _meta_line({"dt": dt, "window_len": window_len, "hop": hop, "d": d})
    with open(path, "w", encoding="ascii") as fh:
        fh.write(header + "\n")
        fh.write(_TRACK_COLUMNS + "\n")
        for track in tracks:
            for m in track.modes:
                fh.write(
                    f"{track.window_start_index},{_fmt(track.window_start_time)},"
                    f"{_fmt(m.frequency_hz)},{_fmt(m.growth_rate)},"
                    f"{_fmt(m.amplitude)},{_fmt(m.phase_rad)}\n"
                )


def read_tracks(path) -> tuple[list[dict], dict]:
    """Track rows as dicts (column name -> value) plus header metadata."""
    with open(path, "r", encoding="ascii") as fh:
        meta = _parse_meta(fh.readline())
        columns = fh.readline().strip().split(",")
        rows = []
        for line in fh:
            if not line.strip():
                continue
            raw = line.strip().split(",")
            row = {columns[0]: int(raw[0])}
            for name, value in zip(columns[1:], raw[1:]):
                row[name] = float(value)
            rows.append(row)
    return rows, meta
