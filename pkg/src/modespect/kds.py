"""Kernel density spectra: continuous spectra from sparse damped-mode lists.

Each extracted mode frequency is smeared by a kernel over a frequency grid.
The Gaussian kernel widens as its bandwidth ``h`` grows; the Lorentz kernel
(the line shape of an exponentially damped oscillator) sharpens instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Optional, Sequence

import numpy as np

from .decompose import Mode

__all__ = [
    "FrequencyGrid",
    "KdsConfig",
    "Spectrum",
    "kds_gaussian",
    "kds_lorentz",
    "find_peaks",
]

Kernel = Literal["gaussian", "lorentz"]
Weighting = Literal["density", "power", "time_constant"]

_KERNELS = ("gaussian", "lorentz")
_WEIGHTINGS = ("density", "power", "time_constant")


@dataclass(frozen=True)
class FrequencyGrid:
    """Regular evaluation grid [f_min, f_max] with the given step, in Hz."""

    f_min: float
    f_max: float
    step: float

    def __post_init__(self) -> None:
        if not all(map(math.isfinite, (self.f_min, self.f_max, self.step))):
            raise ValueError("grid parameters must be finite")
        if not self.f_min < self.f_max:
            raise ValueError("f_min must be below f_max")
        if self.step <= 0:
            raise ValueError("step must be positive")

    def frequencies(self) -> np.ndarray:
        n = int(math.floor((self.f_max - self.f_min) / self.step + 1e-9)) + 1
        return self.f_min + self.step * np.arange(n)


@dataclass(frozen=True)
class KdsConfig:
    """Kernel density spectrum settings.

    ``weighting`` applies to the Gaussian kernel only: "density" weighs every
    mode equally, "power" by squared amplitude, "time_constant" by 1/|growth
    rate|.  ``tau_max`` (seconds) clamps the time constant of nearly undamped
    modes; set it to the duration of the analyzed window.  With
    ``lorentz_unit_numerator`` the sqrt(h) numerator factor of the Lorentz
    kernel is replaced by 1, which keeps peak heights comparable across h.
    """

    kernel: Kernel
    h: float
    weighting: Weighting = "density"
    grid: Optional[FrequencyGrid] = None
    lorentz_unit_numerator: bool = True
    tau_max: float = math.inf

    def __post_init__(self) -> None:
        if self.kernel not in _KERNELS:
            raise ValueError(f"kernel must be one of {_KERNELS}, got {self.kernel!r}")
        if self.weighting not in _WEIGHTINGS:
            raise ValueError(
                f"weighting must be one of {_WEIGHTINGS}, got {self.weighting!r}"
            )
        if not self.h > 0 or not math.isfinite(self.h):
            raise ValueError("h must be positive and finite")
        if not self.tau_max > 0:
            raise ValueError("tau_max must be positive")


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Frequency grid plus non-negative density/power values."""

    frequencies: np.ndarray
    values: np.ndarray
    meta: dict

    def __post_init__(self) -> None:
        freqs = np.asarray(self.frequencies, dtype=float)
        vals = np.asarray(self.values, dtype=float)
        if freqs.shape != vals.shape or freqs.ndim != 1:
            raise ValueError("frequencies and values must be equal-length vectors")
        if vals.size and (not np.all(np.isfinite(vals)) or vals.min() < 0):
            raise ValueError("spectrum values must be finite and >= 0")
        object.__setattr__(self, "frequencies", freqs)
        object.__setattr__(self, "values", vals)


def _time_constants(modes: Sequence[Mode], tau_max: float) -> np.ndarray:
    taus = np.empty(len(modes))
    for i, m in enumerate(modes):
        decay = abs(m.growth_rate)
        tau = 1.0 / decay if decay > 0 else math.inf
        taus[i] = min(tau, tau_max)
    if not np.all(np.isfinite(taus)):
        raise ValueError(
            "undamped mode gives an infinite time constant; set tau_max to the"
            " analyzed window duration"
        )
    return taus


def _weights(modes: Sequence[Mode], cfg: KdsConfig) -> np.ndarray:
    if cfg.weighting == "density":
        return np.ones(len(modes))
    if cfg.weighting == "power":
        return np.array([m.amplitude for m in modes]) ** 2
    return _time_constants(modes, cfg.tau_max)


def _meta(cfg: KdsConfig, grid: FrequencyGrid, n_modes: int) -> dict:
    return {
        "kernel": cfg.kernel,
        "h": cfg.h,
        "weighting": cfg.weighting,
        "f_min": grid.f_min,
        "f_max": grid.f_max,
        "step": grid.step,
        "n_modes": n_modes,
    }


def _default_gaussian_grid(freqs: np.ndarray, h: float) -> FrequencyGrid:
    margin = 5.0 * h
    return FrequencyGrid(freqs.min() - margin, freqs.max() + margin, h / 5.0)


def _lorentz_half_width(h: float, tau: float) -> float:
    """Offset from the mode frequency at which the kernel halves."""
    return math.sqrt(3.0) / (2.0 * math.pi * math.sqrt(h) * tau)


def _default_lorentz_grid(
    freqs: np.ndarray, h: float, taus: np.ndarray
) -> FrequencyGrid:
    widths = np.array([_lorentz_half_width(h, t) for t in taus])
    margin = 20.0 * widths.max()
    return FrequencyGrid(freqs.min() - margin, freqs.max() + margin, widths.min() / 2.0)


def kds_gaussian(modes: Sequence[Mode], cfg: KdsConfig) -> Spectrum:
    """Gaussian kernel density spectrum of a mode list.

    value(F) = (1/n) * sum_k w_k * exp(-((F - F_k) / h)**2 / 2) with the
    weight selected by ``cfg.weighting``.  The grid step must stay below h.
    """
    if len(modes) == 0:
        raise ValueError("mode list is empty")
    if cfg.kernel != "gaussian":
        raise ValueError(f"config kernel is {cfg.kernel!r}, expected 'gaussian'")
    mode_freqs = np.array([m.frequency_hz for m in modes])
    grid = cfg.grid or _default_gaussian_grid(mode_freqs, cfg.h)
    if not grid.step < cfg.h:
        raise ValueError(
            f"grid step {grid.step} must be smaller than the bandwidth h={cfg.h}"
        )
    weights = _weights(modes, cfg)
    freqs = grid.frequencies()
    values = np.zeros_like(freqs)
    for fk, wk in zip(mode_freqs, weights):  # fixed summation order: mode index
        z = (freqs - fk) / cfg.h
        values += wk * np.exp(-0.5 * z * z)
    values /= len(modes)
    return Spectrum(freqs, values, _meta(cfg, grid, len(modes)))


def kds_lorentz(modes: Sequence[Mode], cfg: KdsConfig) -> Spectrum:
    """Lorentz kernel density spectrum of a mode list.

    value(F) = (1/n) * sum_k num * A_k * tau_k
               / sqrt(1 + 4 pi^2 h tau_k^2 (F - F_k)^2)

    where num is sqrt(h), or 1 when ``cfg.lorentz_unit_numerator`` is set.
    Unlike the Gaussian kernel, larger h sharpens the spectrum.  The
    ``weighting`` setting does not apply; the amplitude and time-constant
    dependence is fixed by the kernel.
    """
    if len(modes) == 0:
        raise ValueError("mode list is empty")
    if cfg.kernel != "lorentz":
        raise ValueError(f"config kernel is {cfg.kernel!r}, expected 'lorentz'")
    mode_freqs = np.array([m.frequency_hz for m in modes])
    amps = np.array([m.amplitude for m in modes])
    taus = _time_constants(modes, cfg.tau_max)
    grid = cfg.grid or _default_lorentz_grid(mode_freqs, cfg.h, taus)
    numerator = 1.0 if cfg.lorentz_unit_numerator else math.sqrt(cfg.h)
    freqs = grid.frequencies()
    values = np.zeros_like(freqs)
    four_pi2_h = 4.0 * math.pi**2 * cfg.h
    for fk, ak, tk in zip(mode_freqs, amps, taus):  # fixed summation order
        df = freqs - fk
        values += (numerator * ak * tk) / np.sqrt(1.0 + four_pi2_h * tk * tk * df * df)
    values /= len(modes)
    return Spectrum(freqs, values, _meta(cfg, grid, len(modes)))


def _local_maxima(values: np.ndarray) -> list[tuple[int, int]]:
    """Strictly interior local maxima as (left, right) plateau runs."""
    n = values.size
    runs = []
    i = 1
    while i < n - 1:
        if values[i] > values[i - 1]:
            j = i
            while j + 1 < n and values[j + 1] == values[i]:
                j += 1
            if j < n - 1 and values[j + 1] < values[i]:
                runs.append((i, j))
            i = j + 1
        else:
            i += 1
    return runs


def _prominences(values: np.ndarray, runs: list[tuple[int, int]]) -> np.ndarray:
    """Topographic prominence per peak run.

    Peaks are processed tallest first (ties leftmost first); a walk outward
    from a peak stops at strictly higher terrain or at an equal-height peak
    that ranks earlier, so the parent of an exact twin keeps full prominence
    while the twin is measured against their shared saddle.
    """
    n = values.size
    heights = np.array([values[l] for l, _ in runs])
    order = sorted(range(len(runs)), key=lambda k: (-heights[k], runs[k][0]))
    processed = np.zeros(n, dtype=bool)
    prominence = np.empty(len(runs))
    for k in order:
        left, right = runs[k]
        h = heights[k]
        bases = []
        for step, start in ((-1, left - 1), (1, right + 1)):
            lowest = h
            j = start
            while 0 <= j < n:
                v = values[j]
                if v > h or (v == h and processed[j]):
                    break
                if v < lowest:
                    lowest = v
                j += step
            bases.append(lowest)
        prominence[k] = h - max(bases)
        processed[left : right + 1] = True
    return prominence


def find_peaks(spec: Spectrum, min_prominence: float) -> list[tuple[float, float]]:
    """Interior local maxima with at least the given prominence.

    Returns (frequency, value) pairs sorted by frequency.  Flat-topped peaks
    report their plateau midpoint.
    """
    if spec.values.size == 0:
        raise ValueError("spectrum is empty")
    if min_prominence < 0:
        raise ValueError("min_prominence must be >= 0")
    runs = _local_maxima(spec.values)
    keep = _prominences(spec.values, runs) >= min_prominence
    out = []
    for (left, right), ok in zip(runs, keep):
        if ok:
            mid = (left + right) // 2
            out.append((float(spec.frequencies[mid]), float(spec.values[mid])))
    return out
