"""Damped-mode extraction from snapshot data.

Implements the classical dynamic mode decomposition (best-fit linear
propagator between consecutive snapshots) and its delay-embedded variant,
which stacks ``d`` time-shifted copies of the reduced snapshots so that
single-sensor records with many oscillation modes become resolvable.  The
pipeline is: optional spatial SVD reduction, delay embedding plus a second
SVD reduction, least-squares propagator fit, eigen-extraction, amplitude
fitting over all snapshots, and reconstruction for error reporting.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .linalg import Tolerance, TruncationPolicy, eig, lstsq, svd_econ, truncation_rank
from .signals import TimeSeries

__all__ = [
    "SizingError",
    "DegenerateInputError",
    "SnapshotMatrix",
    "Mode",
    "HodmdConfig",
    "Decomposition",
    "build_snapshots",
    "build_delay_embedding",
    "eigenvalue_to_rates",
    "dmd",
    "hodmd",
    "fit_amplitudes",
    "reconstruct",
]

# |Im(mu)| / |mu| below which an eigenvalue counts as real (unpaired mode)
_REAL_EIG_TOL = 1e-12
# relative eigenvalue distance below which numerically split duplicates merge
_MERGE_TOL = 1e-9
# |mu| / max|mu| below which an eigenvalue carries no usable dynamics
_ZERO_EIG_TOL = 1e-12
# cap on (K-1) * log|mu|: beyond this the mode's powers overflow the window
_LOG_RANGE = 600.0
# condition number of the amplitude fit above which a warning is emitted
_COND_WARN = 1e12


class SizingError(ValueError):
    """Snapshot count too small for the requested delay depth (needs K > 2d)."""


class DegenerateInputError(ValueError):
    """Input carries no usable signal (rank collapse in the snapshot data)."""


@dataclass(frozen=True, eq=False)
class SnapshotMatrix:
    """Equispaced state snapshots, one column per sampling instant."""

    data: np.ndarray  # (channels, snapshots)
    dt: float

    def __post_init__(self) -> None:
        data = np.atleast_2d(np.asarray(self.data))
        if data.ndim != 2:
            raise ValueError("snapshot data must be 2-D")
        if data.shape[1] < 2:
            raise ValueError("need at least two snapshots")
        if not (math.isfinite(self.dt) and self.dt > 0):
            raise ValueError(f"dt must be positive and finite, got {self.dt!r}")
        object.__setattr__(self, "data", data)

    @property
    def n_channels(self) -> int:
        return self.data.shape[0]

    @property
    def n_snapshots(self) -> int:
        return self.data.shape[1]


@dataclass(frozen=True, eq=False)
class Mode:
    """One extracted damped-oscillation component.

    ``eigenvalue`` is the discrete-time pole ``exp((growth_rate +
    2j*pi*frequency_hz) * dt)`` for the sampling interval the mode was
    extracted at.  ``shape`` is the unit-norm spatial pattern, phase-fixed so
    its largest-magnitude entry is real positive.  For real input data only
    the non-negative-frequency member of each conjugate pair is reported and
    its amplitude is doubled, so a real signal reconstructs as
    ``Re(sum_m shape_m * eigenvalue_m**k * amplitude_m * exp(1j*phase_rad_m))``.
    Real eigenvalues (zero-frequency and Nyquist poles) stay single with
    undoubled amplitude.
    """

    frequency_hz: float
    growth_rate: float  # 1/s; negative decays, damping is -growth_rate
    amplitude: float
    phase_rad: float
    shape: np.ndarray
    eigenvalue: complex

    def __post_init__(self) -> None:
        if self.amplitude < 0:
            raise ValueError("amplitude must be >= 0")
        shape = np.atleast_1d(np.asarray(self.shape, dtype=complex))
        if shape.ndim != 1:
            raise ValueError("shape must be a vector")
        object.__setattr__(self, "shape", shape)

    @property
    def damping(self) -> float:
        """Decay rate in 1/s, positive for decaying modes."""
        return -self.growth_rate

    @property
    def b(self) -> complex:
        """Complex amplitude amplitude * exp(1j * phase_rad)."""
        return self.amplitude * cmath.exp(1j * self.phase_rad)


@dataclass(frozen=True)
class HodmdConfig:
    """Configuration of the delay-embedded decomposition.

    ``d`` is the delay depth; ``d = 1`` reduces the algorithm to classical
    DMD.  The two SVD reductions carry independent policies; the optional
    ``amplitude_policy`` prunes fitted modes ranked by amplitude.
    """

    d: int
    dt: float
    spatial_policy: TruncationPolicy = Tolerance(1e-10)
    temporal_policy: TruncationPolicy = Tolerance(1e-10)
    amplitude_policy: Optional[TruncationPolicy] = None

    def __post_init__(self) -> None:
        if self.d < 1:
            raise ValueError("d must be >= 1")
        if not (math.isfinite(self.dt) and self.dt > 0):
            raise ValueError(f"dt must be positive and finite, got {self.dt!r}")


@dataclass(frozen=True, eq=False)
class Decomposition:
    """Full decomposition output: mode list, errors, and configuration echo.

    ``ranks`` records (spatial SVD rank, delay-space SVD rank, reported mode
    count).  ``real_input`` marks whether conjugate-pair reporting applies.
    """

    modes: tuple[Mode, ...]
    relative_rms: float
    relative_max: float
    config: HodmdConfig
    ranks: tuple[int, int, int]
    real_input: bool = True


def build_snapshots(ts: TimeSeries, stacking: int = 1) -> SnapshotMatrix:
    """Arrange a time series as a snapshot matrix.

    Channels become rows.  ``stacking > 1`` additionally folds that many
    consecutive samples into one column (leftover samples at the end are
    dropped), so a single-channel series of length n yields a
    ``(stacking, n // stacking)`` matrix whose column-major flattening
    recovers the input.  The column spacing becomes ``stacking * dt``.
    """
    if stacking < 1:
        raise ValueError("stacking must be >= 1")
    x = np.atleast_2d(ts.samples)
    c, n = x.shape
    k = n // stacking
    if k < 2:
        raise ValueError(
            f"series too short: {n} samples give {k} columns at stacking {stacking}"
        )
    folded = x[:, : k * stacking].reshape(c, k, stacking)
    data = np.transpose(folded, (2, 0, 1)).reshape(stacking * c, k)
    return SnapshotMatrix(data, dt=ts.dt * stacking)


def build_delay_embedding(xhat: np.ndarray, d: int) -> np.ndarray:
    """Stack d time-shifted copies of the reduced snapshots.

    Column j of the result holds snapshots j, j+1, ..., j+d-1 vertically;
    an (n, K) input becomes (d*n, K-d+1).
    """
    xhat = np.atleast_2d(np.asarray(xhat))
    if xhat.ndim != 2:
        raise ValueError("snapshot input must be 2-D")
    if d < 1:
        raise ValueError("d must be >= 1")
    n, k = xhat.shape
    if k <= d:
        raise SizingError(f"need more snapshots than delay depth: K={k}, d={d}")
    m = k - d + 1
    out = np.empty((d * n, m), dtype=xhat.dtype)
    for i in range(d):
        out[i * n : (i + 1) * n, :] = xhat[:, i : i + m]
    return out


def eigenvalue_to_rates(mu: complex, dt: float) -> tuple[float, float]:
    """Continuous-time (growth rate 1/s, angular frequency rad/s) of a pole.

    Inverts mu = exp((delta + 1j*omega) * dt); the angle is taken in
    (-pi, pi], so omega lies in (-pi/dt, pi/dt].
    """
    if not (math.isfinite(dt) and dt > 0):
        raise ValueError(f"dt must be positive and finite, got {dt!r}")
    mu = complex(mu)
    if mu == 0:
        raise ValueError("zero eigenvalue has no finite rates")
    delta = math.log(abs(mu)) / dt
    angle = math.atan2(mu.imag, mu.real)
    if angle == -math.pi:
        angle = math.pi
    return delta, angle / dt


def _normalize_shapes(shapes: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Unit-normalize shape columns with a real-positive pivot entry.

    Returns the normalized columns and a boolean mask of non-degenerate
    (nonzero) columns.
    """
    shapes = np.asarray(shapes, dtype=complex)
    norms = np.linalg.norm(shapes, axis=0)
    ok = norms > 0
    safe = np.where(ok, norms, 1.0)
    out = shapes / safe
    pivot_rows = np.argmax(np.abs(out), axis=0)
    pivots = out[pivot_rows, np.arange(out.shape[1])]
    mags = np.abs(pivots)
    mags[mags == 0] = 1.0
    out = out * (pivots.conj() / mags)
    return out, ok


def _fit_b(shapes: np.ndarray, lam: np.ndarray, data: np.ndarray) -> np.ndarray:
    """Least-squares complex amplitudes over all snapshots.

    Minimizes sum_k || x_k - sum_m shape_m * lam_m**k * b_m ||^2.  An
    ill-conditioned system is reported with its condition estimate and solved
    in the minimum-norm sense.
    """
    m, k = data.shape
    n = lam.size
    powers = lam[None, :] ** np.arange(k)[:, None]  # (k, n)
    g = (powers[:, None, :] * shapes[None, :, :]).reshape(k * m, n)
    rhs = data.T.reshape(-1).astype(g.dtype)
    sol, _, rank, svals = np.linalg.lstsq(g, rhs, rcond=None)
    if svals.size:
        smin = svals[-1]
        cond = math.inf if smin == 0 else float(svals[0] / smin)
        if rank < n or cond > _COND_WARN:
            warnings.warn(
                f"amplitude fit is ill-conditioned (cond ~ {cond:.3e}, rank "
                f"{rank}/{n}); minimum-norm solution used",
                RuntimeWarning,
                stacklevel=3,
            )
    return sol


def fit_amplitudes(modes: Sequence[Mode], x: SnapshotMatrix) -> np.ndarray:
    """Complex amplitude per mode, fitted against every snapshot of ``x``."""
    if len(modes) == 0:
        raise ValueError("mode list is empty")
    shapes = np.column_stack([m.shape for m in modes]).astype(complex)
    if shapes.shape[0] != x.n_channels:
        raise ValueError(
            f"shape length {shapes.shape[0]} does not match {x.n_channels} channels"
        )
    lam = np.array([m.eigenvalue for m in modes], dtype=complex)
    return _fit_b(shapes, lam, x.data)


def _merge_duplicates(
    lam: np.ndarray, shapes: np.ndarray, b: np.ndarray
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Merge eigenvalues equal within _MERGE_TOL relative; amplitudes summed.

    The merged contribution keeps the combined weighted shape, re-split into
    a unit shape and a complex amplitude; the surviving eigenvalue is the
    member with the largest fitted amplitude.
    """
    n = lam.size
    groups: list[list[int]] = []
    assigned = np.full(n, -1)
    for i in range(n):
        if assigned[i] >= 0:
            continue
        group = [i]
        assigned[i] = len(groups)
        for j in range(i + 1, n):
            if assigned[j] >= 0:
                continue
            scale = max(abs(lam[i]), abs(lam[j]))
            if abs(lam[i] - lam[j]) <= _MERGE_TOL * scale:
                group.append(j)
                assigned[j] = len(groups)
        groups.append(group)
    if len(groups) == n:
        return lam, shapes, b
    out_lam = np.empty(len(groups), dtype=complex)
    out_shapes = np.empty((shapes.shape[0], len(groups)), dtype=complex)
    out_b = np.empty(len(groups), dtype=complex)
    for gi, group in enumerate(groups):
        rep = max(group, key=lambda idx: (abs(b[idx]), -idx))
        out_lam[gi] = lam[rep]
        combined = shapes[:, group] @ b[group]
        norm = np.linalg.norm(combined)
        if norm == 0:
            out_shapes[:, gi] = shapes[:, rep]
            out_b[gi] = 0.0
        else:
            unit, _ = _normalize_shapes(combined[:, None])
            out_shapes[:, gi] = unit[:, 0]
            # phase moved out of the shape goes back into the amplitude
            pivot = np.argmax(np.abs(unit[:, 0]))
            rotation = combined[pivot] / (norm * unit[pivot, 0])
            out_b[gi] = norm * rotation
    return out_lam, out_shapes, out_b


def _pair_strengths(lam: np.ndarray, b: np.ndarray, real_input: bool) -> np.ndarray:
    """Per-mode pruning strength; conjugate partners share one value."""
    strength = np.abs(b)
    if not real_input:
        return strength
    out = strength.copy()
    imag_tol = _REAL_EIG_TOL * np.abs(lam)
    pos = np.where(lam.imag > imag_tol)[0]
    neg = np.where(lam.imag < -imag_tol)[0]
    for i in pos:
        if neg.size == 0:
            continue
        j = neg[np.argmin(np.abs(lam[neg] - lam[i].conjugate()))]
        scale = max(abs(lam[i]), 1.0)
        if abs(lam[j] - lam[i].conjugate()) <= 1e-6 * scale:
            shared = max(out[i], out[j])
            out[i] = out[j] = shared
    return out


def _amplitude_truncate(
    lam: np.ndarray,
    shapes: np.ndarray,
    b: np.ndarray,
    policy: TruncationPolicy,
    real_input: bool,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Drop weak modes, keeping conjugate pairs together.

    The policy is applied to the amplitude sequence sorted descending (square
    aspect ratio for the hard-threshold rule); everything at or above the
    cut-off amplitude survives.
    """
    strength = _pair_strengths(lam, b, real_input)
    order = np.argsort(strength)[::-1]
    ranked = strength[order]
    r = truncation_rank(ranked, policy, (ranked.size, ranked.size))
    keep = strength >= ranked[r - 1]
    if not keep.any():
        keep[order[0]] = True
    return lam[keep], shapes[:, keep], b[keep]


def _report_modes(
    lam: np.ndarray,
    shapes: np.ndarray,
    b: np.ndarray,
    dt: float,
    real_input: bool,
) -> list[Mode]:
    """Build the public mode list under the conjugate-pair reporting rule."""
    modes = []
    for i in range(lam.size):
        mu = complex(lam[i])
        imag_tol = _REAL_EIG_TOL * abs(mu)
        doubled = False
        if real_input:
            if mu.imag < -imag_tol:
                continue  # conjugate partner of a reported mode
            doubled = mu.imag > imag_tol
        delta, omega = eigenvalue_to_rates(mu, dt)
        amp = abs(b[i])
        modes.append(
            Mode(
                frequency_hz=omega / (2.0 * math.pi),
                growth_rate=delta,
                amplitude=2.0 * amp if doubled else amp,
                phase_rad=cmath.phase(b[i]) if amp > 0 else 0.0,
                shape=shapes[:, i],
                eigenvalue=mu,
            )
        )
    modes.sort(key=lambda m: (m.frequency_hz, m.growth_rate, -m.amplitude))
    return modes


def _mode_signal(modes: Sequence[Mode], n_samples: int, real_input: bool) -> np.ndarray:
    """Sum the reported modes over k = 0 .. n_samples-1; (channels, n)."""
    m = modes[0].shape.size
    acc = np.zeros((m, n_samples), dtype=complex)
    k = np.arange(n_samples)
    for mode in modes:
        acc += np.outer(mode.shape, mode.eigenvalue**k * mode.b)
    return acc.real if real_input else acc


def reconstruct(dec: Decomposition, n_samples: int) -> TimeSeries:
    """Time series regenerated from a decomposition's reported modes."""
    if not dec.modes:
        raise ValueError("decomposition has no modes")
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    samples = _mode_signal(dec.modes, n_samples, dec.real_input)
    if samples.shape[0] == 1:
        samples = samples[0]
    return TimeSeries(samples, dt=dec.config.dt)


def _assemble(
    x: SnapshotMatrix,
    shapes: np.ndarray,
    lam: np.ndarray,
    cfg: HodmdConfig,
    ranks: tuple[int, int],
) -> Decomposition:
    """Steps shared by both decompositions: amplitudes, pruning, reporting, errors."""
    real_input = not np.iscomplexobj(x.data)
    k = x.n_snapshots

    lam_abs = np.abs(lam)
    keep = lam_abs > _ZERO_EIG_TOL * lam_abs.max()
    with np.errstate(divide="ignore"):
        keep &= (k - 1) * np.log(np.where(lam_abs > 0, lam_abs, 1.0)) < _LOG_RANGE
    if not keep.any():
        raise DegenerateInputError("all eigenvalues collapsed to zero")
    lam, shapes = lam[keep], shapes[:, keep]

    shapes, ok = _normalize_shapes(shapes)
    lam, shapes = lam[ok], shapes[:, ok]
    if lam.size == 0:
        raise DegenerateInputError("no usable mode shapes")

    b = _fit_b(shapes, lam, x.data)
    lam, shapes, b = _merge_duplicates(lam, shapes, b)
    if cfg.amplitude_policy is not None:
        lam, shapes, b = _amplitude_truncate(
            lam, shapes, b, cfg.amplitude_policy, real_input
        )

    modes = _report_modes(lam, shapes, b, cfg.dt, real_input)
    if not modes:
        raise DegenerateInputError("no reportable modes")

    recon = _mode_signal(modes, k, real_input)
    ref = x.data
    ref_rms = float(np.linalg.norm(ref.ravel()))
    ref_max = float(np.max(np.abs(ref)))
    rel_rms = float(np.linalg.norm((ref - recon).ravel()) / ref_rms)
    rel_max = float(np.max(np.abs(ref - recon)) / ref_max)
    return Decomposition(
        modes=tuple(modes),
        relative_rms=rel_rms,
        relative_max=rel_max,
        config=cfg,
        ranks=(ranks[0], ranks[1], len(modes)),
        real_input=real_input,
    )


def dmd(x: SnapshotMatrix, policy: TruncationPolicy) -> Decomposition:
    """Classical dynamic mode decomposition of a snapshot matrix.

    The leading snapshots are reduced to their dominant left-singular
    subspace under ``policy``; the one-step propagator is fitted there in
    least squares and eigendecomposed.  Fails by design when the temporal
    complexity (number of exponential terms) exceeds the spatial dimension;
    use :func:`hodmd` for that regime.
    """
    if x.n_snapshots < 3:
        raise ValueError("need at least 3 snapshots")
    data = x.data
    if not np.any(data):
        raise DegenerateInputError("all-zero snapshot matrix")
    x1, x2 = data[:, :-1], data[:, 1:]
    sv = svd_econ(x1)
    if sv.singular_values[0] == 0:
        raise DegenerateInputError("snapshot matrix has zero leading singular value")
    r = truncation_rank(sv.singular_values, policy, x1.shape)
    u = sv.left_vectors[:, :r]
    y1 = u.conj().T @ x1
    y2 = u.conj().T @ x2
    propagator = lstsq(y1.T, y2.T).T
    lam, w = eig(propagator)
    shapes = u @ w
    cfg = HodmdConfig(
        d=1,
        dt=x.dt,
        spatial_policy=policy,
        temporal_policy=policy,
    )
    return _assemble(x, shapes, lam, cfg, ranks=(r, r))


def hodmd(x: SnapshotMatrix, cfg: HodmdConfig) -> Decomposition:
    """Delay-embedded decomposition of a snapshot matrix.

    Requires K > 2*d snapshots.  The spatial SVD reduction is skipped for
    one- or two-channel input; the delay-embedded matrix is reduced under
    ``cfg.temporal_policy``; mode shapes come from the first delay block of
    the lifted eigenvectors mapped back through the spatial basis.
    """
    data = x.data
    m, k = data.shape
    if not math.isclose(x.dt, cfg.dt, rel_tol=1e-12, abs_tol=0.0):
        raise ValueError(f"dt mismatch: snapshots {x.dt}, config {cfg.dt}")
    if k <= 2 * cfg.d:
        raise SizingError(f"need K > 2*d snapshots: K={k}, d={cfg.d}")
    if not np.any(data):
        raise DegenerateInputError("all-zero snapshot matrix")

    # 1. spatial reduction, skipped for one or two channels
    if m > 2:
        sv = svd_econ(data)
        n_spat = truncation_rank(sv.singular_values, cfg.spatial_policy, data.shape)
        basis = sv.left_vectors[:, :n_spat]
        reduced = sv.singular_values[:n_spat, None] * sv.right_vectors[:, :n_spat].conj().T
    else:
        n_spat = m
        basis = np.eye(m)
        reduced = data

    # 2. delay embedding of the reduced snapshots, then a second reduction
    enlarged = build_delay_embedding(reduced, cfg.d)
    sv2 = svd_econ(enlarged)
    if sv2.singular_values[0] == 0:
        raise DegenerateInputError("delay-embedded matrix has zero leading singular value")
    n_temp = truncation_rank(sv2.singular_values, cfg.temporal_policy, enlarged.shape)
    ubar = sv2.left_vectors[:, :n_temp]
    xbar = sv2.singular_values[:n_temp, None] * sv2.right_vectors[:, :n_temp].conj().T

    # 3. propagator on the doubly reduced coordinates
    propagator = lstsq(xbar[:, :-1].T, xbar[:, 1:].T).T
    lam, w = eig(propagator)
    lifted = ubar @ w
    shapes = basis @ lifted[:n_spat, :]  # first delay block only

    # 4./5. amplitudes, pruning, reporting, reconstruction errors
    return _assemble(x, shapes, lam, cfg, ranks=(n_spat, n_temp))
