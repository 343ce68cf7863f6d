"""Damped-mode decomposition of vibration records with kernel density spectra.

The package extracts exponentially decaying oscillation modes from sampled
signals via dynamic mode decomposition (classical and delay-embedded),
renders sparse mode lists as continuous kernel density spectra, and ships a
Fourier path (periodogram / Welch) for side-by-side comparison.
"""

from .decompose import (
    Decomposition,
    DegenerateInputError,
    HodmdConfig,
    Mode,
    SizingError,
    SnapshotMatrix,
    build_delay_embedding,
    build_snapshots,
    dmd,
    eigenvalue_to_rates,
    fit_amplitudes,
    hodmd,
    reconstruct,
)
from .fourier import WelchConfig, default_welch_config, dft, periodogram, welch
from .glide import GlideConfig, ModeTrack, batch_hodmd, gliding_hodmd, pool_modes
from .kds import (
    FrequencyGrid,
    KdsConfig,
    Spectrum,
    find_peaks,
    kds_gaussian,
    kds_lorentz,
)
from .linalg import (
    FixedCount,
    OptimalHardThreshold,
    SvdResult,
    Tolerance,
    TruncationPolicy,
    eig,
    hard_threshold_coefficient,
    lstsq,
    svd_econ,
    truncation_rank,
)
from .presets import PRESET_FS, PRESET_N, PRESET_NAMES, preset_components
from .signals import (
    DampedComponent,
    TimeSeries,
    add_gaussian_noise,
    relative_max_error,
    relative_rms_error,
    synth_decaying_sum,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # signals
    "TimeSeries",
    "DampedComponent",
    "synth_decaying_sum",
    "add_gaussian_noise",
    "relative_rms_error",
    "relative_max_error",
    # linear algebra
    "Tolerance",
    "FixedCount",
    "OptimalHardThreshold",
    "TruncationPolicy",
    "SvdResult",
    "svd_econ",
    "hard_threshold_coefficient",
    "truncation_rank",
    "lstsq",
    "eig",
    # decomposition
    "SnapshotMatrix",
    "Mode",
    "HodmdConfig",
    "Decomposition",
    "SizingError",
    "DegenerateInputError",
    "build_snapshots",
    "build_delay_embedding",
    "eigenvalue_to_rates",
    "dmd",
    "hodmd",
    "fit_amplitudes",
    "reconstruct",
    # kernel density spectra
    "FrequencyGrid",
    "KdsConfig",
    "Spectrum",
    "kds_gaussian",
    "kds_lorentz",
    "find_peaks",
    # Fourier reference
    "WelchConfig",
    "default_welch_config",
    "dft",
    "periodogram",
    "welch",
    # sliding windows
    "GlideConfig",
    "ModeTrack",
    "gliding_hodmd",
    "batch_hodmd",
    "pool_modes",
    # presets
    "PRESET_FS",
    "PRESET_N",
    "PRESET_NAMES",
    "preset_components",
]
