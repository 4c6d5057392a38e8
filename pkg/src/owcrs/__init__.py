"""Rate-splitting downlink simulator for VCSEL-based indoor optical wireless.

The package is organised bottom-up: scene geometry, Gaussian-beam optics,
channel construction, rate-splitting evaluation, and a Monte-Carlo sweep
harness with CSV/SVG output and a small CLI.
"""

__version__ = "0.1.0"

from .scene import (
    RoomConfig, ApLayout, UserDrop, AdrConfig, Scene,
    default_ap_positions, sample_user_positions, photodiode_normals,
    ray_geometry, fov_accept,
)
from .beam import (
    VcselParams, BeamAtPlane,
    rayleigh_distance, beam_radius, at_distance, intensity,
    received_power_centered, received_power_offaxis,
)
from .channel import (
    ChannelMatrix, NoiseParams, GAIN_MODELS,
    photodiode_radius, channel_gain, build_channel_matrix,
    noise_variance, normalize_channel,
)
from .rsma import (
    PowerSplit, Precoders, RsEvaluation,
    power_split, private_precoders, common_precoder, default_precoders,
    sinr_common, sinr_private, rs_sum_rate, optimize_alpha,
    conventional_alpha, conventional_rs_rate, oma_sum_rate,
)
from .harness import (
    ExperimentConfig, SweepRow, SweepResult, ConfigError, SCHEMES,
    default_config, load_config, run_snr_sweep, run_waist_sweep,
    write_csv, read_csv, emit_chart,
)

__all__ = [
    "__version__",
    # scene
    "RoomConfig", "ApLayout", "UserDrop", "AdrConfig", "Scene",
    "default_ap_positions", "sample_user_positions", "photodiode_normals",
    "ray_geometry", "fov_accept",
    # beam
    "VcselParams", "BeamAtPlane", "rayleigh_distance", "beam_radius",
    "at_distance", "intensity", "received_power_centered",
    "received_power_offaxis",
    # channel
    "ChannelMatrix", "NoiseParams", "GAIN_MODELS", "photodiode_radius",
    "channel_gain", "build_channel_matrix", "noise_variance",
    "normalize_channel",
    # rsma
    "PowerSplit", "Precoders", "RsEvaluation", "power_split",
    "private_precoders", "common_precoder", "default_precoders",
    "sinr_common", "sinr_private", "rs_sum_rate", "optimize_alpha",
    "conventional_alpha", "conventional_rs_rate", "oma_sum_rate",
    # harness
    "ExperimentConfig", "SweepRow", "SweepResult", "ConfigError", "SCHEMES",
    "default_config", "load_config", "run_snr_sweep", "run_waist_sweep",
    "write_csv", "read_csv", "emit_chart",
]
