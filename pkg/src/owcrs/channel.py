"""Electrical channel gains and noise for the VCSEL downlink.

The channel entry for (user k, AP l) is the photocurrent produced per unit
of transmitted signal: optical capture fraction times photodiode
responsivity. Two capture models are provided.

steered (default)
    Each AP is an array of identically modulated VCSEL elements laid out to
    cover the floor, so every user sits on (or centimetres from) the axis of
    the nearest element. The capture fraction is then the on-axis
    encircled-energy fraction at the slant range from AP to user, scaled by
    the cosine of the incidence angle at the best photodiode. This keeps all
    users connected to all APs, which is what makes multi-user precoding
    meaningful.

fixed_beam
    Each AP is one Gaussian beam pointing straight down. The capture
    fraction samples the Gaussian at the user's horizontal offset from the
    AP footprint (flat-field aperture approximation). Spots at room scale
    are only centimetres wide, so coverage is extremely localised; the model
    is kept for single-link studies and for validating the beam optics.

Noise is thermal (current spectral density over the modulation bandwidth)
plus optional shot noise driven by the aggregate received optical power.
"""

from dataclasses import dataclass
import numpy as np

from .beam import VcselParams, beam_radius, received_power_centered, \
    received_power_offaxis
from .scene import AdrConfig, Scene, fov_accept, photodiode_normals, ray_geometry

__all__ = [
    "GAIN_MODELS",
    "ChannelMatrix",
    "NoiseParams",
    "photodiode_radius",
    "channel_gain",
    "build_channel_matrix",
    "noise_variance",
    "normalize_channel",
]

GAIN_MODELS = ("steered", "fixed_beam")

ELEMENTARY_CHARGE = 1.602176634e-19  # [C]


@dataclass(frozen=True)
class NoiseParams:
    """Receiver noise model.

    nsd : noise current spectral density [A/sqrt(Hz)]
    bandwidth_hz : noise-equivalent bandwidth [Hz]
    include_shot : add shot noise 2 q R P_rx B on top of the thermal floor
    q : elementary charge [C]
    """

    nsd: float = 4.47e-12
    bandwidth_hz: float = 5e9
    include_shot: bool = True
    q: float = ELEMENTARY_CHARGE

    def __post_init__(self):
        if self.nsd <= 0:
            raise ValueError("nsd must be positive")
        if self.bandwidth_hz <= 0:
            raise ValueError("bandwidth_hz must be positive")


@dataclass(frozen=True)
class ChannelMatrix:
    """K x L matrix of nonnegative electrical gains plus a noise variance.

    Row k is the channel vector of user k across the L APs, in amperes of
    photocurrent per unit of transmitted signal. sigma2 is the receiver
    noise variance [A^2]; scale records any normalisation applied.
    """

    h: np.ndarray
    sigma2: float
    scale: float = 1.0

    def __post_init__(self):
        h = np.atleast_2d(np.asarray(self.h, dtype=float))
        if h.ndim != 2:
            raise ValueError("h must be a 2-D matrix")
        if not np.all(np.isfinite(h)) or np.any(h < 0):
            raise ValueError("channel entries must be finite and >= 0")
        if not self.sigma2 > 0:
            raise ValueError("sigma2 must be positive")
        hh = h.copy()
        hh.setflags(write=False)
        object.__setattr__(self, "h", hh)

    @property
    def num_users(self) -> int:
        return self.h.shape[0]

    @property
    def num_aps(self) -> int:
        return self.h.shape[1]


def photodiode_radius(adr: AdrConfig) -> float:
    """Radius [m] of one circular photodiode of area area_total / M."""
    return float(np.sqrt(adr.area_per_photodiode_m2 / np.pi))


def channel_gain(user_point, ap_point, adr: AdrConfig, vcsel: VcselParams,
                 model: str = "steered") -> float:
    """Electrical gain [A per unit transmit signal] of one (user, AP) link.

    Every photodiode of the receiver is tested against the incoming ray;
    rejected photodiodes contribute nothing and the best accepted one is
    kept. If no photodiode accepts the ray the gain is exactly zero.
    """
    if model not in GAIN_MODELS:
        raise ValueError(f"unknown gain model {model!r}; choose from {GAIN_MODELS}")
    d_vertical, r_offset, incoming = ray_geometry(user_point, ap_point)
    best_cos = 0.0
    accepted_any = False
    for normal in photodiode_normals(adr):
        accepted, cos_inc = fov_accept(normal, incoming, adr.fov_deg)
        if accepted and cos_inc > best_cos:
            best_cos = cos_inc
            accepted_any = True
    if not accepted_any:
        return 0.0
    r_m = photodiode_radius(adr)
    if model == "steered":
        slant = float(np.hypot(d_vertical, r_offset))
        w_d = beam_radius(vcsel, slant)
        captured = received_power_centered(vcsel, r_m, w_d) * best_cos
    else:
        w_d = beam_radius(vcsel, d_vertical)
        captured = received_power_offaxis(vcsel, r_offset, r_m, w_d, best_cos)
    return adr.responsivity_a_per_w * captured / vcsel.tx_power


def noise_variance(noise: NoiseParams, received_power_total: float,
                   responsivity: float) -> float:
    """Receiver noise variance [A^2] over the modulation bandwidth.

    Thermal floor nsd^2 * B, plus the shot term 2 q R P_rx B when enabled.
    """
    if received_power_total < 0:
        raise ValueError("received_power_total must be >= 0")
    sigma2 = noise.nsd ** 2 * noise.bandwidth_hz
    if noise.include_shot:
        sigma2 += 2.0 * noise.q * responsivity * received_power_total * noise.bandwidth_hz
    return sigma2


def build_channel_matrix(scene: Scene, adr: AdrConfig, vcsel: VcselParams,
                         noise: NoiseParams, model: str = "steered") -> ChannelMatrix:
    """Assemble the K x L gain matrix and noise variance for one drop.

    The shot-noise drive level is the aggregate optical power a user collects
    from all APs at full transmit power, averaged over users, which keeps a
    single noise variance for the whole drop.
    """
    users = scene.users.positions
    aps = scene.aps.positions
    h = np.zeros((scene.num_users, scene.num_aps))
    for k in range(scene.num_users):
        for l in range(scene.num_aps):
            h[k, l] = channel_gain(users[k], aps[l], adr, vcsel, model=model)
    received = h / adr.responsivity_a_per_w * vcsel.tx_power
    mean_aggregate = float(received.sum(axis=1).mean())
    sigma2 = noise_variance(noise, mean_aggregate, adr.responsivity_a_per_w)
    return ChannelMatrix(h=h, sigma2=sigma2, scale=1.0)


def normalize_channel(cm: ChannelMatrix) -> ChannelMatrix:
    """Rescale so the strongest user has unit channel norm and sigma2 is 1.

    Divides every gain by g_max = max_k ||h_k|| and sets sigma2 = 1,
    recording g_max in scale. With this convention the transmit SNR is
    simply the total transmit power, so an SNR of s dB means
    P_T = 10^(s/10). SINRs are invariant under the matching physical
    rescaling (h -> c h, sigma2 -> c^2 sigma2), so normalisation changes the
    axis convention, not the physics.
    """
    g_max = float(np.linalg.norm(cm.h, axis=1).max())
    if g_max == 0.0:
        raise ValueError("cannot normalise an all-zero channel matrix")
    return ChannelMatrix(h=cm.h / g_max, sigma2=1.0, scale=g_max)
