"""Gaussian-beam propagation and aperture power capture for VCSEL links.

The transmitter is a single-mode Gaussian emitter: the spot grows with
distance as W_d = W_0 * sqrt(1 + (d/d_Ra)^2) around the Rayleigh distance
d_Ra = pi * W_0^2 * n / lambda, and the transverse intensity profile is the
usual 1/e^2 Gaussian carrying total power P_t. A circular aperture centred
on the beam axis captures P_t * (1 - exp(-2 r^2 / W_d^2)); an aperture far
smaller than the spot can instead be treated as sampling the local
irradiance, which is what the off-axis helper does.
"""

from dataclasses import dataclass
import numpy as np

__all__ = [
    "VcselParams",
    "BeamAtPlane",
    "rayleigh_distance",
    "beam_radius",
    "at_distance",
    "intensity",
    "received_power_centered",
    "received_power_offaxis",
]


@dataclass(frozen=True)
class VcselParams:
    """Emitter parameters of one logical VCSEL transmitter.

    w0 : beam waist [m]
    wavelength : emission wavelength [m]
    refractive_index : medium index (1 for air)
    tx_power : total optical power carried by the beam [W]
    bandwidth_hz : modulation bandwidth [Hz]
    """

    w0: float
    wavelength: float = 850e-9
    refractive_index: float = 1.0
    tx_power: float = 1.0
    bandwidth_hz: float = 5e9

    def __post_init__(self):
        if self.w0 <= 0:
            raise ValueError("w0 must be positive")
        if self.wavelength <= 0:
            raise ValueError("wavelength must be positive")
        if self.refractive_index < 1.0:
            raise ValueError("refractive_index must be >= 1")
        if self.tx_power <= 0:
            raise ValueError("tx_power must be positive")
        if self.bandwidth_hz <= 0:
            raise ValueError("bandwidth_hz must be positive")


@dataclass(frozen=True)
class BeamAtPlane:
    """Beam geometry on a transverse plane at propagation distance d."""

    w_d: float
    d: float
    d_ra: float

    def __post_init__(self):
        if self.d_ra <= 0:
            raise ValueError("d_ra must be positive")


def rayleigh_distance(p: VcselParams) -> float:
    """Rayleigh distance pi * w0^2 * n / lambda [m].

    Over this distance the beam radius grows by a factor sqrt(2); beyond it
    the beam diverges with half-angle lambda / (pi * w0 * n).
    """
    return np.pi * p.w0 ** 2 * p.refractive_index / p.wavelength


def beam_radius(p: VcselParams, d):
    """Beam radius at propagation distance d [m].

    Parameters
    ----------
    p : VcselParams
    d : float or array_like
        Distance from the waist [m]; must be >= 0.

    Returns
    -------
    w_d : float or ndarray
        w0 * sqrt(1 + (d/d_Ra)^2). Equals w0 at d = 0 and grows linearly in
        the far field, where a larger waist collimates into a smaller spot.
    """
    d = np.asarray(d, dtype=float)
    if np.any(d < 0):
        raise ValueError("d must be >= 0")
    w = p.w0 * np.sqrt(1.0 + (d / rayleigh_distance(p)) ** 2)
    return float(w) if w.ndim == 0 else w


def at_distance(p: VcselParams, d: float) -> BeamAtPlane:
    """Bundle beam radius and Rayleigh distance for the plane at distance d."""
    return BeamAtPlane(w_d=beam_radius(p, d), d=float(d), d_ra=rayleigh_distance(p))


def intensity(p: VcselParams, r, w_d: float):
    """Irradiance [W/m^2] at radial offset r on a plane with beam radius w_d.

    Parameters
    ----------
    p : VcselParams
    r : float or array_like
        Radial distance from the beam centre [m]; must be >= 0.
    w_d : float
        Beam radius on the plane [m]; must be > 0.

    Returns
    -------
    irradiance : float or ndarray
        (2 P_t / (pi w_d^2)) * exp(-2 r^2 / w_d^2). Integrating this over the
        whole plane recovers P_t.
    """
    if w_d <= 0:
        raise ValueError("w_d must be positive")
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise ValueError("r must be >= 0")
    val = 2.0 * p.tx_power / (np.pi * w_d ** 2) * np.exp(-2.0 * r ** 2 / w_d ** 2)
    return float(val) if val.ndim == 0 else val


def received_power_centered(p: VcselParams, aperture_radius: float, w_d: float) -> float:
    """Power [W] captured by a circular aperture centred on the beam axis.

    Closed form of the encircled-energy integral of the Gaussian profile:
    P_t * (1 - exp(-2 aperture_radius^2 / w_d^2)).
    """
    if w_d <= 0:
        raise ValueError("w_d must be positive")
    if aperture_radius < 0:
        raise ValueError("aperture_radius must be >= 0")
    return p.tx_power * float(-np.expm1(-2.0 * aperture_radius ** 2 / w_d ** 2))


def received_power_offaxis(p: VcselParams, r_offset: float, aperture_radius: float,
                           w_d: float, cos_incidence: float) -> float:
    """Power [W] captured by a small aperture displaced from the beam axis.

    Flat-field approximation: the irradiance at the aperture centre times the
    projected aperture area pi * aperture_radius^2 * cos_incidence. Accurate
    when the aperture is much smaller than the local spot: on axis the
    relative error against the closed form is about (aperture_radius/w_d)^2,
    so 1e-4 at w_d/100 and 2.5e-3 at w_d/20.
    """
    if aperture_radius < 0:
        raise ValueError("aperture_radius must be >= 0")
    if not 0.0 <= cos_incidence <= 1.0:
        raise ValueError("cos_incidence must lie in [0, 1]")
    area = np.pi * aperture_radius ** 2
    return intensity(p, r_offset, w_d) * area * cos_incidence
