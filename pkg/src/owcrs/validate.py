"""Built-in oracle checks: quadrature vs closed form, zero-forcing residuals.

These are the self-tests behind the `validate` CLI subcommand. The beam
check integrates the Gaussian irradiance profile over the detector disc
with adaptive 2-D quadrature and compares against the closed-form
encircled-energy expression; the precoder check verifies that exact zero
forcing suppresses cross-user terms to numerical noise.
"""

from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .beam import VcselParams, beam_radius, intensity, received_power_centered
from .channel import ChannelMatrix
from .rsma import private_precoders

__all__ = ["CheckResult", "run_quadrature_checks", "run_zf_checks", "run_all_checks"]

QUADRATURE_WAISTS_UM = (5.0, 10.0, 20.0, 30.0)
QUADRATURE_DISTANCE_M = 2.15
QUADRATURE_APERTURE_M = 1.2616e-3
QUADRATURE_RTOL = 1e-9

ZF_RTOL = 1e-9
ZF_SEED = 20240811


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def disc_power_quadrature(p: VcselParams, w_d: float, aperture_radius: float,
                          r_offset: float = 0.0) -> float:
    """Adaptive 2-D integral of the irradiance over a displaced detector disc.

    Polar coordinates about the disc centre; the distance to the beam axis
    of a point (rho, phi) on the disc is sqrt(r_offset^2 + 2 r_offset rho
    cos(phi) + rho^2).
    """
    def integrand(phi, rho):
        r = np.sqrt(r_offset ** 2 + 2.0 * r_offset * rho * np.cos(phi) + rho ** 2)
        return intensity(p, r, w_d) * rho

    value, _ = integrate.dblquad(integrand, 0.0, aperture_radius,
                                 0.0, 2.0 * np.pi, epsabs=0.0, epsrel=1e-12)
    return value


def run_quadrature_checks() -> list:
    """Closed-form aperture capture vs adaptive quadrature, per waist."""
    results = []
    for waist_um in QUADRATURE_WAISTS_UM:
        p = VcselParams(w0=waist_um * 1e-6)
        w_d = beam_radius(p, QUADRATURE_DISTANCE_M)
        closed = received_power_centered(p, QUADRATURE_APERTURE_M, w_d)
        quad = disc_power_quadrature(p, w_d, QUADRATURE_APERTURE_M)
        rel = abs(closed - quad) / abs(quad)
        results.append(CheckResult(
            name=f"quadrature w0={waist_um:g}um",
            passed=rel <= QUADRATURE_RTOL,
            detail=f"closed={closed:.12e} quad={quad:.12e} rel_err={rel:.3e}"))
    return results


def run_zf_checks(num_cases: int = 25) -> list:
    """Exact zero forcing must leave cross-user terms at numerical noise."""
    rng = np.random.default_rng(ZF_SEED)
    results = []
    worst = 0.0
    tested = 0
    while tested < num_cases:
        n = int(rng.integers(2, 5))
        h = np.abs(rng.standard_normal((n, n)))
        if np.linalg.cond(h @ h.T) > 1e6:
            continue  # conditioning outside the exact-ZF contract
        tested += 1
        cm = ChannelMatrix(h=h, sigma2=1.0)
        w = private_precoders(cm, reg=0.0)
        prod = cm.h @ w
        direct = np.abs(np.diag(prod))
        cross = np.abs(prod - np.diag(np.diag(prod))).max()
        worst = max(worst, cross / direct.min())
    results.append(CheckResult(
        name=f"zero-forcing residual ({num_cases} random channels)",
        passed=worst <= ZF_RTOL,
        detail=f"worst cross/direct ratio = {worst:.3e}"))
    return results


def run_all_checks() -> tuple:
    """All oracle checks; returns (results, all_passed)."""
    results = run_quadrature_checks() + run_zf_checks()
    return results, all(r.passed for r in results)
