"""Shared test fixtures: random channels and an independent rate oracle."""

import math

import numpy as np

from owcrs.channel import ChannelMatrix


def random_channel(rng, num_users, num_aps, sigma2=None, cond_max=None):
    """Random nonnegative channel; optionally reject ill-conditioned draws."""
    while True:
        h = rng.uniform(0.05, 2.0, size=(num_users, num_aps))
        if cond_max is not None and np.linalg.cond(h @ h.T) > cond_max:
            continue
        s2 = float(rng.uniform(0.5, 2.0)) if sigma2 is None else sigma2
        return ChannelMatrix(h=h, sigma2=s2)


def straightline_rs_rate(h, sigma2, p_total, alpha):
    """Straight-line two-user, two-AP rate-splitting evaluation.

    Plain-float reimplementation with no shared code: regularised
    zero-forcing private precoders via the 2x2 adjugate inverse with loading
    2 sigma2 / p_total, equal-weight common precoder, the common/private
    SINR formulas, and the log2 rate expressions.
    """
    h11, h12 = float(h[0][0]), float(h[0][1])
    h21, h22 = float(h[1][0]), float(h[1][1])

    # Gram matrix H H^T plus diagonal loading
    reg = 2.0 * sigma2 / p_total
    a = h11 * h11 + h12 * h12 + reg
    b = h11 * h21 + h12 * h22
    d = h21 * h21 + h22 * h22 + reg
    det = a * d - b * b
    i11, i12 = d / det, -b / det
    i21, i22 = -b / det, a / det

    # private precoder columns of H^T inv, normalised
    w1x = h11 * i11 + h21 * i21
    w1y = h12 * i11 + h22 * i21
    w2x = h11 * i12 + h21 * i22
    w2y = h12 * i12 + h22 * i22
    n1 = math.hypot(w1x, w1y)
    n2 = math.hypot(w2x, w2y)
    w1x, w1y = w1x / n1, w1y / n1
    w2x, w2y = w2x / n2, w2y / n2

    # common precoder: normalised sum of the users' channel directions
    r1 = math.hypot(h11, h12)
    r2 = math.hypot(h21, h22)
    cx = h11 / r1 + h21 / r2
    cy = h12 / r1 + h22 / r2
    cn = math.hypot(cx, cy)
    cx, cy = cx / cn, cy / cn

    p_c = p_total * (1.0 - alpha)
    p_p = p_total * alpha / 2.0

    u1c = h11 * cx + h12 * cy
    u2c = h21 * cx + h22 * cy
    u11 = h11 * w1x + h12 * w1y
    u12 = h11 * w2x + h12 * w2y
    u21 = h21 * w1x + h22 * w1y
    u22 = h21 * w2x + h22 * w2y

    g_c1 = p_c * u1c * u1c / (p_p * (u11 * u11 + u12 * u12) + sigma2)
    g_c2 = p_c * u2c * u2c / (p_p * (u21 * u21 + u22 * u22) + sigma2)
    g_p1 = p_p * u11 * u11 / (p_p * u12 * u12 + sigma2)
    g_p2 = p_p * u22 * u22 / (p_p * u21 * u21 + sigma2)

    r_c = math.log2(1.0 + min(g_c1, g_c2))
    r_p = math.log2(1.0 + g_p1) + math.log2(1.0 + g_p2)
    return r_c + r_p
