"""Rate-splitting transmission, SINRs, achievable rates, and baselines.

Each user's message is split into a common part, jointly encoded into one
stream for everybody, and a private part encoded individually. With total
power P_T and private fraction alpha, each of the K private streams gets
P_p = P_T * alpha / K and the common stream gets the residual
P_c = P_T * (1 - alpha). Receivers decode the common stream first, treating
every private stream as noise, then cancel it and decode their own private
stream against the other K - 1.

SINRs on a real-valued channel with unit-norm precoders w_c, w_p[k]:

    sinr_common[k]  = P_c (h_k . w_c)^2   / (sum_j P_p (h_k . w_p[j])^2 + sigma2)
    sinr_private[k] = P_p (h_k . w_p[k])^2 / (sum_{j != k} P_p (h_k . w_p[j])^2 + sigma2)

Rates in bits/s/Hz: R_c = log2(1 + min_k sinr_common[k]) so every user can
decode the common stream, R_p = sum_k log2(1 + sinr_private[k]), and the
sum rate is R_c + R_p.
"""

from dataclasses import dataclass
import numpy as np

from .channel import ChannelMatrix

__all__ = [
    "PowerSplit",
    "Precoders",
    "RsEvaluation",
    "power_split",
    "private_precoders",
    "common_precoder",
    "default_precoders",
    "sinr_common",
    "sinr_private",
    "rs_sum_rate",
    "default_alpha_grid",
    "optimize_alpha",
    "conventional_alpha",
    "conventional_rs_rate",
    "oma_sum_rate",
]

_NORM_TOL = 1e-9


@dataclass(frozen=True)
class PowerSplit:
    """Total power split between one common and K equal private streams."""

    p_total: float
    alpha: float
    p_common: float
    p_private: float


@dataclass(frozen=True)
class Precoders:
    """Unit-norm common precoder (L,) and private precoder columns (L, K)."""

    w_c: np.ndarray
    w_p: np.ndarray

    def __post_init__(self):
        w_c = np.asarray(self.w_c, dtype=float)
        w_p = np.asarray(self.w_p, dtype=float)
        if abs(np.linalg.norm(w_c) - 1.0) > _NORM_TOL:
            raise ValueError("w_c must be unit norm")
        if np.any(np.abs(np.linalg.norm(w_p, axis=0) - 1.0) > _NORM_TOL):
            raise ValueError("every column of w_p must be unit norm")
        w_c, w_p = w_c.copy(), w_p.copy()
        w_c.setflags(write=False)
        w_p.setflags(write=False)
        object.__setattr__(self, "w_c", w_c)
        object.__setattr__(self, "w_p", w_p)


@dataclass(frozen=True)
class RsEvaluation:
    """SINRs and rates of one rate-splitting configuration."""

    alpha: float
    sinr_common: np.ndarray
    sinr_private: np.ndarray
    rate_common: float
    rate_private: float
    sum_rate: float


def power_split(p_total: float, alpha: float, num_users: int) -> PowerSplit:
    """Split p_total: alpha goes to the K private streams, the rest is common."""
    if p_total <= 0:
        raise ValueError("p_total must be positive")
    if not 0.0 <= alpha <= 1.0:
        raise ValueError("alpha must lie in [0, 1]")
    if num_users < 1:
        raise ValueError("num_users must be >= 1")
    return PowerSplit(
        p_total=p_total,
        alpha=alpha,
        p_common=p_total * (1.0 - alpha),
        p_private=p_total * alpha / num_users,
    )


def private_precoders(cm: ChannelMatrix, reg: float = 0.0) -> np.ndarray:
    """Regularised zero-forcing private precoders, unit-norm columns (L, K).

    Columns of H^T (H H^T + reg I)^{-1}. reg = 0 is exact zero forcing and
    requires a well-conditioned H H^T; a positive reg (MMSE-style loading)
    also covers the overloaded case K > L. A user with an all-zero channel
    row gets the uniform direction, which is harmless since nothing reaches
    that user anyway.
    """
    if reg < 0:
        raise ValueError("reg must be >= 0")
    h = cm.h
    gram = h @ h.T
    if reg == 0.0:
        svals = np.linalg.svd(gram, compute_uv=False)
        if svals[-1] <= svals[0] * 1e-12 or svals[0] == 0.0:
            raise ValueError(
                "H H^T is singular; exact zero forcing is impossible "
                "(pass reg > 0 for regularised zero forcing)")
        w = h.T @ np.linalg.inv(gram)
    else:
        w = h.T @ np.linalg.inv(gram + reg * np.eye(h.shape[0]))
    norms = np.linalg.norm(w, axis=0)
    for k in np.flatnonzero(norms == 0.0):
        w[:, k] = 1.0
        norms[k] = np.linalg.norm(w[:, k])
    return w / norms


def common_precoder(cm: ChannelMatrix) -> np.ndarray:
    """Equal-weight direction serving all users, unit norm (L,).

    Normalised sum of the users' channel directions; all-zero rows are
    skipped.
    """
    norms = np.linalg.norm(cm.h, axis=1)
    active = norms > 0
    if not active.any():
        raise ValueError("cannot build a common precoder for an all-zero channel")
    direction = (cm.h[active] / norms[active, None]).sum(axis=0)
    return direction / np.linalg.norm(direction)


def default_precoders(cm: ChannelMatrix, p_total: float, reg: float = None) -> Precoders:
    """Precoders used when none are supplied: RZF private plus equal-weight common.

    The default loading reg = K * sigma2 / P_T scales with the inverse SNR
    and degrades gracefully to zero forcing at high power.
    """
    if reg is None:
        reg = cm.num_users * cm.sigma2 / p_total
    return Precoders(w_c=common_precoder(cm), w_p=private_precoders(cm, reg))


def _check_dims(cm: ChannelMatrix, pre: Precoders):
    if pre.w_c.shape != (cm.num_aps,) or pre.w_p.shape != (cm.num_aps, cm.num_users):
        raise ValueError("precoder dimensions do not match the channel")
    if cm.sigma2 <= 0:
        raise ValueError("sigma2 must be positive")


def sinr_common(cm: ChannelMatrix, pre: Precoders, ps: PowerSplit) -> np.ndarray:
    """Per-user SINR of the common stream, all private streams as noise."""
    _check_dims(cm, pre)
    common_sig = (cm.h @ pre.w_c) ** 2
    private_sig = (cm.h @ pre.w_p) ** 2
    denom = ps.p_private * private_sig.sum(axis=1) + cm.sigma2
    return ps.p_common * common_sig / denom


def sinr_private(cm: ChannelMatrix, pre: Precoders, ps: PowerSplit) -> np.ndarray:
    """Per-user SINR of the own private stream after common-stream cancellation."""
    _check_dims(cm, pre)
    private_sig = (cm.h @ pre.w_p) ** 2
    direct = np.diag(private_sig)
    cross = private_sig.sum(axis=1) - direct
    return ps.p_private * direct / (ps.p_private * cross + cm.sigma2)


def rs_sum_rate(cm: ChannelMatrix, alpha: float, p_total: float,
                precoders: Precoders = None, reg: float = None) -> RsEvaluation:
    """Evaluate rate splitting at one power split.

    Builds the default precoders unless explicit ones are supplied. Rates
    are in bits/s/Hz; multiply by the modulation bandwidth for bits/s.
    """
    if precoders is None:
        precoders = default_precoders(cm, p_total, reg)
    ps = power_split(p_total, alpha, cm.num_users)
    g_c = sinr_common(cm, precoders, ps)
    g_p = sinr_private(cm, precoders, ps)
    r_c = float(np.log2(1.0 + g_c.min()))
    r_p = float(np.log2(1.0 + g_p).sum())
    return RsEvaluation(alpha=alpha, sinr_common=g_c, sinr_private=g_p,
                        rate_common=r_c, rate_private=r_p, sum_rate=r_c + r_p)


def default_alpha_grid(num_users: int) -> np.ndarray:
    """101-point grid on [0, 1] plus the conventional split K/(K+1)."""
    grid = np.linspace(0.0, 1.0, 101)
    return np.unique(np.append(grid, conventional_alpha(num_users)))


def optimize_alpha(cm: ChannelMatrix, p_total: float, grid=None,
                   precoders: Precoders = None, reg: float = None):
    """Exhaustive search of the power split maximising the sum rate.

    Returns (alpha_star, RsEvaluation). Ties break toward the smaller alpha,
    i.e. toward more common power. The default grid always contains the
    conventional split, so the optimum never falls below it.
    """
    if grid is None:
        grid = default_alpha_grid(cm.num_users)
    grid = np.asarray(grid, dtype=float)
    if grid.size == 0:
        raise ValueError("alpha grid must be nonempty")
    if np.any((grid < 0) | (grid > 1)):
        raise ValueError("alpha grid values must lie in [0, 1]")
    grid = np.sort(grid)
    if precoders is None:
        precoders = default_precoders(cm, p_total, reg)
    _check_dims(cm, precoders)

    # One pass of the quadratic channel terms, then a vectorised alpha scan.
    common_sig = (cm.h @ precoders.w_c) ** 2
    private_sig = (cm.h @ precoders.w_p) ** 2
    direct = np.diag(private_sig)
    total = private_sig.sum(axis=1)
    p_c = p_total * (1.0 - grid)[:, None]
    p_p = (p_total * grid / cm.num_users)[:, None]
    g_c = p_c * common_sig / (p_p * total + cm.sigma2)
    g_p = p_p * direct / (p_p * (total - direct) + cm.sigma2)
    rates = np.log2(1.0 + g_c.min(axis=1)) + np.log2(1.0 + g_p).sum(axis=1)
    best = int(np.argmax(rates))  # first maximum = smallest alpha on ties
    alpha_star = float(grid[best])
    return alpha_star, rs_sum_rate(cm, alpha_star, p_total, precoders=precoders)


def conventional_alpha(num_users: int) -> float:
    """Private fraction giving all K + 1 streams the same power P_T/(K+1)."""
    return num_users / (num_users + 1.0)


def conventional_rs_rate(cm: ChannelMatrix, p_total: float,
                         precoders: Precoders = None, reg: float = None) -> RsEvaluation:
    """Rate splitting with uniform power across the common and private streams."""
    return rs_sum_rate(cm, conventional_alpha(cm.num_users), p_total,
                       precoders=precoders, reg=reg)


def oma_sum_rate(cm: ChannelMatrix, p_total: float) -> float:
    """Orthogonal baseline: TDMA with full power and matched beamforming.

    Each user gets a 1/K time share in which it alone is served with the
    whole power budget, so there is no interference and the average rate is
    mean_k log2(1 + P_T ||h_k||^2 / sigma2).
    """
    if cm.sigma2 <= 0:
        raise ValueError("sigma2 must be positive")
    row_power = (cm.h ** 2).sum(axis=1)
    return float(np.mean(np.log2(1.0 + p_total * row_power / cm.sigma2)))
