"""Monte-Carlo experiment harness: seeded drops, sweeps, CSV tables, SVG charts.

A sweep runs a number of independent user drops. Drop i samples its users
with seed master_seed + i, so results are reproducible and order
independent: per-drop results are collected into an array indexed by drop
and aggregated in that canonical order, which makes serial and parallel
executions byte-identical.

Two experiments are provided. The SNR sweep normalises each drop's channel
(strongest user at unit norm, sigma2 = 1) so that a transmit SNR of s dB
simply means P_T = 10^(s/10). The beam-waist sweep keeps physical gains,
reuses the same user drop across all waist values, and fixes the per-drop
power budget so that the strongest user sits at 20 dB transmit SNR at the
5 um reference waist.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
import hashlib

import numpy as np

from . import __version__
from .beam import VcselParams
from .channel import GAIN_MODELS, NoiseParams, build_channel_matrix, normalize_channel
from .rsma import conventional_alpha, default_precoders, oma_sum_rate, optimize_alpha, \
    rs_sum_rate
from .scene import AdrConfig, RoomConfig, Scene, default_ap_positions, \
    sample_user_positions

__all__ = [
    "SCHEMES",
    "ConfigError",
    "ExperimentConfig",
    "SweepRow",
    "SweepResult",
    "default_config",
    "load_config",
    "run_snr_sweep",
    "run_waist_sweep",
    "write_csv",
    "read_csv",
    "emit_chart",
]

SCHEMES = ("opt_rs", "conv_rs", "oma")

DEFAULT_SNR_GRID_DB = (5.0, 10.0, 15.0, 20.0, 25.0)
DEFAULT_WAIST_GRID_UM = (5.0, 10.0, 15.0, 20.0, 25.0, 30.0)

# Waist sweeps calibrate the power budget at this reference point.
WAIST_CAL_W0_M = 5e-6
WAIST_CAL_SNR_DB = 20.0


class ConfigError(ValueError):
    """Raised when an experiment configuration fails validation."""


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything one sweep needs: scene, device parameters, grid, seeds."""

    room: RoomConfig = field(default_factory=RoomConfig)
    adr: AdrConfig = field(default_factory=AdrConfig)
    vcsel: VcselParams = field(default_factory=lambda: VcselParams(w0=15e-6))
    noise: NoiseParams = field(default_factory=NoiseParams)
    num_aps: int = 4
    num_users: int = 10
    sweep: str = "snr"
    grid: tuple = None
    drops: int = 200
    seed: int = 1
    schemes: tuple = SCHEMES
    channel_mode: str = None
    gain_model: str = "steered"
    out_dir: str = "results"

    def __post_init__(self):
        if self.grid is None:
            grid = DEFAULT_SNR_GRID_DB if self.sweep == "snr" else DEFAULT_WAIST_GRID_UM
            object.__setattr__(self, "grid", grid)
        else:
            object.__setattr__(self, "grid", tuple(float(v) for v in self.grid))
        if self.channel_mode is None:
            mode = "normalized" if self.sweep == "snr" else "physical"
            object.__setattr__(self, "channel_mode", mode)
        object.__setattr__(self, "schemes", tuple(self.schemes))

    def validate(self):
        if self.sweep not in ("snr", "waist"):
            raise ConfigError(f"sweep: expected 'snr' or 'waist', got {self.sweep!r}")
        if len(self.grid) == 0:
            raise ConfigError("grid: must be nonempty")
        if any(b <= a for a, b in zip(self.grid, self.grid[1:])):
            raise ConfigError("grid: values must be strictly ascending")
        if self.sweep == "waist" and any(v <= 0 for v in self.grid):
            raise ConfigError("grid: waist values must be positive (micrometres)")
        if self.drops < 1:
            raise ConfigError("drops: must be >= 1")
        if self.num_users < 1:
            raise ConfigError("num_users: must be >= 1")
        if self.num_aps not in (1, 4):
            raise ConfigError("num_aps: default layouts exist for 1 or 4 APs only")
        if not self.schemes:
            raise ConfigError("schemes: must name at least one scheme")
        for s in self.schemes:
            if s not in SCHEMES:
                raise ConfigError(f"schemes: unknown scheme {s!r}, choose from {SCHEMES}")
        if self.channel_mode not in ("normalized", "physical"):
            raise ConfigError(
                f"channel_mode: expected 'normalized' or 'physical', got {self.channel_mode!r}")
        if self.sweep == "waist" and self.channel_mode != "physical":
            raise ConfigError("channel_mode: waist sweeps require physical gains")
        if self.gain_model not in GAIN_MODELS:
            raise ConfigError(
                f"gain_model: expected one of {GAIN_MODELS}, got {self.gain_model!r}")

    def config_hash(self) -> str:
        """Stable digest of the scientific fields, for provenance."""
        parts = [
            f"room={self.room.width_m},{self.room.length_m},{self.room.height_m},"
            f"{self.room.floor_height_m}",
            f"adr={self.adr.num_photodiodes},{self.adr.area_total_m2},{self.adr.fov_deg},"
            f"{self.adr.responsivity_a_per_w},{self.adr.tilt_deg}",
            f"vcsel={self.vcsel.w0},{self.vcsel.wavelength},{self.vcsel.refractive_index},"
            f"{self.vcsel.tx_power},{self.vcsel.bandwidth_hz}",
            f"noise={self.noise.nsd},{self.noise.bandwidth_hz},{self.noise.include_shot}",
            f"layout={self.num_aps},{self.num_users}",
            f"sweep={self.sweep},{self.grid}",
            f"run={self.drops},{self.seed},{self.schemes},{self.channel_mode},"
            f"{self.gain_model}",
        ]
        return hashlib.sha256(";".join(parts).encode()).hexdigest()[:16]


@dataclass(frozen=True)
class SweepRow:
    scheme: str
    sweep_value: float
    mean_sum_rate: float
    stderr: float
    drops: int


@dataclass(frozen=True)
class SweepResult:
    """Aggregated sweep output: one row per (scheme, sweep point)."""

    sweep_param: str
    rows: tuple
    seed: int
    provenance: dict


def default_config(sweep: str = "snr", **overrides) -> ExperimentConfig:
    """Config reproducing the reference setup: 4 APs, 10 users, 200 drops."""
    return ExperimentConfig(sweep=sweep, **overrides)


def _drop_rates(cm, p_total, schemes):
    """Sum rate of each requested scheme on one channel at one power budget."""
    pre = None
    rates = np.empty(len(schemes))
    for idx, scheme in enumerate(schemes):
        if scheme == "oma":
            rates[idx] = oma_sum_rate(cm, p_total)
            continue
        if pre is None:
            pre = default_precoders(cm, p_total)
        if scheme == "opt_rs":
            rates[idx] = optimize_alpha(cm, p_total, precoders=pre)[1].sum_rate
        elif scheme == "conv_rs":
            rates[idx] = rs_sum_rate(cm, conventional_alpha(cm.num_users), p_total,
                                     precoders=pre).sum_rate
    return rates


def _run_drops(job, drops: int, jobs: int) -> np.ndarray:
    """Run per-drop jobs, serially or in a thread pool, in canonical order."""
    if jobs <= 1:
        results = [job(i) for i in range(drops)]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(job, range(drops)))
    return np.stack(results, axis=0)


def _aggregate(per_drop: np.ndarray, cfg: ExperimentConfig, sweep_param: str) -> SweepResult:
    """Mean and standard error over drops, rows scheme-major then grid order."""
    drops = per_drop.shape[0]
    means = per_drop.mean(axis=0)
    if drops > 1:
        stderr = per_drop.std(axis=0, ddof=1) / np.sqrt(drops)
    else:
        stderr = np.zeros_like(means)
    rows = []
    for i, scheme in enumerate(cfg.schemes):
        for j, value in enumerate(cfg.grid):
            rows.append(SweepRow(scheme=scheme, sweep_value=float(value),
                                 mean_sum_rate=float(means[i, j]),
                                 stderr=float(stderr[i, j]), drops=drops))
    provenance = {"config_hash": cfg.config_hash(), "seed": cfg.seed,
                  "version": __version__}
    return SweepResult(sweep_param=sweep_param, rows=tuple(rows), seed=cfg.seed,
                       provenance=provenance)


def run_snr_sweep(cfg: ExperimentConfig, jobs: int = 1) -> SweepResult:
    """Mean sum rate of each scheme across the transmit-SNR grid.

    Per drop: sample users, build the physical channel, then evaluate every
    scheme at each SNR point. In normalized mode P_T = 10^(s/10) directly;
    in physical mode P_T is scaled so the strongest user's transmit SNR
    matches the grid point, which is the same convention by scale
    invariance.
    """
    cfg.validate()
    if cfg.sweep != "snr":
        raise ConfigError("sweep: run_snr_sweep requires sweep='snr'")
    aps = default_ap_positions(cfg.room, cfg.num_aps)

    def job(i):
        users = sample_user_positions(cfg.seed + i, cfg.num_users, cfg.room)
        scene = Scene(room=cfg.room, aps=aps, users=users)
        cm = build_channel_matrix(scene, cfg.adr, cfg.vcsel, cfg.noise,
                                  model=cfg.gain_model)
        if cfg.channel_mode == "normalized":
            cm = normalize_channel(cm)
            budgets = [10.0 ** (s / 10.0) for s in cfg.grid]
        else:
            best = float((cm.h ** 2).sum(axis=1).max())
            budgets = [10.0 ** (s / 10.0) * cm.sigma2 / best for s in cfg.grid]
        out = np.empty((len(cfg.schemes), len(cfg.grid)))
        for j, p_total in enumerate(budgets):
            out[:, j] = _drop_rates(cm, p_total, cfg.schemes)
        return out

    per_drop = _run_drops(job, cfg.drops, jobs)
    return _aggregate(per_drop, cfg, "snr_db")


def run_waist_sweep(cfg: ExperimentConfig, jobs: int = 1) -> SweepResult:
    """Mean sum rate of each scheme across the beam-waist grid (micrometres).

    The same user drop is reused for every waist value (paired comparison)
    and the power budget is fixed per drop by the 5 um / 20 dB calibration,
    so the sweep isolates the effect of the waist on the channel.
    """
    cfg.validate()
    if cfg.sweep != "waist":
        raise ConfigError("sweep: run_waist_sweep requires sweep='waist'")
    aps = default_ap_positions(cfg.room, cfg.num_aps)

    def job(i):
        users = sample_user_positions(cfg.seed + i, cfg.num_users, cfg.room)
        scene = Scene(room=cfg.room, aps=aps, users=users)
        cal = build_channel_matrix(scene, cfg.adr, replace(cfg.vcsel, w0=WAIST_CAL_W0_M),
                                   cfg.noise, model=cfg.gain_model)
        best = float((cal.h ** 2).sum(axis=1).max())
        p_total = 10.0 ** (WAIST_CAL_SNR_DB / 10.0) * cal.sigma2 / best
        out = np.empty((len(cfg.schemes), len(cfg.grid)))
        for j, waist_um in enumerate(cfg.grid):
            vcsel = replace(cfg.vcsel, w0=waist_um * 1e-6)
            cm = build_channel_matrix(scene, cfg.adr, vcsel, cfg.noise,
                                      model=cfg.gain_model)
            out[:, j] = _drop_rates(cm, p_total, cfg.schemes)
        return out

    per_drop = _run_drops(job, cfg.drops, jobs)
    return _aggregate(per_drop, cfg, "waist_um")


# ---------------------------------------------------------------------------
# CSV output
# ---------------------------------------------------------------------------

CSV_HEADER = "scheme,sweep_param,sweep_value,mean_sum_rate_bpshz,stderr,drops,seed"


def _fmt(x: float) -> str:
    return format(float(x), ".9g")


def write_csv(result: SweepResult, path) -> None:
    """Write the sweep table: fixed header, 9 significant digits, LF endings."""
    lines = [CSV_HEADER]
    for row in result.rows:
        lines.append(",".join([
            row.scheme, result.sweep_param, _fmt(row.sweep_value),
            _fmt(row.mean_sum_rate), _fmt(row.stderr), str(row.drops),
            str(result.seed),
        ]))
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("\n".join(lines) + "\n")
    except OSError as exc:
        raise OSError(f"failed to write CSV {path}: {exc}") from exc


def read_csv(path) -> SweepResult:
    """Parse a sweep table written by write_csv."""
    try:
        with open(path, "r", encoding="utf-8", newline="") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise OSError(f"failed to read CSV {path}: {exc}") from exc
    if not lines or lines[0] != CSV_HEADER:
        raise ValueError(f"{path}: not a sweep CSV (unexpected header)")
    rows = []
    sweep_param, seed = "", 0
    for line in lines[1:]:
        scheme, sweep_param, value, mean, stderr, drops, seed = line.split(",")
        rows.append(SweepRow(scheme=scheme, sweep_value=float(value),
                             mean_sum_rate=float(mean), stderr=float(stderr),
                             drops=int(drops)))
        seed = int(seed)
    return SweepResult(sweep_param=sweep_param or "snr_db", rows=tuple(rows),
                       seed=int(seed), provenance={})


# ---------------------------------------------------------------------------
# SVG line chart
# ---------------------------------------------------------------------------

_AXIS_LABELS = {"snr_db": "SNR (dB)", "waist_um": "Beam waist (um)"}
_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e")


def _padded_range(lo: float, hi: float):
    """Data range extended by a 5 percent margin on both sides."""
    span = hi - lo
    pad = 0.05 * span if span > 0 else 0.5
    return lo - pad, hi + pad


def emit_chart(result: SweepResult, path) -> None:
    """Render the sweep as a self-contained SVG line chart.

    One polyline per scheme, axes labelled with the sweep parameter and
    'Sum rate (bits/s/Hz)', and a legend naming the schemes. Output bytes
    are a pure function of the result.
    """
    if not result.rows:
        raise ValueError("cannot chart an empty sweep result")
    schemes = []
    for row in result.rows:
        if row.scheme not in schemes:
            schemes.append(row.scheme)
    series = {s: sorted([(r.sweep_value, r.mean_sum_rate) for r in result.rows
                         if r.scheme == s]) for s in schemes}

    width, height = 640.0, 440.0
    ml, mr, mt, mb = 70.0, 150.0, 20.0, 55.0
    pw, ph = width - ml - mr, height - mt - mb
    xs = [r.sweep_value for r in result.rows]
    ys = [r.mean_sum_rate for r in result.rows]
    xlo, xhi = _padded_range(min(xs), max(xs))
    ylo, yhi = _padded_range(min(ys), max(ys))

    def px(v):
        return ml + (v - xlo) / (xhi - xlo) * pw

    def py(v):
        return height - mb - (v - ylo) / (yhi - ylo) * ph

    out = []
    out.append('<?xml version="1.0" encoding="UTF-8"?>')
    out.append(f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0f}" '
               f'height="{height:.0f}" viewBox="0 0 {width:.0f} {height:.0f}">')
    out.append('<rect width="100%" height="100%" fill="white"/>')
    # axes
    out.append(f'<line x1="{ml:.2f}" y1="{height - mb:.2f}" x2="{ml + pw:.2f}" '
               f'y2="{height - mb:.2f}" stroke="black" stroke-width="1"/>')
    out.append(f'<line x1="{ml:.2f}" y1="{mt:.2f}" x2="{ml:.2f}" '
               f'y2="{height - mb:.2f}" stroke="black" stroke-width="1"/>')
    # ticks and grid
    for frac in (0.0, 0.25, 0.5, 0.75, 1.0):
        xv = xlo + frac * (xhi - xlo)
        yv = ylo + frac * (yhi - ylo)
        xp, yp = px(xv), py(yv)
        out.append(f'<line x1="{xp:.2f}" y1="{height - mb:.2f}" x2="{xp:.2f}" '
                   f'y2="{height - mb + 5:.2f}" stroke="black" stroke-width="1"/>')
        out.append(f'<text x="{xp:.2f}" y="{height - mb + 18:.2f}" font-size="11" '
                   f'text-anchor="middle">{xv:.4g}</text>')
        out.append(f'<line x1="{ml - 5:.2f}" y1="{yp:.2f}" x2="{ml:.2f}" '
                   f'y2="{yp:.2f}" stroke="black" stroke-width="1"/>')
        out.append(f'<text x="{ml - 8:.2f}" y="{yp + 4:.2f}" font-size="11" '
                   f'text-anchor="end">{yv:.4g}</text>')
    # axis labels
    xlabel = _AXIS_LABELS.get(result.sweep_param, result.sweep_param)
    out.append(f'<text x="{ml + pw / 2:.2f}" y="{height - 12:.2f}" font-size="13" '
               f'text-anchor="middle">{xlabel}</text>')
    out.append(f'<text x="16" y="{mt + ph / 2:.2f}" font-size="13" '
               f'text-anchor="middle" transform="rotate(-90 16 {mt + ph / 2:.2f})">'
               'Sum rate (bits/s/Hz)</text>')
    # data
    for idx, scheme in enumerate(schemes):
        color = _COLORS[idx % len(_COLORS)]
        pts = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in series[scheme])
        out.append(f'<polyline points="{pts}" fill="none" stroke="{color}" '
                   'stroke-width="2"/>')
        for x, y in series[scheme]:
            out.append(f'<circle cx="{px(x):.2f}" cy="{py(y):.2f}" r="3" '
                       f'fill="{color}"/>')
    # legend
    lx, ly = ml + pw + 15.0, mt + 10.0
    for idx, scheme in enumerate(schemes):
        color = _COLORS[idx % len(_COLORS)]
        yp = ly + 18.0 * idx
        out.append(f'<line x1="{lx:.2f}" y1="{yp:.2f}" x2="{lx + 22:.2f}" '
                   f'y2="{yp:.2f}" stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{lx + 28:.2f}" y="{yp + 4:.2f}" font-size="12">'
                   f'{scheme}</text>')
    out.append('</svg>')
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("\n".join(out) + "\n")
    except OSError as exc:
        raise OSError(f"failed to write SVG {path}: {exc}") from exc


# ---------------------------------------------------------------------------
# Flat key=value configuration files
# ---------------------------------------------------------------------------

_CONFIG_KEYS = {
    "room_width_m", "room_length_m", "room_height_m", "floor_height_m",
    "num_aps", "num_users",
    "pd_count", "pd_area_mm2", "pd_fov_deg", "pd_responsivity", "pd_tilt_deg",
    "beam_waist_um", "wavelength_nm", "refractive_index", "tx_power_w",
    "bandwidth_ghz", "noise_density_pa", "include_shot",
    "sweep", "snr_grid_db", "waist_grid_um",
    "drops", "seed", "schemes", "channel_mode", "gain_model", "out_dir",
}


def _parse_bool(key, raw):
    low = raw.strip().lower()
    if low in ("true", "yes", "1", "on"):
        return True
    if low in ("false", "no", "0", "off"):
        return False
    raise ConfigError(f"{key}: expected a boolean, got {raw!r}")


def _parse_floats(key, raw):
    try:
        return tuple(float(tok) for tok in raw.split(",") if tok.strip())
    except ValueError as exc:
        raise ConfigError(f"{key}: expected comma-separated numbers, got {raw!r}") from exc


def parse_config_text(text: str) -> dict:
    """Parse 'key = value' lines; '#' starts a comment, blank lines ignored."""
    values = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {line!r}")
        key, raw = (part.strip() for part in stripped.split("=", 1))
        if key not in _CONFIG_KEYS:
            raise ConfigError(f"line {lineno}: unknown config key {key!r}")
        values[key] = raw
    return values


def config_from_values(values: dict) -> ExperimentConfig:
    """Build an ExperimentConfig from parsed key/value strings."""
    def fget(key, default):
        try:
            return float(values[key]) if key in values else default
        except ValueError as exc:
            raise ConfigError(f"{key}: expected a number, got {values[key]!r}") from exc

    def iget(key, default):
        try:
            return int(values[key]) if key in values else default
        except ValueError as exc:
            raise ConfigError(f"{key}: expected an integer, got {values[key]!r}") from exc

    room = RoomConfig(width_m=fget("room_width_m", 5.0),
                      length_m=fget("room_length_m", 5.0),
                      height_m=fget("room_height_m", 3.0),
                      floor_height_m=fget("floor_height_m", 0.85))
    adr = AdrConfig(num_photodiodes=iget("pd_count", 4),
                    area_total_m2=fget("pd_area_mm2", 20.0) * 1e-6,
                    fov_deg=fget("pd_fov_deg", 45.0),
                    responsivity_a_per_w=fget("pd_responsivity", 0.4),
                    tilt_deg=fget("pd_tilt_deg", 45.0))
    vcsel = VcselParams(w0=fget("beam_waist_um", 15.0) * 1e-6,
                        wavelength=fget("wavelength_nm", 850.0) * 1e-9,
                        refractive_index=fget("refractive_index", 1.0),
                        tx_power=fget("tx_power_w", 1.0),
                        bandwidth_hz=fget("bandwidth_ghz", 5.0) * 1e9)
    noise = NoiseParams(nsd=fget("noise_density_pa", 4.47) * 1e-12,
                        bandwidth_hz=fget("bandwidth_ghz", 5.0) * 1e9,
                        include_shot=_parse_bool("include_shot", values["include_shot"])
                        if "include_shot" in values else True)
    sweep = values.get("sweep", "snr").strip()
    if sweep == "snr":
        grid = _parse_floats("snr_grid_db", values["snr_grid_db"]) \
            if "snr_grid_db" in values else None
    else:
        grid = _parse_floats("waist_grid_um", values["waist_grid_um"]) \
            if "waist_grid_um" in values else None
    schemes = tuple(tok.strip() for tok in values["schemes"].split(",") if tok.strip()) \
        if "schemes" in values else SCHEMES
    cfg = ExperimentConfig(
        room=room, adr=adr, vcsel=vcsel, noise=noise,
        num_aps=iget("num_aps", 4), num_users=iget("num_users", 10),
        sweep=sweep, grid=grid, drops=iget("drops", 200), seed=iget("seed", 1),
        schemes=schemes,
        channel_mode=values.get("channel_mode", "").strip() or None,
        gain_model=values.get("gain_model", "steered").strip(),
        out_dir=values.get("out_dir", "results").strip(),
    )
    cfg.validate()
    return cfg


def load_config(path) -> ExperimentConfig:
    """Read a flat key=value config file into a validated ExperimentConfig."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise OSError(f"failed to read config {path}: {exc}") from exc
    return config_from_values(parse_config_text(text))
