"""Room, access-point, user, and receiver geometry for one network drop.

Plain geometry lives here: where the ceiling transmitters sit, where users
land on the communication floor, which way the photodiodes of an angle
diversity receiver point, and whether a downlink ray falls inside a
photodiode's field of view. All types are immutable after construction and
all functions are pure, so everything is safe to share across threads.
"""

from dataclasses import dataclass, field
import numpy as np

__all__ = [
    "RoomConfig",
    "ApLayout",
    "UserDrop",
    "AdrConfig",
    "Scene",
    "default_ap_positions",
    "sample_user_positions",
    "photodiode_normals",
    "ray_geometry",
    "fov_accept",
]

_UNIT_TOL = 1e-9


def _frozen_array(values) -> np.ndarray:
    a = np.array(values, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class RoomConfig:
    """Rectangular room with a horizontal communication floor above ground."""

    width_m: float = 5.0
    length_m: float = 5.0
    height_m: float = 3.0
    floor_height_m: float = 0.85

    def __post_init__(self):
        if min(self.width_m, self.length_m, self.height_m) <= 0:
            raise ValueError("room dimensions must all be positive")
        if not 0.0 <= self.floor_height_m < self.height_m:
            raise ValueError("floor_height_m must lie in [0, height_m)")


@dataclass(frozen=True)
class ApLayout:
    """Ceiling transmitter positions plus a boresight direction per AP.

    Boresights default to straight down. Positions are validated against the
    ceiling plane when the layout is combined with a room in a Scene.
    """

    positions: np.ndarray
    boresights: np.ndarray = None

    def __post_init__(self):
        pos = np.atleast_2d(np.asarray(self.positions, dtype=float))
        if pos.ndim != 2 or pos.shape[1] != 3 or pos.shape[0] < 1:
            raise ValueError("positions must be an (L, 3) array with L >= 1")
        for i in range(len(pos)):
            for j in range(i + 1, len(pos)):
                if np.allclose(pos[i], pos[j]):
                    raise ValueError("AP positions must be pairwise distinct")
        if self.boresights is None:
            bs = np.tile([0.0, 0.0, -1.0], (pos.shape[0], 1))
        else:
            bs = np.atleast_2d(np.asarray(self.boresights, dtype=float))
            if bs.shape != pos.shape:
                raise ValueError("boresights must match positions in shape")
            norms = np.linalg.norm(bs, axis=1)
            if np.any(np.abs(norms - 1.0) > _UNIT_TOL):
                raise ValueError("boresights must be unit vectors")
        object.__setattr__(self, "positions", _frozen_array(pos))
        object.__setattr__(self, "boresights", _frozen_array(bs))

    @property
    def count(self) -> int:
        return self.positions.shape[0]


@dataclass(frozen=True)
class UserDrop:
    """One random placement of K users on the communication floor."""

    positions: np.ndarray
    seed: int

    def __post_init__(self):
        pos = np.atleast_2d(np.asarray(self.positions, dtype=float))
        if pos.ndim != 2 or pos.shape[1] != 3 or pos.shape[0] < 1:
            raise ValueError("positions must be a (K, 3) array with K >= 1")
        object.__setattr__(self, "positions", _frozen_array(pos))

    @property
    def count(self) -> int:
        return self.positions.shape[0]


@dataclass(frozen=True)
class AdrConfig:
    """Angle diversity receiver: M equal-area photodiodes on one device.

    Every photodiode shares the total detection area equally, so each one
    covers area_total_m2 / num_photodiodes. The first photodiode points at
    the zenith; the remaining ones are tilted away from it by tilt_deg with
    evenly spaced azimuths.
    """

    num_photodiodes: int = 4
    area_total_m2: float = 20e-6
    fov_deg: float = 45.0
    responsivity_a_per_w: float = 0.4
    tilt_deg: float = 45.0

    def __post_init__(self):
        if self.num_photodiodes < 1:
            raise ValueError("num_photodiodes must be >= 1")
        if self.area_total_m2 <= 0:
            raise ValueError("area_total_m2 must be positive")
        if not 0.0 < self.fov_deg <= 90.0:
            raise ValueError("fov_deg must lie in (0, 90]")
        if self.responsivity_a_per_w <= 0:
            raise ValueError("responsivity_a_per_w must be positive")

    @property
    def area_per_photodiode_m2(self) -> float:
        return self.area_total_m2 / self.num_photodiodes


@dataclass(frozen=True)
class Scene:
    """Room, AP layout, and user drop for one network realisation."""

    room: RoomConfig
    aps: ApLayout
    users: UserDrop

    def __post_init__(self):
        ap = self.aps.positions
        if np.any(np.abs(ap[:, 2] - self.room.height_m) > 1e-9):
            raise ValueError("all AP positions must lie on the ceiling plane")
        if np.any(ap[:, 0] < 0) or np.any(ap[:, 0] > self.room.width_m) \
                or np.any(ap[:, 1] < 0) or np.any(ap[:, 1] > self.room.length_m):
            raise ValueError("AP positions must lie inside the room footprint")
        up = self.users.positions
        if np.any(np.abs(up[:, 2] - self.room.floor_height_m) > 1e-9):
            raise ValueError("all users must sit on the communication floor")
        if np.any(up[:, 0] < 0) or np.any(up[:, 0] > self.room.width_m) \
                or np.any(up[:, 1] < 0) or np.any(up[:, 1] > self.room.length_m):
            raise ValueError("user positions must lie inside the room footprint")

    @property
    def num_users(self) -> int:
        return self.users.count

    @property
    def num_aps(self) -> int:
        return self.aps.count


def default_ap_positions(room: RoomConfig, count: int) -> ApLayout:
    """Symmetric ceiling grid for the supported AP counts.

    count == 1 puts the AP at the room-centre ceiling point; count == 4 puts
    one AP at each quarter point (centre +- width/4, centre +- length/4).
    Other counts are rejected; pass explicit coordinates instead.
    """
    cx, cy = room.width_m / 2.0, room.length_m / 2.0
    z = room.height_m
    if count == 1:
        pts = [(cx, cy, z)]
    elif count == 4:
        dx, dy = room.width_m / 4.0, room.length_m / 4.0
        pts = [(cx - dx, cy - dy, z), (cx - dx, cy + dy, z),
               (cx + dx, cy - dy, z), (cx + dx, cy + dy, z)]
    else:
        raise ValueError(
            f"unsupported layout: no default for {count} APs "
            "(supply explicit coordinates)")
    return ApLayout(positions=np.array(pts))


def sample_user_positions(seed: int, count: int, room: RoomConfig) -> UserDrop:
    """Drop count users i.i.d. uniform over the communication floor.

    Deterministic in seed: the same (seed, count, room) always produces the
    identical drop.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    rng = np.random.default_rng(seed)
    xy = rng.uniform([0.0, 0.0], [room.width_m, room.length_m], size=(count, 2))
    pos = np.column_stack([xy, np.full(count, room.floor_height_m)])
    return UserDrop(positions=pos, seed=seed)


def photodiode_normals(adr: AdrConfig) -> np.ndarray:
    """Unit outward normals of the receiver photodiodes, shape (M, 3).

    The first normal points at the zenith. For M >= 2 the remaining M - 1
    normals sit at elevation tilt_deg away from the zenith with azimuths
    spaced exactly 2*pi/(M-1) apart, starting at azimuth 0.
    """
    m = adr.num_photodiodes
    normals = np.zeros((m, 3))
    normals[0] = (0.0, 0.0, 1.0)
    if m > 1:
        tilt = np.radians(adr.tilt_deg)
        azimuths = 2.0 * np.pi * np.arange(m - 1) / (m - 1)
        normals[1:, 0] = np.sin(tilt) * np.cos(azimuths)
        normals[1:, 1] = np.sin(tilt) * np.sin(azimuths)
        normals[1:, 2] = np.cos(tilt)
    normals /= np.linalg.norm(normals, axis=1, keepdims=True)
    normals.setflags(write=False)
    return normals


def ray_geometry(user_point, ap_point):
    """Geometry of the downlink ray from one AP to one user.

    Returns (d_vertical, r_offset, incoming_dir): the vertical propagation
    distance along the downward boresight, the horizontal offset of the user
    from the AP footprint (the radial distance from the beam centre), and the
    unit direction of propagation from AP to user.
    """
    user = np.asarray(user_point, dtype=float)
    ap = np.asarray(ap_point, dtype=float)
    d_vertical = ap[2] - user[2]
    if d_vertical <= 0:
        raise ValueError("user must lie strictly below the AP")
    r_offset = float(np.hypot(user[0] - ap[0], user[1] - ap[1]))
    diff = user - ap
    incoming = diff / np.linalg.norm(diff)
    return float(d_vertical), r_offset, incoming


def fov_accept(pd_normal, incoming_dir, fov_deg: float):
    """Field-of-view test for one photodiode against one incoming ray.

    Returns (accepted, cos_incidence) with cos_incidence measured between the
    photodiode normal and the reversed ray direction. The boundary is
    inclusive: a ray at exactly fov_deg is accepted.
    """
    n = np.asarray(pd_normal, dtype=float)
    d = np.asarray(incoming_dir, dtype=float)
    if abs(np.linalg.norm(n) - 1.0) > _UNIT_TOL:
        raise ValueError("pd_normal must be a unit vector")
    if abs(np.linalg.norm(d) - 1.0) > _UNIT_TOL:
        raise ValueError("incoming_dir must be a unit vector")
    cos_incidence = float(np.dot(n, -d))
    accepted = cos_incidence >= np.cos(np.radians(fov_deg))
    return bool(accepted), cos_incidence
