"""One network drop: scene geometry, gain matrix, and the noise budget.

Drops 10 users on the communication floor of the 5 x 5 x 3 m room, builds
the 10 x 4 electrical gain matrix against the ceiling AP grid, and prints
where the noise variance comes from. Saves a scene map to
demos/output/channel_drop.png.
"""

import os

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from owcrs import (
    AdrConfig, NoiseParams, RoomConfig, Scene, VcselParams,
    build_channel_matrix, default_ap_positions, noise_variance,
    normalize_channel, sample_user_positions,
)

room = RoomConfig()
adr = AdrConfig()
vcsel = VcselParams(w0=15e-6)
noise = NoiseParams()

aps = default_ap_positions(room, 4)
users = sample_user_positions(seed=7, count=10, room=room)
scene = Scene(room=room, aps=aps, users=users)

cm = build_channel_matrix(scene, adr, vcsel, noise)

print("=" * 64)
print("Channel drop: 10 users, 4 ceiling APs, 15 um waist")
print("=" * 64)
print("\ngain matrix h (A per unit transmit signal), users x APs:")
with np.printoptions(precision=3, suppress=False):
    print(cm.h)

thermal = noise_variance(NoiseParams(include_shot=False), 0.0,
                         adr.responsivity_a_per_w)
print(f"\nnoise variance: total {cm.sigma2:.3e} A^2")
print(f"  thermal floor {thermal:.3e} A^2, shot contribution "
      f"{cm.sigma2 - thermal:.3e} A^2")

norm = normalize_channel(cm)
print(f"\nnormalised channel: strongest user scaled to unit norm "
      f"(scale = {norm.scale:.3e}), sigma2 = 1")
print("row norms after normalisation:")
print(np.round(np.linalg.norm(norm.h, axis=1), 3))

fig, ax = plt.subplots(figsize=(5.5, 5.5))
ax.scatter(users.positions[:, 0], users.positions[:, 1], s=60, label="users")
ax.scatter(aps.positions[:, 0], aps.positions[:, 1], s=120, marker="s",
           label="APs (ceiling)")
for k, (x, y, _) in enumerate(users.positions):
    ax.annotate(str(k), (x, y), textcoords="offset points", xytext=(5, 5))
ax.set_xlim(0, room.width_m)
ax.set_ylim(0, room.length_m)
ax.set_xlabel("x (m)")
ax.set_ylabel("y (m)")
ax.set_title("Drop seed 7")
ax.legend()
ax.set_aspect("equal")

os.makedirs(os.path.join(os.path.dirname(__file__), "output"), exist_ok=True)
out = os.path.join(os.path.dirname(__file__), "output", "channel_drop.png")
fig.tight_layout()
fig.savefig(out, dpi=150)
print(f"\nwrote {out}")
