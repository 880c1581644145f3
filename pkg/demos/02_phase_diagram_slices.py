"""Separability phase diagrams on c3 = 0.7 slices.

Three panels over the (c1, c2) plane:

  * Bell-diagonal states: the domain is a rotated rectangle and the
    separable states form the square |c1| + |c2| <= 0.3 inscribed in it.
  * The swap-symmetric family with all three symmetric cross couplings
    switched on (sx = 0.15, gx = 0.16, gy = 0.1, gz = 0.04).
  * The same coupling strengths with the zx and xy couplings flipped to
    their antisymmetric (DM-type) variants: the domain and the separable
    region deform very differently.

White = not a state, light = separable, dark = entangled (colored by
concurrence).  The dashed line is the path c2 = -c1 + 0.1 used in the
sudden-death demo.

Run:  python demos/02_phase_diagram_slices.py
"""

import pathlib

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from spinpair.separability import ScanConfig, scan_grid
from spinpair.states import BlochState

OUT = pathlib.Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

MIX = dict(sx=0.15, mix_a=0.16, mix_b=0.1, mix_c=0.04)
configs = [
    ("Bell-diagonal", BlochState("P23", c3=0.7)),
    ("all symmetric couplings", BlochState("P23", c3=0.7, **MIX)),
    ("two couplings DM-type", BlochState("P14", c3=0.7, **MIX)),
]

fig, axes = plt.subplots(1, 3, figsize=(15, 5), sharex=True, sharey=True)
for ax, (title, fixed) in zip(axes, configs):
    grid = scan_grid(ScanConfig(fixed.family, fixed, "c1", "c2",
                                (-1.0, 1.0, 201), (-1.0, 1.0, 201)))
    v1, v2 = grid.config.axis_values()
    shade = np.where(grid.in_domain, np.nan_to_num(grid.concurrence), np.nan)
    separable = grid.in_domain & (grid.ppt_min_eig >= -1e-12)
    img = np.ma.masked_invalid(shade)
    pc = ax.pcolormesh(v1, v2, img, cmap="Blues", vmin=0, vmax=0.6, shading="nearest")
    ax.contourf(v1, v2, separable.astype(float), levels=[0.5, 1.5],
                colors=["khaki"], alpha=0.9)
    ax.plot([-0.9, 1.0], [1.0, -0.9], "k--", lw=1)
    ax.set_title(f"{title} ({fixed.family})")
    ax.set_xlabel("c1")
    ax.set_aspect("equal")
    n_cells = int(grid.in_domain.sum())
    n_sep = int(separable.sum())
    print(f"{title:<28} valid cells {n_cells:>6}   separable {n_sep:>6}")
axes[0].set_ylabel("c2")
fig.colorbar(pc, ax=axes, label="concurrence", fraction=0.02)
fig.savefig(OUT / "phase_diagrams.png", dpi=150)
print(f"\nwrote {OUT / 'phase_diagrams.png'}")
