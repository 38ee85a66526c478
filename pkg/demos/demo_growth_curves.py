"""Growth curves of the two cultivation environments.

Plots length and growth rate over time for the dark (etiolated) and light
(photomorphogenic) parameter sets, marking the peak-rate point of each, and
prints the anchor values the defaults were derived from.

Run: python demos/demo_growth_curves.py
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from phytobot import DARK_GROWTH, LIGHT_GROWTH, length_at, peak_rate, rate_at

t = np.linspace(0.0, 80.0, 801)

fig, (ax_len, ax_rate) = plt.subplots(1, 2, figsize=(10, 4))
for params, label, color in ((DARK_GROWTH, "dark", "tab:purple"), (LIGHT_GROWTH, "light", "tab:green")):
    ax_len.plot(t, length_at(params, t), color=color, label=label)
    ax_rate.plot(t, rate_at(params, t), color=color, label=label)
    peak = peak_rate(params)
    ax_rate.plot(peak.time_at_peak, peak.rate, "o", color=color)
    print(
        f"{label:5s}  r={params.r:.4f}/h  K={params.K:.1f} mm  L0={params.L0:.4f} mm  "
        f"peak {peak.rate:.3f} mm/h at {peak.length_at_peak:.1f} mm (t={peak.time_at_peak:.1f} h)"
    )

print(f"\ndark length at 40 h: {length_at(DARK_GROWTH, 40.0):.1f} mm (anchor 46.4)")
print(f"dark length at 55 h: {length_at(DARK_GROWTH, 55.0):.1f} mm (anchor ~76)")
print(f"light length at 40 h: {length_at(LIGHT_GROWTH, 40.0):.1f} mm (anchor 16.3)")

ax_len.set_xlabel("time (h)")
ax_len.set_ylabel("length (mm)")
ax_len.legend()
ax_rate.set_xlabel("time (h)")
ax_rate.set_ylabel("growth rate (mm/h)")
ax_rate.legend()
fig.tight_layout()
fig.savefig("demo_growth_curves.png", dpi=150)
print("\nwrote demo_growth_curves.png")
