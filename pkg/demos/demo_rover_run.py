"""A 40-hour run of the growth-powered rolling robot.

Simulates the default four-sprout wheel in the dark environment, plots
horizontal displacement and rotation angle against the closed-form
prediction, and marks the sprout handovers.

Run: python demos/demo_rover_run.py
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from phytobot import (
    default_rover_config,
    predict_displacement,
    simulate_rover,
    summarize_trajectory,
)
from phytobot.rover import write_trajectory_csv

config = default_rover_config()
states = simulate_rover(config, t_end=40.0, dt=0.1)
summary = summarize_trajectory(states)

print("default rover: 25 mm wheel, 5 g, four sprouts at 45 degrees, dark growth")
print(f"  rolling-resistance gate: {config.resistance_force_mn():.4f} mN")
print(f"  germination offsets (h): {[round(o, 2) for o in config.germination_offsets]}")
print(f"  after 40 h: d = {summary['final_d_mm']:.2f} mm, "
      f"{summary['phases_completed']} completed phases, status {summary['status']}")

t = np.array([s.t for s in states])
d = np.array([s.d for s in states])
theta = np.array([s.theta_total for s in states])
predicted = np.array([predict_displacement(config, float(x)) for x in t])
handovers = [b.t for a, b in zip(states, states[1:]) if b.active_index != a.active_index]

fig, ax = plt.subplots(figsize=(7, 4.5))
ax.plot(t, d, label="simulated d(t)", color="tab:blue")
ax.plot(t, predicted, "--", label="closed-form prediction", color="tab:orange")
for h in handovers:
    ax.axvline(h, color="gray", alpha=0.4, linewidth=0.8)
ax.set_xlabel("time (h)")
ax.set_ylabel("horizontal displacement (mm)")
ax.legend()
ax2 = ax.twinx()
ax2.plot(t, np.degrees(theta), color="tab:blue", alpha=0.25)
ax2.set_ylabel("rotation angle (deg)")
fig.tight_layout()
fig.savefig("demo_rover_run.png", dpi=150)
write_trajectory_csv("demo_rover_trajectory.csv", states)
print("\nwrote demo_rover_run.png and demo_rover_trajectory.csv")
