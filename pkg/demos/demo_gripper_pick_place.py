"""Pick-and-place with the phototropic gripper.

Runs the default two-finger scene on the demonstration light schedule
(inner LEDs 0-11 h to close, outer LEDs 11-21 h to open), prints the
grasp/release events, and draws the fingertip paths around the object.

Run: python demos/demo_gripper_pick_place.py
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from phytobot import bend_angle, default_gripper_config, default_led_schedule, simulate_gripper

config = default_gripper_config()
schedule = default_led_schedule()
trajectory, events = simulate_gripper(config, schedule, t_end=21.0, dt=0.1)

print("schedule:")
for interval in schedule.intervals:
    print(f"  {interval.t_start:>4.1f} - {interval.t_end:>4.1f} h  {interval.target} light")
print("\nevents:")
for e in events:
    print(f"  t = {e.t:5.1f} h  {e.kind}")
for i, finger in enumerate(trajectory.fingers):
    print(f"finger {i}: final bend {np.degrees(bend_angle(finger)):.1f} deg, "
          f"total length {finger.total_length:.1f} mm")

fig, ax = plt.subplots(figsize=(5.5, 5.5))
theta = np.linspace(0, 2 * np.pi, 200)
cx, cy = config.object_center
ax.plot(cx + config.object_radius * np.cos(theta), cy + config.object_radius * np.sin(theta),
        color="tab:orange", label="object")
inner = trajectory.t < 11.0
for i in range(len(config.fingers)):
    ax.plot(trajectory.tip_x[i][inner], trajectory.tip_y[i][inner], color="tab:green",
            label="closing (inner light)" if i == 0 else None)
    ax.plot(trajectory.tip_x[i][~inner], trajectory.tip_y[i][~inner], color="tab:red",
            label="opening (outer light)" if i == 0 else None)
    ax.plot(*config.fingers[i].base, "k^")
for e in events:
    k = int(round(e.t / 0.1))
    ax.plot(trajectory.tip_x[:, k], trajectory.tip_y[:, k], "k.", markersize=8)
ax.set_aspect("equal")
ax.set_xlabel("x (mm)")
ax.set_ylabel("y (mm)")
ax.legend(loc="lower right", fontsize=8)
fig.tight_layout()
fig.savefig("demo_gripper_pick_place.png", dpi=150)
print("\nwrote demo_gripper_pick_place.png")
