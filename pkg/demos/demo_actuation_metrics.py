"""Force-stroke profiles and the power/energy density bookkeeping.

Shows the two default force profiles, how the 10 mm knots were back-derived
from the published energy densities, and why the published power densities
cannot be reproduced from their own stated formula.

Run: python demos/demo_actuation_metrics.py
"""

import numpy as np

from phytobot import (
    DARK_FORCE_PROFILE,
    LIGHT_FORCE_PROFILE,
    end_force_from_energy,
    energy_density,
    force_at,
    format_notes,
    power_density,
)

print("force-stroke profiles (mN at mm of displacement):")
for label, profile in (("dark", DARK_FORCE_PROFILE), ("light", LIGHT_FORCE_PROFILE)):
    xs = np.array([0.0, 2.5, 5.0, 7.5, 10.0, 15.0])
    forces = force_at(profile, xs)
    row = "  ".join(f"{x:.1f}mm:{f:.2f}" for x, f in zip(xs, forces))
    print(f"  {label:5s} {row}")

print("\n10 mm knots back-derived from the published energy densities:")
print(f"  dark : F_end = {end_force_from_energy(16.6, 60.5, 10.0):.2f} mN")
print(f"  light: F_end = {end_force_from_energy(26.3, 97.5, 10.0):.2f} mN")

print("\nenergy densities (mean force x stroke / seed mass):")
print(f"  dark : {energy_density(60.5, 49.06, 10.0):.1f} J/kg (published 16.6)")
print(f"  light: {energy_density(97.5, 76.08, 10.0):.1f} J/kg (published 26.3)")

print("\npower densities from the stated formula (force x velocity / seed mass):")
print(f"  dark : {power_density(60.5, 4.68) * 1e3:.3f} mW/kg (published 0.181)")
print(f"  light: {power_density(97.5, 2.60) * 1e3:.3f} mW/kg (published 0.102)")

print("\naudit notes:\n")
print(format_notes(["power-density", "seed-velocity-provenance"]))
