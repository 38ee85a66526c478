"""Known inconsistencies in the published characterization data.

The toolkit reproduces every number that follows from the published
formulas and records the ones that do not, rather than silently matching
them.  Each entry names the published value, the value the stated
calculation actually yields, and what the code does about it.
"""

from __future__ import annotations

__all__ = ["DISCREPANCIES", "format_notes"]

DISCREPANCIES: dict[str, str] = {
    "power-density": (
        "The published power densities (181e-6 W/kg dark, 102e-6 W/kg light) do not "
        "follow from the stated calculation. Force x velocity / seed mass with "
        "60.5 mN at 4.68 mm/h (dark) and 97.5 mN at 2.60 mm/h (light) over 0.033 g "
        "gives 2.383e-3 and 2.134e-3 W/kg. power_density implements the stated "
        "formula and reports its result instead of the published figures."
    ),
    "seed-velocity-provenance": (
        "The 'velocity at the initial stem length' inputs to the power density "
        "(4.68 mm/h dark, 2.60 mm/h light) exceed the logistic maximum r*K/4 for "
        "the same published growth parameters (2.079 and 0.814 mm/h), so they "
        "cannot be recomputed from the growth model. They are accepted only as "
        "user-supplied inputs, never derived."
    ),
    "rolling-resistance": (
        "With mu_R = 0.01 and the 5 g robot (N = 0.04905 N), mu_R * N = 0.4905 mN, "
        "not the published 'approximately 5 mN' (a factor-10 gap). The simulator "
        "gates motion on the computed 0.4905 mN, and this note records the "
        "published value as an open inconsistency."
    ),
    "light-peak-rate": (
        "The published light-environment maximum speed (0.91 mm/h at a length of "
        "36.4 mm) is inconsistent with the logistic closed form for the published "
        "parameters r = 0.05/h, K = 65.1 mm: r*K/4 = 0.814 mm/h at K/2 = 32.55 mm. "
        "peak_rate implements the closed form; the dark environment (2.09 mm/h at "
        "52.8 mm vs 2.079 at 52.5) agrees within 2%."
    ),
}


def format_notes(keys: list[str] | None = None) -> str:
    """Render the selected discrepancy notes (all of them by default)."""
    selected = keys if keys is not None else sorted(DISCREPANCIES)
    unknown = [k for k in selected if k not in DISCREPANCIES]
    if unknown:
        raise KeyError(f"unknown discrepancy keys: {unknown}")
    lines = []
    for key in selected:
        lines.append(f"[{key}]")
        lines.append(DISCREPANCIES[key])
        lines.append("")
    return "\n".join(lines).rstrip() + "\n"
