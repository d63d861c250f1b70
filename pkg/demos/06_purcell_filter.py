"""Emission through a Purcell filter: feasibility bound and resonator load.

With a filter cavity of coupling g_p between the transfer resonator and
the line, a full (n = 1) emission is only possible for kappa <= 2 g_p.
The filter resonator's transient population peaks at 27 kappa^2 /
(256 g_p^2 n^2), so faster pulses load the filter harder.
"""

import math

import numpy as np

from fqst.errors import InfeasiblePulseError
from fqst.pulses import (
    purcell_coupling,
    purcell_max_bandwidth,
    purcell_peak_resonator_population,
    purcell_resonator_amplitude,
)

g_p = 2.0 * math.pi * 40e6

for n in (1.0, 2.0):
    bound = purcell_max_bandwidth(n, g_p)
    print(f"n={n}: kappa must stay below {bound / g_p:.4f} g_p")

print("\ntrying kappa = 2.1 g_p at n = 1:")
try:
    purcell_coupling(0.0, 1.0, 2.1 * g_p, g_p)
except InfeasiblePulseError as exc:
    print(f"  rejected: {exc}")

kappa = 1.5 * g_p
t = np.linspace(-30.0 / kappa, 10.0 / kappa, 100001)
for n in (1.0, 2.0):
    r2 = purcell_resonator_amplitude(t, n, kappa, g_p) ** 2
    closed = purcell_peak_resonator_population(n, kappa, g_p)
    print(f"\nn={n}, kappa=1.5 g_p: peak filter population "
          f"{np.max(r2):.6f} (closed form {closed:.6f}) "
          f"at t = {t[np.argmax(r2)] * kappa:.2f}/kappa")

print("\nHalving the emitted fraction (n = 2) halves the filter's peak"
      "\nload in amplitude squared, since only 1/n of the excitation"
      "\ntransits the filter.")
