"""Synthesize each photon-shape family and check the basic invariants.

A transfer with parameter n emits a photon carrying probability 1/n.  The
emission coupling g(t) depends on the requested envelope; all families
reduce to the standard half-kappa sech pulse at n = 1.
"""

import math

import numpy as np

from fqst.pulses import (
    GAUSSIAN_N_MIN,
    PhotonShape,
    ShapeKind,
    coupling_fn,
    sech_coupling,
    sech_decay_rate_max,
)

kappa = 2.0 * math.pi * 50e6

print("= sech family =")
for n in (1.0, 1.5, 2.0, 10.0):
    g0 = float(sech_coupling(np.array([0.0]), n, kappa)[0])
    print(f"  n={n:<4} g(0) = {g0 / kappa:.4f} kappa "
          f"(expected {0.5 / math.sqrt(4.0 * n - 3.0):.4f})")

print(f"\nlargest direct decay rate for a half transfer (n = 2): "
      f"{sech_decay_rate_max(2.0, kappa) / kappa:.6f} kappa "
      f"(closed form 3 - 2*sqrt(2) = {3 - 2 * math.sqrt(2):.6f})")

print(f"\nGaussian photons need n >= {GAUSSIAN_N_MIN:.6f}; "
      "below that the required coupling would turn imaginary.")

print("\n= peak couplings at n = 2 =")
shapes = [
    PhotonShape(ShapeKind.SECH, kappa, 2.0),
    PhotonShape(ShapeKind.LORENTZIAN, kappa, 2.0),
    PhotonShape(ShapeKind.GAUSSIAN, kappa, 2.0),
    PhotonShape(ShapeKind.SECH_REDUCED, kappa, 2.0, eta=2.0),
]
for shape in shapes:
    window = shape.window(1e-6)
    t = np.linspace(window[0], window[1], 20001)
    g = coupling_fn(shape)(t)
    print(f"  {shape.kind.value:<14} max g = {np.max(np.abs(g)) / kappa:.4f} kappa, "
          f"window = {(window[1] - window[0]) * kappa:.1f}/kappa")

print("\nThe reduced-bandwidth (eta = 2) pulse trades a longer window for a"
      "\nnarrower photon spectrum; the Lorentzian needs a far longer window"
      "\nbecause its tails decay polynomially.")
