"""Distribute a W state from a central emitter to three receivers at once.

All three emitter couplers run simultaneously with fractions (3, 3, 3);
each spoke carries exactly one third of the excitation and the receivers
absorb with the standard time-reversed pulse.  The protocol takes 14/kappa
of control time versus 35/kappa for the sequential chain.
"""

import math

from fqst.dynamics import integrate_full
from fqst.metrics import fidelity_phase_optimized
from fqst.network import WaveguideSpec, build_star
from fqst.noise import NoiseSpec, ensemble_density_matrix
from fqst.planner import assemble_schedule, star_w_fractions

kappa = 2.0 * math.pi * 50e6
omega = 2.0 * math.pi * 8.407e9

wg = WaveguideSpec(length=5.0, mode_count=100, center_frequency=omega,
                   decay_rate=kappa)
spec = build_star(3, wg)
plan = star_w_fractions(3)
print("spoke fractions:", [str(f) for f in plan.fractions])
print("emitter is left empty; each receiver gets 1/3")

schedule = assemble_schedule(plan, spec)
result = integrate_full(spec, schedule)
final = result.final_state()

emitter, *leaves = spec.qubit_labels
print(f"\nresidual emitter population: {final.population(emitter):.2e}")
for q in leaves:
    print(f"  {q}: {final.population(q):.5f}")

rho = ensemble_density_matrix(
    result.states[-1][1:len(spec.qubit_labels)], result.dwell[-1][1:],
    NoiseSpec(realizations=1), leaves)
fidelity, _phi2, _phi3 = fidelity_phase_optimized(rho)
print(f"\nphase-optimized W3 fidelity on the receivers: {fidelity:.5f}")

plan_e = star_w_fractions(3, include_emitter=True)
print(f"\nwith include_emitter=True the fractions become "
      f"{[str(f) for f in plan_e.fractions]} and the emitter keeps 1/4,"
      f"\nproducing a four-qubit W state instead.")
