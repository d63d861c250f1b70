"""Small decoherence sweep: W3 fidelity and entanglement of formation
versus T2 for both topologies.

Dephasing is quasistatic (a random constant frequency shift per
realization, sigma = sqrt(2)/T2) and relaxation is applied after the
coherent dynamics from each qubit's integrated excited-state population.
A full-size sweep runs through the `fqst simulate` subcommand; this demo
uses a reduced ensemble so it finishes in about a minute.
"""

import math
import tempfile

from fqst.config import RunConfig
from fqst.runner import run_sweep

out = tempfile.NamedTemporaryFile(suffix=".csv", delete=False)
config = RunConfig(
    topologies=("linear", "star"),
    kappas=(2.0 * math.pi * 50e6,),
    t1_s=(10e-6, 40e-6),
    t2_s=(5e-6, 20e-6),
    realizations=20,
    e3f_restarts=1,
    seed=0,
    output=out.name,
)

print(f"sweeping {len(config.topologies) * len(config.t2_s)} grid points, "
      f"{config.realizations} noise realizations each...")
rows = run_sweep(config)

print(f"\n{'topology':<8} {'T2 [us]':>8} {'fidelity':>10} {'e3f':>8}")
for row in rows:
    print(f"{row['topology']:<8} {row['T2_s'] * 1e6:8.1f} "
          f"{row['fidelity']:10.5f} {row['e3f']:8.5f}")

print(f"\nfull CSV written to {out.name}")
print("The star protocol degrades more slowly: it finishes in 14/kappa of"
      "\ncontrol time instead of 35/kappa, so each qubit dephases for less"
      "\ntime and the early-excited chain qubits stop dominating the error.")
