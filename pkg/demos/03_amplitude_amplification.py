"""
One amplitude-amplification iteration
=====================================

Marks |3> in a four-qubit register and follows the diffusion transform.
"""

import numpy as np

from qdataflow import (
    CountingPolicy,
    build_aa_iteration,
    build_diagram,
    compute_report,
    grover_optimal_iterations,
    reflection_grover_state,
)

circuit = build_aa_iteration(4, marked={3})
state = circuit.final_state()
print("amplitude of |3>:", np.round(state[3].real, 12), "(11/16 =", 11 / 16, ")")

# Same result from the textbook reflection operators, up to a global sign.
print("matches (2|s><s| - I) O:", np.allclose(np.abs(state), np.abs(reflection_grover_state(4, {3}))))

report = compute_report(build_diagram(circuit))
print(f"T_W = {report.t_work}, T_inf = {report.t_span}, P = {report.parallelism:.1f}, "
      f"eta_P = {report.eta_p:.2f}")

# The spawning H gates are simulated but not counted by default; they can be drawn too.
alt = build_diagram(circuit, CountingPolicy(include_prep=True))
print("with prep layers, live_in per layer:", [len(l.live_in) for l in alt.layers])

for n in (2, 4, 6, 8):
    print(f"{n} qubits: best iteration count {grover_optimal_iterations(n)}")
