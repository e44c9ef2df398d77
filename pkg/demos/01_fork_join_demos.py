"""
Fork, join and the ROOT-of-NOT
==============================

Two single-qubit circuits show where quantum parallelism starts and stops.
"""

import numpy as np

from qdataflow import build_demo, build_diagram, compute_report, probabilities
from qdataflow.sim import simulate

# Two ROOT-of-NOT gates make a deterministic NOT.  Halfway through, both
# outcomes are equally likely: the qubit is running two threads at once.
rn = build_demo("root_of_not")
halfway = simulate(rn.ops[:2], 1)
print("ROOT-of-NOT, after one gate :", np.round(probabilities(halfway), 12))
print("ROOT-of-NOT, after two gates:", np.round(probabilities(rn.final_state()), 12))

# H forks |0> into two threads, and the second H joins them again through
# destructive interference on |1>.
hf = build_demo("h_forkjoin")
diagram = build_diagram(hf)
for layer in diagram.layers:
    print(f"layer {layer.index}  {layer.label:8s} live_in={list(layer.live_in)}")
print("final live states:", diagram.final_live)

report = compute_report(diagram)
print(f"T_W={report.t_work}  T_inf={report.t_span}  P={report.parallelism:.3f}")
