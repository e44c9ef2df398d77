"""
Parallel efficiency vs register size, and the classical speedup laws
====================================================================
"""

from qdataflow import SpeedupQuery, amdahl_speedup, gustafson_speedup, run_sweep, sweep_to_csv

rows = run_sweep("qft_freq2", 3, 12)
print(sweep_to_csv(rows))

# As N grows, more of the 2^N available threads are removed by interference.
for r in rows:
    bar = "#" * round(40 * r.eta_p)
    print(f"N={r.num_qubits:2d} eta_P={r.eta_p:.4f} {bar}")

# Half the program serial: Amdahl caps the speedup at 2 regardless of P.
for p in (2, 16, 1024, 1e12):
    q = SpeedupQuery(serial_fraction=0.5, parallelism=p)
    print(f"P={p:>8g}  Amdahl={amdahl_speedup(q):.6f}  Gustafson={gustafson_speedup(q):.1f}")
