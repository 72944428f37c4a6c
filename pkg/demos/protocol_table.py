"""Sweep the gamma x probes-per-axis grid for one objective and print the run table.

Run with ``python3 demos/protocol_table.py [objective]`` (default ``f16``).
"""

import sys

from cfopr import default_protocol, run_protocol, write_run_table

name = sys.argv[1] if len(sys.argv) > 1 else "f16"
pcfg = default_protocol(name)
print(f"{name}: gammas {pcfg.gammas()}, probes per axis {pcfg.ppas()}")

report = run_protocol(pcfg, progress=lambda i, r: print(f"  run {i + 1:3d}  fitness {r.best_fitness:.8f}", file=sys.stderr))
write_run_table(report, sys.stdout, timestamp="01-01-2026, 00:00:00")

best = report.best_run
print(f"\nbest run #{report.best_run_number}: gamma {best.gamma}, {best.probes_per_axis} per axis, fitness {best.best_fitness:.8f}")
print(f"total evaluations over the sweep: {report.total_evaluations}")
