"""Export gnuplot-ready series for a Shekel run and sketch D_avg in the terminal.

Run with ``python3 demos/plot_series.py [out_dir]``.
"""

import sys
from pathlib import Path

from cfopr import RunConfig, get_objective, read_series, run_single, step_metrics, write_plot_series

out = Path(sys.argv[1] if len(sys.argv) > 1 else "f21_plots")
spec = get_objective("f21")
result, trace = run_single(spec, RunConfig(gamma=0.8, probes_per_axis=12))
paths = write_plot_series(trace, step_metrics(trace), out)
print(f"f21 best {result.best_fitness:.6f} after {result.last_step} steps; wrote {len(paths)} files to {out}/")

davg = read_series(out / "Davg")
top = davg[:, 1].max()
for step, v in davg[:: max(1, len(davg) // 30)]:
    print(f"{int(step):4d} {v:8.5f} " + "#" * int(50 * v / top))
print(f"\ntry: gnuplot -p -e \"plot '{out}/Davg' with lines, '{out}/Fitness' axes x1y2 with lines\"")
