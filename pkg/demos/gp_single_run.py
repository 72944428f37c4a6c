"""Walk through one CFO run on the Goldstein-Price function.

Run with ``python3 demos/gp_single_run.py``.
"""

from cfopr import RunConfig, get_objective, run_single, step_metrics

spec = get_objective("gp")
print(f"objective {spec.name}: {spec.dimension}-D, bounds {spec.bounds}, known max {spec.known_max}")

# 12 probes on each of the two axes, placed at fraction gamma = 0.9 along each axis
cfg = RunConfig(gamma=0.9, probes_per_axis=12)
result, trace = run_single(spec, cfg)

print(f"{result.n_probes} probes, stopped after step {result.last_step} with {result.n_eval} evaluations")
print(f"best fitness {result.best_fitness:.8f} at {result.best_position} (probe {result.best_probe}, step {result.best_step})")

# D_avg is the mean probe distance to the best probe, scaled by the box diagonal.
# It falls while the probes contract, then jumps when the space shrinks or probes are thrown out.
print("\nstep         best so far      D_avg")
for m in step_metrics(trace):
    if m.step <= 15 or m.step % 10 == 0:
        print(f"{m.step:4d}  {m.best_fitness_so_far:18.6f}  {m.davg:9.5f}")

print("\nshrink history (step, lower, upper):")
for step, lo, hi in trace.bounds_history:
    print(f"  {step:3d}  {lo.round(4)}  {hi.round(4)}")
