"""Deterministic central force optimization with a benchmark harness."""

from .benchmarks import (
    ObjectiveSpec,
    evaluate,
    evaluate_batch,
    get_objective,
    known_optimum,
    make_noise,
    make_suite,
)
from .core import (
    DecisionSpace,
    RunConfig,
    RunResult,
    RunTrace,
    advance_frep,
    compute_accelerations,
    init_probes_alt,
    init_probes_uniform_on_axis,
    retrieve_errant_probes,
    run_single,
    shrink_decision_space,
    step_positions,
)
from .diagnostics import (
    StepMetrics,
    davg_at_step,
    davg_oscillating,
    davg_saturated,
    fitness_saturated,
    step_metrics,
)
from .errors import (
    EvaluationOverflowError,
    InvalidArgumentError,
    InvalidConfigError,
    InvalidStateError,
)
from .harness import ProtocolConfig, ProtocolReport, default_protocol, run_protocol
from .report_io import (
    parse_run_table,
    parse_summary,
    read_series,
    write_plot_series,
    write_run_table,
    write_summary,
)

__version__ = "0.1.0"
