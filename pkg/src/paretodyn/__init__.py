"""Inertial multiobjective gradient dynamics with vanishing damping.

Simulates the flow ``(alpha / t) x' + proj_{C(x) + x''}(0) = 0`` over the
convex hull ``C(x)`` of the objective gradients, evaluates the merit of the
iterates against analytic Pareto-front oracles, and certifies the provable
decay inequalities along the computed trajectories.
"""

from .dynamics import (
    DivergenceError,
    IntegratorConfig,
    SchemeVariant,
    State,
    TrajectoryRecord,
    integrate,
    step_descent,
    step_inertial,
    step_scalar,
)
from .harness import (
    ConfigError,
    ExperimentConfig,
    RunSummary,
    SchemaError,
    UnsupportedPlotError,
    benchmark_study_configs,
    compare_schemes,
    emit_plot,
    parse_config,
    run,
    verify,
)
from .hullgeom import (
    ConvergenceError,
    GradientBundle,
    Selection,
    SimplexWeights,
    linear_min_face,
    min_norm_in_hull,
    project_shifted,
    select_direction,
)
from .merit import (
    AssumptionViolatedError,
    BoundCertificate,
    ConfigurationError,
    EnergyReport,
    FrontOracle,
    UnsupportedProblemError,
    certify_bound,
    compute_front_radius,
    energy_report,
    eval_merit,
    eval_merit_grid,
)
from .problems import (
    Custom,
    DomainError,
    EvaluationOverflowError,
    LogSumExp,
    MOProblem,
    ParetoCurve,
    Quadratic,
    builtin_logsumexp,
    builtin_quadratic,
    eval_bundle,
    eval_gradient,
    eval_objective,
    pareto_point,
    single_objective,
)

__version__ = "0.1.0"
