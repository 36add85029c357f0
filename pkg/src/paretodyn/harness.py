"""Experiment orchestration: configs, runs, serialization, plots.

A run integrates one problem for each requested damping level, evaluates
every certificate, and serializes the results as plain CSV plus a JSON
summary.  File schemas are bit-exact: floats are written with 17 significant
digits so parsing reproduces them exactly.

Trajectory CSV: header ``k,t,x0..x{d-1},v0..v{d-1},theta0..theta{m-1},
g0..g{d-1}``; row k holds the state at node k and the selection applied at
node k (the final row's selection cells are empty).  Certificate CSV:
header ``k,t,u0,bound,slack,pass`` at the certificate sampling stride.

The output directory can be overridden with the ``PARETODYN_OUT``
environment variable.
"""

from __future__ import annotations

import json
import os
import re
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .dynamics import IntegratorConfig, SchemeVariant, TrajectoryRecord, integrate
from .merit import BoundCertificate, FrontOracle, certify_bound, energy_report, eval_merit
from .problems import (
    LogSumExp,
    MOProblem,
    Quadratic,
    builtin_logsumexp,
    builtin_quadratic,
)

__all__ = [
    "ConfigError",
    "SchemaError",
    "UnsupportedPlotError",
    "ExperimentConfig",
    "RunSummary",
    "parse_config",
    "run",
    "verify",
    "emit_plot",
    "compare_schemes",
    "benchmark_study_configs",
    "serialize_trajectory",
    "parse_trajectory",
    "serialize_certificate",
    "parse_certificate",
    "OUT_DIR_ENV",
]

OUT_DIR_ENV = "PARETODYN_OUT"
LEVEL_SET_TOL = 1e-6
# Last-decade fraction of the weighted speed sums; pilot runs of the built-in
# study measured up to 1.064e-2 (logsumexp, alpha=100), so the recorded
# acceptance threshold is 2e-2.
TAIL_THRESHOLD = 0.02
CERT_HEADER = ["k", "t", "u0", "bound", "slack", "pass"]


class ConfigError(ValueError):
    """Malformed experiment configuration (unknown key, bad value)."""


class SchemaError(ValueError):
    """Serialized file does not match its documented schema."""


class UnsupportedPlotError(ValueError):
    """Requested plot cannot be produced from the given data."""


@dataclass(eq=False)
class ExperimentConfig:
    problem: MOProblem
    problem_kind: str
    x0: np.ndarray
    alphas: tuple[float, ...]
    t0: float = 1.0
    h: float = 1e-3
    steps: int = 100_000
    scheme: SchemeVariant = SchemeVariant.SEMI_IMPLICIT_DAMPING
    cert_every: int = 100
    v_tol: float = 1e-9
    tie_tol: float = 1e-9
    qp_tol: float = 1e-10
    level_tol: float = LEVEL_SET_TOL
    eps_cert: float = 1e-8
    energy_slack: float | None = None
    lyapunov_slack: float | None = None
    merit_grid: int = 2048
    merit_refine_tol: float = 1e-10
    out_dir: Path = field(default_factory=lambda: Path("runs"))
    emit_plots: bool = False

    def __post_init__(self):
        self.x0 = np.asarray(self.x0, dtype=float)
        self.out_dir = Path(self.out_dir)
        if not self.alphas:
            raise ConfigError("alphas must be nonempty")
        if self.steps < 0 or self.cert_every < 1:
            raise ConfigError("steps must be >= 0 and cert_every >= 1")


@dataclass(eq=False)
class RunSummary:
    problem_kind: str
    alpha: float
    final_merit: float | None
    bound_status: str  # "pass" | "fail" | "not-applicable"
    worst_bound_slack: float | None
    bound_failing_steps: tuple[int, ...]
    level_set_ok: bool
    level_set_first_violation: int | None
    energy_decay_ok: bool
    energy_decay_violations: int
    tail_fraction: float | None
    tail_ok: bool | None
    face_warning_count: int
    wall_time: float
    paths: dict

    @property
    def certificates_ok(self) -> bool:
        checks = [self.bound_status != "fail", self.level_set_ok, self.energy_decay_ok]
        if self.tail_ok is not None:
            checks.append(self.tail_ok)
        return all(checks)

    def to_dict(self) -> dict:
        return {
            "problem": self.problem_kind,
            "alpha": self.alpha,
            "final_merit": self.final_merit,
            "bound": {
                "status": self.bound_status,
                "worst_slack": self.worst_bound_slack,
                "failing_steps": list(self.bound_failing_steps),
            },
            "level_set": {
                "ok": self.level_set_ok,
                "first_violation": self.level_set_first_violation,
            },
            "energy_decay": {
                "ok": self.energy_decay_ok,
                "violations": self.energy_decay_violations,
            },
            "integrability_tail": {"fraction": self.tail_fraction, "ok": self.tail_ok},
            "face_warnings": self.face_warning_count,
            "wall_time_s": self.wall_time,
            "paths": {k: str(v) for k, v in self.paths.items()},
        }


# ---------------------------------------------------------------------------
# Config files: flat "key = value" text, unknown keys rejected.

_SCALAR_KEYS = {
    "kind": str,
    "scheme": str,
    "out_dir": str,
    "t0": float,
    "h": float,
    "v_tol": float,
    "tie_tol": float,
    "qp_tol": float,
    "level_tol": float,
    "eps_cert": float,
    "energy_slack": float,
    "lyapunov_slack": float,
    "merit_refine_tol": float,
    "steps": int,
    "cert_every": int,
    "merit_grid": int,
    "emit_plots": bool,
}
_VECTOR_KEYS = {"x0", "alphas"}
_CUSTOM_KEY_RE = re.compile(r"^(q|anchor|a|b)([0-9]+)$")


def _parse_bool(text: str) -> bool:
    lowered = text.strip().lower()
    if lowered in {"true", "1", "yes"}:
        return True
    if lowered in {"false", "0", "no"}:
        return False
    raise ConfigError(f"expected a boolean, got {text!r}")


def _parse_vector(text: str) -> np.ndarray:
    try:
        return np.array([float(v) for v in text.replace(",", " ").split()])
    except ValueError as exc:
        raise ConfigError(f"bad numeric list {text!r}") from exc


def _parse_matrix(text: str) -> np.ndarray:
    rows = [r for r in text.split(";") if r.strip()]
    if not rows:
        raise ConfigError("empty matrix literal")
    mat = [_parse_vector(r) for r in rows]
    width = mat[0].size
    if any(row.size != width for row in mat):
        raise ConfigError("ragged matrix literal")
    return np.stack(mat)


def _read_pairs(path: Path) -> dict[str, str]:
    pairs: dict[str, str] = {}
    for lineno, raw in enumerate(path.read_text().splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        key, value = line.split("=", 1)
        key = key.strip().lower()
        if key in pairs:
            raise ConfigError(f"{path}:{lineno}: duplicate key {key!r}")
        pairs[key] = value.strip()
    return pairs


def _build_custom_problem(kind: str, pairs: dict[str, str], used: set[str]) -> MOProblem:
    if "dim" not in pairs:
        raise ConfigError("custom problems require 'dim'")
    used.add("dim")
    dim = int(pairs["dim"])
    numbered: dict[str, dict[int, str]] = {}
    for key, value in pairs.items():
        match = _CUSTOM_KEY_RE.match(key)
        if match:
            numbered.setdefault(match.group(1), {})[int(match.group(2))] = value
            used.add(key)

    def series(prefix: str) -> list[str]:
        entries = numbered.get(prefix, {})
        count = len(entries)
        if count == 0 or sorted(entries) != list(range(1, count + 1)):
            raise ConfigError(f"keys '{prefix}1'..'{prefix}N' must be contiguous from 1")
        return [entries[i] for i in range(1, count + 1)]

    if kind == "custom-quadratic":
        mats = [_parse_matrix(v) for v in series("q")]
        anchors = [_parse_vector(v) for v in series("anchor")]
        if len(mats) != len(anchors):
            raise ConfigError("need one anchorI per qI")
        objectives = tuple(Quadratic(Q, a) for Q, a in zip(mats, anchors))
    elif kind == "custom-logsumexp":
        mats = [_parse_matrix(v) for v in series("a")]
        offsets = [_parse_vector(v) for v in series("b")]
        if len(mats) != len(offsets):
            raise ConfigError("need one bI per aI")
        objectives = tuple(LogSumExp(A, b) for A, b in zip(mats, offsets))
    else:
        raise ConfigError(f"unknown problem kind {kind!r}")
    return MOProblem(objectives, dim=dim, front=None, name="custom")


def parse_config(path) -> ExperimentConfig:
    """Parse a flat key-value experiment file; unknown keys are errors."""
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")
    pairs = _read_pairs(path)
    used: set[str] = set()

    def take(key: str, default=None):
        if key in pairs:
            used.add(key)
            return pairs[key]
        return default

    kind = take("kind")
    if kind is None:
        raise ConfigError("missing required key 'kind'")
    kind = kind.lower()
    if kind == "quadratic":
        problem = builtin_quadratic()
    elif kind == "logsumexp":
        problem = builtin_logsumexp()
    elif kind.startswith("custom"):
        problem = _build_custom_problem(kind, pairs, used)
    else:
        raise ConfigError(f"unknown problem kind {kind!r}")

    x0_text = take("x0")
    alphas_text = take("alphas")
    if x0_text is None or alphas_text is None:
        raise ConfigError("missing required keys 'x0' and/or 'alphas'")
    x0 = _parse_vector(x0_text)
    if x0.size != problem.dim:
        raise ConfigError(f"x0 has dimension {x0.size}, problem needs {problem.dim}")
    alphas = tuple(float(a) for a in _parse_vector(alphas_text))

    kwargs = {}
    for key, caster in _SCALAR_KEYS.items():
        if key in {"kind"}:
            continue
        text = take(key)
        if text is None:
            continue
        if caster is bool:
            kwargs[key] = _parse_bool(text)
        elif key == "scheme":
            try:
                kwargs["scheme"] = SchemeVariant(text.lower())
            except ValueError as exc:
                raise ConfigError(f"unknown scheme {text!r}") from exc
        elif key == "out_dir":
            kwargs["out_dir"] = Path(text)
        else:
            try:
                kwargs[key] = caster(text)
            except ValueError as exc:
                raise ConfigError(f"bad value for {key!r}: {text!r}") from exc

    unknown = set(pairs) - used
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")

    try:
        return ExperimentConfig(
            problem=problem, problem_kind=kind, x0=x0, alphas=alphas, **kwargs
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


# ---------------------------------------------------------------------------
# CSV serialization (bit-exact: 17 significant digits).


def _fmt(value: float) -> str:
    return f"{value:.17g}"


def serialize_trajectory(record: TrajectoryRecord, path) -> Path:
    path = Path(path)
    d = record.positions.shape[1]
    m = record.weights.shape[1]
    header = (
        ["k", "t"]
        + [f"x{i}" for i in range(d)]
        + [f"v{i}" for i in range(d)]
        + [f"theta{i}" for i in range(m)]
        + [f"g{i}" for i in range(d)]
    )
    lines = [",".join(header)]
    n = record.times.shape[0]
    for k in range(n):
        cells = [str(k), _fmt(record.times[k])]
        cells += [_fmt(v) for v in record.positions[k]]
        cells += [_fmt(v) for v in record.velocities[k]]
        if k < n - 1:
            cells += [_fmt(v) for v in record.weights[k]]
            cells += [_fmt(v) for v in record.directions[k]]
        else:
            cells += [""] * (m + d)
        lines.append(",".join(cells))
    path.write_text("\n".join(lines) + "\n")
    return path


def _split_header(names: list[str], prefix: str) -> int:
    count = sum(1 for n in names if re.fullmatch(rf"{prefix}[0-9]+", n))
    expected = [f"{prefix}{i}" for i in range(count)]
    if count == 0 or [n for n in names if n.startswith(prefix)][: len(expected)] != expected:
        raise SchemaError(f"missing or misordered '{prefix}*' columns")
    return count


def parse_trajectory(path) -> TrajectoryRecord:
    """Rebuild a trajectory record from CSV (without the config echo)."""
    path = Path(path)
    text = path.read_text().strip()
    if not text:
        raise SchemaError(f"{path}: empty file")
    lines = text.splitlines()
    names = lines[0].split(",")
    if names[:2] != ["k", "t"]:
        raise SchemaError(f"{path}: header must start with 'k,t'")
    body = [n for n in names[2:]]
    d = _split_header(body, "x")
    if body != (
        [f"x{i}" for i in range(d)]
        + [f"v{i}" for i in range(d)]
        + [f"theta{i}" for i in range(len(body) - 3 * d)]
        + [f"g{i}" for i in range(d)]
    ):
        raise SchemaError(f"{path}: unexpected trajectory header {lines[0]!r}")
    m = len(body) - 3 * d
    if m < 1:
        raise SchemaError(f"{path}: no weight columns")

    rows = [line.split(",") for line in lines[1:]]
    if not rows:
        raise SchemaError(f"{path}: no data rows")
    width = 2 + 3 * d + m
    n = len(rows)
    times = np.empty(n)
    positions = np.empty((n, d))
    velocities = np.empty((n, d))
    weights = np.empty((n - 1, m))
    directions = np.empty((n - 1, d))
    try:
        for r, cells in enumerate(rows):
            if len(cells) != width:
                raise SchemaError(f"{path}: row {r + 1} has {len(cells)} cells, expected {width}")
            if int(cells[0]) != r:
                raise SchemaError(f"{path}: row {r + 1} has step index {cells[0]}")
            times[r] = float(cells[1])
            positions[r] = [float(c) for c in cells[2 : 2 + d]]
            velocities[r] = [float(c) for c in cells[2 + d : 2 + 2 * d]]
            tail = cells[2 + 2 * d :]
            if r < n - 1:
                weights[r] = [float(c) for c in tail[:m]]
                directions[r] = [float(c) for c in tail[m:]]
            elif any(c != "" for c in tail):
                raise SchemaError(f"{path}: final row must leave selection cells empty")
    except (ValueError, OverflowError) as exc:
        raise SchemaError(f"{path}: {exc}") from exc
    return TrajectoryRecord(times, positions, velocities, weights, directions, config=None)


def serialize_certificate(cert: BoundCertificate, path) -> Path:
    path = Path(path)
    lines = [",".join(CERT_HEADER)]
    for i in range(cert.ks.shape[0]):
        lines.append(
            ",".join(
                [
                    str(int(cert.ks[i])),
                    _fmt(cert.ts[i]),
                    _fmt(cert.merits[i]),
                    _fmt(cert.bounds[i]),
                    _fmt(cert.slacks[i]),
                    "1" if cert.passes[i] else "0",
                ]
            )
        )
    path.write_text("\n".join(lines) + "\n")
    return path


def parse_certificate(path) -> dict[str, np.ndarray]:
    path = Path(path)
    text = path.read_text().strip()
    if not text:
        raise SchemaError(f"{path}: empty file")
    lines = text.splitlines()
    if lines[0].split(",") != CERT_HEADER:
        raise SchemaError(f"{path}: expected header {','.join(CERT_HEADER)!r}")
    rows = [line.split(",") for line in lines[1:]]
    if not rows:
        raise SchemaError(f"{path}: no data rows")
    out = {name: np.empty(len(rows)) for name in CERT_HEADER}
    try:
        for r, cells in enumerate(rows):
            if len(cells) != len(CERT_HEADER):
                raise SchemaError(f"{path}: row {r + 1} has {len(cells)} cells")
            for name, cell in zip(CERT_HEADER, cells):
                out[name][r] = float(cell)
    except (ValueError, OverflowError) as exc:
        raise SchemaError(f"{path}: {exc}") from exc
    return out


def verify(cert_path, eps_coeff: float = 1e-8) -> int:
    """Recheck a serialized certificate without re-integrating.

    Recomputes the slack from the raw ``u0`` and ``bound`` columns and
    returns 0 when every row passes, 1 when any fails.  Schema mismatches
    raise :class:`SchemaError` (the CLI maps those to exit code 2).
    """
    data = parse_certificate(cert_path)
    slack = data["bound"] - data["u0"]
    passes = slack >= -eps_coeff * (1.0 + data["bound"])
    return 0 if bool(passes.all()) else 1


# ---------------------------------------------------------------------------
# Plot emission (static vector graphics, never interactive).


def _load_pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def _build_trajectory_figure(record: TrajectoryRecord, front=None):
    if record.positions.shape[1] != 2:
        raise UnsupportedPlotError("trajectory plots need a 2-D problem")
    if record.positions.shape[0] < 2:
        raise UnsupportedPlotError("trajectory is empty")
    plt = _load_pyplot()
    fig, ax = plt.subplots(figsize=(4.0, 4.0))
    xs = record.positions
    if front is not None:
        lam = np.linspace(0.0, 1.0, 512)
        curve = np.asarray(front.map(lam), dtype=float)
        ax.plot(curve[:, 0], curve[:, 1], color="0.6", lw=2.0, label="Pareto curve")
    ax.plot(xs[:, 0], xs[:, 1], color="C0", lw=0.8, label="trajectory")
    # Marker spacing visualizes the speed: one circle every 500 steps.
    ax.plot(xs[::500, 0], xs[::500, 1], "o", color="C0", ms=3.0, mfc="none")
    ax.set_xlabel("$x_1$")
    ax.set_ylabel("$x_2$")
    ax.legend(loc="best", fontsize=8)
    return fig, ax


def _build_bound_figure(data: dict):
    plt = _load_pyplot()
    fig, ax = plt.subplots(figsize=(4.0, 4.0))
    ax.loglog(data["t"], data["u0"], color="C0", label="merit")
    ax.loglog(data["t"], data["bound"], color="C1", ls="--", label="bound")
    ax.set_xlabel("t")
    ax.legend(loc="best", fontsize=8)
    return fig, ax


def emit_plot(csv_path, kind: str, out_path=None, front=None) -> Path:
    """Render one diagnostic panel from serialized run data to an SVG file.

    ``kind='trajectory-2d'`` reads a trajectory CSV (d = 2 only), overlays
    the Pareto curve when ``front`` is given, and marks every 500th step.
    ``kind='u0-vs-bound-loglog'`` reads a certificate CSV and draws exactly
    the two series on log-log axes.
    """
    csv_path = Path(csv_path)
    if out_path is None:
        out_path = csv_path.with_suffix(".svg")
    out_path = Path(out_path)

    if kind == "trajectory-2d":
        fig, _ = _build_trajectory_figure(parse_trajectory(csv_path), front)
    elif kind == "u0-vs-bound-loglog":
        fig, _ = _build_bound_figure(parse_certificate(csv_path))
    else:
        raise UnsupportedPlotError(f"unknown plot kind {kind!r}")

    fig.tight_layout()
    fig.savefig(out_path, format="svg")
    _load_pyplot().close(fig)
    return out_path


# ---------------------------------------------------------------------------
# Run orchestration.


def _resolve_out_dir(config: ExperimentConfig) -> Path:
    override = os.environ.get(OUT_DIR_ENV)
    out = Path(override) if override else config.out_dir
    out.mkdir(parents=True, exist_ok=True)
    return out


def _run_one(config: ExperimentConfig, alpha: float, out_dir: Path) -> RunSummary:
    start = time.perf_counter()
    cfg = IntegratorConfig(
        alpha=alpha,
        t0=config.t0,
        h=config.h,
        steps=config.steps,
        scheme=config.scheme,
        v_tol=config.v_tol,
        tie_tol=config.tie_tol,
        qp_tol=config.qp_tol,
    )
    problem = config.problem
    traj = integrate(problem, config.x0, cfg)

    stem = f"{config.problem_kind}-a{alpha:g}"
    paths: dict[str, Path] = {}
    paths["trajectory"] = serialize_trajectory(traj, out_dir / f"{stem}.csv")

    values0 = problem.values(config.x0)
    values_all = problem.values_batch(traj.positions)
    level_excess = values_all - values0[None, :]
    level_bad = np.nonzero((level_excess > config.level_tol).any(axis=1))[0]
    level_ok = level_bad.size == 0
    level_first = int(level_bad[0]) if not level_ok else None

    final_merit = None
    bound_status = "not-applicable"
    worst_slack = None
    failing: tuple[int, ...] = ()
    oracle = None
    if problem.front is not None:
        oracle = FrontOracle(
            problem.front, coarse_grid=config.merit_grid, refine_tol=config.merit_refine_tol
        )
        cert = certify_bound(
            traj, oracle, problem, every=config.cert_every, eps_coeff=config.eps_cert
        )
        final_merit = float(cert.merits[-1])
        bound_status = cert.status
        worst_slack = cert.worst_slack
        failing = cert.failing_steps if cert.applicable else ()
        if cert.applicable:
            paths["certificate"] = serialize_certificate(cert, out_dir / f"{stem}_cert.csv")

    # The anchored Lyapunov monitor needs a front-derived anchor; without a
    # curve only the anchor-free diagnostics run.
    lam = 2.0 if (alpha >= 3.0 and oracle is not None) else None
    report = energy_report(
        traj,
        problem,
        oracle=oracle,
        z=None if oracle is not None else config.x0,
        lam=lam,
        slack_coeff=config.energy_slack,
        lyapunov_slack_coeff=config.lyapunov_slack,
        merit_every=config.cert_every,
    )
    tail_ok = report.tail_fraction < TAIL_THRESHOLD if alpha > 3.0 else None

    if config.emit_plots:
        if problem.dim == 2:
            paths["trajectory_plot"] = emit_plot(
                paths["trajectory"], "trajectory-2d", out_dir / f"{stem}_traj.svg", problem.front
            )
        if "certificate" in paths:
            paths["bound_plot"] = emit_plot(
                paths["certificate"], "u0-vs-bound-loglog", out_dir / f"{stem}_bound.svg"
            )
    paths["summary"] = out_dir / f"{stem}_summary.json"

    summary = RunSummary(
        problem_kind=config.problem_kind,
        alpha=alpha,
        final_merit=final_merit,
        bound_status=bound_status,
        worst_bound_slack=worst_slack,
        bound_failing_steps=failing,
        level_set_ok=level_ok,
        level_set_first_violation=level_first,
        energy_decay_ok=report.decay_ok,
        energy_decay_violations=report.decay_violations,
        tail_fraction=float(report.tail_fraction),
        tail_ok=tail_ok,
        face_warning_count=len(traj.face_warnings),
        wall_time=time.perf_counter() - start,
        paths=paths,
    )
    paths["summary"].write_text(json.dumps(summary.to_dict(), indent=2) + "\n")
    return summary


def run(config: ExperimentConfig) -> list[RunSummary]:
    """Integrate and certify the configured problem for every damping level."""
    out_dir = _resolve_out_dir(config)
    return [_run_one(config, alpha, out_dir) for alpha in config.alphas]


def compare_schemes(config: ExperimentConfig) -> list[dict]:
    """Integrate each damping level under all three schemes and diff them.

    No claim is made about which variant matches any reference; the report
    simply quantifies the discretization spread.
    """
    problem = config.problem
    oracle = None
    if problem.front is not None:
        oracle = FrontOracle(
            problem.front, coarse_grid=config.merit_grid, refine_tol=config.merit_refine_tol
        )
    rows = []
    for alpha in config.alphas:
        finals = {}
        for scheme in SchemeVariant:
            cfg = IntegratorConfig(
                alpha=alpha,
                t0=config.t0,
                h=config.h,
                steps=config.steps,
                scheme=scheme,
                v_tol=config.v_tol,
                tie_tol=config.tie_tol,
                qp_tol=config.qp_tol,
            )
            traj = integrate(problem, config.x0, cfg)
            entry = {"x_final": traj.positions[-1]}
            if oracle is not None:
                entry["final_merit"] = eval_merit(oracle, problem, traj.positions[-1])
            finals[scheme.value] = entry
        names = [s.value for s in SchemeVariant]
        spread = max(
            float(np.abs(finals[a]["x_final"] - finals[b]["x_final"]).max())
            for i, a in enumerate(names)
            for b in names[i + 1 :]
        )
        rows.append({"alpha": alpha, "schemes": finals, "max_final_state_diff": spread})
    return rows


def benchmark_study_configs(
    out_dir="benchmark", steps: int = 100_000, emit_plots: bool = True
) -> list[ExperimentConfig]:
    """The full built-in study: both problems, alpha in {3, 10, 50, 100}."""
    alphas = (3.0, 10.0, 50.0, 100.0)
    shared = dict(
        alphas=alphas,
        t0=1.0,
        h=1e-3,
        steps=steps,
        cert_every=100,
        out_dir=Path(out_dir),
        emit_plots=emit_plots,
    )
    return [
        ExperimentConfig(
            problem=builtin_quadratic(),
            problem_kind="quadratic",
            x0=np.array([-0.2, -0.1]),
            **shared,
        ),
        ExperimentConfig(
            problem=builtin_logsumexp(),
            problem_kind="logsumexp",
            x0=np.array([0.0, 3.0]),
            **shared,
        ),
    ]
