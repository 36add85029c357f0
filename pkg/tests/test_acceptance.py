"""Acceptance suite: every exit criterion at its stated tolerance.

The first six criteria share one module-scoped fixture holding the eight
full-scale runs (two built-in problems, damping alpha in {3, 10, 50, 100},
t0 = 1, h = 1e-3, 100 000 steps, zero initial velocity).  Each test prints
one PASS line; run with ``pytest tests/test_acceptance.py -v -s`` to see
them.

Known red: the merit-oracle equivalence at tolerance 1e-6 cannot hold on
the log-sum-exp problem.  The merit's 1-D curve profile there peaks at a
kink whose one-sided slopes reach ~40 (coefficient rows of size 10*sqrt(2)
times the curve speed 2*sqrt(2)), so a uniform grid with spacing 1e-6 can
undershoot the refined maximum by up to slope * spacing / 2 ~ 2e-5.  The
quadratic problem (slopes ~1) passes the same check.  The corresponding
test is implemented exactly as stated and fails honestly.
"""

import time

import numpy as np
import pytest

from paretodyn.dynamics import IntegratorConfig, State, integrate, step_scalar
from paretodyn.harness import TAIL_THRESHOLD, verify
from paretodyn.hullgeom import GradientBundle, select_direction
from paretodyn.merit import FrontOracle, certify_bound, energy_report, eval_merit_grid
from paretodyn.problems import (
    Quadratic,
    builtin_logsumexp,
    builtin_quadratic,
    single_objective,
)

ALPHAS = (3.0, 10.0, 50.0, 100.0)
STEPS = 100_000
H = 1e-3
T0 = 1.0
CERT_STRIDE = 100
LEVEL_TOL = 1e-6

# Pilot tail fractions (last 10% of steps of sum h t_k ||v_k||^2 relative to
# the total), recorded here per the acceptance protocol:
#   quadratic:  a=10: 3.54e-4   a=50: 0.0       a=100: 4.53e-4
#   logsumexp:  a=10: 6.35e-3   a=50: 9.99e-3   a=100: 1.06e-2
# The recorded threshold TAIL_THRESHOLD = 2e-2 covers the worst case; the
# a=10 runs are additionally held to the 1e-2 level.


def _problems():
    return (
        ("quadratic", builtin_quadratic(), np.array([-0.2, -0.1])),
        ("logsumexp", builtin_logsumexp(), np.array([0.0, 3.0])),
    )


@pytest.fixture(scope="module")
def study():
    runs = {}
    for kind, problem, x0 in _problems():
        oracle = FrontOracle.for_problem(problem)
        for alpha in ALPHAS:
            started = time.perf_counter()
            cfg = IntegratorConfig(alpha=alpha, t0=T0, h=H, steps=STEPS)
            traj = integrate(problem, x0, cfg)
            cert = certify_bound(traj, oracle, problem, every=CERT_STRIDE)
            report = energy_report(traj, problem, oracle=oracle)
            runs[(kind, alpha)] = {
                "problem": problem,
                "oracle": oracle,
                "x0": x0,
                "traj": traj,
                "cert": cert,
                "report": report,
                "wall": time.perf_counter() - started,
            }
    return runs


def test_criterion_1_decay_bound_quadratic(study):
    for alpha in ALPHAS:
        entry = study[("quadratic", alpha)]
        cert = entry["cert"]
        assert cert.applicable
        assert cert.all_pass, (
            f"alpha={alpha}: bound violated at steps {cert.failing_steps[:5]}"
        )
        assert cert.ks[1] - cert.ks[0] == CERT_STRIDE
    walls = ", ".join(f"a={a:g}: {study[('quadratic', a)]['wall']:.1f}s" for a in ALPHAS)
    print(f"ACCEPTANCE 1 PASS: quadratic decay bound holds at all sampled steps ({walls})")


def test_criterion_2_decay_bound_logsumexp(study):
    for alpha in ALPHAS:
        cert = study[("logsumexp", alpha)]["cert"]
        assert cert.applicable
        assert cert.all_pass, (
            f"alpha={alpha}: bound violated at steps {cert.failing_steps[:5]}"
        )
    walls = ", ".join(f"a={a:g}: {study[('logsumexp', a)]['wall']:.1f}s" for a in ALPHAS)
    print(f"ACCEPTANCE 2 PASS: log-sum-exp decay bound holds at all sampled steps ({walls})")


def test_criterion_3_level_set_containment(study):
    worst = -np.inf
    for (kind, alpha), entry in study.items():
        problem = entry["problem"]
        start = problem.values(entry["x0"])
        excess = problem.values_batch(entry["traj"].positions) - start[None, :]
        worst = max(worst, float(excess.max()))
        assert excess.max() <= LEVEL_TOL, f"{kind} alpha={alpha}: level set left"
    print(f"ACCEPTANCE 3 PASS: level-set containment on all 8 runs (worst excess {worst:.2e})")


def test_criterion_4_energy_decay(study):
    total_violations = 0
    for (kind, alpha), entry in study.items():
        report = entry["report"]
        total_violations += report.decay_violations
        assert report.decay_ok, (
            f"{kind} alpha={alpha}: {report.decay_violations} decay violations "
            f"(worst excess {report.decay_worst_excess:.3e}, slack coeff {report.slack_coeff})"
        )
    print(f"ACCEPTANCE 4 PASS: per-objective energy decay, violation count {total_violations}")


def test_lyapunov_monitor_across_study(study):
    # Supporting invariant at full scale: the anchored Lyapunov decay
    # inequality holds at >= 99.9% of steps under the calibrated slack
    # (isolated kink steps where the active minimum switches are allowed).
    for (kind, alpha), entry in study.items():
        frac = entry["report"].lyapunov_ok_fraction
        assert frac >= 0.999, f"{kind} alpha={alpha}: ok fraction {frac}"


def test_criterion_5_integrability_tail(study):
    fractions = {}
    for kind, _, _ in _problems():
        for alpha in (10.0, 50.0, 100.0):
            frac = study[(kind, alpha)]["report"].tail_fraction
            fractions[(kind, alpha)] = frac
            assert frac < TAIL_THRESHOLD, (
                f"{kind} alpha={alpha}: tail fraction {frac:.3e} >= {TAIL_THRESHOLD}"
            )
        # the stated example configuration stays below the original 1% level
        assert fractions[(kind, 10.0)] < 0.01
    txt = ", ".join(f"{k[0]}/a={k[1]:g}: {v:.2e}" for k, v in fractions.items())
    print(f"ACCEPTANCE 5 PASS: weighted-speed tails below {TAIL_THRESHOLD} ({txt})")


def test_criterion_6_vanishing_merit_energy(study):
    report = study[("quadratic", 10.0)]["report"]
    final_energy = report.merit_energies[-1]
    assert report.merit_ks[-1] == STEPS
    assert final_energy < 1e-2, f"final merit energy {final_energy:.3e}"
    # the merit alone also ends tiny (pilot: ~1e-11, envelope says < 1e-3)
    final_merit = study[("quadratic", 10.0)]["cert"].merits[-1]
    assert final_merit < 1e-3
    print(
        f"ACCEPTANCE 6 PASS: final merit energy {final_energy:.3e} < 1e-2 "
        f"(final merit {final_merit:.3e})"
    )


def test_criterion_7_min_norm_matches_simplex_grid():
    from paretodyn.hullgeom import min_norm_in_hull

    rng = np.random.default_rng(71)
    step = 1e-3
    ts = np.arange(0.0, 1.0 + step / 2, step)
    worst = 0.0
    for _ in range(200):
        m = int(rng.integers(2, 4))
        d = int(rng.integers(2, 4))
        G = rng.normal(size=(m, d))
        sel = min_norm_in_hull(GradientBundle(G))
        if m == 2:
            theta = np.stack([ts, 1.0 - ts], axis=1)
        else:
            t1, t2 = np.meshgrid(ts, ts, indexing="ij")
            keep = t1 + t2 <= 1.0 + 1e-12
            theta = np.stack([t1[keep], t2[keep], 1.0 - t1[keep] - t2[keep]], axis=1)
        brute = float(((theta @ G) ** 2).sum(axis=1).min())
        worst = max(worst, abs(float(sel.g @ sel.g) - brute))
    assert worst < 1e-4
    print(f"ACCEPTANCE 7 (min-norm half) PASS: worst grid gap {worst:.2e} < 1e-4")


@pytest.mark.parametrize("kind", ["quadratic", "logsumexp"])
def test_criterion_7_merit_matches_grid_oracle(study, kind):
    """Known red for logsumexp: a 1e-6-spaced grid cannot track a kink
    maximum whose one-sided slopes are ~40 (undershoot up to ~2e-5); see the
    module docstring.  Implemented exactly as stated."""
    entry = study[(kind, 3.0)]
    problem, oracle, x0 = entry["problem"], entry["oracle"], entry["x0"]
    rng = np.random.default_rng(72)
    start = problem.values(x0)
    feasible = np.nonzero(np.all(oracle.front_values(problem) <= start, axis=1))[0]
    from paretodyn.merit import eval_merit

    worst = 0.0
    for _ in range(100):
        j = feasible[rng.integers(feasible.size)]
        x = x0 + rng.uniform(0.0, 1.0) * (oracle.points[j] - x0)
        refined = eval_merit(oracle, problem, x)
        gridded = eval_merit_grid(oracle, problem, x, grid=1_000_000)
        worst = max(worst, abs(refined - gridded))
    assert worst <= 1e-6, (
        f"{kind}: worst |refined - grid| = {worst:.3e} > 1e-6; a kink maximum "
        f"with one-sided slope s is resolved by a uniform grid of spacing w "
        f"only to s*w/2 (~2e-5 here) - unattainable as stated for this problem"
    )
    print(f"ACCEPTANCE 7 (merit half, {kind}) PASS: worst oracle gap {worst:.2e} <= 1e-6")


def test_criterion_8_single_objective_reduction_bitwise():
    f = Quadratic(np.eye(2), np.zeros(2))
    problem = single_objective(f, dim=2)
    cfg = IntegratorConfig(alpha=3.0, h=1e-3, steps=1000)
    x0 = np.array([0.4, -0.8])
    traj = integrate(problem, x0, cfg)
    state = State(cfg.t0, x0, np.zeros(2))
    for k in range(cfg.steps):
        state = step_scalar(f, state, cfg.alpha, cfg.h)
        assert (state.x == traj.positions[k + 1]).all()
        assert (state.v == traj.velocities[k + 1]).all()
    assert (traj.weights == 1.0).all()
    print("ACCEPTANCE 8 PASS: m=1 inertial trajectory bitwise equals the scalar oracle")


def test_criterion_9_selection_round_trip():
    rng = np.random.default_rng(73)
    qp_tol = 1e-10
    worst = 0.0
    for _ in range(200):
        m = int(rng.integers(1, 6))
        d = int(rng.integers(1, 4))
        G = rng.normal(size=(m, d)) * 10.0 ** rng.uniform(-1, 1)
        v = rng.normal(size=d)
        v *= rng.uniform(0.1, 2.0) / np.linalg.norm(v)
        ratio = rng.uniform(0.5, 100.0)
        sel = select_direction(GradientBundle(G), v, qp_tol=qp_tol)
        eta = -ratio * v
        xi = eta - sel.g
        violation = float(((G + xi - eta) @ eta).min())
        worst = min(worst, violation)
        assert violation >= -10.0 * qp_tol
    print(f"ACCEPTANCE 9 PASS: projection round trip, worst violation {worst:.2e}")


def test_criterion_10_negative_controls(tmp_path):
    bad = tmp_path / "violated_cert.csv"
    bad.write_text("k,t,u0,bound,slack,pass\n0,1,2.0,1.0,-1.0,0\n100,1.1,0.5,1.0,0.5,1\n")
    assert verify(bad) == 1

    problem = builtin_quadratic()
    oracle = FrontOracle.for_problem(problem)
    cfg = IntegratorConfig(alpha=2.0, t0=T0, h=H, steps=500)
    traj = integrate(problem, np.array([-0.2, -0.1]), cfg)
    cert = certify_bound(traj, oracle, problem, every=100)
    assert cert.status == "not-applicable"
    assert cert.status not in ("pass", "fail")
    print("ACCEPTANCE 10 PASS: corrupted certificate exits 1; alpha=2 reported not-applicable")
