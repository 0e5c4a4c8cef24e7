"""Acceptance criteria, one test each.

Every test records a one-line verdict that is printed in the pytest
terminal summary (see ``conftest.pytest_terminal_summary``). Criteria 5 and
6 are the long reproduction runs (roughly 1 and 2 minutes on one core).
"""

import json
from dataclasses import replace

import numpy as np
import pytest

from conftest import complete, cycle, dense_adjacency, dense_inv_degree, random_connected, random_regular
from socialdrift.adaptive import run_simulation
from socialdrift.cli import main
from socialdrift.config import NoiseParams, RewireParams, SimConfig, SweepSpec
from socialdrift.drift import drift_rate, drift_vector
from socialdrift.dynamics import step_classical_euler, step_social_discrete
from socialdrift.graph import gen_random_graph, max_edges
from socialdrift.sweep import derive_run_seed, run_sweep

VERDICTS: list[str] = []


def verdict(number, ok, detail):
    VERDICTS.append(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}")
    assert ok, detail


def random_graph_zoo(count, rng, max_n=50):
    """G(n, m) graphs of mixed size and density, isolated nodes included."""
    out = []
    for _ in range(count):
        n = int(rng.integers(2, max_n + 1))
        m = int(rng.integers(0, max_edges(n) + 1))
        out.append(gen_random_graph(n, m, rng))
    return out


def test_1_classical_sum_conserved():
    rng = np.random.default_rng(101)
    worst = 0.0
    for _ in range(20):
        g = random_connected(50, 200, rng)
        s = rng.random(50)
        s0 = s.sum()
        scale = max(1.0, abs(s0))
        for _ in range(10_000):
            s = step_classical_euler(g, s, 0.01, 1.0)
            worst = max(worst, abs(s.sum() - s0) / scale)
    verdict(1, worst <= 1e-9, f"max relative |h.s(t) - h.s(0)| = {worst:.2e} (tol 1e-9)")


def test_2_discrete_drift_identity():
    rng = np.random.default_rng(202)
    worst = 0.0
    for g in random_graph_zoo(100, rng):
        s = rng.normal(size=g.n) * rng.uniform(0.1, 10)
        c = float(rng.uniform(0, 1))
        delta = step_social_discrete(g, s, c).sum() - s.sum()
        worst = max(worst, abs(delta - drift_rate(g, s, c)) / max(1.0, abs(s.sum())))
    verdict(2, worst <= 1e-10, f"max relative |d(h.s) - c v.s| = {worst:.2e} (tol 1e-10)")


def test_3_drift_vector_closed_form():
    rng = np.random.default_rng(303)
    worst, worst_sum = 0.0, 0.0
    for g in random_graph_zoo(100, rng):
        active = (g.degree > 0).astype(float)
        oracle = dense_adjacency(g) @ dense_inv_degree(g) @ np.ones(g.n) - active
        v = drift_vector(g)
        worst = max(worst, float(np.abs(v - oracle).max()))
        worst_sum = max(worst_sum, abs(float(v.sum())))
    regular = max(
        float(np.abs(drift_vector(g)).max())
        for g in (cycle(20), complete(10), random_regular(40, 4, rng))
    )
    ok = worst <= 1e-12 and worst_sum <= 1e-10 and regular <= 1e-12
    verdict(3, ok, f"dense-oracle err {worst:.1e}, max |sum v| {worst_sum:.1e}, "
                   f"max |v| on regular graphs {regular:.1e}")


def test_4_consensus_oracle():
    rng = np.random.default_rng(404)
    worst_spread, worst_err, max_steps = 0.0, 0.0, 0
    for _ in range(20):
        g = random_connected(50, 200, rng)
        s0 = rng.random(50)
        target = float(g.degree @ s0) / (2 * g.m)
        s, steps = s0, 0
        while np.ptp(s) > 1e-6 and steps < 100_000:
            s = step_social_discrete(g, s, 0.5)
            steps += 1
        max_steps = max(max_steps, steps)
        worst_spread = max(worst_spread, float(np.ptp(s)))
        worst_err = max(worst_err, float(np.abs(s - target).max()))
    ok = worst_spread <= 1e-6 and worst_err <= 1e-6
    verdict(4, ok, f"max spread {worst_spread:.1e}, max |s_i - k.s0/2m| {worst_err:.1e} "
                   f"(<= {max_steps} steps at c=0.5)")


# -- reproduction runs ---------------------------------------------------

DESK = SimConfig(n=100, m=1000, c=0.001, seed=20240611,
                 rewire=RewireParams(0.05, 1.0), noise=NoiseParams(0.01, False))
ALPHAS = (0.0, 0.5, 1.0, 2.0)


@pytest.fixture(scope="module")
def fig1c_sweep():
    spec = SweepSpec(DESK, p_values=(0.0, 0.05), alpha_values=ALPHAS,
                     replicates=10, measure_at=2000)
    return run_sweep(spec).summary()


def cell(summary, p, alpha):
    return next(c for c in summary if c.p == p and c.alpha == alpha)


@pytest.mark.slow
def test_5a_positive_drift(fig1c_sweep):
    c = cell(fig1c_sweep, 0.05, 1.0)
    ok = c.mean_delta_s > 0 and c.mean_delta_s > 3 * c.stderr
    verdict("5a", ok, f"(p, alpha)=(0.05, 1): mean ds={c.mean_delta_s:.4g}, "
                      f"3 SE={3 * c.stderr:.2g}")


@pytest.mark.slow
def test_5b_null_cells(fig1c_sweep):
    nulls = [c for c in fig1c_sweep if c.p == 0.0 or c.alpha == 0.0]
    bad = [c for c in nulls if abs(c.mean_delta_s) > 3 * c.stderr]
    detail = "; ".join(
        f"(p={c.p}, a={c.alpha}) {c.mean_delta_s:+.2e} vs 3 SE {3 * c.stderr:.1e}" for c in nulls
    )
    verdict("5b", not bad, f"|mean ds| <= 3 SE for p=0 and alpha=0: {detail}")


@pytest.mark.slow
def test_5c_monotone_in_alpha(fig1c_sweep):
    means = [cell(fig1c_sweep, 0.05, a).mean_delta_s for a in ALPHAS]
    ranks = np.argsort(np.argsort(means))
    ok = bool(np.all(np.diff(means) >= 0))
    verdict("5c", ok, "mean ds at p=0.05 over alpha "
                      f"{list(ALPHAS)} = {[f'{m:.4g}' for m in means]} (ranks {ranks.tolist()})")


@pytest.mark.slow
def test_6_long_run_plateau_and_noise():
    T, reps = 50_000, 5
    base = replace(DESK, iterations=T)
    quiet, noisy = [], []
    for rep in range(reps):
        cfg = replace(base, seed=derive_run_seed(DESK.seed, 0, rep))
        quiet.append(run_simulation(cfg).global_average)
        noisy.append(run_simulation(replace(cfg, noise=NoiseParams(0.01, True))).global_average)
    quiet, noisy = np.array(quiet), np.array(noisy)

    mean_traj = quiet.mean(axis=0)
    tail = mean_traj[T] - mean_traj[int(0.9 * T)]
    total = mean_traj[T] - mean_traj[0]
    plateau = total > 0 and tail < 0.05 * total

    fq, fn = quiet[:, T], noisy[:, T]
    se = np.sqrt(fq.var(ddof=1) / reps + fn.var(ddof=1) / reps)
    gap = fn.mean() - fq.mean()
    verdict(
        6,
        plateau and gap > 3 * se,
        f"no-noise tail/total increase = {tail:.2e}/{total:.3g} = {tail / total:.2%} (< 5%); "
        f"final avg noise {fn.mean():.3f} vs no-noise {fq.mean():.3f}, gap {gap:.3f} > 3 SE {3 * se:.3f}",
    )


def test_7_cli_determinism(tmp_path):
    sim = tmp_path / "sim.json"
    sim.write_text(json.dumps({
        "n": 60, "m": 300, "c": 0.01, "iterations": 300, "seed": 9,
        "rewire": {"p": 0.05, "alpha": 1.0}, "noise": {"sigma": 0.01, "enabled": True},
    }))
    sweep = tmp_path / "sweep.json"
    sweep.write_text(json.dumps({
        "base": {"n": 40, "m": 150, "c": 0.01, "seed": 5},
        "p_values": [0.0, 0.05], "alpha_values": [0.0, 1.0],
        "replicates": 3, "measure_at": 100,
    }))
    runs = [
        ["simulate", "--config", str(sim), "--out-traj", str(tmp_path / "t1.csv")],
        ["simulate", "--config", str(sim), "--out-traj", str(tmp_path / "t2.csv")],
        ["sweep", "--config", str(sweep), "--out", str(tmp_path / "s1.csv")],
        ["sweep", "--config", str(sweep), "--out", str(tmp_path / "s2.csv")],
        ["sweep", "--config", str(sweep), "--out", str(tmp_path / "s3.csv"), "--workers", "2"],
    ]
    codes = [main(r) for r in runs]

    def same(a, b):
        return (tmp_path / a).read_bytes() == (tmp_path / b).read_bytes()

    ok = (
        codes == [0] * 5
        and same("t1.csv", "t2.csv")
        and same("s1.csv", "s2.csv") and same("s1_summary.csv", "s2_summary.csv")
        and same("s1.csv", "s3.csv") and same("s1_summary.csv", "s3_summary.csv")
    )
    verdict(7, ok, "simulate x2, sweep x2, sweep serial vs --workers 2: byte-identical outputs")
