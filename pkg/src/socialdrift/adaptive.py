"""State-dependent link reassignment coupled to social diffusion.

Each iteration runs three operations, by default in the order
diffuse -> rewire -> noise:

* diffuse: one social-diffusion step on the current topology;
* rewire: ``round(p*m)`` uniformly chosen links are dropped and the same
  number re-added between endpoints drawn with probability ``~ s_i**alpha``;
* noise: optional i.i.d. Gaussian kicks to every state.

With ``alpha > 0`` high-state nodes accumulate links, which correlates
``s`` with the drift vector and pushes the global average up.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .config import NoiseParams, RewireParams, SimConfig
from .drift import drift_vector, pearson
from .dynamics import _social_step
from .errors import DimensionMismatch
from .graph import Graph, gen_random_graph, random_absent_pair

__all__ = [
    "NoiseParams",
    "RewireParams",
    "Snapshot",
    "TrajectoryRecord",
    "apply_noise",
    "preferential_weights",
    "rewire_count",
    "rewire_step",
    "run_simulation",
]

WEIGHT_FLOOR = 1e-12


def preferential_weights(s, alpha: float) -> np.ndarray:
    """Unnormalised selection weights ``max(s_i, 1e-12) ** alpha``.

    Evaluated in log space and rescaled so the largest weight is 1, which
    keeps negative ``alpha`` on near-zero states finite. Falls back to
    uniform weights if nothing usable is left.
    """
    s = np.asarray(s, dtype=np.float64)
    if alpha == 0:
        return np.ones(len(s))
    with np.errstate(invalid="ignore", divide="ignore"):
        logw = alpha * np.log(np.maximum(s, WEIGHT_FLOOR))
    ok = np.isfinite(logw)
    if not ok.any():
        return np.ones(len(s))
    w = np.zeros(len(s))
    w[ok] = np.exp(logw[ok] - logw[ok].max())
    return w


def rewire_count(p: float, m: int) -> int:
    """``p*m`` rounded half-up."""
    return int(math.floor(p * m + 0.5))


class _EndpointSampler:
    """Buffered inverse-CDF draws from a fixed weight vector."""

    def __init__(self, weights: np.ndarray, rng: np.random.Generator, batch: int):
        self.cdf = np.cumsum(weights)
        self.total = self.cdf[-1]
        self.last = int(np.flatnonzero(weights)[-1])
        self.rng = rng
        self.batch = max(batch, 8)
        self.buf: list[int] = []
        self.pos = 0

    def _refill(self):
        x = self.rng.random(2 * self.batch) * self.total
        idx = np.searchsorted(self.cdf, x, side="right")
        np.minimum(idx, self.last, out=idx)
        self.buf = idx.tolist()
        self.pos = 0

    def pair(self) -> tuple[int, int]:
        if self.pos + 2 > len(self.buf):
            self._refill()
        a, b = self.buf[self.pos], self.buf[self.pos + 1]
        self.pos += 2
        return a, b


def rewire_step(g: Graph, s, params: RewireParams, rng: np.random.Generator) -> Graph:
    """Reassign ``round(p*m)`` links preferentially. Mutates and returns ``g``.

    Each new link draws both endpoints independently from
    :func:`preferential_weights`; a self-loop or an existing edge rejects the
    pair, and after ``retry_cap`` rejections a uniformly random absent pair is
    used so the edge count is always preserved. A link removed in this
    iteration may be re-added.
    """
    s = np.asarray(s, dtype=np.float64)
    if s.shape != (g.n,):
        raise DimensionMismatch(f"state has shape {s.shape}, graph has n={g.n}")
    r = rewire_count(params.p, g.m)
    if r == 0:
        return g
    picks = rng.choice(g.m, size=r, replace=False)
    sampler = _EndpointSampler(preferential_weights(s, params.alpha), rng, r)
    slot = g._slot
    retry_cap = params.retry_cap

    def choose():
        for _ in range(retry_cap):
            a, b = sampler.pair()
            if a == b:
                continue
            pair = (a, b) if a < b else (b, a)
            if pair not in slot:
                return pair
        return random_absent_pair(g, rng)

    g._replace_at(picks, choose)
    return g


def apply_noise(s, params: NoiseParams, rng: np.random.Generator) -> np.ndarray:
    s = np.asarray(s, dtype=np.float64)
    if not params.enabled or params.sigma == 0:
        return s.copy()
    return s + rng.normal(0.0, params.sigma, size=s.shape)


@dataclass
class Snapshot:
    iteration: int
    edges: list[tuple[int, int]]
    state: np.ndarray


@dataclass
class TrajectoryRecord:
    """Per-iteration aggregates of one run; row ``t`` is after ``t`` iterations.

    ``predicted_drift_rate[t]`` and ``correlation[t]`` are evaluated on the
    graph and state that the diffusion step of iteration ``t + 1`` sees (for
    the last row: on the final graph and state). With the default order and
    noise off, ``global_sum[t+1] - global_sum[t] == predicted_drift_rate[t]``.
    """

    config: SimConfig
    iteration: np.ndarray
    global_average: np.ndarray
    global_sum: np.ndarray
    degree_weighted_sum: np.ndarray
    predicted_drift_rate: np.ndarray
    correlation: np.ndarray
    final_state: np.ndarray
    final_edges: list[tuple[int, int]] = field(default_factory=list)
    snapshots: list[Snapshot] = field(default_factory=list)

    COLUMNS = (
        "iteration",
        "global_average",
        "global_sum",
        "degree_weighted_sum",
        "predicted_drift_rate",
        "correlation",
    )

    def __len__(self):
        return len(self.iteration)

    def rows(self):
        cols = [getattr(self, c) for c in self.COLUMNS]
        for i in range(len(self)):
            yield (int(cols[0][i]),) + tuple(float(c[i]) for c in cols[1:])

    @property
    def delta_s(self) -> float:
        return float(self.global_average[-1] - self.global_average[0])


def initial_state(config: SimConfig, rng: np.random.Generator) -> np.ndarray:
    lo, hi = config.init_state.low, config.init_state.high
    return rng.uniform(lo, hi, size=config.n)


def run_simulation(
    config: SimConfig,
    rng: np.random.Generator | None = None,
    graph: Graph | None = None,
    state=None,
) -> TrajectoryRecord:
    """Run the coupled diffusion/rewiring model for ``config.iterations`` steps.

    Unless supplied, the initial G(n, m) graph and then the uniform initial
    states are drawn from ``rng`` (default: seeded from ``config.seed``).
    A supplied graph is copied, not mutated.
    """
    if rng is None:
        rng = np.random.default_rng(config.seed)
    g = gen_random_graph(config.n, config.m, rng) if graph is None else graph.copy()
    if g.n != config.n:
        raise DimensionMismatch(f"graph has n={g.n}, config has n={config.n}")
    if state is None:
        s = initial_state(config, rng)
    else:
        s = np.array(state, dtype=np.float64)
        if s.shape != (g.n,):
            raise DimensionMismatch(f"state has shape {s.shape}, graph has n={g.n}")

    T = config.iterations
    c = config.c
    n = g.n
    gsum = np.empty(T + 1)
    kws = np.empty(T + 1)
    pred = np.empty(T + 1)
    corr = np.empty(T + 1)
    snaps: list[Snapshot] = []
    every = config.snapshot_every
    do_rewire = rewire_count(config.rewire.p, g.m) > 0
    do_noise = config.noise.enabled and config.noise.sigma > 0

    def observe(row):
        v = drift_vector(g)
        pred[row] = c * float(v @ s)
        corr[row] = pearson(v, s)

    gsum[0] = s.sum()
    kws[0] = g.degree @ s
    if every:
        snaps.append(Snapshot(0, g.edge_list(), s.copy()))
    for t in range(1, T + 1):
        for op in config.op_order:
            if op == "diffuse":
                observe(t - 1)
                s = _social_step(g, s, c)
            elif op == "rewire":
                if do_rewire:
                    rewire_step(g, s, config.rewire, rng)
            elif do_noise:
                s = apply_noise(s, config.noise, rng)
        gsum[t] = s.sum()
        kws[t] = g.degree @ s
        if every and t % every == 0:
            snaps.append(Snapshot(t, g.edge_list(), s.copy()))
    observe(T)

    return TrajectoryRecord(
        config=config,
        iteration=np.arange(T + 1),
        global_average=gsum / n,
        global_sum=gsum,
        degree_weighted_sum=kws,
        predicted_drift_rate=pred,
        correlation=corr,
        final_state=s,
        final_edges=g.edge_list(),
        snapshots=snaps,
    )
