"""Diffusion on a fixed topology.

Two models share the same Laplacian machinery:

``step_classical_euler``
    forward Euler for ``ds/dt = -c L s``. Conserves the plain sum of states.

``step_social_discrete``
    the degree-normalised update ``s_i <- s_i + c (mean_{j in N_i} s_j - s_i)``.
    The plain sum drifts; the degree-weighted sum ``k . s`` is conserved
    instead, which fixes the consensus value at ``k . s0 / 2m``.

Isolated nodes see no neighbourhood average and keep their state.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NonFiniteState, ValidationError
from .graph import Graph, check_vector, neighbor_sum


@dataclass(frozen=True)
class AggregateObservables:
    global_sum: float
    global_average: float
    degree_weighted_sum: float


def _check_state(g: Graph, s) -> np.ndarray:
    s = check_vector(g, s, "state")
    if not np.all(np.isfinite(s)):
        raise NonFiniteState("state vector contains non-finite entries")
    return s


def aggregates(g: Graph, s) -> AggregateObservables:
    s = check_vector(g, s, "state")
    return _aggregates(g, s)


def _aggregates(g: Graph, s: np.ndarray) -> AggregateObservables:
    total = float(s.sum())
    return AggregateObservables(total, total / g.n, float(g.degree @ s))


def step_classical_euler(g: Graph, s, c: float, dt: float) -> np.ndarray:
    if c < 0 or dt <= 0:
        raise ValidationError(f"need c >= 0 and dt > 0, got c={c}, dt={dt}")
    s = _check_state(g, s)
    return s - (c * dt) * (g.degree * s - neighbor_sum(g, s))


def step_social_discrete(g: Graph, s, c: float) -> np.ndarray:
    if not 0.0 <= c <= 1.0:
        raise ValidationError(f"diffusion constant must lie in [0, 1], got {c}")
    s = _check_state(g, s)
    return _social_step(g, s, c)


def _social_step(g: Graph, s: np.ndarray, c: float) -> np.ndarray:
    k = g.degree
    nbr = neighbor_sum(g, s)
    out = s.copy()
    has = k > 0
    out[has] += c * (nbr[has] / k[has] - s[has])
    return out


def integrate_social(
    g: Graph, s0, c: float, steps: int
) -> tuple[list[AggregateObservables], np.ndarray]:
    """Iterate the social update ``steps`` times on a fixed graph.

    Returns the aggregates before the first and after every step
    (``steps + 1`` entries) and the final state.
    """
    if steps < 0:
        raise ValidationError(f"steps must be >= 0, got {steps}")
    if not 0.0 <= c <= 1.0:
        raise ValidationError(f"diffusion constant must lie in [0, 1], got {c}")
    s = _check_state(g, s0).copy()
    traj = [_aggregates(g, s)]
    for _ in range(steps):
        s = _social_step(g, s, c)
        traj.append(_aggregates(g, s))
    return traj, s


def consensus_value(g: Graph, s0) -> float:
    """Limit state of social diffusion on a connected fixed graph."""
    s0 = check_vector(g, s0, "state")
    return float(g.degree @ s0) / (2 * g.m)
