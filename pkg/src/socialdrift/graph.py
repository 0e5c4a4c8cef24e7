"""Undirected simple graphs with O(1) edge moves and vectorised Laplacian ops.

A :class:`Graph` keeps three synchronised views of the same edge set:

* ``neighbor_sets`` -- one Python ``set`` per node,
* ``degree`` -- an ``int64`` array,
* a pair of endpoint arrays (``edge_arrays()``) over which the dynamics
  run as ``np.bincount`` reductions, so no adjacency matrix is ever built.

Edges are stored canonically as ``(min, max)``. Removal swaps the last edge
slot into the hole, so slot order is an implementation detail, but it is a
deterministic function of the move sequence.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DimensionMismatch,
    DuplicateEdge,
    EdgeAlreadyPresent,
    EdgeNotFound,
    GraphFull,
    NodeIdOutOfRange,
    SelfLoop,
    TooManyEdges,
    ValidationError,
)

Pair = tuple[int, int]
# A batch of node pairs to add or remove; no pair may repeat within a batch.
EdgeSample = Sequence[Pair]


def max_edges(n: int) -> int:
    return n * (n - 1) // 2


class Graph:
    """Undirected simple graph on nodes ``0..n-1``."""

    def __init__(self, n: int):
        if n < 1:
            raise ValidationError(f"graph needs at least one node, got n={n}")
        self.n = int(n)
        self.degree = np.zeros(self.n, dtype=np.int64)
        self.neighbor_sets: list[set[int]] = [set() for _ in range(self.n)]
        self._slot: dict[Pair, int] = {}
        self._eu = np.empty(16, dtype=np.int64)
        self._ev = np.empty(16, dtype=np.int64)

    # -- read access -----------------------------------------------------

    @property
    def m(self) -> int:
        return len(self._slot)

    @property
    def edges(self) -> set[Pair]:
        return set(self._slot)

    def edge_list(self) -> list[Pair]:
        """Edges in sorted order (stable across slot shuffling)."""
        return sorted(self._slot)

    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """Endpoint arrays ``(u, v)`` with ``u < v``; read-only views."""
        m = self.m
        u, v = self._eu[:m], self._ev[:m]
        u.flags.writeable = False
        v.flags.writeable = False
        return u, v

    def has_edge(self, u: int, v: int) -> bool:
        return _canon(u, v) in self._slot

    def copy(self) -> "Graph":
        g = Graph.__new__(Graph)
        g.n = self.n
        g.degree = self.degree.copy()
        g.neighbor_sets = [set(s) for s in self.neighbor_sets]
        g._slot = dict(self._slot)
        g._eu = self._eu.copy()
        g._ev = self._ev.copy()
        return g

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self._slot.keys() == other._slot.keys()

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"

    # -- mutation --------------------------------------------------------

    def add_edges(self, sample: Iterable[Pair]) -> "Graph":
        """Add every pair in ``sample`` in place; all-or-nothing."""
        pairs = [self._check_pair(u, v) for u, v in sample]
        seen: set[Pair] = set()
        for p in pairs:
            if p in self._slot:
                raise EdgeAlreadyPresent(p)
            if p in seen:
                raise DuplicateEdge(p, "repeated within sample")
            seen.add(p)
        for u, v in pairs:
            self._add(u, v)
        return self

    def remove_edges(self, sample: Iterable[Pair]) -> "Graph":
        """Remove every pair in ``sample`` in place; all-or-nothing."""
        pairs = [_canon(u, v) for u, v in sample]
        seen: set[Pair] = set()
        for p in pairs:
            if p not in self._slot or p in seen:
                raise EdgeNotFound(p)
            seen.add(p)
        for u, v in pairs:
            self._remove(u, v)
        return self

    def _check_pair(self, u, v) -> Pair:
        u, v = int(u), int(v)
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise NodeIdOutOfRange((u, v), f"n={self.n}")
        if u == v:
            raise SelfLoop((u, v))
        return _canon(u, v)

    # Unchecked primitives; callers guarantee validity.

    def _add(self, u: int, v: int) -> None:
        m = len(self._slot)
        if m == len(self._eu):
            self._eu = np.concatenate([self._eu, np.empty_like(self._eu)])
            self._ev = np.concatenate([self._ev, np.empty_like(self._ev)])
        self._slot[(u, v)] = m
        self._eu[m] = u
        self._ev[m] = v
        self.neighbor_sets[u].add(v)
        self.neighbor_sets[v].add(u)
        self.degree[u] += 1
        self.degree[v] += 1

    def _replace_at(self, slots: np.ndarray, choose) -> None:
        """Drop the edges in ``slots``, then refill each slot with ``choose()``.

        ``choose`` sees the graph with the dropped edges gone and earlier
        refills present (degrees excepted, which are settled at the end) and
        must return a valid absent canonical pair.
        """
        nbrs = self.neighbor_sets
        slot = self._slot
        old_u = self._eu[slots]
        old_v = self._ev[slots]
        for u, v in zip(old_u.tolist(), old_v.tolist()):
            del slot[(u, v)]
            nbrs[u].discard(v)
            nbrs[v].discard(u)
        new_u, new_v = [], []
        for i in slots.tolist():
            u, v = choose()
            slot[(u, v)] = i
            nbrs[u].add(v)
            nbrs[v].add(u)
            new_u.append(u)
            new_v.append(v)
        self._eu[slots] = new_u
        self._ev[slots] = new_v
        n = self.n
        self.degree += (
            np.bincount(new_u, minlength=n) + np.bincount(new_v, minlength=n)
            - np.bincount(old_u, minlength=n) - np.bincount(old_v, minlength=n)
        )

    def _remove(self, u: int, v: int) -> None:
        i = self._slot.pop((u, v))
        last = len(self._slot)
        if i != last:
            lu, lv = int(self._eu[last]), int(self._ev[last])
            self._eu[i] = lu
            self._ev[i] = lv
            self._slot[(lu, lv)] = i
        self.neighbor_sets[u].discard(v)
        self.neighbor_sets[v].discard(u)
        self.degree[u] -= 1
        self.degree[v] -= 1


def _canon(u, v) -> Pair:
    u, v = int(u), int(v)
    return (u, v) if u < v else (v, u)


def build_graph(n: int, edges: Iterable[Pair]) -> Graph:
    """Validated construction; rejects self-loops, repeats and bad ids."""
    g = Graph(n)
    for u, v in edges:
        p = g._check_pair(u, v)
        if p in g._slot:
            raise DuplicateEdge(p)
        g._add(*p)
    return g


def gen_random_graph(n: int, m: int, rng: np.random.Generator) -> Graph:
    """Uniform G(n, m) graph by rejection sampling of node pairs.

    Above half density the complement is sampled instead and inverted, which
    gives the same distribution without the coupon-collector tail.
    """
    total = max_edges(n)
    if m < 0 or m > total:
        raise TooManyEdges(f"m={m} outside [0, {total}] for n={n}")
    if 2 * m > total:
        missing = _sample_pairs(n, total - m, rng)
        g = Graph(n)
        for u in range(n):
            for v in range(u + 1, n):
                if (u, v) not in missing:
                    g._add(u, v)
        return g
    g = Graph(n)
    for u, v in _sample_pairs_ordered(n, m, rng):
        g._add(u, v)
    return g


def _sample_pairs_ordered(n: int, m: int, rng: np.random.Generator) -> list[Pair]:
    chosen: dict[Pair, None] = {}
    while len(chosen) < m:
        need = m - len(chosen)
        draws = rng.integers(0, n, size=(2 * need + 8, 2)).tolist()
        for u, v in draws:
            if u == v:
                continue
            p = (u, v) if u < v else (v, u)
            if p not in chosen:
                chosen[p] = None
                if len(chosen) == m:
                    break
    return list(chosen)


def _sample_pairs(n: int, m: int, rng: np.random.Generator) -> set[Pair]:
    return set(_sample_pairs_ordered(n, m, rng))


def random_absent_pair(g: Graph, rng: np.random.Generator) -> Pair:
    """A node pair drawn uniformly from the pairs not currently in ``g``."""
    total = max_edges(g.n)
    free = total - g.m
    if free <= 0:
        raise GraphFull(f"no absent pair in a complete graph on {g.n} nodes")
    if 2 * g.m < total:
        while True:
            u, v = rng.integers(0, g.n, size=2).tolist()
            if u != v and not g.has_edge(u, v):
                return _canon(u, v)
    k = int(rng.integers(0, free))
    for u in range(g.n):
        nbrs = g.neighbor_sets[u]
        row = (g.n - 1 - u) - sum(1 for w in nbrs if w > u)
        if k >= row:
            k -= row
            continue
        for v in range(u + 1, g.n):
            if v not in nbrs:
                if k == 0:
                    return (u, v)
                k -= 1
    raise AssertionError("absent-pair enumeration fell through")


def remove_edges(g: Graph, sample: EdgeSample) -> Graph:
    return g.remove_edges(sample)


def add_edges(g: Graph, sample: EdgeSample) -> Graph:
    return g.add_edges(sample)


def check_vector(g: Graph, x, name: str = "vector") -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1 or x.shape[0] != g.n:
        raise DimensionMismatch(f"{name} has shape {x.shape}, graph has n={g.n}")
    return x


def neighbor_sum(g: Graph, x: np.ndarray) -> np.ndarray:
    """``A @ x`` via two scatter-adds over the edge arrays."""
    u, v = g.edge_arrays()
    return np.bincount(u, weights=x[v], minlength=g.n) + np.bincount(
        v, weights=x[u], minlength=g.n
    ).astype(np.float64)


def laplacian_apply(g: Graph, x) -> np.ndarray:
    """``L @ x = D x - A x`` without materialising ``L``."""
    x = check_vector(g, x, "x")
    return g.degree * x - neighbor_sum(g, x)


def is_connected(g: Graph) -> bool:
    seen = np.zeros(g.n, dtype=bool)
    seen[0] = True
    stack = [0]
    reached = 1
    while stack:
        u = stack.pop()
        for w in g.neighbor_sets[u]:
            if not seen[w]:
                seen[w] = True
                reached += 1
                stack.append(w)
    return reached == g.n

