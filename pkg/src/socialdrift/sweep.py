"""p-alpha parameter sweeps.

Each (cell, replicate) run gets its own seed from
:func:`derive_run_seed`, so results do not depend on scheduling: a sweep
run serially and one fanned out over worker processes are identical.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .adaptive import run_simulation
from .config import SweepSpec
from .errors import ParseError, SocialDriftError, ValidationError


def derive_run_seed(master_seed: int, cell_index: int, replicate_index: int) -> int:
    """64-bit seed for one run, mixed from the triple by ``SeedSequence``."""
    if cell_index < 0 or replicate_index < 0:
        raise ValidationError("cell and replicate indices must be >= 0")
    ss = np.random.SeedSequence(master_seed, spawn_key=(cell_index, replicate_index))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


@dataclass(frozen=True)
class SweepCell:
    p: float
    alpha: float
    replicate: int
    delta_s: float


@dataclass(frozen=True)
class CellSummary:
    p: float
    alpha: float
    mean_delta_s: float
    sd_delta_s: float
    n_replicates: int

    @property
    def stderr(self) -> float:
        return self.sd_delta_s / math.sqrt(self.n_replicates)


@dataclass
class SweepResult:
    spec: SweepSpec
    cells: list[SweepCell]

    def summary(self) -> list[CellSummary]:
        out = []
        for _, p, a in self.spec.cells():
            vals = np.array([c.delta_s for c in self.cells if c.p == p and c.alpha == a])
            sd = float(vals.std(ddof=1)) if len(vals) > 1 else 0.0
            out.append(CellSummary(p, a, float(vals.mean()), sd, len(vals)))
        return out

    def delta_s(self, p: float, alpha: float) -> np.ndarray:
        return np.array(
            [c.delta_s for c in self.cells if c.p == p and c.alpha == alpha]
        )


class SweepCellError(SocialDriftError):
    pass


def _run_one(task):
    spec, cell_index, p, alpha, rep = task
    base = spec.base
    config = replace(
        base,
        rewire=replace(base.rewire, p=p, alpha=alpha),
        iterations=spec.measure_at,
        snapshot_every=0,
        seed=derive_run_seed(base.seed, cell_index, rep),
    )
    try:
        record = run_simulation(config)
    except Exception as exc:
        raise SweepCellError(
            f"cell p={p} alpha={alpha} replicate={rep} failed: {exc}"
        ) from exc
    return SweepCell(p, alpha, rep, record.delta_s)


def run_sweep(spec: SweepSpec, workers: int = 1) -> SweepResult:
    """Run every (p, alpha, replicate) combination.

    ``workers > 1`` distributes runs over processes; the result is the same
    either way.
    """
    tasks = [
        (spec, idx, p, a, rep)
        for idx, p, a in spec.cells()
        for rep in range(spec.replicates)
    ]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            cells = list(pool.map(_run_one, tasks))
    else:
        cells = [_run_one(t) for t in tasks]
    return SweepResult(spec, cells)


def summary_path(path) -> str:
    """``sweep.csv`` -> ``sweep_summary.csv``."""
    root, dot, ext = str(path).rpartition(".")
    if not dot or "/" in ext:
        return f"{path}_summary"
    return f"{root}_summary.{ext}"


def write_sweep(result: SweepResult, path) -> tuple[str, str]:
    """Write per-run and per-cell CSVs; returns both paths."""
    if not result.cells:
        raise ValidationError("refusing to write an empty sweep")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("p,alpha,replicate,delta_s\n")
        for c in result.cells:
            fh.write(f"{c.p!r},{c.alpha!r},{c.replicate},{c.delta_s!r}\n")
    spath = summary_path(path)
    with open(spath, "w", encoding="utf-8", newline="") as fh:
        fh.write("p,alpha,mean_delta_s,sd_delta_s,n_replicates\n")
        for s in result.summary():
            fh.write(
                f"{s.p!r},{s.alpha!r},{s.mean_delta_s!r},{s.sd_delta_s!r},{s.n_replicates}\n"
            )
    return str(path), spath


def read_sweep(path) -> list[SweepCell]:
    with open(path, encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines or lines[0] != "p,alpha,replicate,delta_s":
        raise ParseError("unexpected sweep header", line=1)
    out = []
    for line in lines[1:]:
        p, a, r, d = line.split(",")
        out.append(SweepCell(float(p), float(a), int(r), float(d)))
    return out
