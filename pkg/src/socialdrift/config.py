"""Run and sweep configuration, loaded from JSON.

Every key has a default, so ``{}`` is a valid simulation config (the
n=200, m=4000, c=0.001 desk setup with p=0.05, alpha=1). Unknown keys are
rejected so a typo never silently falls back to a default.

Simulation config schema::

    {
      "n": 200, "m": 4000, "c": 0.001, "iterations": 2000, "seed": 0,
      "snapshot_every": 0,
      "rewire": {"p": 0.05, "alpha": 1.0, "retry_cap": 100},
      "noise": {"sigma": 0.01, "enabled": false},
      "init_state": {"low": 0.0, "high": 1.0},
      "op_order": "diffuse-rewire-noise"
    }

Sweep config schema::

    {
      "base": {<simulation config>},
      "p_values": [0.0, 0.05], "alpha_values": [0.0, 1.0],
      "replicates": 10, "measure_at": 2000
    }

The sweep's master seed is ``base.seed``.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path

from .errors import ParseError, ValidationError
from .graph import max_edges

OPS = ("diffuse", "rewire", "noise")
DEFAULT_ORDER = ("diffuse", "rewire", "noise")


@dataclass(frozen=True)
class RewireParams:
    p: float = 0.05
    alpha: float = 1.0
    retry_cap: int = 100

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ValidationError(f"rewire.p must lie in [0, 1], got {self.p}")
        if not math.isfinite(self.alpha):
            raise ValidationError(f"rewire.alpha must be finite, got {self.alpha}")
        if self.retry_cap < 1:
            raise ValidationError(f"rewire.retry_cap must be >= 1, got {self.retry_cap}")


@dataclass(frozen=True)
class NoiseParams:
    sigma: float = 0.01
    enabled: bool = False

    def __post_init__(self):
        if not self.sigma >= 0.0:
            raise ValidationError(f"noise.sigma must be >= 0, got {self.sigma}")


@dataclass(frozen=True)
class InitState:
    """Initial states are i.i.d. uniform on ``[low, high]``."""

    low: float = 0.0
    high: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.low) and math.isfinite(self.high)):
            raise ValidationError("init_state bounds must be finite")
        if self.high < self.low:
            raise ValidationError(
                f"init_state.high ({self.high}) < init_state.low ({self.low})"
            )


@dataclass(frozen=True)
class SimConfig:
    n: int = 200
    m: int = 4000
    c: float = 0.001
    rewire: RewireParams = field(default_factory=RewireParams)
    noise: NoiseParams = field(default_factory=NoiseParams)
    iterations: int = 2000
    seed: int = 0
    snapshot_every: int = 0
    init_state: InitState = field(default_factory=InitState)
    op_order: tuple[str, ...] = DEFAULT_ORDER

    def __post_init__(self):
        if self.n < 1:
            raise ValidationError(f"n must be >= 1, got {self.n}")
        if not 0 <= self.m <= max_edges(self.n):
            raise ValidationError(
                f"m={self.m} exceeds the maximum {max_edges(self.n)} edges for n={self.n}"
            )
        if not 0.0 <= self.c <= 1.0:
            raise ValidationError(f"c must lie in [0, 1], got {self.c}")
        if self.iterations < 0:
            raise ValidationError(f"iterations must be >= 0, got {self.iterations}")
        if not 0 <= self.seed < 2**64:
            raise ValidationError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.snapshot_every < 0:
            raise ValidationError(f"snapshot_every must be >= 0, got {self.snapshot_every}")
        if sorted(self.op_order) != sorted(OPS):
            raise ValidationError(
                f"op_order must be a permutation of {'-'.join(OPS)}, got {self.op_order}"
            )

    def to_dict(self) -> dict:
        d = asdict(self)
        d["op_order"] = "-".join(self.op_order)
        return d


@dataclass(frozen=True)
class SweepSpec:
    base: SimConfig
    p_values: tuple[float, ...]
    alpha_values: tuple[float, ...]
    replicates: int = 10
    measure_at: int = 2000

    def __post_init__(self):
        if not self.p_values or not self.alpha_values:
            raise ValidationError("p_values and alpha_values must be non-empty")
        if self.replicates < 1:
            raise ValidationError(f"replicates must be >= 1, got {self.replicates}")
        if self.measure_at < 0:
            raise ValidationError(f"measure_at must be >= 0, got {self.measure_at}")
        # validates every grid point up front
        for p in self.p_values:
            for a in self.alpha_values:
                RewireParams(p, a, self.base.rewire.retry_cap)

    def cells(self) -> list[tuple[int, float, float]]:
        """``(cell_index, p, alpha)`` in p-major order."""
        out = []
        for i, p in enumerate(self.p_values):
            for j, a in enumerate(self.alpha_values):
                out.append((i * len(self.alpha_values) + j, p, a))
        return out

    def to_dict(self) -> dict:
        return {
            "base": self.base.to_dict(),
            "p_values": list(self.p_values),
            "alpha_values": list(self.alpha_values),
            "replicates": self.replicates,
            "measure_at": self.measure_at,
        }


# -- parsing -------------------------------------------------------------

_INT = (int,)
_NUM = (int, float)


def _take(d: dict, cls, types: dict, prefix: str = "") -> dict:
    if not isinstance(d, dict):
        raise ParseError(f"expected a JSON object for {prefix.rstrip('.') or 'config'}")
    allowed = {f.name for f in fields(cls)}
    out = {}
    for key, value in d.items():
        if key not in allowed:
            raise ParseError("unknown key", key=prefix + key)
        want = types.get(key)
        if want is not None:
            if isinstance(value, bool) and bool not in want:
                raise ParseError(f"wrong type {type(value).__name__}", key=prefix + key)
            if not isinstance(value, want):
                raise ParseError(f"wrong type {type(value).__name__}", key=prefix + key)
        out[key] = value
    return out


def config_from_dict(d: dict) -> SimConfig:
    kw = _take(
        d,
        SimConfig,
        {"n": _INT, "m": _INT, "c": _NUM, "iterations": _INT, "seed": _INT,
         "snapshot_every": _INT, "op_order": (str, list)},
    )
    if "rewire" in kw:
        kw["rewire"] = RewireParams(
            **_take(kw["rewire"], RewireParams,
                    {"p": _NUM, "alpha": _NUM, "retry_cap": _INT}, "rewire.")
        )
    if "noise" in kw:
        kw["noise"] = NoiseParams(
            **_take(kw["noise"], NoiseParams,
                    {"sigma": _NUM, "enabled": (bool,)}, "noise.")
        )
    if "init_state" in kw:
        kw["init_state"] = InitState(
            **_take(kw["init_state"], InitState,
                    {"low": _NUM, "high": _NUM}, "init_state.")
        )
    if "op_order" in kw:
        order = kw["op_order"]
        kw["op_order"] = tuple(order.split("-") if isinstance(order, str) else order)
    for key in ("c",):
        if key in kw:
            kw[key] = float(kw[key])
    return SimConfig(**kw)


def sweep_from_dict(d: dict) -> SweepSpec:
    kw = _take(
        d,
        SweepSpec,
        {"base": (dict,), "p_values": (list,), "alpha_values": (list,),
         "replicates": _INT, "measure_at": _INT},
    )
    for key in ("base", "p_values", "alpha_values"):
        if key not in kw:
            raise ParseError("missing required key", key=key)
    kw["base"] = config_from_dict(kw["base"])
    for key in ("p_values", "alpha_values"):
        vals = kw[key]
        if any(isinstance(x, bool) or not isinstance(x, _NUM) for x in vals):
            raise ParseError("entries must be numbers", key=key)
        kw[key] = tuple(float(x) for x in vals)
    return SweepSpec(**kw)


def _read_json(path) -> dict:
    text = Path(path).read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", line=exc.lineno) from None


def load_config(path) -> SimConfig:
    return config_from_dict(_read_json(path))


def load_sweep(path) -> SweepSpec:
    return sweep_from_dict(_read_json(path))


def with_rewire(config: SimConfig, **changes) -> SimConfig:
    return replace(config, rewire=replace(config.rewire, **changes))
