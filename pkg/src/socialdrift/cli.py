"""Command-line entry point.

Exit codes: 0 success, 1 invalid input (bad arguments, config or data),
2 I/O failure (missing or unwritable files).
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import __version__
from .adaptive import run_simulation
from .config import load_config, load_sweep
from .drift import drift_vector, pearson
from .errors import SocialDriftError, ValidationError
from .graph import check_vector, gen_random_graph
from .io import read_graph, read_states, write_graph, write_snapshots, write_trajectory
from .sweep import run_sweep, write_sweep


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ValidationError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(
        prog="socialdrift",
        description="Social diffusion and global drift on adaptive networks.",
    )
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen-graph", help="write a seeded G(n, m) edge list")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--m", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", required=True)

    s = sub.add_parser("simulate", help="run one adaptive-network simulation")
    s.add_argument("--config", required=True, help="JSON simulation config")
    s.add_argument("--out-traj", required=True, help="trajectory CSV to write")
    s.add_argument("--out-snapshots", metavar="DIR",
                   help="directory for snap_<t>.edges / snap_<t>.csv")

    p = sub.add_parser("predict", help="drift vector and drift rate for a graph/state")
    p.add_argument("--graph", required=True, help="edge-list file")
    p.add_argument("--states", required=True, help="node,state CSV")
    p.add_argument("--c", type=float, required=True, help="diffusion constant")

    w = sub.add_parser("sweep", help="run a p-alpha sweep")
    w.add_argument("--config", required=True, help="JSON sweep config")
    w.add_argument("--out", required=True,
                   help="per-run CSV; a *_summary CSV is written alongside")
    w.add_argument("--workers", type=int, default=1)
    return ap


def _gen_graph(args) -> None:
    if args.n < 1:
        raise ValidationError(f"--n must be >= 1, got {args.n}")
    if args.seed < 0:
        raise ValidationError(f"--seed must be >= 0, got {args.seed}")
    g = gen_random_graph(args.n, args.m, np.random.default_rng(args.seed))
    write_graph(g, args.out)


def _simulate(args) -> None:
    config = load_config(args.config)
    if args.out_snapshots and config.snapshot_every == 0:
        print("note: snapshot_every is 0, no snapshots will be taken",
              file=sys.stderr)
    record = run_simulation(config)
    write_trajectory(record, args.out_traj)
    if args.out_snapshots:
        write_snapshots(record, args.out_snapshots)


def _predict(args, out) -> None:
    g = read_graph(args.graph)
    s = check_vector(g, read_states(args.states), "states")
    v = drift_vector(g)
    rate = args.c * float(v @ s)
    out.write("node,degree,v\n")
    for i, (k, vi) in enumerate(zip(g.degree.tolist(), v.tolist())):
        out.write(f"{i},{k},{vi!r}\n")
    out.write(f"# drift_rate={rate!r} corr={pearson(v, s)!r}\n")


def _sweep(args) -> None:
    if args.workers < 1:
        raise ValidationError(f"--workers must be >= 1, got {args.workers}")
    spec = load_sweep(args.config)
    write_sweep(run_sweep(spec, workers=args.workers), args.out)


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    try:
        args = build_parser().parse_args(argv)
        if args.command == "gen-graph":
            _gen_graph(args)
        elif args.command == "simulate":
            _simulate(args)
        elif args.command == "predict":
            _predict(args, out)
        elif args.command == "sweep":
            _sweep(args)
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    except SocialDriftError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
