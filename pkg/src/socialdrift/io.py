"""Plain-text file formats.

Edge list::

    # n=5
    0 1
    1 4

State CSV: header ``node,state``, one row per node in ascending order.

Reals are written with ``repr`` (shortest round-trip form), so reading a
file back reproduces every float bit for bit.
"""

from __future__ import annotations

import csv
import re
from pathlib import Path

import numpy as np

from .adaptive import TrajectoryRecord
from .errors import ParseError
from .graph import Graph, build_graph

_HEADER = re.compile(r"#\s*n\s*=\s*(\d+)\s*$")


def write_edge_list(edges, n: int, path) -> None:
    lines = [f"# n={n}"]
    lines += [f"{u} {v}" for u, v in sorted(edges)]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_graph(g: Graph, path) -> None:
    write_edge_list(g.edge_list(), g.n, path)


def read_graph(path) -> Graph:
    n = None
    edges = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                hit = _HEADER.match(line)
                if hit and n is None:
                    n = int(hit.group(1))
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ParseError("expected two node ids", line=lineno)
            try:
                u, v = int(parts[0]), int(parts[1])
            except ValueError:
                raise ParseError("node ids must be base-10 integers", line=lineno) from None
            if u > v:
                raise ParseError(f"edge ({u}, {v}) not written as u < v", line=lineno)
            edges.append((u, v))
    if n is None:
        raise ParseError("missing '# n=<N>' header")
    return build_graph(n, edges)


def write_states(s, path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("node,state\n")
        for i, x in enumerate(np.asarray(s, dtype=np.float64).tolist()):
            fh.write(f"{i},{x!r}\n")


def read_states(path) -> np.ndarray:
    with open(path, encoding="utf-8", newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or [h.strip() for h in rows[0]] != ["node", "state"]:
        raise ParseError("expected header 'node,state'", line=1)
    out = []
    for lineno, row in enumerate(rows[1:], 2):
        if not row:
            continue
        if len(row) != 2:
            raise ParseError("expected two fields", line=lineno)
        try:
            node, value = int(row[0]), float(row[1])
        except ValueError:
            raise ParseError("unparseable row", line=lineno) from None
        if node != len(out):
            raise ParseError(f"node ids must run 0..n-1 in order, got {node}", line=lineno)
        out.append(value)
    return np.array(out, dtype=np.float64)


def _write_rows(path, header, rows) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(repr(x) for x in row) + "\n")


def write_trajectory(record: TrajectoryRecord, path) -> None:
    _write_rows(path, TrajectoryRecord.COLUMNS, record.rows())


def read_trajectory(path) -> dict[str, np.ndarray]:
    """Columns of a trajectory CSV keyed by header name."""
    with open(path, encoding="utf-8", newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or tuple(rows[0]) != TrajectoryRecord.COLUMNS:
        raise ParseError("unexpected trajectory header", line=1)
    body = rows[1:]
    out = {"iteration": np.array([int(r[0]) for r in body], dtype=np.int64)}
    for j, name in enumerate(TrajectoryRecord.COLUMNS[1:], 1):
        out[name] = np.array([float(r[j]) for r in body], dtype=np.float64)
    return out


def write_snapshots(record: TrajectoryRecord, directory) -> list[Path]:
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    written = []
    n = record.config.n
    for snap in record.snapshots:
        edges = d / f"snap_{snap.iteration}.edges"
        states = d / f"snap_{snap.iteration}.csv"
        write_edge_list(snap.edges, n, edges)
        write_states(snap.state, states)
        written += [edges, states]
    return written
