"""Plain-text edge lists (KONECT/SNAP style) in and out.

Rows are whitespace-separated; ``%`` and ``#`` start comment lines. The first
two tokens of a data row are endpoint labels, anything after them (weights,
timestamps) is ignored. Input is read as undirected and unweighted:
self-loops are dropped and repeated pairs collapsed.
"""

from __future__ import annotations

import io
import os
from dataclasses import dataclass, field
from typing import Dict

import numpy as np

from .graph import (Graph, GraphError, average_shortest_path, component_count,
                    global_clustering)


class EdgeListParseError(GraphError):
    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass
class EdgeListDocument:
    source_path: str
    raw_edge_count: int = 0
    dropped_self_loops: int = 0
    dropped_duplicates: int = 0
    id_map: Dict[str, int] = field(default_factory=dict)

    @property
    def edge_count(self):
        return self.raw_edge_count - self.dropped_self_loops - self.dropped_duplicates


def _read_text(source):
    if isinstance(source, (bytes, bytearray)):
        return source.decode("utf-8"), "<bytes>"
    if isinstance(source, io.IOBase) or hasattr(source, "read"):
        data = source.read()
        return (data.decode("utf-8") if isinstance(data, bytes) else data), getattr(source, "name", "<stream>")
    path = os.fspath(source)
    with open(path, "rb") as fh:
        return fh.read().decode("utf-8"), path


def _canonical_size(text):
    for line in text.splitlines():
        parts = line.split()
        if not parts:
            continue
        if parts[0] not in ("%", "#"):
            return None
        if len(parts) == 3 and parts[1] == "nodes":
            return int(parts[2])
    return None


def parse_edge_list(source, source_path=None):
    """Parse ``source`` (path, bytes or text stream) into ``(graph, document)``.

    Node labels get dense ids in order of first appearance. A file whose
    leading comments contain ``% nodes N`` (the canonical form written by
    :func:`format_edge_list`) keeps its integer ids as they are, so
    canonical files round-trip exactly, isolated nodes included.
    """
    text, origin = _read_text(source)
    doc = EdgeListDocument(source_path or origin)
    ids = doc.id_map
    fixed = _canonical_size(text)
    if fixed is not None:
        ids.update((str(i), i) for i in range(fixed))
    seen = set()
    edges = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped[0] in "%#":
            continue
        tokens = stripped.split()
        if len(tokens) < 2:
            raise EdgeListParseError(f"expected two endpoint ids, got {stripped!r}", lineno)
        if fixed is not None and (tokens[0] not in ids or tokens[1] not in ids):
            raise EdgeListParseError(f"id outside 0..{fixed - 1} in canonical file", lineno)
        u = ids.setdefault(tokens[0], len(ids))
        v = ids.setdefault(tokens[1], len(ids))
        doc.raw_edge_count += 1
        if u == v:
            doc.dropped_self_loops += 1
            continue
        key = (u, v) if u < v else (v, u)
        if key in seen:
            doc.dropped_duplicates += 1
            continue
        seen.add(key)
        edges.append(key)
    if not ids:
        raise EdgeListParseError("edge list holds no data rows")
    return Graph.from_edges(len(ids), np.array(edges, dtype=np.int64).reshape(-1, 2)), doc


def format_edge_list(g: Graph, header=None) -> str:
    """Canonical form: ``% nodes N`` then sorted ``u v`` rows with ``u < v``."""
    lines = [f"% {line}\n" for line in (header.splitlines() if header else [])]
    lines.append(f"% nodes {g.n}\n")
    lines.extend(f"{u} {v}\n" for u, v in g.edges().tolist())
    return "".join(lines)


def write_edge_list(g: Graph, path, header=None):
    with open(path, "w") as fh:
        fh.write(format_edge_list(g, header))


def read_graph(path) -> Graph:
    return parse_edge_list(path)[0]


def graph_summary(g: Graph, doc: EdgeListDocument = None) -> dict:
    summary = {
        "N": g.n,
        "edges": g.n_edges,
        "mean_degree": 2.0 * g.n_edges / g.n,
        "clustering": global_clustering(g),
        "avg_path_length": average_shortest_path(g) if g.n_edges else 0.0,
        "components": component_count(g),
        "warnings": [],
    }
    if g.n_edges == 0:
        summary["warnings"].append("graph has no edges after cleaning")
    if doc is not None:
        summary.update(
            source=doc.source_path,
            raw_edges=doc.raw_edge_count,
            dropped_self_loops=doc.dropped_self_loops,
            dropped_duplicates=doc.dropped_duplicates,
        )
    return summary
