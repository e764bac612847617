"""Simple undirected graphs: representation, degrees, clustering, and text I/O.

Nodes are dense integers 0..n-1 so that every matrix in the pipeline stays
index-aligned with the graph. Graphs are immutable after construction and
safe to share between threads.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

import numpy as np

# Category assigned to nodes missing from an attribute file.
MISSING_VALUE = "__missing__"


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph with optional categorical node attributes.

    `edges` holds unordered pairs stored as (i, j) with i < j. Attribute
    vectors, when present, have length exactly `n`; values are opaque
    categories compared only by equality.
    """

    n: int
    edges: frozenset[tuple[int, int]]
    attributes: dict[str, tuple[str, ...]] = field(default_factory=dict)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"node count must be non-negative, got {self.n}")
        for i, j in self.edges:
            if i == j:
                raise ValueError(f"self-loop on node {i}")
            if not (i < j):
                raise ValueError(f"edge ({i}, {j}) not stored with i < j")
            if i < 0 or j >= self.n:
                raise ValueError(f"edge ({i}, {j}) outside node range [0, {self.n})")
        for name, values in self.attributes.items():
            if len(values) != self.n:
                raise ValueError(
                    f"attribute {name!r} has {len(values)} values for {self.n} nodes"
                )

    @classmethod
    def from_edges(cls, n, edges, attributes=None):
        """Build a graph from any iterable of (i, j) pairs, normalizing orientation."""
        canon = set()
        for i, j in edges:
            i, j = int(i), int(j)
            if i == j:
                raise ValueError(f"self-loop on node {i}")
            canon.add((i, j) if i < j else (j, i))
        attrs = {k: tuple(v) for k, v in (attributes or {}).items()}
        return cls(n=n, edges=frozenset(canon), attributes=attrs)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def adjacency(self) -> np.ndarray:
        """Dense symmetric 0/1 adjacency matrix with zero diagonal."""
        a = np.zeros((self.n, self.n))
        for i, j in self.edges:
            a[i, j] = 1.0
            a[j, i] = 1.0
        return a

    def neighbor_sets(self) -> list[set[int]]:
        nbrs: list[set[int]] = [set() for _ in range(self.n)]
        for i, j in self.edges:
            nbrs[i].add(j)
            nbrs[j].add(i)
        return nbrs

    def with_attributes(self, attributes) -> "Graph":
        """Copy of this graph with the given attribute map (replaces any existing)."""
        return Graph.from_edges(self.n, self.edges, attributes)


def degree_vector(graph: Graph) -> np.ndarray:
    """Per-node degree counts; the sum always equals 2 * num_edges."""
    degrees = np.zeros(graph.n, dtype=np.int64)
    for i, j in graph.edges:
        degrees[i] += 1
        degrees[j] += 1
    return degrees


def average_clustering(graph: Graph) -> float:
    """Mean local clustering coefficient.

    Nodes of degree < 2 contribute 0 to the mean (they close no triads);
    the empty graph returns 0.
    """
    if graph.n == 0:
        return 0.0
    nbrs = graph.neighbor_sets()
    total = 0.0
    for v in range(graph.n):
        k = len(nbrs[v])
        if k < 2:
            continue
        links = 0
        for u in nbrs[v]:
            links += len(nbrs[v] & nbrs[u])
        # each triangle through v counted twice in the loop above
        total += links / (k * (k - 1))
    return total / graph.n


def load_edge_list(text: str) -> Graph:
    """Parse an edge-list document into a Graph.

    Format: UTF-8 text, one `i j` pair per line, `#`-prefixed comment lines,
    and an optional `#nodes N` directive fixing the node count (needed to
    represent trailing isolated nodes). Duplicate and reversed-duplicate
    lines collapse to a single undirected edge.
    """
    declared_n = None
    edges = set()
    max_id = -1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0] == "#nodes":
            if len(tokens) != 2 or not tokens[1].isdigit():
                raise ValueError(f"line {lineno}: malformed #nodes directive: {raw!r}")
            if declared_n is not None:
                raise ValueError(f"line {lineno}: duplicate #nodes directive")
            declared_n = int(tokens[1])
            continue
        if line.startswith("#"):
            continue
        if len(tokens) != 2:
            raise ValueError(f"line {lineno}: expected two integer tokens, got {raw!r}")
        try:
            i, j = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise ValueError(f"line {lineno}: non-integer node id in {raw!r}") from None
        if i < 0 or j < 0:
            raise ValueError(f"line {lineno}: negative node id in {raw!r}")
        if i == j:
            raise ValueError(f"line {lineno}: self-loop on node {i}")
        edges.add((i, j) if i < j else (j, i))
        max_id = max(max_id, i, j)
    n = (max_id + 1) if declared_n is None else declared_n
    if max_id >= n:
        raise ValueError(f"edge endpoint {max_id} outside declared node count {n}")
    return Graph.from_edges(n, edges)


def write_edge_list(graph: Graph) -> str:
    """Serialize a graph; round-trips exactly through load_edge_list."""
    lines = [f"#nodes {graph.n}"]
    lines.extend(f"{i} {j}" for i, j in graph.sorted_edges())
    return "\n".join(lines)


def load_attributes(text: str, graph: Graph) -> Graph:
    """Attach categorical node attributes from CSV text.

    The header must start with a `node` column; remaining columns become
    attribute names. Nodes absent from the file receive MISSING_VALUE.
    """
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise ValueError("attribute CSV is empty") from None
    if not header or header[0].strip() != "node":
        raise ValueError("attribute CSV header must start with 'node'")
    names = [h.strip() for h in header[1:]]
    if not names:
        raise ValueError("attribute CSV declares no attribute columns")
    columns: dict[str, list[str]] = {
        name: [MISSING_VALUE] * graph.n for name in names
    }
    seen: set[int] = set()
    for lineno, row in enumerate(reader, start=2):
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != len(header):
            raise ValueError(f"row {lineno}: expected {len(header)} fields, got {len(row)}")
        try:
            node = int(row[0])
        except ValueError:
            raise ValueError(f"row {lineno}: non-integer node id {row[0]!r}") from None
        if node < 0 or node >= graph.n:
            raise ValueError(f"row {lineno}: node id {node} out of range [0, {graph.n})")
        if node in seen:
            raise ValueError(f"row {lineno}: duplicate row for node {node}")
        seen.add(node)
        for name, cell in zip(names, row[1:]):
            columns[name][node] = cell.strip()
    merged = dict(graph.attributes)
    merged.update({name: tuple(vals) for name, vals in columns.items()})
    return graph.with_attributes(merged)
