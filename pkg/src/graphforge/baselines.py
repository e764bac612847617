"""Competing modularity-targeting generators used for comparison.

trajanovski_generate starts from a maximum-modularity community skeleton
(internally connected communities joined by a tree of single links) and
applies seeded rewiring moves that lower the fixed-partition modularity
until it reaches a target. dcsbm_generate places an exact number of edges
between each pair of groups, choosing endpoints proportionally to target
degree.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .community import Partition, modularity
from .graph import Graph

EDGE_RETRY_LIMIT = 100
# consecutive failed rewiring candidates before declaring the target unreachable
_STALE_LIMIT = 500
_DECREASE_EPS = 1e-12


def _community_sizes(n: int, m: int) -> list[int]:
    base, rem = divmod(n, m)
    return [base + 1] * rem + [base] * (m - rem)


def community_skeleton_partition(n: int, communities: int) -> Partition:
    """The fixed partition used by the rewiring generator: contiguous near-equal blocks."""
    labels: list[int] = []
    for c, s in enumerate(_community_sizes(n, communities)):
        labels.extend([c] * s)
    return Partition(assignment=tuple(labels))


@dataclass(frozen=True)
class TrajanovskiConfig:
    q_target: float
    communities: int
    n: int
    num_edges: int
    seed: int = 0

    def __post_init__(self):
        if self.communities < 1 or self.communities > self.n:
            raise ValueError("need 1 <= communities <= n")
        if self.num_edges < self.n - 1:
            raise ValueError(
                f"need at least n-1 = {self.n - 1} edges to connect the skeleton"
            )
        sizes = _community_sizes(self.n, self.communities)
        capacity = sum(s * (s - 1) // 2 for s in sizes) + (self.communities - 1)
        if self.num_edges > capacity:
            raise ValueError(
                f"{self.num_edges} edges exceed skeleton capacity {capacity}"
            )


def _initial_graph(config: TrajanovskiConfig, rng) -> set[tuple[int, int]]:
    """Spanning tree per community, chain of single inter-community links,
    then extra intra edges balanced across communities (minimizes the degree
    imbalance penalty, which maximizes the fixed-partition modularity)."""
    sizes = _community_sizes(config.n, config.communities)
    blocks: list[list[int]] = []
    start = 0
    for s in sizes:
        blocks.append(list(range(start, start + s)))
        start += s
    edges: set[tuple[int, int]] = set()
    comm_degree = [0.0] * config.communities

    def add(u: int, v: int, cu: int, cv: int):
        edges.add((u, v) if u < v else (v, u))
        comm_degree[cu] += 1
        comm_degree[cv] += 1

    for c, nodes in enumerate(blocks):
        for idx in range(1, len(nodes)):
            parent = nodes[int(rng.integers(idx))]
            add(parent, nodes[idx], c, c)
    for c in range(config.communities - 1):
        u = blocks[c][int(rng.integers(len(blocks[c])))]
        v = blocks[c + 1][int(rng.integers(len(blocks[c + 1])))]
        add(u, v, c, c + 1)

    remaining = config.num_edges - len(edges)
    capacity = [s * (s - 1) // 2 for s in sizes]
    used = [len(b) - 1 for b in blocks]
    for _ in range(remaining):
        open_comms = [c for c in range(config.communities) if used[c] < capacity[c]]
        c = min(open_comms, key=lambda cc: (comm_degree[cc], cc))
        nodes = blocks[c]
        placed = False
        for _ in range(EDGE_RETRY_LIMIT):
            u, v = rng.choice(len(nodes), size=2, replace=False)
            u, v = nodes[int(u)], nodes[int(v)]
            key = (u, v) if u < v else (v, u)
            if key not in edges:
                add(u, v, c, c)
                used[c] += 1
                placed = True
                break
        if not placed:
            # dense community: fall back to scanning its free pairs
            free = [
                (a, b)
                for ai, a in enumerate(nodes)
                for b in nodes[ai + 1:]
                if (a, b) not in edges
            ]
            a, b = free[int(rng.integers(len(free)))]
            add(a, b, c, c)
            used[c] += 1
    return edges


class _EdgePools:
    """Edge set split into intra/inter pools supporting O(1) sample and swap-remove."""

    def __init__(self, edges, labels):
        self.labels = labels
        self.edges = set(edges)
        self.intra: list[tuple[int, int]] = []
        self.inter: list[tuple[int, int]] = []
        self.pos: dict[tuple[int, int], int] = {}
        for e in sorted(self.edges):
            self._append(e)

    def _pool(self, e):
        return self.intra if self.labels[e[0]] == self.labels[e[1]] else self.inter

    def _append(self, e):
        pool = self._pool(e)
        self.pos[e] = len(pool)
        pool.append(e)

    def sample(self, pool, rng):
        return pool[int(rng.integers(len(pool)))] if pool else None

    def remove(self, e):
        pool = self._pool(e)
        idx = self.pos.pop(e)
        last = pool.pop()
        if last != e:
            pool[idx] = last
            self.pos[last] = idx
        self.edges.discard(e)

    def add(self, e):
        self.edges.add(e)
        self._append(e)


def trajanovski_generate(config: TrajanovskiConfig, q_history: list[float] | None = None) -> Graph:
    """Rewire from the maximum-modularity skeleton down to a target value.

    The community partition stays fixed throughout; every accepted move
    strictly lowers the fixed-partition modularity, and rewiring stops once
    it reaches q_target (the last move may overshoot by at most one step) or
    no decreasing move turns up. Move vocabulary: migrate an intra edge to a
    cross-community pair, swap one endpoint of an inter edge, or relocate an
    intra edge inside its community (the relocation never changes the
    fixed-partition value, so it cannot drive progress).

    If q_history is given, it receives the skeleton's fixed-partition
    modularity followed by the value after each accepted move. Warns instead
    of raising when the target exceeds the skeleton's modularity or turns out
    to be unreachable.
    """
    rng = np.random.default_rng(config.seed)
    partition = community_skeleton_partition(config.n, config.communities)
    labels = partition.assignment
    edges = _initial_graph(config, rng)
    total = 2.0 * config.num_edges

    degree = np.zeros(config.n)
    for u, v in edges:
        degree[u] += 1
        degree[v] += 1
    comm_degree = np.bincount(labels, weights=degree, minlength=config.communities).astype(float)
    ksq = float(np.sum(comm_degree**2))
    intra = sum(1 for u, v in edges if labels[u] == labels[v])
    q = 2.0 * intra / total - ksq / total**2
    if q_history is not None:
        q_history.append(q)

    if config.q_target > q:
        warnings.warn(
            f"target modularity {config.q_target} exceeds skeleton modularity {q:.6f}; "
            "returning the unmodified skeleton"
        )
        return Graph.from_edges(config.n, edges)

    pools = _EdgePools(edges, labels)
    n = config.n

    def random_pair(cross_only: bool, same_comm_as: int | None):
        for _ in range(EDGE_RETRY_LIMIT):
            u = int(rng.integers(n))
            v = int(rng.integers(n))
            if u == v:
                continue
            if cross_only and labels[u] == labels[v]:
                continue
            if same_comm_as is not None and not (
                labels[u] == same_comm_as and labels[v] == same_comm_as
            ):
                continue
            key = (u, v) if u < v else (v, u)
            if key in pools.edges:
                continue
            return key
        return None

    def delta_q(removed, added):
        d_intra = 0
        deltas: dict[int, float] = {}
        for (u, v), sign in ((removed, -1.0), (added, 1.0)):
            cu, cv = labels[u], labels[v]
            if cu == cv:
                d_intra += int(sign)
            deltas[cu] = deltas.get(cu, 0.0) + sign
            deltas[cv] = deltas.get(cv, 0.0) + sign
        d_ksq = 0.0
        for c, d in deltas.items():
            d_ksq += (comm_degree[c] + d) ** 2 - comm_degree[c] ** 2
        return 2.0 * d_intra / total - d_ksq / total**2, d_intra, deltas

    stale = 0
    while q > config.q_target and stale < _STALE_LIMIT:
        kind = int(rng.integers(3))
        candidate = None
        if kind == 0:  # intra edge -> cross-community pair
            old = pools.sample(pools.intra, rng)
            new = random_pair(cross_only=True, same_comm_as=None)
            if old and new:
                candidate = (old, new)
        elif kind == 1:  # swap one endpoint of an inter edge
            old = pools.sample(pools.inter, rng)
            if old:
                keep = old[int(rng.integers(2))]
                for _ in range(EDGE_RETRY_LIMIT):
                    w = int(rng.integers(n))
                    if w == keep or labels[w] == labels[keep]:
                        continue
                    key = (keep, w) if keep < w else (w, keep)
                    if key in pools.edges:
                        continue
                    candidate = (old, key)
                    break
        else:  # relocate an intra edge inside its community
            old = pools.sample(pools.intra, rng)
            if old:
                new = random_pair(cross_only=False, same_comm_as=labels[old[0]])
                if new:
                    candidate = (old, new)
        if candidate is None:
            stale += 1
            continue
        dq, d_intra, deltas = delta_q(*candidate)
        if dq >= -_DECREASE_EPS:
            stale += 1
            continue
        old, new = candidate
        pools.remove(old)
        pools.add(new)
        intra += d_intra
        for c, d in deltas.items():
            comm_degree[c] += d
        ksq = float(np.sum(comm_degree**2))
        q = 2.0 * intra / total - ksq / total**2
        if q_history is not None:
            q_history.append(q)
        stale = 0

    if q > config.q_target:
        warnings.warn(
            f"rewiring stalled at fixed-partition modularity {q:.6f} "
            f"above target {config.q_target}"
        )
    return Graph.from_edges(config.n, pools.edges)


@dataclass(frozen=True)
class DcsbmConfig:
    """Inputs for degree-corrected block sampling, as extracted from a graph.

    block_edges[r][s] is the exact number of edges to place between groups r
    and s (within r when r == s); row degree sums must match:
    sum of degrees in group r == 2 * block_edges[r][r] + sum of off-diagonal row r.
    """

    degrees: tuple[int, ...]
    partition: Partition
    block_edges: tuple[tuple[int, ...], ...]
    seed: int = 0

    def __post_init__(self):
        n = len(self.degrees)
        if len(self.partition.assignment) != n:
            raise ValueError("partition length must match degree sequence length")
        if any(d < 0 for d in self.degrees):
            raise ValueError("degrees must be non-negative")
        m = self.partition.m
        b = np.asarray(self.block_edges)
        if b.shape != (m, m):
            raise ValueError(f"block_edges must be {m}x{m}, got {b.shape}")
        if np.any(b < 0):
            raise ValueError("block edge counts must be non-negative")
        if not np.array_equal(b, b.T):
            raise ValueError("block_edges must be symmetric")
        group_degree = np.bincount(self.partition.assignment, weights=np.asarray(self.degrees, dtype=float), minlength=m)
        expected = 2 * np.diag(b) + (b.sum(axis=1) - np.diag(b))
        if not np.array_equal(group_degree.astype(int), expected.astype(int)):
            raise ValueError("group degree sums inconsistent with block edge counts")


def dcsbm_config_from(graph: Graph, partition: Partition) -> DcsbmConfig:
    """Extract the block-model inputs (degrees, groups, block edge counts)."""
    if len(partition.assignment) != graph.n:
        raise ValueError("partition length must match graph node count")
    labels = partition.assignment
    m = partition.m
    block = np.zeros((m, m), dtype=int)
    degrees = [0] * graph.n
    for i, j in graph.edges:
        degrees[i] += 1
        degrees[j] += 1
        ci, cj = labels[i], labels[j]
        block[ci, cj] += 1
        if ci != cj:
            block[cj, ci] += 1
    return DcsbmConfig(
        degrees=tuple(degrees),
        partition=partition,
        block_edges=tuple(tuple(int(x) for x in row) for row in block),
    )


def dcsbm_generate(config: DcsbmConfig) -> Graph:
    """Sample a simple graph with exact per-block edge counts.

    Within each group, endpoints are drawn proportionally to target degree;
    self-loops and duplicate edges are resampled up to a retry cap, after
    which the block is declared over-dense.
    """
    rng = np.random.default_rng(config.seed)
    labels = config.partition.assignment
    m = config.partition.m
    members: list[np.ndarray] = []
    cumweights: list[np.ndarray] = []
    for r in range(m):
        idx = np.array([v for v in range(len(labels)) if labels[v] == r])
        w = np.array([config.degrees[v] for v in idx], dtype=float)
        members.append(idx)
        cumweights.append(np.cumsum(w))

    def pick(r: int) -> int:
        cum = cumweights[r]
        u = rng.random() * cum[-1]
        return int(members[r][np.searchsorted(cum, u, side="right")])

    edges: set[tuple[int, int]] = set()
    block = np.asarray(config.block_edges)
    for r in range(m):
        for s in range(r, m):
            if block[r, s] and (cumweights[r][-1] == 0 or cumweights[s][-1] == 0):
                raise ValueError(f"block ({r}, {s}) has edges but a zero-degree group")
            for _ in range(int(block[r, s])):
                for _attempt in range(EDGE_RETRY_LIMIT):
                    u = pick(r)
                    v = pick(s)
                    if u == v:
                        continue
                    key = (u, v) if u < v else (v, u)
                    if key in edges:
                        continue
                    edges.add(key)
                    break
                else:
                    raise ValueError(
                        f"block ({r}, {s}) too dense: could not place "
                        f"{block[r, s]} distinct edges"
                    )
    return Graph.from_edges(len(labels), edges)
