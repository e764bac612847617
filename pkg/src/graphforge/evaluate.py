"""Paired input/output metrics, the experiment harness, the normalization
study, and the distance-vector de-anonymization attack.

Ratios compare a generated graph against its input: 1 means the property is
preserved. Undefined ratios (zero denominators, zero-variance correlations)
are reported as None and serialized as NA, never silently coerced to a
number.
"""

from __future__ import annotations

import math
import os
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.spatial.distance import cdist

from . import baselines, forge as forge_mod
from .community import Partition, louvain_maximize, modularity
from .forge import ForgeConfig, edge_probabilities, normalize, normalized_entropy
from .graph import Graph, average_clustering, degree_vector
from .spectral import eigendecompose, low_rank_approx, spectral_norm

# z-score for two-sided 99% confidence under the normal approximation
Z_99 = 2.576

CSV_NA = "NA"

EXPERIMENT_CSV_HEADER = "strategy,dataset,metric,mean,std,ci99,runs"
STUDY_CSV_HEADER = "graph,family,alpha,rule,dist_spectral,dist_normed,entropy"


def _seed_from(*parts: int) -> int:
    """Deterministic 64-bit sub-seed from a tuple of integers."""
    ss = np.random.SeedSequence(entropy=list(parts))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


@dataclass(frozen=True)
class MetricsReport:
    """Paired metrics between an input graph and one generated output."""

    modularity_ratio: float | None
    partition_number_ratio: float | None
    clustering_ratio: float | None
    degree_correlation: float | None
    attribute_modularity_ratios: dict[str, float | None] = field(default_factory=dict)

    def as_items(self) -> list[tuple[str, float | None]]:
        items = [
            ("modularity_ratio", self.modularity_ratio),
            ("partition_number_ratio", self.partition_number_ratio),
            ("clustering_ratio", self.clustering_ratio),
            ("degree_correlation", self.degree_correlation),
        ]
        for name in sorted(self.attribute_modularity_ratios):
            items.append((f"attribute:{name}", self.attribute_modularity_ratios[name]))
        return items


def _attribute_partition(values: Sequence[str]) -> Partition:
    return Partition.from_labels(values)


def compare(input_graph: Graph, output_graph: Graph, rng_seed: int) -> MetricsReport:
    """All paired metrics for one (input, output) pair.

    Both graphs are scored with identically seeded maximization so that
    compare(g, g, seed) returns exact 1 ratios. The output inherits the
    input's attributes by index for the attribute rows.
    """
    if input_graph.n != output_graph.n:
        raise ValueError("input and output graphs must have the same node count")
    louvain_seed = _seed_from(rng_seed, 0)

    part_in, q_in = louvain_maximize(input_graph, louvain_seed)
    if output_graph.num_edges > 0:
        part_out, q_out = louvain_maximize(output_graph, louvain_seed)
        m_out = part_out.m
    else:
        q_out, m_out = 0.0, output_graph.n

    mod_ratio = None if abs(q_in) < 1e-12 else q_out / q_in
    part_ratio = m_out / part_in.m

    clust_in = average_clustering(input_graph)
    clust_out = average_clustering(output_graph)
    clust_ratio = None if clust_in == 0.0 else clust_out / clust_in

    deg_in = degree_vector(input_graph).astype(float)
    deg_out = degree_vector(output_graph).astype(float)
    if deg_in.std() == 0.0 or deg_out.std() == 0.0:
        deg_corr = None
    else:
        deg_corr = float(np.corrcoef(deg_in, deg_out)[0, 1])

    attr_ratios: dict[str, float | None] = {}
    for name, values in input_graph.attributes.items():
        part = _attribute_partition(values)
        q_attr_in = modularity(input_graph, part)
        if abs(q_attr_in) < 1e-12:
            attr_ratios[name] = None
        elif output_graph.num_edges == 0:
            attr_ratios[name] = None
        else:
            attr_ratios[name] = modularity(output_graph, part) / q_attr_in

    return MetricsReport(
        modularity_ratio=mod_ratio,
        partition_number_ratio=part_ratio,
        clustering_ratio=clust_ratio,
        degree_correlation=deg_corr,
        attribute_modularity_ratios=attr_ratios,
    )


@dataclass(frozen=True)
class Strategy:
    """A named graph generator: (input graph, seed) -> output graph."""

    name: str
    make: Callable[[Graph, int], Graph]


def sgf_strategy(alpha: float, rule: str = "truncate", logistic_k: float = forge_mod.DEFAULT_LOGISTIC_K,
                 transformation: str = "modularity") -> Strategy:
    def make(graph: Graph, seed: int) -> Graph:
        cfg = ForgeConfig(alpha=alpha, rule=rule, logistic_k=logistic_k,
                          transformation=transformation, seed=seed)
        return forge_mod.forge(graph, cfg)

    return Strategy(name=f"sgf:{alpha:g}", make=make)


def dcsbm_strategy() -> Strategy:
    """Block-model baseline parameterized from each input graph.

    The group assignment is the input's modularity-maximizing partition; the
    degree sequence and per-block edge counts are read off the input.
    """

    def make(graph: Graph, seed: int) -> Graph:
        part, _ = louvain_maximize(graph, _seed_from(seed, 1))
        cfg = baselines.dcsbm_config_from(graph, part)
        cfg = baselines.DcsbmConfig(
            degrees=cfg.degrees, partition=cfg.partition,
            block_edges=cfg.block_edges, seed=_seed_from(seed, 2),
        )
        return baselines.dcsbm_generate(cfg)

    return Strategy(name="dcsbm", make=make)


def trajanovski_strategy() -> Strategy:
    """Rewiring baseline parameterized from each input graph: its maximized
    modularity becomes the target, with matching node, edge, and community
    counts."""

    def make(graph: Graph, seed: int) -> Graph:
        part, q_star = louvain_maximize(graph, _seed_from(seed, 1))
        cfg = baselines.TrajanovskiConfig(
            q_target=q_star, communities=part.m, n=graph.n,
            num_edges=graph.num_edges, seed=_seed_from(seed, 2),
        )
        return baselines.trajanovski_generate(cfg)

    return Strategy(name="trajanovski", make=make)


@dataclass(frozen=True)
class Dataset:
    name: str
    graphs: tuple[Graph, ...]


@dataclass(frozen=True)
class ExperimentRow:
    strategy: str
    dataset: str
    metric: str
    mean: float | None
    std: float | None
    ci99: float | None
    runs: int


def _aggregate(values: list[float]) -> tuple[float | None, float | None, float | None]:
    if not values:
        return None, None, None
    arr = np.asarray(values, dtype=float)
    mean = float(arr.mean())
    if arr.size < 2:
        return mean, None, None
    std = float(arr.std(ddof=1))
    return mean, std, Z_99 * std / math.sqrt(arr.size)


def max_workers() -> int:
    """Worker cap for experiment runs, from the SGF_THREADS env var (default 1)."""
    raw = os.environ.get("SGF_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def run_experiment(strategies: Sequence[Strategy], datasets: Sequence[Dataset],
                   runs_per_pair: int, rng_seed: int) -> list[ExperimentRow]:
    """Run every strategy against every dataset graph and aggregate metrics.

    Each (strategy, dataset, graph, run) cell owns a sub-seed derived from
    the master seed and its indices, so serial and thread-parallel schedules
    (capped by SGF_THREADS) produce identical tables. Failed runs are
    excluded from aggregates and surface as a `failures` row.
    """
    if runs_per_pair < 2:
        raise ValueError("runs_per_pair must be >= 2")

    jobs = []
    for si, strategy in enumerate(strategies):
        for di, dataset in enumerate(datasets):
            for gi, graph in enumerate(dataset.graphs):
                for run in range(runs_per_pair):
                    jobs.append((si, di, gi, run, graph))

    def execute(job):
        si, di, gi, run, graph = job
        strategy = strategies[si]
        gen_seed = _seed_from(rng_seed, si, di, gi, run, 0)
        cmp_seed = _seed_from(rng_seed, si, di, gi, run, 1)
        try:
            output = strategy.make(graph, gen_seed)
            return si, di, compare(graph, output, cmp_seed), None
        except Exception as exc:  # noqa: BLE001 - strategy failures become rows
            return si, di, None, f"{type(exc).__name__}: {exc}"

    workers = max_workers()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(execute, jobs))
    else:
        results = [execute(job) for job in jobs]

    rows: list[ExperimentRow] = []
    for si, strategy in enumerate(strategies):
        for di, dataset in enumerate(datasets):
            cell = [r for r in results if r[0] == si and r[1] == di]
            reports = [r[2] for r in cell if r[2] is not None]
            failures = sum(1 for r in cell if r[2] is None)
            metric_values: dict[str, list[float]] = {}
            for report in reports:
                for metric, value in report.as_items():
                    if value is not None:
                        metric_values.setdefault(metric, []).append(value)
            for metric in sorted(metric_values):
                mean, std, ci = _aggregate(metric_values[metric])
                rows.append(ExperimentRow(strategy.name, dataset.name, metric,
                                          mean, std, ci, len(metric_values[metric])))
            if failures:
                rows.append(ExperimentRow(strategy.name, dataset.name, "failures",
                                          float(failures), None, None, len(cell)))
    return rows


def _fmt(value: float | None) -> str:
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return CSV_NA
    return repr(float(value))


def experiment_csv(rows: Sequence[ExperimentRow]) -> str:
    lines = [EXPERIMENT_CSV_HEADER]
    for r in rows:
        lines.append(f"{r.strategy},{r.dataset},{r.metric},{_fmt(r.mean)},{_fmt(r.std)},{_fmt(r.ci99)},{r.runs}")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class StudyRow:
    graph: str
    family: str
    alpha: float
    rule: str
    dist_spectral: float
    dist_normed: float | None
    entropy: float | None


def normalization_study(labeled_graphs: Sequence[tuple[str, str, Graph]],
                        alphas: Sequence[float],
                        rules: Sequence[str] = forge_mod.NORMALIZATION_RULES) -> list[StudyRow]:
    """Distance and entropy of each normalization rule across an alpha grid.

    Runs the adjacency-mode pipeline (the filter acts on A itself): for each
    (graph, alpha, rule) reports the raw filter distance ||A - A~||_2, the
    post-normalization distance ||A - norm(A~)||_2, and the normalized
    entropy of the probability matrix. Rows where the scale rule degenerates
    carry None for the normalized columns.
    """
    rows: list[StudyRow] = []
    for graph_id, family, graph in labeled_graphs:
        a = graph.adjacency()
        eig = eigendecompose(a)
        for alpha in alphas:
            a_tilde = low_rank_approx(eig, alpha)
            dist_spectral = spectral_norm(a - a_tilde)
            for rule in rules:
                try:
                    probs = normalize(a_tilde, rule)
                except ValueError:
                    rows.append(StudyRow(graph_id, family, alpha, rule,
                                         dist_spectral, None, None))
                    continue
                rows.append(StudyRow(
                    graph_id, family, alpha, rule, dist_spectral,
                    spectral_norm(a - probs),
                    normalized_entropy(probs).normalized,
                ))
    return rows


def study_csv(rows: Sequence[StudyRow]) -> str:
    lines = [STUDY_CSV_HEADER]
    for r in rows:
        lines.append(f"{r.graph},{r.family},{r.alpha:g},{r.rule},"
                     f"{_fmt(r.dist_spectral)},{_fmt(r.dist_normed)},{_fmt(r.entropy)}")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class AttackConfig:
    seed_fraction: float = 0.05
    seed: int = 0

    def __post_init__(self):
        if not 0.0 < self.seed_fraction <= 1.0:
            raise ValueError(f"seed_fraction must lie in (0, 1], got {self.seed_fraction}")


def _bfs_distances(nbrs: list[set[int]], source: int, n: int, sentinel: int) -> np.ndarray:
    dist = np.full(n, sentinel, dtype=float)
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in nbrs[u]:
            if dist[v] == sentinel:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def random_guess_rate(n: int, seed_fraction: float) -> float:
    """Per-node success probability of uniformly guessing the mapping."""
    non_seeds = n - math.ceil(seed_fraction * n)
    return 1.0 / non_seeds if non_seeds > 0 else 1.0


def dv_attack(original: Graph, anonymized: Graph, config: AttackConfig,
              seeds: Sequence[int] | None = None) -> float:
    """Distance-vector re-identification rate between two aligned graphs.

    A seed set of ceil(seed_fraction * n) nodes is assumed correctly mapped
    (sampled uniformly unless given). Every other node gets a signature of
    shortest-path distances to the seeds in its own graph (unreachable pairs
    get sentinel n, larger than any true distance); pairs are then matched
    greedily by ascending Euclidean signature distance, each node used once.
    Returns the fraction of non-seed nodes mapped to their true counterpart.
    """
    if original.n != anonymized.n:
        raise ValueError("graphs must have the same node count")
    n = original.n
    if seeds is None:
        rng = np.random.default_rng(config.seed)
        k = math.ceil(config.seed_fraction * n)
        seed_nodes = sorted(int(s) for s in rng.choice(n, size=k, replace=False))
    else:
        seed_nodes = sorted(set(int(s) for s in seeds))
        if any(s < 0 or s >= n for s in seed_nodes):
            raise ValueError("seed node out of range")
    non_seeds = [v for v in range(n) if v not in set(seed_nodes)]
    if not non_seeds:
        return 1.0

    sigs = []
    for graph in (original, anonymized):
        nbrs = graph.neighbor_sets()
        dist_rows = [_bfs_distances(nbrs, s, n, sentinel=n) for s in seed_nodes]
        sigs.append(np.stack(dist_rows, axis=1)[non_seeds])
    pair_dist = cdist(sigs[0], sigs[1])

    order = np.argsort(pair_dist.ravel(), kind="stable")
    used_left = np.zeros(len(non_seeds), dtype=bool)
    used_right = np.zeros(len(non_seeds), dtype=bool)
    hits = 0
    matched = 0
    width = len(non_seeds)
    for flat in order:
        i, j = divmod(int(flat), width)
        if used_left[i] or used_right[j]:
            continue
        used_left[i] = True
        used_right[j] = True
        matched += 1
        if non_seeds[i] == non_seeds[j]:
            hits += 1
        if matched == width:
            break
    return hits / width
