"""Acceptance suite: one test per release criterion, each printing a
PASS/FAIL line. Tolerances are fixed here, not calibrated elsewhere."""

import itertools
import time

import numpy as np
import pytest
from scipy.stats import spearmanr

from graphforge.baselines import DcsbmConfig, dcsbm_config_from, dcsbm_generate
from graphforge.cli import dispatch
from graphforge.community import (
    Partition,
    brute_force_max_modularity,
    louvain_maximize,
    modularity,
)
from graphforge.evaluate import (
    AttackConfig,
    Dataset,
    _seed_from,
    compare,
    dv_attack,
    normalization_study,
    run_experiment,
    sgf_strategy,
)
from graphforge.forge import ForgeConfig, forge, normalized_entropy
from graphforge.generators import (
    GIRVAN_COMMUNITIES,
    GIRVAN_NODES,
    GIRVAN_P_IN,
    GIRVAN_P_OUT,
    PlantedPartitionConfig,
    barabasi_albert,
    erdos_renyi,
    planted_partition,
)
from graphforge.graph import Graph, degree_vector, write_edge_list

from conftest import disjoint_cliques


def _report(criterion: str, ok: bool, detail: str = ""):
    status = "PASS" if ok else "FAIL"
    print(f"ACCEPTANCE {criterion}: {status} {detail}".rstrip())
    return ok


# ---------------------------------------------------------------- criterion 1


def test_c01_exact_reproduction_at_alpha_one():
    start = time.monotonic()
    rng = np.random.default_rng(101)
    mismatches = 0
    for trial in range(50):
        n = int(rng.integers(20, 201))
        if trial % 2 == 0:
            g = erdos_renyi(n, 0.08, seed=int(rng.integers(2**32)))
        else:
            m = int(rng.choice([2, 4]))
            n -= n % m
            g, _ = planted_partition(PlantedPartitionConfig(
                n=n, communities=m, p_in=0.3, p_out=0.05,
                seed=int(rng.integers(2**32))))
        if g.num_edges == 0:
            g = Graph.from_edges(n, [(0, 1)])
        out = forge(g, ForgeConfig(alpha=1.0, rule="truncate",
                                   transformation="modularity",
                                   seed=int(rng.integers(2**32))))
        if out.edges != g.edges:
            mismatches += 1
    elapsed = time.monotonic() - start
    ok = mismatches == 0 and elapsed < 60.0
    assert _report("01 alpha-1 exactness",
                   ok, f"(mismatches={mismatches}, {elapsed:.1f}s)")


# ---------------------------------------------------------------- criterion 2


def test_c02_tail_eigenvalue_equals_residual_norm():
    from graphforge.spectral import eigendecompose, low_rank_approx, approx_error_bound

    rng = np.random.default_rng(202)
    worst = 0.0
    for _ in range(100):
        n = int(rng.integers(2, 51))
        m = rng.normal(size=(n, n))
        m = (m + m.T) / 2
        eig = eigendecompose(m)
        for alpha in (0.2, 0.5, 0.8):
            resid = m - low_rank_approx(eig, alpha)
            direct = np.linalg.norm(resid, 2)
            worst = max(worst, abs(direct - approx_error_bound(eig, alpha)))
    ok = worst <= 1e-8
    assert _report("02 residual norm bound", ok, f"(worst gap={worst:.2e})")


# ---------------------------------------------------------------- criterion 3


def _partitions_of(n):
    if n == 0:
        yield []
        return
    for smaller in _partitions_of(n - 1):
        for idx in range(len(smaller)):
            yield smaller[:idx] + [smaller[idx] + [n - 1]] + smaller[idx + 1:]
        yield smaller + [[n - 1]]


def _oracle_q(g: Graph, labels) -> float:
    a = g.adjacency()
    k = degree_vector(g).astype(float)
    total = k.sum()
    q = 0.0
    for i in range(g.n):
        for j in range(g.n):
            if labels[i] == labels[j]:
                q += a[i, j] - k[i] * k[j] / total
    return q / total


def test_c03_modularity_matches_brute_force_summation():
    rng = np.random.default_rng(303)
    corpus = [
        Graph.from_edges(2, [(0, 1)]),
        Graph.from_edges(4, [(0, 1), (2, 3)]),
        Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)]),
        Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4)]),
    ]
    for _ in range(12):
        n = int(rng.integers(2, 7))
        edges = [d for d in itertools.combinations(range(n), 2) if rng.random() < 0.5]
        if edges:
            corpus.append(Graph.from_edges(n, edges))
    worst = 0.0
    checked = 0
    for g in corpus:
        for blocks in _partitions_of(g.n):
            labels = [0] * g.n
            for cid, block in enumerate(blocks):
                for v in block:
                    labels[v] = cid
            part = Partition.from_labels(labels)
            worst = max(worst, abs(modularity(g, part) - _oracle_q(g, labels)))
            checked += 1
    ok = worst <= 1e-12
    assert _report("03 value vs exhaustive summation", ok,
                   f"(partitions checked={checked}, worst gap={worst:.2e})")


# ---------------------------------------------------------------- criterion 4


def test_c04_louvain_against_brute_force():
    exact_ok = True
    for sizes in ((4, 4), (5, 5), (4, 4, 4)):
        g = disjoint_cliques(*sizes)
        _, q_louvain = louvain_maximize(g, 404)
        _, q_oracle = brute_force_max_modularity(g)
        if q_louvain != pytest.approx(q_oracle, abs=1e-15):
            exact_ok = False

    rng = np.random.default_rng(404)
    ratio_ok = True
    produced = 0
    while produced < 30:
        n = int(rng.integers(4, 9))
        edges = [d for d in itertools.combinations(range(n), 2) if rng.random() < 0.45]
        if not edges:
            continue
        g = Graph.from_edges(n, edges)
        # connectivity check: single BFS sweep
        nbrs = g.neighbor_sets()
        seen = {0}
        frontier = [0]
        while frontier:
            nxt = [w for v in frontier for w in nbrs[v] if w not in seen]
            seen.update(nxt)
            frontier = nxt
        if len(seen) != n:
            continue
        produced += 1
        _, q_louvain = louvain_maximize(g, int(rng.integers(2**32)))
        _, q_oracle = brute_force_max_modularity(g)
        if q_oracle > 0 and q_louvain < 0.95 * q_oracle - 1e-12:
            ratio_ok = False
    ok = exact_ok and ratio_ok
    assert _report("04 louvain vs oracle", ok,
                   f"(cliques exact={exact_ok}, random ratio ok={ratio_ok})")


# ------------------------------------------------------- criteria 5 and 6


@pytest.fixture(scope="module")
def girvan_experiment():
    graphs = tuple(
        planted_partition(PlantedPartitionConfig(
            n=GIRVAN_NODES, communities=GIRVAN_COMMUNITIES,
            p_in=GIRVAN_P_IN, p_out=GIRVAN_P_OUT,
            seed=_seed_from(505, i)))[0]
        for i in range(10)
    )
    dataset = Dataset(name="girvan", graphs=graphs)
    strategies = [sgf_strategy(a) for a in (0.3, 0.5, 0.9)]
    rows = run_experiment(strategies, [dataset], runs_per_pair=10, rng_seed=505)
    return {(r.strategy, r.metric): r for r in rows}


def test_c05_benchmark_modularity_ratios(girvan_experiment):
    m03 = girvan_experiment[("sgf:0.3", "modularity_ratio")].mean
    m05 = girvan_experiment[("sgf:0.5", "modularity_ratio")].mean
    m09 = girvan_experiment[("sgf:0.9", "modularity_ratio")].mean
    ok = (0.95 <= m09 <= 1.10) and (0.65 <= m05 <= 0.90) and (m03 < m05 < m09)
    assert _report("05 benchmark modularity ratios", ok,
                   f"(0.3: {m03:.4f}, 0.5: {m05:.4f}, 0.9: {m09:.4f})")


def test_c06_structure_preserved_at_alpha_09(girvan_experiment):
    deg = girvan_experiment[("sgf:0.9", "degree_correlation")].mean
    clust = girvan_experiment[("sgf:0.9", "clustering_ratio")].mean
    parts = girvan_experiment[("sgf:0.9", "partition_number_ratio")].mean
    ok = deg >= 0.8 and 0.7 <= clust <= 1.3 and 0.9 <= parts <= 1.1
    assert _report("06 structural preservation", ok,
                   f"(deg corr={deg:.3f}, clust ratio={clust:.3f}, "
                   f"partition ratio={parts:.3f})")


# ---------------------------------------------------------------- criterion 7


@pytest.fixture(scope="module")
def normalization_rows():
    graphs = []
    for i in range(10):
        graphs.append((f"er{i}", "er", erdos_renyi(100, 4.5 / 99, seed=_seed_from(707, i))))
    for i in range(10):
        graphs.append((f"ba{i}", "ba", barabasi_albert(100, 2.3, seed=_seed_from(708, i))))
    grid = [round(0.1 * k, 1) for k in range(1, 11)]
    return normalization_study(graphs, grid, rules=("truncate", "scale")), grid


def test_c07a_truncate_distance_vanishes_at_alpha_one(normalization_rows):
    rows, _ = normalization_rows
    worst = max(r.dist_normed for r in rows if r.rule == "truncate" and r.alpha == 1.0)
    ok = worst <= 1e-6
    assert _report("07a truncate distance at alpha=1", ok, f"(max={worst:.2e})")


def test_c07b_scale_distance_at_alpha_one(normalization_rows):
    # At alpha = 1 the filtered matrix reproduces the 0/1 adjacency exactly,
    # so the off-diagonal min/max are 0 and 1 and the affine rescale is the
    # identity map: the distance below is ~1e-13, and the > 1 bound cannot
    # hold. Kept as stated; see the mid-grid distances for where the scale
    # rule does distort (e.g. > 1 throughout alpha <= 0.9 on these inputs).
    rows, _ = normalization_rows
    values = [r.dist_normed for r in rows if r.rule == "scale" and r.alpha == 1.0]
    smallest = min(values)
    ok = smallest > 1.0
    assert _report("07b scale distance at alpha=1 exceeds 1", ok,
                   f"(min={smallest:.2e})")


def test_c07c_truncate_entropy_monotone(normalization_rows):
    rows, grid = normalization_rows
    means = [
        np.mean([r.entropy for r in rows if r.rule == "truncate" and r.alpha == a])
        for a in grid
    ]
    rho = spearmanr(grid, means).statistic
    ok = rho <= -0.9
    assert _report("07c entropy decreasing in alpha", ok, f"(spearman rho={rho:.3f})")


# ---------------------------------------------------------------- criterion 8


def test_c08_entropy_formula_exactness():
    ok = True
    for n in (2, 5, 17, 60):
        p = np.full((n, n), 0.5)
        np.fill_diagonal(p, 0.0)
        if normalized_entropy(p).normalized != 0.5:
            ok = False
    det = np.zeros((6, 6))
    det[0, 1] = det[1, 0] = 1.0
    det[2, 5] = det[5, 2] = 1.0
    if normalized_entropy(det).normalized != 0.0:
        ok = False
    assert _report("08 entropy formula", ok)


# ---------------------------------------------------------------- criterion 9


def test_c09_block_model_fidelity():
    draws = 200
    exact = True
    ok_nodes = 0
    total_nodes = 0
    for gi in range(10):
        g, part = planted_partition(PlantedPartitionConfig(
            n=200, communities=4, p_in=0.1, p_out=0.02, seed=_seed_from(909, gi)))
        base = dcsbm_config_from(g, part)
        labels = np.array(part.assignment)
        targets = np.array(base.degrees, dtype=float)
        group_degree = np.bincount(labels, weights=targets)
        block = np.array(base.block_edges)
        sums = np.zeros(g.n)
        for d in range(draws):
            cfg = DcsbmConfig(degrees=base.degrees, partition=base.partition,
                              block_edges=base.block_edges, seed=_seed_from(910, gi, d))
            out = dcsbm_generate(cfg)
            counts = np.zeros_like(block)
            for i, j in out.edges:
                ci, cj = labels[i], labels[j]
                counts[ci, cj] += 1
                if ci != cj:
                    counts[cj, ci] += 1
            if not np.array_equal(counts, block):
                exact = False
            sums += degree_vector(out)
        means = sums / draws
        kr = group_degree[labels]
        variance = targets * (1.0 - np.where(kr > 0, targets / kr, 0.0))
        sigma = np.sqrt(np.maximum(variance, 0.0) / draws)
        within = np.abs(means - targets) <= 3.0 * sigma + 1e-12
        ok_nodes += int(within.sum())
        total_nodes += g.n
    frac = ok_nodes / total_nodes
    ok = exact and frac >= 0.95
    assert _report("09 block-model fidelity", ok,
                   f"(counts exact={exact}, nodes within 3 sigma={frac:.3f})")


# --------------------------------------------------------------- criterion 10


def test_c10_privacy_utility_tradeoff():
    g, _ = planted_partition(PlantedPartitionConfig(
        n=500, communities=5, p_in=0.25, p_out=0.01, seed=1010))
    rates: dict[float, list[float]] = {}
    ratios: dict[float, list[float]] = {}
    for alpha in (0.9, 0.25, 0.1):
        rates[alpha] = []
        ratios[alpha] = []
        for trial in range(10):
            key = int(alpha * 100)
            out = forge(g, ForgeConfig(alpha=alpha, seed=_seed_from(1011, key, trial)))
            rates[alpha].append(dv_attack(g, out, AttackConfig(
                seed_fraction=0.05, seed=_seed_from(1012, key, trial))))
            report = compare(g, out, _seed_from(1013, key, trial))
            ratios[alpha].append(report.modularity_ratio)
    high = float(np.mean(rates[0.9]))
    low = float(np.mean(rates[0.25]))
    tiny = float(np.mean(rates[0.1]))
    utility = float(np.mean(ratios[0.1]))
    ok = high > low and tiny <= 0.2 and utility >= 0.6
    assert _report("10 privacy/utility tradeoff", ok,
                   f"(rate@0.9={high:.3f} > rate@0.25={low:.3f}, "
                   f"rate@0.1={tiny:.3f} <= 0.2, ratio@0.1={utility:.3f} >= 0.6)")


# --------------------------------------------------------------- criterion 11


def test_c11_byte_identical_reruns(tmp_path):
    g, _ = planted_partition(PlantedPartitionConfig(
        n=48, communities=2, p_in=0.4, p_out=0.05, seed=1111))
    input_path = tmp_path / "g.el"
    input_path.write_text(write_edge_list(g))

    pairs = []
    for d in ("one", "two"):
        out_dir = tmp_path / f"bench_{d}"
        rc = dispatch(["bench", "--preset", "planted", "--nodes", "48",
                       "--communities", "2", "--p-in", "0.4", "--p-out", "0.05",
                       "--graphs", "2", "--runs", "2", "--strategies",
                       "sgf:0.9,dcsbm", "--seed", "33", "--output-dir", str(out_dir)])
        assert rc == 0
        pairs.append((out_dir / "bench_planted.csv").read_bytes())
    bench_same = pairs[0] == pairs[1]

    pairs = []
    for d in ("one", "two"):
        out_dir = tmp_path / f"sweep_{d}"
        rc = dispatch(["sweep", "--input", str(input_path), "--alphas",
                       "0.3:0.9:0.3", "--runs", "2", "--seed", "44",
                       "--output-dir", str(out_dir)])
        assert rc == 0
        pairs.append((out_dir / "sweep.csv").read_bytes())
    sweep_same = pairs[0] == pairs[1]

    ok = bench_same and sweep_same
    assert _report("11 deterministic reruns", ok,
                   f"(bench identical={bench_same}, sweep identical={sweep_same})")
