"""The generation pipeline: back-transformation, normalization to edge
probabilities, Bernoulli sampling, and the distribution's normalized entropy.

`forge` composes the whole chain: transform the input graph to a symmetric
matrix (modularity matrix or raw adjacency), keep the leading ceil(alpha * n)
eigenterms, transform back, squash into [0, 1], then sample each dyad
independently. alpha = 1 with the truncate rule reproduces the input graph.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graph import Graph, degree_vector
from .spectral import (
    SYMMETRY_ATOL,
    _require_symmetric,
    eigendecompose,
    low_rank_approx,
    modularity_matrix,
)

NORMALIZATION_RULES = ("logistic", "truncate", "scale")
TRANSFORMATIONS = ("modularity", "adjacency")

DEFAULT_LOGISTIC_K = 6.0


@dataclass(frozen=True)
class ForgeConfig:
    """Knobs for one generation run.

    alpha tunes fidelity (1 keeps every eigenterm, 0 keeps none); rule picks
    the normalization squashing matrix entries into probabilities; the
    logistic steepness k must lie in [2, 10] and is ignored by the other
    rules; transformation selects which matrix the spectral filter acts on.
    """

    alpha: float
    rule: str = "truncate"
    logistic_k: float = DEFAULT_LOGISTIC_K
    transformation: str = "modularity"
    seed: int = 0

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in [0, 1], got {self.alpha}")
        if self.rule not in NORMALIZATION_RULES:
            raise ValueError(f"unknown normalization rule {self.rule!r}")
        if self.rule == "logistic" and not 2.0 <= self.logistic_k <= 10.0:
            raise ValueError(f"logistic k must lie in [2, 10], got {self.logistic_k}")
        if self.transformation not in TRANSFORMATIONS:
            raise ValueError(f"unknown transformation {self.transformation!r}")


def back_transform(m_tilde: np.ndarray, degrees: np.ndarray, transformation: str = "modularity") -> np.ndarray:
    """Undo the forward transformation on a filtered matrix.

    Modularity mode adds back the k k^T / |K| null model; adjacency mode is
    the identity.
    """
    if transformation not in TRANSFORMATIONS:
        raise ValueError(f"unknown transformation {transformation!r}")
    m = np.asarray(m_tilde, dtype=float)
    k = np.asarray(degrees, dtype=float)
    if m.shape[0] != k.shape[0]:
        raise ValueError(
            f"matrix order {m.shape[0]} does not match degree vector length {k.shape[0]}"
        )
    if transformation == "adjacency":
        return m.copy()
    total = k.sum()
    if total == 0:
        raise ValueError("degree sum is zero: modularity back-transform undefined")
    return m + np.outer(k, k) / total


def normalize(a_tilde: np.ndarray, rule: str = "truncate", logistic_k: float = DEFAULT_LOGISTIC_K) -> np.ndarray:
    """Map a symmetric real matrix into edge probabilities in [0, 1].

    logistic: 1 / (1 + exp((0.5 - x) * k)); truncate: clamp to [0, 1];
    scale: affine map of the off-diagonal range onto [0, 1] (fails when the
    off-diagonal entries are all equal). The diagonal is structurally zero:
    dyads never include self-pairs.
    """
    m = _require_symmetric(a_tilde, "normalize input")
    n = m.shape[0]
    if rule == "truncate":
        out = np.clip(m, 0.0, 1.0)
    elif rule == "logistic":
        if not 2.0 <= logistic_k <= 10.0:
            raise ValueError(f"logistic k must lie in [2, 10], got {logistic_k}")
        out = 1.0 / (1.0 + np.exp((0.5 - m) * logistic_k))
    elif rule == "scale":
        if n < 2:
            raise ValueError("scale rule needs at least one off-diagonal entry")
        off = ~np.eye(n, dtype=bool)
        lo, hi = m[off].min(), m[off].max()
        if hi == lo:
            raise ValueError("scale rule degenerate: off-diagonal max equals min")
        out = (m - lo) / (hi - lo)
        out = np.clip(out, 0.0, 1.0)  # diagonal may fall outside the off-diag range
    else:
        raise ValueError(f"unknown normalization rule {rule!r}")
    np.fill_diagonal(out, 0.0)
    return (out + out.T) / 2.0


def _check_probability_matrix(matrix: np.ndarray) -> np.ndarray:
    p = _require_symmetric(matrix, "probability matrix")
    if p.size and (p.min() < -SYMMETRY_ATOL or p.max() > 1.0 + SYMMETRY_ATOL):
        raise ValueError("probability matrix entries must lie in [0, 1]")
    return np.clip(p, 0.0, 1.0)


def sample_bernoulli(prob_matrix: np.ndarray, seed: int) -> Graph:
    """Draw one graph: each dyad j > i is an independent coin with its own bias.

    The diagonal is forced to zero and the lower triangle mirrors the upper.
    Reproducibility contract: one uniform draw per dyad, consumed in
    row-major order over j > i, from a PCG64 generator seeded with `seed`.
    """
    p = _check_probability_matrix(prob_matrix)
    n = p.shape[0]
    rng = np.random.default_rng(seed)
    rows, cols = np.triu_indices(n, k=1)
    draws = rng.random(rows.shape[0])
    hit = draws < p[rows, cols]
    edges = zip(rows[hit].tolist(), cols[hit].tolist())
    return Graph.from_edges(n, edges)


@dataclass(frozen=True)
class EntropyReport:
    """Shannon entropy of the dyad-independent sampling distribution.

    raw_bits sums the dyadic entropies; density is the expected edge density;
    normalizer is -(n(n-1)/2) * (log2(density) + log2(1-density)) and
    normalized = raw_bits / normalizer. The density-weighted variant divides
    instead by n(n-1)/2 times the binary entropy of the density, which is the
    true per-dyad maximum at that density; both are reported.
    """

    raw_bits: float
    density: float
    normalizer: float
    normalized: float
    weighted_normalizer: float
    weighted_normalized: float


def _binary_entropy_bits(p: np.ndarray) -> np.ndarray:
    h = np.zeros_like(p)
    interior = (p > 0.0) & (p < 1.0)
    q = p[interior]
    h[interior] = -q * np.log2(q) - (1.0 - q) * np.log2(1.0 - q)
    return h


def normalized_entropy(prob_matrix: np.ndarray) -> EntropyReport:
    """Entropy of the graph distribution defined by a probability matrix."""
    p = _check_probability_matrix(prob_matrix)
    n = p.shape[0]
    dyads = n * (n - 1) // 2
    if dyads == 0:
        return EntropyReport(0.0, 0.0, math.nan, 0.0, math.nan, 0.0)
    upper = p[np.triu_indices(n, k=1)]
    raw_bits = float(np.sum(_binary_entropy_bits(upper)))
    density = float(np.sum(upper) / dyads)
    if density <= 0.0 or density >= 1.0:
        # degenerate distribution: the normalizers are undefined
        return EntropyReport(raw_bits, density, math.nan, 0.0, math.nan, 0.0)
    normalizer = -dyads * (math.log2(density) + math.log2(1.0 - density))
    weighted = dyads * (-density * math.log2(density) - (1.0 - density) * math.log2(1.0 - density))
    return EntropyReport(
        raw_bits=raw_bits,
        density=density,
        normalizer=normalizer,
        normalized=raw_bits / normalizer,
        weighted_normalizer=weighted,
        weighted_normalized=raw_bits / weighted,
    )


def edge_probabilities(graph: Graph, config: ForgeConfig) -> np.ndarray:
    """The probability matrix the pipeline samples from, without sampling.

    `forge(graph, config)` is distributed Bernoulli(edge_probabilities(graph,
    config)) dyad by dyad.
    """
    degrees = degree_vector(graph)
    if config.transformation == "modularity":
        m = modularity_matrix(graph)  # raises on edgeless input
    else:
        m = graph.adjacency()
    eig = eigendecompose(m)
    m_tilde = low_rank_approx(eig, config.alpha)
    a_tilde = back_transform(m_tilde, degrees, config.transformation)
    return normalize(a_tilde, config.rule, config.logistic_k)


def forge(graph: Graph, config: ForgeConfig) -> Graph:
    """Generate one random graph preserving the input's filtered structure.

    Output has the same node count and inherits the input's node attributes
    by index. Same config (including seed) yields the same graph.
    """
    probs = edge_probabilities(graph, config)
    sampled = sample_bernoulli(probs, config.seed)
    if graph.attributes:
        sampled = sampled.with_attributes(graph.attributes)
    return sampled
