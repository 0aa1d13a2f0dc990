"""Seeded construction of synthetic layers and their replica coupling.

Two degree-heterogeneous models: preferential attachment grown from a
seed clique, and a configuration-model wiring of a truncated power-law
degree sequence with deterministic connectivity repair.
"""

from dataclasses import dataclass

import numpy as np

from suprasync.core import LayerGraph, MultiplexNetwork, connected_components
from suprasync.errors import DomainError, GenerationError

MAX_ATTEMPTS = 100


@dataclass(frozen=True)
class GeneratorSpec:
    """Parameters for one synthetic layer.

    `m` is the stub count per arriving node (preferential attachment);
    `gamma` and `k_min` shape the power-law degree distribution.
    """

    model: str
    n: int
    seed: int
    m: int | None = None
    gamma: float | None = None
    k_min: int = 2

    def __post_init__(self):
        if self.model not in ("ba", "powerlaw"):
            raise DomainError(f"unknown model {self.model!r}")
        if self.n < 2:
            raise DomainError("need at least two nodes")
        if self.model == "ba":
            if self.m is None or self.m < 1:
                raise DomainError("stub count m must be at least 1")
            if self.n <= self.m:
                raise DomainError("node count must exceed stub count")
        else:
            if self.gamma is None or not self.gamma > 1.0:
                raise DomainError("exponent gamma must exceed 1")
            if not 1 <= self.k_min < self.n:
                raise DomainError("k_min must lie in [1, n)")


def generate_ba(spec):
    """Preferential attachment from a complete seed clique on m+1 nodes.

    Each arriving node attaches to m distinct targets drawn with
    probability proportional to current degree (repeated-endpoint list
    sampling). Edge count is binom(m+1, 2) + (n-m-1)*m.
    """
    if spec.model != "ba":
        raise DomainError(f"spec is for model {spec.model!r}")
    rng = np.random.default_rng(spec.seed)
    m = spec.m
    edges = set()
    endpoints = []
    for i in range(m + 1):
        for j in range(i + 1, m + 1):
            edges.add((i, j))
            endpoints.extend((i, j))
    for new in range(m + 1, spec.n):
        targets = set()
        while len(targets) < m:
            targets.add(endpoints[rng.integers(len(endpoints))])
        for t in sorted(targets):
            edges.add((t, new))
            endpoints.extend((t, new))
    return LayerGraph(spec.n, frozenset(edges))


def _sample_degrees(rng, n, gamma, k_min):
    ks = np.arange(k_min, n)
    probs = ks.astype(np.float64) ** (-gamma)
    probs /= probs.sum()
    degrees = rng.choice(ks, size=n, p=probs)
    if degrees.sum() % 2 == 1:
        for i in range(n):
            if degrees[i] < n - 1:
                degrees[i] += 1
                break
    return degrees


def _configuration_edges(rng, degrees):
    stubs = np.repeat(np.arange(len(degrees)), degrees)
    rng.shuffle(stubs)
    edges = set()
    for t in range(0, len(stubs) - 1, 2):
        a, b = int(stubs[t]), int(stubs[t + 1])
        if a == b:
            continue
        edges.add((a, b) if a < b else (b, a))
    return edges


def _is_connected(n, edges):
    return len(connected_components(n, edges)) == 1


def _reconnect(n, edges):
    """Bridge every extra component to the first, then drop one cycle edge
    per bridge so the edge count is preserved where possible."""
    comps = connected_components(n, edges)
    extra = len(comps) - 1
    if extra == 0:
        return edges, 0
    edges = set(edges)
    anchor = comps[0][0]
    for comp in comps[1:]:
        edges.add((anchor, comp[0]) if anchor < comp[0] else (comp[0], anchor))
    removed = 0
    for _ in range(extra):
        for cand in sorted(edges):
            trial = edges - {cand}
            if _is_connected(n, trial):
                edges = trial
                removed += 1
                break
        else:
            break   # tree already, nothing left to rewire away
    return edges, extra


def generate_powerlaw(spec, with_report=False):
    """Configuration-model graph with degrees drawn from k^(-gamma).

    Degrees are sampled on [k_min, n-1] (one bumped for parity), wired
    by stub shuffle, then simplified: self-loops dropped, multi-edges
    collapsed. Disconnected results are repaired by rewiring one edge
    per extra component, so the realized degree sequence tracks the
    sampled one only approximately; `with_report` returns those totals.
    """
    if spec.model != "powerlaw":
        raise DomainError(f"spec is for model {spec.model!r}")
    rng = np.random.default_rng(spec.seed)
    for attempt in range(1, MAX_ATTEMPTS + 1):
        degrees = _sample_degrees(rng, spec.n, spec.gamma, spec.k_min)
        edges = _configuration_edges(rng, degrees)
        if not edges:
            continue
        edges, rewired = _reconnect(spec.n, edges)
        if not _is_connected(spec.n, edges):
            continue
        layer = LayerGraph(spec.n, frozenset(edges))
        if not with_report:
            return layer
        report = {
            "sampled_degree_sum": int(degrees.sum()),
            "realized_degree_sum": 2 * len(edges),
            "attempts": attempt,
            "rewired_components": rewired,
        }
        return layer, report
    raise GenerationError(
        f"no feasible wiring after {MAX_ATTEMPTS} degree-sequence attempts")


def couple_replicas(layers, weight=1.0):
    """Join layers into a multiplex with uniform replica weights on
    consecutive layer pairs (the single pair when M=2)."""
    weight = float(weight)
    if not weight > 0.0:
        raise DomainError("replica weight must be positive")
    layers = tuple(layers)
    if len(layers) <= 1:
        return MultiplexNetwork(layers, {})
    n = layers[0].node_count
    inter = {(a, a + 1): np.full(n, weight) for a in range(len(layers) - 1)}
    return MultiplexNetwork(layers, inter)
