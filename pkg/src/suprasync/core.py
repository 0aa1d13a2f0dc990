"""Multiplex network model and supra-Laplacian assembly.

A multiplex couples M undirected layers over the same node set by linking
each node to its own replica in other layers. The combined operator is

    combined = blockdiag(p_a * L_a) + d_x * inter

where L_a is the weighted Laplacian of layer a and `inter` is the
unit-coupling inter-layer Laplacian (scaled by d_x only in `combined`).
"""

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field

import numpy as np

from suprasync.errors import ConfigError, StructuralError


def _normalize_edge(pair):
    try:
        i, j = pair
    except (TypeError, ValueError):
        raise StructuralError(f"edge {pair!r} is not a node pair") from None
    i, j = int(i), int(j)
    if i == j:
        raise StructuralError(f"self-loop on node {i}")
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class LayerGraph:
    """One undirected layer on nodes 0..node_count-1.

    `weights` maps edges to positive reals; None means unweighted
    (every edge counts 1). Edges are stored as sorted pairs.
    """

    node_count: int
    edges: frozenset = field(default_factory=frozenset)
    weights: Mapping | None = None

    def __post_init__(self):
        n = self.node_count
        if not isinstance(n, (int, np.integer)) or isinstance(n, bool) or n < 1:
            raise StructuralError("node_count must be a positive integer")
        norm = frozenset(_normalize_edge(p) for p in self.edges)
        for i, j in norm:
            if i < 0 or j >= n:
                raise StructuralError(f"edge ({i}, {j}) outside 0..{n - 1}")
        object.__setattr__(self, "edges", norm)
        if self.weights is not None:
            wmap = {}
            for pair, w in self.weights.items():
                key = _normalize_edge(pair)
                if key not in norm:
                    raise StructuralError(f"weight on missing edge {key}")
                w = float(w)
                if not w > 0.0:
                    raise StructuralError(f"weight {w} on edge {key} not positive")
                wmap[key] = w
            object.__setattr__(self, "weights", wmap)

    @property
    def edge_count(self):
        return len(self.edges)

    def weight(self, i, j):
        """Edge weight, 1.0 for an unweighted edge, 0.0 for a non-edge."""
        key = (i, j) if i < j else (j, i)
        if key not in self.edges:
            return 0.0
        if self.weights is None:
            return 1.0
        return self.weights.get(key, 1.0)

    def adjacency(self):
        """Dense weighted adjacency matrix."""
        a = np.zeros((self.node_count, self.node_count))
        for i, j in self.edges:
            w = 1.0 if self.weights is None else self.weights.get((i, j), 1.0)
            a[i, j] = w
            a[j, i] = w
        return a


@dataclass(frozen=True)
class MultiplexNetwork:
    """Ordered layers over a shared node set plus replica couplings.

    `inter_weights[(a, b)]` is a length-N vector of nonnegative replica
    weights between layers a and b; entry 0 means the replica link is
    absent. With exactly two layers the default is all-ones coupling;
    more layers require an explicit map.
    """

    layers: tuple
    inter_weights: Mapping | None = None

    def __post_init__(self):
        layers = tuple(self.layers)
        if not layers:
            raise StructuralError("at least one layer required")
        object.__setattr__(self, "layers", layers)
        n = layers[0].node_count
        for idx, layer in enumerate(layers):
            if layer.node_count != n:
                raise StructuralError(
                    f"layer {idx} has {layer.node_count} nodes, expected {n}")
        m = len(layers)
        if self.inter_weights is None:
            if m == 1:
                pairs = {}
            elif m == 2:
                pairs = {(0, 1): np.ones(n)}
            else:
                raise ConfigError(
                    "replica coupling must be given explicitly for more than two layers")
        else:
            pairs = {}
            for (a, b), vec in self.inter_weights.items():
                a, b = int(a), int(b)
                if a == b or not (0 <= a < m and 0 <= b < m):
                    raise StructuralError(f"bad layer pair ({a}, {b})")
                key = (a, b) if a < b else (b, a)
                vec = np.asarray(vec, dtype=np.float64)
                if vec.shape != (n,):
                    raise StructuralError(
                        f"coupling vector for pair {key} must have length {n}")
                if np.any(vec < 0.0):
                    raise StructuralError(f"negative replica weight for pair {key}")
                if key in pairs and not np.array_equal(pairs[key], vec):
                    raise StructuralError(f"conflicting vectors for pair {key}")
                pairs[key] = vec
        for vec in pairs.values():
            vec.flags.writeable = False
        object.__setattr__(self, "inter_weights", pairs)

    @property
    def layer_count(self):
        return len(self.layers)

    @property
    def node_count(self):
        return self.layers[0].node_count

    def coupling(self, a, b):
        """Replica weight vector for a layer pair (zeros if uncoupled)."""
        key = (a, b) if a < b else (b, a)
        vec = self.inter_weights.get(key)
        if vec is None:
            return np.zeros(self.node_count)
        return vec


@dataclass(frozen=True)
class SupraLaplacian:
    """Assembled intra, inter, and combined supra-Laplacian matrices.

    `inter` is kept at unit coupling; `combined = intra + d_x * inter`.
    """

    dimension: int
    intra: np.ndarray
    inter: np.ndarray
    combined: np.ndarray
    p_per_layer: tuple
    d_x: float


@dataclass(frozen=True)
class LayerStats:
    node_count: int
    edge_count: int
    component_count: int
    average_degree: float
    clustering: float


@dataclass(frozen=True)
class StructuralStats:
    """Simple-graph statistics per layer and for the supra-graph."""

    layers: tuple
    supra_clustering: float
    supra_component_count: int
    k_max: int


def layer_laplacian(layer):
    """Weighted Laplacian diag(strengths) - W; rows sum to zero."""
    w = layer.adjacency()
    lap = np.diag(w.sum(axis=1)) - w
    return lap


def build_supra(network, p_per_layer, d_x):
    """Assemble the supra-Laplacian at diffusion constants (p_per_layer, d_x).

    Each layer Laplacian is scaled by its own entry of `p_per_layer`
    exactly once; a uniform vector reproduces a single global constant.
    """
    m = network.layer_count
    n = network.node_count
    p = [float(v) for v in p_per_layer]
    if len(p) != m:
        raise ConfigError(f"p_per_layer has {len(p)} entries for {m} layers")
    if any(not v > 0.0 for v in p):
        raise ConfigError("every per-layer diffusion constant must be positive")
    d_x = float(d_x)
    if d_x < 0.0:
        raise ConfigError("inter-layer diffusion constant must be nonnegative")

    dim = m * n
    intra = np.zeros((dim, dim))
    for a, layer in enumerate(network.layers):
        block = slice(a * n, (a + 1) * n)
        intra[block, block] = p[a] * layer_laplacian(layer)

    w_inter = np.zeros((dim, dim))
    for (a, b), vec in network.inter_weights.items():
        for i in range(n):
            if vec[i] > 0.0:
                w_inter[a * n + i, b * n + i] = vec[i]
                w_inter[b * n + i, a * n + i] = vec[i]
    inter = np.diag(w_inter.sum(axis=1)) - w_inter

    combined = intra + d_x * inter
    for mat in (intra, inter, combined):
        mat.flags.writeable = False
    return SupraLaplacian(
        dimension=dim,
        intra=intra,
        inter=inter,
        combined=combined,
        p_per_layer=tuple(p),
        d_x=d_x,
    )


def connected_components(node_count, edges):
    """Components of a simple graph, each a sorted node list, smallest first."""
    nbrs = [[] for _ in range(node_count)]
    for i, j in edges:
        nbrs[i].append(j)
        nbrs[j].append(i)
    seen = [False] * node_count
    comps = []
    for start in range(node_count):
        if seen[start]:
            continue
        stack = [start]
        seen[start] = True
        comp = []
        while stack:
            u = stack.pop()
            comp.append(u)
            for v in nbrs[u]:
                if not seen[v]:
                    seen[v] = True
                    stack.append(v)
        comps.append(sorted(comp))
    comps.sort(key=lambda c: c[0])
    return comps


def supra_adjacency(network):
    """Unweighted supra-graph adjacency: intra edges plus present replicas."""
    m = network.layer_count
    n = network.node_count
    dim = m * n
    a = np.zeros((dim, dim))
    for idx, layer in enumerate(network.layers):
        off = idx * n
        for i, j in layer.edges:
            a[off + i, off + j] = 1.0
            a[off + j, off + i] = 1.0
    for (x, y), vec in network.inter_weights.items():
        for i in range(n):
            if vec[i] > 0.0:
                a[x * n + i, y * n + i] = 1.0
                a[y * n + i, x * n + i] = 1.0
    return a


def _mean_local_clustering(adj):
    """Average local clustering; nodes of degree < 2 contribute 0."""
    deg = adj.sum(axis=1)
    triangles = np.einsum("ij,jk,ki->i", adj, adj, adj)
    denom = deg * (deg - 1.0)
    cc = np.divide(triangles, denom, out=np.zeros_like(denom), where=denom > 0)
    return float(cc.mean())


def structural_stats(network):
    """Per-layer and supra-graph statistics (weights ignored throughout)."""
    per_layer = []
    for layer in network.layers:
        n = layer.node_count
        e = layer.edge_count
        comps = connected_components(n, layer.edges)
        adj = np.where(layer.adjacency() > 0.0, 1.0, 0.0)
        per_layer.append(LayerStats(
            node_count=n,
            edge_count=e,
            component_count=len(comps),
            average_degree=2.0 * e / n,
            clustering=_mean_local_clustering(adj),
        ))
    supra = supra_adjacency(network)
    supra_edges = [(i, j) for i, j in zip(*np.nonzero(np.triu(supra)))]
    supra_comps = connected_components(supra.shape[0], supra_edges)
    return StructuralStats(
        layers=tuple(per_layer),
        supra_clustering=_mean_local_clustering(supra),
        supra_component_count=len(supra_comps),
        k_max=int(supra.sum(axis=1).max()),
    )
