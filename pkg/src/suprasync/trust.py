"""Trust scores from transaction tallies and trust-derived edge weights.

Each node's trust is the maximum-likelihood success rate of its recorded
transactions. Pairs of trust scores turn into edge weights through a
similarity-damped product, shifted by 1 so weighting never deletes an
edge: weights live in [1, 2].
"""

import math
from dataclasses import dataclass, field

import numpy as np

from suprasync.core import MultiplexNetwork, LayerGraph
from suprasync.errors import ConfigError, DomainError, ParseError, StructuralError


@dataclass(frozen=True)
class TransactionLedger:
    """Success/failure tallies per intra-layer pair and per replica link.

    `intra` maps (layer, i, j) to (successes, failures); `inter` maps
    (layer_a, layer_b, node) likewise. Keys are stored with i < j and
    layer_a < layer_b.
    """

    intra: dict = field(default_factory=dict)
    inter: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "intra", _normalize_tallies(self.intra, pair_of_nodes=True))
        object.__setattr__(self, "inter", _normalize_tallies(self.inter, pair_of_nodes=False))


def _normalize_tallies(raw, pair_of_nodes):
    out = {}
    for key, counts in raw.items():
        a, b, c = (int(v) for v in key)
        if pair_of_nodes:
            layer, i, j = a, b, c
            if i == j:
                raise StructuralError(f"tally on self-pair ({i}, {i})")
            norm = (layer, i, j) if i < j else (layer, j, i)
        else:
            if a == b:
                raise StructuralError(f"tally on layer self-pair ({a}, {a})")
            norm = (a, b, c) if a < b else (b, a, c)
        succ, fail = (int(v) for v in counts)
        if succ < 0 or fail < 0:
            raise StructuralError(f"negative tally for {norm}")
        if norm in out and out[norm] != (succ, fail):
            raise StructuralError(f"conflicting tallies for {norm}")
        out[norm] = (succ, fail)
    return out


@dataclass(frozen=True)
class TrustProfile:
    """Per-node trust, per layer and aggregated over the whole multiplex."""

    per_layer: np.ndarray    # shape (M, N)
    aggregate: np.ndarray    # shape (N,)
    successes: np.ndarray    # shape (N,), totals behind `aggregate`
    failures: np.ndarray

    def __post_init__(self):
        for arr in (self.per_layer, self.aggregate, self.successes, self.failures):
            arr.flags.writeable = False


def trust_score(successes, failures):
    """MLE success rate; 0.5 when there is no evidence either way."""
    total = successes + failures
    if total == 0:
        return 0.5
    return successes / total


def gamma(phi_i, phi_j):
    """Similarity-damped trust product, symmetric, in [0, 1].

    The damping factor (cos|phi_i - phi_j| + 1)/2 is evaluated in
    radians; it stays within [(cos 1 + 1)/2, 1] on the unit square.
    """
    if not (0.0 <= phi_i <= 1.0 and 0.0 <= phi_j <= 1.0):
        raise DomainError(f"trust scores must lie in [0, 1], got ({phi_i}, {phi_j})")
    factor = (math.cos(abs(phi_i - phi_j)) + 1.0) / 2.0
    # grouped product keeps the function exactly symmetric in its arguments
    return factor * (phi_i * phi_j)


def build_profile(ledger, network):
    """Accumulate tallies into per-layer and multiplex trust scores.

    A node's layer score uses only that layer's pairs; the aggregate
    score pools every layer and every replica link the node touches.
    """
    m = network.layer_count
    n = network.node_count
    succ_layer = np.zeros((m, n))
    fail_layer = np.zeros((m, n))
    succ_total = np.zeros(n)
    fail_total = np.zeros(n)
    for (layer, i, j), (s, f) in ledger.intra.items():
        if not 0 <= layer < m:
            raise StructuralError(f"tally references layer {layer} of {m}")
        if j >= n or i < 0:
            raise StructuralError(f"tally references node pair ({i}, {j}) outside 0..{n - 1}")
        for node in (i, j):
            succ_layer[layer, node] += s
            fail_layer[layer, node] += f
            succ_total[node] += s
            fail_total[node] += f
    for (a, b, i), (s, f) in ledger.inter.items():
        if not (0 <= a < m and 0 <= b < m):
            raise StructuralError(f"tally references layer pair ({a}, {b}) of {m}")
        if not 0 <= i < n:
            raise StructuralError(f"tally references node {i} outside 0..{n - 1}")
        succ_total[i] += s
        fail_total[i] += f

    total_layer = succ_layer + fail_layer
    per_layer = np.full((m, n), 0.5)
    np.divide(succ_layer, total_layer, out=per_layer, where=total_layer > 0)
    total = succ_total + fail_total
    aggregate = np.full(n, 0.5)
    np.divide(succ_total, total, out=aggregate, where=total > 0)
    return TrustProfile(
        per_layer=per_layer,
        aggregate=aggregate,
        successes=succ_total,
        failures=fail_total,
    )


def assign_weights(network, profile, use_aggregate=False):
    """Weight every existing edge and replica link with gamma + 1.

    Non-edges stay absent; replica links keep their presence pattern and
    only change magnitude. `use_aggregate` switches from per-layer trust
    scores to the pooled multiplex score.
    """
    m = network.layer_count
    n = network.node_count
    if profile.per_layer.shape != (m, n):
        raise StructuralError(
            f"profile covers {profile.per_layer.shape}, network needs ({m}, {n})")

    def phi(layer, node):
        if use_aggregate:
            return float(profile.aggregate[node])
        return float(profile.per_layer[layer, node])

    layers = []
    for idx, layer in enumerate(network.layers):
        wmap = {}
        for i, j in layer.edges:
            wmap[(i, j)] = gamma(phi(idx, i), phi(idx, j)) + 1.0
        layers.append(LayerGraph(layer.node_count, layer.edges, wmap))

    inter = {}
    for (a, b), vec in network.inter_weights.items():
        out = np.zeros(n)
        for i in range(n):
            if vec[i] > 0.0:
                out[i] = gamma(phi(a, i), phi(b, i)) + 1.0
        inter[(a, b)] = out
    return MultiplexNetwork(tuple(layers), inter)


def synthesize_ledger(network, seed, max_count):
    """Uniform random tallies on every edge and replica link, reproducible."""
    max_count = int(max_count)
    if max_count < 0:
        raise ConfigError("max_count must be nonnegative")
    rng = np.random.default_rng(seed)
    intra = {}
    for idx, layer in enumerate(network.layers):
        for i, j in sorted(layer.edges):
            s, f = rng.integers(0, max_count, size=2, endpoint=True)
            intra[(idx, i, j)] = (int(s), int(f))
    inter = {}
    for a, b in sorted(network.inter_weights):
        vec = network.inter_weights[(a, b)]
        for i in range(network.node_count):
            if vec[i] > 0.0:
                s, f = rng.integers(0, max_count, size=2, endpoint=True)
                inter[(a, b, i)] = (int(s), int(f))
    return TransactionLedger(intra, inter)


def read_ledger(path):
    """Parse a tally file: `intra <layer> <i> <j> <succ> <fail>` or
    `inter <layerA> <layerB> <i> <succ> <fail>`, 0-based, `#` comments."""
    intra = {}
    inter = {}
    with open(path, encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 6 or parts[0] not in ("intra", "inter"):
                raise ParseError("expected `intra <layer> <i> <j> <succ> <fail>`"
                                 " or `inter <layerA> <layerB> <i> <succ> <fail>`",
                                 line_no=line_no)
            try:
                nums = [int(v) for v in parts[1:]]
            except ValueError:
                raise ParseError(f"non-integer field in {line!r}", line_no=line_no) from None
            target = intra if parts[0] == "intra" else inter
            key, counts = tuple(nums[:3]), (nums[3], nums[4])
            try:
                merged = _normalize_tallies({key: counts}, pair_of_nodes=parts[0] == "intra")
            except StructuralError as exc:
                raise ParseError(str(exc), line_no=line_no) from None
            for norm, val in merged.items():
                if norm in target and target[norm] != val:
                    raise ParseError(f"conflicting tallies for {norm}", line_no=line_no)
                target[norm] = val
    return TransactionLedger(intra, inter)


def write_ledger(ledger, path):
    """Serialize tallies in sorted order; `read_ledger` round-trips it."""
    with open(path, "w", encoding="utf-8") as fh:
        for (layer, i, j), (s, f) in sorted(ledger.intra.items()):
            fh.write(f"intra {layer} {i} {j} {s} {f}\n")
        for (a, b, i), (s, f) in sorted(ledger.inter.items()):
            fh.write(f"inter {a} {b} {i} {s} {f}\n")
