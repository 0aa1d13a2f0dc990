"""Small graph builders and oracles shared across test modules."""

import numpy as np

from suprasync import (LayerGraph, MultiplexNetwork, couple_replicas,
                       generate_ba, GeneratorSpec)


def complete_layer(n, weight=None):
    edges = [(i, j) for i in range(n) for j in range(i + 1, n)]
    weights = None if weight is None else {e: weight for e in edges}
    return LayerGraph(n, edges, weights)


def path_layer(n):
    return LayerGraph(n, [(i, i + 1) for i in range(n - 1)])


def star_layer(n):
    # hub is node 0
    return LayerGraph(n, [(0, i) for i in range(1, n)])


def ring_layer(n):
    return LayerGraph(n, [(i, (i + 1) % n) for i in range(n)])


def triangle_layer():
    return LayerGraph(3, [(0, 1), (1, 2), (0, 2)])


def ba_pair(n=200, m=2, seeds=(42, 43)):
    """Two independent preferential-attachment layers coupled by replicas."""
    layers = [generate_ba(GeneratorSpec(model="ba", n=n, seed=s, m=m))
              for s in seeds]
    return couple_replicas(layers)


def random_layer(n, extra_edges, rng):
    """Connected simple graph: random spanning tree plus extra chords."""
    edges = set()
    order = rng.permutation(n)
    for k in range(1, n):
        a = int(order[k])
        b = int(order[rng.integers(0, k)])
        edges.add((min(a, b), max(a, b)))
    while len(edges) < n - 1 + extra_edges:
        a, b = rng.integers(0, n, size=2)
        if a == b:
            continue
        edges.add((min(int(a), int(b)), max(int(a), int(b))))
    return LayerGraph(n, sorted(edges))


def random_multiplex(n, rng, layers=2):
    extra = int(rng.integers(1, n))
    parts = [random_layer(n, extra, rng) for _ in range(layers)]
    return couple_replicas(parts)


def laplacian_of(n, edges, weights=None):
    w = np.zeros((n, n))
    for k, (i, j) in enumerate(edges):
        ww = 1.0 if weights is None else weights[k]
        w[i, j] += ww
        w[j, i] += ww
    return np.diag(w.sum(axis=1)) - w


def numpy_eigs(matrix):
    return np.sort(np.linalg.eigvalsh(matrix))
