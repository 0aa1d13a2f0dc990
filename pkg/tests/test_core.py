"""Multiplex assembly and supra-Laplacian structure tests."""

import numpy as np
import pytest

from helpers import (ba_pair, complete_layer, laplacian_of, numpy_eigs,
                     path_layer, random_multiplex, star_layer, triangle_layer)
from suprasync import (LayerGraph, MultiplexNetwork, build_supra,
                       connected_components, couple_replicas, layer_laplacian,
                       structural_stats, supra_adjacency)
from suprasync.errors import ConfigError, StructuralError


def test_layer_graph_normalizes_and_dedups():
    g = LayerGraph(4, [(2, 1), (1, 2), (0, 3)], {(2, 1): 2.5})
    assert g.edges == frozenset({(0, 3), (1, 2)})
    assert g.weight(2, 1) == 2.5  # lookup order-insensitive
    assert g.weight(0, 3) == 1.0  # unweighted edge defaults to 1
    assert g.weight(0, 1) == 0.0  # non-edge
    assert g.edge_count == 2
    adj = g.adjacency()
    assert np.allclose(adj, adj.T)
    assert adj[0, 3] == 1.0 and adj[1, 2] == 2.5


def test_layer_graph_rejects_bad_input():
    with pytest.raises(StructuralError):
        LayerGraph(3, [(0, 0)])
    with pytest.raises(StructuralError):
        LayerGraph(3, [(0, 5)])
    with pytest.raises(StructuralError):
        LayerGraph(2, [(0, 1)], {(0, 1): 0.0})
    with pytest.raises(StructuralError):
        LayerGraph(3, [(0, 1)], {(1, 2): 1.0})


def test_laplacian_complete_graph():
    lap = layer_laplacian(complete_layer(4))
    assert np.allclose(numpy_eigs(lap), [0, 4, 4, 4], atol=1e-12)


def test_laplacian_path():
    lap = layer_laplacian(path_layer(3))
    assert np.allclose(numpy_eigs(lap), [0, 1, 3], atol=1e-12)


def test_laplacian_weighted_edge():
    lap = layer_laplacian(LayerGraph(2, [(0, 1)], {(0, 1): 2.0}))
    assert np.array_equal(lap, [[2, -2], [-2, 2]])


def test_laplacian_empty_layer():
    assert np.array_equal(layer_laplacian(LayerGraph(3, [])), np.zeros((3, 3)))


def test_two_layer_coupling_defaults_to_unit():
    net = MultiplexNetwork((triangle_layer(), triangle_layer()))
    assert np.array_equal(net.coupling(0, 1), np.ones(3))


def test_three_layers_need_explicit_coupling():
    layers = (triangle_layer(),) * 3
    with pytest.raises(ConfigError):
        MultiplexNetwork(layers)
    net = MultiplexNetwork(layers, {(0, 1): np.ones(3), (1, 2): np.ones(3)})
    assert net.layer_count == 3


def test_mismatched_layer_sizes():
    with pytest.raises(StructuralError):
        MultiplexNetwork((triangle_layer(), path_layer(4)))


def test_supra_inter_spectrum_two_layers():
    net = MultiplexNetwork((triangle_layer(), triangle_layer()))
    supra = build_supra(net, (1.0, 1.0), 0.7)
    eigs = numpy_eigs(supra.inter)
    assert np.allclose(eigs, [0, 0, 0, 2, 2, 2], atol=1e-12)


def test_supra_decoupled_limit():
    net = ba_pair(n=40, seeds=(1, 2))
    supra = build_supra(net, (1.0, 1.0), 0.0)
    assert np.array_equal(supra.combined, supra.intra)
    eigs = numpy_eigs(supra.combined)
    # one zero per connected layer
    assert np.sum(np.abs(eigs) <= 1e-9) == 2


def test_supra_single_layer():
    g = path_layer(5)
    net = MultiplexNetwork((g,))
    supra = build_supra(net, (1.7,), 3.0)
    assert np.allclose(supra.combined, 1.7 * layer_laplacian(g))


def test_supra_block_structure():
    g1, g2 = triangle_layer(), path_layer(3)
    net = MultiplexNetwork((g1, g2))
    supra = build_supra(net, (2.0, 0.5), 1.25)
    top = 2.0 * layer_laplacian(g1)
    bot = 0.5 * layer_laplacian(g2)
    assert np.allclose(supra.intra[:3, :3], top)
    assert np.allclose(supra.intra[3:, 3:], bot)
    assert np.allclose(supra.combined, supra.intra + 1.25 * supra.inter)


def test_supra_validates_parameters():
    net = MultiplexNetwork((triangle_layer(), triangle_layer()))
    with pytest.raises(ConfigError):
        build_supra(net, (1.0,), 1.0)
    with pytest.raises(ConfigError):
        build_supra(net, (1.0, 0.0), 1.0)
    with pytest.raises(ConfigError):
        build_supra(net, (1.0, 1.0), -0.5)


def test_supra_matrices_frozen():
    net = MultiplexNetwork((triangle_layer(), triangle_layer()))
    supra = build_supra(net, (1.0, 1.0), 1.0)
    with pytest.raises(ValueError):
        supra.combined[0, 0] = 9.0


def test_supra_invariants_random():
    rng = np.random.default_rng(5)
    for _ in range(8):
        net = random_multiplex(int(rng.integers(3, 12)), rng)
        p = tuple(float(v) for v in rng.uniform(0.2, 2.0, size=2))
        d = float(rng.uniform(0.0, 2.0))
        supra = build_supra(net, p, d)
        c = supra.combined
        assert np.allclose(c, c.T)
        assert np.allclose(c.sum(axis=1), 0.0, atol=1e-12)
        assert numpy_eigs(c)[0] >= -1e-10


def test_zero_multiplicity_counts_supra_components():
    # two disconnected halves in both layers: supra has two components
    half = [(0, 1), (2, 3)]
    g = LayerGraph(4, half)
    net = MultiplexNetwork((g, g))
    supra = build_supra(net, (1.0, 1.0), 0.8)
    eigs = numpy_eigs(supra.combined)
    adj = supra_adjacency(net)
    edges = list(zip(*np.nonzero(np.triu(adj))))
    comps = connected_components(8, edges)
    assert np.sum(np.abs(eigs) <= 1e-9) == len(comps) == 2


def test_intra_scaling_is_exact():
    net = ba_pair(n=30, seeds=(3, 4))
    base = build_supra(net, (1.0, 1.0), 0.0)
    scaled = build_supra(net, (2.5, 2.5), 0.0)
    e0 = numpy_eigs(base.combined)
    e1 = numpy_eigs(scaled.combined)
    assert np.allclose(e1, 2.5 * e0, rtol=1e-8, atol=1e-10)


def test_connected_components_ordering():
    comps = connected_components(6, [(4, 5), (0, 2)])
    assert comps == [[0, 2], [1], [3], [4, 5]]


def test_stats_triangle_pair():
    net = MultiplexNetwork((triangle_layer(), triangle_layer()))
    stats = structural_stats(net)
    assert stats.supra_clustering == pytest.approx(1.0 / 3.0)
    assert [s.clustering for s in stats.layers] == [1.0, 1.0]


def test_stats_single_layer_closed_forms():
    tri = structural_stats(MultiplexNetwork((triangle_layer(),)))
    assert tri.supra_clustering == pytest.approx(1.0)
    star = structural_stats(MultiplexNetwork((star_layer(5),)))
    assert star.supra_clustering == 0.0
    assert star.k_max == 4
    assert star.layers[0].average_degree == pytest.approx(8 / 5)


def test_stats_component_counts():
    g = LayerGraph(4, [(0, 1)])
    stats = structural_stats(MultiplexNetwork((g, g)))
    assert stats.layers[0].component_count == 3
    assert stats.supra_component_count == 3
