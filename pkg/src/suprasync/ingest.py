"""Empirical multiplex dataset parsing, selection, and serialization.

The edge-record format is one record per line, `<a> <b> <layer> [w]`,
whitespace- or comma-separated, with `#` comments. Three comment forms
are structured directives written by the serializer and honored on
parse so that files round-trip exactly:

    # roster: <label> <label> ...       fixes label-to-id assignment
    # layers: <name> <name> ...         declares layers (edgeless ones too)
    # inter: <layerA> <layerB> <label> <w>   replica-link weight

Layer edge lists (single graph, numeric ids) use `i j [w]` lines with a
`# n=<N>` header.
"""

import math
from dataclasses import dataclass, field

from suprasync.core import LayerGraph, MultiplexNetwork, connected_components
from suprasync.errors import ParseError, StructuralError, UnknownLayerError
from suprasync.generators import couple_replicas

import numpy as np


@dataclass(frozen=True)
class MultiplexEdgeFile:
    """Parsed edge records: a label roster plus per-layer edge maps.

    `edges[layer][(i, j)]` is the record's weight or None when the
    record had no weight column. `inter` holds replica-link weights
    keyed by layer-name pair then node id.
    """

    labels: tuple
    layer_names: tuple
    edges: dict
    inter: dict = field(default_factory=dict)
    skipped_self_loops: int = 0

    def __post_init__(self):
        for label in self.labels:
            if not label:
                raise StructuralError("empty node label")
        if len(set(self.labels)) != len(self.labels):
            raise StructuralError("duplicate node labels")

    @property
    def node_count(self):
        return len(self.labels)

    def layer_edges(self, name):
        if name not in self.edges:
            raise UnknownLayerError(name)
        return self.edges[name]


def parse_multiplex(lines):
    """Build a MultiplexEdgeFile from an iterable of text lines.

    Ids follow first appearance (or the `# roster:` directive); records
    are undirected and deduplicated, with the last weight winning on
    repeats. Self-loop records are dropped and counted.
    """
    labels = []
    ids = {}
    layer_names = []
    edges = {}
    inter_raw = []
    loops = 0

    def node_id(label, line_no):
        if label not in ids:
            ids[label] = len(labels)
            labels.append(label)
        return ids[label]

    for line_no, raw in enumerate(lines, start=1):
        line = raw.strip()
        if line.startswith("#"):
            if line.startswith("# roster:"):
                for label in line[len("# roster:"):].split():
                    if label in ids:
                        raise ParseError(f"label {label!r} repeated in roster",
                                         line_no=line_no)
                    ids[label] = len(labels)
                    labels.append(label)
            elif line.startswith("# layers:"):
                # declares layers up front; needed to round-trip edgeless ones
                for name in line[len("# layers:"):].split():
                    if name not in edges:
                        edges[name] = {}
                        layer_names.append(name)
            elif line.startswith("# inter:"):
                parts = line[len("# inter:"):].split()
                if len(parts) != 4:
                    raise ParseError("expected `# inter: <layerA> <layerB> <label> <w>`",
                                     line_no=line_no)
                inter_raw.append((line_no, *parts))
            continue
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.replace(",", " ").split()
        if len(parts) not in (3, 4):
            raise ParseError("expected `<a> <b> <layer> [w]`", line_no=line_no)
        a, b, layer = parts[0], parts[1], parts[2]
        weight = None
        if len(parts) == 4:
            weight = _parse_weight(parts[3], line_no)
        if a == b:
            loops += 1
            continue
        ia, ib = node_id(a, line_no), node_id(b, line_no)
        if layer not in edges:
            edges[layer] = {}
            layer_names.append(layer)
        key = (ia, ib) if ia < ib else (ib, ia)
        if key not in edges[layer] or weight is not None:
            edges[layer][key] = weight

    inter = {}
    for line_no, la, lb, label, wtok in inter_raw:
        if la not in edges or lb not in edges:
            raise ParseError(f"inter record references unknown layer {la!r} or {lb!r}",
                             line_no=line_no)
        if label not in ids:
            raise ParseError(f"inter record references unknown node {label!r}",
                             line_no=line_no)
        pair = (la, lb) if la <= lb else (lb, la)
        inter.setdefault(pair, {})[ids[label]] = _parse_weight(wtok, line_no)
    return MultiplexEdgeFile(tuple(labels), tuple(layer_names), edges, inter, loops)


def format_weight(w):
    """17 significant digits: parsing the text recovers the float exactly."""
    return format(float(w), ".17g")


def _parse_weight(token, line_no):
    try:
        w = float(token)
    except ValueError:
        raise ParseError(f"bad weight {token!r}", line_no=line_no) from None
    if not (math.isfinite(w) and w > 0.0):
        raise ParseError(f"weight must be finite and positive, got {token}",
                         line_no=line_no)
    return w


def read_multiplex(path):
    with open(path, encoding="utf-8") as fh:
        return parse_multiplex(fh)


def to_multiplex(file, layer_names):
    """Select layers into a MultiplexNetwork over the full roster.

    Nodes outside a layer's active set become isolated in that layer
    (their replicas still couple them in). Replica links default to
    weight 1 on consecutive selected pairs; `# inter:` records override
    the whole vector for their pair.
    """
    n = file.node_count
    layers = []
    for name in layer_names:
        records = file.layer_edges(name)
        weights = {k: w for k, w in records.items() if w is not None}
        layers.append(LayerGraph(n, frozenset(records), weights or None))
    network = couple_replicas(layers, 1.0)
    if not file.inter:
        return network

    selected = {name: idx for idx, name in enumerate(layer_names)}
    inter = dict(network.inter_weights)
    for (la, lb), by_node in file.inter.items():
        if la not in selected or lb not in selected:
            continue
        a, b = selected[la], selected[lb]
        key = (a, b) if a < b else (b, a)
        vec = np.zeros(n)
        for i, w in by_node.items():
            vec[i] = w
        inter[key] = vec
    return MultiplexNetwork(tuple(network.layers), inter)


@dataclass(frozen=True)
class LayerReport:
    """Table-style per-layer summary computed on active endpoints."""

    name: str
    active_nodes: int
    edge_count: int
    component_count: int
    average_degree: float          # on active nodes
    average_degree_roster: float   # same edges over the full roster


def layer_report(file):
    """Per-layer reports in file order, stats over each layer's active set."""
    reports = []
    roster = max(file.node_count, 1)
    for name in file.layer_names:
        records = file.edges[name]
        active = sorted({i for pair in records for i in pair})
        remap = {node: k for k, node in enumerate(active)}
        sub_edges = [(remap[i], remap[j]) for i, j in records]
        n_active = len(active)
        comps = connected_components(n_active, sub_edges) if n_active else []
        e = len(records)
        reports.append(LayerReport(
            name=name,
            active_nodes=n_active,
            edge_count=e,
            component_count=len(comps),
            average_degree=2.0 * e / n_active if n_active else 0.0,
            average_degree_roster=2.0 * e / roster,
        ))
    return tuple(reports)


def serialize_multiplex(file, fh):
    """Write records sorted by (layer, min id, max id); bit-stable output."""
    fh.write("# roster: " + " ".join(file.labels) + "\n")
    fh.write("# layers: " + " ".join(sorted(file.edges)) + "\n")
    for layer in sorted(file.edges):
        for (i, j), w in sorted(file.edges[layer].items()):
            line = f"{file.labels[i]} {file.labels[j]} {layer}"
            if w is not None:
                line += f" {format_weight(w)}"
            fh.write(line + "\n")
    for (la, lb) in sorted(file.inter):
        by_node = file.inter[(la, lb)]
        for i in sorted(by_node):
            fh.write(f"# inter: {la} {lb} {file.labels[i]} "
                     f"{format_weight(by_node[i])}\n")


def write_multiplex(file, path):
    with open(path, "w", encoding="utf-8") as fh:
        serialize_multiplex(file, fh)


def from_network(network, layer_names, labels=None):
    """Express a MultiplexNetwork as an edge file (inverse of to_multiplex)."""
    m = network.layer_count
    n = network.node_count
    if len(layer_names) != m:
        raise StructuralError(f"{len(layer_names)} names for {m} layers")
    if labels is None:
        width = len(str(n - 1))
        labels = tuple(f"n{idx:0{width}d}" for idx in range(n))
    else:
        labels = tuple(labels)
        if len(labels) != n:
            raise StructuralError(f"{len(labels)} labels for {n} nodes")
    edges = {}
    for name, layer in zip(layer_names, network.layers):
        if layer.weights is None:
            edges[name] = {e: None for e in layer.edges}
        else:
            edges[name] = {e: layer.weights.get(e, 1.0) for e in layer.edges}
    inter = {}
    for (a, b), vec in network.inter_weights.items():
        la, lb = layer_names[a], layer_names[b]
        pair = (la, lb) if la <= lb else (lb, la)
        by_node = {i: float(vec[i]) for i in range(n) if vec[i] > 0.0}
        if by_node:
            inter[pair] = by_node
    return MultiplexEdgeFile(labels, tuple(layer_names), edges, inter)


def write_edge_list(layer, fh, comments=()):
    """Single-layer edge list: `# n=<N>` header then sorted `i j [w]` lines."""
    fh.write(f"# n={layer.node_count}\n")
    for text in comments:
        fh.write(f"# {text}\n")
    for i, j in sorted(layer.edges):
        if layer.weights is None:
            fh.write(f"{i} {j}\n")
        else:
            fh.write(f"{i} {j} {format_weight(layer.weights.get((i, j), 1.0))}\n")


def read_edge_list(lines):
    """Parse `i j [w]` lines into a LayerGraph; `# n=<N>` fixes the size."""
    n = None
    edges = {}
    for line_no, raw in enumerate(lines, start=1):
        line = raw.strip()
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("n="):
                try:
                    n = int(body[2:])
                except ValueError:
                    raise ParseError(f"bad node count {body!r}", line_no=line_no) from None
            continue
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) not in (2, 3):
            raise ParseError("expected `i j [w]`", line_no=line_no)
        try:
            i, j = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"non-integer node id in {line!r}", line_no=line_no) from None
        w = _parse_weight(parts[2], line_no) if len(parts) == 3 else None
        if i == j:
            raise ParseError(f"self-loop on node {i}", line_no=line_no)
        key = (i, j) if i < j else (j, i)
        if key not in edges or w is not None:
            edges[key] = w
    if n is None:
        n = 1 + max((j for _, j in edges), default=0)
    weights = {k: w for k, w in edges.items() if w is not None}
    return LayerGraph(n, frozenset(edges), weights or None)
