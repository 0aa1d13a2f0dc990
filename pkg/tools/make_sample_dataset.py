#!/usr/bin/env python3
"""Build the bundled sample dataset `data/department_social.mpx`.

The file is a five-layer social multiplex over 61 people whose per-layer
shape matches the published statistics of the CS-Aarhus department
survey: same roster size and, for every layer, the same edge count,
connected-component count, and active-node count. The raw survey data is
not redistributed here; the layers are synthetic graphs constrained to
those counts.

The Facebook and Lunch layers are additionally tuned: candidate
instances are generated until the two-layer synchronizability optimum
(d_x*, R*) computed by `suprasync.optimal_dx` lands near the working
point (0.75, 24.98) reported for the survey pair. Everything is seeded,
so reruns reproduce the file byte for byte.

Usage: python3 tools/make_sample_dataset.py [--out PATH]
"""

import argparse
import itertools
import sys
from pathlib import Path

import numpy as np

from suprasync import (
    BracketError,
    DisconnectedError,
    MultiplexEdgeFile,
    layer_report,
    optimal_dx,
    to_multiplex,
    write_multiplex,
)

ROSTER = tuple(f"p{k:02d}" for k in range(1, 62))
LUNCH_ABSENT = 60            # the one roster member with no lunch ties
TARGET = (0.75, 24.98)       # published (d_x*, R*) for Facebook+Lunch

# layer -> (active nodes, edges, components)
SHAPE = {
    "Work": (60, 194, 2),
    "Leisure": (47, 88, 1),
    "Coauthor": (25, 21, 8),
    "Lunch": (60, 193, 1),
    "Facebook": (32, 124, 1),
}


def spanning_tree(nodes, rng):
    """Random tree: each node after the first attaches to an earlier one."""
    order = list(nodes)
    rng.shuffle(order)
    edges = set()
    for k in range(1, len(order)):
        other = order[rng.integers(0, k)]
        a, b = order[k], other
        edges.add((min(a, b), max(a, b)))
    return edges


def add_chords(edges, pool_nodes, n_target, rng):
    """Grow `edges` with distinct random pairs from pool_nodes to n_target."""
    pool = list(pool_nodes)
    while len(edges) < n_target:
        a, b = rng.choice(len(pool), size=2, replace=False)
        a, b = pool[a], pool[b]
        key = (min(a, b), max(a, b))
        if key not in edges:
            edges.add(key)
    return edges


def connected_graph(nodes, n_edges, rng):
    nodes = list(nodes)
    if not len(nodes) - 1 <= n_edges <= len(nodes) * (len(nodes) - 1) // 2:
        raise ValueError("edge count out of range for a connected graph")
    edges = spanning_tree(nodes, rng)
    return add_chords(edges, nodes, n_edges, rng)


def hub_graph(nodes, hub, hub_degree, n_edges, rng):
    """Connected graph where `hub` has exactly `hub_degree` neighbors.

    The rest of the graph is a tree plus chords that never touch the hub,
    so the hub degree survives the fill-in.
    """
    rest = [v for v in nodes if v != hub]
    edges = spanning_tree(rest, rng)
    picks = rng.choice(len(rest), size=hub_degree, replace=False)
    for k in picks:
        v = rest[k]
        edges.add((min(hub, v), max(hub, v)))
    return add_chords(edges, rest, n_edges, rng)


def component_graph(groups, extras, rng):
    """Disjoint components: one tree per group plus `extras[k]` chords."""
    edges = set()
    for group, extra in zip(groups, extras):
        part = spanning_tree(group, rng)
        add_chords(part, group, len(group) - 1 + extra, rng)
        edges |= part
    return edges


def build_lunch_facebook(seed, hub_degree):
    """One candidate Facebook+Lunch pair; returns (lunch, facebook) edges."""
    rng = np.random.default_rng([seed, hub_degree])
    lunch_nodes = [v for v in range(61) if v != LUNCH_ABSENT]
    hub = lunch_nodes[0]
    lunch = hub_graph(lunch_nodes, hub, hub_degree, SHAPE["Lunch"][1], rng)

    # Facebook must include the lunch absentee so the union covers the
    # roster; keeping the lunch hub out keeps the spectra independent.
    others = [v for v in range(61) if v not in (LUNCH_ABSENT, hub)]
    picks = rng.choice(len(others), size=31, replace=False)
    fb_nodes = sorted([others[k] for k in picks] + [LUNCH_ABSENT])
    facebook = connected_graph(fb_nodes, SHAPE["Facebook"][1], rng)
    return lunch, facebook


def measure_pair(lunch, facebook):
    """(d_x*, R*) of the unweighted two-layer multiplex at p = 1."""
    file = MultiplexEdgeFile(
        labels=ROSTER,
        layer_names=("Facebook", "Lunch"),
        edges={
            "Facebook": {pair: None for pair in facebook},
            "Lunch": {pair: None for pair in lunch},
        },
    )
    network = to_multiplex(file, ("Facebook", "Lunch"))
    return optimal_dx(network, (1.0, 1.0), (0.01, 100.0))


def tune_pair():
    """Search seeds and hub degrees for the pair closest to TARGET."""
    best = None
    for hub_degree, seed in itertools.product((33, 35, 37, 31, 39), range(40)):
        lunch, facebook = build_lunch_facebook(seed, hub_degree)
        try:
            d_star, r_star = measure_pair(lunch, facebook)
        except (BracketError, DisconnectedError):
            continue
        err = max(abs(d_star - TARGET[0]) / TARGET[0],
                  abs(r_star - TARGET[1]) / TARGET[1])
        if best is None or err < best[0]:
            best = (err, seed, hub_degree, lunch, facebook, d_star, r_star)
        if err < 0.10:
            break
    if best is None:
        raise RuntimeError("no candidate pair could be measured")
    return best


def build_static_layers():
    """Work, Leisure, Coauthor: count-matched, independent of the tuning."""
    rng = np.random.default_rng(7)

    def sample(count, exclude=()):
        pool = [v for v in range(61) if v not in exclude]
        picks = rng.choice(len(pool), size=count, replace=False)
        return sorted(pool[k] for k in picks)

    work_nodes = sample(60)
    work = component_graph([work_nodes[:45], work_nodes[45:]],
                           [150 - 44, 44 - 14], rng)

    leisure = connected_graph(sample(47), SHAPE["Leisure"][1], rng)

    co_nodes = sample(25)
    sizes = (6, 4, 3, 3, 3, 2, 2, 2)
    groups, start = [], 0
    for size in sizes:
        groups.append(co_nodes[start:start + size])
        start += size
    coauthor = component_graph(groups, (2, 1, 1, 0, 0, 0, 0, 0), rng)
    return work, leisure, coauthor


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    default_out = Path(__file__).resolve().parents[1] / "data" / "department_social.mpx"
    parser.add_argument("--out", default=str(default_out))
    args = parser.parse_args(argv)

    err, seed, hub_degree, lunch, facebook, d_star, r_star = tune_pair()
    work, leisure, coauthor = build_static_layers()

    layer_edges = {
        "Work": work, "Leisure": leisure, "Coauthor": coauthor,
        "Lunch": lunch, "Facebook": facebook,
    }
    file = MultiplexEdgeFile(
        labels=ROSTER,
        layer_names=tuple(SHAPE),
        edges={name: {pair: None for pair in edges}
               for name, edges in layer_edges.items()},
    )

    for report in layer_report(file):
        active, n_edges, comps = SHAPE[report.name]
        ok = (report.active_nodes == active
              and report.edge_count == n_edges
              and report.component_count == comps)
        print(f"{report.name:9s} active={report.active_nodes:2d} "
              f"edges={report.edge_count:3d} comps={report.component_count} "
              f"avg={report.average_degree:.2f} [{'ok' if ok else 'MISMATCH'}]")
        if not ok:
            raise SystemExit(f"layer {report.name} missed its target shape")

    print(f"Facebook+Lunch optimum: d_x*={d_star:.4f} R*={r_star:.3f} "
          f"(target {TARGET[0]}, {TARGET[1]}; worst rel err {err:.1%}; "
          f"seed={seed}, hub_degree={hub_degree})")

    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    write_multiplex(file, out)
    print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
