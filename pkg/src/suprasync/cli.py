"""Command-line front end.

Subcommands cover the full pipeline: generate synthetic layers, bundle
them into a multiplex file, derive trust weights, report structure, and
produce the spectral and dynamical artifacts (CSV always, SVG when
asked). Outputs are byte-deterministic for fixed inputs, flags, and
seeds, and every CSV starts with a provenance comment.

Exit codes: 0 success, 2 configuration error, 3 data error, 4 numerical
error.
"""

import argparse
import hashlib
import sys
from dataclasses import dataclass

import numpy as np

from suprasync import __version__, dynamics, ingest, render, spectral, trust
from suprasync.core import build_supra, structural_stats
from suprasync.errors import (BracketError, ConfigError, ConvergenceError,
                              DisconnectedError, DomainError, GenerationError,
                              ParseError, StructuralError, UnknownLayerError)
from suprasync.generators import (GeneratorSpec, couple_replicas, generate_ba,
                                  generate_powerlaw)


@dataclass(frozen=True)
class RunConfig:
    """Resolved invocation: subcommand, live flags, and hashed inputs."""

    command: str
    options: dict
    inputs: tuple = ()

    @property
    def seed(self):
        return self.options.get("seed")

    def provenance(self):
        h = hashlib.sha256(self.command.encode())
        h.update(repr(sorted(self.options.items())).encode())
        for path in self.inputs:
            with open(path, "rb") as fh:
                h.update(hashlib.sha256(fh.read()).digest())
        seed = self.seed if self.seed is not None else "-"
        return f"# seed={seed}, spec={h.hexdigest()[:12]}, version={__version__}"


@dataclass(frozen=True)
class SweepResult:
    """Grid artifact: named axes, the value matrix, and its provenance."""

    axes: tuple
    values: np.ndarray
    metric: str
    provenance: str

    def __post_init__(self):
        shape = tuple(len(vals) for _, vals in self.axes)
        if self.values.shape != shape:
            raise ConfigError(
                f"matrix shape {self.values.shape} does not match axes {shape}")


# excluded from the spec hash: input contents are hashed separately, and
# output locations or worker counts do not change what gets computed
_NON_SPEC_OPTIONS = frozenset(
    {"input", "layer", "ledger", "out", "svg", "canonical", "jobs"})


def _run_config(command, args, inputs=()):
    options = {k: v for k, v in vars(args).items()
               if k != "func" and k not in _NON_SPEC_OPTIONS and v is not None}
    for key, val in options.items():
        if isinstance(val, list):
            options[key] = tuple(val)
    return RunConfig(command, options, tuple(inputs))


def parse_grid(text):
    """`A:B:S` linear (step S > 0) or `A:B:logN` (N log-spaced points).

    Linear values are rounded to 12 decimals so 0.2-steps print clean.
    """
    parts = text.split(":")
    if len(parts) != 3:
        raise ConfigError(f"grid must be start:stop:step or start:stop:logN,"
                          f" got {text!r}")
    try:
        start, stop = float(parts[0]), float(parts[1])
    except ValueError:
        raise ConfigError(f"bad grid bounds in {text!r}") from None
    if not (np.isfinite(start) and np.isfinite(stop)):
        raise ConfigError(f"grid bounds must be finite in {text!r}")
    if parts[2].startswith("log"):
        try:
            n = int(parts[2][3:])
        except ValueError:
            raise ConfigError(f"bad log point count in {text!r}") from None
        if n < 2:
            raise ConfigError("log grid needs at least 2 points")
        if not 0.0 < start < stop:
            raise ConfigError("log grid needs 0 < start < stop")
        return tuple(float(v) for v in np.geomspace(start, stop, n))
    try:
        step = float(parts[2])
    except ValueError:
        raise ConfigError(f"bad grid step in {text!r}") from None
    if step <= 0.0:
        raise ConfigError("grid step must be positive")
    if stop < start:
        raise ConfigError("grid stop must not precede start")
    count = int(np.floor((stop - start) / step + 1e-9)) + 1
    return tuple(round(start + i * step, 12) for i in range(count))


def _num(v):
    return repr(float(v))


def _write_lines(path, lines):
    text = "".join(line + "\n" for line in lines)
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _csv_lines(provenance, header, rows, footers=()):
    lines = [provenance, ",".join(header)]
    for row in rows:
        lines.append(",".join(str(c) if isinstance(c, (str, int)) else _num(c)
                              for c in row))
    lines.extend(f"# {text}" for text in footers)
    return lines


def _load_selected(path, select):
    file = ingest.read_multiplex(path)
    names = select.split(",") if select else list(file.layer_names)
    return file, names, ingest.to_multiplex(file, names)


def _p_vector(text, layer_count):
    try:
        vals = [float(v) for v in text.split(",")]
    except ValueError:
        raise ConfigError(f"bad --p value in {text!r}") from None
    if len(vals) == 1:
        vals = vals * layer_count
    if len(vals) != layer_count:
        raise ConfigError(
            f"--p lists {len(vals)} values for {layer_count} layers")
    return vals


def cmd_generate(args):
    config = _run_config("generate", args)
    spec = GeneratorSpec(model=args.model, n=args.nodes, seed=args.seed,
                         m=args.m, gamma=args.gamma, k_min=args.kmin)
    comments = [f"model={args.model} nodes={args.nodes} seed={args.seed}"]
    if args.model == "ba":
        layer = generate_ba(spec)
        comments[0] += f" m={args.m}"
    else:
        layer, report = generate_powerlaw(spec, with_report=True)
        comments[0] += f" gamma={args.gamma} kmin={args.kmin}"
        comments.append(
            "sampled_degree_sum={sampled_degree_sum} "
            "realized_degree_sum={realized_degree_sum} attempts={attempts} "
            "rewired_components={rewired_components}".format(**report))
    comments.append(config.provenance().lstrip("# "))
    with open(args.out, "w", encoding="utf-8") as fh:
        ingest.write_edge_list(layer, fh, comments)
    print(f"wrote {args.out}: nodes={layer.node_count} edges={layer.edge_count}")
    return 0


def cmd_multiplex(args):
    config = _run_config("multiplex", args, inputs=args.layer)
    layers = []
    for path in args.layer:
        with open(path, encoding="utf-8") as fh:
            layers.append(ingest.read_edge_list(fh))
    if args.names:
        names = args.names.split(",")
        if len(names) != len(layers):
            raise ConfigError(f"{len(names)} names for {len(layers)} layers")
    else:
        names = [f"L{i + 1}" for i in range(len(layers))]
    network = couple_replicas(layers, args.inter_weight)
    file = ingest.from_network(network, names)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(config.provenance() + "\n")
        ingest.serialize_multiplex(file, fh)
    print(f"wrote {args.out}: layers={len(layers)} nodes={network.node_count}")
    return 0


def cmd_weights(args):
    sources = [bool(args.ledger), args.synth, args.unweighted]
    if sum(sources) != 1:
        raise ConfigError("need exactly one of --ledger, --synth, --unweighted")
    inputs = [args.input] + ([args.ledger] if args.ledger else [])
    config = _run_config("weights", args, inputs=inputs)
    file, names, network = _load_selected(args.input, args.select)

    if args.unweighted:
        m, n = network.layer_count, network.node_count
        profile = trust.TrustProfile(np.zeros((m, n)), np.zeros(n),
                                     np.zeros(n), np.zeros(n))
    else:
        if args.ledger:
            ledger = trust.read_ledger(args.ledger)
        else:
            if args.seed is None:
                raise ConfigError("--synth needs --seed")
            ledger = trust.synthesize_ledger(network, args.seed, args.max_count)
        profile = trust.build_profile(ledger, network)
    weighted = trust.assign_weights(network, profile,
                                    use_aggregate=args.aggregate)
    out_file = ingest.from_network(weighted, names, labels=file.labels)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(config.provenance() + "\n")
        ingest.serialize_multiplex(out_file, fh)
    spread = [w for layer in weighted.layers if layer.weights
              for w in layer.weights.values()]
    if spread:
        print(f"wrote {args.out}: weights in "
              f"[{min(spread):.6g}, {max(spread):.6g}]")
    else:
        print(f"wrote {args.out}: no intra-layer edges to weight")
    return 0


def cmd_stats(args):
    config = _run_config("stats", args, inputs=[args.input])
    file, names, network = _load_selected(args.input, args.select)
    p = _p_vector(args.p, network.layer_count)
    stats = structural_stats(network)
    supra = build_supra(network, p, args.dx)
    eigs = spectral.eig_sym(supra.combined, vectors=False).eigenvalues

    replicas = sum(int(np.count_nonzero(vec))
                   for vec in network.inter_weights.values())
    supra_edges = sum(layer.edge_count for layer in network.layers) + replicas
    header = ["scope", "name", "nodes", "edges", "components", "avg_degree",
              "clustering", "k_max", "lambda2", "lambdaN"]
    rows = []
    for name, layer in zip(names, stats.layers):
        rows.append(["layer", name, layer.node_count, layer.edge_count,
                     layer.component_count, layer.average_degree,
                     layer.clustering, "-", "-", "-"])
    rows.append(["supra", "+".join(names), supra.dimension, supra_edges,
                 stats.supra_component_count, "-", stats.supra_clustering,
                 stats.k_max, float(eigs[1]), float(eigs[-1])])
    footers = [f"p={','.join(_num(v) for v in p)} dx={_num(args.dx)}"]
    _write_lines(args.out, _csv_lines(config.provenance(), header, rows, footers))
    return 0


def cmd_sweep_lambda2(args):
    config = _run_config("sweep-lambda2", args, inputs=[args.input])
    _, _, network = _load_selected(args.input, args.select)
    p_values = parse_grid(args.p_grid)
    dx_values = parse_grid(args.dx_grid)
    if args.jobs is not None and args.jobs < 1:
        raise ConfigError("--jobs must be at least 1")
    sweep = spectral.lambda2_sweep(network, p_values, dx_values, jobs=args.jobs)
    result = SweepResult(
        axes=(("p", sweep.p_values), ("dx", sweep.dx_values)),
        values=sweep.lambda2,
        metric="lambda2",
        provenance=config.provenance(),
    )
    rows = [[p, d, result.values[i, j]]
            for i, p in enumerate(sweep.p_values)
            for j, d in enumerate(sweep.dx_values)]
    _write_lines(args.out,
                 _csv_lines(result.provenance, ["p", "dx", "lambda2"], rows))
    if args.svg:
        svg = render.heatmap_svg(sweep.p_values, sweep.dx_values, sweep.lambda2,
                                 row_label="p", col_label="d_x",
                                 value_label="lambda2",
                                 title="algebraic connectivity")
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(svg)
    return 0


def _unimodal(values):
    """True when the sequence falls to a single valley then rises."""
    drop = 0
    while drop + 1 < len(values) and values[drop + 1] <= values[drop]:
        drop += 1
    return all(values[i + 1] >= values[i] for i in range(drop, len(values) - 1))


def cmd_eigenratio(args):
    config = _run_config("eigenratio", args, inputs=[args.input])
    _, _, network = _load_selected(args.input, args.select)
    p = _p_vector(args.p, network.layer_count)
    dx_values = parse_grid(args.dx_grid)
    curve = spectral.eigenratio_curve(
        network, p, dx_values,
        scale_strength=not args.no_dx_strength,
        signed_weights=args.signed_layer_weights)
    rows = list(zip(curve.dx_values, curve.simulated, curve.weak, curve.strong))
    footers = []
    if curve.optimal is not None:
        footers.append(f"optimal: dx={_num(curve.optimal[0])}"
                       f" R={_num(curve.optimal[1])}")
    else:
        footers.append("optimal: none (weak and strong curves do not cross"
                       " on this grid)")
    footers.append(f"unimodal: {'true' if _unimodal(curve.simulated) else 'false'}")
    _write_lines(args.out, _csv_lines(
        config.provenance(), ["dx", "R_sim", "R_weak", "R_strong"], rows,
        footers))
    if args.svg:
        marker = None
        if curve.optimal is not None:
            d_star, r_star = curve.optimal
            marker = (d_star, r_star, f"({d_star:.6g}, {r_star:.6g})")
        svg = render.curves_svg(
            curve.dx_values,
            [("simulated", curve.simulated), ("weak", curve.weak),
             ("strong", curve.strong)],
            x_label="d_x", y_label="R", title="eigenratio", marker=marker)
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(svg)
    return 0


def cmd_synctime(args):
    config = _run_config("synctime", args, inputs=[args.input])
    _, _, network = _load_selected(args.input, args.select)
    p = _p_vector(args.p, network.layer_count)
    tau_values = parse_grid(args.tau_grid)
    supra = build_supra(network, p, args.dx)
    summary = spectral.eig_sym(supra.combined, vectors=False)
    state = dynamics.init_modes(summary, args.seed)
    rows = [[tau, dynamics.sync_level(state, tau)] for tau in tau_values]
    footers = []
    if not np.any(state.amplitudes):
        print("warning: every mode amplitude is zero, tau_s = 0",
              file=sys.stderr)
        footers.append("warning: all amplitudes zero")
    tau_s = dynamics.sync_time(state, args.epsilon)
    footers.append(f"tau_s={_num(tau_s)} epsilon={_num(args.epsilon)}")
    _write_lines(args.out,
                 _csv_lines(config.provenance(), ["tau", "S"], rows, footers))
    return 0


def cmd_ingest(args):
    config = _run_config("ingest", args, inputs=[args.input])
    file = ingest.read_multiplex(args.input)
    reports = ingest.layer_report(file)
    header = ["layer", "active_nodes", "edges", "components", "avg_degree",
              "avg_degree_roster"]
    rows = [[r.name, r.active_nodes, r.edge_count, r.component_count,
             r.average_degree, r.average_degree_roster] for r in reports]
    footers = [f"roster={file.node_count} layers={len(file.layer_names)}"
               f" skipped_self_loops={file.skipped_self_loops}"]
    _write_lines(args.out, _csv_lines(config.provenance(), header, rows, footers))
    if args.canonical:
        with open(args.canonical, "w", encoding="utf-8") as fh:
            ingest.serialize_multiplex(file, fh)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="suprasync",
        description="Multiplex supra-Laplacian spectra and synchronization")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="write one synthetic layer edge list")
    gen.add_argument("--model", choices=("ba", "powerlaw"), required=True)
    gen.add_argument("--nodes", type=int, required=True)
    gen.add_argument("--seed", type=int, required=True)
    gen.add_argument("--m", type=int, help="stubs per new node (ba)")
    gen.add_argument("--gamma", type=float, help="degree exponent (powerlaw)")
    gen.add_argument("--kmin", type=int, default=2)
    gen.add_argument("--out", required=True)
    gen.set_defaults(func=cmd_generate)

    mux = sub.add_parser("multiplex", help="bundle layer edge lists")
    mux.add_argument("--layer", action="append", required=True,
                     help="edge-list path, repeat per layer")
    mux.add_argument("--names", help="comma-separated layer names")
    mux.add_argument("--inter-weight", type=float, default=1.0)
    mux.add_argument("--out", required=True)
    mux.set_defaults(func=cmd_multiplex)

    wts = sub.add_parser("weights", help="derive trust-based edge weights")
    wts.add_argument("--in", dest="input", required=True)
    wts.add_argument("--select", help="comma-separated layer names")
    wts.add_argument("--ledger", help="transaction tally file")
    wts.add_argument("--synth", action="store_true",
                     help="synthesize tallies (needs --seed)")
    wts.add_argument("--seed", type=int)
    wts.add_argument("--max-count", type=int, default=100)
    wts.add_argument("--aggregate", action="store_true",
                     help="pool trust over layers instead of per layer")
    wts.add_argument("--unweighted", action="store_true",
                     help="force every weight to exactly 1")
    wts.add_argument("--out", required=True)
    wts.set_defaults(func=cmd_weights)

    st = sub.add_parser("stats", help="structural and spectral summary")
    st.add_argument("--in", dest="input", required=True)
    st.add_argument("--select")
    st.add_argument("--p", default="1.0")
    st.add_argument("--dx", type=float, default=1.0)
    st.add_argument("--out", default="-")
    st.set_defaults(func=cmd_stats)

    sw = sub.add_parser("sweep-lambda2", help="lambda2 over a (p, d_x) grid")
    sw.add_argument("--in", dest="input", required=True)
    sw.add_argument("--select")
    sw.add_argument("--p-grid", default="0.2:2.0:0.2")
    sw.add_argument("--dx-grid", default="0.2:2.0:0.2")
    sw.add_argument("--jobs", type=int)
    sw.add_argument("--out", default="-")
    sw.add_argument("--svg")
    sw.set_defaults(func=cmd_sweep_lambda2)

    er = sub.add_parser("eigenratio", help="R curve with both approximations")
    er.add_argument("--in", dest="input", required=True)
    er.add_argument("--select")
    er.add_argument("--p", default="1.0")
    er.add_argument("--dx-grid", default="0.1:2.0:0.1")
    er.add_argument("--no-dx-strength", action="store_true",
                    help="weak numerator without the d_x strength factor")
    er.add_argument("--signed-layer-weights", action="store_true",
                    help="strong mix uses raw block sums instead of squares")
    er.add_argument("--out", default="-")
    er.add_argument("--svg")
    er.set_defaults(func=cmd_eigenratio)

    sy = sub.add_parser("synctime", help="synchronization level and time")
    sy.add_argument("--in", dest="input", required=True)
    sy.add_argument("--select")
    sy.add_argument("--p", default="1.0")
    sy.add_argument("--dx", type=float, default=1.0)
    sy.add_argument("--seed", type=int, required=True)
    sy.add_argument("--epsilon", type=float, default=0.01)
    sy.add_argument("--tau-grid", default="0:1:0.02")
    sy.add_argument("--out", default="-")
    sy.set_defaults(func=cmd_synctime)

    ing = sub.add_parser("ingest", help="parse a multiplex file and report")
    ing.add_argument("--in", dest="input", required=True)
    ing.add_argument("--out", default="-")
    ing.add_argument("--canonical", help="also write the canonical form here")
    ing.set_defaults(func=cmd_ingest)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        return _fail(exc, 2)
    except (DomainError,) as exc:
        return _fail(exc, 2)
    except (ParseError, StructuralError, UnknownLayerError, DisconnectedError,
            OSError) as exc:
        return _fail(exc, 3)
    except (ConvergenceError, BracketError, GenerationError) as exc:
        return _fail(exc, 4)


def _fail(exc, code):
    print(f"error: {exc}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
