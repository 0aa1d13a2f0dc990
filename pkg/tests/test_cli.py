"""Command-line interface: subcommands, formats, exit codes, reproducibility."""

import xml.etree.ElementTree as ET

import numpy as np
import pytest

from helpers import laplacian_of
from suprasync import cli
from suprasync.errors import (BracketError, ConfigError, ConvergenceError,
                              DisconnectedError, DomainError, GenerationError,
                              ParseError, StructuralError, UnknownLayerError)


def run(*argv):
    return cli.main(list(argv))


def read(path):
    return path.read_text(encoding="utf-8")


def data_rows(text):
    lines = [l for l in text.splitlines() if l and not l.startswith("#")]
    return lines[0].split(","), [l.split(",") for l in lines[1:]]


def footers(text):
    return [l for l in text.splitlines()[1:] if l.startswith("#")]


@pytest.fixture()
def toy_mpx(tmp_path):
    """Two-triangle multiplex written through the real pipeline."""
    a, b = tmp_path / "a.edges", tmp_path / "b.edges"
    for path in (a, b):
        path.write_text("# n=3\n0 1\n0 2\n1 2\n")
    out = tmp_path / "toy.mpx"
    assert run("multiplex", "--layer", str(a), "--layer", str(b),
               "--names", "up,down", "--out", str(out)) == 0
    return out


def test_generate_ba_layer(tmp_path, capsys):
    out = tmp_path / "ba.edges"
    assert run("generate", "--model", "ba", "--nodes", "200", "--m", "2",
               "--seed", "42", "--out", str(out)) == 0
    assert "edges=397" in capsys.readouterr().out
    lines = [l for l in read(out).splitlines() if not l.startswith("#")]
    assert len(lines) == 397
    assert read(out).startswith("# n=200\n")
    assert "seed=42" in read(out)


def test_generate_requires_seed(tmp_path):
    with pytest.raises(SystemExit) as info:
        run("generate", "--model", "ba", "--nodes", "10", "--m", "2",
            "--out", str(tmp_path / "x.edges"))
    assert info.value.code == 2


def test_generate_powerlaw_manifest(tmp_path):
    out = tmp_path / "pl.edges"
    assert run("generate", "--model", "powerlaw", "--nodes", "200",
               "--gamma", "2.1", "--kmin", "2", "--seed", "7",
               "--out", str(out)) == 0
    text = read(out)
    assert "gamma=2.1" in text
    assert "attempts=" in text


def test_generate_rejects_bad_spec(tmp_path):
    code = run("generate", "--model", "ba", "--nodes", "3", "--m", "5",
               "--seed", "1", "--out", str(tmp_path / "x.edges"))
    assert code == 2


def test_byte_identical_reruns(tmp_path):
    outs = []
    for name in ("one.edges", "two.edges"):
        out = tmp_path / name
        run("generate", "--model", "powerlaw", "--nodes", "80",
            "--gamma", "2.1", "--seed", "5", "--out", str(out))
        outs.append(read(out))
    assert outs[0] == outs[1]


def test_multiplex_and_stats(toy_mpx, tmp_path, capsys):
    capsys.readouterr()
    out = tmp_path / "stats.csv"
    assert run("stats", "--in", str(toy_mpx), "--out", str(out)) == 0
    header, rows = data_rows(read(out))
    assert header[:4] == ["scope", "name", "nodes", "edges"]
    scopes = [r[0] for r in rows]
    assert scopes == ["layer", "layer", "supra"]
    supra = rows[-1]
    assert supra[2] == "6" and supra[3] == "9"
    # supra-graph of two coupled triangles is the 3-prism: CC = 1/3 each node
    assert float(supra[6]) == pytest.approx(1 / 3)


def test_stats_select_subset(toy_mpx, tmp_path):
    out = tmp_path / "stats.csv"
    assert run("stats", "--in", str(toy_mpx), "--select", "up",
               "--out", str(out)) == 0
    _, rows = data_rows(read(out))
    assert len(rows) == 2  # one layer plus the supra row


def test_weights_unweighted_forces_unit(toy_mpx, tmp_path):
    out = tmp_path / "w.mpx"
    assert run("weights", "--in", str(toy_mpx), "--unweighted",
               "--out", str(out)) == 0
    body = [l for l in read(out).splitlines() if not l.startswith("#")]
    assert body and all(l.split()[-1] == "1" for l in body)


def test_weights_synth_bounds_and_round_trip(toy_mpx, tmp_path):
    out = tmp_path / "w.mpx"
    assert run("weights", "--in", str(toy_mpx), "--synth", "--seed", "9",
               "--max-count", "50", "--out", str(out)) == 0
    from suprasync import read_multiplex
    file = read_multiplex(out)
    weights = [w for layer in file.edges.values() for w in layer.values()]
    assert weights and all(1.0 <= w <= 2.0 for w in weights)
    # reserialization of the parsed file is byte-stable
    out2 = tmp_path / "w2.mpx"
    run("weights", "--in", str(toy_mpx), "--synth", "--seed", "9",
        "--max-count", "50", "--out", str(out2))
    assert read(out) == read(out2)


def test_weights_source_flags_are_exclusive(toy_mpx, tmp_path):
    code = run("weights", "--in", str(toy_mpx), "--synth", "--unweighted",
               "--seed", "1", "--out", str(tmp_path / "w.mpx"))
    assert code == 2
    code = run("weights", "--in", str(toy_mpx),
               "--out", str(tmp_path / "w.mpx"))
    assert code == 2
    code = run("weights", "--in", str(toy_mpx), "--synth",
               "--out", str(tmp_path / "w.mpx"))
    assert code == 2


def test_sweep_default_grid(toy_mpx, tmp_path):
    out = tmp_path / "sweep.csv"
    svg = tmp_path / "sweep.svg"
    assert run("sweep-lambda2", "--in", str(toy_mpx), "--out", str(out),
               "--svg", str(svg)) == 0
    text = read(out)
    header, rows = data_rows(text)
    assert header == ["p", "dx", "lambda2"]
    assert len(rows) == 100
    assert text.splitlines()[0].startswith("# seed=")
    # row-major in p then dx
    assert [r[0] for r in rows[:10]] == [repr(0.2)] * 10
    ET.fromstring(read(svg))
    assert len(read(svg).encode()) < 2_000_000


def test_sweep_lambda2_values_against_direct(toy_mpx, tmp_path):
    out = tmp_path / "sweep.csv"
    assert run("sweep-lambda2", "--in", str(toy_mpx),
               "--p-grid", "1.0:1.0:1.0", "--dx-grid", "0.5:1.0:0.5",
               "--out", str(out)) == 0
    _, rows = data_rows(read(out))
    tri = laplacian_of(3, [(0, 1), (0, 2), (1, 2)])
    for row in rows:
        d = float(row[1])
        supra = np.block([
            [tri + d * np.eye(3), -d * np.eye(3)],
            [-d * np.eye(3), tri + d * np.eye(3)]])
        lam2 = np.sort(np.linalg.eigvalsh(supra))[1]
        assert float(row[2]) == pytest.approx(lam2, abs=1e-9)


def test_sweep_jobs_flag(toy_mpx, tmp_path):
    a, b = tmp_path / "s1.csv", tmp_path / "s2.csv"
    run("sweep-lambda2", "--in", str(toy_mpx), "--p-grid", "0.5:1.5:0.5",
        "--dx-grid", "0.5:1.0:0.5", "--out", str(a))
    run("sweep-lambda2", "--in", str(toy_mpx), "--p-grid", "0.5:1.5:0.5",
        "--dx-grid", "0.5:1.0:0.5", "--jobs", "2", "--out", str(b))
    assert read(a) == read(b)
    assert run("sweep-lambda2", "--in", str(toy_mpx), "--jobs", "0",
               "--out", str(tmp_path / "x.csv")) == 2


def test_eigenratio_toy_matches_direct(toy_mpx, tmp_path):
    out = tmp_path / "er.csv"
    svg = tmp_path / "er.svg"
    assert run("eigenratio", "--in", str(toy_mpx), "--dx-grid", "0.5:1.5:0.5",
               "--out", str(out), "--svg", str(svg)) == 0
    text = read(out)
    header, rows = data_rows(text)
    assert header == ["dx", "R_sim", "R_weak", "R_strong"]
    tri = laplacian_of(3, [(0, 1), (0, 2), (1, 2)])
    for row in rows:
        d = float(row[0])
        supra = np.block([
            [tri + d * np.eye(3), -d * np.eye(3)],
            [-d * np.eye(3), tri + d * np.eye(3)]])
        eigs = np.sort(np.linalg.eigvalsh(supra))
        assert float(row[1]) == pytest.approx(eigs[-1] / eigs[1], rel=1e-9)
    assert any(f.startswith("# optimal:") for f in footers(text))
    assert any(f.startswith("# unimodal:") for f in footers(text))
    ET.fromstring(read(svg))


def test_eigenratio_log_grid(toy_mpx, tmp_path):
    out = tmp_path / "er.csv"
    assert run("eigenratio", "--in", str(toy_mpx), "--dx-grid", "0.1:10:log3",
               "--out", str(out)) == 0
    _, rows = data_rows(read(out))
    assert [float(r[0]) for r in rows] == pytest.approx([0.1, 1.0, 10.0])


def test_synctime_output(toy_mpx, tmp_path):
    out = tmp_path / "sync.csv"
    assert run("synctime", "--in", str(toy_mpx), "--seed", "3",
               "--dx", "1.0", "--out", str(out)) == 0
    text = read(out)
    header, rows = data_rows(text)
    assert header == ["tau", "S"]
    values = [float(r[1]) for r in rows]
    assert all(b >= a - 1e-12 for a, b in zip(values, values[1:]))
    line = [f for f in footers(text) if f.startswith("# tau_s=")][0]
    tau_s = float(line.split("=")[1].split()[0])
    assert tau_s > 0.0


def test_synctime_epsilon_ordering(toy_mpx, tmp_path):
    taus = {}
    for eps in ("0.01", "0.5"):
        out = tmp_path / f"sync{eps}.csv"
        run("synctime", "--in", str(toy_mpx), "--seed", "3",
            "--epsilon", eps, "--out", str(out))
        line = [f for f in footers(read(out)) if "tau_s=" in f][0]
        taus[eps] = float(line.split("tau_s=")[1].split()[0])
    assert taus["0.5"] <= taus["0.01"]


def test_synctime_coupling_ordering(tmp_path):
    a, b = tmp_path / "a.edges", tmp_path / "b.edges"
    run("generate", "--model", "ba", "--nodes", "60", "--m", "2",
        "--seed", "1", "--out", str(a))
    run("generate", "--model", "ba", "--nodes", "60", "--m", "2",
        "--seed", "2", "--out", str(b))
    mpx = tmp_path / "net.mpx"
    run("multiplex", "--layer", str(a), "--layer", str(b), "--out", str(mpx))
    taus = {}
    for dx in ("0.3", "20"):
        out = tmp_path / f"sync{dx}.csv"
        run("synctime", "--in", str(mpx), "--seed", "5", "--dx", dx,
            "--out", str(out))
        line = [f for f in footers(read(out)) if "tau_s=" in f][0]
        taus[dx] = float(line.split("tau_s=")[1].split()[0])
    assert taus["20"] < taus["0.3"]


def test_synctime_all_zero_warning(tmp_path, capsys):
    solo = tmp_path / "solo.edges"
    solo.write_text("# n=1\n")
    mpx = tmp_path / "solo.mpx"
    run("multiplex", "--layer", str(solo), "--out", str(mpx))
    out = tmp_path / "sync.csv"
    capsys.readouterr()
    assert run("synctime", "--in", str(mpx), "--seed", "1",
               "--out", str(out)) == 0
    assert "warning" in capsys.readouterr().err
    assert "tau_s=0.0" in read(out)


def test_ingest_report_and_canonical(tmp_path):
    src = tmp_path / "raw.mpx"
    src.write_text("u v work\nv u work\nu u lunch\nu w lunch\n")
    out = tmp_path / "report.csv"
    canon = tmp_path / "canon.mpx"
    assert run("ingest", "--in", str(src), "--out", str(out),
               "--canonical", str(canon)) == 0
    header, rows = data_rows(read(out))
    assert header[0] == "layer"
    by_name = {r[0]: r for r in rows}
    assert by_name["work"][2] == "1"
    assert by_name["lunch"][2] == "1"
    assert "skipped_self_loops=1" in read(out)
    # canonical form re-serializes to itself
    canon2 = tmp_path / "canon2.mpx"
    assert run("ingest", "--in", str(canon), "--out", "-",
               "--canonical", str(canon2)) == 0
    assert read(canon) == read(canon2)


def test_exit_codes_for_data_errors(tmp_path):
    assert run("stats", "--in", str(tmp_path / "missing.mpx")) == 3
    bad = tmp_path / "bad.mpx"
    bad.write_text("only two\n")
    assert run("ingest", "--in", str(bad)) == 3
    src = tmp_path / "ok.mpx"
    src.write_text("u v work\n")
    assert run("stats", "--in", str(src), "--select", "nosuch") == 3


def test_exit_code_for_disconnected_curve(tmp_path):
    split = tmp_path / "split.edges"
    split.write_text("# n=4\n0 1\n2 3\n")
    mpx = tmp_path / "split.mpx"
    run("multiplex", "--layer", str(split), "--layer", str(split),
        "--out", str(mpx))
    assert run("eigenratio", "--in", str(mpx),
               "--out", str(tmp_path / "er.csv")) == 3


def test_exit_code_mapping_table(monkeypatch):
    cases = [(ConfigError("x"), 2), (DomainError("x"), 2),
             (ParseError("x", line_no=1), 3), (StructuralError("x"), 3),
             (UnknownLayerError("x"), 3), (DisconnectedError("x"), 3),
             (OSError("x"), 3), (ConvergenceError("x"), 4),
             (BracketError("x"), 4), (GenerationError("x"), 4)]
    for exc, want in cases:
        class Stub:
            def parse_args(self, argv):
                import argparse
                return argparse.Namespace(func=lambda a: (_ for _ in ()).throw(exc))
        monkeypatch.setattr(cli, "build_parser", lambda: Stub())
        assert cli.main([]) == want


def test_grid_parser():
    assert cli.parse_grid("0.2:2.0:0.2") == tuple(
        round(0.2 * k, 12) for k in range(1, 11))
    assert cli.parse_grid("1:1:5") == (1.0,)
    log = cli.parse_grid("0.01:100:log5")
    assert len(log) == 5
    assert log[0] == pytest.approx(0.01) and log[-1] == pytest.approx(100.0)
    for bad in ("1:2", "a:2:1", "1:2:0", "2:1:1", "1:2:log1", "0:2:log3",
                "inf:2:1"):
        with pytest.raises(ConfigError):
            cli.parse_grid(bad)


def test_provenance_header_tracks_inputs(toy_mpx, tmp_path):
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    run("stats", "--in", str(toy_mpx), "--out", str(out1))
    run("stats", "--in", str(toy_mpx), "--dx", "2.0", "--out", str(out2))
    head1, head2 = read(out1).splitlines()[0], read(out2).splitlines()[0]
    assert head1.startswith("# seed=-, spec=")
    assert "version=" in head1
    assert head1 != head2  # options feed the spec hash
