import csv
import math

import numpy as np
import pytest

from streamcut.bench import (BenchSpec, BenchSpecError, eval_assignment,
                             parse_bench_spec, read_assignment, run_bench,
                             write_assignment)
from streamcut.graph import save_edge_list
from streamcut.metrics import CSV_COLUMNS
from streamcut.objective import ObjectiveConfig
from conftest import graph_from_pairs

SPEC_TEXT = """
# demo matrix
graph = hp:n=80,k=2,p=0.5,q=0.1
graph = cl:n=60,delta=2.5,avg_degree=4
k = 2 4
gamma = 1 1.5
order = random bfs
heuristic = fennel hash
seeds = 1 2
nu = inf
alpha = auto
out = {out}
"""


def write_spec(tmp_path, text=None, **fmt):
    p = tmp_path / "spec.txt"
    out = fmt.pop("out", str(tmp_path / "results.csv"))
    p.write_text((text or SPEC_TEXT).format(out=out, **fmt))
    return p


def read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


def test_spec_parses_full_grammar(tmp_path):
    spec = parse_bench_spec(write_spec(tmp_path))
    assert spec.graphs == ["hp:n=80,k=2,p=0.5,q=0.1",
                           "cl:n=60,delta=2.5,avg_degree=4"]
    assert spec.k_list == [2, 4]
    assert spec.gamma_list == [1.0, 1.5]
    assert spec.order_list == ["random", "bfs"]
    assert spec.heuristic_list == ["fennel", "hash"]
    assert spec.seeds == [1, 2]
    assert math.isinf(spec.nu) and spec.alpha == "auto"


def test_spec_rejects_unknown_keys(tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("graph = hp:n=10,k=2,p=0.5,q=0.1\nk = 2\nseeds = 1\n"
                 "heuristic = fennel\nthreads = 4\n")
    with pytest.raises(BenchSpecError):
        parse_bench_spec(p)


def test_spec_rejects_malformed_lines_and_graphs(tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("just some words\n")
    with pytest.raises(BenchSpecError):
        parse_bench_spec(p)
    p.write_text("graph = hp:n=10,p=0.5,q=0.1\nk = 2\nseeds = 1\n"
                 "heuristic = fennel\n")
    with pytest.raises(BenchSpecError):
        parse_bench_spec(p)  # hp spec missing k
    p.write_text("graph = torus:n=10\nk = 2\nseeds = 1\nheuristic = fennel\n")
    with pytest.raises(BenchSpecError):
        parse_bench_spec(p)


def test_empty_heuristic_list_fails_before_running():
    spec = BenchSpec(graphs=["hp:n=10,k=2,p=0.5,q=0.1"], k_list=[2],
                     gamma_list=[1.5], order_list=["random"],
                     heuristic_list=[], seeds=[1])
    with pytest.raises(BenchSpecError):
        spec.validate()


def test_bench_runs_matrix_and_writes_rows(tmp_path):
    out = tmp_path / "results.csv"
    spec = parse_bench_spec(write_spec(tmp_path, out=str(out)))
    results = run_bench(spec)
    # 2 graphs x 2 k x 2 gamma x 2 orders x 2 heuristics x 2 seeds
    assert len(results) == 64
    rows = read_csv(out)
    assert rows[0] == CSV_COLUMNS
    # per-run rows followed by mean/std aggregate rows per group
    assert len(rows) == 1 + 64 + 2 * 32
    for row in rows[1:]:
        assert len(row) == len(CSV_COLUMNS)


def test_bench_error_rows_keep_the_matrix_alive(tmp_path):
    out = tmp_path / "res.csv"
    p = tmp_path / "spec.txt"
    p.write_text(f"graph = path:{tmp_path}/missing.txt\n"
                 f"graph = hp:n=30,k=2,p=0.6,q=0.1\n"
                 "k = 2\nseeds = 1\nheuristic = dg\n"
                 f"out = {out}\n")
    results = run_bench(parse_bench_spec(p))
    assert len(results) == 1  # the hp run survived
    rows = read_csv(out)
    err = [r for r in rows[1:] if r[-1]]
    assert len(err) == 1
    assert "missing.txt" in err[0][0]
    as_map = dict(zip(CSV_COLUMNS, err[0]))
    assert as_map["lambda"] == ""


def test_bench_hp_k_match_tracks_run_k(tmp_path):
    out = tmp_path / "res.csv"
    p = tmp_path / "spec.txt"
    p.write_text("graph = hp:n=60,k=match,p=0.6,q=0.05\n"
                 "k = 2 3\nseeds = 1\nheuristic = dg\n"
                 f"out = {out}\n")
    results = run_bench(parse_bench_spec(p))
    assert sorted(r.k for r in results) == [2, 3]


def test_bench_csv_identical_up_to_runtime(tmp_path):
    """Two runs of one spec differ at most in the runtime column."""
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    text = ("graph = hp:n=50,k=2,p=0.5,q=0.1\nk = 2\nseeds = 1 2\n"
            "heuristic = fennel hash\norder = random\nout = {out}\n")
    run_bench(parse_bench_spec(write_spec(tmp_path, text=text, out=str(out1))))
    run_bench(parse_bench_spec(write_spec(tmp_path, text=text, out=str(out2))))
    rt = CSV_COLUMNS.index("runtime_ms")
    rows1, rows2 = read_csv(out1), read_csv(out2)
    assert len(rows1) == len(rows2)
    for r1, r2 in zip(rows1, rows2):
        r1[rt] = r2[rt] = ""
        assert r1 == r2


def test_bench_path_graph_round_trip(tmp_path):
    g = graph_from_pairs([(i, i + 1) for i in range(39)])
    gp = tmp_path / "g.txt"
    save_edge_list(g, gp)
    out = tmp_path / "res.csv"
    p = tmp_path / "spec.txt"
    p.write_text(f"graph = path:{gp}\nk = 2\nseeds = 7\nheuristic = ldg\n"
                 f"out = {out}\n")
    results = run_bench(parse_bench_spec(p))
    assert len(results) == 1
    assert results[0].graph == str(gp)
    assert results[0].n == 40


def test_assignment_round_trip(tmp_path):
    g = graph_from_pairs([(10, 20), (20, 30), (30, 10), (30, 40)])
    a = np.array([0, 1, 1, 0])
    p = tmp_path / "assign.csv"
    write_assignment(g, a, p)
    rows = read_csv(p)
    assert rows[0] == ["vertex", "cluster"]
    assert rows[1] == ["10", "0"]  # original labels, not dense ids
    back = read_assignment(g, p, 2)
    assert np.array_equal(back, a)


def test_assignment_validation(tmp_path):
    g = graph_from_pairs([(0, 1), (1, 2)])
    p = tmp_path / "assign.csv"
    p.write_text("vertex,cluster\n0,0\n1,1\n")
    with pytest.raises(ValueError):
        read_assignment(g, p, 2)  # vertex 2 missing
    p.write_text("vertex,cluster\n0,0\n1,1\n2,5\n")
    with pytest.raises(ValueError):
        read_assignment(g, p, 2)  # cluster out of range
    p.write_text("vertex,cluster\n0,0\n1,1\n9,0\n")
    with pytest.raises(ValueError):
        read_assignment(g, p, 2)  # unknown label
    p.write_text("id,cluster\n")
    with pytest.raises(ValueError):
        read_assignment(g, p, 2)  # wrong header


def test_eval_assignment_metrics(tmp_path, two_triangles):
    p = tmp_path / "assign.csv"
    write_assignment(two_triangles, np.array([0, 0, 0, 1, 1, 1]), p)
    got = eval_assignment(two_triangles, p, 2, ObjectiveConfig(gamma=1.5))
    assert got["lambda"] == pytest.approx(1 / 7)
    assert got["rho"] == pytest.approx(1.0)
    assert got["g"] == pytest.approx(two_triangles.m - got["f"])
