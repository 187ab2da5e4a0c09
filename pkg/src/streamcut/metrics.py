"""Evaluation measures (fraction of edges cut, normalized max load) and CSV rows."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graph import Graph
from .objective import ObjectiveConfig, PartitionSnapshot, eval_f, eval_g

CSV_COLUMNS = ["graph", "n", "m", "k", "gamma", "alpha", "nu", "order", "heuristic",
               "seed", "lambda", "rho", "f", "g", "runtime_ms",
               "threshold_violations", "error"]


@dataclass(frozen=True)
class RunResult:
    graph: str
    n: int
    m: int
    k: int
    gamma: float
    alpha: float
    nu: float
    order: str
    heuristic: str
    seed: int
    lam: float
    rho: float
    f: float
    g: float
    runtime_ms: float
    threshold_violations: int


def compute_lambda(g: Graph, snap: PartitionSnapshot) -> float:
    """Fraction of edges cut, cut/m from the integer counter (0 if m=0)."""
    snap._require_full()
    if g.m == 0:
        return 0.0
    return snap.cut_edges / g.m


def compute_rho(snap: PartitionSnapshot, n: int, k: int) -> float:
    """Normalized maximum load: max_i |S_i| * k / n."""
    snap._require_full()
    return int(snap.cluster_vertex_counts.max()) * k / n


def evaluate_run(g: Graph, graph_name: str, snap: PartitionSnapshot, config: ObjectiveConfig,
                 order: str, heuristic: str, seed: int, runtime_ms: float,
                 threshold_violations: int) -> RunResult:
    config = config.resolve(g, snap.k)
    return RunResult(
        graph=graph_name, n=g.n, m=g.m, k=snap.k, gamma=config.gamma,
        alpha=config.alpha_value, nu=config.nu, order=order, heuristic=heuristic,
        seed=seed, lam=compute_lambda(g, snap), rho=compute_rho(snap, g.n, snap.k),
        f=eval_f(snap, config), g=eval_g(snap, config), runtime_ms=runtime_ms,
        threshold_violations=threshold_violations)


def _fmt(x: float, spec: str = "%.6f") -> str:
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    return spec % x


def result_to_row(r: RunResult) -> list[str]:
    return [r.graph, str(r.n), str(r.m), str(r.k), _fmt(r.gamma, "%g"),
            _fmt(r.alpha, "%.10g"), _fmt(r.nu, "%g"), r.order, r.heuristic,
            str(r.seed), _fmt(r.lam), _fmt(r.rho), _fmt(r.f), _fmt(r.g),
            _fmt(r.runtime_ms, "%.3f"), str(r.threshold_violations), ""]


def error_row(graph_name: str, k, gamma, alpha, nu, order: str, heuristic: str,
              seed, message: str) -> list[str]:
    """Row recording a failed run; metric columns left blank."""
    return [graph_name, "", "", str(k), _fmt(gamma, "%g"),
            alpha if isinstance(alpha, str) else _fmt(alpha, "%.10g"),
            _fmt(nu, "%g"), order, heuristic, str(seed),
            "", "", "", "", "", "", message]


def aggregate_rows(results: list[RunResult]) -> list[list[str]]:
    """
    Mean and sample-std rows per (graph, k, gamma, nu, order, heuristic)
    group, across seeds, in first-seen group order. Std is 0 for
    single-seed groups.
    """
    groups: dict[tuple, list[RunResult]] = {}
    for r in results:
        groups.setdefault((r.graph, r.k, r.gamma, r.nu, r.order, r.heuristic), []).append(r)
    rows = []
    for (graph, k, gamma, nu, order, heuristic), rs in groups.items():
        cols = {name: np.array([getattr(r, name) for r in rs], dtype=np.float64)
                for name in ("lam", "rho", "f", "g", "runtime_ms", "threshold_violations")}
        alpha_txt = _fmt(float(np.mean([r.alpha for r in rs])), "%.10g")
        # generated instances differ across seeds, so n and m aggregate too
        n_txt = _fmt(float(np.mean([r.n for r in rs])), "%g")
        m_txt = _fmt(float(np.mean([r.m for r in rs])), "%g")
        for stat in ("mean", "std"):
            agg = {name: (v.mean() if stat == "mean"
                          else (v.std(ddof=1) if len(v) > 1 else 0.0))
                   for name, v in cols.items()}
            rows.append([graph, n_txt, m_txt, str(k), _fmt(gamma, "%g"),
                         alpha_txt if stat == "mean" else "", _fmt(nu, "%g"), order,
                         heuristic, stat, _fmt(agg["lam"]), _fmt(agg["rho"]),
                         _fmt(agg["f"]), _fmt(agg["g"]), _fmt(agg["runtime_ms"], "%.3f"),
                         _fmt(agg["threshold_violations"], "%.2f"), ""])
    return rows
