"""Centrality and structure analytics for talent-flow graphs.

Degrees are unweighted neighbor counts (weights would re-introduce the
support bias the graphs were pruned to avoid). PageRank is the weighted
variant: each node spreads its rank over out-edges proportionally to edge
weight, dangling nodes spread theirs uniformly, and a teleport probability
(default 0.15) jumps to a uniformly random node; the result measures where
the flow of talent is heading globally. Components come in strong (follow
edge direction) and weak (ignore it) flavors. Centrality distributions are
summarized as complementary CDFs and by a discrete maximum-likelihood
power-law fit with a KS-minimizing tail cutoff.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import count
from typing import Sequence

import numpy as np
from scipy.special import zeta

from .hopgraph import HopGraph, NodeKey, node_sort_key
from .model import AnalysisConfig


class CentralityMetric(str, Enum):
    IN_DEGREE = "indegree"
    OUT_DEGREE = "outdegree"
    PAGERANK = "pagerank"


class Direction(str, Enum):
    IN = "in"
    OUT = "out"


class InsufficientTailError(ValueError):
    """Too few tail points for a power-law fit at any cutoff."""


@dataclass(frozen=True)
class CentralityTable:
    """Scores plus the deterministic ranking (score desc, node asc)."""

    metric: CentralityMetric
    scores: dict[NodeKey, float]
    ranking: tuple[NodeKey, ...]
    converged: bool = True
    iterations: int = 0


def _make_ranking(scores: dict[NodeKey, float]) -> tuple[NodeKey, ...]:
    return tuple(sorted(scores, key=lambda n: (-scores[n], node_sort_key(n))))


def degree_centrality(graph: HopGraph, direction: Direction) -> CentralityTable:
    """Distinct in- or out-neighbor counts; a self-loop counts once each way."""
    neighbors: dict[NodeKey, set[NodeKey]] = {n: set() for n in graph.nodes}
    for u, v in graph.edges:
        if direction is Direction.IN:
            neighbors[v].add(u)
        else:
            neighbors[u].add(v)
    scores = {n: float(len(s)) for n, s in neighbors.items()}
    metric = CentralityMetric.IN_DEGREE if direction is Direction.IN else CentralityMetric.OUT_DEGREE
    return CentralityTable(metric=metric, scores=scores, ranking=_make_ranking(scores))


def weighted_pagerank(graph: HopGraph, config: AnalysisConfig) -> CentralityTable:
    """Power iteration on the weight-normalized transition matrix.

    Each node's rank goes to its out-neighbors in proportion to edge weight
    (so scaling all weights leaves scores unchanged); dangling nodes
    redistribute their full rank uniformly; teleportation mixes in a uniform
    jump with probability config.teleport_prob. Iterates until the L1 change
    drops below config.pagerank_tol or max_iter is hit (converged=False).
    """
    nodes = graph.sorted_nodes()
    n = len(nodes)
    if n == 0:
        raise ValueError("pagerank needs at least one node")
    index = {node: i for i, node in enumerate(nodes)}

    edges = graph.sorted_edges()
    src = np.array([index[u] for (u, _), _ in edges], dtype=np.int64)
    dst = np.array([index[v] for (_, v), _ in edges], dtype=np.int64)
    w = np.array([weight for _, weight in edges], dtype=np.float64)

    out_weight = np.zeros(n)
    if len(edges):
        np.add.at(out_weight, src, w)
    dangling = out_weight == 0.0
    prob = w / out_weight[src] if len(edges) else w

    teleport = config.teleport_prob
    rank = np.full(n, 1.0 / n)
    iterations = 0
    converged = False
    for iterations in range(1, config.pagerank_max_iter + 1):
        flow = np.bincount(dst, weights=prob * rank[src], minlength=n) if len(edges) else np.zeros(n)
        dangling_mass = rank[dangling].sum()
        new_rank = (1.0 - teleport) * (flow + dangling_mass / n) + teleport / n
        delta = np.abs(new_rank - rank).sum()
        rank = new_rank
        if delta < config.pagerank_tol:
            converged = True
            break
    rank = rank / rank.sum()

    scores = {node: float(rank[i]) for node, i in index.items()}
    return CentralityTable(
        metric=CentralityMetric.PAGERANK,
        scores=scores,
        ranking=_make_ranking(scores),
        converged=converged,
        iterations=iterations,
    )


def _undirected_adjacency(graph: HopGraph) -> dict[NodeKey, list[NodeKey]]:
    adj: dict[NodeKey, set[NodeKey]] = {n: set() for n in graph.nodes}
    for u, v in graph.edges:
        adj[u].add(v)
        adj[v].add(u)
    return {n: sorted(s, key=node_sort_key) for n, s in adj.items()}


def _directed_adjacency(graph: HopGraph) -> dict[NodeKey, list[NodeKey]]:
    adj: dict[NodeKey, set[NodeKey]] = {n: set() for n in graph.nodes}
    for u, v in graph.edges:
        adj[u].add(v)
    return {n: sorted(s, key=node_sort_key) for n, s in adj.items()}


def _strongly_connected(nodes: list[NodeKey], adj: dict[NodeKey, list[NodeKey]]) -> list[list[NodeKey]]:
    # Tarjan, iterative: the job graph can be deep enough to blow the
    # recursion limit on long career chains.
    order = count()
    index: dict[NodeKey, int] = {}
    lowlink: dict[NodeKey, int] = {}
    stack: list[NodeKey] = []
    on_stack: set[NodeKey] = set()
    components: list[list[NodeKey]] = []

    for root in nodes:
        if root in index:
            continue
        index[root] = lowlink[root] = next(order)
        stack.append(root)
        on_stack.add(root)
        frames = [(root, iter(adj[root]))]
        while frames:
            v, it = frames[-1]
            advanced = False
            for nxt in it:
                if nxt not in index:
                    index[nxt] = lowlink[nxt] = next(order)
                    stack.append(nxt)
                    on_stack.add(nxt)
                    frames.append((nxt, iter(adj[nxt])))
                    advanced = True
                    break
                if nxt in on_stack:
                    lowlink[v] = min(lowlink[v], index[nxt])
            if advanced:
                continue
            frames.pop()
            if frames:
                parent = frames[-1][0]
                lowlink[parent] = min(lowlink[parent], lowlink[v])
            if lowlink[v] == index[v]:
                comp = []
                while True:
                    node = stack.pop()
                    on_stack.discard(node)
                    comp.append(node)
                    if node == v:
                        break
                components.append(comp)
    return components


def _weakly_connected(nodes: list[NodeKey], adj: dict[NodeKey, list[NodeKey]]) -> list[list[NodeKey]]:
    seen: set[NodeKey] = set()
    components = []
    for root in nodes:
        if root in seen:
            continue
        comp = []
        queue = [root]
        seen.add(root)
        while queue:
            v = queue.pop()
            comp.append(v)
            for nxt in adj[v]:
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
        components.append(comp)
    return components


class ComponentMode(str, Enum):
    STRONG = "strong"
    WEAK = "weak"


def connected_components(graph: HopGraph, mode: ComponentMode) -> list[list[NodeKey]]:
    """The component partition, largest first, nodes sorted within each."""
    nodes = graph.sorted_nodes()
    if mode is ComponentMode.STRONG:
        comps = _strongly_connected(nodes, _directed_adjacency(graph))
    else:
        comps = _weakly_connected(nodes, _undirected_adjacency(graph))
    comps = [sorted(c, key=node_sort_key) for c in comps]
    comps.sort(key=lambda c: (-len(c), node_sort_key(c[0])))
    return comps


@dataclass(frozen=True)
class ComponentReport:
    """Component counts and the sizes of the two largest, both flavors."""

    scc_count: int
    largest_scc_size: int
    largest_scc_fraction: float
    second_scc_size: int
    wcc_count: int
    largest_wcc_size: int
    largest_wcc_fraction: float
    second_wcc_size: int


def component_report(graph: HopGraph) -> ComponentReport:
    n = len(graph.nodes)
    sccs = connected_components(graph, ComponentMode.STRONG)
    wccs = connected_components(graph, ComponentMode.WEAK)

    def top2(comps: list[list[NodeKey]]) -> tuple[int, int]:
        first = len(comps[0]) if comps else 0
        second = len(comps[1]) if len(comps) > 1 else 0
        return first, second

    scc1, scc2 = top2(sccs)
    wcc1, wcc2 = top2(wccs)
    return ComponentReport(
        scc_count=len(sccs),
        largest_scc_size=scc1,
        largest_scc_fraction=scc1 / n if n else 0.0,
        second_scc_size=scc2,
        wcc_count=len(wccs),
        largest_wcc_size=wcc1,
        largest_wcc_fraction=wcc1 / n if n else 0.0,
        second_wcc_size=wcc2,
    )


@dataclass(frozen=True)
class PowerLawFit:
    """Discrete MLE fit of the distribution tail: p(x) ~ x^-alpha, x >= xmin."""

    alpha: float
    xmin: int
    ks_statistic: float
    n_tail: int


def fit_power_law(values: Sequence[int], min_tail: int = 10) -> PowerLawFit:
    """Fit a discrete power law to positive integer values.

    alpha = 1 + n / sum(ln(x_i / (xmin - 1/2))) over the tail x_i >= xmin,
    with xmin chosen to minimize the KS distance between the empirical tail
    CDF and the fitted zeta-normalized model. Candidates leaving fewer than
    min_tail points, or a single-valued tail, are rejected; if none remain,
    raises InsufficientTailError.
    """
    xs = np.asarray(sorted(values), dtype=np.int64)
    if len(xs) == 0 or xs[0] < 1:
        raise ValueError("values must be positive integers")
    if len(xs) < min_tail:
        raise InsufficientTailError(f"need at least {min_tail} values, got {len(xs)}")

    log_xs = np.log(xs.astype(np.float64))
    suffix_logsum = np.concatenate([np.cumsum(log_xs[::-1])[::-1], [0.0]])
    distinct = np.unique(xs)

    best: tuple[float, int, float, int] | None = None  # (ks, xmin, alpha, n_tail)
    for xmin in distinct:
        i = int(np.searchsorted(xs, xmin, side="left"))
        n_tail = len(xs) - i
        if n_tail < min_tail:
            break
        tail_values = distinct[distinct >= xmin]
        if len(tail_values) < 2:
            continue
        denom = suffix_logsum[i] - n_tail * np.log(xmin - 0.5)
        if denom <= 0:
            continue
        alpha = 1.0 + n_tail / denom
        if alpha <= 1.0:
            continue

        # KS distance over the distinct tail values: empirical CDF vs the
        # discrete model CDF  P(X <= x) = 1 - zeta(alpha, x+1)/zeta(alpha, xmin).
        counts = np.searchsorted(xs, tail_values, side="right") - i
        emp_cdf = counts / n_tail
        norm = zeta(alpha, float(xmin))
        model_cdf = 1.0 - zeta(alpha, tail_values.astype(np.float64) + 1.0) / norm
        ks = float(np.max(np.abs(emp_cdf - model_cdf)))
        if best is None or ks < best[0]:
            best = (ks, int(xmin), float(alpha), n_tail)

    if best is None:
        raise InsufficientTailError("no candidate cutoff leaves a fittable tail")
    ks, xmin, alpha, n_tail = best
    return PowerLawFit(alpha=alpha, xmin=xmin, ks_statistic=ks, n_tail=n_tail)


def centrality_ccdf(table: CentralityTable) -> list[tuple[float, float]]:
    """(value, fraction of nodes with score >= value) per distinct value.

    Values ascend, the fractions are nonincreasing, and the first point is
    always 1.0.
    """
    if not table.scores:
        raise ValueError("ccdf of an empty score table")
    values = np.sort(np.array(list(table.scores.values()), dtype=np.float64))
    n = len(values)
    distinct = np.unique(values)
    at_least = n - np.searchsorted(values, distinct, side="left")
    return [(float(v), float(c) / n) for v, c in zip(distinct, at_least)]


def top_k(table: CentralityTable, k: int) -> list[NodeKey]:
    """First k of the ranking; all nodes when k exceeds the node count."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return list(table.ranking[:k])
