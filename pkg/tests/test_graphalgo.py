import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from talentflow.graphalgo import (
    CentralityMetric,
    CentralityTable,
    ComponentMode,
    Direction,
    InsufficientTailError,
    centrality_ccdf,
    component_report,
    connected_components,
    degree_centrality,
    fit_power_law,
    top_k,
    weighted_pagerank,
)
from talentflow.hopgraph import GraphLevel, HopGraph
from helpers import config


def make_graph(n, edges):
    nodes = {f"n{i:02d}" for i in range(n)}
    return HopGraph(
        level=GraphLevel.ORG,
        nodes=nodes,
        node_support={x: 1 for x in nodes},
        edges={(f"n{u:02d}", f"n{v:02d}"): w for u, v, w in edges},
    )


def random_graph(rng, max_nodes=20, max_weight=9, p_edge=0.15, allow_self_loops=True):
    n = rng.randint(1, max_nodes)
    edges = []
    for u in range(n):
        for v in range(n):
            if u == v and not allow_self_loops:
                continue
            if rng.random() < p_edge:
                edges.append((u, v, rng.randint(1, max_weight)))
    return make_graph(n, edges), n


# --- dense oracles ------------------------------------------------------------

def pagerank_dense_solve(graph, teleport):
    """Solve the stationary equations directly with dense linear algebra."""
    nodes = sorted(graph.nodes)
    n = len(nodes)
    idx = {x: i for i, x in enumerate(nodes)}
    W = np.zeros((n, n))
    for (u, v), w in graph.edges.items():
        W[idx[u], idx[v]] = w
    out = W.sum(axis=1)
    P = np.where(out[:, None] > 0, W / np.where(out[:, None] > 0, out[:, None], 1.0), 1.0 / n)
    A = np.eye(n) - (1.0 - teleport) * P.T
    r = np.linalg.solve(A, np.full(n, teleport / n))
    return {x: r[idx[x]] for x in nodes}


def reachability(graph):
    nodes = sorted(graph.nodes)
    n = len(nodes)
    idx = {x: i for i, x in enumerate(nodes)}
    R = np.eye(n, dtype=bool)
    for u, v in graph.edges:
        R[idx[u], idx[v]] = True
    for k in range(n):
        R |= np.outer(R[:, k], R[k, :])
    return nodes, R


def scc_oracle(graph):
    nodes, R = reachability(graph)
    mutual = R & R.T
    comps = []
    seen = set()
    for i, x in enumerate(nodes):
        if x in seen:
            continue
        comp = {nodes[j] for j in range(len(nodes)) if mutual[i, j]}
        seen |= comp
        comps.append(frozenset(comp))
    return set(comps)


def wcc_oracle(graph):
    sym = HopGraph(
        level=graph.level,
        nodes=set(graph.nodes),
        node_support={},
        edges={**{(u, v): 1 for u, v in graph.edges}, **{(v, u): 1 for u, v in graph.edges}},
    )
    return scc_oracle(sym)


# --- degrees ------------------------------------------------------------------

def test_star_in_degree():
    g = make_graph(6, [(i, 0, 3) for i in range(1, 6)])
    table = degree_centrality(g, Direction.IN)
    assert table.scores["n00"] == 5
    assert all(table.scores[f"n{i:02d}"] == 0 for i in range(1, 6))
    out = degree_centrality(g, Direction.OUT)
    assert out.scores["n00"] == 0
    assert out.metric is CentralityMetric.OUT_DEGREE


def test_isolated_node_zero():
    g = make_graph(2, [])
    assert degree_centrality(g, Direction.IN).scores == {"n00": 0.0, "n01": 0.0}


def test_self_loop_counts_once_each_way():
    g = make_graph(1, [(0, 0, 7)])
    assert degree_centrality(g, Direction.IN).scores["n00"] == 1
    assert degree_centrality(g, Direction.OUT).scores["n00"] == 1


def test_degree_ignores_weights():
    g1 = make_graph(3, [(0, 1, 1), (0, 2, 1)])
    g9 = make_graph(3, [(0, 1, 9), (0, 2, 4)])
    assert degree_centrality(g1, Direction.OUT).scores == degree_centrality(g9, Direction.OUT).scores


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=40, deadline=None)
def test_degrees_match_binarized_matrix(seed):
    rng = random.Random(seed)
    g, n = random_graph(rng, max_nodes=30)
    idx = {x: i for i, x in enumerate(sorted(g.nodes))}
    A = np.zeros((n, n), dtype=int)
    for u, v in g.edges:
        A[idx[u], idx[v]] = 1
    indeg = degree_centrality(g, Direction.IN).scores
    outdeg = degree_centrality(g, Direction.OUT).scores
    for x, i in idx.items():
        assert indeg[x] == A[:, i].sum()
        assert outdeg[x] == A[i, :].sum()


# --- pagerank -------------------------------------------------------------------

CFG = config("2016-06")
TIGHT = config("2016-06", pagerank_tol=1e-14, pagerank_max_iter=2000)


def test_three_cycle_uniform():
    g = make_graph(3, [(0, 1, 4), (1, 2, 4), (2, 0, 4)])
    table = weighted_pagerank(g, CFG)
    for score in table.scores.values():
        assert score == pytest.approx(1 / 3, abs=1e-9)


def test_two_node_weighted_pair_equal_scores():
    # One out-edge each: row normalization erases the 3:1 weight asymmetry.
    g = make_graph(2, [(0, 1, 3), (1, 0, 1)])
    table = weighted_pagerank(g, CFG)
    assert table.scores["n00"] == pytest.approx(table.scores["n01"], abs=1e-12)


def test_single_node():
    g = make_graph(1, [])
    assert weighted_pagerank(g, CFG).scores == {"n00": 1.0}


def test_empty_graph_rejected():
    g = make_graph(0, [])
    with pytest.raises(ValueError):
        weighted_pagerank(g, CFG)


def test_not_converged_flag():
    # Asymmetric: the uniform start vector is far from the fixed point.
    g = make_graph(10, [(i, (i + 1) % 10, 1) for i in range(10)] + [(0, 5, 4)])
    cfg = config("2016-06", pagerank_tol=1e-300, pagerank_max_iter=3)
    table = weighted_pagerank(g, cfg)
    assert not table.converged
    assert table.iterations == 3


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=60, deadline=None)
def test_pagerank_matches_dense_solve(seed):
    rng = random.Random(seed)
    g, _ = random_graph(rng)
    table = weighted_pagerank(g, TIGHT)
    expected = pagerank_dense_solve(g, TIGHT.teleport_prob)
    for x, r in expected.items():
        assert table.scores[x] == pytest.approx(r, abs=1e-10)
    assert abs(sum(table.scores.values()) - 1.0) <= 1e-9
    assert all(s > 0 for s in table.scores.values())


@given(st.integers(0, 2**32 - 1), st.sampled_from([2, 3, 10]))
@settings(max_examples=30, deadline=None)
def test_pagerank_weight_scale_invariance(seed, factor):
    rng = random.Random(seed)
    g, _ = random_graph(rng)
    scaled = HopGraph(
        level=g.level, nodes=set(g.nodes), node_support=dict(g.node_support),
        edges={e: w * factor for e, w in g.edges.items()},
    )
    t1 = weighted_pagerank(g, CFG)
    t2 = weighted_pagerank(scaled, CFG)
    for x in g.nodes:
        assert abs(t1.scores[x] - t2.scores[x]) <= 1e-12


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=30, deadline=None)
def test_pagerank_teleport_floor(seed):
    rng = random.Random(seed)
    g, n = random_graph(rng)
    table = weighted_pagerank(g, TIGHT)
    floor = CFG.teleport_prob / n
    for s in table.scores.values():
        assert s >= floor - 1e-12


# --- components -------------------------------------------------------------------

def test_directed_three_cycle_one_scc():
    g = make_graph(3, [(0, 1, 1), (1, 2, 1), (2, 0, 1)])
    comps = connected_components(g, ComponentMode.STRONG)
    assert [len(c) for c in comps] == [3]


def test_path_sccs_and_wcc():
    g = make_graph(3, [(0, 1, 1), (1, 2, 1)])
    assert [len(c) for c in connected_components(g, ComponentMode.STRONG)] == [1, 1, 1]
    assert [len(c) for c in connected_components(g, ComponentMode.WEAK)] == [3]


def test_component_report_fields():
    g = make_graph(5, [(0, 1, 1), (1, 0, 1), (2, 3, 1)])
    report = component_report(g)
    assert report.scc_count == 4
    assert report.largest_scc_size == 2
    assert report.largest_scc_fraction == pytest.approx(0.4)
    assert report.second_scc_size == 1
    assert report.wcc_count == 3
    assert report.largest_wcc_size == 2


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=60, deadline=None)
def test_components_match_closure_oracle(seed):
    rng = random.Random(seed)
    g, _ = random_graph(rng, max_nodes=30)
    strong = {frozenset(c) for c in connected_components(g, ComponentMode.STRONG)}
    weak = {frozenset(c) for c in connected_components(g, ComponentMode.WEAK)}
    assert strong == scc_oracle(g)
    assert weak == wcc_oracle(g)


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=40, deadline=None)
def test_scc_partition_refines_wcc(seed):
    rng = random.Random(seed)
    g, n = random_graph(rng, max_nodes=30)
    sccs = connected_components(g, ComponentMode.STRONG)
    wccs = connected_components(g, ComponentMode.WEAK)
    assert sum(len(c) for c in sccs) == n
    assert sum(len(c) for c in wccs) == n
    wcc_of = {x: i for i, comp in enumerate(wccs) for x in comp}
    for comp in sccs:
        assert len({wcc_of[x] for x in comp}) == 1


def test_deep_chain_no_recursion_blowup():
    n = 5000
    edges = {(f"n{i:05d}", f"n{i + 1:05d}"): 1 for i in range(n - 1)}
    nodes = {f"n{i:05d}" for i in range(n)}
    g = HopGraph(level=GraphLevel.ORG, nodes=nodes, node_support={}, edges=edges)
    assert len(connected_components(g, ComponentMode.STRONG)) == n


# --- power law -----------------------------------------------------------------

def sample_discrete_power_law(alpha, n, rng, xmax=100000):
    xs = np.arange(1, xmax + 1, dtype=np.float64)
    pmf = xs ** -alpha
    cdf = np.cumsum(pmf / pmf.sum())
    return (np.searchsorted(cdf, rng.random(n)) + 1).astype(int)


def test_power_law_recovery():
    rng = np.random.default_rng(42)
    values = sample_discrete_power_law(2.5, 10000, rng)
    fit = fit_power_law(values.tolist())
    assert abs(fit.alpha - 2.5) <= 0.1
    assert fit.n_tail >= 10
    assert 0.0 <= fit.ks_statistic <= 1.0


def test_all_equal_rejected():
    with pytest.raises(InsufficientTailError):
        fit_power_law([7] * 50)


def test_too_few_values_rejected():
    with pytest.raises(InsufficientTailError):
        fit_power_law([1, 2, 3])


def test_nonpositive_values_rejected():
    with pytest.raises(ValueError):
        fit_power_law([0] * 20)


def test_alpha_estimate_tightens_with_known_xmin():
    rng = np.random.default_rng(7)
    values = sample_discrete_power_law(3.0, 20000, rng)
    fit = fit_power_law(values.tolist())
    assert abs(fit.alpha - 3.0) <= 0.15


# --- ccdf and top-k ---------------------------------------------------------------

def table_of(scores):
    ranking = tuple(sorted(scores, key=lambda x: (-scores[x], x)))
    return CentralityTable(metric=CentralityMetric.IN_DEGREE, scores=scores, ranking=ranking)


def test_ccdf_examples():
    assert centrality_ccdf(table_of({"a": 1.0, "b": 1.0, "c": 2.0})) == [
        (1.0, 1.0),
        (2.0, pytest.approx(1 / 3)),
    ]
    assert centrality_ccdf(table_of({"a": 5.0})) == [(5.0, 1.0)]


def test_ccdf_empty_rejected():
    with pytest.raises(ValueError):
        centrality_ccdf(table_of({}))


@given(st.lists(st.integers(0, 30), min_size=1, max_size=40))
def test_ccdf_monotone_nonincreasing(values):
    scores = {f"n{i:02d}": float(v) for i, v in enumerate(values)}
    pts = centrality_ccdf(table_of(scores))
    assert pts[0][1] == 1.0
    assert all(a[0] < b[0] for a, b in zip(pts, pts[1:]))
    assert all(a[1] > b[1] for a, b in zip(pts, pts[1:]))


def test_top_k_tie_breaks_lexicographically():
    g = make_graph(2, [(0, 1, 3), (1, 0, 1)])
    table = weighted_pagerank(g, CFG)
    assert top_k(table, 1) == ["n00"]


def test_top_k_exceeding_size_returns_all():
    table = table_of({"b": 1.0, "a": 2.0})
    assert top_k(table, 10) == ["a", "b"]
    assert sorted(top_k(table, 2)) == ["a", "b"]


def test_top_k_rejects_zero():
    with pytest.raises(ValueError):
        top_k(table_of({"a": 1.0}), 0)


def test_all_dangling_graph_uniform():
    g = HopGraph(level=GraphLevel.ORG, nodes={"a", "b", "c"}, node_support={}, edges={})
    table = weighted_pagerank(g, CFG)
    for s in table.scores.values():
        assert s == pytest.approx(1 / 3, abs=1e-12)
    assert sum(table.scores.values()) == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("alpha", [2.0, 3.5])
def test_power_law_recovery_other_exponents(alpha):
    rng = np.random.default_rng(1)
    fit = fit_power_law(sample_discrete_power_law(alpha, 10000, rng).tolist())
    assert abs(fit.alpha - alpha) <= 0.15


def test_two_valued_data_fits_without_crashing():
    fit = fit_power_law([1] * 500 + [2] * 100)
    assert fit.alpha > 1.0
    assert fit.n_tail == 600
