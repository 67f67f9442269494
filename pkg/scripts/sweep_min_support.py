#!/usr/bin/env python3
"""Sweep the node minimum-support threshold and print graph shrinkage.

Shows how pruning cuts nodes/edges and what it does to the giant strongly
connected component, on a synthetic corpus.

Usage: python scripts/sweep_min_support.py [--n-users 8000] [--seed 7]
"""

import argparse
import tempfile
from pathlib import Path

from talentflow.graphalgo import component_report
from talentflow.hopgraph import GraphLevel, build_graph
from talentflow.hops import extract_all_hops
from talentflow.ingest import filter_active, ingest_profiles
from talentflow.model import AnalysisConfig
from talentflow.synthgen import GeneratorSpec, generate

SUPPORTS = [1, 2, 5, 10, 25, 50, 100, 250]


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--n-users", type=int, default=8000)
    parser.add_argument("--seed", type=int, default=7)
    parser.add_argument("--level", choices=["job", "org"], default="org")
    args = parser.parse_args()

    spec = GeneratorSpec(seed=args.seed, n_users=args.n_users)
    with tempfile.TemporaryDirectory() as tmp:
        result = generate(spec, Path(tmp) / "c.jsonl", Path(tmp) / "t.json")
        profiles, _ = ingest_profiles(result.corpus_path)
        active = filter_active(profiles)
        base = AnalysisConfig(curr_date=spec.curr_date)
        hops, _ = extract_all_hops(active, base)

        level = GraphLevel(args.level)
        print(f"{'min_support':>12} {'nodes':>8} {'edges':>8} {'sparsity':>10} "
              f"{'largest_scc':>12}")
        for support in SUPPORTS:
            config = AnalysisConfig(curr_date=spec.curr_date, min_support=support)
            graph = build_graph(hops, level, config, profiles=active)
            if graph.nodes:
                frac = component_report(graph).largest_scc_fraction
            else:
                frac = 0.0
            print(f"{support:>12} {len(graph.nodes):>8} {len(graph.edges):>8} "
                  f"{graph.sparsity():>10.4%} {frac:>12.1%}")


if __name__ == "__main__":
    main()
