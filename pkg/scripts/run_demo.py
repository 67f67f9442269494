#!/usr/bin/env python3
"""Generate a synthetic workforce, run the full pipeline, print highlights.

Usage: python scripts/run_demo.py [--n-users 5000] [--seed 7] [--out-dir demo_out]
"""

import argparse
import tempfile
from pathlib import Path

from talentflow.graphalgo import component_report, weighted_pagerank
from talentflow.hopgraph import GraphLevel, build_graph
from talentflow.hops import extract_all_hops
from talentflow.ingest import filter_active, ingest_profiles
from talentflow.metrics import CorpusIndex, level_gains, promotion_summary
from talentflow.model import AnalysisConfig
from talentflow.reports import write_all_reports
from talentflow.synthgen import GeneratorSpec, generate


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--n-users", type=int, default=5000)
    parser.add_argument("--seed", type=int, default=7)
    parser.add_argument("--out-dir", default="demo_out")
    args = parser.parse_args()

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    spec = GeneratorSpec(seed=args.seed, n_users=args.n_users)
    with tempfile.TemporaryDirectory() as tmp:
        result = generate(spec, Path(tmp) / "corpus.jsonl", out_dir / "truth.json")
        profiles, report = ingest_profiles(result.corpus_path)
        print(f"ingested {report.total_records} profiles "
              f"({report.active_records} active)")

        config = AnalysisConfig(curr_date=spec.curr_date)
        active = filter_active(profiles)
        hops, _ = extract_all_hops(active, config)
        print(f"extracted {len(hops)} hops")

        index = CorpusIndex.build(active, config)
        summary = promotion_summary(level_gains(hops, index))
        print(f"p(promotion) = {summary.p_promotion:.4f}  "
              f"internal {summary.p_promotion_given_internal:.4f}  "
              f"external {summary.p_promotion_given_external:.4f}")

        job_graph = build_graph(hops, GraphLevel.JOB, config, profiles=active)
        comp = component_report(job_graph)
        print(f"job graph: {len(job_graph.nodes)} nodes, {len(job_graph.edges)} edges, "
              f"largest SCC {comp.largest_scc_fraction:.1%}")

        pagerank = weighted_pagerank(job_graph, config)
        print("top 5 jobs by pagerank:")
        for node in pagerank.ranking[:5]:
            print(f"  {pagerank.scores[node]:.5f}  {node.title} ({node.industry})")

        files = write_all_reports(profiles, config, out_dir)
        print(f"wrote {len(files)} report files to {out_dir}/")


if __name__ == "__main__":
    main()
