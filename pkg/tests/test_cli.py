import csv
import json

import pytest

from talentflow.cli import main
from talentflow.synthgen import GeneratorSpec, generate


@pytest.fixture(scope="module")
def corpus(tmp_path_factory):
    root = tmp_path_factory.mktemp("cli_corpus")
    spec = GeneratorSpec(seed=17, n_users=400)
    generate(spec, root / "corpus.jsonl", root / "truth.json")
    return root / "corpus.jsonl"


def read_csv(path):
    with open(path, newline="", encoding="utf-8") as fh:
        return list(csv.reader(fh))


def test_unknown_flag_usage_error(corpus, capsys):
    with pytest.raises(SystemExit) as err:
        main(["ingest", "--input", str(corpus), "--frobnicate"])
    assert err.value.code == 2


def test_missing_input_fails_cleanly(tmp_path, capsys):
    code = main(["ingest", "--input", str(tmp_path / "nope.jsonl")])
    assert code == 1
    assert "error:" in capsys.readouterr().err


def test_ingest_prints_counts(corpus, capsys):
    assert main(["ingest", "--input", str(corpus)]) == 0
    out = capsys.readouterr().out
    assert "total_records: 400" in out
    assert "active_records:" in out


def test_hops_csv_schema(corpus, tmp_path):
    out = tmp_path / "hops.csv"
    assert main(["hops", "--input", str(corpus), "--out", str(out)]) == 0
    rows = read_csv(out)
    assert rows[0] == ["user_id", "src_title", "src_org", "src_industry",
                       "dst_title", "dst_org", "dst_industry", "kind", "stay_months"]
    assert len(rows) > 1
    assert all(r[7] in ("internal", "external") for r in rows[1:])


def test_metrics_cohorts(corpus, tmp_path):
    out = tmp_path / "cohorts.csv"
    assert main([
        "metrics", "cohorts", "--input", str(corpus), "--out", str(out),
        "--axes", "work_exp", "--cohort-min-support", "10",
    ]) == 0
    rows = read_csv(out)
    assert rows[0][0] == "cross"
    assert any(r[11] == "false" for r in rows[1:])  # some unsuppressed cell


def test_metrics_cohorts_bad_axis(corpus, tmp_path):
    code = main([
        "metrics", "cohorts", "--input", str(corpus),
        "--out", str(tmp_path / "x.csv"), "--axes", "shoe_size",
    ])
    assert code == 1


def test_metrics_levels_respects_min_support(corpus, tmp_path):
    out = tmp_path / "levels.csv"
    assert main([
        "metrics", "levels", "--input", str(corpus), "--out", str(out),
        "--min-support", "25",
    ]) == 0
    rows = read_csv(out)
    assert rows[0] == ["title", "organization", "support", "level_months"]
    assert all(int(r[2]) >= 25 for r in rows[1:])


def test_metrics_promotions_and_stay(corpus, tmp_path):
    promos = tmp_path / "promos.csv"
    stay = tmp_path / "stay.csv"
    assert main(["metrics", "promotions", "--input", str(corpus), "--out", str(promos)]) == 0
    assert main(["metrics", "stay", "--input", str(corpus), "--out", str(stay),
                 "--cohort-min-support", "20"]) == 0
    assert read_csv(promos)[0][0] == "kind"
    assert read_csv(stay)[0][0] == "kind"


def test_graph_build_formats(corpus, tmp_path):
    for fmt, suffix in [("csv", "csv"), ("dot", "dot"), ("graphml", "graphml")]:
        out = tmp_path / f"g.{suffix}"
        assert main([
            "graph", "build", "--input", str(corpus), "--level", "org",
            "--out", str(out), "--format", fmt,
        ]) == 0
        assert out.stat().st_size > 0
    assert read_csv(tmp_path / "g.csv")[0] == ["src", "dst", "weight"]


def test_graph_analyze_pagerank_top20(corpus, tmp_path):
    out = tmp_path / "top.csv"
    ccdf = tmp_path / "ccdf.csv"
    assert main([
        "graph", "analyze", "--input", str(corpus), "--level", "job",
        "--metric", "pagerank", "--top", "20", "--out", str(out),
        "--ccdf", str(ccdf),
    ]) == 0
    rows = read_csv(out)
    assert rows[0] == ["metric", "rank", "title", "industry", "score"]
    assert len(rows) - 1 <= 20
    scores = [float(r[4]) for r in rows[1:]]
    assert scores == sorted(scores, reverse=True)
    assert read_csv(ccdf)[0] == ["metric", "value", "ccdf"]


def test_graph_components(corpus, capsys):
    assert main(["graph", "components", "--input", str(corpus), "--level", "org"]) == 0
    out = capsys.readouterr().out
    assert "scc_count:" in out
    assert "largest_wcc_size:" in out


def test_graph_powerlaw(corpus, capsys):
    code = main([
        "graph", "powerlaw", "--input", str(corpus), "--level", "job",
        "--metric", "indegree",
    ])
    captured = capsys.readouterr()
    # Tiny synthetic catalogs may not leave ten positive degrees; either a
    # fit or a clean one-line failure is acceptable here.
    assert code in (0, 1)
    if code == 0:
        assert "alpha:" in captured.out
    else:
        assert "InsufficientTailError" in captured.err


def test_synth_cli_round_trip(tmp_path):
    out = tmp_path / "c.jsonl"
    truth = tmp_path / "t.json"
    assert main(["synth", "--out", str(out), "--truth", str(truth),
                 "--n-users", "50", "--seed", "3"]) == 0
    assert len(out.read_text().splitlines()) == 50
    assert json.loads(truth.read_text())["seed"] == 3


def test_synth_cli_spec_file(tmp_path):
    spec_path = tmp_path / "spec.json"
    spec_path.write_text(json.dumps({"n_users": 5, "seed": 1}))
    assert main(["synth", "--spec", str(spec_path), "--out", str(tmp_path / "c.jsonl"),
                 "--truth", str(tmp_path / "t.json")]) == 0
    assert len((tmp_path / "c.jsonl").read_text().splitlines()) == 5


def test_report_all_writes_nine_files(corpus, tmp_path):
    out_dir = tmp_path / "reports"
    assert main(["report-all", "--input", str(corpus), "--out-dir", str(out_dir),
                 "--cohort-min-support", "20"]) == 0
    names = sorted(p.name for p in out_dir.iterdir())
    assert names == [
        "centrality_ccdf_job.csv",
        "cohort_fractions.csv",
        "distributions.csv",
        "graph_stats.csv",
        "level_gain_hist.csv",
        "promotion_table.csv",
        "stay_analysis.csv",
        "top20_job.csv",
        "top20_org.csv",
    ]
    for name in names:
        rows = read_csv(out_dir / name)
        assert rows, name
        assert all(len(r) == len(rows[0]) for r in rows), name


def test_report_all_env_var_fallback(corpus, tmp_path, monkeypatch):
    out_dir = tmp_path / "env_reports"
    monkeypatch.setenv("TALENTFLOW_OUT_DIR", str(out_dir))
    assert main(["report-all", "--input", str(corpus)]) == 0
    assert (out_dir / "promotion_table.csv").exists()


def test_report_all_requires_out_dir(corpus, monkeypatch):
    monkeypatch.delenv("TALENTFLOW_OUT_DIR", raising=False)
    assert main(["report-all", "--input", str(corpus)]) == 1


def test_explicit_curr_date_honored(corpus, tmp_path):
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    assert main(["hops", "--input", str(corpus), "--out", str(a)]) == 0
    assert main(["hops", "--input", str(corpus), "--out", str(a.with_name('a2.csv')),
                 ]) == 0
    assert main(["hops", "--input", str(corpus), "--out", str(b),
                 "--curr-date", "2030-01"]) == 0
    assert a.read_bytes() == a.with_name('a2.csv').read_bytes()
