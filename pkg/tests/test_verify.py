from __future__ import annotations

import json
import random

import pytest

from kminor import graph6
from kminor.canonical import canonical_form
from kminor.constructions import complete_minus
from kminor.graph import GraphError, complement, complete_graph, cycle_graph, delete_vertex, join, permute, petersen_graph
from kminor.minors import MinorModel, MinorTarget, verify_model
from kminor.reports import LemmaReport, ReportError, read_records
from kminor.stats import is_proper_coloring
from kminor.verify import (
    Job,
    _check_delta5,
    _check_exfun,
    _check_h9,
    _check_three,
    build_job,
    check_canonical,
    cockade_job,
    planted_three_cliques,
    recheck_report,
    run_job,
    satisfies_star,
    witness,
)


def g6(g) -> str:
    return graph6.to_string(g)


def test_witness_examples():
    res = witness(complete_graph(8))
    assert res.kind == "coloring" and is_proper_coloring(complete_graph(8), res.coloring, 8)
    res = witness(complete_graph(9))
    assert res.kind == "minor"
    assert verify_model(complete_graph(9), res.model, MinorTarget.family(9, 6))[0]
    with pytest.raises(GraphError):
        witness(complete_graph(21))


def test_witness_budget_is_reported():
    res = witness(complete_graph(9), max_nodes=0)
    assert res.kind in ("minor", "budget_exceeded")


def test_cockade_one_block_is_skipped_for_k9m6():
    job = cockade_job(1)
    assert len(job.items) == 1
    rec = job.check(*job.items[0])
    assert rec["verdict"] == "ok" and rec["k9m5"]["search"] == "exhausted"
    assert "skipped" in rec["k9m6"]


def test_cockade_two_blocks():
    report = run_job(cockade_job(2))
    assert report.verdict == "verified"
    assert report.examined == 11 and report.derived["classes_2_blocks"] == 10


def test_exfun_examples():
    rec = _check_exfun(g6(complete_graph(9)), {}, 9, None)
    assert rec["verdict"] == "ok"
    # K9 minus a star of three edges: 33 edges >= 5*9-14 = 31
    g = complete_minus(9, [(0, 1), (0, 2), (0, 3)])
    rec = _check_exfun(g6(g), {}, 9, None)
    assert rec["verdict"] == "ok"
    assert verify_model(g, MinorModel.from_record(rec["model"]), MinorTarget.family(9, 6))[0]
    assert _check_exfun(g6(cycle_graph(9)), {}, 9, None)["verdict"] == "fail"


def test_exfun9_job():
    report = run_job(build_job("exfun9"))
    assert report.verdict == "verified" and report.examined > 0


def test_h9_examples():
    rec = _check_h9(g6(join(complete_graph(4), cycle_graph(5))), {})
    assert rec["tally"] == "has_k5"
    h = complement(delete_vertex(petersen_graph(), 0))
    assert h.n == 9
    rec = _check_h9(g6(h), {})
    assert rec["verdict"] == "ok" and rec["tally"].startswith(("member_", "has_k5"))


def test_delta5_examples():
    rec = _check_delta5(g6(complete_graph(8)), {}, None)
    assert rec["verdict"] == "ok"
    h = complement(cycle_graph(8))
    rec = _check_delta5(g6(h), {}, None)
    assert rec["verdict"] == "ok"
    model = MinorModel.from_record(rec["model"])
    assert not any(b >> rec["deleted"] & 1 for b in model.branch_sets)
    assert verify_model(h, model, MinorTarget.family(7, 6))[0]
    assert _check_delta5(g6(cycle_graph(8)), {}, None)["verdict"] == "fail"


def test_three_cliques_examples():
    k19 = complete_graph(19)
    cliques = [list(range(0, 6)), list(range(4, 10)), list(range(8, 14))]
    rec = _check_three(g6(k19), {"cliques": cliques}, None)
    assert rec["verdict"] == "ok" and rec["connectivity"] == 18
    bad = [list(range(6)), list(range(6)), list(range(6, 12))]
    assert _check_three(g6(k19), {"cliques": bad}, None)["verdict"] == "fail"


def test_planted_three_cliques():
    rng = random.Random(4)
    for _ in range(20):
        g, cliques = planted_three_cliques(rng)
        assert g.n == 19
        sets = [frozenset(c) for c in cliques]
        assert satisfies_star(*sets) and len(set(sets)) == 3
        for c in cliques:
            assert g.is_clique(sum(1 << v for v in c))


def test_build_job_rejects_unknown():
    with pytest.raises(GraphError):
        build_job("nope")
    with pytest.raises(GraphError):
        cockade_job(0)


# -- reports --------------------------------------------------------------


def _toy_job(n_items: int = 6) -> Job:
    items = [(g6(cycle_graph(k)), {}) for k in range(3, 3 + n_items)]

    def check(code: str, extra: dict) -> dict:
        return {"verdict": "ok", "n": graph6.decode(code).n, "tally": "seen"}

    return Job("toy", {"kind": "cycles"}, items, check)


def test_empty_job_has_header_and_trailer(tmp_path):
    path = tmp_path / "r.jsonl"
    report = run_job(Job("empty", {}, [], lambda a, b: {}), path)
    recs = read_records(path)
    assert [r["record"] for r in recs] == ["header", "trailer"]
    assert report.verdict == "verified" and recs[1]["examined"] == 0


def test_report_resume_is_byte_identical(tmp_path):
    full = tmp_path / "full.jsonl"
    run_job(_toy_job(), full)
    part = tmp_path / "part.jsonl"
    first = run_job(_toy_job(), part, max_graphs=2)
    assert not first.complete and first.verdict == "incomplete" and first.exit_code == 2
    second = run_job(_toy_job(), part, resume=True)
    assert second.complete and second.examined == 6 and second.derived["count_seen"] == 6
    assert part.read_bytes() == full.read_bytes()
    run_job(_toy_job(), part, resume=True)
    assert part.read_bytes() == full.read_bytes()


def test_resume_survives_torn_line(tmp_path):
    full = tmp_path / "full.jsonl"
    run_job(_toy_job(), full)
    part = tmp_path / "part.jsonl"
    run_job(_toy_job(), part, max_graphs=3)
    with open(part, "a") as fh:
        fh.write('{"record": "graph", "ind')
    run_job(_toy_job(), part, resume=True)
    assert part.read_bytes() == full.read_bytes()


def test_resume_rejects_other_header(tmp_path):
    path = tmp_path / "r.jsonl"
    run_job(_toy_job(), path, max_graphs=2)
    other = _toy_job()
    other.filter = {"kind": "different"}
    with pytest.raises(ReportError):
        run_job(other, path, resume=True)


def test_trailer_counts_and_failures(tmp_path):
    items = [(g6(cycle_graph(k)), {}) for k in range(3, 8)]

    def check(code: str, extra: dict) -> dict:
        n = graph6.decode(code).n
        return {"verdict": "fail", "diagnostic": "odd"} if n % 2 else {"verdict": "ok"}

    path = tmp_path / "r.jsonl"
    report = run_job(Job("odd", {}, items, check), path)
    trailer = read_records(path)[-1]
    assert trailer["examined"] == 5 and trailer["failures"] == 3
    assert report.verdict == "failed" and report.exit_code == 1
    assert recheck_report(path) == []


def test_report_lines_are_sorted_json(tmp_path):
    path = tmp_path / "r.jsonl"
    run_job(_toy_job(2), path)
    for line in path.read_text().splitlines():
        rec = json.loads(line)
        assert line == json.dumps(rec, sort_keys=True, separators=(",", ":"))


def test_recheck_detects_tampering(tmp_path):
    path = tmp_path / "d.jsonl"
    report = run_job(build_job("delta5-8"), path, max_graphs=5)
    assert report.examined == 5
    assert recheck_report(path) == []
    lines = path.read_text().splitlines()
    rec = json.loads(lines[1])
    rec["model"]["branch_sets"] = rec["model"]["branch_sets"][:-1] + [rec["model"]["branch_sets"][0]]
    lines[1] = json.dumps(rec, sort_keys=True, separators=(",", ":"))
    path.write_text("\n".join(lines) + "\n")
    assert recheck_report(path)


def test_recheck_detects_bad_trailer(tmp_path):
    path = tmp_path / "r.jsonl"
    run_job(_toy_job(3), path)
    lines = path.read_text().splitlines()
    del lines[1]
    path.write_text("\n".join(lines) + "\n")
    assert any("trailer" in p for p in recheck_report(path))


def test_workers_do_not_change_reports(tmp_path):
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    run_job(build_job("witness-fuzz", samples=40, seed=3), a, workers=1)
    run_job(build_job("witness-fuzz", samples=40, seed=3), b, workers=2)
    assert a.read_bytes() == b.read_bytes()


def test_shard_keeps_strided_items():
    job = _toy_job(6)
    report = run_job(job, shard=(1, 3))
    assert report.examined == 2 and report.filter["shard"] == [1, 3]
    with pytest.raises(GraphError):
        run_job(job, shard=(3, 3))


def test_verdict_precedence():
    r = LemmaReport("x", {})
    assert r.verdict == "incomplete" and r.exit_code == 2
    r.complete = True
    assert r.verdict == "verified" and r.exit_code == 0
    r.budget_exceeded = 1
    assert r.verdict == "budget_exceeded" and r.exit_code == 2
    r.add_failure("A_", "bad")
    assert r.verdict == "failed" and r.exit_code == 1


def test_check_canonical():
    form = canonical_form(cycle_graph(6)).decode()
    assert check_canonical(form)
    h = graph6.decode(form)
    shifted = permute(h, [(v + 1) % 6 for v in range(6)])
    assert g6(shifted) != form and not check_canonical(g6(shifted))
