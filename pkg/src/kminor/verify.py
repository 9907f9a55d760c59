"""Verification drivers for the finite claims, plus the minor-or-colouring witness harness.

Each driver builds a :class:`Job`: a sorted list of items (graph6 plus optional
extra data) and a stateless per-item check. :func:`run_job` feeds the items
to one or more workers and writes a resumable report.
"""
from __future__ import annotations

import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from itertools import combinations
from typing import Callable

from . import graph6
from .canonical import canonical_form
from .constructions import all_cockades, complete_minus, derive_minimal_alpha2_family
from .enumeration import Filter, enumerate_forms
from .graph import Graph, GraphError, bits, build_graph, delete_vertex
from .minors import MinorModel, MinorTarget, SearchBudgetExceeded, SearchStats, find_family_minor, verify_model
from .reports import VERSION, LemmaReport, ReportError, ReportWriter, read_records
from .stats import chromatic_at_most, is_proper_coloring, maximum_clique, vertex_connectivity
from .subgraph import find_embedding

DEFAULT_NODE_BUDGET = 5_000_000
WITNESS_MAX_ORDER = 20


# ------------------------------------------------------------------ witness

@dataclass
class WitnessResult:
    """Exactly one of: a K_t^{-s} model, a proper colouring, a counterexample flag, or budget exhaustion."""

    kind: str  # "minor" | "coloring" | "counterexample" | "budget_exceeded"
    model: MinorModel | None = None
    coloring: list[int] | None = None
    diagnostic: str = ""
    nodes: int = 0

    def to_record(self) -> dict:
        rec: dict = {"kind": self.kind, "nodes": self.nodes}
        if self.model is not None:
            rec["model"] = self.model.to_record()
        if self.coloring is not None:
            rec["coloring"] = list(self.coloring)
        if self.diagnostic:
            rec["diagnostic"] = self.diagnostic
        return rec


def witness(
    g: Graph,
    *,
    t: int = 9,
    s: int = 6,
    max_colors: int = 8,
    max_nodes: int | None = DEFAULT_NODE_BUDGET,
) -> WitnessResult:
    """A K_t^{-s} minor model of ``g`` if one exists, else a colouring with at most ``max_colors`` colours."""
    if g.n > WITNESS_MAX_ORDER:
        raise GraphError(f"witness search is limited to {WITNESS_MAX_ORDER} vertices, got {g.n}")
    stats = SearchStats()
    try:
        model = find_family_minor(g, t, s, max_nodes=max_nodes, stats=stats)
        if model is not None:
            ok, diag = verify_model(g, model, MinorTarget.family(t, s))
            if not ok:
                return WitnessResult("counterexample", model=model, nodes=stats.nodes,
                                     diagnostic=f"invalid model from search: {diag}")
            return WitnessResult("minor", model=model, nodes=stats.nodes)
        coloring = chromatic_at_most(g, max_colors, max_nodes=max_nodes)
    except SearchBudgetExceeded as exc:
        return WitnessResult("budget_exceeded", nodes=stats.nodes, diagnostic=str(exc))
    if coloring is not None:
        return WitnessResult("coloring", coloring=coloring, nodes=stats.nodes)
    return WitnessResult(
        "counterexample",
        nodes=stats.nodes,
        diagnostic=f"no K_{t}^-{s} minor (search exhausted) and not {max_colors}-colourable: "
        + graph6.to_string(g),
    )


# ------------------------------------------------------------- job engine

@dataclass
class Job:
    lemma: str
    filter: dict
    items: list[tuple[str, dict]]
    check: Callable[[str, dict], dict]
    derived: dict = field(default_factory=dict)


def _model_in(g: Graph, model: MinorModel | None, t: int, s: int) -> dict | None:
    if model is None:
        return None
    ok, diag = verify_model(g, model, MinorTarget.family(t, s))
    if not ok:
        raise AssertionError(f"search returned an invalid model: {diag}")
    return model.to_record()


def _search(g: Graph, t: int, s: int, budget: int | None) -> tuple[dict | None, int]:
    stats = SearchStats()
    model = find_family_minor(g, t, s, max_nodes=budget, stats=stats)
    return _model_in(g, model, t, s), stats.nodes


def _check_cockade(g6: str, extra: dict, budget: int | None) -> dict:
    g = graph6.decode(g6)
    out: dict = {"n": g.n, "e": g.edge_count}
    if g.edge_count != 5 * g.n - 14:
        return {**out, "verdict": "fail", "diagnostic": "edge count differs from 5n-14"}
    try:
        model, nodes = _search(g, 9, 5, budget)
        if model is not None:
            return {**out, "verdict": "fail", "diagnostic": "K9^-5 minor found", "k9m5": {"model": model}}
        out["k9m5"] = {"search": "exhausted", "nodes": nodes}
        if g.n < 9:
            out["k9m6"] = {"skipped": "fewer than 9 vertices"}
            return {**out, "verdict": "ok", "tally": "small"}
        model, nodes = _search(g, 9, 6, budget)
    except SearchBudgetExceeded as exc:
        return {**out, "verdict": "budget", "diagnostic": str(exc)}
    if model is None:
        return {**out, "verdict": "fail", "diagnostic": "no K9^-6 minor"}
    out["k9m6"] = {"model": model, "target": [9, 6]}
    return {**out, "verdict": "ok", "tally": "checked"}


def cockade_job(max_blocks: int = 3, budget: int | None = DEFAULT_NODE_BUDGET) -> Job:
    if not 1 <= max_blocks <= 4:
        raise GraphError("cockade verification supports 1..4 blocks")
    base = complete_minus(8, "two_independent")
    levels = all_cockades(base, 4, max_blocks)
    items = sorted((graph6.to_string(g), {}) for level in levels for g in level)
    derived = {f"classes_{i + 1}_blocks": len(level) for i, level in enumerate(levels)}
    flt = {"base": graph6.to_string(base), "k": 4, "max_blocks": max_blocks, "node_budget": budget}
    return Job("cockade", flt, items, partial(_check_cockade, budget=budget), derived)


def _check_exfun(g6: str, extra: dict, n: int, budget: int | None) -> dict:
    g = graph6.decode(g6)
    out: dict = {"e": g.edge_count}
    if g.n != n or g.edge_count < 5 * n - 14:
        return {**out, "verdict": "fail", "diagnostic": "graph outside the filter"}
    try:
        stats = SearchStats()
        model = find_family_minor(g, 9, 6, max_nodes=budget, stats=stats)
    except SearchBudgetExceeded as exc:
        return {**out, "verdict": "budget", "diagnostic": str(exc)}
    if model is None:
        return {**out, "verdict": "fail", "diagnostic": "no K9^-6 minor", "nodes": stats.nodes}
    rec = _model_in(g, model, 9, 6)
    tally = "heuristic" if stats.heuristic_hit else "search"
    return {**out, "verdict": "ok", "model": rec, "target": [9, 6], "tally": tally}


def exfun_job(n: int, budget: int | None = DEFAULT_NODE_BUDGET, workers: int = 1) -> Job:
    if n not in (9, 10):
        raise GraphError("base cases exist for n = 9 and n = 10")
    flt = Filter(n, min_edges=5 * n - 14)
    forms = enumerate_forms(flt, complement_side=True, workers=workers)
    items = [(f.decode("ascii"), {}) for f in forms]
    rec = {**flt.to_record(), "complement_side": True, "node_budget": budget}
    return Job(f"exfun{n}", rec, items, partial(_check_exfun, n=n, budget=budget))


_FAMILY: list[Graph] | None = None


def _alpha2_family() -> list[Graph]:
    global _FAMILY
    if _FAMILY is None:
        _FAMILY = derive_minimal_alpha2_family()
    return _FAMILY


def _check_h9(g6: str, extra: dict) -> dict:
    h = graph6.decode(g6)
    clique = maximum_clique(h)
    if clique.bit_count() >= 5:
        return {"verdict": "ok", "clique": list(bits(clique))[:5], "tally": "has_k5"}
    for idx, member in enumerate(_alpha2_family()):
        phi = find_embedding(member, h, spanning=True)
        if phi is not None:
            return {"verdict": "ok", "member": idx, "embedding": phi, "tally": f"member_{idx}"}
    return {"verdict": "fail", "diagnostic": "K5-free and contains no family member"}


def h9_job(workers: int = 1) -> Job:
    flt = Filter(9, independence_at_most=2, max_edges=35)
    forms = enumerate_forms(flt, complement_side=True, workers=workers)
    items = [(f.decode("ascii"), {}) for f in forms]
    family = _alpha2_family()
    derived = {"family_size": len(family), "family": [graph6.to_string(m) for m in family]}
    return Job("h9", {**flt.to_record(), "complement_side": True}, items, _check_h9, derived)


def _check_delta5(g6: str, extra: dict, budget: int | None) -> dict:
    h = graph6.decode(g6)
    if h.n and min(h.degrees()) < 5:
        return {"verdict": "fail", "diagnostic": "minimum degree below 5"}
    try:
        for v in range(h.n):
            model = find_family_minor(delete_vertex(h, v), 7, 6, max_nodes=budget)
            if model is not None:
                lifted = MinorModel(tuple(_lift(b, v) for b in model.branch_sets), model.missing_pairs)
                return {"verdict": "ok", "deleted": v, "model": _model_in(h, lifted, 7, 6),
                        "target": [7, 6], "tally": "checked"}
    except SearchBudgetExceeded as exc:
        return {"verdict": "budget", "diagnostic": str(exc)}
    return {"verdict": "fail", "diagnostic": "no vertex deletion leaves a K7^-6 minor"}


def _lift(mask: int, v: int) -> int:
    """Map a vertex set of ``h - v`` back into ``h``."""
    low = mask & ((1 << v) - 1)
    return low | ((mask >> v) << (v + 1))


def delta5_job(n: int, budget: int | None = DEFAULT_NODE_BUDGET, workers: int = 1) -> Job:
    if n not in (8, 9):
        raise GraphError("the minimum-degree check runs for n = 8 or n = 9")
    flt = Filter(n, min_degree=5)
    forms = enumerate_forms(flt, complement_side=True, workers=workers)
    items = [(f.decode("ascii"), {}) for f in forms]
    rec = {**flt.to_record(), "complement_side": True, "node_budget": budget}
    return Job(f"delta5-{n}", rec, items, partial(_check_delta5, budget=budget))


def satisfies_star(l1: frozenset, l2: frozenset, l3: frozenset) -> bool:
    """Each of the three sets owns a vertex outside the other two."""
    return bool(l1 - (l2 | l3)) and bool(l2 - (l1 | l3)) and bool(l3 - (l1 | l2))


def planted_three_cliques(rng: random.Random, n: int = 19, p: float = 0.6) -> tuple[Graph, list[list[int]]]:
    """Random graph on n vertices with three planted 6-cliques meeting the private-vertex condition."""
    while True:
        pool = rng.sample(range(n), rng.randint(7, min(n, 18)))
        cliques = [frozenset(rng.sample(pool, 6)) for _ in range(3)]
        if len(set(cliques)) == 3 and satisfies_star(*cliques):
            break
    edges = {(u, v) for u, v in combinations(range(n), 2) if rng.random() < p}
    for c in cliques:
        edges.update(combinations(sorted(c), 2))
    return build_graph(n, edges), [sorted(c) for c in cliques]


def _check_three(g6: str, extra: dict, budget: int | None) -> dict:
    g = graph6.decode(g6)
    cliques = [frozenset(c) for c in extra["cliques"]]
    for c in cliques:
        mask = sum(1 << v for v in c)
        if len(c) != 6 or not g.is_clique(mask):
            return {"verdict": "fail", "diagnostic": "planted set is not a 6-clique"}
    if not satisfies_star(*cliques):
        return {"verdict": "fail", "diagnostic": "private-vertex condition violated"}
    kappa = vertex_connectivity(g)
    if g.n < 19 or kappa < 7:
        return {"verdict": "skipped", "connectivity": kappa, "tally": "connectivity_rejected"}
    try:
        model, nodes = _search(g, 9, 6, budget)
    except SearchBudgetExceeded as exc:
        return {"verdict": "budget", "diagnostic": str(exc)}
    if model is None:
        return {"verdict": "fail", "diagnostic": "no K9^-6 minor", "nodes": nodes}
    return {"verdict": "ok", "connectivity": kappa, "model": model, "target": [9, 6], "tally": "qualifying"}


def three_cliques_job(samples: int, seed: int, n: int = 19, p: float = 0.6,
                      budget: int | None = DEFAULT_NODE_BUDGET) -> Job:
    if samples < 1:
        raise GraphError("samples must be at least 1")
    if n < 19:
        raise GraphError("the three-clique check needs at least 19 vertices")
    items = []
    for i in range(samples):
        g, cliques = planted_three_cliques(random.Random(f"{seed}:{i}"), n, p)
        items.append((graph6.to_string(g), {"index": i, "cliques": cliques}))
    flt = {"samples": samples, "seed": seed, "n": n, "p": p, "node_budget": budget}
    return Job("three-cliques", flt, items, partial(_check_three, budget=budget))


def random_fuzz_graph(rng: random.Random, max_n: int = 14) -> Graph:
    n = rng.randint(1, max_n)
    p = rng.uniform(0.3, 0.95)
    return build_graph(n, [(u, v) for u, v in combinations(range(n), 2) if rng.random() < p])


def _check_witness(g6: str, extra: dict, max_colors: int, budget: int | None) -> dict:
    g = graph6.decode(g6)
    res = witness(g, max_colors=max_colors, max_nodes=budget)
    rec = res.to_record()
    rec.pop("nodes")
    verdict = {"minor": "ok", "coloring": "ok", "budget_exceeded": "budget"}.get(res.kind, "fail")
    if res.kind == "minor":
        rec["target"] = [9, 6]
    out = {"verdict": verdict, "witness": rec, "tally": res.kind}
    if verdict == "fail":
        out["diagnostic"] = res.diagnostic or res.kind
    return out


def witness_fuzz_job(samples: int, seed: int, max_n: int = 14, max_colors: int = 8,
                     budget: int | None = DEFAULT_NODE_BUDGET) -> Job:
    items = []
    for i in range(samples):
        g = random_fuzz_graph(random.Random(f"{seed}:{i}"), max_n)
        items.append((graph6.to_string(g), {"index": i}))
    flt = {"samples": samples, "seed": seed, "max_n": max_n, "max_colors": max_colors, "node_budget": budget}
    return Job("witness-fuzz", flt, items, partial(_check_witness, max_colors=max_colors, budget=budget))


LEMMAS = ("cockade", "exfun9", "exfun10", "h9", "delta5-8", "delta5-9", "three-cliques", "witness-fuzz")


def build_job(lemma: str, *, seed: int = 0, samples: int = 100, max_blocks: int = 3,
              budget: int | None = DEFAULT_NODE_BUDGET, workers: int = 1) -> Job:
    if lemma == "cockade":
        return cockade_job(max_blocks, budget)
    if lemma in ("exfun9", "exfun10"):
        return exfun_job(int(lemma[5:]), budget, workers)
    if lemma == "h9":
        return h9_job(workers)
    if lemma in ("delta5-8", "delta5-9"):
        return delta5_job(int(lemma[-1]), budget, workers)
    if lemma == "three-cliques":
        return three_cliques_job(samples, seed, budget=budget)
    if lemma == "witness-fuzz":
        return witness_fuzz_job(samples, seed, budget=budget)
    raise GraphError(f"unknown lemma {lemma!r}; expected one of {', '.join(LEMMAS)}")


def _run_item(check: Callable[[str, dict], dict], item: tuple[str, dict]) -> dict:
    return check(item[0], item[1])


def _tally(report: LemmaReport, rec: dict) -> None:
    report.examined += 1
    verdict = rec.get("verdict")
    if verdict == "fail":
        report.add_failure(rec["g6"], rec.get("diagnostic", ""))
    elif verdict == "budget":
        report.budget_exceeded += 1
    if "tally" in rec:
        key = f"count_{rec['tally']}"
        report.derived[key] = report.derived.get(key, 0) + 1


def run_job(
    job: Job,
    path: str | os.PathLike | None = None,
    *,
    resume: bool = False,
    workers: int = 1,
    max_graphs: int | None = None,
    time_budget: float | None = None,
    shard: tuple[int, int] | None = None,
) -> LemmaReport:
    """Check every item of ``job``; with ``path`` write a JSONL report.

    ``max_graphs`` and ``time_budget`` stop early (no trailer is written, so
    the file can be resumed). ``shard=(i, k)`` keeps items i, i+k, i+2k, ...
    """
    start = time.perf_counter()
    items = job.items
    flt = dict(job.filter)
    first, stride = 0, 1
    if shard is not None:
        first, stride = shard
        if not 0 <= first < stride:
            raise GraphError(f"shard index {first} outside 0..{stride - 1}")
        items = items[first::stride]
        flt["shard"] = [first, stride]
    report = LemmaReport(job.lemma, flt, derived=dict(job.derived))
    writer = None
    done: list[dict] = []
    if path is not None:
        writer = ReportWriter(path, report.header(VERSION), resume)
        done = writer.done
    for pos, rec in enumerate(done):
        if pos >= len(items) or rec.get("record") != "graph" or rec.get("g6") != items[pos][0]:
            if writer is not None:
                writer.close()
            raise ReportError("existing records do not match this run's item order")
        _tally(report, rec)
        report.cursor = rec["g6"]
    pending = items[len(done):]
    stopped = False
    pool = None
    try:
        if workers > 1 and len(pending) > 1:
            pool = ProcessPoolExecutor(max_workers=workers)
            results = pool.map(partial(_run_item, job.check), pending, chunksize=1)
        else:
            results = (_run_item(job.check, item) for item in pending)
        for count, (item, body) in enumerate(zip(pending, results)):
            # global item index, so shard files merge back into the unsharded order
            rec = {"record": "graph", "index": first + stride * (len(done) + count), "g6": item[0]}
            if item[1]:
                rec["extra"] = item[1]
            rec.update(body)
            if writer is not None:
                writer.write(rec)
            _tally(report, rec)
            report.cursor = item[0]
            if max_graphs is not None and count + 1 >= max_graphs and count + 1 < len(pending):
                stopped = True
                break
            if time_budget is not None and time.perf_counter() - start > time_budget and count + 1 < len(pending):
                stopped = True
                break
    finally:
        if pool is not None:
            pool.shutdown(cancel_futures=True)
    report.complete = not stopped
    if writer is not None:
        if report.complete:
            writer.write(report.trailer())
        writer.close()
    report.wall_time = time.perf_counter() - start
    return report


def verify_cockade_tightness(max_blocks: int = 3, path=None, **kw) -> LemmaReport:
    return run_job(cockade_job(max_blocks), path, **kw)


def verify_exfun_base(n: int, path=None, **kw) -> LemmaReport:
    return run_job(exfun_job(n), path, **kw)


def verify_lemma_h9(path=None, **kw) -> LemmaReport:
    return run_job(h9_job(), path, **kw)


def verify_lemma_delta5(n: int = 8, path=None, **kw) -> LemmaReport:
    return run_job(delta5_job(n), path, **kw)


def verify_three_cliques(samples: int = 100, seed: int = 0, path=None, **kw) -> LemmaReport:
    return run_job(three_cliques_job(samples, seed), path, **kw)


# -------------------------------------------------------- offline recheck

def recheck_report(path: str | os.PathLike, *, rerun_exhausted: bool = False) -> list[str]:
    """Re-validate every persisted witness; returns a list of problems (empty if clean)."""
    records = read_records(path)
    problems: list[str] = []
    if not records or records[0].get("record") != "header":
        return ["missing header"]
    body = records[1:]
    trailer = body[-1] if body and body[-1].get("record") == "trailer" else None
    graphs = body[:-1] if trailer else body
    failures = 0
    for rec in graphs:
        where = f"record {rec.get('index')}"
        try:
            g = graph6.decode(rec["g6"])
        except (KeyError, ValueError) as exc:
            problems.append(f"{where}: bad graph6 ({exc})")
            continue
        failures += rec.get("verdict") == "fail"
        if rec.get("verdict") != "ok":
            continue
        problems.extend(f"{where}: {p}" for p in _recheck_record(g, rec, rerun_exhausted))
    if trailer is not None:
        if trailer.get("examined") != len(graphs):
            problems.append("trailer count differs from the number of records")
        if trailer.get("failures") != failures:
            problems.append("trailer failure count differs from the records")
    return problems


def _check_model(g: Graph, model_rec: dict, target: list[int], avoid: int | None = None) -> str | None:
    model = MinorModel.from_record(model_rec)
    if avoid is not None and any(b >> avoid & 1 for b in model.branch_sets):
        return "model uses the deleted vertex"
    ok, diag = verify_model(g, model, MinorTarget.family(*target))
    return None if ok else f"model rejected: {diag}"


def _recheck_record(g: Graph, rec: dict, rerun_exhausted: bool) -> list[str]:
    out = []
    if "model" in rec:
        bad = _check_model(g, rec["model"], rec["target"], rec.get("deleted"))
        if bad:
            out.append(bad)
    if "k9m6" in rec and "model" in rec["k9m6"]:
        bad = _check_model(g, rec["k9m6"]["model"], [9, 6])
        if bad:
            out.append(bad)
    if "k9m5" in rec and rerun_exhausted:
        if find_family_minor(g, 9, 5) is not None:
            out.append("K9^-5 minor exists despite exhausted search")
    if "clique" in rec:
        mask = sum(1 << v for v in rec["clique"])
        if mask.bit_count() < 5 or not g.is_clique(mask):
            out.append("recorded K5 is not a clique")
    if "embedding" in rec:
        member = _alpha2_family()[rec["member"]]
        phi = rec["embedding"]
        if sorted(phi) != list(range(g.n)) or any(not g.has_edge(phi[a], phi[b]) for a, b in member.edges()):
            out.append("recorded embedding is not a spanning subgraph map")
    if "witness" in rec:
        w = rec["witness"]
        if w["kind"] == "minor":
            bad = _check_model(g, w["model"], w["target"])
            if bad:
                out.append(bad)
        elif w["kind"] == "coloring":
            if not is_proper_coloring(g, w["coloring"], 8):
                out.append("recorded colouring is not proper")
    return out


def check_canonical(g6: str) -> bool:
    """Whether a report key is already in canonical form."""
    return canonical_form(graph6.decode(g6)).decode("ascii") == g6
