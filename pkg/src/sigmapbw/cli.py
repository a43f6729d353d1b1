"""Command-line batch driver.

    sigmapbw {classify,audit,pbw,topo,all} [CORPUS] [--out PATH] [--jobs N] ...

Without CORPUS the bundled default corpus is used.  The JSON report is
written with sorted keys and contains no timings, so repeated runs are
byte-identical whatever the worker count.  Exit status: 0 when nothing failed,
1 on audit violations or failed items, 2 on an unreadable corpus.
"""

from __future__ import annotations

import argparse
import itertools
import sys
from concurrent.futures import ProcessPoolExecutor

from .audit import Fixture, audit_theorems, consistency_issues
from .corpus import Corpus, CorpusError, load_corpus
from .endo import MapFamily
from .finring import RingError, RingSizeError
from .pbw import (DegreeOverflow, ExtensionError, LiftError, ProbeBudget, idempotent_transparency,
                  lift_maps, monomial_action_oracle, probe_all)
from .pbw.lift import LiftValidationError
from .ringprops import classify
from .report import assemble, dumps, text_summary
from .spectop import TopologyError, ring_spectrum_report, space_report

COMMANDS = ("classify", "audit", "pbw", "topo", "all")


def _settings(args, cfg: dict) -> dict:
    def pick(flag, key, default):
        v = getattr(args, flag, None)
        return v if v is not None else cfg.get(key, default)
    return {
        "seed": pick("seed", "seed", 0),
        "ring_cap": pick("ring_cap", "ring_cap", 512),
        "probe_degree": pick("probe_degree", "probe_degree", 2),
        "probe_support": pick("probe_support", "probe_support", 2),
        "probe_budget": pick("probe_budget", "probe_budget", 10 ** 7),
        "exhaustive_limit": cfg.get("exhaustive_limit", 5000),
        "sample_count": cfg.get("sample_count", 600),
    }


def _budget(s: dict) -> ProbeBudget:
    return ProbeBudget(max_degree=s["probe_degree"], max_support=s["probe_support"],
                       exhaustive_limit=s["exhaustive_limit"], sample_count=s["sample_count"],
                       max_evaluations=s["probe_budget"], seed=s["seed"])


# -- tasks ------------------------------------------------------------------------------


def _fixtures(c: Corpus) -> list[Fixture]:
    out = []
    for k in range(len(c.doc.get("families", []))):
        name, R, fam = c.family(k)
        out.append(Fixture(name, R, fam))
    for name in c.family_less_rings():
        out.append(Fixture(name, c.ring(name), None))
    return out


def _classify_item(c: Corpus, which) -> dict:
    if which[0] == "family":
        name, R, fam = c.family(which[1])
    else:
        name, R, fam = which[1], c.ring(which[1]), None
    fx = Fixture(name, R, fam)
    rep = classify(R, fam, c.ring_cap)
    fx._report = rep
    return {"name": name, "kind": "classification", "ring": R.name, "order": R.q,
            "verdicts": {k: v.to_json(R) for k, v in rep.items()},
            "consistency_issues": consistency_issues(fx)}


def _oracle_check(ext) -> dict:
    top = min(ext.degree_cap, 4)
    checked, bad = 0, []
    for alpha in itertools.product(range(top + 1), repeat=ext.n):
        if sum(alpha) > top:
            continue
        X = ext.monomial(alpha)
        for r in range(ext.ring.q):
            checked += 1
            lhs = X * ext.const(r)
            rhs = monomial_action_oracle(ext, alpha, r)
            if lhs != rhs and len(bad) < 5:
                bad.append({"alpha": list(alpha), "r": ext.ring.labels[r],
                            "rewrite": lhs.to_json(), "oracle": rhs.to_json()})
    return {"checked": checked, "max_degree": top, "mismatches": bad}


def _pbw_item(c: Corpus, k: int, s: dict) -> dict:
    ext = c.extension(k)
    item = {"name": ext.name, "kind": "extension", "ring": ext.ring.name, "n": ext.n,
            "degree_cap": ext.degree_cap, "flags": ext.flags, "oracle": _oracle_check(ext)}
    try:
        lift_maps(ext)
        item["lift"] = {"ok": True}
    except LiftError as e:
        item["lift"] = {"ok": False, "failure": str(e)}
    fam = MapFamily(ext.ring, ext.sigmas, ext.deltas if ext.delta_given else None)
    ssc = classify(ext.ring, fam, c.ring_cap)["sigma_semicommutative"].value
    budget = _budget(s)
    item["idempotent_transparency"] = (
        {"applicable": True, "issues": idempotent_transparency(ext, budget)} if ssc
        else {"applicable": False, "issues": []})
    item["verdicts"] = {p: v.to_json() for p, v in probe_all(ext, budget).items()}
    return item


def _topo_item(c: Corpus, which) -> dict:
    if which[0] == "ring":
        R = c.ring(which[1])
        rep = ring_spectrum_report(R, c.ring_cap)
        name, kind = f"Spec({which[1]})", "spectrum"
    else:
        T = c.space(which[1])
        rep = space_report(T)
        name, kind = T.name, "space"
    verdicts = dict(rep["properties"])
    verdicts.update(rep["pm"])
    verdicts["retract"] = rep["retract"]
    return {"name": name, "kind": kind, "verdicts": verdicts} | {
        k: v for k, v in rep.items() if k not in ("properties", "pm", "retract")}


def _audit(c: Corpus, s: dict) -> dict:
    return audit_theorems(_fixtures(c), seed=s["seed"]).to_json()


_BUDGET_ERRORS = (RingSizeError, DegreeOverflow)
_VALIDATION_ERRORS = (RingError, ExtensionError, TopologyError, LiftValidationError)


def run_task(doc: dict, s: dict, task: tuple) -> dict:
    """Worker entry: rebuild the corpus from its document and run one task."""
    c = Corpus(doc, s["ring_cap"])
    kind, which = task[0], task[1:]
    try:
        if kind == "classify":
            return _classify_item(c, which)
        if kind == "pbw":
            return _pbw_item(c, which[0], s)
        if kind == "topo":
            return _topo_item(c, which)
        if kind == "audit":
            return _audit(c, s)
    except _BUDGET_ERRORS as e:
        return {"name": _task_name(doc, task), "kind": kind, "budget_error": str(e)}
    except _VALIDATION_ERRORS as e:
        return {"name": _task_name(doc, task), "kind": kind, "validation_error": str(e)}
    raise ValueError(f"unknown task {task}")


def _task_name(doc: dict, task: tuple) -> str:
    kind, *rest = task
    if kind == "classify":
        return doc["families"][rest[1]]["name"] if rest[0] == "family" else rest[1]
    if kind == "pbw":
        return doc["extensions"][rest[0]]["name"]
    if kind == "topo":
        return f"Spec({rest[1]})" if rest[0] == "ring" else doc["spaces"][rest[1]]["name"]
    return kind


def plan(c: Corpus, command: str) -> list[tuple]:
    doc = c.doc
    tasks: list[tuple] = []
    if command in ("classify", "all"):
        tasks += [("classify", "family", k) for k in range(len(doc.get("families", [])))]
        tasks += [("classify", "ring", n) for n in c.family_less_rings()]
    if command in ("pbw", "all"):
        tasks += [("pbw", k) for k in range(len(doc.get("extensions", [])))]
    if command in ("topo", "all"):
        tasks += [("topo", "ring", r["name"]) for r in c.ring_specs()]
        tasks += [("topo", "space", k) for k in range(len(doc.get("spaces", [])))]
    if command in ("audit", "all"):
        tasks.append(("audit",))
    return tasks


def run(command: str, corpus_path=None, *, jobs: int = 1, **overrides) -> dict:
    """Run a command and return the report dict."""
    if command not in COMMANDS:
        raise ValueError(f"command must be one of {COMMANDS}")
    ns = argparse.Namespace(**overrides)
    pre = load_corpus(corpus_path)
    s = _settings(ns, pre.config)
    c = load_corpus(corpus_path, ring_cap=s["ring_cap"])
    tasks = plan(c, command)
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(run_task, itertools.repeat(c.doc), itertools.repeat(s), tasks))
    else:
        results = [run_task(c.doc, s, t) for t in tasks]
    audit = None
    items = []
    for t, r in zip(tasks, results):
        if t[0] == "audit":
            audit = r if "theorems" in r else None
            if audit is None:
                items.append(r)
        else:
            items.append(r)
    return assemble(command, items, audit, s)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sigmapbw",
                                description="Finite-ring predicates, theorem audits, skew PBW "
                                            "probes and finite spectra.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("corpus", nargs="?", default=None,
                   help="corpus JSON file (default: the bundled corpus)")
    p.add_argument("--out", metavar="PATH", help="write the JSON report here")
    p.add_argument("--seed", type=int)
    p.add_argument("--ring-cap", type=int, dest="ring_cap")
    p.add_argument("--probe-degree", type=int, dest="probe_degree")
    p.add_argument("--probe-support", type=int, dest="probe_support")
    p.add_argument("--probe-budget", type=int, dest="probe_budget",
                   help="maximum candidate evaluations per probe")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--quiet", action="store_true", help="suppress the text report")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    overrides = {k: getattr(args, k) for k in
                 ("seed", "ring_cap", "probe_degree", "probe_support", "probe_budget")}
    try:
        report = run(args.command, args.corpus, jobs=max(1, args.jobs), **overrides)
    except CorpusError as e:
        for msg in e.problems:
            print(f"corpus error: {msg}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(dumps(report))
    if not args.quiet:
        sys.stdout.write(text_summary(report))
    return 0 if report["status"] == "ok" else 1


if __name__ == "__main__":
    sys.exit(main())
