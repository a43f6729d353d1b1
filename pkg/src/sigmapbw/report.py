"""Run-report assembly: item failure rules, JSON dumping and the text summary."""

from __future__ import annotations

import json


def item_failures(item: dict) -> list[str]:
    """Reasons an item should fail the run (inconclusive probes never do)."""
    out = []
    if "validation_error" in item:
        out.append(f"validation error: {item['validation_error']}")
    if "error" in item:
        out.append(f"error: {item['error']}")
    for key in ("consistency_issues", "zariski_issues"):
        out += [f"{key}: {x}" for x in item.get(key, [])]
    oracle = item.get("oracle")
    if oracle and oracle["mismatches"]:
        out.append(f"oracle mismatches: {len(oracle['mismatches'])}")
    it = item.get("idempotent_transparency")
    if it and it.get("issues"):
        out += [f"idempotent transparency: {x}" for x in it["issues"]]
    if item.get("spec_equals_max") is False:
        out.append("Spec != Max for a finite ring")
    return out


def assemble(command: str, items: list[dict], audit: dict | None, config: dict) -> dict:
    failures = [f"{it['name']}: {f}" for it in items for f in item_failures(it)]
    n_viol = 0
    if audit is not None:
        n_viol = sum(len(t["violations"]) for t in audit["theorems"])
    status = "ok" if not failures and n_viol == 0 else "violation"
    out = {"command": command, "config": config, "items": items, "status": status,
           "failures": failures}
    if audit is not None:
        out["audit"] = audit
    return out


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _fmt_value(v) -> str:
    if v is True:
        return "yes"
    if v is False:
        return "no"
    return str(v)


def text_summary(report: dict) -> str:
    lines = [f"sigmapbw {report['command']}: status {report['status']}"]
    for it in report["items"]:
        head = f"[{it['kind']}] {it['name']}"
        if "validation_error" in it or "budget_error" in it or "error" in it:
            msg = it.get("validation_error") or it.get("budget_error") or it.get("error")
            lines.append(f"{head}: {msg}")
            continue
        verdicts = it.get("verdicts", {})
        shown = ", ".join(f"{k}={_fmt_value(v.get('value'))}" for k, v in verdicts.items())
        lines.append(f"{head}: {shown}")
    audit = report.get("audit")
    if audit:
        for t in audit["theorems"]:
            tag = "VACUOUS" if t["vacuous"] else ("ok" if not t["violations"] else "VIOLATED")
            lines.append(f"[audit] {t['id']} {tag} (tested {t['tested']}): {t['statement']}")
    for f in report["failures"]:
        lines.append(f"FAIL {f}")
    return "\n".join(lines) + "\n"
