import json
from pathlib import Path
from typing import Iterable, List

import pandas as pd

from .algorithm import CohomologyEngine, CohomologyVector
from .fan import FanDiagnostics
from .oracle import OracleReport
from .simplicial import members


def cohomology_record(vec: CohomologyVector) -> dict:
    return {
        "divisor": list(vec.divisor),
        "class": {"free": list(vec.divisor_class.free), "torsion": list(vec.divisor_class.torsion)},
        "h": list(vec.dims),
        "breakdown": [
            {
                "I": members(c.support),
                "degree": c.degree,
                "multiplicity": c.multiplicity,
                "homology_dim": c.homology_dim,
            }
            for c in vec.contributions
        ],
    }


def info_record(engine: CohomologyEngine, diag: FanDiagnostics) -> dict:
    table = engine.table
    return {
        "fan": engine.fan.name,
        "dim": engine.dim,
        "n_rays": engine.fan.n_rays,
        "diagnostics": {
            "is_simplicial": diag.is_simplicial,
            "spans": diag.spans,
            "ridge_counts_ok": diag.ridge_counts_ok,
            "messages": list(diag.messages),
        },
        "sr": engine.sr.as_lists(),
        "usr_size": len(table),
        "dual_filtered": [members(s) for s in table.dual_filtered()],
        "class_group": {
            "free_rank": engine.group.free_rank,
            "torsion": list(engine.group.torsion_invariants),
            "description": engine.group.describe(),
        },
        "supports": [
            {
                "I": members(e.support),
                "generators": list(e.generators),
                "lambda": e.complex.as_lists(),
                "homology": {str(k): v for k, v in sorted(e.homology.nonzero().items())},
                "dual_in_usr": e.dual_in_usr,
            }
            for e in table.entries.values()
        ],
    }


def report_record(report: OracleReport) -> dict:
    return {
        "fan": report.fan,
        "box": [list(r) for r in report.box.ranges],
        "ok": report.ok,
        "matches": report.matches,
        "classes_compared": report.classes_compared,
        "classes_skipped": report.classes_skipped,
        "mismatches": [
            {"stage": m.stage, "p": list(m.point), "i": m.degree, "algorithm": m.algorithm, "oracle": m.oracle}
            for m in report.mismatches
        ],
        "unbounded": [list(p) for p in report.unbounded],
    }


def table_frame(vectors: Iterable[CohomologyVector], n_rays: int, dim: int) -> pd.DataFrame:
    rows: List[dict] = []
    for vec in vectors:
        row = {f"a{k}": a for k, a in enumerate(vec.divisor)}
        row.update({f"h{i}": h for i, h in enumerate(vec.dims)})
        rows.append(row)
    columns = [f"a{k}" for k in range(n_rays)] + [f"h{i}" for i in range(dim + 1)]
    return pd.DataFrame(rows, columns=columns)


def format_info(record: dict) -> str:
    diag = record["diagnostics"]
    lines = [
        f"fan {record['fan']}: d={record['dim']} rays={record['n_rays']}",
        f"simplicial={diag['is_simplicial']} spans={diag['spans']} ridges_ok={diag['ridge_counts_ok']}",
    ]
    lines += [f"  ! {m}" for m in diag["messages"]]
    lines.append(f"Cl = {record['class_group']['description']}")
    lines.append(f"SR = {record['sr']}")
    lines.append(f"|U_SR| = {record['usr_size']}  dual-filtered = {record['dual_filtered']}")
    for s in record["supports"]:
        mark = "*" if s["dual_in_usr"] else " "
        lines.append(f" {mark} I={s['I']} Lambda={s['lambda']} H~={s['homology'] or '{}'}")
    return "\n".join(lines)


def format_cohomology(record: dict, explain: bool = False) -> str:
    lines = [f"h = {record['h']}"]
    if explain:
        lines.append(f"divisor {record['divisor']} class free={record['class']['free']} torsion={record['class']['torsion']}")
        for b in record["breakdown"]:
            lines.append(f"  i={b['degree']} I={b['I']} multiplicity={b['multiplicity']} dim={b['homology_dim']}")
        if "anchor" in record:
            lines.append(f"anchor {record['anchor']}, divisor - anchor = div(chi^m) with m = {record['character']}")
    return "\n".join(lines)


def format_report(record: dict) -> str:
    lines = [
        f"verify {record['fan']} box={record['box']}: {'OK' if record['ok'] else 'MISMATCH'}",
        f"matches={record['matches']} classes={record['classes_compared']} skipped={record['classes_skipped']}",
    ]
    for m in record["mismatches"][:20]:
        lines.append(f"  {m['stage']} p={m['p']} i={m['i']} algorithm={m['algorithm']} oracle={m['oracle']}")
    if len(record["mismatches"]) > 20:
        lines.append(f"  ... {len(record['mismatches']) - 20} more")
    if record["unbounded"]:
        lines.append(f"  unbounded classes (fan not complete?): {record['unbounded'][:5]}")
    return "\n".join(lines)


def dumps(data, indent: int = 2) -> str:
    return json.dumps(data, indent=indent, sort_keys=True)


def write_json(path: Path, data: dict):
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(data, f, indent=2, sort_keys=True)
