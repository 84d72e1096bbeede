"""JSON serialisation of certificates and run reports."""

from __future__ import annotations

import hashlib
import json
from typing import Any

from .apex import ApexCertificate, NonApexVerdict
from .planarity import MinorModel, PlanarEmbedding

FORMAT_VERSION = 1


def embedding_json(emb: PlanarEmbedding, labels=None) -> dict:
    lab = (lambda v: v) if labels is None else (lambda v: labels[v])
    rot = {str(lab(v)): [lab(w) for w in ws] for v, ws in enumerate(emb.rotation)}
    return {"type": "embedding", "rotation": rot, "faces": len(emb.faces())}


def minor_json(model: MinorModel) -> dict:
    return {
        "type": "minor",
        "pattern": model.name,
        "branch_sets": [list(b) for b in model.branch_sets],
        "witnesses": [[list(pe), list(he)] for pe, he in model.witnesses],
    }


def apex_json(result: ApexCertificate | NonApexVerdict) -> dict:
    if isinstance(result, ApexCertificate):
        return {
            "apex": True,
            "l": result.l,
            "apex_set": list(result.apex_set),
            "embedding": embedding_json(result.embedding, result.keep),
        }
    records = []
    for r in result.records:
        rec: dict[str, Any] = {"set": list(r.apex_set)}
        if r.model is not None:
            rec["minor"] = minor_json(r.model)
        else:
            rec["reason"] = r.reason
        records.append(rec)
    return {
        "apex": False,
        "l": result.l,
        "set_size": result.size,
        "records": records,
        "pruned": [{"sets": len(b.sets), "first": list(b.sets[0]), "reason": b.reason}
                   for b in result.pruned],
    }


def digest(obj: Any) -> str:
    return hashlib.sha256(json.dumps(obj, sort_keys=True).encode()).hexdigest()[:16]


def finish(report: dict, wall_time: float | None, jobs: int | None) -> dict:
    out = {"format_version": FORMAT_VERSION}
    out.update(report)
    if wall_time is not None:
        out["run"] = {"wall_time": round(wall_time, 3), "jobs": jobs}
    return out


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
