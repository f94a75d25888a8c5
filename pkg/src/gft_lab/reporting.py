"""Deterministic JSON and CSV serialization.

Floats are written with 17 significant digits, object keys are sorted and
non-finite values become null, so equal inputs give byte-identical output.
"""

from __future__ import annotations

import csv
import io
import json
import math
from importlib import resources

import numpy as np

from gft_lab.verifier import SearchReport, toeplitz_reference

SCHEMA_NAME = "report.schema.json"


def fmt_float(x: float) -> str:
    return format(float(x), ".17g")


def _plain(obj):
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return [_plain(v) for v in obj.tolist()]
    return obj


def to_json(obj, indent: int = 2) -> str:
    def enc(o, level):
        o = _plain(o)
        pad = " " * (indent * (level + 1))
        end = " " * (indent * level)
        if o is None or isinstance(o, bool):
            return json.dumps(o)
        if isinstance(o, int):
            return str(o)
        if isinstance(o, float):
            return fmt_float(o) if math.isfinite(o) else "null"
        if isinstance(o, str):
            return json.dumps(o, ensure_ascii=False)
        if isinstance(o, dict):
            if not o:
                return "{}"
            items = [f"{pad}{json.dumps(str(k))}: {enc(o[k], level + 1)}" for k in sorted(o, key=str)]
            return "{\n" + ",\n".join(items) + "\n" + end + "}"
        if isinstance(o, (list, tuple)):
            if not o:
                return "[]"
            return "[\n" + ",\n".join(pad + enc(v, level + 1) for v in o) + "\n" + end + "]"
        raise TypeError(f"cannot serialize {type(o).__name__}")

    return enc(obj, 0) + "\n"


def to_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([fmt_float(v) if isinstance(v, (float, np.floating)) else _plain(v) for v in r])
    return buf.getvalue()


def load_schema() -> dict:
    text = resources.files("gft_lab.schemas").joinpath(SCHEMA_NAME).read_text(encoding="utf-8")
    return json.loads(text)


def report_record(rep: SearchReport) -> dict:
    claim = rep.claim
    rec = {
        "claim": claim.name,
        "class": claim.tag_kind.value,
        "alpha": rep.alpha,
        "formula": claim.formula,
        "sharp": claim.sharp,
        "claimed": rep.claimed,
        "estimated_sup": rep.estimated_sup,
        "witness": rep.witness_value,
        "slack": rep.slack,
        "budget": rep.budget,
        "evaluations": rep.evaluations,
        "seed": rep.seed,
        "argmax": {"angles": rep.argmax.angles, "weights": rep.argmax.weights},
        "no_counterexample": rep.no_counterexample,
        "sharpness_ok": rep.sharp_ok,
        "ok": rep.ok,
    }
    if not claim.sharp:
        rec["reference_value"] = toeplitz_reference(claim, rep.alpha)
    return rec


REPORT_COLUMNS = ("claim", "class", "alpha", "formula", "claimed", "estimated_sup", "witness",
                  "slack", "budget", "evaluations", "seed", "ok")


def report_rows(records):
    return [tuple("" if r[c] is None else r[c] for c in REPORT_COLUMNS) for r in records]
