"""Interchange documents: frames, models, filtrations and verdicts as
plain JSON objects.

Canonical output sorts every array and object key lexicographically, so
serialize-then-deserialize is the identity on canonical documents.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Iterable

from .decide import Refuted, TheoremWithinBound, Unknown, Verdict
from .filtration import FiltrationResult
from .formula import Formula
from .kripke import INEQUALITY, Frame, Model


def _pairs(rel: Iterable[tuple[str, str]]) -> list[list[str]]:
    return sorted([x, y] for x, y in rel)


def frame_to_doc(fr: Frame) -> dict[str, Any]:
    doc: dict[str, Any] = {"points": sorted(fr.points), "R": _pairs(fr.R)}
    if fr.D == INEQUALITY:
        doc["D"] = "inequality"
    elif fr.D is not None:
        doc["D"] = _pairs(fr.D)
    return doc


def frame_from_doc(doc: dict[str, Any]) -> Frame:
    if not isinstance(doc, dict) or "points" not in doc:
        raise ValueError("frame document needs a 'points' array")
    points = tuple(doc["points"])
    r = [(x, y) for x, y in doc.get("R", [])]
    d = doc.get("D")
    if d is not None and d != "inequality":
        d = [(x, y) for x, y in d]
    elif d == "inequality":
        d = INEQUALITY
    return Frame(points, r, d)


def valuation_to_doc(valuation: dict[int, frozenset[str]]) -> dict[str, list[str]]:
    return {f"p{v}": sorted(pts) for v, pts in valuation.items()}


def valuation_from_doc(doc: dict[str, Any]) -> dict[int, frozenset[str]]:
    out = {}
    for key, pts in doc.items():
        if not key.startswith("p") or not key[1:].isdigit():
            raise ValueError(f"bad valuation key {key!r}, expected p<digits>")
        out[int(key[1:])] = frozenset(pts)
    return out


def model_to_doc(m: Model) -> dict[str, Any]:
    doc = frame_to_doc(m.frame)
    doc["valuation"] = valuation_to_doc(m.valuation)
    return doc


def model_from_doc(doc: dict[str, Any]) -> Model:
    frame = frame_from_doc(doc)
    return Model(frame, valuation_from_doc(doc.get("valuation", {})))


def filtration_to_doc(res: FiltrationResult) -> dict[str, Any]:
    doc = model_to_doc(res.quotient_model)
    doc["classes"] = dict(sorted(res.class_map.items()))
    return doc


def filtration_from_doc(
    doc: dict[str, Any],
    gamma: Iterable[Formula],
    psi: Iterable[Formula] | None = None,
) -> FiltrationResult:
    """The document stores only the quotient model and the class map; the
    formula sets are supplied by the caller."""
    gamma = frozenset(gamma)
    psi = gamma if psi is None else frozenset(psi)
    if "classes" not in doc:
        raise ValueError("filtration document needs a 'classes' map")
    return FiltrationResult(
        model_from_doc(doc), dict(doc["classes"]), gamma, psi
    )


def verdict_to_doc(v: Verdict) -> dict[str, Any]:
    if isinstance(v, Refuted):
        return {
            "verdict": "refuted",
            "searched_to": v.size,
            "exhaustive": False,
            "frame": frame_to_doc(v.frame),
            "valuation": valuation_to_doc(v.valuation),
            "point": v.point,
        }
    if isinstance(v, TheoremWithinBound):
        return {
            "verdict": "theorem-within-bound",
            "searched_to": v.searched_to,
            "exhaustive": v.exhaustive,
        }
    return {
        "verdict": "unknown",
        "searched_to": v.searched_to,
        "exhaustive": False,
        "reason": v.reason,
    }


def verdict_from_doc(doc: dict[str, Any]) -> Verdict:
    kind = doc.get("verdict")
    if kind == "refuted":
        frame = frame_from_doc(doc["frame"])
        return Refuted(
            frame,
            valuation_from_doc(doc["valuation"]),
            doc["point"],
            doc["searched_to"],
        )
    if kind == "theorem-within-bound":
        return TheoremWithinBound(doc["searched_to"], doc["exhaustive"])
    if kind == "unknown":
        return Unknown(doc["searched_to"], doc.get("reason", ""))
    raise ValueError(f"bad verdict kind {kind!r}")


def dumps(doc: Any, canonical: bool = False) -> str:
    if canonical:
        return json.dumps(doc, sort_keys=True, separators=(",", ":"))
    return json.dumps(doc, sort_keys=True, indent=2)


def load_file(path: str | Path) -> Any:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)
