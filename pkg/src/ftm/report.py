"""JSON and markdown rendering of threat, validation and classification results.

Rendering never reorders what the engine produced. JSON keys are emitted in a
fixed insertion order (``model`` first) with two-space indentation and a single
trailing newline, so output is byte-stable across runs.
"""

from __future__ import annotations

import json
from typing import Any, Iterable, Union

from ftm.model import Locality
from ftm.threats import Threat, ThreatList
from ftm.typology import ClassificationReport, Template
from ftm.validator import ValidationReport, Violation

FORMATS = ("json", "md")

Payload = Union[ThreatList, ValidationReport, ClassificationReport, list]


def _threat_obj(t: Threat) -> dict[str, Any]:
    obj: dict[str, Any] = {"id": t.id}
    if t.node is not None:
        obj["target"] = {"node": t.node}
        obj["kind"] = t.kind.value
    else:
        obj["target"] = {"flow": t.flow, "hop": t.hop}
        obj["endpoints"] = list(t.endpoints)
        obj["channel"] = t.channel.value
        obj["locality"] = t.locality.value
    obj["action"] = t.action.value
    obj["property"] = t.security_property.value
    return obj


def _violation_obj(v: Violation) -> dict[str, Any]:
    return {"code": v.code.value, "element": v.element, "hop": v.hop, "message": v.message}


def _template_obj(t: Template) -> dict[str, Any]:
    return {
        "id": t.id,
        "figure": t.figure,
        "class": t.process_class.value,
        "title": t.title,
        "roles": [{"role": r, "kind": k.value} for r, k in t.roles],
        "hops": [
            {"a": h.a, "b": h.b, "channel": h.channel.value, "locality": h.locality.value}
            for h in t.hops
        ],
    }


def to_json_obj(payload: Payload) -> dict[str, Any]:
    if isinstance(payload, ThreatList):
        return {"model": payload.model, "count": len(payload.threats),
                "threats": [_threat_obj(t) for t in payload.threats]}
    if isinstance(payload, ValidationReport):
        return {"model": payload.model, "count": len(payload.violations),
                "violations": [_violation_obj(v) for v in payload.violations]}
    if isinstance(payload, ClassificationReport):
        return {"model": payload.model, "flows": [
            {"flow": f.flow, "class": f.process_class.value, "matches": list(f.matches)}
            for f in payload.flows
        ]}
    items = list(payload)
    if items and all(isinstance(x, Template) for x in items):
        return {"templates": [_template_obj(t) for t in items]}
    if all(isinstance(x, Violation) for x in items):
        return {"model": None, "count": len(items), "violations": [_violation_obj(v) for v in items]}
    raise TypeError(f"cannot render {type(payload).__name__}")


def _cell(value: Any) -> str:
    text = "" if value is None else str(value)
    return text.replace("\\", "\\\\").replace("|", "\\|").replace("\n", " ")


def _table(header: Iterable[str], rows: Iterable[Iterable[Any]]) -> list[str]:
    header = list(header)
    lines = ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]
    lines.extend("| " + " | ".join(_cell(c) for c in row) + " |" for row in rows)
    return lines


def _md_threats(tl: ThreatList) -> list[str]:
    hop_threats = [t for t in tl.threats if t.node is None]
    node_threats = [t for t in tl.threats if t.node is not None]
    out = [f"# Threat report: {_cell(tl.model)}", "", f"{len(tl.threats)} threats.", ""]
    out += ["## Channel threats", ""]
    if hop_threats:
        out += _table(
            ["ID", "Flow", "Hop", "Endpoints", "Channel", "Action", "Property"],
            ([t.id, t.flow, t.hop, f"{t.endpoints[0]} -- {t.endpoints[1]}",
              ("remote " if t.locality is Locality.REMOTE else "") + t.channel.value,
              t.action.value, t.security_property.value] for t in hop_threats),
        )
    else:
        out.append("None.")
    out += ["", "## Carrier threats", ""]
    if node_threats:
        out += _table(
            ["ID", "Node", "Kind", "Action", "Property"],
            ([t.id, t.node, t.kind.value, t.action.value, t.security_property.value]
             for t in node_threats),
        )
    else:
        out.append("None.")
    return out


def _md_violations(model: Any, violations: list[Violation]) -> list[str]:
    title = "# Validation report" + (f": {_cell(model)}" if model is not None else "")
    n = len(violations)
    out = [title, ""]
    if not n:
        out.append("0 violations.")
        return out
    out += [f"{n} violation{'s' if n != 1 else ''}.", ""]
    out += _table(["Code", "Element", "Hop", "Message"],
                  ([v.code.value, v.element, v.hop, v.message] for v in violations))
    return out


def _md_classification(report: ClassificationReport) -> list[str]:
    out = [f"# Classification: {_cell(report.model)}", ""]
    if not report.flows:
        out.append("No flows.")
        return out
    out += _table(["Flow", "Class", "Matches"], (
        [f.flow, f.process_class.value, ", ".join(f.matches) if f.matches else "(none)"]
        for f in report.flows
    ))
    return out


def _md_templates(templates: list[Template]) -> list[str]:
    out = ["# Built-in typology", "", f"{len(templates)} templates.", ""]
    rows = []
    for t in templates:
        roles = ", ".join(f"{r}:{k.value}" for r, k in t.roles)
        hops = "; ".join(
            f"{h.a} -- {h.b} : {'remote ' if h.locality is Locality.REMOTE else ''}{h.channel.value}"
            for h in t.hops
        )
        rows.append([t.id, t.figure, t.process_class.value, t.title, roles, hops])
    out += _table(["ID", "Figure", "Class", "Title", "Roles", "Hops"], rows)
    return out


def render_report(payload: Payload, fmt: str = "md") -> str:
    if fmt == "json":
        return json.dumps(to_json_obj(payload), indent=2, ensure_ascii=False) + "\n"
    if fmt != "md":
        raise ValueError(f"unknown format {fmt!r}")
    if isinstance(payload, ThreatList):
        lines = _md_threats(payload)
    elif isinstance(payload, ValidationReport):
        lines = _md_violations(payload.model, list(payload.violations))
    elif isinstance(payload, ClassificationReport):
        lines = _md_classification(payload)
    else:
        items = list(payload)
        if items and all(isinstance(x, Template) for x in items):
            lines = _md_templates(items)
        elif all(isinstance(x, Violation) for x in items):
            lines = _md_violations(None, items)
        else:
            raise TypeError(f"cannot render {type(payload).__name__}")
    return "\n".join(lines) + "\n"
