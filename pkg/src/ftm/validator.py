"""Structural and channel-compatibility checks for models and templates."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable, Optional

from ftm.model import CarrierKind, ChannelKind, Hop, Locality, SystemModel, kind_pair
from ftm.typology import Template

H = CarrierKind.HUMAN
P = CarrierKind.PAPER
S = CarrierKind.STORAGE
PR = CarrierKind.PROCESS

# Closed world: every entry is exhibited by at least one built-in template.
COMPATIBILITY = frozenset({
    ((P, H), ChannelKind.VISUAL, Locality.LOCAL),
    ((H, PR), ChannelKind.VISUAL, Locality.LOCAL),
    ((H, H), ChannelKind.ACOUSTIC, Locality.LOCAL),
    ((H, PR), ChannelKind.ACOUSTIC, Locality.LOCAL),
    ((H, PR), ChannelKind.ELECTROMAGNETIC, Locality.LOCAL),
    ((S, PR), ChannelKind.VIRTUAL, Locality.LOCAL),
    ((PR, PR), ChannelKind.VIRTUAL, Locality.LOCAL),
    ((PR, PR), ChannelKind.ELECTROMAGNETIC, Locality.REMOTE),
    ((PR, PR), ChannelKind.VIRTUAL, Locality.REMOTE),
})


class ViolationCode(str, Enum):
    CHANNEL_INCOMPATIBLE = "CHANNEL_INCOMPATIBLE"
    REMOTE_ENDPOINTS = "REMOTE_ENDPOINTS"
    UNKNOWN_NODE = "UNKNOWN_NODE"
    DUPLICATE_ID = "DUPLICATE_ID"
    EMPTY_FLOW = "EMPTY_FLOW"


@dataclass(frozen=True)
class Violation:
    code: ViolationCode
    element: str  # flow, node or template id
    hop: Optional[int]
    message: str

    @property
    def location(self) -> tuple[str, Optional[int]]:
        return (self.element, self.hop)


def channel_compatible(a: CarrierKind, b: CarrierKind, ch: ChannelKind, loc: Locality) -> bool:
    return (kind_pair(CarrierKind(a), CarrierKind(b)), ChannelKind(ch), Locality(loc)) in COMPATIBILITY


def _check_hops(
    owner: str,
    hops: Iterable[Hop],
    resolve: Callable[[str], Optional[CarrierKind]],
    what: str,
) -> list[Violation]:
    out: list[Violation] = []
    for i, hop in enumerate(hops):
        missing = [end for end in dict.fromkeys(hop.endpoints) if resolve(end) is None]
        for end in missing:
            out.append(Violation(ViolationCode.UNKNOWN_NODE, owner, i,
                                 f"hop {i} references undeclared {what} {end!r}"))
        if missing:
            continue
        a = resolve(hop.a)
        b = resolve(hop.b)
        if hop.locality is Locality.REMOTE and not (a is PR and b is PR):
            out.append(Violation(
                ViolationCode.REMOTE_ENDPOINTS, owner, i,
                f"remote hop {hop.a} -- {hop.b} joins {a.value} and {b.value}; "
                "remote channels connect processes only",
            ))
        elif not channel_compatible(a, b, hop.channel, hop.locality):
            loc = "remote " if hop.locality is Locality.REMOTE else ""
            out.append(Violation(
                ViolationCode.CHANNEL_INCOMPATIBLE, owner, i,
                f"no {loc}{hop.channel.value} channel between {a.value} and {b.value}",
            ))
    return out


def validate_model(model: SystemModel) -> list[Violation]:
    """All violations in model text order; an empty list means valid."""
    out: list[Violation] = []
    seen: set[str] = set()
    for node in model.nodes:
        if node.id in seen:
            out.append(Violation(ViolationCode.DUPLICATE_ID, node.id, None,
                                 f"node id {node.id!r} declared more than once"))
        seen.add(node.id)

    def kind_of(node_id: str) -> Optional[CarrierKind]:
        node = model.node(node_id)
        return None if node is None else node.kind

    seen_flows: set[str] = set()
    for flow in model.flows:
        if flow.id in seen_flows:
            out.append(Violation(ViolationCode.DUPLICATE_ID, flow.id, None,
                                 f"flow id {flow.id!r} declared more than once"))
        seen_flows.add(flow.id)
        if not flow.hops:
            out.append(Violation(ViolationCode.EMPTY_FLOW, flow.id, None,
                                 f"flow {flow.id!r} has no hops"))
        out.extend(_check_hops(flow.id, flow.hops, kind_of, "node"))
    return out


def validate_template(t: Template) -> list[Violation]:
    out: list[Violation] = []
    kinds: dict[str, CarrierKind] = {}
    for role, kind in t.roles:
        if role in kinds:
            out.append(Violation(ViolationCode.DUPLICATE_ID, role, None,
                                 f"role {role!r} declared more than once in {t.id}"))
        kinds.setdefault(role, kind)
    if not t.hops:
        out.append(Violation(ViolationCode.EMPTY_FLOW, t.id, None, f"template {t.id!r} has no hops"))
    out.extend(_check_hops(t.id, t.hops, kinds.get, "role"))
    return out


@dataclass(frozen=True)
class ValidationReport:
    model: str
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def validation_report(model: SystemModel) -> ValidationReport:
    return ValidationReport(model.name, tuple(validate_model(model)))
