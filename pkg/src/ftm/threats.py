"""Deterministic threat enumeration over channel hops and carrier nodes."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from ftm.model import CarrierKind, ChannelKind, Locality, SystemModel
from ftm.validator import Violation, validate_model


class SecurityProperty(str, Enum):
    CONFIDENTIALITY = "confidentiality"
    INTEGRITY = "integrity"
    AVAILABILITY = "availability"


class ThreatAction(str, Enum):
    INTERCEPTION = "interception"
    DISTORTION = "distortion"
    BLOCKING = "blocking"
    UNAUTHORIZED_ACCESS = "unauthorized_access"
    MODIFICATION = "modification"
    DESTRUCTION = "destruction"

    @property
    def security_property(self) -> SecurityProperty:
        return _PROPERTY[self]


_PROPERTY = {
    ThreatAction.INTERCEPTION: SecurityProperty.CONFIDENTIALITY,
    ThreatAction.DISTORTION: SecurityProperty.INTEGRITY,
    ThreatAction.BLOCKING: SecurityProperty.AVAILABILITY,
    ThreatAction.UNAUTHORIZED_ACCESS: SecurityProperty.CONFIDENTIALITY,
    ThreatAction.MODIFICATION: SecurityProperty.INTEGRITY,
    ThreatAction.DESTRUCTION: SecurityProperty.AVAILABILITY,
}

HOP_ACTIONS = (ThreatAction.INTERCEPTION, ThreatAction.DISTORTION, ThreatAction.BLOCKING)
NODE_ACTIONS = (ThreatAction.UNAUTHORIZED_ACCESS, ThreatAction.MODIFICATION, ThreatAction.DESTRUCTION)


class ValidationRequired(Exception):
    """The model must validate cleanly before threats can be enumerated."""

    def __init__(self, violations: list[Violation]):
        self.violations = list(violations)
        super().__init__(f"model has {len(self.violations)} violation(s)")


@dataclass(frozen=True)
class Threat:
    id: str
    action: ThreatAction
    flow: Optional[str] = None
    hop: Optional[int] = None
    node: Optional[str] = None
    # context carried for downstream filtering; does not affect the action set
    endpoints: Optional[tuple[str, str]] = None
    channel: Optional[ChannelKind] = None
    locality: Optional[Locality] = None
    kind: Optional[CarrierKind] = None

    @property
    def security_property(self) -> SecurityProperty:
        return self.action.security_property

    @property
    def target(self) -> tuple:
        if self.node is not None:
            return ("node", self.node)
        return ("hop", self.flow, self.hop)


@dataclass(frozen=True)
class ThreatList:
    model: str
    threats: tuple[Threat, ...]

    def __len__(self) -> int:
        return len(self.threats)

    def __iter__(self):
        return iter(self.threats)


def threat_actions(target_kind: str) -> list[ThreatAction]:
    if target_kind == "hop":
        return list(HOP_ACTIONS)
    if target_kind == "node":
        return list(NODE_ACTIONS)
    raise ValueError(f"unknown target kind {target_kind!r}")


def hop_threat_id(flow_id: str, hop_index: int, action: ThreatAction) -> str:
    return f"T-{flow_id}-h{hop_index}-{action.value}"


def node_threat_id(node_id: str, action: ThreatAction) -> str:
    return f"T-node-{node_id}-{action.value}"


def enumerate_threats(model: SystemModel) -> ThreatList:
    violations = validate_model(model)
    if violations:
        raise ValidationRequired(violations)
    threats: list[Threat] = []
    for flow in model.flows:
        for i, hop in enumerate(flow.hops):
            for action in HOP_ACTIONS:
                threats.append(Threat(
                    hop_threat_id(flow.id, i, action), action,
                    flow=flow.id, hop=i, endpoints=hop.endpoints,
                    channel=hop.channel, locality=hop.locality,
                ))
    for node in model.nodes:
        for action in NODE_ACTIONS:
            threats.append(Threat(node_threat_id(node.id, action), action,
                                  node=node.id, kind=node.kind))
    return ThreatList(model.name, tuple(threats))
