"""Threat-model-as-code: carriers, channels, flow templates and threat lists."""

from ftm.dsl import ParseError, parse_model, serialize_model
from ftm.model import (
    CarrierKind,
    ChannelKind,
    Flow,
    Hop,
    Locality,
    ModelError,
    Node,
    ProcessClass,
    SystemModel,
    hop_signature_entry,
    node_lookup,
)
from ftm.report import render_report
from ftm.threats import (
    SecurityProperty,
    Threat,
    ThreatAction,
    ThreatList,
    ValidationRequired,
    enumerate_threats,
    threat_actions,
)
from ftm.typology import (
    Template,
    TemplateMatch,
    builtin_typology,
    classify_flow,
    classify_model,
    instantiate_template,
    match_template,
    template_signature,
)
from ftm.validator import (
    Violation,
    ViolationCode,
    channel_compatible,
    validate_model,
    validate_template,
)

__version__ = "0.1.0"
