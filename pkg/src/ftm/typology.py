"""The ten built-in data-transfer templates and flow matching against them."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional

from ftm.model import (
    CarrierKind,
    ChannelKind,
    Flow,
    Hop,
    Locality,
    Node,
    ProcessClass,
    SystemModel,
    hop_signature_entry,
    kind_pair,
)

H = CarrierKind.HUMAN
P = CarrierKind.PAPER
S = CarrierKind.STORAGE
PR = CarrierKind.PROCESS

VIS = ChannelKind.VISUAL
AC = ChannelKind.ACOUSTIC
EM = ChannelKind.ELECTROMAGNETIC
VIRT = ChannelKind.VIRTUAL
REMOTE = Locality.REMOTE


@dataclass(frozen=True)
class Template:
    """An abstract flow over kind-typed roles.

    ``roles`` keeps declaration order; hops reference role ids as endpoints.
    """

    id: str
    process_class: ProcessClass
    figure: int
    roles: tuple[tuple[str, CarrierKind], ...]
    hops: tuple[Hop, ...]
    title: str = ""

    @property
    def role_kinds(self) -> dict[str, CarrierKind]:
        return dict(self.roles)

    @property
    def role_ids(self) -> list[str]:
        return [role for role, _ in self.roles]


@dataclass(frozen=True)
class TemplateMatch:
    template_id: str
    binding: tuple[tuple[str, str], ...]  # (role id, node id) in role order

    def as_dict(self) -> dict[str, str]:
        return dict(self.binding)


def _hops(*specs) -> tuple[Hop, ...]:
    return tuple(Hop(a, b, ch, loc) for a, b, ch, loc in specs)


def _terminal(person: str, proc: str) -> list:
    # screen, speakers, device hardware
    return [(person, proc, VIS, Locality.LOCAL), (person, proc, AC, Locality.LOCAL),
            (person, proc, EM, Locality.LOCAL)]


def _local(a: str, b: str, ch: ChannelKind) -> tuple:
    return (a, b, ch, Locality.LOCAL)


def _remote_link(a: str, b: str) -> list:
    return [(a, b, EM, REMOTE), (a, b, VIRT, REMOTE)]


@lru_cache(maxsize=None)
def _builtin() -> tuple[Template, ...]:
    return (
        Template(
            "create_paper", ProcessClass.CREATE, 1,
            (("H", H), ("P", P)),
            _hops(_local("H", "P", VIS)),
            "Creating a paper document",
        ),
        Template(
            "create_electronic", ProcessClass.CREATE, 2,
            (("H", H), ("Pr", PR), ("S", S)),
            _hops(*_terminal("H", "Pr"), _local("Pr", "S", VIRT)),
            "Creation of an electronic document",
        ),
        Template(
            "poll", ProcessClass.COLLECT, 3,
            (("H1", H), ("H2", H)),
            _hops(_local("H1", "H2", AC)),
            "Poll",
        ),
        Template(
            "collect_paper", ProcessClass.COLLECT, 4,
            (("H", H), ("P", P)),
            _hops(_local("H", "P", VIS)),
            "Collection of information from paper sources",
        ),
        Template(
            "collect_local", ProcessClass.COLLECT, 5,
            (("H", H), ("Pr", PR), ("S", S)),
            _hops(*_terminal("H", "Pr"), _local("Pr", "S", VIRT)),
            "Local collection of information",
        ),
        Template(
            "search_remote", ProcessClass.SEARCH, 6,
            (("H", H), ("Pr1", PR), ("S1", S), ("Pr2", PR), ("S2", S)),
            _hops(
                *_terminal("H", "Pr1"),
                _local("Pr1", "S1", VIRT),
                *_remote_link("Pr1", "Pr2"),
                _local("Pr2", "S2", VIRT),
            ),
            "Remote information search",
        ),
        Template(
            "internet_messaging", ProcessClass.DISTRIBUTE, 7,
            (("H1", H), ("Pr1", PR), ("S1", S), ("Pr2", PR), ("S2", S), ("H2", H)),
            _hops(
                *_terminal("H1", "Pr1"),
                _local("Pr1", "S1", VIRT),
                *_remote_link("Pr1", "Pr2"),
                _local("Pr2", "S2", VIRT),
                *[(b, a, ch, loc) for a, b, ch, loc in _terminal("H2", "Pr2")],
            ),
            "Communication via the Internet",
        ),
        Template(
            "letter", ProcessClass.DISTRIBUTE, 8,
            (("H1", H), ("P", P), ("H2", H)),
            _hops(_local("H1", "P", VIS), _local("H2", "P", VIS)),
            "Writing/reading a letter",
        ),
        Template(
            "negotiation", ProcessClass.DISTRIBUTE, 9,
            (("H1", H), ("H2", H)),
            _hops(_local("H1", "H2", AC)),
            "Negotiations",
        ),
        Template(
            "phone_call", ProcessClass.DISTRIBUTE, 10,
            (("H1", H), ("Pr1", PR), ("Pr2", PR), ("H2", H)),
            _hops(
                _local("H1", "Pr1", AC),
                _local("H1", "Pr1", EM),
                _local("Pr1", "Pr1", VIRT),  # phone firmware
                *_remote_link("Pr1", "Pr2"),
                _local("Pr2", "Pr2", VIRT),
                _local("Pr2", "H2", AC),
                _local("Pr2", "H2", EM),
            ),
            "Talking on the phone",
        ),
    )


def builtin_typology() -> list[Template]:
    return list(_builtin())


def get_template(template_id: str, typology: Optional[Iterable[Template]] = None) -> Template:
    for t in builtin_typology() if typology is None else typology:
        if t.id == template_id:
            return t
    raise KeyError(template_id)


def template_signature(t: Template) -> Counter:
    """Multiset of (kind pair, channel, locality), one entry per template hop."""
    kinds = t.role_kinds
    return Counter(
        (kind_pair(kinds[h.a], kinds[h.b]), h.channel, h.locality) for h in t.hops
    )


def flow_signature(flow: Flow, model: SystemModel) -> Counter:
    return Counter(hop_signature_entry(h, model) for h in flow.hops)


def _resolve_touched(flow: Flow, model: SystemModel) -> Optional[list[Node]]:
    nodes = []
    for node_id in flow.touched():
        node = model.node(node_id)
        if node is None:
            return None
        nodes.append(node)
    return nodes


def match_template(flow: Flow, model: SystemModel, t: Template) -> list[TemplateMatch]:
    """Every kind-preserving role/node bijection that maps the template's hop
    multiset onto the flow's, sorted by bound node ids in role order."""
    touched = _resolve_touched(flow, model)
    if touched is None or len(touched) != len(t.roles) or len(flow.hops) != len(t.hops):
        return []
    if flow_signature(flow, model) != template_signature(t):
        return []

    target = Counter(h.key() for h in flow.hops)
    roles = t.role_ids
    role_kind = t.role_kinds
    # template hops whose endpoints are all bound once role i is assigned
    closing: list[list[Hop]] = [[] for _ in roles]
    position = {r: i for i, r in enumerate(roles)}
    for hop in t.hops:
        closing[max(position[hop.a], position[hop.b])].append(hop)

    candidates = {
        role: sorted(n.id for n in touched if n.kind is role_kind[role]) for role in roles
    }
    binding: dict[str, str] = {}
    used: set[str] = set()
    found: list[tuple[str, ...]] = []
    partial: Counter = Counter()

    def extend(i: int) -> None:
        if i == len(roles):
            if partial == target:
                found.append(tuple(binding[r] for r in roles))
            return
        role = roles[i]
        for node_id in candidates[role]:
            if node_id in used:
                continue
            binding[role] = node_id
            used.add(node_id)
            added = [Hop(binding[h.a], binding[h.b], h.channel, h.locality).key()
                     for h in closing[i]]
            partial.update(added)
            if all(partial[k] <= target[k] for k in added):
                extend(i + 1)
            partial.subtract(added)
            used.discard(node_id)
            del binding[role]

    extend(0)
    found.sort()
    return [TemplateMatch(t.id, tuple(zip(roles, ids))) for ids in found]


def classify_flow(flow: Flow, model: SystemModel, typology: Optional[Iterable[Template]] = None) -> list[str]:
    templates = builtin_typology() if typology is None else typology
    return [t.id for t in templates if match_template(flow, model, t)]


def instantiate_template(t: Template, id_prefix: str = "") -> tuple[list[Node], Flow]:
    nodes = [Node(id_prefix + role, kind) for role, kind in t.roles]
    hops = tuple(
        Hop(id_prefix + h.a, id_prefix + h.b, h.channel, h.locality) for h in t.hops
    )
    return nodes, Flow(id_prefix + t.id, t.process_class, hops)


def template_model(t: Template, id_prefix: str = "") -> SystemModel:
    """Convenience: wrap one template instance in a single-flow model."""
    nodes, flow = instantiate_template(t, id_prefix)
    return SystemModel(t.id, tuple(nodes), (flow,))


def templates_by_class(process_class: ProcessClass, typology: Optional[Iterable[Template]] = None) -> list[Template]:
    templates = builtin_typology() if typology is None else typology
    return [t for t in templates if t.process_class is ProcessClass(process_class)]



@dataclass(frozen=True)
class FlowClassification:
    flow: str
    process_class: ProcessClass
    matches: tuple[str, ...]


@dataclass(frozen=True)
class ClassificationReport:
    model: str
    flows: tuple[FlowClassification, ...]

    @property
    def unmatched(self) -> list[str]:
        return [f.flow for f in self.flows if not f.matches]


def classify_model(
    model: SystemModel,
    typology: Optional[Iterable[Template]] = None,
    process_class: Optional[ProcessClass] = None,
) -> ClassificationReport:
    """Classify every flow in declaration order; optionally restrict the
    candidate templates to one process class."""
    templates = builtin_typology() if typology is None else list(typology)
    if process_class is not None:
        templates = templates_by_class(process_class, templates)
    return ClassificationReport(model.name, tuple(
        FlowClassification(flow.id, flow.process_class, tuple(classify_flow(flow, model, templates)))
        for flow in model.flows
    ))
