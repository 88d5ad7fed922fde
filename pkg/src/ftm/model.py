"""Carrier/channel taxonomy and the in-memory system model."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

IDENT_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


class ModelError(ValueError):
    """Raised when a model element violates a construction invariant."""


class CarrierKind(str, Enum):
    PAPER = "paper"  # V1
    HUMAN = "human"  # V2
    STORAGE = "storage"  # V3
    PROCESS = "process"  # V4

    @property
    def rank(self) -> int:
        return _CARRIER_RANK[self]


_CARRIER_RANK = {kind: i for i, kind in enumerate(CarrierKind)}


class ChannelKind(str, Enum):
    VISUAL = "visual"  # e1
    ACOUSTIC = "acoustic"  # e2
    ELECTROMAGNETIC = "electromagnetic"  # e3
    VIRTUAL = "virtual"  # e4


class Locality(str, Enum):
    LOCAL = "local"
    REMOTE = "remote"  # e3', e4'


REMOTE_CHANNELS = frozenset({ChannelKind.ELECTROMAGNETIC, ChannelKind.VIRTUAL})


class ProcessClass(str, Enum):
    CREATE = "create"
    COLLECT = "collect"
    PROCESS = "process"
    ACCUMULATE = "accumulate"
    STORE = "store"
    SEARCH = "search"
    DISTRIBUTE = "distribute"
    USE = "use"


def is_identifier(value: str) -> bool:
    return isinstance(value, str) and IDENT_RE.match(value) is not None


def _require_identifier(value: str, what: str) -> None:
    if not is_identifier(value):
        raise ModelError(f"invalid {what} id {value!r}")


def kind_pair(a: CarrierKind, b: CarrierKind) -> tuple[CarrierKind, CarrierKind]:
    """Order-normalize two kinds (paper < human < storage < process)."""
    return (a, b) if a.rank <= b.rank else (b, a)


@dataclass(frozen=True)
class Node:
    id: str
    kind: CarrierKind

    def __post_init__(self) -> None:
        _require_identifier(self.id, "node")
        object.__setattr__(self, "kind", CarrierKind(self.kind))


@dataclass(frozen=True, eq=False)
class Hop:
    """One undirected channel edge between two endpoints.

    Endpoint order is kept as written but ignored by equality and hashing.
    A remote hop over a visual or acoustic channel cannot be constructed.
    """

    a: str
    b: str
    channel: ChannelKind
    locality: Locality = Locality.LOCAL

    def __post_init__(self) -> None:
        object.__setattr__(self, "channel", ChannelKind(self.channel))
        object.__setattr__(self, "locality", Locality(self.locality))
        if self.locality is Locality.REMOTE and self.channel not in REMOTE_CHANNELS:
            raise ModelError(
                f"remote locality is not available for the {self.channel.value} channel"
            )

    @property
    def endpoints(self) -> tuple[str, str]:
        return (self.a, self.b)

    @property
    def is_self_hop(self) -> bool:
        return self.a == self.b

    def key(self) -> tuple[tuple[str, str], ChannelKind, Locality]:
        pair = (self.a, self.b) if self.a <= self.b else (self.b, self.a)
        return (pair, self.channel, self.locality)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Hop):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        remote = " remote" if self.locality is Locality.REMOTE else ""
        return f"Hop({self.a} -- {self.b} :{remote} {self.channel.value})"


@dataclass(frozen=True)
class Flow:
    id: str
    process_class: ProcessClass
    hops: tuple[Hop, ...] = ()

    def __post_init__(self) -> None:
        _require_identifier(self.id, "flow")
        object.__setattr__(self, "process_class", ProcessClass(self.process_class))
        object.__setattr__(self, "hops", tuple(self.hops))

    def touched(self) -> list[str]:
        """Endpoint ids in order of first appearance."""
        seen: dict[str, None] = {}
        for hop in self.hops:
            seen.setdefault(hop.a)
            seen.setdefault(hop.b)
        return list(seen)


@dataclass(frozen=True)
class SystemModel:
    """Named carrier nodes plus declared data-transfer flows.

    Construction rejects remote hops whose endpoints resolve to non-process
    nodes. Duplicate and dangling ids are left for the validator to report;
    `SystemModel.unchecked` skips the remote guard as well.
    """

    name: str
    nodes: tuple[Node, ...] = ()
    flows: tuple[Flow, ...] = ()
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        self._setup()
        for flow in self.flows:
            for i, hop in enumerate(flow.hops):
                if hop.locality is not Locality.REMOTE:
                    continue
                for end in hop.endpoints:
                    node = self._index.get(end)
                    if node is not None and node.kind is not CarrierKind.PROCESS:
                        raise ModelError(
                            f"flow {flow.id} hop {i}: remote hop endpoint {end} "
                            f"is {node.kind.value}, not process"
                        )

    def _setup(self) -> None:
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "flows", tuple(self.flows))
        index: dict[str, Node] = {}
        for node in self.nodes:
            index.setdefault(node.id, node)
        object.__setattr__(self, "_index", index)

    @classmethod
    def unchecked(cls, name: str, nodes=(), flows=()) -> "SystemModel":
        model = object.__new__(cls)
        object.__setattr__(model, "name", name)
        object.__setattr__(model, "nodes", nodes)
        object.__setattr__(model, "flows", flows)
        model._setup()
        return model

    def node(self, node_id: str) -> Optional[Node]:
        return self._index.get(node_id)

    @property
    def hop_count(self) -> int:
        return sum(len(flow.hops) for flow in self.flows)


def node_lookup(model: SystemModel, node_id: str) -> Optional[Node]:
    """Return the node with ``node_id``, or None if the model has none."""
    return model.node(node_id)


SignatureEntry = tuple[tuple[CarrierKind, CarrierKind], ChannelKind, Locality]


def hop_signature_entry(hop: Hop, model: SystemModel) -> SignatureEntry:
    a = model.node(hop.a)
    b = model.node(hop.b)
    if a is None or b is None:
        missing = hop.a if a is None else hop.b
        raise LookupError(f"hop endpoint {missing!r} does not resolve in model {model.name!r}")
    return (kind_pair(a.kind, b.kind), hop.channel, hop.locality)
