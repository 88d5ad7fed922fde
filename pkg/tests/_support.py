"""Shared generators and brute-force oracles for the test suite."""

from __future__ import annotations

import itertools
import random
import string
from collections import Counter

from hypothesis import strategies as st

from ftm.model import CarrierKind, ChannelKind, Flow, Hop, Locality, Node, ProcessClass, SystemModel
from ftm.typology import Template

KINDS = list(CarrierKind)
CHANNELS = list(ChannelKind)
CLASSES = list(ProcessClass)

# Written out independently of ftm.validator.COMPATIBILITY.
MATRIX_ROWS = [
    ("visual", "local", {"human", "paper"}),
    ("visual", "local", {"human", "process"}),
    ("acoustic", "local", {"human"}),
    ("acoustic", "local", {"human", "process"}),
    ("electromagnetic", "local", {"human", "process"}),
    ("virtual", "local", {"process", "storage"}),
    ("virtual", "local", {"process"}),
    ("electromagnetic", "remote", {"process"}),
    ("virtual", "remote", {"process"}),
]


def oracle_compatible(a: CarrierKind, b: CarrierKind, ch: ChannelKind, loc: Locality) -> bool:
    return any(
        ch.value == c and loc.value == l and {a.value, b.value} == pair
        for c, l, pair in MATRIX_ROWS
    )


def combos_for(a: CarrierKind, b: CarrierKind) -> list[tuple[ChannelKind, Locality]]:
    return [
        (ch, loc)
        for ch in ChannelKind
        for loc in Locality
        if oracle_compatible(a, b, ch, loc)
    ]


def brute_force_matches(flow: Flow, model: SystemModel, t: Template) -> list[tuple[str, ...]]:
    """Enumerate every assignment of roles to the flow's touched nodes."""
    touched = sorted({end for h in flow.hops for end in (h.a, h.b)})
    if any(model.node(n) is None for n in touched) or len(touched) != len(t.roles):
        return []
    want = Counter((frozenset((h.a, h.b)), h.channel, h.locality) for h in flow.hops)
    out = []
    for perm in itertools.permutations(touched):
        bind = dict(zip((r for r, _ in t.roles), perm))
        if any(model.node(bind[r]).kind is not k for r, k in t.roles):
            continue
        got = Counter(
            (frozenset((bind[h.a], bind[h.b])), h.channel, h.locality) for h in t.hops
        )
        if got == want:
            out.append(perm)
    return sorted(out)


def ident(rng: random.Random, taken: set[str]) -> str:
    while True:
        first = rng.choice(string.ascii_letters)
        rest = "".join(rng.choice(string.ascii_letters + string.digits + "_")
                       for _ in range(rng.randint(0, 6)))
        value = first + rest
        if value not in taken:
            taken.add(value)
            return value


def random_model(rng: random.Random, max_nodes: int = 8, max_flows: int = 4) -> SystemModel:
    """A random model that passes validation (every hop compatible, no empty flows)."""
    taken: set[str] = set()
    nodes = [Node(ident(rng, taken), rng.choice(KINDS)) for _ in range(rng.randint(0, max_nodes))]
    options = [
        (x, y, ch, loc)
        for x in nodes
        for y in nodes
        for ch, loc in combos_for(x.kind, y.kind)
    ]
    flows = []
    if options:
        flow_ids: set[str] = set()
        for _ in range(rng.randint(0, max_flows)):
            hops = []
            for _ in range(rng.randint(1, 6)):
                x, y, ch, loc = rng.choice(options)
                hops.append(Hop(x.id, y.id, ch, loc))
            flows.append(Flow(ident(rng, flow_ids), rng.choice(CLASSES), tuple(hops)))
    name = "".join(rng.choice(string.printable) for _ in range(rng.randint(0, 12)))
    return SystemModel(name, tuple(nodes), tuple(flows))


def random_flow_model(rng: random.Random, max_nodes: int = 8) -> SystemModel:
    """One-flow model with arbitrary, possibly incompatible, hops."""
    taken: set[str] = set()
    nodes = [Node(ident(rng, taken), rng.choice(KINDS)) for _ in range(rng.randint(1, max_nodes))]
    hops = []
    for _ in range(rng.randint(1, 8)):
        x, y = rng.choice(nodes), rng.choice(nodes)
        ch = rng.choice(CHANNELS)
        remote = (x.kind is y.kind is CarrierKind.PROCESS and ch.value in ("electromagnetic", "virtual")
                  and rng.random() < 0.5)
        hops.append(Hop(x.id, y.id, ch, Locality.REMOTE if remote else Locality.LOCAL))
    return SystemModel("random", tuple(nodes), (Flow("f", rng.choice(CLASSES), tuple(hops)),))


def renamed_instance(t: Template, rng: random.Random) -> SystemModel:
    """Template instance with random node ids, shuffled hops and flipped endpoints."""
    taken: set[str] = set()
    names = {role: ident(rng, taken) for role, _ in t.roles}
    nodes = [Node(names[r], k) for r, k in t.roles]
    rng.shuffle(nodes)
    hops = [
        Hop(*((names[h.a], names[h.b]) if rng.random() < 0.5 else (names[h.b], names[h.a])),
            h.channel, h.locality)
        for h in t.hops
    ]
    rng.shuffle(hops)
    return SystemModel("renamed", tuple(nodes), (Flow("f", t.process_class, tuple(hops)),))


identifiers = st.from_regex(r"[A-Za-z][A-Za-z0-9_]{0,7}", fullmatch=True)


@st.composite
def valid_models(draw, max_nodes: int = 8, max_flows: int = 4) -> SystemModel:
    ids = draw(st.lists(identifiers, max_size=max_nodes, unique=True))
    nodes = [Node(i, draw(st.sampled_from(KINDS))) for i in ids]
    options = [
        (x.id, y.id, ch, loc)
        for x in nodes
        for y in nodes
        for ch, loc in combos_for(x.kind, y.kind)
    ]
    flows = []
    if options:
        flow_ids = draw(st.lists(identifiers, max_size=max_flows, unique=True))
        for fid in flow_ids:
            specs = draw(st.lists(st.sampled_from(options), min_size=1, max_size=6))
            flows.append(Flow(fid, draw(st.sampled_from(CLASSES)),
                              tuple(Hop(a, b, ch, loc) for a, b, ch, loc in specs)))
    name = draw(st.text(st.characters(blacklist_categories=("Cs",)), max_size=16))
    return SystemModel(name, tuple(nodes), tuple(flows))


# criterion number -> (passed, summary); filled by test_acceptance
ACCEPTANCE: dict[int, tuple[bool, str]] = {}
