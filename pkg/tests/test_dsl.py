import random

import pytest
from hypothesis import given, settings

from _support import random_model, valid_models
from ftm.dsl import ParseError, parse_model, serialize_model
from ftm.model import CarrierKind, ChannelKind, Flow, Hop, Locality, Node, SystemModel
from ftm.typology import builtin_typology, get_template, template_model

MEMO = 'model "memo"\nnode alice: human\nnode memo: paper\nflow write: create {\nhop alice -- memo : visual\n}'


def test_parse_memo():
    model = parse_model(MEMO)
    assert model.name == "memo"
    assert model.nodes == (Node("alice", CarrierKind.HUMAN), Node("memo", CarrierKind.PAPER))
    assert len(model.flows) == 1
    assert model.flows[0].hops == (Hop("alice", "memo", ChannelKind.VISUAL),)


def test_parse_empty_model():
    model = parse_model('model "empty"')
    assert (model.name, model.nodes, model.flows) == ("empty", (), ())


def test_parse_whitespace_comments_and_remote():
    text = """
    # phone call between two handsets
      model   "call"   # trailing comment
    node a:process
    flow f :distribute{
        hop a--b:remote   virtual   # over the wire
        hop a -- a : virtual
    }
    node b : process
    """
    model = parse_model(text)
    assert model.name == "call"
    assert model.flows[0].hops == (
        Hop("a", "b", "virtual", "remote"),
        Hop("a", "a", "virtual"),
    )


def test_parse_string_escapes():
    model = parse_model('model "say \\"hi\\" \\\\ #not a comment"\n')
    assert model.name == 'say "hi" \\ #not a comment'


def test_crlf_and_bom():
    model = parse_model("﻿model \"w\"\r\nnode a: human\r\n")
    assert model.nodes == (Node("a", "human"),)


def error_of(text):
    with pytest.raises(ParseError) as info:
        parse_model(text)
    return info.value


@pytest.mark.parametrize("text,code,line,column", [
    ('model "m"\nnode a: process\nnode b: process\nflow f: search {\nhop a -- b : remote acoustic\n}',
     "INVALID_REMOTE_CHANNEL", 5, 14),
    ('model "m"\nflow f: search {\nhop a -- b : remote visual\n}', "INVALID_REMOTE_CHANNEL", 3, 14),
    ('model "m"\nnode a: human\nnode p: process\nflow f: search {\nhop a -- p : remote virtual\n}',
     "INVALID_REMOTE_CHANNEL", 5, 14),
    ('model "m"\nnode a: robot', "UNKNOWN_KIND", 2, 9),
    ('model "m"\nnode a: human\nflow f: create {\nhop a -- a : smoke\n}', "UNKNOWN_CHANNEL", 4, 14),
    ('model "m"\nflow f: destroy {\n}', "UNKNOWN_CLASS", 2, 9),
    ('model "m"\nnode a: human\nflow f: collect {\nhop a -- b : acoustic\n}', "UNRESOLVED_NODE", 4, 10),
    ('model "m"\nnode a: human\nnode a: paper', "DUPLICATE_ID", 3, 6),
    ('model "m"\nflow f: use {\n}\nflow f: use {\n}', "DUPLICATE_ID", 4, 6),
    ('', "SYNTAX", 1, 1),
    ('node a: human', "SYNTAX", 1, 1),
    ('model memo', "SYNTAX", 1, 7),
    ('model "m" extra', "SYNTAX", 1, 11),
    ('model "unterminated', "SYNTAX", 1, 7),
    ('model "m"\nnode 1a: human', "SYNTAX", 2, 6),
    ('model "m"\nnode a human', "SYNTAX", 2, 8),
    ('model "m"\nnode a: human\nflow f: create {\nhop a - a : visual\n}', "SYNTAX", 4, 7),
    ('model "m"\nnode a: human\nflow f: create {\nhop a -- a : visual', "SYNTAX", 4, 20),
    ('model "m"\nnode a: human\nflow f: create {\nnode b: human\n}', "SYNTAX", 4, 1),
    ('model "m"\nhop a -- b : visual', "SYNTAX", 2, 1),
    ('model "m"\nmodel "n"', "SYNTAX", 2, 1),
    ('model "m"\nflow f: create\n}', "SYNTAX", 2, 15),
    ('model "m"\nflow f: create {\n} x', "SYNTAX", 3, 3),
])
def test_parse_errors(text, code, line, column):
    err = error_of(text)
    assert (err.code, err.line, err.column) == (code, line, column)


def test_first_error_wins():
    err = error_of('model "m"\nnode a: robot\nnode b: ghost')
    assert (err.code, err.line) == ("UNKNOWN_KIND", 2)


def test_serialize_examples():
    model = parse_model(MEMO)
    text = serialize_model(model)
    assert text == MEMO + "\n"
    assert serialize_model(parse_model(text)) == text
    poll = template_model(get_template("poll"))
    lines = serialize_model(poll).splitlines()
    assert [line for line in lines if line.startswith("hop")] == ["hop H1 -- H2 : acoustic"]
    assert serialize_model(SystemModel("x")) == 'model "x"\n'


def test_serialize_orders_endpoints_by_declaration():
    model = SystemModel("m", (Node("zed", "human"), Node("amy", "paper")),
                        (Flow("f", "create", (Hop("amy", "zed", "visual"),)),))
    assert "hop zed -- amy : visual" in serialize_model(model)


def test_serialize_remote_and_escapes():
    model = SystemModel('q"\\\n\t\r', (Node("a", "process"), Node("b", "process")),
                        (Flow("f", "search", (Hop("b", "a", "electromagnetic", "remote"),)),))
    text = serialize_model(model)
    assert text.splitlines()[0] == 'model "q\\"\\\\\\n\\t\\r"'
    assert "hop a -- b : remote electromagnetic" in text
    assert parse_model(text) == model


@pytest.mark.parametrize("t", builtin_typology(), ids=lambda t: t.id)
def test_template_round_trip(t):
    model = template_model(t, "n_")
    text = serialize_model(model)
    assert parse_model(text) == model
    assert serialize_model(parse_model(text)) == text


@settings(max_examples=200, deadline=None)
@given(valid_models())
def test_round_trip_property(model):
    text = serialize_model(model)
    again = parse_model(text)
    assert again == model
    assert serialize_model(again) == text


def test_round_trip_keeps_incompatible_hops():
    # the parser does not validate channel compatibility
    model = SystemModel("m", (Node("a", "human"), Node("b", "human")),
                        (Flow("f", "use", (Hop("a", "b", "virtual"),)),))
    assert parse_model(serialize_model(model)) == model


def test_parse_never_accepts_construction_violations():
    rng = random.Random(11)
    kinds = list(CarrierKind)
    for _ in range(200):
        ka, kb = rng.choice(kinds), rng.choice(kinds)
        ch = rng.choice(list(ChannelKind))
        text = f'model "m"\nnode a: {ka.value}\nnode b: {kb.value}\nflow f: use {{\nhop a -- b : remote {ch.value}\n}}\n'
        legal = ch in (ChannelKind.ELECTROMAGNETIC, ChannelKind.VIRTUAL) and ka is kb is CarrierKind.PROCESS
        if legal:
            assert parse_model(text).flows[0].hops[0].locality is Locality.REMOTE
        else:
            assert error_of(text).code == "INVALID_REMOTE_CHANNEL"


def test_random_model_round_trip():
    rng = random.Random(21)
    for _ in range(50):
        model = random_model(rng)
        assert parse_model(serialize_model(model)) == model
