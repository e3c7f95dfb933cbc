import json

import pytest
from hypothesis import given

from polarities import io as pio
from polarities.errors import ParseError
from polarities.fixtures import LE2, NEQ3
from polarities.morphisms import identity
from polarities.omega import OmegaPolarity

from strategies import nlos, omegas, polarities

LE2_TEXT = '{"kind": "polarity", "version": 1, "x_size": 2, "y_size": 2, "relation": [[1,1],[0,0],[0,1]]}'


def test_le2_roundtrip_is_canonical():
    doc = pio.parse(LE2_TEXT)
    assert doc.payload == LE2
    once = pio.serialize(doc)
    assert once == pio.canonical(LE2_TEXT) == pio.canonical(once)
    assert json.loads(once)["relation"] == [[0, 0], [0, 1], [1, 1]]


def test_out_of_range_tuple_is_named():
    text = LE2_TEXT.replace("[1,1]", "[2,0]")
    with pytest.raises(ParseError, match=r"\(2,0\)"):
        pio.parse(text)


def test_syntax_error_has_position():
    with pytest.raises(ParseError) as info:
        pio.parse('{\n  "kind": "polarity",\n  "x_size": ,\n}')
    assert (info.value.line, info.value.column) == (3, 13)
    assert "line 3" in str(info.value)


@pytest.mark.parametrize("text,msg", [
    ("[]", "JSON object"),
    ('{"kind": "nope", "version": 1}', "unknown kind"),
    ('{"kind": "polarity", "version": 7}', "version"),
    ('{"kind": "polarity", "version": 1, "x_size": 1}', "y_size"),
    ('{"kind": "polarity", "version": 1, "x_size": -1, "y_size": 1, "relation": []}', "x_size"),
])
def test_structural_errors(text, msg):
    with pytest.raises(ParseError, match=msg):
        pio.parse(text)


def test_unstable_omega_is_accepted_by_parse(fixture_path):
    doc = pio.load(fixture_path("le2_unstable.json"))
    assert doc.kind == "omega_polarity" and doc.payload.issues()


def test_references_resolve_relative_to_file(fixture_path):
    doc = pio.load(fixture_path("id_le2.json"))
    src, dst = doc.payload.resolve()
    assert src == dst == OmegaPolarity.from_polarity(LE2)
    cov = pio.load(fixture_path("covering_ch2.json"))
    assert cov.payload.target_nlo.size == 2


def test_missing_file():
    with pytest.raises(ParseError, match="cannot read"):
        pio.load("/nonexistent/file.json")


def test_every_fixture_roundtrips(fixture_path):
    import glob
    import os

    for path in sorted(glob.glob(os.path.join(os.path.dirname(fixture_path("le2.json")), "*.json"))):
        if "bad_" in path:
            continue
        doc = pio.load(path)
        text = pio.serialize(doc)
        assert pio.serialize(pio.parse(text)) == text, path


def test_morphism_and_hom_kinds():
    op = OmegaPolarity.from_polarity(NEQ3)
    phi = identity(op)
    spec = pio.MorphismSpec(pio.OmegaSpec.of(op), pio.OmegaSpec.of(op), phi.alpha, phi.beta)
    text = pio.serialize(pio.Document("morphism", spec))
    assert pio.parse(text).payload == spec


@given(polarities())
def test_polarity_roundtrip(p):
    doc = pio.Document("polarity", p)
    assert pio.parse(pio.serialize(doc)).payload == p


@given(omegas())
def test_omega_roundtrip(op):
    text = pio.serialize(pio.Document("omega_polarity", op))
    assert pio.parse(text).payload.build() == op


@given(nlos())
def test_nlo_roundtrip(A):
    text = pio.serialize(pio.Document("nlo", A))
    back = pio.parse(text).payload
    assert pio.serialize(pio.Document("nlo", back)) == text
