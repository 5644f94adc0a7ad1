from pathlib import Path

import pytest
from hypothesis import given, settings

from strategies import effects_with_vars, terms
from spegion.effects import normalize, render_effect
from spegion.harness import generate
from spegion.parser import (ParseError, parse, parse_effect, parse_place, parse_type,
                            region_from_name, tokenize)
from spegion.printer import print_place, print_term, print_type
from spegion.sizes import OMEGA
from spegion.syntax import (GLOBAL, GLOBAL_UNIT, INT, UNIT, Alloc, Fresh, Let, Loc, NewRgn,
                            Region, TypeWithPlace, UnitLit, Var)

CORPUS = sorted((Path(__file__).parent.parent / "examples" / "programs").glob("*.spg"))


def test_section_example():
    assert parse("let x = newrgn [3] in () [2] at x") == \
        Let("x", NewRgn(3), Alloc(UnitLit(), 2, Var("x")))


def test_defaults_to_unbounded():
    assert parse("newrgn") == NewRgn(OMEGA)
    assert parse("() at glob") == Alloc(UnitLit(), OMEGA, Loc(GLOBAL_UNIT))
    assert parse("newrgn [w]") == parse("newrgn [omega]") == NewRgn(OMEGA)


@pytest.mark.parametrize("text", ["let x = in", "", "# only a comment\n", "newrgn [3",
                                  "1 + 2", "let = 3 in x", "fun x -> x"])
def test_parse_errors(text):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert ":" in str(info.value)


def test_error_span_points_at_token():
    with pytest.raises(ParseError) as info:
        parse("let x =\n  in x")
    assert info.value.span.line == 2


def test_region_names():
    assert region_from_name("glob") == GLOBAL
    assert region_from_name("s4").kind == "site"
    assert region_from_name("d2").kind == "dyn"
    assert region_from_name("r").kind == "var"


def test_types_and_places():
    t = "(int, r) -[{fresh r 3} x {alloc 1 r}; q]-> (unit, r)"
    assert print_type(parse_type(t)) == t
    assert parse_place("(int, glob)") == TypeWithPlace(INT, GLOBAL)
    s = "forall {a, r, e}. (a, r) -[{e}]-> (unit, r)"
    assert print_type(parse_type(s)) == s


def test_effects():
    text = "{fresh r 3} x ({alloc 1 r} \\/ {bot})"
    assert render_effect(parse_effect(text), normalize_names=False) == text
    with pytest.raises(ParseError):
        parse_effect("{alloc 1 r} \\/ {bot}")
    assert parse_effect("{fresh r w}") == Fresh(Region("r"), OMEGA)


def test_tokens_have_positions():
    toks = tokenize("let x\n = 1")
    assert (toks[0].span.line, toks[0].span.col) == (1, 1)
    assert toks[2].text == "=" and toks[2].span.line == 2
    assert toks[-1].kind == "eof"


@pytest.mark.parametrize("path", CORPUS, ids=lambda p: p.stem)
def test_corpus_round_trip(path):
    e = parse(path.read_text())
    assert parse(print_term(e)) == e


def test_generated_round_trip():
    for seed in range(1000):
        e = generate(seed).term
        assert parse(print_term(e)) == e, seed


@settings(max_examples=500)
@given(terms)
def test_raw_term_round_trip(e):
    assert parse(print_term(e)) == e


@given(effects_with_vars)
def test_effect_round_trip(phi):
    text = render_effect(phi, normalize_names=False)
    assert normalize(parse_effect(text)) == normalize(phi)


def test_print_place():
    assert print_place(TypeWithPlace(UNIT, GLOBAL)) == "(unit, glob)"
