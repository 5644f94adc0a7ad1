from hypothesis import given, strategies as st

from strategies import NAMES, locations, terms
from spegion.evaluator import size_of_value
from spegion.syntax import (BOT, GLOBAL, GLOBAL_UNIT, INT, UNIT, Alloc, AllocEff, EffSeq,
                            EffVar, FnT, Lam, Loc, Location, LocVal, Rec, Region, Seq,
                            SchemeT, TypeWithPlace, TyVar, Var, free_locations, free_vars,
                            site_region, substitute_effect_var, substitute_term,
                            substitute_type_vars)

L = Location(Region("d1", "dyn"), 2)
RHO = Region("r")
RHO1 = site_region(1)


def test_global_constants():
    assert GLOBAL_UNIT.region == GLOBAL and GLOBAL_UNIT.index == 1
    assert GLOBAL != site_region(1)
    assert GLOBAL != Region("glob", "var")


def test_substitute_examples():
    assert substitute_term(Var("x"), "x", LocVal(L)) == Loc(L)
    shadow = Lam("x", Var("x"))
    e = Alloc(shadow, 1, Loc(GLOBAL_UNIT))
    assert substitute_term(e, "x", LocVal(L)) == e
    assert substitute_term(Seq(Var("x"), Var("y")), "x", LocVal(L)) == Seq(Loc(L), Var("y"))


def test_substitute_type_vars_examples():
    body = FnT(TypeWithPlace(TyVar("a"), Region("r")), EffVar("e"), TypeWithPlace(UNIT, Region("r")))
    got = substitute_type_vars(body, "a", INT, "r", RHO1)
    assert got == FnT(TypeWithPlace(INT, RHO1), EffVar("e"), TypeWithPlace(UNIT, RHO1))
    glob = FnT(TypeWithPlace(INT, GLOBAL), BOT, TypeWithPlace(INT, GLOBAL))
    assert substitute_type_vars(glob, "a", INT, "r", RHO1) == glob


def test_substitute_type_vars_respects_inner_scheme():
    inner = SchemeT("a", "r", "e", FnT(TypeWithPlace(TyVar("a"), Region("r")), BOT,
                                        TypeWithPlace(UNIT, Region("r"))))
    assert substitute_type_vars(inner, "a", INT, "r", RHO1) == inner


def test_substitute_effect_var_examples():
    phi = Rec("e", AllocEff(1, RHO))
    assert substitute_effect_var(EffVar("e"), "e", BOT) == BOT
    assert (substitute_effect_var(EffSeq(AllocEff(1, RHO), EffVar("e")), "e", phi)
            == EffSeq(AllocEff(1, RHO), phi))
    assert substitute_effect_var(Rec("e", EffVar("e")), "e", BOT) == Rec("e", EffVar("e"))


def test_free_locations_examples():
    l1, l2 = Location(RHO1, 1), Location(RHO1, 2)
    assert free_locations(Seq(Loc(l1), Loc(l2))) == [l1, l2]
    lam = Lam("x", Loc(l1))
    assert size_of_value(lam) == 2


@given(terms, st.sampled_from(NAMES), locations)
def test_substitution_idempotent(e, x, loc):
    once = substitute_term(e, x, LocVal(loc))
    assert substitute_term(once, x, LocVal(loc)) == once


@given(terms, st.sampled_from(NAMES), locations)
def test_substitution_of_absent_variable_is_identity(e, x, loc):
    if x not in free_vars(e):
        assert substitute_term(e, x, LocVal(loc)) == e


@given(terms, st.sampled_from(NAMES), locations)
def test_substitution_removes_variable(e, x, loc):
    assert x not in free_vars(substitute_term(e, x, LocVal(loc)))


@given(terms, st.sampled_from(NAMES), st.sampled_from([Location(Region("q", "dyn"), 9)]))
def test_substitution_adds_one_location_per_occurrence(e, x, loc):
    before = free_locations(e)
    after = free_locations(substitute_term(e, x, LocVal(loc)))
    occurrences = free_vars(e).count(x)
    assert after.count(loc) == before.count(loc) + occurrences
    assert [l for l in after if l != loc] == [l for l in before if l != loc]
