"""Hypothesis strategies for raw (not necessarily well-typed) syntax."""

from hypothesis import strategies as st

from spegion.sizes import OMEGA
from spegion.syntax import (BOT, GLOBAL, GLOBAL_UNIT, INT, UNIT, Alloc, AllocEff, App,
                            Assign, BigLam, BinOp, BoolLit, Copy, Deref, EffSeq, EffVar,
                            Fix, Free, FreeRgn, Fresh, If, IntLit, Join, Lam, Let, Loc,
                            Location, NewRgn, Rec, Ref, Region, Seq, Split, SplitEff,
                            TyApp, TypeWithPlace, UnitLit, Var)

NAMES = ("x", "y", "z")
REGIONS = (Region("r1"), Region("r2"), Region("r3"))

sizes = st.one_of(st.integers(0, 9), st.just(OMEGA))
locations = st.one_of(
    st.just(GLOBAL_UNIT),
    st.builds(Location, st.sampled_from([Region("s1", "site"), Region("d2", "dyn")]),
              st.integers(1, 4)))
places = st.sampled_from([TypeWithPlace(INT, GLOBAL), TypeWithPlace(UNIT, GLOBAL),
                          TypeWithPlace(INT, Region("r"))])


def _values(terms):
    return st.one_of(
        st.builds(IntLit, st.integers(0, 20)),
        st.builds(BoolLit, st.booleans()),
        st.just(UnitLit()),
        st.builds(Lam, st.sampled_from(NAMES), terms, st.one_of(st.none(), places)),
        st.builds(BigLam, st.just("a"), st.just("r"), st.just("e"), st.sampled_from(NAMES),
                  terms, st.one_of(st.none(), places), st.one_of(st.none(), places)),
    )


def _extend(terms):
    names = st.sampled_from(NAMES)
    return st.one_of(
        st.builds(Alloc, _values(terms), sizes, terms),
        st.builds(App, terms, terms),
        st.builds(Ref, terms),
        st.builds(Deref, terms),
        st.builds(Assign, terms, terms),
        st.builds(Seq, terms, terms),
        st.builds(If, terms, terms, terms),
        st.builds(Let, names, terms, terms),
        st.builds(TyApp, terms, places),
        st.builds(FreeRgn, terms),
        st.builds(Split, sizes, terms),
        st.builds(Copy, terms, terms),
        st.builds(BinOp, st.sampled_from(["+", "-", "==", ">"]), terms, terms),
        st.builds(lambda f, fn, s, at, body: Fix(f, fn, s, at, body),
                  st.just("f"),
                  st.builds(BigLam, st.just("a"), st.just("r"), st.just("e"), names,
                            terms, places, places),
                  sizes, terms, terms),
    )


terms = st.recursive(
    st.one_of(st.builds(Var, st.sampled_from(NAMES)), st.builds(Loc, locations),
              st.builds(NewRgn, sizes)),
    _extend, max_leaves=12)

_atoms = st.one_of(
    st.builds(Fresh, st.sampled_from(REGIONS), sizes),
    st.builds(Free, st.sampled_from(REGIONS)),
    st.builds(SplitEff, st.sampled_from(REGIONS), sizes, st.sampled_from(REGIONS)),
    st.builds(AllocEff, sizes, st.sampled_from(REGIONS)),
    st.just(BOT),
)

effects = st.recursive(
    _atoms,
    lambda sub: st.one_of(st.builds(EffSeq, sub, sub), st.builds(Join, sub, sub)),
    max_leaves=6)

effects_with_vars = st.recursive(
    st.one_of(_atoms, st.just(EffVar("e"))),
    lambda sub: st.one_of(st.builds(EffSeq, sub, sub), st.builds(Join, sub, sub),
                          st.builds(Rec, st.just("e"), sub)),
    max_leaves=6)
