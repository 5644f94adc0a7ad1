import pytest
from hypothesis import given, settings, strategies as st

from spegion import parse
from spegion.checker import (Checker, LivenessEnv, StoreTypeError, TypeCheckError,
                             types_alpha_equal)
from spegion.effects import created_regions, effect_equiv, render_effect, sum_allocs
from spegion.evaluator import InnerStore, evaluate, initial_store
from spegion.harness import generate
from spegion.kinds import kind_of_effect, kind_of_place
from spegion.sizes import OMEGA, size_leq
from spegion.syntax import (EFFECT, GLOBAL, GLOBAL_UNIT, INT, UNIT, EffVar, Fresh, FnT,
                            Region, SchemeT, SplitEff, TypeWithPlace, TyVar,
                            UnitLit, iter_effect_atoms, site_region)


def check(src: str, **kw):
    return Checker(**kw).check_program(parse(src))


def reject(src: str, **kw) -> TypeCheckError:
    with pytest.raises(TypeCheckError) as info:
        check(src, **kw)
    return info.value


# -- accepted programs and their effects -----------------------------------

def test_newrgn_then_alloc():
    j = check("let x = newrgn [3] in () [2] at x")
    assert j.type.ty == UNIT and j.type.region.kind == "site"
    assert render_effect(j.effect) == "{fresh r1 3} x {alloc 1 r1} x {alloc 2 r1}"


def test_two_fresh_regions_function():
    j = check("let x = newrgn [5] in (fun z -> newrgn [5]; newrgn [5]) [1] at x")
    fn = j.type.ty
    assert isinstance(fn, FnT)
    fresh = [a for a in iter_effect_atoms(fn.latent) if isinstance(a, Fresh)]
    assert [f.size for f in fresh] == [5, 5]
    assert fn.codomain == TypeWithPlace(UNIT, fresh[1].region)
    assert j.type.region == j.effect.left.region


def test_if_uses_join():
    j = check("if true [1] at glob then 1 [1] at glob else 2 [1] at glob")
    assert render_effect(j.effect) == "{alloc 1 glob} x ({alloc 1 glob} \\/ {alloc 1 glob})"


def test_reference_cells():
    assert check("let p = ref (1 [1] at glob) in !p").type == TypeWithPlace(INT, GLOBAL)
    j = check("let p = ref (1 [1] at glob) in p := 2 [1] at glob")
    assert j.type == TypeWithPlace(UNIT, GLOBAL)


def test_copy_and_split():
    j = check("let r = newrgn [3] in let v = 1 [1] at glob in copy v into r")
    assert j.type.ty == INT and j.type.region != GLOBAL
    j = check("let r = newrgn [6] in let c = split [3] r in 1 [2] at c")
    splits = [a for a in iter_effect_atoms(j.effect) if isinstance(a, SplitEff)]
    assert len(splits) == 1 and splits[0].size == 3
    assert j.type.region == splits[0].child


def test_unannotated_sizes_are_unbounded():
    j = check("let x = newrgn in () at x; freergn x")
    assert render_effect(j.effect) == "{fresh r1 w} x {alloc 1 r1} x {alloc w r1} x {free r1}"


# -- rejections --------------------------------------------------------------

@pytest.mark.parametrize("src,kind,rule", [
    ("let x = newrgn [10] in let a = 1 [10] at x in 1 [5] at x", "OverAllocation", "t-let"),
    ("let r = newrgn [6] in let c = split [3] r in 1 [3] at c", "OverAllocation", "t-let"),
    ("newrgn [0]", "AllocTooSmall", "t-newrgn"),
    ("freergn glob", "Mismatch", "t-freergn"),
    ("1 [1] at glob; glob", "NotUnitSeq", "t-seq"),
    ("if 1 [1] at glob then glob else glob", "NotBool", "t-if"),
    ("x", "Unbound", "t-var"),
    ("let x = 1 [1] at glob in x x", "NotAFunction", "t-app"),
    ("1 [1] at glob @ (int, glob)", "SchemeExpected", "t-tyApp"),
    ("let r = newrgn [2] in let v = 1 [1] at glob in (fun (z : (int, glob)) -> v) [1] at r",
     "AllocTooSmall", "t-val"),
    ("let r = newrgn [3] in freergn r; 1 [1] at r", "RegionNotLive", "t-val"),
    ("let r = newrgn [3] in (if true [1] at glob then freergn r else glob); 1 [1] at r",
     "RegionNotLive", "t-val"),
    ("let r = newrgn [3] in freergn r; freergn r", "RegionNotLive", "t-freergn"),
])
def test_rejections(src, kind, rule):
    err = reject(src)
    assert err.detail_kind == kind
    assert err.rule == rule
    assert err.span is not None


def test_rejection_json_carries_prefix():
    # the region's own unit cell counts: 1 + 4 used before the request of 6
    err = reject("let x = newrgn [10] in let a = 1 [4] at x in 1 [6] at x")
    out = err.to_json()
    assert out["kind"] == "EffectComposition"
    assert out["composition"] == {"kind": "OverAllocation", "region": out["composition"]["region"],
                                  "requested": "6", "declared": "10", "used": "5"}
    assert out["effect"].startswith("{fresh")


NEG_ALLOC_INTO_FREED = """
let r1 = newrgn [4] in
letrec f {a, r2, e} (y : (a, r2)) : (unit, r2) =
  (freergn r1; () [1] at y) [2] at r1
in f @ (unit, regionOf(r1)) r1
"""


def test_strict_figures_only_drops_use_after_free():
    assert reject(NEG_ALLOC_INTO_FREED).detail_kind == "UseAfterFree"
    check(NEG_ALLOC_INTO_FREED, strict_figures=True)
    assert reject("let r = newrgn [3] in freergn r; 1 [1] at r",
                  strict_figures=True).detail_kind == "RegionNotLive"


# -- liveness environment ----------------------------------------------------

def test_liveness_env():
    r = Region("s1", "site")
    env = LivenessEnv.initial()
    assert GLOBAL in env and r not in env
    env2 = env.add(r, 4)
    assert r in env2 and env2.declared(r) == 4
    assert r not in env2.remove(r)
    with pytest.raises(ValueError):
        env.remove(GLOBAL)
    with pytest.raises(ValueError):
        env.remove(r)
    assert env.remove(r, strict=False) == env


def test_liveness_nested_instances():
    r = Region("s1", "site")
    env = LivenessEnv.initial().add(r, 2).add(r, 2)
    assert r in env.remove(r)
    assert r not in env.remove(r).remove(r)


def test_liveness_intersection():
    a, b = Region("s1", "site"), Region("s2", "site")
    left = LivenessEnv.initial().add(a).add(b)
    right = LivenessEnv.initial().add(a)
    both = left.intersect(right)
    assert a in both and b not in both and GLOBAL in both
    uni = LivenessEnv.universal().remove(a)
    assert a not in uni and b in uni
    assert b in left.intersect(uni) and a not in left.intersect(uni)


# -- store typing ------------------------------------------------------------

def test_check_store_examples():
    c = Checker()
    sigma = {GLOBAL_UNIT: UNIT}
    c.check_store(sigma, initial_store())
    out = evaluate(parse("newrgn [4]"))
    loc = out.loc
    c.check_store({**sigma, loc: UNIT}, out.store)

    bad = initial_store()
    rho = bad.fresh_region()
    bad.regions[rho] = InnerStore(1)
    l1, l2 = bad.fresh_loc(rho), bad.fresh_loc(rho)
    bad.regions[rho].cells.update({l1: UnitLit(), l2: UnitLit()})
    with pytest.raises(StoreTypeError) as info:
        c.check_store({**sigma, l1: UNIT, l2: UNIT}, bad)
    assert info.value.region == rho


def test_check_store_missing_type():
    st_ = initial_store()
    rho = st_.fresh_region()
    st_.regions[rho] = InnerStore(3)
    loc = st_.fresh_loc(rho)
    st_.regions[rho].cells[loc] = UnitLit()
    with pytest.raises(StoreTypeError):
        Checker().check_store({GLOBAL_UNIT: UNIT}, st_)
    with pytest.raises(StoreTypeError):
        Checker().check_store({GLOBAL_UNIT: UNIT, loc: INT}, st_)


# -- schemes -----------------------------------------------------------------

def test_instantiate_scheme():
    r = Region("r")
    rho1 = site_region(1)
    body = FnT(TypeWithPlace(TyVar("a"), r), EffVar("e"), TypeWithPlace(UNIT, r))
    got = Checker().instantiate_scheme(SchemeT("a", "r", "e", body), INT, rho1)
    assert got == FnT(TypeWithPlace(INT, rho1), EffVar("e"), TypeWithPlace(UNIT, rho1))
    with pytest.raises(TypeCheckError) as info:
        Checker().instantiate_scheme(INT, INT, rho1)
    assert info.value.kind == "SchemeExpected"


def test_types_alpha_equal():
    a, b = site_region(1), site_region(2)
    f = lambda r: FnT(TypeWithPlace(INT, r), Fresh(r, 2), TypeWithPlace(UNIT, r))
    assert types_alpha_equal(f(a), f(b))
    assert not types_alpha_equal(FnT(TypeWithPlace(INT, a), Fresh(b, 2), TypeWithPlace(UNIT, a)),
                                 f(b))


# -- properties over generated programs -----------------------------------

typed_seeds = st.integers(0, 5000).map(generate).filter(lambda p: p.verdict == "typed")


@settings(max_examples=150, deadline=None)
@given(typed_seeds)
def test_effect_accounting(prog):
    j = Checker().check_program(prog.term)
    for atom in iter_effect_atoms(j.effect):
        if isinstance(atom, Fresh) and atom.size is not OMEGA:
            assert size_leq(sum_allocs(atom.region, j.effect), atom.size) or \
                _recreated(j.effect, atom.region)


def _recreated(phi, region) -> bool:
    return sum(1 for a in iter_effect_atoms(phi) if isinstance(a, Fresh) and a.region == region) > 1


@settings(max_examples=150, deadline=None)
@given(typed_seeds)
def test_kinding_coherence_and_determinism(prog):
    j1 = Checker().check_program(prog.term)
    j2 = Checker().check_program(prog.term)
    assert kind_of_effect({}, j1.effect) == EFFECT
    kind_of_place({}, j1.type)
    assert types_alpha_equal(j1.type.ty, j2.type.ty)
    assert effect_equiv(j1.effect, j2.effect)


@settings(max_examples=150, deadline=None)
@given(typed_seeds)
def test_liveness_monotone(prog):
    j = Checker().check_program(prog.term)
    minted = created_regions(j.effect)
    assert j.live.regions() <= ({GLOBAL} | minted)
