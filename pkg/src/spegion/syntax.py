"""Abstract syntax: regions, locations, kinds, types, effects, values and terms.

Every node is a frozen dataclass, so terms can be hashed, shared and compared
structurally.  Source spans and region-creation sites ride along on the nodes
but are excluded from equality.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from typing import Callable, Iterator, Mapping, Optional, Union

from .sizes import Size

# ---------------------------------------------------------------------------
# regions and locations


@dataclass(frozen=True)
class Region:
    """A region name.

    ``kind`` separates the four sources of names: the global region, names
    the checker assigns to a creation site, names the evaluator mints at run
    time, and region variables bound by a type scheme.
    """
    name: str
    kind: str = "var"  # "global" | "site" | "dyn" | "var"

    def __str__(self) -> str:
        return self.name

    @property
    def is_var(self) -> bool:
        return self.kind == "var"


GLOBAL = Region("glob", "global")


def site_region(site: int) -> Region:
    return Region(f"s{site}", "site")


@dataclass(frozen=True)
class Location:
    region: Region
    index: int

    def __str__(self) -> str:
        return f"%{self.region.name}.{self.index}"


GLOBAL_UNIT = Location(GLOBAL, 1)


@dataclass(frozen=True)
class Span:
    line: int
    col: int
    length: int = 1

    def to_json(self) -> dict:
        return {"line": self.line, "col": self.col, "len": self.length}


_sites = itertools.count(1)


def next_site() -> int:
    return next(_sites)


def _span_field():
    return field(default=None, compare=False, repr=False)


# ---------------------------------------------------------------------------
# kinds


@dataclass(frozen=True)
class Kind:
    name: str  # "Type" | "Region" | "Effect" | "Size"

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class ArrowKind:
    domain: "AnyKind"
    codomain: "AnyKind"

    def __str__(self) -> str:
        return f"({self.domain} -> {self.codomain})"


AnyKind = Union[Kind, ArrowKind]

TYPE = Kind("Type")
REGION = Kind("Region")
EFFECT = Kind("Effect")
SIZE = Kind("Size")

# ---------------------------------------------------------------------------
# effects


@dataclass(frozen=True)
class Bot:
    pass


@dataclass(frozen=True)
class Fresh:
    region: Region
    size: Size


@dataclass(frozen=True)
class Free:
    region: Region


@dataclass(frozen=True)
class SplitEff:
    parent: Region
    size: Size
    child: Region


@dataclass(frozen=True)
class AllocEff:
    size: Size
    region: Region


@dataclass(frozen=True)
class EffVar:
    name: str


@dataclass(frozen=True)
class Rec:
    var: str
    body: "Effect"


@dataclass(frozen=True)
class EffSeq:
    left: "Effect"
    right: "Effect"


@dataclass(frozen=True)
class Join:
    left: "Effect"
    right: "Effect"


Effect = Union[Bot, Fresh, Free, SplitEff, AllocEff, EffVar, Rec, EffSeq, Join]
Atom = Union[Fresh, Free, SplitEff, AllocEff, EffVar, Rec]

BOT = Bot()


def seq_all(effects) -> Effect:
    """Right-nested sequence of the given effects (``BOT`` when empty)."""
    items = list(effects)
    if not items:
        return BOT
    out = items[-1]
    for eff in reversed(items[:-1]):
        out = EffSeq(eff, out)
    return out


# ---------------------------------------------------------------------------
# types


@dataclass(frozen=True)
class TyVar:
    name: str


@dataclass(frozen=True)
class IntT:
    pass


@dataclass(frozen=True)
class UnitT:
    pass


@dataclass(frozen=True)
class BoolT:
    pass


@dataclass(frozen=True)
class RefT:
    inner: "Type"


@dataclass(frozen=True)
class RegionOf:
    """``regionOf(e)`` written where a region is expected."""
    expr: "Term"


PlaceRegion = Union[Region, RegionOf]


@dataclass(frozen=True)
class TypeWithPlace:
    ty: "Type"
    region: PlaceRegion


@dataclass(frozen=True)
class FnT:
    """Arrow type.

    ``reads`` lists the regions outside the function that its body reads or
    writes; applying it requires them to be live.
    """
    domain: TypeWithPlace
    latent: Effect
    codomain: TypeWithPlace
    reads: frozenset = frozenset()


@dataclass(frozen=True)
class SchemeT:
    tyvar: str
    regvar: str
    effvar: str
    body: FnT


Type = Union[TyVar, IntT, UnitT, BoolT, RefT, FnT, SchemeT]

INT = IntT()
UNIT = UnitT()
BOOL = BoolT()

# ---------------------------------------------------------------------------
# values


@dataclass(frozen=True)
class IntLit:
    value: int


@dataclass(frozen=True)
class BoolLit:
    value: bool


@dataclass(frozen=True)
class UnitLit:
    pass


@dataclass(frozen=True)
class Lam:
    param: str
    body: "Term"
    annotation: Optional[TypeWithPlace] = None


@dataclass(frozen=True)
class BigLam:
    """``Fun {a, r, e} x -> body``.

    ``self_name`` is set only on closures stored by a recursive binding; the
    body may then mention that name and it resolves to the closure itself.
    """
    tyvar: str
    regvar: str
    effvar: str
    param: str
    body: "Term"
    annotation: Optional[TypeWithPlace] = None
    result: Optional[TypeWithPlace] = None
    self_name: Optional[str] = None


@dataclass(frozen=True)
class LocVal:
    loc: Location


Value = Union[IntLit, BoolLit, UnitLit, Lam, BigLam, LocVal]
UNIT_VALUE = UnitLit()

# ---------------------------------------------------------------------------
# terms


@dataclass(frozen=True)
class Var:
    name: str
    span: Optional[Span] = _span_field()


@dataclass(frozen=True)
class Loc:
    loc: Location
    span: Optional[Span] = _span_field()


@dataclass(frozen=True)
class Alloc:
    value: Value
    size: Size
    into: "Term"
    span: Optional[Span] = _span_field()


@dataclass(frozen=True)
class App:
    fn: "Term"
    arg: "Term"
    span: Optional[Span] = _span_field()


@dataclass(frozen=True)
class Ref:
    expr: "Term"
    span: Optional[Span] = _span_field()


@dataclass(frozen=True)
class Deref:
    expr: "Term"
    span: Optional[Span] = _span_field()


@dataclass(frozen=True)
class Assign:
    target: "Term"
    value: "Term"
    span: Optional[Span] = _span_field()


@dataclass(frozen=True)
class Seq:
    first: "Term"
    second: "Term"
    span: Optional[Span] = _span_field()


@dataclass(frozen=True)
class If:
    cond: "Term"
    then: "Term"
    orelse: "Term"
    span: Optional[Span] = _span_field()


@dataclass(frozen=True)
class Let:
    name: str
    bound: "Term"
    body: "Term"
    span: Optional[Span] = _span_field()


@dataclass(frozen=True)
class TyApp:
    fn: "Term"
    place: TypeWithPlace
    span: Optional[Span] = _span_field()


@dataclass(frozen=True)
class Fix:
    name: str
    fn: BigLam
    size: Size
    at: "Term"
    body: "Term"
    span: Optional[Span] = _span_field()


@dataclass(frozen=True)
class NewRgn:
    size: Size
    site: int = field(default_factory=next_site, compare=False, repr=False)
    span: Optional[Span] = _span_field()


@dataclass(frozen=True)
class FreeRgn:
    expr: "Term"
    span: Optional[Span] = _span_field()


@dataclass(frozen=True)
class Split:
    size: Size
    expr: "Term"
    site: int = field(default_factory=next_site, compare=False, repr=False)
    span: Optional[Span] = _span_field()


@dataclass(frozen=True)
class Copy:
    src: "Term"
    dst: "Term"
    span: Optional[Span] = _span_field()


BINOPS = ("+", "-", "==", ">")


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Term"
    right: "Term"
    span: Optional[Span] = _span_field()


Term = Union[Var, Loc, Alloc, App, Ref, Deref, Assign, Seq, If, Let, TyApp,
             Fix, NewRgn, FreeRgn, Split, Copy, BinOp]

# ---------------------------------------------------------------------------
# contexts


@dataclass
class Contexts:
    """Kinding, variable and store-typing contexts.

    ``sigma`` always holds the global unit location.
    """
    kinds: dict = field(default_factory=dict)
    gamma: dict = field(default_factory=dict)
    sigma: dict = field(default_factory=lambda: {GLOBAL_UNIT: UNIT})

    def with_var(self, name: str, mu: TypeWithPlace) -> "Contexts":
        gamma = dict(self.gamma)
        gamma[name] = mu
        return Contexts(self.kinds, gamma, self.sigma)

    def with_kinds(self, **bindings: AnyKind) -> "Contexts":
        kinds = dict(self.kinds)
        kinds.update(bindings)
        return Contexts(kinds, self.gamma, self.sigma)


# ---------------------------------------------------------------------------
# traversal helpers


def children(e: Term) -> list:
    """Immediate subterms of ``e`` in evaluation order, excluding value bodies."""
    if isinstance(e, (Var, Loc, NewRgn)):
        return []
    if isinstance(e, Alloc):
        return [e.into]
    if isinstance(e, (App,)):
        return [e.fn, e.arg]
    if isinstance(e, (Ref, Deref, FreeRgn, Split)):
        return [e.expr]
    if isinstance(e, Assign):
        return [e.target, e.value]
    if isinstance(e, Seq):
        return [e.first, e.second]
    if isinstance(e, If):
        return [e.cond, e.then, e.orelse]
    if isinstance(e, Let):
        return [e.bound, e.body]
    if isinstance(e, TyApp):
        return [e.fn]
    if isinstance(e, Fix):
        return [e.at, e.body]
    if isinstance(e, Copy):
        return [e.src, e.dst]
    if isinstance(e, BinOp):
        return [e.left, e.right]
    raise TypeError(f"not a term: {e!r}")


def value_body(v: Value) -> Optional[Term]:
    if isinstance(v, (Lam, BigLam)):
        return v.body
    return None


def term_size(e: Term) -> int:
    """Number of term and value nodes."""
    n = 1
    if isinstance(e, Alloc):
        n += _value_size(e.value)
    if isinstance(e, Fix):
        n += _value_size(e.fn)
    return n + sum(term_size(c) for c in children(e))


def _value_size(v: Value) -> int:
    body = value_body(v)
    return 1 + (term_size(body) if body is not None else 0)


def term_depth(e: Term) -> int:
    subs = list(children(e))
    if isinstance(e, Alloc) and value_body(e.value) is not None:
        subs.append(value_body(e.value))
    if isinstance(e, Fix):
        subs.append(e.fn.body)
    if not subs:
        return 1
    return 1 + max(term_depth(c) for c in subs)


# ---------------------------------------------------------------------------
# substitution of values for term variables


def substitute_term(e: Term, x: str, v: Value) -> Term:
    """Replace free occurrences of ``x`` in ``e`` by the closed value ``v``.

    Only locations can stand in expression position, so ``v`` is expected to
    be a ``LocVal``.  Binders of ``x`` shadow.
    """
    if not isinstance(v, LocVal):
        raise TypeError("only locations can be substituted for variables")
    return _subst(e, x, Loc(v.loc))


def substitute_value_term(e: Term, x: str, replacement: Term) -> Term:
    """Like ``substitute_term`` but takes a value term (a location, possibly
    under type applications)."""
    if not is_value_term(replacement):
        raise TypeError("replacement must be a value term")
    return _subst(e, x, replacement)


def substitute_many(e: Term, bindings: Mapping[str, Location]) -> Term:
    for name, loc in bindings.items():
        e = _subst(e, name, Loc(loc))
    return e


def is_value_term(e: Term) -> bool:
    while isinstance(e, TyApp):
        e = e.fn
    return isinstance(e, Loc)


def strip_tyapp(e: Term):
    """``(location, innermost place or None)`` for a value term, else None."""
    place = None
    while isinstance(e, TyApp):
        place = e.place
        e = e.fn
    if isinstance(e, Loc):
        return e.loc, place
    return None


def _subst_place(mu: Optional[TypeWithPlace], x: str, rep: Term) -> Optional[TypeWithPlace]:
    if mu is None:
        return None
    ty = _subst_type(mu.ty, x, rep)
    region = mu.region
    if isinstance(region, RegionOf):
        region = RegionOf(_subst(region.expr, x, rep))
    if ty is mu.ty and region is mu.region:
        return mu
    return TypeWithPlace(ty, region)


def _subst_type(t: Type, x: str, rep: Term) -> Type:
    if isinstance(t, RefT):
        inner = _subst_type(t.inner, x, rep)
        return t if inner is t.inner else RefT(inner)
    if isinstance(t, FnT):
        dom = _subst_place(t.domain, x, rep)
        cod = _subst_place(t.codomain, x, rep)
        if dom is t.domain and cod is t.codomain:
            return t
        return replace(t, domain=dom, codomain=cod)
    if isinstance(t, SchemeT):
        body = _subst_type(t.body, x, rep)
        return t if body is t.body else replace(t, body=body)
    return t


def _subst_value(val: Value, x: str, rep: Term) -> Value:
    if isinstance(val, Lam):
        ann = _subst_place(val.annotation, x, rep)
        body = val.body if val.param == x else _subst(val.body, x, rep)
        if ann is val.annotation and body is val.body:
            return val
        return replace(val, body=body, annotation=ann)
    if isinstance(val, BigLam):
        ann = _subst_place(val.annotation, x, rep)
        res = _subst_place(val.result, x, rep)
        bound = val.param == x or val.self_name == x
        body = val.body if bound else _subst(val.body, x, rep)
        if ann is val.annotation and body is val.body and res is val.result:
            return val
        return replace(val, body=body, annotation=ann, result=res)
    return val


def _subst(e: Term, x: str, rep: Term) -> Term:
    if isinstance(e, Var):
        return rep if e.name == x else e
    if isinstance(e, (Loc, NewRgn)):
        return e
    if isinstance(e, Alloc):
        value = _subst_value(e.value, x, rep)
        into = _subst(e.into, x, rep)
        if value is e.value and into is e.into:
            return e
        return replace(e, value=value, into=into)
    if isinstance(e, App):
        return _rebuild(e, fn=_subst(e.fn, x, rep), arg=_subst(e.arg, x, rep))
    if isinstance(e, (Ref, Deref, FreeRgn, Split)):
        return _rebuild(e, expr=_subst(e.expr, x, rep))
    if isinstance(e, Assign):
        return _rebuild(e, target=_subst(e.target, x, rep), value=_subst(e.value, x, rep))
    if isinstance(e, Seq):
        return _rebuild(e, first=_subst(e.first, x, rep), second=_subst(e.second, x, rep))
    if isinstance(e, If):
        return _rebuild(e, cond=_subst(e.cond, x, rep), then=_subst(e.then, x, rep),
                        orelse=_subst(e.orelse, x, rep))
    if isinstance(e, Let):
        bound = _subst(e.bound, x, rep)
        body = e.body if e.name == x else _subst(e.body, x, rep)
        return _rebuild(e, bound=bound, body=body)
    if isinstance(e, TyApp):
        return _rebuild(e, fn=_subst(e.fn, x, rep), place=_subst_place(e.place, x, rep))
    if isinstance(e, Fix):
        fn = e.fn if e.name == x else _subst_value(e.fn, x, rep)
        at = _subst(e.at, x, rep)
        body = e.body if e.name == x else _subst(e.body, x, rep)
        return _rebuild(e, fn=fn, at=at, body=body)
    if isinstance(e, Copy):
        return _rebuild(e, src=_subst(e.src, x, rep), dst=_subst(e.dst, x, rep))
    if isinstance(e, BinOp):
        return _rebuild(e, left=_subst(e.left, x, rep), right=_subst(e.right, x, rep))
    raise TypeError(f"not a term: {e!r}")


def _rebuild(e, **fields):
    if all(getattr(e, k) is v for k, v in fields.items()):
        return e
    return replace(e, **fields)


# ---------------------------------------------------------------------------
# free variables and locations


def free_vars(e: Term) -> list:
    """Free term variables of ``e``, one entry per occurrence, left to right."""
    out: list = []
    _free_vars(e, frozenset(), out)
    return out


def _place_vars(mu: Optional[TypeWithPlace], bound, out) -> None:
    if mu is not None and isinstance(mu.region, RegionOf):
        _free_vars(mu.region.expr, bound, out)


def _value_vars(v: Value, bound, out) -> None:
    if isinstance(v, Lam):
        _place_vars(v.annotation, bound, out)
        _free_vars(v.body, bound | {v.param}, out)
    elif isinstance(v, BigLam):
        _place_vars(v.annotation, bound, out)
        _place_vars(v.result, bound, out)
        inner = bound | {v.param}
        if v.self_name:
            inner = inner | {v.self_name}
        _free_vars(v.body, inner, out)


def _free_vars(e: Term, bound, out) -> None:
    if isinstance(e, Var):
        if e.name not in bound:
            out.append(e.name)
    elif isinstance(e, Alloc):
        _value_vars(e.value, bound, out)
        _free_vars(e.into, bound, out)
    elif isinstance(e, Let):
        _free_vars(e.bound, bound, out)
        _free_vars(e.body, bound | {e.name}, out)
    elif isinstance(e, Fix):
        _free_vars(e.at, bound, out)
        _value_vars(e.fn, bound | {e.name}, out)
        _free_vars(e.body, bound | {e.name}, out)
    elif isinstance(e, TyApp):
        _free_vars(e.fn, bound, out)
        _place_vars(e.place, bound, out)
    else:
        for c in children(e):
            _free_vars(c, bound, out)


def free_locations(e: Term) -> list:
    """Every location occurring in ``e``, left to right, duplicates kept."""
    out: list = []
    _locs(e, out)
    return out


def _place_locs(mu: Optional[TypeWithPlace], out) -> None:
    if mu is not None and isinstance(mu.region, RegionOf):
        _locs(mu.region.expr, out)


def _value_locs(v: Value, out) -> None:
    if isinstance(v, LocVal):
        out.append(v.loc)
    elif isinstance(v, (Lam, BigLam)):
        _place_locs(v.annotation, out)
        if isinstance(v, BigLam):
            _place_locs(v.result, out)
        _locs(v.body, out)


def _locs(e: Term, out) -> None:
    if isinstance(e, Loc):
        out.append(e.loc)
    elif isinstance(e, Alloc):
        _value_locs(e.value, out)
        _locs(e.into, out)
    elif isinstance(e, Fix):
        _locs(e.at, out)
        _value_locs(e.fn, out)
        _locs(e.body, out)
    elif isinstance(e, TyApp):
        _locs(e.fn, out)
        _place_locs(e.place, out)
    else:
        for c in children(e):
            _locs(c, out)


# ---------------------------------------------------------------------------
# type-level substitution


def substitute_effect_var(phi: Effect, var: str, replacement: Effect) -> Effect:
    """Replace ``EffVar(var)`` leaves; a ``Rec`` binding ``var`` shadows."""
    if isinstance(phi, EffVar):
        return replacement if phi.name == var else phi
    if isinstance(phi, Rec):
        if phi.var == var:
            return phi
        return Rec(phi.var, substitute_effect_var(phi.body, var, replacement))
    if isinstance(phi, EffSeq):
        return EffSeq(substitute_effect_var(phi.left, var, replacement),
                      substitute_effect_var(phi.right, var, replacement))
    if isinstance(phi, Join):
        return Join(substitute_effect_var(phi.left, var, replacement),
                    substitute_effect_var(phi.right, var, replacement))
    return phi


def map_effect_regions(phi: Effect, f: Callable[[Region], Region]) -> Effect:
    if isinstance(phi, Fresh):
        return Fresh(f(phi.region), phi.size)
    if isinstance(phi, Free):
        return Free(f(phi.region))
    if isinstance(phi, SplitEff):
        return SplitEff(f(phi.parent), phi.size, f(phi.child))
    if isinstance(phi, AllocEff):
        return AllocEff(phi.size, f(phi.region))
    if isinstance(phi, Rec):
        return Rec(phi.var, map_effect_regions(phi.body, f))
    if isinstance(phi, EffSeq):
        return EffSeq(map_effect_regions(phi.left, f), map_effect_regions(phi.right, f))
    if isinstance(phi, Join):
        return Join(map_effect_regions(phi.left, f), map_effect_regions(phi.right, f))
    return phi


def map_type_regions(t: Type, f: Callable[[Region], Region],
                     tyvars: Optional[Mapping[str, Type]] = None) -> Type:
    """Rename regions (and optionally type variables) throughout a type."""
    tyvars = tyvars or {}
    if isinstance(t, TyVar):
        return tyvars.get(t.name, t)
    if isinstance(t, RefT):
        return RefT(map_type_regions(t.inner, f, tyvars))
    if isinstance(t, FnT):
        return FnT(map_place_regions(t.domain, f, tyvars),
                   map_effect_regions(t.latent, f),
                   map_place_regions(t.codomain, f, tyvars),
                   frozenset(f(r) for r in t.reads))
    if isinstance(t, SchemeT):
        inner = {k: v for k, v in tyvars.items() if k != t.tyvar}

        def g(r: Region) -> Region:
            if r.is_var and r.name == t.regvar:
                return r
            return f(r)
        return SchemeT(t.tyvar, t.regvar, t.effvar, map_type_regions(t.body, g, inner))
    return t


def map_place_regions(mu: TypeWithPlace, f, tyvars=None) -> TypeWithPlace:
    region = mu.region
    if isinstance(region, Region):
        region = f(region)
    return TypeWithPlace(map_type_regions(mu.ty, f, tyvars), region)


def substitute_type_vars(t: Type, tyvar: Optional[str], ty: Optional[Type],
                         regvar: Optional[str], region: Optional[Region]) -> Type:
    """Instantiate a type variable and a region variable inside ``t``.

    Effect variables are left alone.
    """
    tymap = {tyvar: ty} if tyvar is not None and ty is not None else {}

    def f(r: Region) -> Region:
        if regvar is not None and region is not None and r.is_var and r.name == regvar:
            return region
        return r
    return map_type_regions(t, f, tymap)


def effect_regions(phi: Effect) -> set:
    out: set = set()
    map_effect_regions(phi, lambda r: (out.add(r), r)[1])
    return out


def type_regions(t: Type) -> set:
    out: set = set()
    map_type_regions(t, lambda r: (out.add(r), r)[1])
    return out


def iter_effect_atoms(phi: Effect) -> Iterator[Effect]:
    """Atoms of ``phi`` reachable through sequences and joins (not Rec bodies)."""
    if isinstance(phi, (EffSeq, Join)):
        yield from iter_effect_atoms(phi.left)
        yield from iter_effect_atoms(phi.right)
    else:
        yield phi


# ---------------------------------------------------------------------------
# instantiation of type binders inside term annotations


def instantiate_term(e: Term, tyvar: str, ty: Type, regvar: str, region: Region) -> Term:
    """Replace the type variable ``tyvar`` and region variable ``regvar`` in
    every annotation of ``e``.  Inner Λ binders of the same names shadow."""
    return _inst(e, tyvar, ty, regvar, region)


def _inst_place(mu, tyvar, ty, regvar, region):
    if mu is None:
        return None
    r = mu.region
    if isinstance(r, Region) and r.is_var and r.name == regvar:
        r = region
    elif isinstance(r, RegionOf):
        r = RegionOf(_inst(r.expr, tyvar, ty, regvar, region))
    return TypeWithPlace(substitute_type_vars(mu.ty, tyvar, ty, regvar, region), r)


def _inst_value(v, tyvar, ty, regvar, region):
    if isinstance(v, Lam):
        return replace(v, annotation=_inst_place(v.annotation, tyvar, ty, regvar, region),
                       body=_inst(v.body, tyvar, ty, regvar, region))
    if isinstance(v, BigLam):
        tv = None if v.tyvar == tyvar else tyvar
        rv = None if v.regvar == regvar else regvar
        if tv is None and rv is None:
            return v
        return replace(v, annotation=_inst_place(v.annotation, tv, ty, rv, region),
                       result=_inst_place(v.result, tv, ty, rv, region),
                       body=_inst(v.body, tv, ty, rv, region))
    return v


def _inst(e, tyvar, ty, regvar, region):
    if isinstance(e, (Var, Loc, NewRgn)):
        return e
    if isinstance(e, Alloc):
        return replace(e, value=_inst_value(e.value, tyvar, ty, regvar, region),
                       into=_inst(e.into, tyvar, ty, regvar, region))
    if isinstance(e, TyApp):
        return replace(e, fn=_inst(e.fn, tyvar, ty, regvar, region),
                       place=_inst_place(e.place, tyvar, ty, regvar, region))
    if isinstance(e, Fix):
        return replace(e, fn=_inst_value(e.fn, tyvar, ty, regvar, region),
                       at=_inst(e.at, tyvar, ty, regvar, region),
                       body=_inst(e.body, tyvar, ty, regvar, region))
    fields = {}
    for name in _CHILD_FIELDS[type(e)]:
        fields[name] = _inst(getattr(e, name), tyvar, ty, regvar, region)
    return replace(e, **fields)


_CHILD_FIELDS = {
    App: ("fn", "arg"), Ref: ("expr",), Deref: ("expr",), FreeRgn: ("expr",),
    Split: ("expr",), Assign: ("target", "value"), Seq: ("first", "second"),
    If: ("cond", "then", "orelse"), Let: ("bound", "body"), Copy: ("src", "dst"),
    BinOp: ("left", "right"),
}


def value_locations(v: Value) -> list:
    """Locations inside a value, annotations included, duplicates kept."""
    out: list = []
    _value_locs(v, out)
    return out


def value_free_vars(v: Value) -> list:
    out: list = []
    _value_vars(v, frozenset(), out)
    return out
