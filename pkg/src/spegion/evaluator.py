"""Small-step evaluation over a two-level store.

The outer store maps regions to inner stores; an inner store maps locations
to values and carries the region's maximum size.  Evaluation is left to
right.  A location, possibly under type applications, is a value.
"""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass, field, replace
from typing import Optional

from .sizes import OMEGA, Size, monus, size_leq, size_sum
from .syntax import (GLOBAL, GLOBAL_UNIT, UNIT_VALUE, Alloc, App, Assign, BigLam,
                     BinOp, BoolLit, Copy, Deref, Fix, FreeRgn, If, IntLit, Lam,
                     Let, Loc, Location, LocVal, NewRgn, Ref, Region, Seq, Split,
                     TyApp, Var, instantiate_term, is_value_term, strip_tyapp,
                     substitute_value_term, value_free_vars, value_locations)

log = logging.getLogger(__name__)

DEFAULT_FUEL = 100_000


def default_fuel() -> int:
    raw = os.environ.get("SPEGION_FUEL")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            log.warning("ignoring malformed SPEGION_FUEL=%r", raw)
    return DEFAULT_FUEL


# ---------------------------------------------------------------------------
# stores


@dataclass
class InnerStore:
    max_size: Size
    cells: dict = field(default_factory=dict)
    next_index: int = 1

    def copy(self) -> "InnerStore":
        return InnerStore(self.max_size, dict(self.cells), self.next_index)


class Store:
    """Outer store plus the name supply for regions.

    ``origins`` remembers, for every region ever created, the creation site
    it came from; it survives freeing.
    """

    def __init__(self):
        self.regions: dict = {}
        self.origins: dict = {}
        self.counter = 0
        glob = InnerStore(OMEGA)
        glob.cells[GLOBAL_UNIT] = UNIT_VALUE
        glob.next_index = 2
        self.regions[GLOBAL] = glob

    def copy(self) -> "Store":
        other = Store.__new__(Store)
        other.regions = {r: inner.copy() for r, inner in self.regions.items()}
        other.origins = dict(self.origins)
        other.counter = self.counter
        return other

    def fresh_region(self) -> Region:
        self.counter += 1
        return Region(f"d{self.counter}", "dyn")

    def fresh_loc(self, region: Region) -> Location:
        inner = self.regions[region]
        loc = Location(region, inner.next_index)
        inner.next_index += 1
        return loc

    def lookup(self, loc: Location):
        inner = self.regions.get(loc.region)
        if inner is None:
            raise _Stuck("MissingRegion", f"region {loc.region} is not in the store")
        if loc not in inner.cells:
            raise _Stuck("MissingLocation", f"location {loc} is not in the store")
        return inner.cells[loc]

    def locations(self) -> set:
        return {loc for inner in self.regions.values() for loc in inner.cells}

    def to_json(self) -> dict:
        from .printer import print_value
        return {r.name: {"max": str(inner.max_size), "size": str(current_size(inner)),
                         "cells": {str(l): print_value(v) for l, v in inner.cells.items()}}
                for r, inner in sorted(self.regions.items(), key=lambda kv: _region_key(kv[0]))}

    def __eq__(self, other) -> bool:
        return (isinstance(other, Store) and self.regions == other.regions
                and self.counter == other.counter)


def _region_key(r: Region):
    digits = "".join(ch for ch in r.name if ch.isdigit())
    return (r != GLOBAL, r.kind, int(digits) if digits else 0, r.name)


def size_of_value(v) -> Size:
    if isinstance(v, (Lam, BigLam)):
        return 1 + len(value_locations(v))
    return 1


def current_size(inner: InnerStore) -> Size:
    return size_sum(size_of_value(v) for v in inner.cells.values())


# ---------------------------------------------------------------------------
# outcomes


@dataclass(frozen=True)
class Stepped:
    term: object
    store: Store = field(compare=False)
    rule: str = ""


@dataclass(frozen=True)
class Done:
    loc: Location
    store: Store = field(compare=False, default=None)


@dataclass(frozen=True)
class Stuck:
    """``reason`` is one of MissingRegion, MissingLocation, AnnotationTooSmall,
    NotAFunctionValue, NotABool, NotAReference, NotAnInteger, GlobalFree,
    FreeVariable."""
    reason: str
    term: object
    message: str = ""
    store: Store = field(compare=False, default=None)


@dataclass(frozen=True)
class OutOfFuel:
    term: object
    steps: int
    store: Store = field(compare=False, default=None)


class _Stuck(Exception):
    def __init__(self, reason: str, message: str):
        super().__init__(message)
        self.reason = reason


# ---------------------------------------------------------------------------
# one step


def step(e, store: Store):
    """Apply one rule to ``e``.  The input store is not modified."""
    if is_value_term(e):
        return Done(strip_tyapp(e)[0], store)
    st = store.copy()
    try:
        e2, rule = _step(e, st)
    except _Stuck as err:
        return Stuck(err.reason, e, str(err), store)
    return Stepped(e2, st, rule)


def _loc_of(e) -> Optional[Location]:
    hit = strip_tyapp(e)
    return hit[0] if hit else None


def _closed(v) -> None:
    names = value_free_vars(v)
    if names:
        raise _Stuck("FreeVariable", f"free variable {names[0]}")


def _alloc(st: Store, region: Region, value) -> Location:
    if region not in st.regions:
        raise _Stuck("MissingRegion", f"region {region} is not in the store")
    loc = st.fresh_loc(region)
    st.regions[region].cells[loc] = value
    return loc


def _new_region(st: Store, size: Size, site: int) -> Location:
    rho = st.fresh_region()
    st.regions[rho] = InnerStore(size)
    st.origins[rho] = site
    return _alloc(st, rho, UNIT_VALUE)


def _place_region(place) -> Region:
    region = place.region
    if isinstance(region, Region):
        return region
    hit = strip_tyapp(region.expr)
    if hit is None:
        raise _Stuck("FreeVariable", "regionOf of an unevaluated term")
    return hit[0].region


def _congruence(e, st, name: str):
    sub = getattr(e, name)
    e2, fired = _step(sub, st)
    return replace(e, **{name: e2}), fired


def _step(e, st: Store):
    if isinstance(e, Var):
        raise _Stuck("FreeVariable", f"free variable {e.name}")

    if isinstance(e, Alloc):
        if not is_value_term(e.into):
            return _congruence(e, st, "into")
        _closed(e.value)
        sv = size_of_value(e.value)
        if not size_leq(sv, e.size):
            raise _Stuck("AnnotationTooSmall", f"value of size {sv} annotated with {e.size}")
        loc = _alloc(st, _loc_of(e.into).region, e.value)
        return Loc(loc), "e-valL"

    if isinstance(e, App):
        if not is_value_term(e.fn):
            return _congruence(e, st, "fn")
        if not is_value_term(e.arg):
            return _congruence(e, st, "arg")
        floc, place = strip_tyapp(e.fn)
        fn = st.lookup(floc)
        if isinstance(fn, Lam):
            return substitute_value_term(fn.body, fn.param, e.arg), "e-appL"
        if isinstance(fn, BigLam):
            body = fn.body
            if place is not None:
                body = instantiate_term(body, fn.tyvar, place.ty, fn.regvar, _place_region(place))
            if fn.self_name is not None and fn.self_name != fn.param:
                body = substitute_value_term(body, fn.self_name, Loc(floc))
            return substitute_value_term(body, fn.param, e.arg), "e-appL"
        raise _Stuck("NotAFunctionValue", f"location {floc} does not hold a function")

    if isinstance(e, Ref):
        if not is_value_term(e.expr):
            return _congruence(e, st, "expr")
        target = _loc_of(e.expr)
        return Loc(_alloc(st, target.region, LocVal(target))), "e-refL"

    if isinstance(e, Deref):
        if not is_value_term(e.expr):
            return _congruence(e, st, "expr")
        cell = st.lookup(_loc_of(e.expr))
        if not isinstance(cell, LocVal):
            raise _Stuck("NotAReference", "dereferencing a cell that holds no location")
        return Loc(cell.loc), "e-derefL"

    if isinstance(e, Assign):
        if not is_value_term(e.target):
            return _congruence(e, st, "target")
        if not is_value_term(e.value):
            return _congruence(e, st, "value")
        target = _loc_of(e.target)
        cell = st.lookup(target)
        if not isinstance(cell, LocVal):
            raise _Stuck("NotAReference", "assigning through a cell that holds no location")
        st.regions[target.region].cells[target] = LocVal(_loc_of(e.value))
        return Loc(GLOBAL_UNIT), "e-assignL"

    if isinstance(e, Seq):
        if not is_value_term(e.first):
            return _congruence(e, st, "first")
        return e.second, "e-seqNext"

    if isinstance(e, If):
        if not is_value_term(e.cond):
            return _congruence(e, st, "cond")
        cell = st.lookup(_loc_of(e.cond))
        if not isinstance(cell, BoolLit):
            raise _Stuck("NotABool", "branching on a cell that holds no boolean")
        return (e.then, "e-ifTrue") if cell.value else (e.orelse, "e-ifFalse")

    if isinstance(e, Let):
        if not is_value_term(e.bound):
            return _congruence(e, st, "bound")
        return substitute_value_term(e.body, e.name, e.bound), "e-letL"

    if isinstance(e, TyApp):
        # a type application of a value is itself a value; only the inside steps
        return _congruence(e, st, "fn")

    if isinstance(e, Fix):
        if not is_value_term(e.at):
            return _congruence(e, st, "at")
        closure = replace(e.fn, self_name=e.name)
        _closed(closure)
        sv = size_of_value(closure)
        if not size_leq(sv, e.size):
            raise _Stuck("AnnotationTooSmall", f"function of size {sv} annotated with {e.size}")
        loc = _alloc(st, _loc_of(e.at).region, closure)
        return substitute_value_term(e.body, e.name, Loc(loc)), "e-fixL"

    if isinstance(e, NewRgn):
        return Loc(_new_region(st, e.size, e.site)), "e-newrgn"

    if isinstance(e, FreeRgn):
        if not is_value_term(e.expr):
            return _congruence(e, st, "expr")
        region = _loc_of(e.expr).region
        if region == GLOBAL:
            raise _Stuck("GlobalFree", "the global region cannot be freed")
        if region not in st.regions:
            raise _Stuck("MissingRegion", f"region {region} is not in the store")
        del st.regions[region]
        return Loc(GLOBAL_UNIT), "e-freergnL"

    if isinstance(e, Split):
        if not is_value_term(e.expr):
            return _congruence(e, st, "expr")
        parent = _loc_of(e.expr).region
        if parent not in st.regions:
            raise _Stuck("MissingRegion", f"region {parent} is not in the store")
        inner = st.regions[parent]
        inner.max_size = monus(inner.max_size, e.size)
        return Loc(_new_region(st, e.size, e.site)), "e-splitL"

    if isinstance(e, Copy):
        if not is_value_term(e.src):
            return _congruence(e, st, "src")
        if not is_value_term(e.dst):
            return _congruence(e, st, "dst")
        value = st.lookup(_loc_of(e.src))
        dst = _loc_of(e.dst)
        st.lookup(dst)
        return Loc(_alloc(st, dst.region, value)), "e-copyL"

    if isinstance(e, BinOp):
        if not is_value_term(e.left):
            return _congruence(e, st, "left")
        if not is_value_term(e.right):
            return _congruence(e, st, "right")
        left, right = _loc_of(e.left), _loc_of(e.right)
        a, b = st.lookup(left), st.lookup(right)
        if e.op == "==":
            if type(a) is not type(b) or isinstance(a, (Lam, BigLam, LocVal)):
                raise _Stuck("NotAnInteger", "== compares two base values of one type")
            result = BoolLit(a == b)
        else:
            if not isinstance(a, IntLit) or not isinstance(b, IntLit):
                raise _Stuck("NotAnInteger", f"{e.op} on a cell that holds no integer")
            if e.op == "+":
                result = IntLit(a.value + b.value)
            elif e.op == "-":
                result = IntLit(a.value - b.value)
            else:
                result = BoolLit(a.value > b.value)
        return Loc(_alloc(st, left.region, result)), "e-binop"

    raise TypeError(f"not a term: {e!r}")


# ---------------------------------------------------------------------------
# iteration


@dataclass(frozen=True)
class Snapshot:
    index: int
    term: object
    store: Store = field(compare=False)
    rule: Optional[str]

    def to_json(self) -> dict:
        from .printer import print_term
        return {"index": self.index, "rule": self.rule, "term": print_term(self.term),
                "store": self.store.to_json()}


def initial_store() -> Store:
    return Store()


def evaluate(e, store: Optional[Store] = None, fuel: Optional[int] = None):
    """Run ``e`` to a value.  Returns Done, Stuck or OutOfFuel; ``steps`` on
    the outcome's store is not tracked, use ``trace`` for the full run."""
    outcome, _ = _run(e, store, fuel, keep=False)
    return outcome


def trace(e, store: Optional[Store] = None, fuel: Optional[int] = None):
    """Every configuration of the run, starting with the initial one, and
    the final outcome."""
    outcome, snaps = _run(e, store, fuel, keep=True)
    return snaps, outcome


def _run(e, store, fuel, keep: bool):
    st = store if store is not None else initial_store()
    budget = default_fuel() if fuel is None else fuel
    if budget <= 0:
        raise ValueError("fuel must be positive")
    snaps = [Snapshot(0, e, st, None)] if keep else []
    for n in range(budget + 1):
        result = step(e, st)
        if isinstance(result, (Done, Stuck)):
            return result, snaps
        if n == budget:
            break
        e, st = result.term, result.store
        if keep:
            snaps.append(Snapshot(n + 1, e, st, result.rule))
    return OutOfFuel(e, budget, st), snaps
