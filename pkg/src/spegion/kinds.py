"""Kinding judgement for sizes, regions, types, places and effects."""

from __future__ import annotations

from typing import Mapping

from .sizes import SizeOp, SizeVar, is_concrete
from .syntax import (EFFECT, GLOBAL, REGION, SIZE, TYPE, AllocEff, AnyKind,
                     ArrowKind, BoolT, Bot, EffSeq, EffVar, Free, Fresh, FnT,
                     IntT, Join, Rec, RefT, Region, RegionOf, SchemeT, SplitEff,
                     TypeWithPlace, TyVar, UnitT)

SIZE_OPS = ("+", "*", "-", "=", "!=", "<=", ">=")


class KindError(Exception):
    def __init__(self, reason: str, message: str):
        super().__init__(message)
        self.reason = reason  # "unbound" | "mismatch"


def _lookup(K: Mapping, name: str, expected: AnyKind, what: str) -> AnyKind:
    if name not in K:
        raise KindError("unbound", f"unbound {what} variable {name}")
    kind = K[name]
    if kind != expected:
        raise KindError("mismatch", f"{name} has kind {kind}, expected {expected}")
    return kind


def kind_of_size(K: Mapping, s, *, fixtures: bool = False) -> AnyKind:
    if is_concrete(s):
        return SIZE
    if isinstance(s, SizeVar):
        return _lookup(K, s.name, SIZE, "size")
    if isinstance(s, SizeOp):
        if not fixtures:
            raise KindError("mismatch", f"compound size {s} is only accepted in fixture mode")
        if s.op not in SIZE_OPS:
            raise KindError("mismatch", f"unknown size operator {s.op}")
        kind_of_size(K, s.left, fixtures=fixtures)
        kind_of_size(K, s.right, fixtures=fixtures)
        return SIZE
    raise KindError("mismatch", f"not a size: {s!r}")


def kind_of_region(K: Mapping, r) -> AnyKind:
    if isinstance(r, RegionOf):
        # regionOf names the region of a term; the term is checked by the typer
        return REGION
    if not isinstance(r, Region):
        raise KindError("mismatch", f"not a region: {r!r}")
    if r == GLOBAL or not r.is_var:
        return REGION
    return _lookup(K, r.name, REGION, "region")


def kind_of_type(K: Mapping, t) -> AnyKind:
    if isinstance(t, (IntT, UnitT, BoolT)):
        return TYPE
    if isinstance(t, TyVar):
        return _lookup(K, t.name, TYPE, "type")
    if isinstance(t, RefT):
        _expect(kind_of_type(K, t.inner), TYPE, "reference payload")
        return TYPE
    if isinstance(t, FnT):
        kind_of_place(K, t.domain)
        kind_of_effect(K, t.latent)
        kind_of_place(K, t.codomain)
        for r in t.reads:
            kind_of_region(K, r)
        return TYPE
    if isinstance(t, SchemeT):
        inner = dict(K)
        inner.update({t.tyvar: TYPE, t.regvar: REGION, t.effvar: EFFECT})
        kind_of_type(inner, t.body)
        return TYPE
    raise KindError("mismatch", f"not a type: {t!r}")


def kind_of_place(K: Mapping, mu: TypeWithPlace) -> AnyKind:
    _expect(kind_of_type(K, mu.ty), TYPE, "type component")
    _expect(kind_of_region(K, mu.region), REGION, "place component")
    return TYPE


def kind_of_effect(K: Mapping, phi, *, fixtures: bool = False) -> AnyKind:
    if isinstance(phi, Bot):
        return EFFECT
    if isinstance(phi, Fresh):
        kind_of_region(K, phi.region)
        kind_of_size(K, phi.size, fixtures=fixtures)
        return EFFECT
    if isinstance(phi, Free):
        kind_of_region(K, phi.region)
        return EFFECT
    if isinstance(phi, SplitEff):
        kind_of_region(K, phi.parent)
        kind_of_size(K, phi.size, fixtures=fixtures)
        kind_of_region(K, phi.child)
        return EFFECT
    if isinstance(phi, AllocEff):
        kind_of_size(K, phi.size, fixtures=fixtures)
        kind_of_region(K, phi.region)
        return EFFECT
    if isinstance(phi, EffVar):
        return _lookup(K, phi.name, EFFECT, "effect")
    if isinstance(phi, Rec):
        inner = dict(K)
        inner[phi.var] = EFFECT
        return kind_of_effect(inner, phi.body, fixtures=fixtures)
    if isinstance(phi, (EffSeq, Join)):
        kind_of_effect(K, phi.left, fixtures=fixtures)
        kind_of_effect(K, phi.right, fixtures=fixtures)
        return EFFECT
    raise KindError("mismatch", f"not an effect: {phi!r}")


def apply_kind(fn_kind: AnyKind, arg_kind: AnyKind) -> AnyKind:
    """Kind of a type-level application.  No surface form produces one."""
    if not isinstance(fn_kind, ArrowKind):
        raise KindError("mismatch", f"cannot apply a type of kind {fn_kind}")
    _expect(arg_kind, fn_kind.domain, "argument")
    return fn_kind.codomain


def _expect(got: AnyKind, want: AnyKind, what: str) -> None:
    if got != want:
        raise KindError("mismatch", f"{what} has kind {got}, expected {want}")
