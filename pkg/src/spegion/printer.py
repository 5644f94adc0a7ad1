"""Concrete syntax printing for terms, values, types and places.

Output parses back to an equal term.
"""

from __future__ import annotations

from .effects import render_effect
from .sizes import format_size
from .syntax import (GLOBAL, GLOBAL_UNIT, Alloc, App, Assign, BigLam, BinOp, BoolLit,
                     BoolT, Copy, Deref, Fix, FnT, FreeRgn, If, IntLit, IntT, Lam,
                     Let, Loc, LocVal, NewRgn, Ref, RefT, Region, RegionOf, SchemeT,
                     Seq, Split, TyApp, TypeWithPlace, TyVar, UnitLit, UnitT, Var)

# precedence levels, loosest first
EXPR, ASSIGN, CMP, ADD, ALLOC, APP, PREFIX, POSTFIX, ATOM = range(9)


def print_region(r) -> str:
    if isinstance(r, RegionOf):
        return f"regionOf({print_term(r.expr, PREFIX)})"
    return r.name


def print_type(t) -> str:
    if isinstance(t, IntT):
        return "int"
    if isinstance(t, UnitT):
        return "unit"
    if isinstance(t, BoolT):
        return "bool"
    if isinstance(t, TyVar):
        return t.name
    if isinstance(t, RefT):
        inner = print_type(t.inner)
        if isinstance(t.inner, (FnT, SchemeT)):
            inner = f"({inner})"
        return f"ref {inner}"
    if isinstance(t, FnT):
        eff = render_effect(t.latent, normalize_names=False)
        if t.reads:
            eff += "; " + " ".join(sorted(r.name for r in t.reads))
        return f"{print_place(t.domain)} -[{eff}]-> {print_place(t.codomain)}"
    if isinstance(t, SchemeT):
        return f"forall {{{t.tyvar}, {t.regvar}, {t.effvar}}}. {print_type(t.body)}"
    raise TypeError(f"not a type: {t!r}")


def print_place(mu: TypeWithPlace) -> str:
    return f"({print_type(mu.ty)}, {print_region(mu.region)})"


def _size(s) -> str:
    return f"[{format_size(s)}]"


def _binder(name: str, ann) -> str:
    if ann is None:
        return name
    return f"({name} : {print_place(ann)})"


def print_value(v) -> str:
    if isinstance(v, IntLit):
        return str(v.value)
    if isinstance(v, BoolLit):
        return "true" if v.value else "false"
    if isinstance(v, UnitLit):
        return "()"
    if isinstance(v, LocVal):
        return _loc(v.loc)
    if isinstance(v, Lam):
        return f"(fun {_binder(v.param, v.annotation)} -> {print_term(v.body)})"
    if isinstance(v, BigLam):
        head = "Fun" if v.self_name is None else f"Fun {v.self_name}"
        result = "" if v.result is None else f" : {print_place(v.result)}"
        return (f"({head} {{{v.tyvar}, {v.regvar}, {v.effvar}}} "
                f"{_binder(v.param, v.annotation)}{result} -> {print_term(v.body)})")
    raise TypeError(f"not a value: {v!r}")


def _loc(loc) -> str:
    if loc == GLOBAL_UNIT:
        return "glob"
    return f"%{loc.region.name}.{loc.index}"


BINOP_LEVEL = {"+": ADD, "-": ADD, "==": CMP, ">": CMP}


def print_term(e, level: int = EXPR) -> str:
    text, own = _term(e)
    return f"({text})" if own < level else text


def _term(e):
    if isinstance(e, Var):
        return e.name, ATOM
    if isinstance(e, Loc):
        return _loc(e.loc), ATOM
    if isinstance(e, NewRgn):
        return f"newrgn {_size(e.size)}", ATOM
    if isinstance(e, TyApp):
        return f"{print_term(e.fn, POSTFIX)} @ {print_place(e.place)}", POSTFIX
    if isinstance(e, Deref):
        return f"!{print_term(e.expr, PREFIX)}", PREFIX
    if isinstance(e, Ref):
        return f"ref {print_term(e.expr, PREFIX)}", PREFIX
    if isinstance(e, FreeRgn):
        return f"freergn {print_term(e.expr, PREFIX)}", PREFIX
    if isinstance(e, Split):
        return f"split {_size(e.size)} {print_term(e.expr, PREFIX)}", PREFIX
    if isinstance(e, App):
        return f"{print_term(e.fn, APP)} {print_term(e.arg, PREFIX)}", APP
    if isinstance(e, Alloc):
        return f"{print_value(e.value)} {_size(e.size)} at {print_term(e.into, APP)}", ALLOC
    if isinstance(e, Copy):
        return f"copy {print_term(e.src, APP)} into {print_term(e.dst, APP)}", ALLOC
    if isinstance(e, BinOp):
        lvl = BINOP_LEVEL[e.op]
        if lvl == ADD:
            return f"{print_term(e.left, ADD)} {e.op} {print_term(e.right, ALLOC)}", ADD
        return f"{print_term(e.left, ADD)} {e.op} {print_term(e.right, ADD)}", CMP
    if isinstance(e, Assign):
        return f"{print_term(e.target, CMP)} := {print_term(e.value, CMP)}", ASSIGN
    if isinstance(e, Seq):
        return f"{print_term(e.first, ASSIGN)}; {print_term(e.second, EXPR)}", EXPR
    if isinstance(e, If):
        return (f"if {print_term(e.cond)} then {print_term(e.then)} "
                f"else {print_term(e.orelse)}"), EXPR
    if isinstance(e, Let):
        return f"let {e.name} = {print_term(e.bound)} in {print_term(e.body)}", EXPR
    if isinstance(e, Fix):
        fn = e.fn
        result = "" if fn.result is None else f" : {print_place(fn.result)}"
        return (f"letrec {e.name} {{{fn.tyvar}, {fn.regvar}, {fn.effvar}}} "
                f"{_binder(fn.param, fn.annotation)}{result} = ({print_term(fn.body)}) "
                f"{_size(e.size)} at {print_term(e.at, APP)} in {print_term(e.body)}"), EXPR
    raise TypeError(f"not a term: {e!r}")
