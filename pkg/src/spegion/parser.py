"""Recursive-descent parser for the ``.spg`` surface syntax.

Grammar, loosest binding first::

    expr    ::= let x = expr in expr
              | letrec f {a, r, e} binder : place = expr [s] at app in expr
              | if expr then expr else expr
              | assign (; expr)?
    assign  ::= cmp (:= cmp)?
    cmp     ::= add ((== | >) add)?
    add     ::= alloc ((+ | -) alloc)*
    alloc   ::= value [s]? at app | copy app into app | app
    app     ::= prefix prefix*
    prefix  ::= ! prefix | ref prefix | freergn prefix | split [s]? prefix | postfix
    postfix ::= atom (@ place)*
    atom    ::= x | glob | %region.index | newrgn [s]? | ( expr )

Values are integer literals, ``true``, ``false``, ``()`` and parenthesized
``fun`` / ``Fun`` abstractions.  A missing size means ``w``.  ``#`` starts a
comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from .effects import normalize
from .sizes import OMEGA, parse_size
from .syntax import (BOOL, BOT, GLOBAL, GLOBAL_UNIT, INT, UNIT, Alloc, AllocEff, App,
                     Assign, BigLam, BinOp, BoolLit, Copy, Deref, EffSeq, EffVar, Fix,
                     FnT, Free, FreeRgn, Fresh, If, IntLit, Join, Lam, Let, Loc,
                     Location, NewRgn, Rec, Ref, RefT, Region, RegionOf, SchemeT, Seq,
                     Span, Split, SplitEff, TyApp, TypeWithPlace, TyVar, UNIT_VALUE,
                     Var, seq_all)

KEYWORDS = {
    "let", "letrec", "in", "if", "then", "else", "fun", "Fun", "ref", "newrgn",
    "freergn", "split", "copy", "into", "at", "true", "false", "glob", "regionOf",
    "int", "unit", "bool", "forall",
}

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<loc>%[A-Za-z_][A-Za-z0-9_]*\.[0-9]+)
  | (?P<int>[0-9]+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<sym>:=|==|->|\\/|\]->|[()\[\]{},:;=>+\-!@.×*ω])
""", re.VERBOSE)


class ParseError(Exception):
    def __init__(self, message: str, span: Optional[Span] = None):
        where = f"{span.line}:{span.col}: " if span else ""
        super().__init__(where + message)
        self.message = message
        self.span = span


@dataclass(frozen=True)
class Token:
    kind: str  # "int" | "ident" | "kw" | "sym" | "loc" | "eof"
    text: str
    span: Span


def tokenize(text: str) -> list:
    out = []
    pos, line, col = 0, 1, 1
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", Span(line, col))
        kind = m.lastgroup
        lexeme = m.group()
        if kind == "nl":
            line, col = line + 1, 1
        else:
            if kind not in ("ws", "comment"):
                if kind == "ident" and lexeme in KEYWORDS:
                    kind = "kw"
                out.append(Token(kind, lexeme, Span(line, col, len(lexeme))))
            col += len(lexeme)
        pos = m.end()
    out.append(Token("eof", "", Span(line, col, 0)))
    return out


def region_from_name(name: str) -> Region:
    """Region named in source text.  ``glob`` is the global region, ``s<k>``
    and ``d<k>`` are checker and runtime names, anything else a variable."""
    if name == "glob":
        return GLOBAL
    if re.fullmatch(r"s[0-9]+", name):
        return Region(name, "site")
    if re.fullmatch(r"d[0-9]+", name):
        return Region(name, "dyn")
    return Region(name, "var")


class Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    # -- token helpers ------------------------------------------------------

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def at(self, text: str) -> bool:
        return self.tok.kind in ("sym", "kw") and self.tok.text == text

    def advance(self) -> Token:
        t = self.tok
        self.i += 1
        return t

    def expect(self, text: str) -> Token:
        if not self.at(text):
            raise ParseError(f"expected {text!r}, found {self.tok.text or 'end of input'!r}", self.tok.span)
        return self.advance()

    def ident(self) -> str:
        if self.tok.kind != "ident":
            raise ParseError(f"expected a name, found {self.tok.text or 'end of input'!r}", self.tok.span)
        return self.advance().text

    def error(self, message: str):
        raise ParseError(message, self.tok.span)

    # -- programs -----------------------------------------------------------

    def program(self):
        if self.tok.kind == "eof":
            self.error("empty program")
        e = self.expr()
        if self.tok.kind != "eof":
            self.error(f"unexpected {self.tok.text!r}")
        return e

    def expr(self):
        span = self.tok.span
        if self.at("let"):
            self.advance()
            name = self.ident()
            self.expect("=")
            bound = self.expr()
            self.expect("in")
            return Let(name, bound, self.expr(), span=span)
        if self.at("letrec"):
            return self.letrec()
        if self.at("if"):
            self.advance()
            cond = self.expr()
            self.expect("then")
            then = self.expr()
            self.expect("else")
            return If(cond, then, self.expr(), span=span)
        first = self.assign()
        if self.at(";"):
            self.advance()
            return Seq(first, self.expr(), span=span)
        return first

    def letrec(self):
        span = self.expect("letrec").span
        name = self.ident()
        tyvar, regvar, effvar = self.binders()
        param, ann = self.binder()
        result = None
        if self.at(":"):
            self.advance()
            result = self.place()
        self.expect("=")
        body = self.expr()
        size = self.opt_size()
        self.expect("at")
        target = self.app()
        self.expect("in")
        rest = self.expr()
        fn = BigLam(tyvar, regvar, effvar, param, body, ann, result)
        return Fix(name, fn, size, target, rest, span=span)

    def binders(self):
        self.expect("{")
        a = self.ident()
        self.expect(",")
        r = self.ident()
        self.expect(",")
        e = self.ident()
        self.expect("}")
        return a, r, e

    def binder(self):
        if self.at("("):
            self.advance()
            name = self.ident()
            self.expect(":")
            ann = self.place()
            self.expect(")")
            return name, ann
        return self.ident(), None

    def assign(self):
        span = self.tok.span
        left = self.cmp()
        if self.at(":="):
            self.advance()
            return Assign(left, self.cmp(), span=span)
        return left

    def cmp(self):
        span = self.tok.span
        left = self.add()
        if self.at("==") or self.at(">"):
            op = self.advance().text
            return BinOp(op, left, self.add(), span=span)
        return left

    def add(self):
        span = self.tok.span
        left = self.alloc()
        while self.at("+") or self.at("-"):
            op = self.advance().text
            left = BinOp(op, left, self.alloc(), span=span)
        return left

    def starts_value(self) -> bool:
        t = self.tok
        if t.kind == "int" or (t.kind == "kw" and t.text in ("true", "false")):
            return True
        if self.at("("):
            nxt = self.peek()
            return (nxt.kind == "sym" and nxt.text == ")") or (nxt.kind == "kw" and nxt.text in ("fun", "Fun"))
        return False

    def alloc(self):
        span = self.tok.span
        if self.at("copy"):
            self.advance()
            src = self.app()
            self.expect("into")
            return Copy(src, self.app(), span=span)
        if self.starts_value():
            value = self.value()
            size = self.opt_size()
            if not self.at("at"):
                self.error("a value must be allocated with 'at'")
            self.advance()
            return Alloc(value, size, self.app(), span=span)
        return self.app()

    def value(self):
        t = self.tok
        if t.kind == "int":
            self.advance()
            return IntLit(int(t.text))
        if self.at("true") or self.at("false"):
            self.advance()
            return BoolLit(t.text == "true")
        self.expect("(")
        if self.at(")"):
            self.advance()
            return UNIT_VALUE
        if self.at("fun"):
            self.advance()
            param, ann = self.binder()
            self.expect("->")
            body = self.expr()
            self.expect(")")
            return Lam(param, body, ann)
        self.expect("Fun")
        self_name = None
        if self.tok.kind == "ident":
            self_name = self.ident()
        tyvar, regvar, effvar = self.binders()
        param, ann = self.binder()
        result = None
        if self.at(":"):
            self.advance()
            result = self.place()
        self.expect("->")
        body = self.expr()
        self.expect(")")
        return BigLam(tyvar, regvar, effvar, param, body, ann, result, self_name)

    def opt_size(self):
        if not self.at("["):
            return OMEGA
        self.advance()
        size = self.size()
        self.expect("]")
        return size

    def size(self):
        t = self.tok
        if t.kind == "int":
            self.advance()
            return int(t.text)
        if (t.kind == "ident" and t.text in ("w", "omega")) or (t.kind == "sym" and t.text == "ω"):
            self.advance()
            return OMEGA
        self.error(f"expected a size, found {t.text!r}")

    def starts_prefix(self) -> bool:
        t = self.tok
        if t.kind in ("ident", "loc"):
            return True
        if t.kind == "kw" and t.text in ("glob", "newrgn", "ref", "freergn", "split"):
            return True
        if t.kind == "sym" and t.text == "!":
            return True
        if t.kind == "sym" and t.text == "(" and not self.starts_value():
            return True
        return False

    def app(self):
        span = self.tok.span
        fn = self.prefix()
        while self.starts_prefix():
            fn = App(fn, self.prefix(), span=span)
        return fn

    def prefix(self):
        span = self.tok.span
        if self.at("!"):
            self.advance()
            return Deref(self.prefix(), span=span)
        if self.at("ref"):
            self.advance()
            return Ref(self.prefix(), span=span)
        if self.at("freergn"):
            self.advance()
            return FreeRgn(self.prefix(), span=span)
        if self.at("split"):
            self.advance()
            size = self.opt_size()
            return Split(size, self.prefix(), span=span)
        return self.postfix()

    def postfix(self):
        span = self.tok.span
        e = self.atom()
        while self.at("@"):
            self.advance()
            e = TyApp(e, self.place(), span=span)
        return e

    def atom(self):
        t = self.tok
        if t.kind == "ident":
            self.advance()
            return Var(t.text, span=t.span)
        if t.kind == "loc":
            self.advance()
            return Loc(parse_location(t.text), span=t.span)
        if self.at("glob"):
            self.advance()
            return Loc(GLOBAL_UNIT, span=t.span)
        if self.at("newrgn"):
            self.advance()
            return NewRgn(self.opt_size(), span=t.span)
        if self.at("("):
            if self.starts_value():
                self.error("a value must be allocated with '[size] at'")
            self.advance()
            e = self.expr()
            self.expect(")")
            return e
        if t.kind == "int" or self.at("true") or self.at("false"):
            self.error("a value must be allocated with '[size] at'")
        self.error(f"unexpected {t.text or 'end of input'!r}")

    # -- types --------------------------------------------------------------

    def region(self):
        if self.at("glob"):
            self.advance()
            return GLOBAL
        if self.at("regionOf"):
            self.advance()
            self.expect("(")
            e = self.expr()
            self.expect(")")
            return RegionOf(e)
        return region_from_name(self.ident())

    def place(self) -> TypeWithPlace:
        self.expect("(")
        ty = self.type()
        self.expect(",")
        region = self.region()
        self.expect(")")
        return TypeWithPlace(ty, region)

    def type(self):
        t = self.tok
        if self.at("int"):
            self.advance()
            return INT
        if self.at("unit"):
            self.advance()
            return UNIT
        if self.at("bool"):
            self.advance()
            return BOOL
        if self.at("ref"):
            self.advance()
            return RefT(self.type())
        if self.at("forall"):
            self.advance()
            a, r, e = self.binders()
            self.expect(".")
            body = self.type()
            if not isinstance(body, FnT):
                self.error("a type scheme must wrap a function type")
            return SchemeT(a, r, e, body)
        if t.kind == "ident":
            self.advance()
            return TyVar(t.text)
        if self.at("("):
            self.advance()
            inner = self.type()
            if self.at(")"):
                self.advance()
                return inner
            self.expect(",")
            region = self.region()
            self.expect(")")
            return self.arrow(TypeWithPlace(inner, region))
        self.error(f"expected a type, found {t.text or 'end of input'!r}")

    def arrow(self, dom: TypeWithPlace):
        self.expect("-")
        self.expect("[")
        latent = self.effect()
        reads = set()
        if self.at(";"):
            self.advance()
            while not self.at("]->"):
                reads.add(self.region())
        self.expect("]->")
        return FnT(dom, latent, self.place(), frozenset(reads))

    # -- effects ------------------------------------------------------------

    def effect(self):
        return normalize(self._effect())

    def _effect(self):
        items = [self._effect_term()]
        while (self.tok.kind == "ident" and self.tok.text == "x") or self.at("×") or self.at("*"):
            self.advance()
            items.append(self._effect_term())
        return seq_all(items)

    def _effect_term(self):
        if self.at("("):
            self.advance()
            left = self._effect()
            if self.at("\\/"):
                self.advance()
                right = self._effect()
                self.expect(")")
                return Join(left, right)
            self.expect(")")
            return left
        self.expect("{")
        atom = self._effect_atom()
        self.expect("}")
        return atom

    def _effect_atom(self):
        t = self.tok
        word = t.text if t.kind in ("ident", "kw") else None
        if word == "bot" or (t.kind == "sym" and t.text == "⊥"):
            self.advance()
            return BOT
        if word == "fresh":
            self.advance()
            r = self.region()
            return Fresh(r, self.size())
        if word == "free":
            self.advance()
            return Free(self.region())
        if word == "split":
            self.advance()
            parent = self.region()
            s = self.size()
            return SplitEff(parent, s, self.region())
        if word == "alloc":
            self.advance()
            s = self.size()
            return AllocEff(s, self.region())
        if word == "rec":
            self.advance()
            var = self.ident()
            self.expect(":")
            return Rec(var, self._effect())
        if t.kind == "ident":
            self.advance()
            return EffVar(t.text)
        self.error(f"expected an effect, found {t.text!r}")


def parse_location(text: str) -> Location:
    name, _, index = text[1:].rpartition(".")
    return Location(region_from_name(name), int(index))


def parse(text: str):
    """Parse a whole program."""
    return Parser(text).program()


def parse_type(text: str):
    p = Parser(text)
    t = p.type()
    if p.tok.kind != "eof":
        p.error(f"unexpected {p.tok.text!r}")
    return t


def parse_place(text: str) -> TypeWithPlace:
    p = Parser(text)
    mu = p.place()
    if p.tok.kind != "eof":
        p.error(f"unexpected {p.tok.text!r}")
    return mu


def parse_effect(text: str):
    p = Parser(text)
    phi = p.effect()
    if p.tok.kind != "eof":
        p.error(f"unexpected {p.tok.text!r}")
    return phi
