"""Type-and-effect checking.

A judgement assigns an expression a type-with-place, an effect and the set of
regions still live afterwards.  Regions are tracked in a ``LivenessEnv``; the
global region is always live.

Function bodies are checked once, when the function value is typed, under a
universal environment in which every region is live except the ones the body
itself frees.  What the body needs from its caller is recorded on the arrow
type: the regions it reads (``FnT.reads``) plus the regions its latent effect
allocates into or frees.  Application checks those against the caller's
environment.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from typing import Mapping, Optional

from .effects import (Composer, CompositionError, created_regions, effect_to_json,
                      free_allocs, normalize, render_effect)
from .kinds import KindError, kind_of_place, kind_of_size
from .sizes import OMEGA, Size, size_leq
from .syntax import (BOOL, BOT, EFFECT, GLOBAL, INT, REGION, TYPE, UNIT, Alloc,
                     AllocEff, App, Assign, BigLam, BinOp, BoolLit, BoolT, Contexts,
                     Copy, Deref, EffSeq, EffVar, Effect, Fix, Free, FreeRgn, Fresh,
                     FnT, If, IntLit, IntT, Join, Lam, Let, Loc, LocVal, NewRgn, Rec,
                     Ref, RefT, Region, RegionOf, SchemeT, Seq, Split, SplitEff,
                     TyApp, TypeWithPlace, TyVar, UnitLit, UnitT, Var,
                     map_effect_regions, map_type_regions, site_region, strip_tyapp,
                     substitute_effect_var, substitute_type_vars, value_free_vars,
                     value_locations)

log = logging.getLogger(__name__)

BASE_TYPES = (IntT, BoolT, UnitT)


class TypeCheckError(Exception):
    """A rejected program.

    ``kind`` is one of Unbound, Mismatch, NotAFunction, NotARef, NotBool,
    NotUnitSeq, RegionNotLive, EffectComposition, AllocTooSmall,
    SchemeExpected.  ``rule`` names the typing rule that failed.
    """

    def __init__(self, kind: str, rule: str, message: str, span=None,
                 effect: Optional[Effect] = None,
                 cause: Optional[CompositionError] = None):
        super().__init__(message)
        self.kind = kind
        self.rule = rule
        self.message = message
        self.span = span
        self.effect = effect
        self.cause = cause

    @property
    def detail_kind(self) -> str:
        """The composition failure for EffectComposition, else ``kind``."""
        return self.cause.kind if self.cause is not None else self.kind

    def to_json(self) -> dict:
        out = {"rule": self.rule, "kind": self.kind, "message": self.message,
               "span": self.span.to_json() if self.span else None}
        if self.cause is not None:
            out["composition"] = self.cause.to_json()
        if self.effect is not None:
            out["effect"] = render_effect(self.effect, normalize_names=False)
        return out


class StoreTypeError(Exception):
    def __init__(self, region: Region, reason: str):
        super().__init__(f"region {region}: {reason}")
        self.region = region
        self.reason = reason


# ---------------------------------------------------------------------------
# liveness


class LivenessEnv:
    """Regions that may be used, each with its declared size.

    A universal environment treats every region as live except the ones in
    ``dead``; it is used for function bodies.  ``extra`` counts instances of a
    static name created while an older instance is still live (a recursive
    call re-running a creation site); freeing one pops the newest.
    """

    __slots__ = ("_sizes", "_dead", "_extra", "_born")

    def __init__(self, sizes: Optional[Mapping[Region, Size]] = None,
                 dead: frozenset = frozenset(), extra: Optional[Mapping[Region, int]] = None,
                 born: frozenset = frozenset()):
        self._sizes = None if sizes is None else dict(sizes)
        if self._sizes is not None:
            self._sizes[GLOBAL] = OMEGA
        self._dead = frozenset(dead)
        self._extra = {r: n for r, n in (extra or {}).items() if n > 0}
        # universal mode: regions created inside this environment
        self._born = frozenset(born)

    @classmethod
    def initial(cls) -> "LivenessEnv":
        return cls({GLOBAL: OMEGA})

    @classmethod
    def universal(cls) -> "LivenessEnv":
        return cls(None)

    @property
    def is_universal(self) -> bool:
        return self._sizes is None

    def __contains__(self, r: Region) -> bool:
        if r == GLOBAL:
            return True
        if self._sizes is None:
            return r not in self._dead
        return r in self._sizes

    def declared(self, r: Region) -> Optional[Size]:
        if self._sizes is None:
            return None
        return self._sizes.get(r)

    def regions(self) -> frozenset:
        if self._sizes is None:
            raise ValueError("a universal environment has no finite region set")
        return frozenset(self._sizes)

    def _copy(self, **changes) -> "LivenessEnv":
        fields = {"sizes": self._sizes, "dead": self._dead, "extra": self._extra,
                  "born": self._born}
        fields.update(changes)
        return LivenessEnv(**fields)

    def add(self, r: Region, size: Size = OMEGA) -> "LivenessEnv":
        if r == GLOBAL:
            return self
        if self._sizes is None:
            if r in self._born and r not in self._dead:
                return self._copy(extra={**self._extra, r: self._extra.get(r, 0) + 1})
            return self._copy(dead=self._dead - {r}, born=self._born | {r})
        if r in self._sizes:
            return self._copy(extra={**self._extra, r: self._extra.get(r, 0) + 1})
        return self._copy(sizes={**self._sizes, r: size})

    def remove(self, r: Region, *, strict: bool = True) -> "LivenessEnv":
        if r == GLOBAL:
            raise ValueError("the global region is never removed")
        if self._extra.get(r, 0) > 0:
            return self._copy(extra={**self._extra, r: self._extra[r] - 1})
        if self._sizes is None:
            return self._copy(dead=self._dead | {r})
        if r not in self._sizes:
            if strict:
                raise ValueError(f"region {r} is not live")
            return self
        sizes = dict(self._sizes)
        del sizes[r]
        return self._copy(sizes=sizes)

    def intersect(self, other: "LivenessEnv") -> "LivenessEnv":
        extra = {r: min(n, other._extra.get(r, 0)) for r, n in self._extra.items()}
        if self._sizes is None and other._sizes is None:
            return LivenessEnv(None, self._dead | other._dead, extra, self._born & other._born)
        if self._sizes is None:
            self, other = other, self
        if other._sizes is None:
            keep = {r: s for r, s in self._sizes.items() if r not in other._dead}
        else:
            keep = {r: s for r, s in self._sizes.items() if r in other._sizes}
        return LivenessEnv(keep, extra=extra)

    def __eq__(self, other) -> bool:
        return (isinstance(other, LivenessEnv) and self._sizes == other._sizes
                and self._dead == other._dead and self._extra == other._extra
                and self._born == other._born)

    def __repr__(self) -> str:
        if self._sizes is None:
            return f"LivenessEnv(universal, dead={sorted(map(str, self._dead))})"
        return f"LivenessEnv({ {str(r): str(s) for r, s in self._sizes.items()} })"


def apply_effect_to_liveness(live: LivenessEnv, phi: Effect) -> LivenessEnv:
    """Liveness after running ``phi``: created regions become live, freed
    ones dead, and a join keeps only what both branches keep."""
    if isinstance(phi, Fresh):
        return live.add(phi.region, phi.size)
    if isinstance(phi, SplitEff):
        return live.add(phi.child, phi.size)
    if isinstance(phi, Free):
        if phi.region == GLOBAL:
            return live
        return live.remove(phi.region, strict=False)
    if isinstance(phi, EffSeq):
        return apply_effect_to_liveness(apply_effect_to_liveness(live, phi.left), phi.right)
    if isinstance(phi, Join):
        return apply_effect_to_liveness(live, phi.left).intersect(
            apply_effect_to_liveness(live, phi.right))
    if isinstance(phi, Rec):
        return apply_effect_to_liveness(live, phi.body)
    return live


# ---------------------------------------------------------------------------
# judgements


@dataclass(frozen=True)
class Judgement:
    type: TypeWithPlace
    effect: Effect
    live: LivenessEnv = field(compare=False)

    def to_json(self) -> dict:
        from .printer import print_place
        return {"type": print_place(self.type), "effect": render_effect(self.effect),
                "effect_tree": effect_to_json(self.effect)}


def value_size_bound(v) -> Size:
    """Static upper bound on the runtime size of ``v``: every free variable
    of a function becomes one location once substituted."""
    if isinstance(v, (Lam, BigLam)):
        return 1 + len(value_locations(v)) + len(value_free_vars(v))
    return 1


def normalize_type(t):
    """Normalize every latent effect inside ``t``."""
    if isinstance(t, RefT):
        return RefT(normalize_type(t.inner))
    if isinstance(t, FnT):
        return FnT(_norm_place(t.domain), normalize(t.latent), _norm_place(t.codomain),
                   frozenset(t.reads))
    if isinstance(t, SchemeT):
        return replace(t, body=normalize_type(t.body))
    return t


def _norm_place(mu: TypeWithPlace) -> TypeWithPlace:
    return TypeWithPlace(normalize_type(mu.ty), mu.region)


def _renamable(r: Region) -> bool:
    return r != GLOBAL and not r.is_var


def canonical_type(t, mapping: Optional[dict] = None):
    """``t`` with renamable regions renamed in order of first appearance."""
    mapping = {} if mapping is None else mapping
    order: list = []

    def visit_type(x):
        if isinstance(x, RefT):
            visit_type(x.inner)
        elif isinstance(x, FnT):
            visit_place(x.domain)
            visit_effect(normalize(x.latent))
            visit_place(x.codomain)
            for r in sorted(x.reads, key=lambda r: (r not in mapping, r.name)):
                note(r)
        elif isinstance(x, SchemeT):
            visit_type(x.body)

    def visit_place(mu):
        visit_type(mu.ty)
        if isinstance(mu.region, Region):
            note(mu.region)

    def visit_effect(phi):
        map_effect_regions(phi, lambda r: (note(r), r)[1])

    def note(r):
        if _renamable(r) and r not in mapping:
            mapping[r] = Region(f"#{len(mapping) + 1}", "canon")
            order.append(r)

    if isinstance(t, TypeWithPlace):
        visit_place(t)
        return TypeWithPlace(normalize_type(map_type_regions(t.ty, lambda r: mapping.get(r, r))),
                             mapping.get(t.region, t.region)
                             if isinstance(t.region, Region) else t.region)
    visit_type(t)
    return normalize_type(map_type_regions(t, lambda r: mapping.get(r, r)))


def types_alpha_equal(a, b) -> bool:
    """Equality up to a bijective renaming of non-global, non-variable regions."""
    return canonical_type(a) == canonical_type(b)


# ---------------------------------------------------------------------------
# the checker


class Checker:
    """One checking session.

    ``strict_figures`` turns off the use-after-free composition check.
    """

    def __init__(self, *, strict_figures: bool = False, fixtures: bool = False):
        self.strict_figures = strict_figures
        self.fixtures = fixtures
        self._footprints: list = []
        self._cell_cache: dict = {}

    # -- entry points -------------------------------------------------------

    def check_program(self, e, sigma: Optional[Mapping] = None,
                      live: Optional[LivenessEnv] = None) -> Judgement:
        ctx = Contexts()
        if sigma is not None:
            ctx = Contexts(ctx.kinds, ctx.gamma, dict(sigma))
        return self.type_of_expr(ctx, live or LivenessEnv.initial(), e)

    def type_of_expr(self, ctx: Contexts, live: LivenessEnv, e) -> Judgement:
        method = getattr(self, "_t_" + type(e).__name__, None)
        if method is None:
            raise TypeError(f"not a term: {e!r}")
        return method(ctx, live, e)

    def type_of_value(self, ctx: Contexts, v):
        if isinstance(v, IntLit):
            return INT
        if isinstance(v, BoolLit):
            return BOOL
        if isinstance(v, UnitLit):
            return UNIT
        if isinstance(v, LocVal):
            if v.loc not in ctx.sigma:
                raise TypeCheckError("Unbound", "t-loc", f"location {v.loc} is not in the store typing")
            return ctx.sigma[v.loc]
        if isinstance(v, Lam):
            return self._t_lambda(ctx, v)
        if isinstance(v, BigLam):
            if v.self_name is not None:
                raise TypeCheckError("Mismatch", "t-Λ",
                                     "a self-referential closure needs its home region; use cell_type")
            return self._t_biglambda(ctx, v)
        raise TypeError(f"not a value: {v!r}")

    def cell_type(self, sigma: Mapping, loc, v):
        """Type recorded in the store typing for a cell holding ``v``.

        A cell holding a location is a reference cell.
        """
        if isinstance(v, LocVal):
            if v.loc not in sigma:
                raise TypeCheckError("Unbound", "t-loc", f"location {v.loc} is not in the store typing")
            return RefT(sigma[v.loc])
        if not isinstance(v, (Lam, BigLam)):
            return self.type_of_value(Contexts(), v)
        key = (loc, v)
        if key in self._cell_cache:
            return self._cell_cache[key]
        ctx = Contexts(sigma=dict(sigma))
        if isinstance(v, BigLam) and v.self_name is not None:
            t = self._type_recursive(ctx, v, v.self_name, loc.region, None)
        else:
            t = self.type_of_value(ctx, v)
        self._cell_cache[key] = t
        return t

    def check_store(self, sigma: Mapping, store) -> None:
        from .evaluator import current_size
        for region, inner in store.regions.items():
            used = current_size(inner)
            if not size_leq(used, inner.max_size):
                raise StoreTypeError(region, f"current size {used} exceeds declared {inner.max_size}")
            for loc, v in inner.cells.items():
                if loc not in sigma:
                    raise StoreTypeError(region, f"location {loc} has no store type")
                try:
                    t = self.cell_type(sigma, loc, v)
                except TypeCheckError as err:
                    raise StoreTypeError(region, f"value at {loc} is ill-typed: {err}") from err
                if not types_alpha_equal(t, sigma[loc]):
                    raise StoreTypeError(region, f"value at {loc} does not have its store type")

    def instantiate_scheme(self, scheme, ty, region: Region):
        if not isinstance(scheme, SchemeT):
            raise TypeCheckError("SchemeExpected", "t-tyApp", "type application needs a type scheme")
        return substitute_type_vars(scheme.body, scheme.tyvar, ty, scheme.regvar, region)

    # -- helpers ------------------------------------------------------------

    def _compose(self, rule: str, span, *effects, recursion_checks: bool = False) -> Effect:
        c = Composer(use_after_free=not self.strict_figures, recursion_checks=recursion_checks)
        try:
            for phi in effects:
                c.add(phi)
        except CompositionError as err:
            raise TypeCheckError("EffectComposition", rule, str(err), span,
                                 effect=err.prefix, cause=err) from err
        return c.effect()

    def _require_live(self, r: Region, live: LivenessEnv, rule: str, span, what: str) -> None:
        if r not in live:
            raise TypeCheckError("RegionNotLive", rule, f"{what}: region {r} is not live", span)
        if self._footprints and r != GLOBAL:
            self._footprints[-1].add(r)

    def _region(self, ctx: Contexts, r, rule: str, span) -> Region:
        if isinstance(r, Region):
            return r
        if isinstance(r, RegionOf):
            target = r.expr
            hit = strip_tyapp(target)
            if hit is not None:
                return hit[0].region
            if isinstance(target, Var):
                if target.name not in ctx.gamma:
                    raise TypeCheckError("Unbound", rule, f"unbound variable {target.name}", span)
                return self._region(ctx, ctx.gamma[target.name].region, rule, span)
            raise TypeCheckError("Mismatch", rule, "regionOf expects a variable or a location", span)
        raise TypeCheckError("Mismatch", rule, f"not a region: {r!r}", span)

    def _resolve_type(self, ctx, t, rule, span):
        if isinstance(t, RefT):
            return RefT(self._resolve_type(ctx, t.inner, rule, span))
        if isinstance(t, FnT):
            return FnT(self._resolve_place(ctx, t.domain, rule, span), normalize(t.latent),
                       self._resolve_place(ctx, t.codomain, rule, span), frozenset(t.reads))
        if isinstance(t, SchemeT):
            return replace(t, body=self._resolve_type(ctx, t.body, rule, span))
        return t

    def _resolve_place(self, ctx, mu: TypeWithPlace, rule, span) -> TypeWithPlace:
        mu = TypeWithPlace(self._resolve_type(ctx, mu.ty, rule, span),
                           self._region(ctx, mu.region, rule, span))
        try:
            kind_of_place(ctx.kinds, mu)
        except KindError as err:
            kind = "Unbound" if err.reason == "unbound" else "Mismatch"
            raise TypeCheckError(kind, "κ-tyWithPlace", str(err), span) from err
        return mu

    def _size(self, ctx, s, rule, span) -> Size:
        try:
            kind_of_size(ctx.kinds, s, fixtures=self.fixtures)
        except KindError as err:
            raise TypeCheckError("Mismatch", rule, str(err), span) from err
        return s

    def _expect_same(self, got: TypeWithPlace, want: TypeWithPlace, rule, span, what) -> None:
        if normalize_type(got.ty) != normalize_type(want.ty) or got.region != want.region:
            from .printer import print_place
            raise TypeCheckError("Mismatch", rule,
                                 f"{what}: expected {print_place(want)}, got {print_place(got)}", span)

    def _body(self, ctx: Contexts, e):
        """Type a function body; returns the judgement and its read footprint."""
        self._footprints.append(set())
        try:
            j = self.type_of_expr(ctx, LivenessEnv.universal(), e)
        finally:
            touched = self._footprints.pop()
        # the recursion sizing constraints need the whole body as prefix
        self._compose("t-fix", e.span, j.effect, recursion_checks=True)
        reads = frozenset(touched - created_regions(j.effect))
        return j, reads

    # -- values -------------------------------------------------------------

    def _t_lambda(self, ctx: Contexts, v: Lam):
        dom = v.annotation or TypeWithPlace(UNIT, GLOBAL)
        dom = self._resolve_place(ctx, dom, "t-λ", None)
        j, reads = self._body(ctx.with_var(v.param, dom), v.body)
        return FnT(dom, normalize(j.effect), _norm_place(j.type), reads)

    def _binders(self, ctx: Contexts, v: BigLam) -> Contexts:
        return ctx.with_kinds(**{v.tyvar: TYPE, v.regvar: REGION, v.effvar: EFFECT})

    def _domain(self, ctx: Contexts, v: BigLam, rule: str) -> TypeWithPlace:
        dom = v.annotation or TypeWithPlace(TyVar(v.tyvar), Region(v.regvar, "var"))
        return self._resolve_place(ctx, dom, rule, None)

    def _t_biglambda(self, ctx: Contexts, v: BigLam):
        inner = self._binders(ctx, v)
        dom = self._domain(inner, v, "t-Λ")
        j, reads = self._body(inner.with_var(v.param, dom), v.body)
        if v.result is not None:
            self._expect_same(j.type, self._resolve_place(inner, v.result, "t-Λ", None),
                              "t-Λ", None, "function result")
        return SchemeT(v.tyvar, v.regvar, v.effvar,
                       FnT(dom, normalize(j.effect), _norm_place(j.type), reads))

    def _type_recursive(self, ctx: Contexts, v: BigLam, name: str, home: Region, span):
        """Scheme of a recursive Λ bound to ``name`` and stored in ``home``.

        The body is first checked with the recursive call's latent effect
        left as the effect variable; the variable is then replaced by the
        rec-wrapped body effect and the body is checked again against that,
        which is what an unfolded call will have to satisfy.
        """
        if v.result is None:
            raise TypeCheckError("Mismatch", "t-fix", "a recursive function needs a result annotation", span)
        inner = self._binders(ctx, v)
        dom = self._domain(inner, v, "t-fix")
        ret = self._resolve_place(inner, v.result, "t-fix", span)
        latent: Effect = EffVar(v.effvar)
        reads: frozenset = frozenset()
        first: Optional[Effect] = None
        for round_ in range(5):
            scheme = SchemeT(v.tyvar, v.regvar, v.effvar, FnT(dom, latent, ret, reads))
            body_ctx = inner.with_var(name, TypeWithPlace(scheme, home)).with_var(v.param, dom)
            j, found = self._body(body_ctx, v.body)
            self._expect_same(j.type, ret, "t-fix", span, "recursive function result")
            if first is None:
                first = normalize(j.effect)
                latent = normalize(substitute_effect_var(first, v.effvar, Rec(v.effvar, first)))
            if round_ > 0 and found <= reads:
                break
            reads = reads | found
        else:
            raise TypeCheckError("Mismatch", "t-fix", "read footprint did not stabilize", span)
        return SchemeT(v.tyvar, v.regvar, v.effvar, FnT(dom, latent, ret, reads))

    # -- expressions --------------------------------------------------------

    def _t_Var(self, ctx, live, e: Var) -> Judgement:
        if e.name not in ctx.gamma:
            raise TypeCheckError("Unbound", "t-var", f"unbound variable {e.name}", e.span)
        return Judgement(ctx.gamma[e.name], BOT, live)

    def _t_Loc(self, ctx, live, e: Loc) -> Judgement:
        if e.loc not in ctx.sigma:
            raise TypeCheckError("Unbound", "t-use-val", f"location {e.loc} is not in the store typing", e.span)
        return Judgement(TypeWithPlace(ctx.sigma[e.loc], e.loc.region), BOT, live)

    def _t_Alloc(self, ctx, live, e: Alloc) -> Judgement:
        j = self.type_of_expr(ctx, live, e.into)
        rho = j.type.region
        self._require_live(rho, j.live, "t-val", e.span, "allocation target")
        if isinstance(e.value, LocVal):
            raise TypeCheckError("Mismatch", "t-val", "a location cannot be allocated as a payload", e.span)
        s = self._size(ctx, e.size, "t-val", e.span)
        ty = self.type_of_value(ctx, e.value)
        bound = value_size_bound(e.value)
        if not size_leq(bound, s):
            raise TypeCheckError("AllocTooSmall", "t-val",
                                 f"value needs size {bound} but the annotation is {s}", e.span)
        phi = self._compose("t-val", e.span, j.effect, AllocEff(s, rho))
        return Judgement(TypeWithPlace(ty, rho), phi, j.live)

    def _t_App(self, ctx, live, e: App) -> Judgement:
        j1 = self.type_of_expr(ctx, live, e.fn)
        j2 = self.type_of_expr(ctx, j1.live, e.arg)
        fn = j1.type.ty
        if isinstance(fn, SchemeT):
            raise TypeCheckError("NotAFunction", "t-app",
                                 "a type scheme must be instantiated with @ before application", e.span)
        if not isinstance(fn, FnT):
            raise TypeCheckError("NotAFunction", "t-app", "applying a non-function", e.span)
        self._expect_same(j2.type, fn.domain, "t-app", e.span, "argument")
        self._require_live(j1.type.region, j2.live, "t-app", e.span, "function closure")
        for r in sorted(fn.reads, key=str):
            self._require_live(r, j2.live, "t-app", e.span, "region read by the function")
        for r, _ in sorted(free_allocs(fn.latent), key=lambda p: str(p[0])):
            self._require_live(r, j2.live, "t-app", e.span, "region used by the function")
        phi = self._compose("t-app", e.span, j1.effect, j2.effect, fn.latent)
        return Judgement(fn.codomain, phi, apply_effect_to_liveness(j2.live, fn.latent))

    def _t_Ref(self, ctx, live, e: Ref) -> Judgement:
        j = self.type_of_expr(ctx, live, e.expr)
        rho = j.type.region
        self._require_live(rho, j.live, "t-ref", e.span, "reference target")
        phi = self._compose("t-ref", e.span, j.effect, AllocEff(1, rho))
        return Judgement(TypeWithPlace(RefT(j.type.ty), rho), phi, j.live)

    def _t_Deref(self, ctx, live, e: Deref) -> Judgement:
        j = self.type_of_expr(ctx, live, e.expr)
        if not isinstance(j.type.ty, RefT):
            raise TypeCheckError("NotARef", "t-deref", "dereferencing a non-reference", e.span)
        self._require_live(j.type.region, j.live, "t-deref", e.span, "dereference")
        return Judgement(TypeWithPlace(j.type.ty.inner, j.type.region), j.effect, j.live)

    def _t_Assign(self, ctx, live, e: Assign) -> Judgement:
        j1 = self.type_of_expr(ctx, live, e.target)
        j2 = self.type_of_expr(ctx, j1.live, e.value)
        if not isinstance(j1.type.ty, RefT):
            raise TypeCheckError("NotARef", "t-assign", "assigning through a non-reference", e.span)
        want = TypeWithPlace(j1.type.ty.inner, j1.type.region)
        self._expect_same(j2.type, want, "t-assign", e.span, "assigned value")
        self._require_live(j1.type.region, j2.live, "t-assign", e.span, "assignment")
        phi = self._compose("t-assign", e.span, j1.effect, j2.effect)
        return Judgement(TypeWithPlace(UNIT, GLOBAL), phi, j2.live)

    def _t_Seq(self, ctx, live, e: Seq) -> Judgement:
        j1 = self.type_of_expr(ctx, live, e.first)
        if j1.type.ty != UNIT:
            raise TypeCheckError("NotUnitSeq", "t-seq", "the left side of ; must have type unit", e.span)
        j2 = self.type_of_expr(ctx, j1.live, e.second)
        return Judgement(j2.type, self._compose("t-seq", e.span, j1.effect, j2.effect), j2.live)

    def _t_If(self, ctx, live, e: If) -> Judgement:
        jc = self.type_of_expr(ctx, live, e.cond)
        if jc.type.ty != BOOL:
            raise TypeCheckError("NotBool", "t-if", "the condition must have type bool", e.span)
        self._require_live(jc.type.region, jc.live, "t-if", e.span, "condition")
        jt = self.type_of_expr(ctx, jc.live, e.then)
        jf = self.type_of_expr(ctx, jc.live, e.orelse)
        self._expect_same(jf.type, jt.type, "t-if", e.span, "else branch")
        phi = self._compose("t-if", e.span, jc.effect, Join(jt.effect, jf.effect))
        return Judgement(jt.type, phi, jt.live.intersect(jf.live))

    def _t_Let(self, ctx, live, e: Let) -> Judgement:
        j1 = self.type_of_expr(ctx, live, e.bound)
        j2 = self.type_of_expr(ctx.with_var(e.name, j1.type), j1.live, e.body)
        return Judgement(j2.type, self._compose("t-let", e.span, j1.effect, j2.effect), j2.live)

    def _t_TyApp(self, ctx, live, e: TyApp) -> Judgement:
        j = self.type_of_expr(ctx, live, e.fn)
        if not isinstance(j.type.ty, SchemeT):
            raise TypeCheckError("SchemeExpected", "t-tyApp", "type application needs a type scheme", e.span)
        mu = self._resolve_place(ctx, e.place, "t-tyApp", e.span)
        inst = self.instantiate_scheme(j.type.ty, mu.ty, mu.region)
        return Judgement(TypeWithPlace(inst, j.type.region), j.effect, j.live)

    def _t_Fix(self, ctx, live, e: Fix) -> Judgement:
        j2 = self.type_of_expr(ctx, live, e.at)
        home = j2.type.region
        self._require_live(home, j2.live, "t-fix", e.span, "recursive function home")
        s = self._size(ctx, e.size, "t-fix", e.span)
        scheme = self._type_recursive(ctx, e.fn, e.name, home, e.span)
        bound = value_size_bound(replace(e.fn, self_name=e.name))
        if not size_leq(bound, s):
            raise TypeCheckError("AllocTooSmall", "t-fix",
                                 f"function needs size {bound} but the annotation is {s}", e.span)
        head = self._compose("t-fix", e.span, j2.effect, AllocEff(s, home))
        j3 = self.type_of_expr(ctx.with_var(e.name, TypeWithPlace(scheme, home)), j2.live, e.body)
        return Judgement(j3.type, self._compose("t-fix", e.span, head, j3.effect), j3.live)

    def _t_NewRgn(self, ctx, live, e: NewRgn) -> Judgement:
        s = self._size(ctx, e.size, "t-newrgn", e.span)
        if not size_leq(1, s):
            raise TypeCheckError("AllocTooSmall", "t-newrgn",
                                 "a region must hold at least its own unit cell", e.span)
        rho = site_region(e.site)
        phi = self._compose("t-newrgn", e.span, Fresh(rho, s), AllocEff(1, rho))
        return Judgement(TypeWithPlace(UNIT, rho), phi, live.add(rho, s))

    def _t_FreeRgn(self, ctx, live, e: FreeRgn) -> Judgement:
        j = self.type_of_expr(ctx, live, e.expr)
        rho = j.type.region
        if rho == GLOBAL:
            raise TypeCheckError("Mismatch", "t-freergn", "the global region cannot be freed", e.span)
        self._require_live(rho, j.live, "t-freergn", e.span, "freed region")
        phi = self._compose("t-freergn", e.span, j.effect, Free(rho))
        return Judgement(TypeWithPlace(UNIT, GLOBAL), phi, j.live.remove(rho, strict=False))

    def _t_Split(self, ctx, live, e: Split) -> Judgement:
        j = self.type_of_expr(ctx, live, e.expr)
        rho = j.type.region
        self._require_live(rho, j.live, "t-split", e.span, "split parent")
        s = self._size(ctx, e.size, "t-split", e.span)
        if not size_leq(1, s):
            raise TypeCheckError("AllocTooSmall", "t-split",
                                 "a sub-region must hold at least its own unit cell", e.span)
        child = site_region(e.site)
        phi = self._compose("t-split", e.span, j.effect, SplitEff(rho, s, child), AllocEff(1, child))
        return Judgement(TypeWithPlace(UNIT, child), phi, j.live.add(child, s))

    def _t_Copy(self, ctx, live, e: Copy) -> Judgement:
        j1 = self.type_of_expr(ctx, live, e.src)
        j2 = self.type_of_expr(ctx, j1.live, e.dst)
        if not isinstance(j1.type.ty, BASE_TYPES):
            raise TypeCheckError("Mismatch", "t-copy", "only int, bool and unit values can be copied", e.span)
        self._require_live(j1.type.region, j2.live, "t-copy", e.span, "copy source")
        self._require_live(j2.type.region, j2.live, "t-copy", e.span, "copy destination")
        phi = self._compose("t-copy", e.span, j1.effect, j2.effect, AllocEff(1, j2.type.region))
        return Judgement(TypeWithPlace(j1.type.ty, j2.type.region), phi, j2.live)

    def _t_BinOp(self, ctx, live, e: BinOp) -> Judgement:
        j1 = self.type_of_expr(ctx, live, e.left)
        j2 = self.type_of_expr(ctx, j1.live, e.right)
        if e.op == "==":
            if j1.type.ty != j2.type.ty or not isinstance(j1.type.ty, BASE_TYPES):
                raise TypeCheckError("Mismatch", "t-binop", "== compares two values of one base type", e.span)
        elif j1.type.ty != INT or j2.type.ty != INT:
            raise TypeCheckError("Mismatch", "t-binop", f"{e.op} expects two integers", e.span)
        self._require_live(j1.type.region, j2.live, "t-binop", e.span, "left operand")
        self._require_live(j2.type.region, j2.live, "t-binop", e.span, "right operand")
        rho = j1.type.region
        result = INT if e.op in ("+", "-") else BOOL
        phi = self._compose("t-binop", e.span, j1.effect, j2.effect, AllocEff(1, rho))
        return Judgement(TypeWithPlace(result, rho), phi, j2.live)
