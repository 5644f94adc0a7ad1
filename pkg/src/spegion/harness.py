"""Progress and preservation as executable oracles.

Programs come from three sources: exhaustive enumeration up to a depth, a
seeded generator biased towards region constructs, and the example corpus.
Each well-typed program is run step by step.  Every configuration must be a
value or able to step, and every step must keep the type (up to region
renaming), shrink the effect under subsumption and leave a well-typed store.
"""

from __future__ import annotations

import itertools
import logging
import random
import time
from dataclasses import dataclass, field, fields, is_dataclass, replace
from typing import Callable, Iterable, Iterator, Optional

from .checker import (Checker, Judgement, LivenessEnv, StoreTypeError, TypeCheckError,
                      canonical_type, types_alpha_equal)
from .effects import subsumes
from .evaluator import (Done, OutOfFuel, Snapshot, Store, Stepped, Stuck, current_size,
                        initial_store, step)
from .printer import print_term
from .sizes import OMEGA, is_finite, size_add
from .syntax import (BOOL, GLOBAL, GLOBAL_UNIT, INT, UNIT, UNIT_VALUE, Alloc, App, Assign,
                     BigLam, BinOp, BoolLit, Contexts, Copy, Deref, Fix, FreeRgn, If, IntLit, Lam, Let,
                     Loc, NewRgn, Ref, RefT, FnT, Region, RegionOf, Seq, Split, TyApp, TypeWithPlace,
                     Var, children, free_vars, is_value_term, map_effect_regions,
                     map_place_regions, next_site, site_region, term_size,
                     type_regions)

log = logging.getLogger(__name__)

ENUM_SIZES = (1, 2, OMEGA)
ENUM_VARS = ("x", "y")


@dataclass
class Counterexample:
    phase: str
    term: object
    message: str
    seed: Optional[int] = None
    source: str = ""
    step: Optional[int] = None

    def to_json(self) -> dict:
        return {"seed": self.seed, "term": print_term(self.term), "phase": self.phase,
                "message": self.message, "source": self.source, "step": self.step}


@dataclass
class GeneratedProgram:
    term: object
    seed: int
    size: int
    verdict: str  # "typed" | "ill-typed"


# ---------------------------------------------------------------------------
# enumeration


def resite(e):
    """Copy of ``e`` in which every ``newrgn`` and ``split`` occurrence has its
    own creation site.  Enumerated terms share subterm objects, and two
    occurrences of one site would denote one static region."""
    if isinstance(e, (NewRgn, Split)):
        changes = {f.name: resite(getattr(e, f.name)) for f in fields(e)
                   if f.name not in ("site", "span")}
        return replace(e, site=next_site(), **changes)
    if is_dataclass(e) and not isinstance(e, (Region, TypeWithPlace)) and hasattr(e, "__dataclass_fields__"):
        changes = {}
        for f in fields(e):
            if f.name == "span":
                continue
            v = getattr(e, f.name)
            if is_dataclass(v):
                nv = resite(v)
                if nv is not v:
                    changes[f.name] = nv
        return replace(e, **changes) if changes else e
    return e


def _values(inner: Optional[str], bodies: list) -> list:
    vals = [UNIT_VALUE, IntLit(1), BoolLit(True)]
    if inner is not None:
        vals.extend(Lam(inner, b) for b in bodies)
    return vals


class _Enumerator:
    """Terms by depth, for a context of typed variables.

    Every kept term type-checks in its context, and larger terms are only
    built from pieces whose types fit the constructor.  A subterm that does
    not type-check where liveness is largest cannot type-check anywhere
    else, so nothing well-typed is lost.
    """

    def __init__(self):
        self.checker = Checker()
        self.memo: dict = {}

    def judge(self, e, ctx: tuple) -> Optional[Judgement]:
        env = Contexts()
        live = LivenessEnv.initial()
        for name, mu in ctx:
            env = env.with_var(name, mu)
            for r in type_regions(mu.ty) | {mu.region}:
                live = live.add(r)
        try:
            return self.checker.type_of_expr(env, live, resite(e))
        except (TypeCheckError, RecursionError):
            return None

    def upto(self, depth: int, ctx: tuple) -> list:
        key = (depth, ctx)
        if key not in self.memo:
            if depth <= 1:
                cands = [Var(v) for v, _ in ctx] + [Loc(GLOBAL_UNIT)] + [NewRgn(s) for s in ENUM_SIZES]
                out = []
                for t in cands:
                    j = self.judge(t, ctx)
                    if j is not None:
                        out.append((t, j))
            else:
                out = list(self.upto(depth - 1, ctx))
                seen = {t for t, _ in out}
                for t in self._exact(depth, ctx):
                    if t in seen:
                        continue
                    seen.add(t)
                    j = self.judge(t, ctx)
                    if j is not None:
                        out.append((t, j))
            self.memo[key] = out
        return self.memo[key]

    def _exact(self, depth: int, ctx: tuple) -> Iterator:
        sub = self.upto(depth - 1, ctx)
        for e, j in sub:
            ty, region = j.type.ty, j.type.region
            yield Ref(e)
            if isinstance(ty, RefT):
                yield Deref(e)
            if region != GLOBAL:
                yield FreeRgn(e)
                for s in ENUM_SIZES:
                    yield Split(s, e)
        inner = ENUM_VARS[len(ctx)] if len(ctx) < len(ENUM_VARS) else None
        bodies = [Var(v) for v, _ in ctx] + [Loc(GLOBAL_UNIT), NewRgn(1)]
        if inner is not None:
            bodies.append(Var(inner))
        for v in _values(inner, bodies):
            for s in ENUM_SIZES:
                for e, _ in sub:
                    yield Alloc(v, s, e)
        by_type: dict = {}
        for e, j in sub:
            by_type.setdefault(canonical_type(j.type.ty), []).append((e, j))
        for a, ja in sub:
            ty = ja.type.ty
            if isinstance(ty, FnT):
                for b, _ in sub:
                    yield App(a, b)
            if isinstance(ty, RefT):
                for b, _ in by_type.get(canonical_type(ty.inner), []):
                    yield Assign(a, b)
            if ty == UNIT:
                for b, _ in sub:
                    yield Seq(a, b)
            if ty in (INT, UNIT, BOOL):
                for b, _ in sub:
                    yield Copy(a, b)
            if ty == INT:
                for b, _ in by_type.get(INT, []):
                    yield BinOp("+", a, b)
            if ty in (INT, BOOL, UNIT):
                for b, _ in by_type.get(ty, []):
                    yield BinOp("==", a, b)
        for c, jc in sub:
            if jc.type.ty != BOOL:
                continue
            for group in by_type.values():
                for (t, _), (f, _) in itertools.product(group, repeat=2):
                    yield If(c, t, f)
        if inner is not None:
            classes: dict = {}
            for bound, jb in sub:
                classes.setdefault(canonical_type(jb.type), []).append(bound)
            for mu, bounds in classes.items():
                for body, _ in self.upto(depth - 1, ctx + ((inner, mu),)):
                    for bound in bounds:
                        yield Let(inner, bound, body)
        if depth >= 3 and not ctx:
            yield from _fix_shapes()


def _fix_shapes() -> Iterator:
    mu = TypeWithPlace(UNIT, GLOBAL)
    for body in (Var("n"), Loc(GLOBAL_UNIT), NewRgn(1)):
        fn = BigLam("a", "r", "e", "n", body, mu, mu)
        call = App(TyApp(Var("f"), mu), Loc(GLOBAL_UNIT))
        for rest in (Loc(GLOBAL_UNIT), call):
            yield Fix("f", fn, OMEGA, Loc(GLOBAL_UNIT), rest)


def enumerate_terms(max_depth: int) -> Iterator:
    """Closed well-typed terms up to ``max_depth`` over sizes {1, 2, w} and
    at most two variables.  Binder names are fixed by nesting level, so the
    stream is free of alpha-duplicates."""
    if max_depth > 4:
        raise ValueError("exhaustive enumeration is limited to depth 4")
    en = _Enumerator()
    seen = set()
    for d in range(1, max_depth + 1):
        for t, _ in en.upto(d, ()):
            if t not in seen:
                seen.add(t)
                yield resite(t)


# ---------------------------------------------------------------------------
# random generation


@dataclass
class _Rgn:
    var: str
    cap: object
    used: object = 1
    alive: bool = True


@dataclass
class _Gen:
    rng: random.Random
    regions: list = field(default_factory=list)
    ints: list = field(default_factory=list)  # (var, region)
    refs: list = field(default_factory=list)  # (var, region)
    counter: int = 0
    risk: float = 0.15  # chance a choice ignores liveness and capacity

    def careless(self) -> bool:
        return self.rng.random() < self.risk

    def fresh(self, prefix: str) -> str:
        self.counter += 1
        return f"{prefix}{self.counter}"

    def live(self) -> list:
        return [r for r in self.regions if r.alive]

    def room(self, r: _Rgn, n: int) -> bool:
        if r.cap is OMEGA:
            return True
        return r.used + n <= r.cap

    def target(self, n: int) -> Optional[_Rgn]:
        if self.regions and self.careless():
            return self.rng.choice(self.regions)
        rs = [r for r in self.live() if self.room(r, n)]
        if rs and self.rng.random() < 0.85:
            return self.rng.choice(rs)
        return None

    def charge(self, r: Optional[_Rgn], n) -> None:
        if r is not None and r.cap is not OMEGA:
            r.used += n

    def at(self, r: Optional[_Rgn]):
        return Loc(GLOBAL_UNIT) if r is None else Var(r.var)

    def lit(self, r: Optional[_Rgn]):
        self.charge(r, 1)
        return Alloc(IntLit(self.rng.randint(0, 3)), 1, self.at(r))

    def int_var(self):
        careless = self.careless()
        xs = [(v, r) for v, r in self.ints if careless or r is None or r.alive]
        return self.rng.choice(xs) if xs else None


def _stmt(g: _Gen):
    """One statement: ``(binder or None, bound term)``."""
    rng = g.rng
    choices = [("newrgn", 3), ("split", 3), ("alloc", 3), ("ref", 3), ("free", 3),
               ("deref", 1), ("assign", 1), ("binop", 1), ("if", 1), ("fun", 1),
               ("copy", 1), ("loop", 1)]
    kind = rng.choices([c for c, _ in choices], [w for _, w in choices])[0]
    if kind == "newrgn" or not g.regions:
        cap = rng.choice([2, 3, 4, 6, OMEGA])
        name = g.fresh("r")
        g.regions.append(_Rgn(name, cap))
        return name, NewRgn(cap)
    if kind == "split":
        parents = [r for r in g.live() if r.cap is OMEGA or r.cap - r.used >= 2]
        if not parents:
            return _stmt(g)
        p = rng.choice(parents)
        avail = OMEGA if p.cap is OMEGA else p.cap - p.used
        s = rng.choice([2, 3] if avail is OMEGA else list(range(2, avail + 1)))
        if p.cap is not OMEGA:
            p.cap -= s
        name = g.fresh("r")
        g.regions.append(_Rgn(name, s))
        return name, Split(s, Var(p.var))
    if kind == "alloc":
        r = g.target(1)
        name = g.fresh("v")
        g.ints.append((name, r))
        return name, g.lit(r)
    if kind == "ref":
        r = g.target(2)
        name = g.fresh("p")
        inner = g.lit(r)
        g.charge(r, 1)
        g.refs.append((name, r))
        return name, Ref(inner)
    if kind == "free":
        cand = g.regions if g.careless() else g.live()
        if not cand:
            return _stmt(g)
        r = rng.choice(cand)
        r.alive = False
        return None, FreeRgn(Var(r.var))
    if kind == "deref":
        careless = g.careless()
        cand = [(v, r) for v, r in g.refs if careless or r is None or r.alive]
        if not cand:
            return _stmt(g)
        v, r = rng.choice(cand)
        name = g.fresh("v")
        g.ints.append((name, r))
        return name, Deref(Var(v))
    if kind == "assign":
        careless = g.careless()
        cand = [(v, r) for v, r in g.refs if careless or r is None or r.alive]
        if not cand:
            return _stmt(g)
        v, r = rng.choice(cand)
        if r is not None and not g.room(r, 1) and not careless:
            return _stmt(g)
        return None, Assign(Var(v), g.lit(r))
    if kind == "binop":
        a = g.int_var()
        if a is None:
            return _stmt(g)
        v, r = a
        if r is not None and not g.room(r, 1):
            return _stmt(g)
        g.charge(r, 1)
        op = rng.choice(["+", "-"])
        name = g.fresh("v")
        g.ints.append((name, r))
        others = [w for w, q in g.ints if q is r] or [v]
        return name, BinOp(op, Var(v), Var(rng.choice(others)))
    if kind == "if":
        r = g.target(2)
        cond = BinOp("==", Alloc(IntLit(rng.randint(0, 1)), 1, Loc(GLOBAL_UNIT)),
                     Alloc(IntLit(0), 1, Loc(GLOBAL_UNIT)))
        then, orelse = g.lit(r), g.lit(None if r is None else r)
        g.charge(r, -1)  # only one branch runs; the join charges the larger
        name = g.fresh("v")
        g.ints.append((name, r))
        return name, If(cond, then, orelse)
    if kind == "fun":
        a = g.int_var()
        if a is None:
            return _stmt(g)
        v, r = a
        if r is not None and not g.room(r, 1):
            return _stmt(g)
        region = GLOBAL if r is None else RegionOf(Var(r.var))
        param = g.fresh("z")
        lam = Lam(param, BinOp("+", Var(param), Var(param)), TypeWithPlace(INT, region))
        f = g.fresh("f")
        g.charge(r, 1)
        name = g.fresh("v")
        g.ints.append((name, r))
        return name, Let(f, Alloc(lam, OMEGA, Loc(GLOBAL_UNIT)), App(Var(f), Var(v)))
    if kind == "copy":
        a = g.int_var()
        dst = g.target(1)
        if a is None:
            return _stmt(g)
        g.charge(dst, 1)
        name = g.fresh("v")
        g.ints.append((name, dst))
        return name, Copy(Var(a[0]), g.at(dst))
    # a countdown loop whose body owns a one-cell region per iteration
    mu_n = TypeWithPlace(INT, GLOBAL)
    mu_u = TypeWithPlace(UNIT, GLOBAL)
    n, f, rr = g.fresh("n"), g.fresh("loop"), g.fresh("r")
    dec = BinOp("-", Var(n), Alloc(IntLit(1), 1, Loc(GLOBAL_UNIT)))
    call = App(TyApp(Var(f), mu_n), dec)
    step_body = Let(rr, NewRgn(2), Seq(Alloc(UNIT_VALUE, 1, Var(rr)), Seq(FreeRgn(Var(rr)), call)))
    body = If(BinOp(">", Var(n), Alloc(IntLit(0), 1, Loc(GLOBAL_UNIT))), step_body, Loc(GLOBAL_UNIT))
    fn = BigLam("a", "q", "e", n, body, mu_n, mu_u)
    start = Alloc(IntLit(rng.randint(0, 2)), 1, Loc(GLOBAL_UNIT))
    return None, Fix(f, fn, OMEGA, Loc(GLOBAL_UNIT), App(TyApp(Var(f), mu_n), start))


def _assemble(stmts: list, final):
    e = final
    for name, bound in reversed(stmts):
        e = Seq(bound, e) if name is None else Let(name, bound, e)
    return e


def generate(seed: int, max_size: int = 25) -> GeneratedProgram:
    """A program of at most ``max_size`` nodes, bit-identical for a seed.
    Region constructs are drawn three times as often as the others."""
    rng = random.Random(seed)
    g = _Gen(rng)
    stmts: list = []
    final = Loc(GLOBAL_UNIT)
    for _ in range(rng.randint(1, 8)):
        candidate = _stmt(g)
        if term_size(_assemble(stmts + [candidate], final)) > max_size:
            break
        stmts.append(candidate)
    names = [n for n, _ in stmts if n is not None]
    if names and rng.random() < 0.7:
        pick = Var(rng.choice(names))
        if term_size(_assemble(stmts, pick)) <= max_size:
            final = pick
    term = _assemble(stmts, final)
    try:
        Checker().check_program(term)
        verdict = "typed"
    except TypeCheckError:
        verdict = "ill-typed"
    return GeneratedProgram(term, seed, term_size(term), verdict)


# ---------------------------------------------------------------------------
# oracles


def store_liveness(store: Store) -> LivenessEnv:
    return LivenessEnv({r: inner.max_size for r, inner in store.regions.items()})


def check_progress(e, store: Store) -> Optional[Counterexample]:
    """None when ``e`` is a value or steps; a counterexample when stuck."""
    if is_value_term(e):
        return None
    result = step(e, store)
    if isinstance(result, Stuck):
        return Counterexample("progress", e, f"{result.reason}: {result.message}")
    return None


@dataclass
class _State:
    term: object
    store: Store
    sigma: dict
    judgement: Judgement
    rule: Optional[str] = None


def initial_state(checker: Checker, e) -> _State:
    """The configuration a closed program starts in; raises TypeCheckError
    when ``e`` is ill-typed."""
    sigma = {GLOBAL_UNIT: UNIT}
    return _State(e, initial_store(), sigma, checker.check_program(e, sigma))


def _extend_sigma(checker: Checker, sigma: dict, before: Store, after: Store) -> dict:
    new = sorted(after.locations() - set(sigma), key=lambda l: (l.region.name, l.index))
    if not new:
        return sigma
    sigma = dict(sigma)
    for loc in new:
        sigma[loc] = checker.cell_type(sigma, loc, after.regions[loc.region].cells[loc])
    return sigma


def _rename_new(j: Judgement, before: Store, after: Store) -> tuple:
    """Type and effect of ``j`` with regions created by this step named by
    their creation site, as the pre-step judgement names them."""
    new = {r: site_region(after.origins[r]) for r in after.regions
           if r not in before.regions and r in after.origins}
    if not new:
        return j.type, j.effect
    f = lambda r: new.get(r, r)
    return map_place_regions(j.type, f), map_effect_regions(j.effect, f)


def check_preservation(checker: Checker, state: _State) -> tuple:
    """Take one step from ``state``.  Returns ``(next state or None,
    counterexample or None)``; the next state is None at a value."""
    e, st = state.term, state.store
    result = step(e, st)
    if isinstance(result, Done):
        return None, None
    if isinstance(result, Stuck):
        return None, Counterexample("progress", e, f"{result.reason}: {result.message}")
    e2, st2 = result.term, result.store
    try:
        sigma2 = _extend_sigma(checker, state.sigma, st, st2)
    except TypeCheckError as err:
        return None, Counterexample("preservation-store", e, f"{result.rule}: new cell ill-typed: {err}")
    try:
        checker.check_store(sigma2, st2)
    except StoreTypeError as err:
        return None, Counterexample("preservation-store", e, f"{result.rule}: {err}")
    try:
        j2 = checker.check_program(e2, sigma2, store_liveness(st2))
    except TypeCheckError as err:
        return None, Counterexample("preservation-retype", e, f"{result.rule}: {print_term(e2)}: {err}")
    ty2, phi2 = _rename_new(j2, st, st2)
    j1 = state.judgement
    if not types_alpha_equal(ty2, j1.type):
        return None, Counterexample("preservation-type", e,
                                    f"{result.rule}: type changed from {j1.type} to {ty2}")
    if not subsumes(phi2, j1.effect):
        return None, Counterexample("preservation-effect", e,
                                    f"{result.rule}: effect grew after the step")
    return _State(e2, st2, sigma2, j2, result.rule), None


def audit_store_invariant(snapshots: Iterable) -> Optional[Counterexample]:
    """Every region of every snapshot within its declared maximum, and every
    split step conserving the parent's finite capacity."""
    prev = None
    for snap in snapshots:
        for region, inner in snap.store.regions.items():
            used = current_size(inner)
            if inner.max_size is not OMEGA and (used is OMEGA or used > inner.max_size):
                c = Counterexample("store-invariant", snap.term,
                                   f"region {region} holds {used} > {inner.max_size}")
                c.step = snap.index
                return c
        if prev is not None and snap.rule == "e-splitL":
            bad = _split_conservation(prev.store, snap.store)
            if bad:
                c = Counterexample("split-conservation", prev.term, bad)
                c.step = snap.index
                return c
        prev = snap
    return None


def _split_conservation(before: Store, after: Store) -> Optional[str]:
    created = [r for r in after.regions if r not in before.regions]
    if len(created) != 1:
        return f"split created {len(created)} regions"
    child = after.regions[created[0]].max_size
    for r, inner in before.regions.items():
        now = after.regions.get(r)
        if now is None or now.max_size == inner.max_size:
            continue
        if is_finite(inner.max_size) and size_add(now.max_size, child) != inner.max_size:
            return (f"parent {r} went from {inner.max_size} to {now.max_size} "
                    f"with a child of {child}")
        return None
    if is_finite(child):
        for r, inner in before.regions.items():
            if inner.max_size is OMEGA:
                return None
        return "no parent region lost capacity"
    return None


def check_program_soundness(e, *, fuel: int = 2_000, strict_figures: bool = False,
                            check_progress_each: bool = True) -> tuple:
    """Trace a closed program and check every step.  Returns
    ``(typed, counterexample or None)``; ill-typed programs are skipped."""
    checker = Checker(strict_figures=strict_figures)
    try:
        state = initial_state(checker, e)
    except TypeCheckError:
        return False, None
    snaps = [Snapshot(0, e, state.store, None)]
    for i in range(fuel):
        if check_progress_each:
            bad = check_progress(state.term, state.store)
            if bad:
                bad.step = i
                return True, bad
        nxt, bad = check_preservation(checker, state)
        if bad:
            bad.step = i
            return True, bad
        if nxt is None:
            break
        snaps.append(Snapshot(i + 1, nxt.term, nxt.store, nxt.rule))
        state = nxt
    bad = audit_store_invariant(snaps)
    return True, bad


# ---------------------------------------------------------------------------
# shrinking


def _closed_subterms(e) -> Iterator:
    for c in children(e):
        if not free_vars(c):
            yield c
        yield from _closed_subterms(c)


def _child_replacements(e) -> Iterator:
    """``e`` with one direct child replaced by one of that child's children."""
    names = [f for f in ("fn", "arg", "expr", "target", "value", "first", "second", "cond",
                         "then", "orelse", "bound", "body", "into", "src", "dst", "left",
                         "right", "at")
             if hasattr(e, f) and not isinstance(getattr(e, f), (str, TypeWithPlace))]
    for name in names:
        child = getattr(e, name)
        if not hasattr(child, "span"):
            continue
        for grand in children(child):
            yield replace(e, **{name: grand})
        for smaller in _child_replacements(child):
            yield replace(e, **{name: smaller})


def shrink(e, still_fails: Callable[[object], bool], *, budget: int = 500):
    """Greedy minimization: keep replacing ``e`` by a smaller candidate for
    which ``still_fails`` holds."""
    tries = 0
    improved = True
    while improved and tries < budget:
        improved = False
        cands = sorted(itertools.chain(_closed_subterms(e), _child_replacements(e)), key=term_size)
        for cand in cands:
            if term_size(cand) >= term_size(e):
                continue
            tries += 1
            try:
                ok = still_fails(cand)
            except RecursionError:
                ok = False
            if ok:
                e = cand
                improved = True
                break
            if tries >= budget:
                break
    return e


def _fails(e, strict_figures: bool = False) -> bool:
    typed, bad = check_program_soundness(e, strict_figures=strict_figures)
    return typed and bad is not None


# ---------------------------------------------------------------------------
# driver


MAX_DRAWS_PER_SEED = 10


def run_soundness(depth: int = 3, seeds: int = 500, *, corpus: Iterable = (),
                  strict_figures: bool = False, seed_base: int = 0) -> dict:
    """Report ``{checked, passed, counterexamples, ...}`` over enumeration
    to ``depth``, ``seeds`` generated programs and the ``corpus`` terms."""
    started = time.monotonic()
    checked = passed = 0
    found: list = []
    stats = {"enumerated": 0, "generated": 0, "generated_typed": 0, "corpus": 0}

    def fails(e) -> bool:
        return _fails(e, strict_figures)

    def run(term, seed, source) -> bool:
        nonlocal checked, passed
        typed, bad = check_program_soundness(term, strict_figures=strict_figures)
        if not typed:
            return False
        checked += 1
        if bad is None:
            passed += 1
            return True
        small = shrink(term, fails)
        bad.term = small if fails(small) else term
        bad.seed, bad.source = seed, source
        found.append(bad.to_json())
        return True

    if depth > 0:
        for t in enumerate_terms(depth):
            stats["enumerated"] += 1
            run(t, None, "enumeration")
    # draw seeds until ``seeds`` programs are well-typed; ill-typed draws are skipped
    k = 0
    while stats["generated_typed"] < seeds and k < seeds * MAX_DRAWS_PER_SEED:
        prog = generate(seed_base + k)
        k += 1
        stats["generated"] += 1
        if run(prog.term, prog.seed, "generator"):
            stats["generated_typed"] += 1
    for name, t in corpus:
        stats["corpus"] += 1
        run(t, None, f"corpus:{name}")
    return {"checked": checked, "passed": passed, "counterexamples": found,
            "stats": stats, "seconds": round(time.monotonic() - started, 2)}
