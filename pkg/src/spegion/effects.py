"""Effect algebra: normal forms, equivalence, allocation sums, composition and
subsumption.

Composition is partial.  ``compose`` either returns the normalized sequence
or raises ``CompositionError`` naming the violated constraint.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional

from .sizes import OMEGA, Size, size_add, size_leq, size_max, size_sum
from .syntax import (BOT, GLOBAL, AllocEff, Bot, EffSeq, EffVar, Effect, Free,
                     Fresh, Join, Rec, Region, SplitEff, map_effect_regions,
                     seq_all, substitute_effect_var)

ATOMS = (Fresh, Free, SplitEff, AllocEff, EffVar, Rec)


class CompositionError(Exception):
    """An undefined composition.  ``kind`` is one of DoubleFree,
    OverAllocation, OverSplit, UseAfterFree, UnboundedRecursionViolation."""

    def __init__(self, kind: str, region: Region, message: str, *,
                 requested: Optional[Size] = None, declared: Optional[Size] = None,
                 used: Optional[Size] = None, prefix: Effect = BOT):
        super().__init__(message)
        self.kind = kind
        self.region = region
        self.requested = requested
        self.declared = declared
        self.used = used
        self.prefix = prefix

    def to_json(self) -> dict:
        out = {"kind": self.kind, "region": self.region.name}
        for key in ("requested", "declared", "used"):
            value = getattr(self, key)
            if value is not None:
                out[key] = str(value)
        return out


# ---------------------------------------------------------------------------
# normal forms


def spine(phi: Effect) -> list:
    """Flattened top-level sequence of ``phi`` with units removed.

    Join and Rec nodes are normalized and kept as single items.
    """
    out: list = []
    _spine(phi, out)
    return out


def _spine(phi: Effect, out: list) -> None:
    if isinstance(phi, EffSeq):
        _spine(phi.left, out)
        _spine(phi.right, out)
    elif isinstance(phi, Bot):
        pass
    elif isinstance(phi, Join):
        out.append(_normalize_join(phi))
    elif isinstance(phi, Rec):
        out.append(Rec(phi.var, normalize(phi.body)))
    else:
        out.append(phi)


def _join_items(phi: Effect, out: list) -> None:
    if isinstance(phi, Join):
        _join_items(phi.left, out)
        _join_items(phi.right, out)
    else:
        out.append(normalize(phi))


def _normalize_join(phi: Join) -> Effect:
    items: list = []
    _join_items(phi, items)
    result = items[-1]
    for item in reversed(items[:-1]):
        result = Join(item, result)
    return result


def normalize(phi: Effect) -> Effect:
    """Right-nested sequence, ``Bot`` units dropped, joins right-nested with
    their branches normalized.  A join of two ``Bot`` stays a join."""
    return seq_all(spine(phi))


# ---------------------------------------------------------------------------
# equivalence


def canonical(phi: Effect, *, alpha: bool = True) -> Effect:
    """Normal form, with regions introduced inside ``phi`` renamed in order
    of introduction when ``alpha`` is set."""
    phi = normalize(phi)
    if not alpha:
        return phi
    introduced: dict = {}

    def visit(e: Effect) -> None:
        if isinstance(e, Fresh):
            _introduce(e.region)
        elif isinstance(e, SplitEff):
            _introduce(e.child)
        elif isinstance(e, Rec):
            visit(e.body)
        elif isinstance(e, (EffSeq, Join)):
            visit(e.left)
            visit(e.right)

    def _introduce(r: Region) -> None:
        if r is not GLOBAL and r != GLOBAL and not r.is_var and r not in introduced:
            introduced[r] = Region(f"#{len(introduced) + 1}", "canon")

    visit(phi)
    return map_effect_regions(phi, lambda r: introduced.get(r, r))


def effect_equiv(a: Effect, b: Effect, *, alpha: bool = True) -> bool:
    return canonical(a, alpha=alpha) == canonical(b, alpha=alpha)


# ---------------------------------------------------------------------------
# derived quantities


def sum_allocs(region: Region, phi: Effect) -> Size:
    """Total size charged to ``region``: allocations and splits add their
    size, sequences add, joins take the larger branch."""
    if isinstance(phi, AllocEff):
        return phi.size if phi.region == region else 0
    if isinstance(phi, SplitEff):
        return phi.size if phi.parent == region else 0
    if isinstance(phi, EffSeq):
        return size_add(sum_allocs(region, phi.left), sum_allocs(region, phi.right))
    if isinstance(phi, Join):
        return size_max(sum_allocs(region, phi.left), sum_allocs(region, phi.right))
    return 0


def free_allocs(phi: Effect) -> set:
    """``(region, size)`` pairs for allocations, splits and frees touching a
    region with no earlier ``fresh`` in the same sequence."""
    out: set = set()
    _free_allocs(phi, frozenset(), out)
    return out


def _free_allocs(phi: Effect, created: frozenset, out: set) -> frozenset:
    if isinstance(phi, Fresh):
        return created | {phi.region}
    if isinstance(phi, AllocEff):
        if phi.region not in created:
            out.add((phi.region, phi.size))
        return created
    if isinstance(phi, SplitEff):
        if phi.parent not in created:
            out.add((phi.parent, phi.size))
        return created
    if isinstance(phi, Free):
        if phi.region not in created:
            out.add((phi.region, 0))
        return created
    if isinstance(phi, Rec):
        _free_allocs(phi.body, created, out)
        return created
    if isinstance(phi, EffSeq):
        created = _free_allocs(phi.left, created, out)
        return _free_allocs(phi.right, created, out)
    if isinstance(phi, Join):
        _free_allocs(phi.left, created, out)
        _free_allocs(phi.right, created, out)
        return created
    return created


def created_regions(phi: Effect) -> set:
    """Regions introduced anywhere in ``phi`` by fresh or split."""
    out: set = set()
    for node in _walk(phi):
        if isinstance(node, Fresh):
            out.add(node.region)
        elif isinstance(node, SplitEff):
            out.add(node.child)
    return out


def _walk(phi: Effect):
    yield phi
    if isinstance(phi, (EffSeq, Join)):
        yield from _walk(phi.left)
        yield from _walk(phi.right)
    elif isinstance(phi, Rec):
        yield from _walk(phi.body)


def contains_var(phi: Effect) -> bool:
    """True when an unbound-by-Rec effect variable occurs in ``phi``."""
    if isinstance(phi, EffVar):
        return True
    if isinstance(phi, (EffSeq, Join)):
        return contains_var(phi.left) or contains_var(phi.right)
    return False


def join(a: Effect, b: Effect) -> Effect:
    return normalize(Join(a, b))


# ---------------------------------------------------------------------------
# composition


def _creation_index(items: list, region: Region) -> Optional[int]:
    """Index of the latest spine item creating ``region``."""
    for i in range(len(items) - 1, -1, -1):
        item = items[i]
        if isinstance(item, Fresh) and item.region == region:
            return i
        if isinstance(item, SplitEff) and item.child == region:
            return i
    return None


def _frees(items: Iterable, region: Region) -> bool:
    """True when ``items`` free the instance of ``region`` live before them.

    A creation inside the items opens a newer instance, and a free after it
    closes that one instead.
    """
    depth = 0
    for item in items:
        if (isinstance(item, Fresh) and item.region == region) or \
                (isinstance(item, SplitEff) and item.child == region):
            depth += 1
        elif isinstance(item, Free) and item.region == region:
            if depth == 0:
                return True
            depth -= 1
        elif depth == 0 and isinstance(item, Join):
            if _frees(spine(item.left), region) or _frees(spine(item.right), region):
                return True
        elif depth == 0 and isinstance(item, Rec):
            if _frees(spine(item.body), region):
                return True
    return False


class Composer:
    """Stateful left-to-right composition.

    ``items`` is the normalized spine of the effect composed so far.
    """

    def __init__(self, prefix: Effect = BOT, *, use_after_free: bool = True,
                 recursion_checks: bool = True):
        self.items = spine(prefix)
        self.use_after_free = use_after_free
        # off while typing subterms whose enclosing prefix is not known yet
        self.recursion_checks = recursion_checks

    def effect(self) -> Effect:
        return seq_all(self.items)

    def add(self, phi: Effect) -> "Composer":
        for atom in spine(phi):
            self._add_atom(atom)
        return self

    def _fork(self) -> "Composer":
        c = Composer(use_after_free=self.use_after_free,
                     recursion_checks=self.recursion_checks)
        c.items = list(self.items)
        return c

    def _fail(self, kind: str, region: Region, message: str, **details) -> None:
        raise CompositionError(kind, region, message, prefix=self.effect(), **details)

    def _add_atom(self, atom: Effect) -> None:
        if isinstance(atom, Join):
            self._fork().add(atom.left)
            self._fork().add(atom.right)
        elif isinstance(atom, Rec):
            self._fork().add(substitute_effect_var(atom.body, atom.var, BOT))
        else:
            self._check(atom)
        self.items.append(atom)

    def _check(self, atom: Effect) -> None:
        if isinstance(atom, Fresh):
            pass
        elif isinstance(atom, Free):
            start = _creation_index(self.items, atom.region)
            since = self.items if start is None else self.items[start + 1:]
            if _frees(since, atom.region):
                self._fail("DoubleFree", atom.region,
                           f"region {atom.region} is freed twice")
        elif isinstance(atom, AllocEff):
            self._check_charge(atom.region, atom.size, "OverAllocation", "allocation")
        elif isinstance(atom, SplitEff):
            self._check_charge(atom.parent, atom.size, "OverSplit", "split")
        elif isinstance(atom, EffVar) and self.recursion_checks:
            for region, size in free_allocs(self.effect()):
                if region != GLOBAL and not size_leq(OMEGA, size):
                    self._fail("UnboundedRecursionViolation", region,
                               f"recursive call after a sized use ({size}) of region "
                               f"{region}, which is not created inside the function",
                               requested=size)
        if (self.recursion_checks and not isinstance(atom, EffVar)
                and any(contains_var(i) for i in self.items)):
            created = frozenset(r for r in (self._created()))
            pairs: set = set()
            _free_allocs(atom, created, pairs)
            for region, size in pairs:
                if region != GLOBAL and not size_leq(OMEGA, size):
                    self._fail("UnboundedRecursionViolation", region,
                               f"sized use ({size}) of region {region} after a recursive "
                               "call; regions not created inside the function need "
                               "unbounded uses", requested=size)

    def _created(self):
        for item in self.items:
            if isinstance(item, Fresh):
                yield item.region

    def _check_charge(self, region: Region, requested: Size, kind: str, what: str) -> None:
        start = _creation_index(self.items, region)
        if start is None:
            if self.use_after_free and _frees(self.items, region):
                self._fail("UseAfterFree", region, f"{what} into freed region {region}")
            return
        since = self.items[start + 1:]
        if self.use_after_free and _frees(since, region):
            self._fail("UseAfterFree", region, f"{what} into freed region {region}")
        creator = self.items[start]
        declared = creator.size
        used = sum_allocs(region, seq_all(since))
        if not size_leq(size_add(used, requested), declared):
            self._fail(kind, region,
                       f"{what} of {requested} into region {region} of size {declared} "
                       f"after {used} already used",
                       requested=requested, declared=declared, used=used)


def compose(phi1: Effect, phi2: Effect, *, use_after_free: bool = True) -> Effect:
    """``phi1 x phi2`` when defined, else ``CompositionError``."""
    return Composer(phi1, use_after_free=use_after_free).add(phi2).effect()


def compose_all(effects: Iterable[Effect], *, use_after_free: bool = True) -> Effect:
    c = Composer(use_after_free=use_after_free)
    for phi in effects:
        c.add(phi)
    return c.effect()


# ---------------------------------------------------------------------------
# subsumption


def subsumes(phi1: Effect, phi2: Effect, kinds=None) -> bool:
    """Decide ``phi1 <= phi2`` by goal-directed search over the rules
    unit, equivalence, sequence-above/below and join-above/below."""
    return _search(normalize(phi1), normalize(phi2))


@lru_cache(maxsize=200_000)
def _search(p: Effect, q: Effect) -> bool:
    if isinstance(p, Bot):
        return True
    if p == q:
        return True
    if isinstance(p, (EffSeq, Join)):
        return _search(p.left, q) and _search(p.right, q)
    if isinstance(q, (EffSeq, Join)):
        return _search(p, q.left) or _search(p, q.right)
    return False


# ---------------------------------------------------------------------------
# rendering


def _region_namer(normalize_names: bool):
    names: dict = {}

    def name(r: Region) -> str:
        if not normalize_names or r == GLOBAL or r.is_var:
            return r.name
        if r not in names:
            names[r] = f"r{len(names) + 1}"
        return names[r]
    return name


def render_effect(phi: Effect, *, normalize_names: bool = True, namer=None) -> str:
    name = namer or _region_namer(normalize_names)
    return _render(normalize(phi), name)


def _render(phi: Effect, name) -> str:
    if isinstance(phi, Bot):
        return "{bot}"
    if isinstance(phi, Fresh):
        return f"{{fresh {name(phi.region)} {phi.size}}}"
    if isinstance(phi, Free):
        return f"{{free {name(phi.region)}}}"
    if isinstance(phi, SplitEff):
        return f"{{split {name(phi.parent)} {phi.size} {name(phi.child)}}}"
    if isinstance(phi, AllocEff):
        return f"{{alloc {phi.size} {name(phi.region)}}}"
    if isinstance(phi, EffVar):
        return f"{{{phi.name}}}"
    if isinstance(phi, Rec):
        return f"{{rec {phi.var}: {_render(phi.body, name)}}}"
    if isinstance(phi, EffSeq):
        return f"{_render(phi.left, name)} x {_render(phi.right, name)}"
    if isinstance(phi, Join):
        return f"({_render(phi.left, name)} \\/ {_render(phi.right, name)})"
    raise TypeError(f"not an effect: {phi!r}")


def effect_to_json(phi: Effect, *, normalize_names: bool = True, namer=None):
    name = namer or _region_namer(normalize_names)
    return _to_json(normalize(phi), name)


def _to_json(phi: Effect, name):
    if isinstance(phi, Bot):
        return {"op": "bot"}
    if isinstance(phi, Fresh):
        return {"op": "fresh", "region": name(phi.region), "size": str(phi.size)}
    if isinstance(phi, Free):
        return {"op": "free", "region": name(phi.region)}
    if isinstance(phi, SplitEff):
        return {"op": "split", "parent": name(phi.parent), "size": str(phi.size),
                "child": name(phi.child)}
    if isinstance(phi, AllocEff):
        return {"op": "alloc", "size": str(phi.size), "region": name(phi.region)}
    if isinstance(phi, EffVar):
        return {"op": "var", "name": phi.name}
    if isinstance(phi, Rec):
        return {"op": "rec", "var": phi.var, "body": _to_json(phi.body, name)}
    if isinstance(phi, EffSeq):
        return {"op": "seq", "items": [_to_json(a, name) for a in spine(phi)]}
    if isinstance(phi, Join):
        return {"op": "join", "left": _to_json(phi.left, name),
                "right": _to_json(phi.right, name)}
    raise TypeError(f"not an effect: {phi!r}")


def dumps_effect(phi: Effect) -> str:
    return json.dumps(effect_to_json(phi), sort_keys=True)
