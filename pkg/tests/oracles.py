"""Independent oracles for the test suite.

Nothing here imports the normalizer or the subsumption search from
``spegion.effects``. Equivalence classes come from breadth-first rewriting
with the two associativity laws on raw effect trees. Subsumption is the least
fixpoint of the eight rules over the subterm pairs of a goal.
"""

from __future__ import annotations

import itertools
from collections import deque
from functools import lru_cache

from spegion.sizes import OMEGA
from spegion.syntax import (BOT, AllocEff, Bot, EffSeq, Fresh, Free, Join, Region,
                            SplitEff)

R1 = Region("r1", "var")
R2 = Region("r2", "var")

# 4 atoms over 2 regions, plus the unit leaf
ATOMS = (AllocEff(1, R1), Free(R2), Fresh(R1, 2), SplitEff(R1, 1, R2))
LEAVES = ATOMS + (BOT,)


def trees(n_leaves: int, leaves=LEAVES) -> list:
    """Every binary Seq/Join tree with exactly ``n_leaves`` leaves."""
    if n_leaves == 1:
        return list(leaves)
    out = []
    for k in range(1, n_leaves):
        for left in trees(k, leaves):
            for right in trees(n_leaves - k, leaves):
                out.append(EffSeq(left, right))
                out.append(Join(left, right))
    return out


def leaf_count(phi) -> int:
    if isinstance(phi, (EffSeq, Join)):
        return leaf_count(phi.left) + leaf_count(phi.right)
    return 1


def pairs_upto(total_leaves: int) -> list:
    """All (phi1, phi2) with leaf_count(phi1) + leaf_count(phi2) <= total_leaves."""
    by_size = {n: trees(n) for n in range(1, total_leaves)}
    out = []
    for n1 in range(1, total_leaves):
        for n2 in range(1, total_leaves - n1 + 1):
            out.extend(itertools.product(by_size[n1], by_size[n2]))
    return out


def _rewrites(phi):
    """Every tree one associativity step away from ``phi``, at any position."""
    for node in (EffSeq, Join):
        if isinstance(phi, node):
            a, b = phi.left, phi.right
            if isinstance(a, node):
                yield node(a.left, node(a.right, b))
            if isinstance(b, node):
                yield node(node(a, b.left), b.right)
    if isinstance(phi, (EffSeq, Join)):
        node = type(phi)
        for left in _rewrites(phi.left):
            yield node(left, phi.right)
        for right in _rewrites(phi.right):
            yield node(phi.left, right)


@lru_cache(maxsize=None)
def equiv_class(phi) -> frozenset:
    """Closure of ``{phi}`` under refl, sym, trans, congruence and both
    associativity laws."""
    seen = {phi}
    todo = deque([phi])
    while todo:
        for nxt in _rewrites(todo.popleft()):
            if nxt not in seen:
                seen.add(nxt)
                todo.append(nxt)
    return frozenset(seen)


def oracle_equiv(a, b) -> bool:
    return b in equiv_class(a)


def _subterms(phi, out: set) -> set:
    out.add(phi)
    if isinstance(phi, (EffSeq, Join)):
        _subterms(phi.left, out)
        _subterms(phi.right, out)
    return out


def oracle_subsumes(phi1, phi2) -> bool:
    """Least fixpoint of sb-equiv, sb-bot, sb-x-above, sb-x-below1/2,
    sb-join-above, sb-join-below1/2 restricted to subterm pairs.  Every
    premise of every rule is a pair of subterms, so the restriction is exact."""
    lefts = _subterms(phi1, set())
    rights = _subterms(phi2, set())
    derived: set = set()
    changed = True
    while changed:
        changed = False
        for x in lefts:
            for y in rights:
                if (x, y) in derived:
                    continue
                if _one_rule(x, y, derived):
                    derived.add((x, y))
                    changed = True
    return (phi1, phi2) in derived


def _one_rule(x, y, derived: set) -> bool:
    if isinstance(x, Bot):
        return True
    if oracle_equiv(x, y):
        return True
    if isinstance(x, (EffSeq, Join)) and (x.left, y) in derived and (x.right, y) in derived:
        return True
    if isinstance(y, (EffSeq, Join)) and ((x, y.left) in derived or (x, y.right) in derived):
        return True
    return False


# ---------------------------------------------------------------------------
# size oracle: omega as float infinity


def as_float(s) -> float:
    return float("inf") if s is OMEGA else float(s)


def from_float(x: float):
    return OMEGA if x == float("inf") else int(x)
