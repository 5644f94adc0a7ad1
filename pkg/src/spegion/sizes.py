"""Sizes: natural numbers extended with an unbounded element ``OMEGA``.

Sizes form a preordered semiring.  Finite sizes are plain Python ints; the
unbounded size is the singleton ``OMEGA``.  Symbolic sizes (``SizeVar`` and
``SizeOp``) exist so fixtures can be echoed, but none of the arithmetic
below accepts them.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass
from typing import Union

log = logging.getLogger(__name__)

# Finite sums past this saturate to OMEGA.
SIZE_LIMIT = 2**63 - 1


class _Omega(enum.Enum):
    OMEGA = "w"

    def __repr__(self) -> str:
        return "OMEGA"

    def __str__(self) -> str:
        return "w"


OMEGA = _Omega.OMEGA


@dataclass(frozen=True)
class SizeVar:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class SizeOp:
    """Compound size expression, only meaningful in fixture mode."""
    op: str
    left: "Size"
    right: "Size"

    def __str__(self) -> str:
        return f"({self.left} {self.op} {self.right})"


Size = Union[int, _Omega, SizeVar, SizeOp]


def is_concrete(s: object) -> bool:
    return s is OMEGA or (isinstance(s, int) and not isinstance(s, bool) and s >= 0)


def is_finite(s: Size) -> bool:
    return isinstance(s, int)


def _check(*sizes: Size) -> None:
    for s in sizes:
        if not is_concrete(s):
            raise ValueError(f"not a concrete size: {s!r}")


def size_add(a: Size, b: Size) -> Size:
    _check(a, b)
    if a is OMEGA or b is OMEGA:
        return OMEGA
    total = a + b
    if total > SIZE_LIMIT:
        log.warning("size addition %d + %d saturated to w", a, b)
        return OMEGA
    return total


def size_sum(sizes) -> Size:
    total: Size = 0
    for s in sizes:
        total = size_add(total, s)
    return total


def size_mul(a: Size, b: Size) -> Size:
    # 0 annihilates, including 0 * w.
    _check(a, b)
    if a == 0 or b == 0:
        return 0
    if a is OMEGA or b is OMEGA:
        return OMEGA
    product = a * b
    if product > SIZE_LIMIT:
        log.warning("size product %d * %d saturated to w", a, b)
        return OMEGA
    return product


def monus(n: Size, m: Size) -> Size:
    """Truncated subtraction, cases tried top to bottom."""
    _check(n, m)
    if n is not OMEGA and m is not OMEGA:
        return n - m if n >= m else 0
    if m == 0:
        return n
    if n is not OMEGA and m is OMEGA:
        return 0
    # n is w and m is nonzero
    return OMEGA


def size_leq(a: Size, b: Size) -> bool:
    _check(a, b)
    if b is OMEGA:
        return True
    if a is OMEGA:
        return False
    return a <= b


def size_max(a: Size, b: Size) -> Size:
    return b if size_leq(a, b) else a


def format_size(s: Size) -> str:
    return str(s)


def parse_size(text: str) -> Size:
    if text in ("w", "ω", "omega"):
        return OMEGA
    value = int(text)
    if value < 0:
        raise ValueError("sizes are non-negative")
    return value
