"""Compositions, the reverse-Catalan predicate and the two multinomial counts.

A composition is a plain tuple of nonnegative ints ``(k_1, ..., k_n)``.
Positions are 1-based throughout, matching the combinatorial convention.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product
from math import factorial, prod
from typing import Iterable, Iterator, Sequence

# Leaf c doubles as the "no zero" answer of maxzero: it sorts below every
# numeric index, so ``maxzero(k) < j`` reads the same with or without zeros.
C_SENTINEL = 0

Composition = tuple[int, ...]


class CompositionError(ValueError):
    """Raised for malformed compositions or out-of-range positions."""


def as_composition(parts: Iterable[int]) -> Composition:
    k = tuple(int(p) for p in parts)
    if any(p < 0 for p in k):
        raise CompositionError(f"negative part in {k}")
    return k


def parse_composition(text: str) -> Composition:
    """Parse ``"0,0,2,1,1,2"``; the empty string is the empty composition."""
    text = text.strip()
    if not text:
        return ()
    try:
        return as_composition(int(tok) for tok in text.split(","))
    except ValueError as exc:
        raise CompositionError(f"cannot parse composition {text!r}: {exc}") from None


def format_composition(k: Sequence[int]) -> str:
    return ",".join(str(p) for p in k)


def check_balanced(k: Sequence[int]) -> None:
    if sum(k) != len(k):
        raise CompositionError(f"{tuple(k)} sums to {sum(k)}, expected its length {len(k)}")


def is_reverse_catalan(k: Sequence[int]) -> bool:
    """True iff every suffix of length i sums to at least i."""
    total = 0
    for i, part in enumerate(reversed(k), start=1):
        total += part
        if total < i:
            return False
    return True


def is_right_justified(k: Sequence[int]) -> bool:
    """True iff every zero entry comes before every nonzero entry."""
    seen_nonzero = False
    for part in k:
        if part:
            seen_nonzero = True
        elif seen_nonzero:
            return False
    return True


def maxzero(k: Sequence[int]) -> int:
    """Largest 1-based position holding a zero, else :data:`C_SENTINEL`."""
    for j in range(len(k), 0, -1):
        if k[j - 1] == 0:
            return j
    return C_SENTINEL


def zeros_right_of(k: Sequence[int], i: int) -> int:
    if not 1 <= i <= len(k):
        raise CompositionError(f"index {i} out of range for length {len(k)}")
    return sum(1 for part in k[i:] if part == 0)


def derive(k: Sequence[int], j: int) -> Composition:
    """Decrement ``k_j`` and drop the rightmost zero of the result."""
    n = len(k)
    if not 1 <= j <= n:
        raise CompositionError(f"index {j} out of range for length {n}")
    if j <= maxzero(k):
        raise CompositionError(f"position {j} is not right of maxzero {maxzero(k)} in {tuple(k)}")
    if k[j - 1] == 0:
        raise CompositionError(f"k_{j} = 0 in {tuple(k)}")
    parts = list(k)
    parts[j - 1] -= 1
    drop = maxzero(parts)
    if drop == C_SENTINEL:
        raise CompositionError(f"no zero to remove after decrementing k_{j} in {tuple(k)}")
    del parts[drop - 1]
    return tuple(parts)


def undo_derive(k: Sequence[int], j: int, zero_at: int | None) -> Composition:
    """Inverse of :func:`derive`.

    With ``zero_at = i`` a zero is inserted at position ``i`` and then the
    entry at ``j`` is incremented; with ``zero_at = None`` a 1 is inserted
    at position ``j``.
    """
    parts = list(k)
    if zero_at is None:
        parts.insert(j - 1, 1)
    else:
        parts.insert(zero_at - 1, 0)
        parts[j - 1] += 1
    return tuple(parts)


@lru_cache(maxsize=None)
def _asym(k: Composition) -> int:
    if not k:
        return 1
    return sum(_asym(derive(k, j)) for j in range(maxzero(k) + 1, len(k) + 1))


def asym_multinomial(k: Sequence[int]) -> int:
    """The asymmetric multinomial coefficient, via the derive() recursion.

    Zero exactly when ``k`` is not reverse-Catalan. The empty composition
    counts 1.
    """
    k = as_composition(k)
    check_balanced(k)
    return _asym(k)


def multinomial(k: Sequence[int]) -> int:
    return factorial(sum(k)) // prod(factorial(p) for p in k)


def compositions(n: int) -> Iterator[Composition]:
    """All length-``n`` tuples of nonnegative ints summing to ``n``, lexicographically."""
    def rec(prefix: list[int], remaining: int, slots: int) -> Iterator[Composition]:
        if slots == 0:
            if remaining == 0:
                yield tuple(prefix)
            return
        for part in range(remaining + 1):
            prefix.append(part)
            yield from rec(prefix, remaining - part, slots - 1)
            prefix.pop()

    yield from rec([], n, n)


def reverse_catalan_compositions(n: int) -> Iterator[Composition]:
    return (k for k in compositions(n) if is_reverse_catalan(k))


def brute_force_compositions(n: int) -> set[Composition]:
    """Oracle for :func:`compositions`: filter the full grid."""
    return {k for k in product(range(n + 1), repeat=n) if sum(k) == n}
