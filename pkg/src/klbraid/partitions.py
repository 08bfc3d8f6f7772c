"""Integer partitions, set partitions, and the combinatorics the rest builds on.

An ``IntPartition`` is a weakly decreasing tuple of positive block sizes.
``multiplicity`` counts the set partitions of an n-set whose block-size
multiset is a given partition of n, via the factorial formula

    m(lam) = n! / (prod_i b_i! * prod_j (c_j - c_{j+1})!)

where c is the conjugate partition (c_j - c_{j+1} is the number of blocks of
size exactly j).  ``set_partitions_of`` enumerates actual set partitions so
that formula can be checked against a census.
"""

from __future__ import annotations

from collections.abc import Iterator
from math import factorial

from .errors import InternalConsistencyError, OracleBoundError

DEFAULT_SET_PARTITION_BOUND = 9


class IntPartition:
    """A partition of a positive integer into weakly decreasing positive parts."""

    __slots__ = ("blocks",)

    def __init__(self, blocks):
        bs = sorted(blocks, reverse=True)
        if not bs:
            raise ValueError("partition must have at least one block")
        if any(not isinstance(b, int) or b < 1 for b in bs):
            raise ValueError(f"blocks must be positive ints: {blocks!r}")
        self.blocks = tuple(bs)

    @classmethod
    def parse(cls, text: str) -> "IntPartition":
        """Parse the plus-separated form, e.g. ``"3+1+1"``."""
        parts = [piece.strip() for piece in text.split("+")]
        try:
            blocks = [int(piece) for piece in parts]
        except ValueError:
            raise ValueError(f"cannot parse partition {text!r}") from None
        return cls(blocks)

    @property
    def size(self) -> int:
        return sum(self.blocks)

    @property
    def length(self) -> int:
        return len(self.blocks)

    def conjugate(self) -> "IntPartition":
        return IntPartition(
            sum(1 for b in self.blocks if b >= j) for j in range(1, self.blocks[0] + 1)
        )

    def __eq__(self, other):
        if not isinstance(other, IntPartition):
            return NotImplemented
        return self.blocks == other.blocks

    def __hash__(self):
        return hash(self.blocks)

    def __str__(self):
        return "+".join(str(b) for b in self.blocks)

    def __repr__(self):
        return f"IntPartition({list(self.blocks)!r})"

    def to_json_obj(self) -> list[int]:
        return list(self.blocks)


def revlex_key(lam: IntPartition):
    """Sort key putting partitions of equal size in reverse lexicographic order,
    i.e. [n] first and the all-ones partition last."""
    return tuple(-b for b in lam.blocks)


def partitions_of(n: int) -> Iterator[IntPartition]:
    """All partitions of n, in reverse lexicographic order."""
    if n < 1:
        raise ValueError("n must be positive")

    def gen(remaining, cap):
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, cap), 0, -1):
            for rest in gen(remaining - first, first):
                yield (first,) + rest

    for blocks in gen(n, n):
        yield IntPartition(blocks)


def multiplicity(lam: IntPartition) -> int:
    """Number of set partitions of a |lam|-set with block sizes lam."""
    n = lam.size
    denom = 1
    for b in lam.blocks:
        denom *= factorial(b)
    conj = lam.conjugate().blocks
    for j, c in enumerate(conj):
        nxt = conj[j + 1] if j + 1 < len(conj) else 0
        denom *= factorial(c - nxt)
    q, r = divmod(factorial(n), denom)
    if r:
        raise InternalConsistencyError(f"inexact multiplicity division for {lam}")
    return q


def bounded_compositions(lam: IntPartition, total: int) -> Iterator[tuple[int, ...]]:
    """Tuples (d_1, ..., d_l) with 1 <= d_k <= b_k and sum(d) == total.

    Emitted in ascending lexicographic order.  The feasible totals are
    exactly length(lam) <= total <= size(lam); anything else yields nothing.
    """
    bounds = lam.blocks
    l = len(bounds)
    suffix_max = [0] * (l + 1)
    for k in range(l - 1, -1, -1):
        suffix_max[k] = suffix_max[k + 1] + bounds[k]

    def rec(k, remaining, acc):
        if k == l:
            if remaining == 0:
                yield tuple(acc)
            return
        slots_after = l - k - 1
        lo = max(1, remaining - (suffix_max[k + 1]))
        hi = min(bounds[k], remaining - slots_after)
        for d in range(lo, hi + 1):
            acc.append(d)
            yield from rec(k + 1, remaining - d, acc)
            acc.pop()

    yield from rec(0, total, [])


def _set_partitions_unchecked(n: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    # blocks are ascending tuples, ordered by least element; inserting the
    # new maximum keeps both properties, so every yielded form is canonical
    if n == 0:
        yield ()
        return
    for p in _set_partitions_unchecked(n - 1):
        for idx in range(len(p)):
            yield p[:idx] + (p[idx] + (n,),) + p[idx + 1 :]
        yield p + ((n,),)


def set_partitions_of(
    n: int, bound: int = DEFAULT_SET_PARTITION_BOUND
) -> Iterator[tuple[tuple[int, ...], ...]]:
    """All set partitions of {1, ..., n} in a fixed deterministic order.

    Brute-force enumeration (Bell(n) items), so n is capped by ``bound``.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n > bound:
        raise OracleBoundError(f"set partition enumeration capped at n <= {bound}, got {n}")
    return _set_partitions_unchecked(n)


def shape_of(set_partition: tuple[tuple[int, ...], ...]) -> IntPartition:
    """Block-size partition of a set partition."""
    return IntPartition(len(b) for b in set_partition)
