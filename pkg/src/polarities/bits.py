"""Bitset helpers.

Subsets of a carriers ``{0, ..., n-1}`` are plain Python ints: element ``i``
is bit ``i``.  Ints are immutable and hashable, which is all we need.
"""

from __future__ import annotations

from itertools import product
from typing import Iterable, Iterator, Sequence

from .errors import DimensionError


def full(n: int) -> int:
    return (1 << n) - 1


def from_iter(elements: Iterable[int]) -> int:
    mask = 0
    for e in elements:
        mask |= 1 << e
    return mask


def elements(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_set(mask: int) -> frozenset[int]:
    return frozenset(iter_bits(mask))


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def lowest(mask: int) -> int:
    """Index of the lowest set bit, or -1 for the empty set."""
    return (mask & -mask).bit_length() - 1


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


def check_width(mask: int, width: int, what: str = "subset") -> int:
    if not isinstance(mask, int) or mask < 0 or mask >> width:
        raise DimensionError(f"{what} {mask!r} does not fit a carrier of size {width}")
    return mask


def lectic_key(mask: int, width: int) -> int:
    """Sort key for lectic order with element 0 most significant."""
    key = 0
    for i in range(width):
        if mask >> i & 1:
            key |= 1 << (width - 1 - i)
    return key


def fmt(mask: int) -> str:
    return "{" + ",".join(map(str, iter_bits(mask))) + "}"


# mixed-radix tuple indexing, coordinate 0 most significant

def tuple_index(t: Sequence[int], radices: Sequence[int]) -> int:
    idx = 0
    for v, r in zip(t, radices):
        idx = idx * r + v
    return idx


def index_tuple(idx: int, radices: Sequence[int]) -> tuple[int, ...]:
    out = []
    for r in reversed(radices):
        idx, v = divmod(idx, r)
        out.append(v)
    return tuple(reversed(out))


def all_tuples(radices: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """All tuples in index order (same order as ``tuple_index``)."""
    return product(*(range(r) for r in radices))


def space_size(radices: Sequence[int]) -> int:
    size = 1
    for r in radices:
        size *= r
    return size
