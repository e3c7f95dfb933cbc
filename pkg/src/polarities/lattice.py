"""The complete lattice of stable subsets of X."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

from . import bits
from .errors import CapacityError, RangeError
from .polarity import X_SIDE, Polarity

DEFAULT_CAP = 1 << 20
TABLE_CACHE_LIMIT = 256


def next_closure(p: Polarity) -> Iterator[int]:
    """Yield every stable subset of X once, in lectic order.

    Element 0 is the most significant position, so ``closure(empty)`` comes
    first and ``X`` last.
    """
    n = p.x_size
    close = lambda s: p.lam(p.rho(s))
    a = close(0)
    yield a
    full = bits.full(n)
    while a != full:
        for i in range(n - 1, -1, -1):
            bit = 1 << i
            if a & bit:
                continue
            prefix = bits.full(i)
            b = close((a & prefix) | bit)
            if b & prefix == a & prefix:
                a = b
                break
        else:  # pragma: no cover - unreachable for a closure operator
            raise AssertionError("NextClosure failed to advance")
        yield a


@dataclass(frozen=True)
class StableLattice:
    """``P+``: all stable subsets of X ordered by inclusion.

    ``elements`` are bitmasks in lectic order; lattice operations take and
    return indices into that list.
    """

    source: Polarity
    elements: tuple[int, ...]
    index: dict = field(repr=False, compare=False)
    up: tuple[int, ...] = field(repr=False, compare=False)
    bottom: int
    top: int
    join_table: tuple | None = field(default=None, repr=False, compare=False)
    meet_table: tuple | None = field(default=None, repr=False, compare=False)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @property
    def size(self) -> int:
        return len(self.elements)

    def index_of(self, subset: int) -> int:
        try:
            return self.index[subset]
        except KeyError:
            raise RangeError(f"{bits.fmt(subset)} is not a stable set") from None

    def _check(self, i: int) -> int:
        if not 0 <= i < len(self.elements):
            raise RangeError(f"lattice index {i} out of range")
        return i

    def leq(self, i: int, j: int) -> bool:
        return bool(self.up[self._check(i)] >> self._check(j) & 1)

    def join(self, family: Iterable[int]) -> int:
        union = 0
        for i in family:
            union |= self.elements[self._check(i)]
        return self.index[self.source.lam(self.source.rho(union))]

    def meet(self, family: Iterable[int]) -> int:
        inter = self.source.full_x
        for i in family:
            inter &= self.elements[self._check(i)]
        return self.index[inter]

    def join2(self, i: int, j: int) -> int:
        if self.join_table is not None:
            return self.join_table[i][j]
        return self.join((i, j))

    def meet2(self, i: int, j: int) -> int:
        if self.meet_table is not None:
            return self.meet_table[i][j]
        return self.meet((i, j))

    def covers(self) -> list[tuple[int, int]]:
        """Hasse diagram edges ``(lower, upper)``."""
        out = []
        for i in range(self.size):
            strict = self.up[i] & ~(1 << i)
            for j in bits.iter_bits(strict):
                between = strict & ~(1 << j)
                if not any(self.up[k] >> j & 1 for k in bits.iter_bits(between)):
                    out.append((i, j))
        return out

    def verify_decomposition(self, i: int) -> bool:
        """Check ``A = join of <x> over x in A = meet of lam{y} over y in rho A``."""
        p = self.source
        a = self.elements[self._check(i)]
        principals = [self.index[p.principal_stable(X_SIDE, x)] for x in bits.iter_bits(a)]
        by_join = self.elements[self.join(principals)]
        by_meet = p.full_x
        for y in bits.iter_bits(p.rho(a)):
            by_meet &= p.lam(1 << y)
        return by_join == a and by_meet == a


def enumerate_stable(p: Polarity, cap: int = DEFAULT_CAP, cache_limit: int = TABLE_CACHE_LIMIT) -> StableLattice:
    elements = []
    for s in next_closure(p):
        elements.append(s)
        if len(elements) > cap:
            raise CapacityError(f"stable-set lattice exceeds cap of {cap} elements")
    index = {s: i for i, s in enumerate(elements)}
    up = []
    for s in elements:
        up.append(bits.from_iter(j for j, t in enumerate(elements) if bits.is_subset(s, t)))
    bottom = index[p.lam(p.full_y)]
    top = index[p.full_x]
    join_table = meet_table = None
    k = len(elements)
    if k <= cache_limit:
        join_table = tuple(
            tuple(index[p.lam(p.rho(elements[i] | elements[j]))] for j in range(k)) for i in range(k)
        )
        meet_table = tuple(tuple(index[elements[i] & elements[j]] for j in range(k)) for i in range(k))
    return StableLattice(p, tuple(elements), index, tuple(up), bottom, top, join_table, meet_table)


def brute_force_stable(p: Polarity) -> list[int]:
    """Oracle: filter all subsets of X by stability, in lectic order."""
    found = [s for s in range(1 << p.x_size) if p.is_stable(X_SIDE, s)]
    return sorted(found, key=lambda s: bits.lectic_key(s, p.x_size))
