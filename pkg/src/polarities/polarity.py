"""Finite polarities and their Galois derivation operators."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import bits
from .errors import DimensionError, RangeError

X_SIDE = "X"
Y_SIDE = "Y"
SIDES = (X_SIDE, Y_SIDE)


@dataclass(frozen=True)
class Polarity:
    """A polarity ``(X, Y, R)`` on integer carriers.

    ``rows[x]`` is the bitmask of ``{y : x R y}``; the column view ``cols[y]``
    is derived on construction.
    """

    x_size: int
    y_size: int
    rows: tuple[int, ...]
    cols: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.x_size < 0 or self.y_size < 0:
            raise DimensionError("carrier sizes must be non-negative")
        rows = tuple(self.rows)
        if len(rows) != self.x_size:
            raise DimensionError(f"expected {self.x_size} rows, got {len(rows)}")
        for r in rows:
            bits.check_width(r, self.y_size, "row")
        cols = [0] * self.y_size
        for x, r in enumerate(rows):
            for y in bits.iter_bits(r):
                cols[y] |= 1 << x
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", tuple(cols))

    @classmethod
    def from_pairs(cls, x_size: int, y_size: int, pairs: Iterable[tuple[int, int]]) -> "Polarity":
        rows = [0] * x_size
        for x, y in pairs:
            if not (0 <= x < x_size and 0 <= y < y_size):
                raise RangeError(f"pair ({x},{y}) out of range")
            rows[x] |= 1 << y
        return cls(x_size, y_size, tuple(rows))

    @classmethod
    def from_predicate(cls, x_size: int, y_size: int, pred) -> "Polarity":
        return cls.from_pairs(x_size, y_size, ((x, y) for x in range(x_size) for y in range(y_size) if pred(x, y)))

    @classmethod
    def from_matrix(cls, matrix: Sequence[Sequence[bool]], y_size: int | None = None) -> "Polarity":
        x_size = len(matrix)
        if y_size is None:
            y_size = len(matrix[0]) if x_size else 0
        return cls.from_predicate(x_size, y_size, lambda x, y: bool(matrix[x][y]))

    def related(self, x: int, y: int) -> bool:
        return bool(self.rows[x] >> y & 1)

    def pairs(self) -> list[tuple[int, int]]:
        return [(x, y) for x in range(self.x_size) for y in bits.iter_bits(self.rows[x])]

    @property
    def full_x(self) -> int:
        return bits.full(self.x_size)

    @property
    def full_y(self) -> int:
        return bits.full(self.y_size)

    def size(self, side: str) -> int:
        if side == X_SIDE:
            return self.x_size
        if side == Y_SIDE:
            return self.y_size
        raise ValueError(f"unknown side {side!r}")

    # Galois connection

    def rho(self, a: int) -> int:
        """``{y : x R y for all x in a}``."""
        bits.check_width(a, self.x_size)
        out = self.full_y
        for x in bits.iter_bits(a):
            out &= self.rows[x]
        return out

    def lam(self, b: int) -> int:
        """``{x : x R y for all y in b}``."""
        bits.check_width(b, self.y_size)
        out = self.full_x
        for y in bits.iter_bits(b):
            out &= self.cols[y]
        return out

    def close(self, side: str, s: int) -> int:
        if side == X_SIDE:
            return self.lam(self.rho(s))
        if side == Y_SIDE:
            return self.rho(self.lam(s))
        raise ValueError(f"unknown side {side!r}")

    def is_stable(self, side: str, s: int) -> bool:
        return self.close(side, s) == s

    def principal_stable(self, side: str, e: int) -> int:
        """Smallest stable set on ``side`` containing element ``e``."""
        if not 0 <= e < self.size(side):
            raise RangeError(f"element {e} not in {side}")
        return self.close(side, 1 << e)

    def quasi_order(self, side: str) -> "QuasiOrder":
        n = self.size(side)
        derive = self.rho if side == X_SIDE else self.lam
        ders = [derive(1 << a) for a in range(n)]
        up = []
        for a in range(n):
            up.append(bits.from_iter(b for b in range(n) if bits.is_subset(ders[a], ders[b])))
        return QuasiOrder(side, n, tuple(up))

    def dual(self) -> "Polarity":
        """The converse polarity ``(Y, X, R^-1)``."""
        return Polarity(self.y_size, self.x_size, self.cols)


@dataclass(frozen=True)
class QuasiOrder:
    """A reflexive, transitive relation; ``up[a]`` is the mask of ``{b : a <= b}``."""

    side: str
    size: int
    up: tuple[int, ...]

    def leq(self, a: int, b: int) -> bool:
        return bool(self.up[a] >> b & 1)

    def matrix(self) -> list[list[bool]]:
        return [[self.leq(a, b) for b in range(self.size)] for a in range(self.size)]

    def upset_of(self, a: int) -> int:
        return self.up[a]

    def is_reflexive(self) -> bool:
        return all(self.leq(a, a) for a in range(self.size))

    def is_transitive(self) -> bool:
        for a in range(self.size):
            for b in bits.iter_bits(self.up[a]):
                if not bits.is_subset(self.up[b], self.up[a]):
                    return False
        return True


def is_upset(q: QuasiOrder, s: int) -> bool:
    bits.check_width(s, q.size)
    return all(bits.is_subset(q.up[a], s) for a in bits.iter_bits(s))


def satisfies_mon_r(p: Polarity) -> bool:
    """``x' >=1 x R y <=2 y'`` implies ``x' R y'``, checked pointwise."""
    q1 = p.quasi_order(X_SIDE)
    q2 = p.quasi_order(Y_SIDE)
    for x in range(p.x_size):
        for y in bits.iter_bits(p.rows[x]):
            for x2 in bits.iter_bits(q1.up[x]):
                for y2 in bits.iter_bits(q2.up[y]):
                    if not p.related(x2, y2):
                        return False
    return True
