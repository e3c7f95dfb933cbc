"""Flat operation tables on finite lattices and their normality checks.

An ``n``-ary table over a lattice with ``k`` elements is a tuple of length
``k**n``; argument tuples are indexed mixed-radix with coordinate 0 most
significant, i.e. in ``itertools.product`` order.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Callable, Sequence

from .errors import DimensionError


@dataclass(frozen=True)
class Violation:
    law: str
    args: tuple
    detail: str

    def __str__(self) -> str:
        return f"{self.law} at {self.args}: {self.detail}"


def index(args: Sequence[int], k: int) -> int:
    idx = 0
    for a in args:
        idx = idx * k + a
    return idx


def build(k: int, arity: int, fn: Callable[..., int]) -> tuple[int, ...]:
    return tuple(fn(*args) for args in product(range(k), repeat=arity))


def check_shape(table: Sequence[int], k: int, arity: int, what: str = "table") -> None:
    if len(table) != k**arity:
        raise DimensionError(f"{what} has {len(table)} entries, expected {k}**{arity}")
    for v in table:
        if not (isinstance(v, int) and 0 <= v < k):
            raise DimensionError(f"{what} value {v!r} is not a lattice index")


def lookup(table: Sequence[int], k: int, args: Sequence[int]) -> int:
    return table[index(args, k)]


def _check_preserves(k, arity, table, op2, unit, law, unit_law) -> list[Violation]:
    found: dict[str, Violation] = {}
    for i in range(arity):
        for ctx in product(range(k), repeat=arity - 1):
            def at(v):
                return table[index(ctx[:i] + (v,) + ctx[i:], k)]

            key = f"{unit_law}[{i}]"
            if key not in found and at(unit) != unit:
                args = ctx[:i] + (unit,) + ctx[i:]
                found[key] = Violation(unit_law, args, f"coordinate {i}: value {at(unit)} != {unit}")
            key = f"{law}[{i}]"
            if key in found:
                continue
            for a in range(k):
                for b in range(a + 1, k):
                    lhs = at(op2(a, b))
                    rhs = op2(at(a), at(b))
                    if lhs != rhs:
                        found[key] = Violation(
                            law,
                            (ctx[:i] + (a,) + ctx[i:], ctx[:i] + (b,) + ctx[i:]),
                            f"coordinate {i}: f({a} op {b}) = {lhs} but f({a}) op f({b}) = {rhs}",
                        )
                        break
                if key in found:
                    break
    return list(found.values())


def operator_violations(k: int, arity: int, table: Sequence[int], join2, bottom: int) -> list[Violation]:
    """First counterexample per coordinate to binary-join and bottom preservation."""
    check_shape(table, k, arity)
    return _check_preserves(k, arity, table, join2, bottom, "join", "bottom")


def dual_operator_violations(k: int, arity: int, table: Sequence[int], meet2, top: int) -> list[Violation]:
    check_shape(table, k, arity)
    return _check_preserves(k, arity, table, meet2, top, "meet", "top")
