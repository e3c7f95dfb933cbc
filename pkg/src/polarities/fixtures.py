"""Named desk-scale structures used by tests, the CLI and the self-check."""

from __future__ import annotations

from .polarity import Polarity

NEQ3 = Polarity.from_predicate(3, 3, lambda x, y: x != y)
LE2 = Polarity.from_predicate(2, 2, lambda x, y: x <= y)
EMPTY2 = Polarity.from_pairs(2, 2, [])

POLARITIES = {"NEQ3": NEQ3, "LE2": LE2, "EMPTY2": EMPTY2}


def chain(k: int):
    from .nlo import FiniteLattice

    return FiniteLattice.from_order(k, [(a, b) for a in range(k) for b in range(k) if a <= b])


def _lattice(k, covers):
    from .nlo import FiniteLattice

    return FiniteLattice.from_order(k, covers)


def one_element():
    return chain(1)


def ch2():
    return chain(2)


def diamond():
    """The four-element Boolean lattice 2x2: 0 < a, b < 1."""
    return _lattice(4, [(0, 1), (0, 2), (1, 3), (2, 3)])


def n5():
    """0 < a < c < 1 and 0 < b < 1, elements numbered 0, a, b, c, 1."""
    return _lattice(5, [(0, 1), (1, 3), (3, 4), (0, 2), (2, 4)])


def m3():
    return _lattice(5, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)])


def lattices():
    return {"CH2": ch2(), "DIAMOND": diamond(), "N5": n5(), "M3": m3()}
