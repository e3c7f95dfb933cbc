"""Seeded random structures for property tests and the self-check."""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product
from typing import Iterator

from . import bits, tables
from .nlo import FiniteLattice, Homomorphism, OmegaNLO, is_homomorphism
from .omega import OmegaPolarity, RelS, RelT
from .polarity import X_SIDE, Y_SIDE, Polarity


@dataclass(frozen=True)
class OmegaConfig:
    max_x: int = 4
    max_y: int = 4
    min_size: int = 1
    max_n: int = 2
    max_m: int = 2
    relation_density: float = 0.5
    section_density: float = 0.15


def random_polarity(rng: random.Random, x_size: int, y_size: int, density: float = 0.5) -> Polarity:
    return Polarity.from_predicate(x_size, y_size, lambda x, y: rng.random() < density)


def all_polarities(x_size: int, y_size: int) -> Iterator[Polarity]:
    """Every relation on the given carriers (``2**(x*y)`` of them)."""
    cells = x_size * y_size
    for code in range(1 << cells):
        rows = tuple((code >> (x * y_size)) & bits.full(y_size) for x in range(x_size))
        yield Polarity(x_size, y_size, rows)


def close_rel_s(p: Polarity, s: RelS) -> RelS:
    """Least relation containing ``s`` whose sections are all stable.

    Relations with stable sections are closed under intersection, so the
    fixpoint of closing each section in turn is that least relation.
    """
    n, k = s.n, p.x_size
    rows = list(s.rows)
    radices = [k] * n
    changed = True
    while changed:
        changed = False
        for i, xs in enumerate(product(range(k), repeat=n)):
            c = p.close(Y_SIDE, rows[i])
            if c != rows[i]:
                rows[i] = c
                changed = True
        for i in range(n):
            for rest in product(range(k), repeat=n - 1):
                idx = [bits.tuple_index(rest[:i] + (v,) + rest[i:], radices) for v in range(k)]
                for y in range(p.y_size):
                    col = bits.from_iter(v for v in range(k) if rows[idx[v]] >> y & 1)
                    c = p.close(X_SIDE, col)
                    if c != col:
                        for v in bits.iter_bits(c & ~col):
                            rows[idx[v]] |= 1 << y
                        changed = True
    return RelS(n, p.x_size, p.y_size, tuple(rows))


def close_rel_t(p: Polarity, t: RelT) -> RelT:
    closed = close_rel_s(p.dual(), RelS(t.m, p.y_size, p.x_size, t.cols))
    return RelT(t.m, p.x_size, p.y_size, closed.rows)


def random_omega(rng: random.Random, cfg: OmegaConfig = OmegaConfig(), p: Polarity | None = None) -> OmegaPolarity:
    if p is None:
        p = random_polarity(
            rng, rng.randint(cfg.min_size, cfg.max_x), rng.randint(cfg.min_size, cfg.max_y), cfg.relation_density
        )
    n = rng.randint(0, cfg.max_n)
    m = rng.randint(0, cfg.max_m)
    d = cfg.section_density
    s = RelS(n, p.x_size, p.y_size, tuple(
        bits.from_iter(y for y in range(p.y_size) if rng.random() < d) for _ in range(p.x_size**n)
    ))
    t = RelT(m, p.x_size, p.y_size, tuple(
        bits.from_iter(x for x in range(p.x_size) if rng.random() < d) for _ in range(p.y_size**m)
    ))
    return OmegaPolarity(p, close_rel_s(p, s), close_rel_t(p, t))


# operators on finite lattices

def random_normal_operator(rng: random.Random, l: FiniteLattice, n: int, terms: int = 3) -> tuple[int, ...]:
    """Join of ``c_k`` over the terms whose thresholds every argument exceeds.

    ``a -> [a not <= t]`` preserves binary joins and sends 0 to false, so
    each term and their join is normal in every coordinate.
    """
    if n == 0:
        return (rng.randrange(l.size),)
    spec = [(tuple(rng.randrange(l.size) for _ in range(n)), rng.randrange(l.size)) for _ in range(terms)]

    def f(*args):
        out = l.bot
        for thresholds, c in spec:
            if all(not l.leq(a, t) for a, t in zip(args, thresholds)):
                out = l.join[out][c]
        return out

    return tables.build(l.size, n, f)


def random_normal_dual_operator(rng: random.Random, l: FiniteLattice, m: int, terms: int = 3) -> tuple[int, ...]:
    if m == 0:
        return (rng.randrange(l.size),)
    spec = [(tuple(rng.randrange(l.size) for _ in range(m)), rng.randrange(l.size)) for _ in range(terms)]

    def g(*args):
        out = l.top
        for thresholds, d in spec:
            if all(not l.leq(t, a) for a, t in zip(args, thresholds)):
                out = l.meet[out][d]
        return out

    return tables.build(l.size, m, g)


def random_nlo(rng: random.Random, l: FiniteLattice, max_n: int = 2, max_m: int = 2) -> OmegaNLO:
    n, m = rng.randint(0, max_n), rng.randint(0, max_m)
    A = OmegaNLO(l, n, random_normal_operator(rng, l, n), m, random_normal_dual_operator(rng, l, m))
    return A.validated()


def lattice_homs(src: FiniteLattice, dst: FiniteLattice) -> list[tuple[int, ...]]:
    """All bounded lattice homomorphisms, by backtracking over element images."""
    k = src.size
    out = []
    table = [None] * k

    def consistent(upto):
        for a in range(upto + 1):
            for b in range(upto + 1):
                j, mt = src.join[a][b], src.meet[a][b]
                if j <= upto and table[j] != dst.join[table[a]][table[b]]:
                    return False
                if mt <= upto and table[mt] != dst.meet[table[a]][table[b]]:
                    return False
        return True

    def extend(i):
        if i == k:
            out.append(tuple(table))
            return
        choices = range(dst.size)
        if i == src.bot:
            choices = [dst.bot]
        if i == src.top:
            choices = [v for v in choices if v == dst.top]
        for v in choices:
            table[i] = v
            if consistent(i):
                extend(i + 1)
        table[i] = None

    extend(0)
    return out


def _meet_all_coords(l: FiniteLattice, n: int) -> tuple[int, ...]:
    return tables.build(l.size, n, lambda *a: l.meet_all(a))


def _join_all_coords(l: FiniteLattice, n: int) -> tuple[int, ...]:
    return tables.build(l.size, n, lambda *a: l.join_all(a))


def compatible_ops(rng: random.Random, theta: tuple[int, ...], L: FiniteLattice, M: FiniteLattice):
    """A pair of Omega-NLOs on ``L`` and ``M`` making ``theta`` an NLO homomorphism.

    Tries a random operator on ``L`` pushed forward along ``theta`` first and
    falls back to operators built from lattice terms, which every lattice
    homomorphism respects.
    """
    for _ in range(8):
        n = rng.randint(1, 2)
        f_L = random_normal_operator(rng, L, n)
        f_M = tables.build(M.size, n, lambda *b: M.join_all(
            theta[f_L[tables.index(a, L.size)]]
            for a in product(range(L.size), repeat=n)
            if all(M.leq(theta[ai], bi) for ai, bi in zip(a, b))
        ))
        A, B = OmegaNLO(L, n, f_L, 1, tuple(range(L.size))), OmegaNLO(M, n, f_M, 1, tuple(range(M.size)))
        if not B.violations() and not is_homomorphism(Homomorphism(A, B, theta)):
            return A, B
    ident_L, ident_M = tuple(range(L.size)), tuple(range(M.size))
    choice = rng.randrange(3)
    if choice == 0:
        return OmegaNLO(L, 1, ident_L, 1, ident_L), OmegaNLO(M, 1, ident_M, 1, ident_M)
    if choice == 1:
        return (
            OmegaNLO(L, 1, (L.bot,) * L.size, 0, (L.top,)),
            OmegaNLO(M, 1, (M.bot,) * M.size, 0, (M.top,)),
        )
    for n in (2, 1):
        A = OmegaNLO(L, n, _meet_all_coords(L, n), n, _join_all_coords(L, n))
        B = OmegaNLO(M, n, _meet_all_coords(M, n), n, _join_all_coords(M, n))
        if not A.violations() and not B.violations():
            return A, B
    return OmegaNLO(L, 1, ident_L, 1, ident_L), OmegaNLO(M, 1, ident_M, 1, ident_M)
