"""Monotonicity types and quasioperators induced by relations on mixed carriers.

A coordinate typed ``"1"`` ranges over X and behaves like an operator
argument; one typed ``"d"`` ranges over Y and turns meets into joins.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

from . import bits, tables
from .errors import ArityError, DimensionError, PreconditionError, RangeError, ValidationError
from .lattice import StableLattice
from .morphisms import MorphismCertificate, Verdict, verify
from .omega import OmegaPolarity, RelS, SectionIssue
from .polarity import X_SIDE, Y_SIDE, Polarity, QuasiOrder

ONE = "1"
PARTIAL = "d"


@dataclass(frozen=True)
class MonotonicityType:
    eps: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "eps", tuple(self.eps))
        for e in self.eps:
            if e not in (ONE, PARTIAL):
                raise ValidationError(f"monotonicity entries are '1' or 'd', got {e!r}")

    @classmethod
    def parse(cls, text: str) -> "MonotonicityType":
        return cls(tuple(text))

    @classmethod
    def all_one(cls, n: int) -> "MonotonicityType":
        return cls((ONE,) * n)

    def __len__(self) -> int:
        return len(self.eps)

    def __str__(self) -> str:
        return "".join(self.eps)

    def sides(self) -> tuple[str, ...]:
        return tuple(X_SIDE if e == ONE else Y_SIDE for e in self.eps)

    def radices(self, x_size: int, y_size: int) -> list[int]:
        return [x_size if e == ONE else y_size for e in self.eps]


@dataclass(frozen=True)
class RelSEps:
    """``S`` of ``X^eps x Y``; ``rows[idx(z)]`` is the Y-mask of ``S[z, -]``."""

    eps: MonotonicityType
    x_size: int
    y_size: int
    rows: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        expected = bits.space_size(self.radices)
        if len(self.rows) != expected:
            raise DimensionError(f"expected {expected} rows, got {len(self.rows)}")
        for r in self.rows:
            bits.check_width(r, self.y_size, "row")

    @property
    def n(self) -> int:
        return len(self.eps)

    @property
    def radices(self) -> list[int]:
        return self.eps.radices(self.x_size, self.y_size)

    @classmethod
    def from_tuples(cls, eps: MonotonicityType, x_size: int, y_size: int, tuples: Iterable[Sequence[int]]) -> "RelSEps":
        radices = eps.radices(x_size, y_size)
        rows = [0] * bits.space_size(radices)
        for t in tuples:
            t = tuple(t)
            if len(t) != len(eps) + 1:
                raise ArityError(f"tuple {t} has the wrong length")
            if not all(0 <= v < r for v, r in zip(t, radices)) or not 0 <= t[-1] < y_size:
                raise RangeError(f"tuple {t} out of range")
            rows[bits.tuple_index(t[:-1], radices)] |= 1 << t[-1]
        return cls(eps, x_size, y_size, tuple(rows))

    @classmethod
    def from_rel_s(cls, s: RelS) -> "RelSEps":
        return cls(MonotonicityType.all_one(s.n), s.x_size, s.y_size, s.rows)

    def to_rel_s(self) -> RelS:
        if any(e != ONE for e in self.eps.eps):
            raise PreconditionError("only an all-ONE relation is an ordinary S-relation")
        return RelS(self.n, self.x_size, self.y_size, self.rows)

    def idx(self, zs: Sequence[int]) -> int:
        if len(zs) != self.n:
            raise ArityError(f"expected {self.n} coordinates")
        for v, r in zip(zs, self.radices):
            if not 0 <= v < r:
                raise RangeError(f"coordinate {v} out of range")
        return bits.tuple_index(zs, self.radices)

    def holds(self, zs: Sequence[int], y: int) -> bool:
        return bool(self.rows[self.idx(zs)] >> y & 1)

    def tuples(self) -> list[tuple[int, ...]]:
        out = []
        for i, zs in enumerate(bits.all_tuples(self.radices)):
            out.extend(zs + (y,) for y in bits.iter_bits(self.rows[i]))
        return out


def validate_eps_sections(p: Polarity, s: RelSEps) -> list[SectionIssue]:
    """Row sections must be Y-stable; the column section at coordinate ``i``
    must be stable on the carrier that coordinate ranges over."""
    if (s.x_size, s.y_size) != (p.x_size, p.y_size):
        raise DimensionError("relation carriers do not match the polarity")
    out = []
    radices = s.radices
    for i, zs in enumerate(bits.all_tuples(radices)):
        section = s.rows[i]
        closure = p.close(Y_SIDE, section)
        if closure != section:
            out.append(SectionIssue("S", Y_SIDE, zs + (None,), bits.lowest(closure & ~section)))
    sides = s.eps.sides()
    for i in range(s.n):
        side = sides[i]
        ctx_radices = radices[:i] + radices[i + 1 :]
        for ctx in bits.all_tuples(ctx_radices):
            for y in range(s.y_size):
                section = 0
                for v in range(radices[i]):
                    zs = ctx[:i] + (v,) + ctx[i:]
                    if s.rows[bits.tuple_index(zs, radices)] >> y & 1:
                        section |= 1 << v
                closure = p.close(side, section)
                if closure != section:
                    where = ctx[:i] + (None,) + ctx[i:] + (y,)
                    out.append(SectionIssue("S", side, where, bits.lowest(closure & ~section)))
    return out


def _eps_args(p: Polarity, s: RelSEps, args: Sequence[int]) -> list[int]:
    if len(args) != s.n:
        raise ArityError(f"expected {s.n} arguments, got {len(args)}")
    out = []
    for a, e in zip(args, s.eps.eps):
        bits.check_width(a, p.x_size)
        if not p.is_stable(X_SIDE, a):
            raise PreconditionError(f"argument {bits.fmt(a)} is not stable")
        out.append(a if e == ONE else p.rho(a))
    return out


def f_S_eps(p: Polarity, s: RelSEps, args: Sequence[int]) -> int:
    """``lam {y : (pi A^eps) S y}`` by intersecting row sections."""
    shifted = _eps_args(p, s, args)
    common = p.full_y
    for zs in product(*(bits.elements(a) for a in shifted)):
        common &= s.rows[bits.tuple_index(zs, s.radices)]
    return p.lam(common)


def f_S_eps_formula(p: Polarity, s: RelSEps, args: Sequence[int]) -> int:
    """Same operator by the quantifier reading: x is in the result iff every
    y that all of ``pi A^eps`` S-relates to is R-related to x."""
    shifted = _eps_args(p, s, args)
    tuples = list(product(*(bits.elements(a) for a in shifted)))
    out = 0
    for x in range(p.x_size):
        if all(p.related(x, y) for y in range(p.y_size) if all(s.holds(zs, y) for zs in tuples)):
            out |= 1 << x
    return out


def f_S_eps_table(p: Polarity, s: RelSEps, L: StableLattice) -> tuple[int, ...]:
    return tables.build(L.size, s.n, lambda *ix: L.index_of(f_S_eps(p, s, [L.elements[i] for i in ix])))


def eps_operator_violations(L: StableLattice, table: Sequence[int], eps: MonotonicityType) -> list[tables.Violation]:
    """Joins preserved at ``1`` coordinates and meets sent to joins at ``d`` coordinates."""
    k, n = L.size, len(eps)
    tables.check_shape(table, k, n)
    out = []
    for i, e in enumerate(eps.eps):
        op2, unit = (L.join2, L.bottom) if e == ONE else (L.meet2, L.top)
        for ctx in product(range(k), repeat=n - 1):
            def at(v):
                return table[tables.index(ctx[:i] + (v,) + ctx[i:], k)]

            if at(unit) != L.bottom:
                out.append(tables.Violation(f"unit[{i}]", ctx[:i] + (unit,) + ctx[i:], f"value {at(unit)}"))
                break
            bad = next(((a, b) for a in range(k) for b in range(a + 1, k) if at(op2(a, b)) != L.join2(at(a), at(b))), None)
            if bad:
                out.append(tables.Violation(f"coordinate[{i}]", bad, f"type {e} law fails"))
                break
    return out


def eps_quasi_order(p: Polarity, eps: MonotonicityType) -> QuasiOrder:
    """Product quasi-order on ``X^eps``, flat mixed-radix indices."""
    orders = [p.quasi_order(side) for side in eps.sides()]
    radices = eps.radices(p.x_size, p.y_size)
    space = list(bits.all_tuples(radices))
    up = []
    for zs in space:
        up.append(bits.from_iter(j for j, ws in enumerate(space) if all(o.leq(a, b) for o, a, b in zip(orders, zs, ws))))
    return QuasiOrder("eps:" + str(eps), len(space), tuple(up))


def alpha_eps(alpha: Sequence[int], beta: Sequence[int], eps: MonotonicityType, src: Polarity, dst: Polarity) -> tuple[int, ...]:
    """Flat table of ``alpha_eps`` from ``X^eps`` to ``(X')^eps``."""
    maps = [alpha if e == ONE else beta for e in eps.eps]
    target = eps.radices(dst.x_size, dst.y_size)
    return tuple(
        bits.tuple_index(tuple(m[z] for m, z in zip(maps, zs)), target)
        for zs in bits.all_tuples(eps.radices(src.x_size, src.y_size))
    )


def verify_eps_morphism(
    src: Polarity,
    dst: Polarity,
    alpha: Sequence[int],
    beta: Sequence[int],
    s: RelSEps,
    s2: RelSEps,
) -> MorphismCertificate:
    """Generalized (1S) and (2S) for a pair already satisfying (1R)-(3R)."""
    if s.eps != s2.eps:
        raise ArityError("the two relations have different monotonicity types")
    base = verify(OmegaPolarity.from_polarity(src), OmegaPolarity.from_polarity(dst), alpha, beta)
    for cond in ("isotone_alpha", "isotone_beta", "1R", "2R", "3R"):
        if not base[cond].holds:
            raise PreconditionError(f"base pair fails {cond} at {base[cond].witness}")
    eps = s.eps
    src_space = list(bits.all_tuples(eps.radices(src.x_size, src.y_size)))
    dst_space = list(bits.all_tuples(eps.radices(dst.x_size, dst.y_size)))
    amap = alpha_eps(alpha, beta, eps, src, dst)
    dst_order = eps_quasi_order(dst, eps)

    first = None
    for i, zs in enumerate(src_space):
        for y in range(src.y_size):
            if s2.rows[amap[i]] >> beta[y] & 1 and not s.rows[i] >> y & 1:
                first = (zs, y)
                break
        if first:
            break
    v1 = Verdict("1S", first is None, first)

    first = None
    for j, ws in enumerate(dst_space):
        upset = [i for i in range(len(src_space)) if dst_order.leq(j, amap[i])]
        for y in range(src.y_size):
            if all(s.rows[i] >> y & 1 for i in upset) and not s2.rows[j] >> beta[y] & 1:
                first = (ws, y)
                break
        if first:
            break
    v2 = Verdict("2S", first is None, first)
    return MorphismCertificate((v1, v2))
