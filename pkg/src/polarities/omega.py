"""Higher-arity relations on a polarity and the operators they induce.

A relation ``S`` of X^n x Y is stored row-wise: ``rows[idx(xs)]`` is the mask
of ``S[xs, -]``.  A relation ``T`` of X x Y^m is stored column-wise:
``cols[idx(ys)]`` is the mask of ``T[-, ys]``.  These are exactly the sets
that ``f_bullet`` and ``g_T`` intersect.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

from . import bits, tables
from .errors import ArityError, PreconditionError, RangeError, ValidationError
from .lattice import StableLattice
from .polarity import X_SIDE, Y_SIDE, Polarity


@dataclass(frozen=True)
class RelS:
    n: int
    x_size: int
    y_size: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if self.n < 0:
            raise ArityError("arity must be non-negative")
        rows = tuple(self.rows)
        if len(rows) != self.x_size**self.n:
            raise ArityError(f"S needs {self.x_size}**{self.n} rows, got {len(rows)}")
        for r in rows:
            bits.check_width(r, self.y_size, "S row")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_tuples(cls, n: int, x_size: int, y_size: int, tuples: Iterable[Sequence[int]]) -> "RelS":
        rows = [0] * (x_size**n)
        for t in tuples:
            t = tuple(t)
            if len(t) != n + 1:
                raise ArityError(f"S tuple {t} should have {n + 1} entries")
            if not all(0 <= v < x_size for v in t[:n]) or not 0 <= t[n] < y_size:
                raise RangeError(f"S tuple {t} out of range")
            rows[bits.tuple_index(t[:n], [x_size] * n)] |= 1 << t[n]
        return cls(n, x_size, y_size, tuple(rows))

    @classmethod
    def from_polarity(cls, p: Polarity) -> "RelS":
        """``R`` read as a binary S-type relation."""
        return cls(1, p.x_size, p.y_size, p.rows)

    @classmethod
    def full(cls, n: int, x_size: int, y_size: int) -> "RelS":
        return cls(n, x_size, y_size, (bits.full(y_size),) * (x_size**n))

    @classmethod
    def empty(cls, n: int, x_size: int, y_size: int) -> "RelS":
        return cls(n, x_size, y_size, (0,) * (x_size**n))

    def idx(self, xs: Sequence[int]) -> int:
        if len(xs) != self.n:
            raise ArityError(f"expected {self.n} coordinates")
        for v in xs:
            if not 0 <= v < self.x_size:
                raise RangeError(f"coordinate {v} out of range")
        return bits.tuple_index(xs, [self.x_size] * self.n)

    def holds(self, xs: Sequence[int], y: int) -> bool:
        return bool(self.rows[self.idx(xs)] >> y & 1)

    def tuples(self) -> list[tuple[int, ...]]:
        out = []
        for xs in product(range(self.x_size), repeat=self.n):
            for y in bits.iter_bits(self.rows[bits.tuple_index(xs, [self.x_size] * self.n)]):
                out.append(xs + (y,))
        return out

    def row_section(self, xs: Sequence[int]) -> int:
        """``S[xs, -]`` as a subset of Y."""
        return self.rows[self.idx(xs)]

    def column_section(self, xs: Sequence[int], i: int, y: int) -> int:
        """``S[xs[-]_i, y]`` as a subset of X."""
        if not 0 <= i < self.n:
            raise RangeError(f"coordinate {i} out of range for arity {self.n}")
        if not 0 <= y < self.y_size:
            raise RangeError(f"y={y} out of range")
        xs = list(xs)
        out = 0
        for v in range(self.x_size):
            xs[i] = v
            if self.rows[self.idx(xs)] >> y & 1:
                out |= 1 << v
        return out

    def as_rel_t(self) -> "RelT":
        if self.n != 1:
            raise ArityError("only a binary relation can be read both ways")
        cols = [0] * self.y_size
        for x, r in enumerate(self.rows):
            for y in bits.iter_bits(r):
                cols[y] |= 1 << x
        return RelT(1, self.x_size, self.y_size, tuple(cols))


@dataclass(frozen=True)
class RelT:
    m: int
    x_size: int
    y_size: int
    cols: tuple[int, ...]

    def __post_init__(self):
        if self.m < 0:
            raise ArityError("arity must be non-negative")
        cols = tuple(self.cols)
        if len(cols) != self.y_size**self.m:
            raise ArityError(f"T needs {self.y_size}**{self.m} columns, got {len(cols)}")
        for c in cols:
            bits.check_width(c, self.x_size, "T column")
        object.__setattr__(self, "cols", cols)

    @classmethod
    def from_tuples(cls, m: int, x_size: int, y_size: int, tuples: Iterable[Sequence[int]]) -> "RelT":
        cols = [0] * (y_size**m)
        for t in tuples:
            t = tuple(t)
            if len(t) != m + 1:
                raise ArityError(f"T tuple {t} should have {m + 1} entries")
            if not 0 <= t[0] < x_size or not all(0 <= v < y_size for v in t[1:]):
                raise RangeError(f"T tuple {t} out of range")
            cols[bits.tuple_index(t[1:], [y_size] * m)] |= 1 << t[0]
        return cls(m, x_size, y_size, tuple(cols))

    @classmethod
    def from_polarity(cls, p: Polarity) -> "RelT":
        return cls(1, p.x_size, p.y_size, p.cols)

    @classmethod
    def full(cls, m: int, x_size: int, y_size: int) -> "RelT":
        return cls(m, x_size, y_size, (bits.full(x_size),) * (y_size**m))

    @classmethod
    def empty(cls, m: int, x_size: int, y_size: int) -> "RelT":
        return cls(m, x_size, y_size, (0,) * (y_size**m))

    def idx(self, ys: Sequence[int]) -> int:
        if len(ys) != self.m:
            raise ArityError(f"expected {self.m} coordinates")
        for v in ys:
            if not 0 <= v < self.y_size:
                raise RangeError(f"coordinate {v} out of range")
        return bits.tuple_index(ys, [self.y_size] * self.m)

    def holds(self, x: int, ys: Sequence[int]) -> bool:
        return bool(self.cols[self.idx(ys)] >> x & 1)

    def tuples(self) -> list[tuple[int, ...]]:
        out = []
        for ys in product(range(self.y_size), repeat=self.m):
            for x in bits.iter_bits(self.cols[bits.tuple_index(ys, [self.y_size] * self.m)]):
                out.append((x,) + ys)
        return sorted(out)

    def column_section(self, ys: Sequence[int]) -> int:
        """``T[-, ys]`` as a subset of X."""
        return self.cols[self.idx(ys)]

    def row_section(self, x: int, ys: Sequence[int], i: int) -> int:
        """``T[x, ys[-]_i]`` as a subset of Y."""
        if not 0 <= i < self.m:
            raise RangeError(f"coordinate {i} out of range for arity {self.m}")
        if not 0 <= x < self.x_size:
            raise RangeError(f"x={x} out of range")
        ys = list(ys)
        out = 0
        for v in range(self.y_size):
            ys[i] = v
            if self.cols[self.idx(ys)] >> x & 1:
                out |= 1 << v
        return out

    def as_rel_s(self) -> RelS:
        if self.m != 1:
            raise ArityError("only a binary relation can be read both ways")
        rows = [0] * self.x_size
        for y, c in enumerate(self.cols):
            for x in bits.iter_bits(c):
                rows[x] |= 1 << y
        return RelS(1, self.x_size, self.y_size, tuple(rows))


@dataclass(frozen=True)
class SectionIssue:
    """A non-stable section.

    ``index`` lists the fixed coordinates in relation order with ``None`` at
    the varying position; ``witness`` is an element the closure adds.
    """

    relation: str
    side: str
    index: tuple
    witness: int

    def __str__(self) -> str:
        coords = ",".join("-" if v is None else str(v) for v in self.index)
        return f"{self.relation}[{coords}] not stable in {self.side}: closure adds {self.witness}"


def _issue(p: Polarity, relation: str, side: str, index: tuple, section: int):
    closed = p.close(side, section)
    if closed == section:
        return None
    return SectionIssue(relation, side, index, bits.lowest(closed & ~section))


def s_sections(s: RelS):
    """Yield ``(index, side, section)`` for every distinct section of S."""
    n, xk = s.n, s.x_size
    for xs in product(range(xk), repeat=n):
        yield xs + (None,), Y_SIDE, s.row_section(xs)
    for i in range(n):
        for rest in product(range(xk), repeat=n - 1):
            xs = rest[:i] + (0,) + rest[i:]
            for y in range(s.y_size):
                yield rest[:i] + (None,) + rest[i:] + (y,), X_SIDE, s.column_section(xs, i, y)


def t_sections(t: RelT):
    m, yk = t.m, t.y_size
    for ys in product(range(yk), repeat=m):
        yield (None,) + ys, X_SIDE, t.column_section(ys)
    for i in range(m):
        for rest in product(range(yk), repeat=m - 1):
            ys = rest[:i] + (0,) + rest[i:]
            for x in range(t.x_size):
                yield (x,) + rest[:i] + (None,) + rest[i:], Y_SIDE, t.row_section(x, ys, i)


def validate_sections(p: Polarity, s: RelS | None = None, t: RelT | None = None) -> list[SectionIssue]:
    """Every non-stable section of ``s`` and ``t``; empty iff all are stable."""
    report = []
    for rel, name, gen in ((s, "S", s_sections), (t, "T", t_sections)):
        if rel is None:
            continue
        if (rel.x_size, rel.y_size) != (p.x_size, p.y_size):
            raise ArityError(f"{name} carriers do not match the polarity")
        for index, side, section in gen(rel):
            issue = _issue(p, name, side, index, section)
            if issue:
                report.append(issue)
    return report


@dataclass(frozen=True)
class OmegaPolarity:
    """A polarity with one S-relation and one T-relation, all sections stable."""

    base: Polarity
    s: RelS
    t: RelT

    def __post_init__(self):
        report = validate_sections(self.base, self.s, self.t)
        if report:
            raise ValidationError("non-stable sections: " + "; ".join(map(str, report[:5])))

    @property
    def n(self) -> int:
        return self.s.n

    @property
    def m(self) -> int:
        return self.t.m

    @property
    def x_size(self) -> int:
        return self.base.x_size

    @property
    def y_size(self) -> int:
        return self.base.y_size

    @classmethod
    def from_polarity(cls, p: Polarity) -> "OmegaPolarity":
        """``p`` with S = T = R (n = m = 1)."""
        return cls(p, RelS.from_polarity(p), RelT.from_polarity(p))


def _require_stable(p: Polarity, args: Sequence[int], arity: int):
    if len(args) != arity:
        raise ArityError(f"expected {arity} arguments, got {len(args)}")
    for a in args:
        if not p.is_stable(X_SIDE, a):
            raise PreconditionError(f"argument {bits.fmt(a)} is not stable")


def f_bullet(op: OmegaPolarity, args: Sequence[int]) -> int:
    """``{y : (pi args) S y}``: intersection of row sections over the product."""
    p, s = op.base, op.s
    _require_stable(p, args, s.n)
    out = p.full_y
    radix = [p.x_size] * s.n
    for xs in product(*(bits.elements(a) for a in args)):
        out &= s.rows[bits.tuple_index(xs, radix)]
        if not out:
            break
    return out


def f_S(op: OmegaPolarity, args: Sequence[int]) -> int:
    return op.base.lam(f_bullet(op, args))


def g_T(op: OmegaPolarity, args: Sequence[int]) -> int:
    """``{x : x T (pi rho args)}``."""
    p, t = op.base, op.t
    _require_stable(p, args, t.m)
    out = p.full_x
    radix = [p.y_size] * t.m
    for ys in product(*(bits.elements(p.rho(a)) for a in args)):
        out &= t.cols[bits.tuple_index(ys, radix)]
        if not out:
            break
    return out


def f_S_formula(op: OmegaPolarity, args: Sequence[int]) -> int:
    """``f_S`` by its first-order membership condition, one quantifier at a time."""
    p, s = op.base, op.s
    _require_stable(p, args, s.n)
    sets = [bits.elements(a) for a in args]
    out = 0
    for x in range(p.x_size):
        ok = True
        for y in range(p.y_size):
            premise = all(s.holds(zs, y) for zs in product(*sets))
            if premise and not p.related(x, y):
                ok = False
                break
        if ok:
            out |= 1 << x
    return out


def g_T_formula(op: OmegaPolarity, args: Sequence[int]) -> int:
    p, t = op.base, op.t
    _require_stable(p, args, t.m)
    out = 0
    for x in range(p.x_size):
        ok = True
        for ys in product(range(p.y_size), repeat=t.m):
            premise = all(
                all(p.related(z, ys[i]) for z in bits.iter_bits(args[i])) for i in range(t.m)
            )
            if premise and not t.holds(x, ys):
                ok = False
                break
        if ok:
            out |= 1 << x
    return out


def _binary(p: Polarity, rel) -> tuple[RelS, RelT]:
    if isinstance(rel, RelS):
        s = rel
        t = rel.as_rel_t()
    elif isinstance(rel, RelT):
        t = rel
        s = rel.as_rel_s()
    else:
        raise TypeError("expected a RelS or RelT")
    report = validate_sections(p, s, t)
    if report:
        raise ValidationError("binary relation has non-stable sections: " + str(report[0]))
    return s, t


def box(p: Polarity, rel, a: int) -> int:
    """``{x : x T rho(a)}`` for a binary relation ``T``."""
    _, t = _binary(p, rel)
    _require_stable(p, [a], 1)
    out = p.full_x
    for y in bits.iter_bits(p.rho(a)):
        out &= t.cols[y]
    return out


def diamond(p: Polarity, rel, a: int) -> int:
    """``lam {y : a T y}`` for a binary relation ``T``."""
    s, _ = _binary(p, rel)
    _require_stable(p, [a], 1)
    ys = p.full_y
    for x in bits.iter_bits(a):
        ys &= s.rows[x]
    return p.lam(ys)


def residual(op: OmegaPolarity, args: Sequence[int], i: int) -> int:
    """Right adjoint of ``f_S`` in coordinate ``i``.

    Evaluated at ``args`` with ``args[i]`` playing the role of the bound B:
    ``A' <= residual(args[B/i], i)`` iff ``f_S(args[A'/i]) <= B``.
    """
    p, s = op.base, op.s
    _require_stable(p, args, s.n)
    if not 0 <= i < s.n:
        raise RangeError(f"coordinate {i} out of range for arity {s.n}")
    out = p.full_x
    others = [bits.elements(a) if j != i else [0] for j, a in enumerate(args)]
    targets = bits.elements(p.rho(args[i]))
    for xs in product(*others):
        for y in targets:
            out &= s.column_section(xs, i, y)
    return out


# operators as tables on an enumerated P+

def f_S_table(op: OmegaPolarity, L: StableLattice) -> tuple[int, ...]:
    els = L.elements
    return tables.build(L.size, op.n, lambda *ix: L.index_of(f_S(op, [els[i] for i in ix])))


def g_T_table(op: OmegaPolarity, L: StableLattice) -> tuple[int, ...]:
    els = L.elements
    return tables.build(L.size, op.m, lambda *ix: L.index_of(g_T(op, [els[i] for i in ix])))


def relation_from_operator(L: StableLattice, table: Sequence[int], n: int) -> RelS:
    """``S_f``: ``xs S_f y`` iff ``y`` in ``rho f(<xs>)``."""
    violations = tables.operator_violations(L.size, n, table, L.join2, L.bottom)
    if violations:
        raise ValidationError(f"not a complete normal operator: {violations[0]}")
    p = L.source
    principal = [L.index_of(p.principal_stable(X_SIDE, x)) for x in range(p.x_size)]
    rows = []
    for xs in product(range(p.x_size), repeat=n):
        value = tables.lookup(table, L.size, [principal[x] for x in xs])
        rows.append(p.rho(L.elements[value]))
    return RelS(n, p.x_size, p.y_size, tuple(rows))


def relation_from_dual_operator(L: StableLattice, table: Sequence[int], m: int) -> RelT:
    """``T_g``: ``x T_g ys`` iff ``x`` in ``g(lam{y_0}, ..., lam{y_m-1})``."""
    violations = tables.dual_operator_violations(L.size, m, table, L.meet2, L.top)
    if violations:
        raise ValidationError(f"not a complete normal dual operator: {violations[0]}")
    p = L.source
    lams = [L.index_of(p.lam(1 << y)) for y in range(p.y_size)]
    cols = []
    for ys in product(range(p.y_size), repeat=m):
        cols.append(L.elements[tables.lookup(table, L.size, [lams[y] for y in ys])])
    return RelT(m, p.x_size, p.y_size, tuple(cols))
