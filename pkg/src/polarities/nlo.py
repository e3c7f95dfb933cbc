"""Finite normal lattices with operators and their canonical structures."""

from __future__ import annotations

import random
from functools import lru_cache
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Sequence

from . import bits, tables
from .errors import InternalConsistencyError, ValidationError
from .lattice import DEFAULT_CAP, StableLattice, enumerate_stable
from .omega import OmegaPolarity, RelS, RelT, f_S_table, g_T_table
from .polarity import Polarity
from .tables import Violation

GENERAL_FILTER_LIMIT = 14
EXHAUSTIVE_COMPACTNESS_LIMIT = 12


@dataclass(frozen=True)
class FiniteLattice:
    """A finite bounded lattice on ``0..size-1``.

    ``up[a]`` is the mask of ``{b : a <= b}``; ``meet``/``join`` are full
    binary tables.
    """

    size: int
    up: tuple[int, ...]
    meet: tuple[tuple[int, ...], ...] = field(repr=False)
    join: tuple[tuple[int, ...], ...] = field(repr=False)
    bot: int
    top: int

    @classmethod
    def from_order(cls, size: int, pairs: Iterable[tuple[int, int]]) -> "FiniteLattice":
        """Build from any generating set of ``a <= b`` pairs (e.g. Hasse covers)."""
        up = [1 << a for a in range(size)]
        for a, b in pairs:
            if not (0 <= a < size and 0 <= b < size):
                raise ValidationError(f"order pair ({a},{b}) out of range")
            up[a] |= 1 << b
        changed = True
        while changed:
            changed = False
            for a in range(size):
                closure = up[a]
                for b in bits.iter_bits(up[a]):
                    closure |= up[b]
                if closure != up[a]:
                    up[a] = closure
                    changed = True
        for a in range(size):
            for b in bits.iter_bits(up[a]):
                if a != b and up[b] >> a & 1:
                    raise ValidationError(f"order is not antisymmetric: {a} and {b}")
        return cls.from_up(tuple(up))

    @classmethod
    def from_up(cls, up: Sequence[int]) -> "FiniteLattice":
        size = len(up)
        if size == 0:
            raise ValidationError("a bounded lattice needs at least one element")
        down = [bits.from_iter(a for a in range(size) if up[a] >> b & 1) for b in range(size)]

        def least(mask):
            for c in bits.iter_bits(mask):
                if bits.is_subset(mask, up[c]):
                    return c
            return None

        def greatest(mask):
            for c in bits.iter_bits(mask):
                if bits.is_subset(mask, down[c]):
                    return c
            return None

        join = []
        meet = []
        for a in range(size):
            jr, mr = [], []
            for b in range(size):
                j = least(up[a] & up[b])
                m = greatest(down[a] & down[b])
                if j is None or m is None:
                    raise ValidationError(f"elements {a} and {b} lack a join or meet")
                jr.append(j)
                mr.append(m)
            join.append(tuple(jr))
            meet.append(tuple(mr))
        full = bits.full(size)
        bot = least(full)
        top = greatest(full)
        return cls(size, tuple(up), tuple(meet), tuple(join), bot, top)

    @classmethod
    def from_stable(cls, L: StableLattice) -> "FiniteLattice":
        k = L.size
        join = L.join_table or tuple(tuple(L.join((i, j)) for j in range(k)) for i in range(k))
        meet = L.meet_table or tuple(tuple(L.meet((i, j)) for j in range(k)) for i in range(k))
        return cls(k, L.up, meet, join, L.bottom, L.top)

    def leq(self, a: int, b: int) -> bool:
        return bool(self.up[a] >> b & 1)

    def join2(self, a: int, b: int) -> int:
        return self.join[a][b]

    def meet2(self, a: int, b: int) -> int:
        return self.meet[a][b]

    def join_all(self, elems: Iterable[int]) -> int:
        out = self.bot
        for e in elems:
            out = self.join[out][e]
        return out

    def meet_all(self, elems: Iterable[int]) -> int:
        out = self.top
        for e in elems:
            out = self.meet[out][e]
        return out

    def down(self, a: int) -> int:
        return bits.from_iter(b for b in range(self.size) if self.up[b] >> a & 1)

    def covers(self) -> list[tuple[int, int]]:
        out = []
        for a in range(self.size):
            strict = self.up[a] & ~(1 << a)
            for b in bits.iter_bits(strict):
                rest = strict & ~(1 << b)
                if not any(self.up[c] >> b & 1 for c in bits.iter_bits(rest)):
                    out.append((a, b))
        return out


def validate_lattice(l: FiniteLattice) -> list[Violation]:
    """First counterexample per law; empty iff ``l`` is a bounded lattice."""
    out = []
    k = l.size
    for a in range(k):
        if not l.leq(a, a):
            out.append(Violation("reflexive", (a,), "a <= a fails"))
            break
    for a, b in product(range(k), repeat=2):
        if a != b and l.leq(a, b) and l.leq(b, a):
            out.append(Violation("antisymmetric", (a, b), "mutual <= between distinct elements"))
            break
    for a, b, c in product(range(k), repeat=3):
        if l.leq(a, b) and l.leq(b, c) and not l.leq(a, c):
            out.append(Violation("transitive", (a, b, c), "a<=b<=c but not a<=c"))
            break
    for name, table, ub in (("join", l.join, True), ("meet", l.meet, False)):
        for a, b in product(range(k), repeat=2):
            v = table[a][b]
            le = (lambda u, w: l.leq(u, w)) if ub else (lambda u, w: l.leq(w, u))
            bound = le(a, v) and le(b, v)
            best = all(le(v, c) for c in range(k) if le(a, c) and le(b, c))
            if not (bound and best):
                out.append(Violation(name, (a, b), f"{v} is not the {'least upper' if ub else 'greatest lower'} bound"))
                break
    if not all(l.leq(l.bot, a) for a in range(k)):
        out.append(Violation("bottom", (l.bot,), "not below every element"))
    if not all(l.leq(a, l.top) for a in range(k)):
        out.append(Violation("top", (l.top,), "not above every element"))
    return out


def is_normal_operator(l: FiniteLattice, f: Sequence[int], n: int) -> list[Violation]:
    return tables.operator_violations(l.size, n, f, l.join2, l.bot)


def is_normal_dual_operator(l: FiniteLattice, g: Sequence[int], m: int) -> list[Violation]:
    return tables.dual_operator_violations(l.size, m, g, l.meet2, l.top)


@dataclass(frozen=True)
class OmegaNLO:
    """A finite lattice with an ``n``-ary operator ``f`` and ``m``-ary dual operator ``g``."""

    lattice: FiniteLattice
    n: int
    f: tuple[int, ...]
    m: int
    g: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "f", tuple(self.f))
        object.__setattr__(self, "g", tuple(self.g))
        tables.check_shape(self.f, self.lattice.size, self.n, "f")
        tables.check_shape(self.g, self.lattice.size, self.m, "g")

    @classmethod
    def identity_ops(cls, l: FiniteLattice) -> "OmegaNLO":
        ident = tuple(range(l.size))
        return cls(l, 1, ident, 1, ident)

    @property
    def size(self) -> int:
        return self.lattice.size

    def apply_f(self, args: Sequence[int]) -> int:
        return tables.lookup(self.f, self.size, args)

    def apply_g(self, args: Sequence[int]) -> int:
        return tables.lookup(self.g, self.size, args)

    def violations(self) -> list[Violation]:
        return (
            validate_lattice(self.lattice)
            + is_normal_operator(self.lattice, self.f, self.n)
            + is_normal_dual_operator(self.lattice, self.g, self.m)
        )

    def validated(self) -> "OmegaNLO":
        v = self.violations()
        if v:
            raise ValidationError("not an Omega-NLO: " + "; ".join(map(str, v)))
        return self


@dataclass(frozen=True)
class Homomorphism:
    """A map between lattices (or Omega-NLOs) given by an element table."""

    source: object
    target: object
    map: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "map", tuple(self.map))
        src, dst = _lat(self.source), _lat(self.target)
        if len(self.map) != src.size or any(not 0 <= v < dst.size for v in self.map):
            raise ValidationError("homomorphism table does not match the lattices")

    def __call__(self, a: int) -> int:
        return self.map[a]

    def is_injective(self) -> bool:
        return len(set(self.map)) == len(self.map)

    def is_surjective(self) -> bool:
        return len(set(self.map)) == _lat(self.target).size

    def compose_after(self, other: "Homomorphism") -> "Homomorphism":
        """``self o other``."""
        return Homomorphism(other.source, self.target, tuple(self.map[v] for v in other.map))


def _lat(x) -> FiniteLattice:
    return x.lattice if isinstance(x, OmegaNLO) else x


def is_homomorphism(theta: Homomorphism) -> list[Violation]:
    """First counterexample per law (order, meet, join, bounds, and f/g for NLOs)."""
    src, dst = _lat(theta.source), _lat(theta.target)
    t = theta.map
    out = []
    k = src.size
    for a, b in product(range(k), repeat=2):
        if src.leq(a, b) and not dst.leq(t[a], t[b]):
            out.append(Violation("order", (a, b), f"{a}<={b} but {t[a]} not <= {t[b]}"))
            break
    for name, s_tab, d_tab in (("meet", src.meet, dst.meet), ("join", src.join, dst.join)):
        for a, b in product(range(k), repeat=2):
            if t[s_tab[a][b]] != d_tab[t[a]][t[b]]:
                out.append(Violation(name, (a, b), f"image of {name} differs"))
                break
    if t[src.bot] != dst.bot:
        out.append(Violation("bottom", (src.bot,), f"maps to {t[src.bot]}"))
    if t[src.top] != dst.top:
        out.append(Violation("top", (src.top,), f"maps to {t[src.top]}"))
    if isinstance(theta.source, OmegaNLO) and isinstance(theta.target, OmegaNLO):
        A, B = theta.source, theta.target
        if (A.n, A.m) != (B.n, B.m):
            out.append(Violation("signature", (), "arities differ"))
            return out
        for args in product(range(k), repeat=A.n):
            if t[A.apply_f(args)] != B.apply_f([t[a] for a in args]):
                out.append(Violation("f", args, "theta(f(a)) != f(theta(a))"))
                break
        for args in product(range(k), repeat=A.m):
            if t[A.apply_g(args)] != B.apply_g([t[a] for a in args]):
                out.append(Violation("g", args, "theta(g(a)) != g(theta(a))"))
                break
    return out


def identity_hom(A) -> Homomorphism:
    return Homomorphism(A, A, tuple(range(_lat(A).size)))


# stable-set algebra of an Omega-polarity

@dataclass(frozen=True)
class StableAlgebra:
    """``P+`` of an Omega-polarity: the enumerated lattice plus its NLO tables."""

    lattice: StableLattice
    nlo: OmegaNLO


def plus(op: OmegaPolarity, cap: int = DEFAULT_CAP) -> StableAlgebra:
    L = enumerate_stable(op.base, cap=cap)
    nlo = OmegaNLO(FiniteLattice.from_stable(L), op.n, f_S_table(op, L), op.m, g_T_table(op, L))
    return StableAlgebra(L, nlo)


# filters, ideals and the canonical structure

def _is_filter(l: FiniteLattice, mask: int) -> bool:
    if not mask:
        return False
    for a in bits.iter_bits(mask):
        if not bits.is_subset(l.up[a], mask):
            return False
        for b in bits.iter_bits(mask):
            if not mask >> l.meet[a][b] & 1:
                return False
    return True


def _is_ideal(l: FiniteLattice, mask: int) -> bool:
    if not mask:
        return False
    for a in bits.iter_bits(mask):
        if not bits.is_subset(l.down(a), mask):
            return False
        for b in bits.iter_bits(mask):
            if not mask >> l.join[a][b] & 1:
                return False
    return True


def filters_general(l: FiniteLattice) -> list[int]:
    """All non-empty filters, found by scanning every subset."""
    found = [s for s in range(1, 1 << l.size) if _is_filter(l, s)]
    return sorted(found, key=lambda s: l.meet_all(bits.iter_bits(s)))


def ideals_general(l: FiniteLattice) -> list[int]:
    found = [s for s in range(1, 1 << l.size) if _is_ideal(l, s)]
    return sorted(found, key=lambda s: l.join_all(bits.iter_bits(s)))


def filters(l: FiniteLattice) -> list[int]:
    """Non-empty filters ordered by generator; entry ``a`` is ``[a)``."""
    principal = [l.up[a] for a in range(l.size)]
    if l.size <= GENERAL_FILTER_LIMIT and filters_general(l) != principal:
        raise InternalConsistencyError("a filter of a finite lattice is not principal")
    return principal


def ideals(l: FiniteLattice) -> list[int]:
    principal = [l.down(a) for a in range(l.size)]
    if l.size <= GENERAL_FILTER_LIMIT and ideals_general(l) != principal:
        raise InternalConsistencyError("an ideal of a finite lattice is not principal")
    return principal


def canonical_structure(A: OmegaNLO) -> OmegaPolarity:
    """``A+``: filters vs ideals under overlap, with ``S_L`` and ``T_L``."""
    A.validated()
    l = A.lattice
    fs, ds = filters(l), ideals(l)
    nf, nd = len(fs), len(ds)
    base = Polarity(nf, nd, tuple(bits.from_iter(j for j, d in enumerate(ds) if f & d) for f in fs))
    rows = []
    for combo in product(range(nf), repeat=A.n):
        values = bits.from_iter(A.apply_f(args) for args in product(*(bits.elements(fs[i]) for i in combo)))
        rows.append(bits.from_iter(j for j, d in enumerate(ds) if values & d))
    cols = []
    for combo in product(range(nd), repeat=A.m):
        values = bits.from_iter(A.apply_g(args) for args in product(*(bits.elements(ds[i]) for i in combo)))
        cols.append(bits.from_iter(i for i, f in enumerate(fs) if values & f))
    return OmegaPolarity(base, RelS(A.n, nf, nd, tuple(rows)), RelT(A.m, nf, nd, tuple(cols)))


@dataclass
class ThetaResult:
    nlo: OmegaNLO
    structure: OmegaPolarity
    algebra: StableAlgebra
    theta: Homomorphism
    images: tuple[int, ...]
    diagnostics: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.diagnostics.values())


def _compact(A: OmegaNLO, L: StableLattice, images, rng: random.Random) -> bool:
    l = A.lattice
    p = L.source
    k = l.size
    if k <= EXHAUSTIVE_COMPACTNESS_LIMIT:
        subsets = range(1 << k)
    else:
        subsets = [rng.getrandbits(k) for _ in range(4096)] + [0, bits.full(k)]
    meets, joins = set(), set()
    for z in subsets:
        inter = p.full_x
        union = 0
        for a in bits.iter_bits(z):
            inter &= images[a]
            union |= images[a]
        meets.add((inter, l.meet_all(bits.iter_bits(z))))
        joins.add((p.lam(p.rho(union)), l.join_all(bits.iter_bits(z))))
    for zm, zl in meets:
        for wj, wl in joins:
            if bits.is_subset(zm, wj) and not l.leq(zl, wl):
                return False
    return True


def theta_embedding(A: OmegaNLO, cap: int = DEFAULT_CAP, seed: int = 0, strict: bool = True) -> ThetaResult:
    """Embed ``A`` into ``(A+)+`` by ``a -> {F : a in F}`` and run the diagnostics."""
    structure = canonical_structure(A)
    alg = plus(structure, cap=cap)
    L, B = alg.lattice, alg.nlo
    l = A.lattice
    fs = filters(l)
    images = tuple(bits.from_iter(i for i, f in enumerate(fs) if f >> a & 1) for a in range(l.size))
    diag = {}
    diag["images_stable"] = all(img in L.index for img in images)
    if not diag["images_stable"]:
        raise InternalConsistencyError("theta(a) is not stable")
    theta = Homomorphism(A, B, tuple(L.index[img] for img in images))
    diag["injective"] = theta.is_injective()
    hom = is_homomorphism(theta)
    diag["lattice_hom"] = not any(v.law in ("order", "meet", "join", "bottom", "top") for v in hom)
    diag["preserves_f"] = not any(v.law == "f" for v in hom)
    diag["preserves_g"] = not any(v.law == "g" for v in hom)

    p = structure.base
    dense_join = dense_meet = True
    for A_ in L.elements:
        joined = 0
        for F in bits.iter_bits(A_):
            inter = p.full_x
            for a in bits.iter_bits(fs[F]):
                inter &= images[a]
            joined |= inter
        if p.lam(p.rho(joined)) != A_:
            dense_join = False
        ds = ideals(l)
        met = p.full_x
        for D in bits.iter_bits(p.rho(A_)):
            union = 0
            for a in bits.iter_bits(ds[D]):
                union |= images[a]
            met &= p.lam(p.rho(union))
        if met != A_:
            dense_meet = False
    diag["dense_joins_of_closed"] = dense_join
    diag["dense_meets_of_open"] = dense_meet
    diag["compact"] = _compact(A, L, images, random.Random(seed))
    diag["surjective"] = theta.is_surjective()
    result = ThetaResult(A, structure, alg, theta, images, diag)
    if strict and not result.ok:
        failed = [k for k, v in diag.items() if not v]
        raise InternalConsistencyError(f"canonical extension diagnostics failed: {failed}")
    return result


def _close_under(masks: Iterable[int], op, unit: int) -> list[int]:
    found = set(masks) | {unit}
    frontier = list(found)
    while frontier:
        new = []
        for a in frontier:
            for b in list(found):
                c = op(a, b)
                if c not in found:
                    found.add(c)
                    new.append(c)
        frontier = new
    return sorted(found)


def closed_elements(res: ThetaResult) -> list[int]:
    """All meets of theta-images in ``(A+)+``, as masks."""
    p = res.structure.base
    return _close_under(res.images, lambda a, b: a & b, p.full_x)


def open_elements(res: ThetaResult) -> list[int]:
    p = res.structure.base
    return _close_under(res.images, lambda a, b: p.lam(p.rho(a | b)), p.lam(p.full_y))


def lower_extension(res: ThetaResult) -> tuple[int, ...]:
    """The lower extension of ``f`` to ``(A+)+``, evaluated literally."""
    A, L = res.nlo, res.algebra.lattice
    p = res.structure.base
    K = closed_elements(res)
    k = A.size
    on_closed = {}
    for ps in product(K, repeat=A.n):
        out = p.full_x
        for args in product(range(k), repeat=A.n):
            if all(bits.is_subset(ps[i], res.images[args[i]]) for i in range(A.n)):
                out &= res.images[A.apply_f(args)]
        on_closed[ps] = out

    def ext(*ix):
        xs = [L.elements[i] for i in ix]
        union = 0
        for ps, v in on_closed.items():
            if all(bits.is_subset(ps[i], xs[i]) for i in range(A.n)):
                union |= v
        return L.index_of(p.lam(p.rho(union)))

    return tables.build(L.size, A.n, ext)


def upper_extension(res: ThetaResult) -> tuple[int, ...]:
    A, L = res.nlo, res.algebra.lattice
    p = res.structure.base
    O = open_elements(res)
    k = A.size
    on_open = {}
    for qs in product(O, repeat=A.m):
        union = 0
        for args in product(range(k), repeat=A.m):
            if all(bits.is_subset(res.images[args[i]], qs[i]) for i in range(A.m)):
                union |= res.images[A.apply_g(args)]
        on_open[qs] = p.lam(p.rho(union))

    def ext(*ix):
        xs = [L.elements[i] for i in ix]
        out = p.full_x
        for qs, v in on_open.items():
            if all(bits.is_subset(xs[i], qs[i]) for i in range(A.m)):
                out &= v
        return L.index_of(out)

    return tables.build(L.size, A.m, ext)


@lru_cache(maxsize=256)
def plus_cached(op: OmegaPolarity, cap: int = DEFAULT_CAP) -> StableAlgebra:
    """Memoized :func:`plus`; structures are immutable so sharing is safe."""
    return plus(op, cap)
