"""Bounded morphisms between Omega-polarities and the dualities built on them."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from itertools import product
from typing import Iterator, Sequence

from . import bits
from .errors import (
    ContractError,
    DimensionError,
    InternalConsistencyError,
    PreconditionError,
    RangeError,
    ValidationError,
)
from .lattice import DEFAULT_CAP
from .nlo import (
    FiniteLattice,
    Homomorphism,
    OmegaNLO,
    canonical_structure,
    filters,
    ideals,
    is_homomorphism,
    plus_cached,
)
from .omega import OmegaPolarity, RelS, RelT
from .polarity import X_SIDE, Y_SIDE, Polarity

CONDITIONS = ("isotone_alpha", "isotone_beta", "1R", "2R", "3R", "1S", "2S", "1T", "2T")
DEBUG_ENV = "POLARITIES_DEBUG"


def _debug() -> bool:
    return os.environ.get(DEBUG_ENV, "") not in ("", "0")


@dataclass(frozen=True)
class Verdict:
    condition: str
    holds: bool
    witness: tuple | None = None

    def to_dict(self) -> dict:
        return {"condition": self.condition, "holds": self.holds, "witness": _plain(self.witness)}


def _plain(w):
    if isinstance(w, tuple):
        return [_plain(v) for v in w]
    return w


@dataclass(frozen=True)
class MorphismCertificate:
    verdicts: tuple[Verdict, ...]

    @property
    def ok(self) -> bool:
        return all(v.holds for v in self.verdicts)

    def __getitem__(self, condition: str) -> Verdict:
        for v in self.verdicts:
            if v.condition == condition:
                return v
        raise KeyError(condition)

    def failed(self) -> list[Verdict]:
        return [v for v in self.verdicts if not v.holds]

    def to_dict(self) -> dict:
        return {"ok": self.ok, "verdicts": [v.to_dict() for v in self.verdicts]}


@dataclass(frozen=True)
class BoundedMorphism:
    source: OmegaPolarity
    target: OmegaPolarity
    alpha: tuple[int, ...]
    beta: tuple[int, ...]
    certificate: MorphismCertificate | None = field(default=None, compare=False)

    @property
    def certified(self) -> bool:
        return self.certificate is not None and self.certificate.ok

    def require_certified(self) -> "BoundedMorphism":
        if not self.certified:
            raise ContractError("operation needs a certified bounded morphism")
        return self


def _check_shapes(src: OmegaPolarity, dst: OmegaPolarity, alpha, beta):
    if (src.n, src.m) != (dst.n, dst.m):
        raise DimensionError(f"arities differ: ({src.n},{src.m}) vs ({dst.n},{dst.m})")
    if len(alpha) != src.x_size or len(beta) != src.y_size:
        raise DimensionError("carrier map lengths do not match the source carriers")
    for name, table, bound in (("alpha", alpha, dst.x_size), ("beta", beta, dst.y_size)):
        for i, v in enumerate(table):
            if not (isinstance(v, int) and 0 <= v < bound):
                raise RangeError(f"{name}({i}) = {v!r} out of range")


class _Ctx:
    """Shared precomputation for one (src, dst, alpha, beta) check."""

    def __init__(self, src, dst, alpha, beta):
        self.src, self.dst = src, dst
        self.alpha, self.beta = tuple(alpha), tuple(beta)
        self.p, self.q = src.base, dst.base
        self.q1 = self.p.quasi_order(X_SIDE)
        self.q2 = self.p.quasi_order(Y_SIDE)
        self.d1 = self.q.quasi_order(X_SIDE)
        self.d2 = self.q.quasi_order(Y_SIDE)
        # alpha^{-1}[x')_1 and beta^{-1}[y')_2
        self.a_up = tuple(
            bits.from_iter(x for x in range(self.p.x_size) if self.d1.leq(xp, self.alpha[x]))
            for xp in range(self.q.x_size)
        )
        self.b_up = tuple(
            bits.from_iter(y for y in range(self.p.y_size) if self.d2.leq(yp, self.beta[y]))
            for yp in range(self.q.y_size)
        )

    def a_tuple(self, xs):
        return tuple(self.alpha[x] for x in xs)

    def b_tuple(self, ys):
        return tuple(self.beta[y] for y in ys)


def _first(condition: str, cases: Iterator) -> Verdict:
    for witness in cases:
        return Verdict(condition, False, witness)
    return Verdict(condition, True)


def _isotone(qa, qb, fn, size) -> Iterator:
    for a in range(size):
        for b in bits.iter_bits(qa.up[a]):
            if not qb.leq(fn[a], fn[b]):
                yield (a, b)


def _c1r(c: _Ctx):
    for x in range(c.p.x_size):
        for y in range(c.p.y_size):
            if c.q.related(c.alpha[x], c.beta[y]) and not c.p.related(x, y):
                yield (x, y)


def _c2r(c: _Ctx):
    for xp in range(c.q.x_size):
        for y in range(c.p.y_size):
            if bits.is_subset(c.a_up[xp], c.p.cols[y]) and not c.q.related(xp, c.beta[y]):
                yield (xp, y)


def _c2r_contra(c: _Ctx):
    # not x' R' beta(y)  implies  some x with x' <=1' alpha(x) and not xRy
    for xp in range(c.q.x_size):
        for y in range(c.p.y_size):
            if not c.q.related(xp, c.beta[y]):
                if not any(c.d1.leq(xp, c.alpha[x]) and not c.p.related(x, y) for x in range(c.p.x_size)):
                    yield (xp, y)


def _c3r(c: _Ctx):
    for x in range(c.p.x_size):
        for yp in range(c.q.y_size):
            if bits.is_subset(c.b_up[yp], c.p.rows[x]) and not c.q.related(c.alpha[x], yp):
                yield (x, yp)


def _c3r_contra(c: _Ctx):
    for x in range(c.p.x_size):
        for yp in range(c.q.y_size):
            if not c.q.related(c.alpha[x], yp):
                if not any(c.d2.leq(yp, c.beta[y]) and not c.p.related(x, y) for y in range(c.p.y_size)):
                    yield (x, yp)


def _c1s(c: _Ctx):
    s, s2 = c.src.s, c.dst.s
    for xs in product(range(c.p.x_size), repeat=s.n):
        row = s2.row_section(c.a_tuple(xs))
        for y in range(c.p.y_size):
            if row >> c.beta[y] & 1 and not s.holds(xs, y):
                yield (xs, y)


def _c2s(c: _Ctx):
    s, s2 = c.src.s, c.dst.s
    for xps in product(range(c.q.x_size), repeat=s.n):
        common = c.p.full_y
        for xs in product(*(bits.elements(c.a_up[v]) for v in xps)):
            common &= s.row_section(xs)
        target = s2.row_section(xps)
        for y in bits.iter_bits(common):
            if not target >> c.beta[y] & 1:
                yield (xps, y)


def _c2s_contra(c: _Ctx):
    s, s2 = c.src.s, c.dst.s
    for xps in product(range(c.q.x_size), repeat=s.n):
        for y in range(c.p.y_size):
            if not s2.holds(xps, c.beta[y]):
                choices = [[x for x in range(c.p.x_size) if c.d1.leq(v, c.alpha[x])] for v in xps]
                if not any(not s.holds(xs, y) for xs in product(*choices)):
                    yield (xps, y)


def _c1t(c: _Ctx):
    t, t2 = c.src.t, c.dst.t
    for ys in product(range(c.p.y_size), repeat=t.m):
        col = t2.column_section(c.b_tuple(ys))
        for x in range(c.p.x_size):
            if col >> c.alpha[x] & 1 and not t.holds(x, ys):
                yield (x, ys)


def _c2t(c: _Ctx):
    t, t2 = c.src.t, c.dst.t
    found = []
    for yps in product(range(c.q.y_size), repeat=t.m):
        common = c.p.full_x
        for ys in product(*(bits.elements(c.b_up[v]) for v in yps)):
            common &= t.column_section(ys)
        target = t2.column_section(yps)
        for x in bits.iter_bits(common):
            if not target >> c.alpha[x] & 1:
                found.append((x, yps))
    yield from sorted(found)


def _c2t_contra(c: _Ctx):
    t, t2 = c.src.t, c.dst.t
    for x in range(c.p.x_size):
        for yps in product(range(c.q.y_size), repeat=t.m):
            if not t2.holds(c.alpha[x], yps):
                choices = [[y for y in range(c.p.y_size) if c.d2.leq(v, c.beta[y])] for v in yps]
                if not any(not t.holds(x, ys) for ys in product(*choices)):
                    yield (x, yps)


def verify(src: OmegaPolarity, dst: OmegaPolarity, alpha: Sequence[int], beta: Sequence[int]) -> MorphismCertificate:
    """Evaluate isotonicity and the seven back-and-forth conditions.

    Forth conditions are evaluated twice, directly and in contrapositive
    form; the two must agree on both verdict and first witness.
    """
    _check_shapes(src, dst, alpha, beta)
    c = _Ctx(src, dst, alpha, beta)
    verdicts = [
        _first("isotone_alpha", _isotone(c.q1, c.d1, c.alpha, c.p.x_size)),
        _first("isotone_beta", _isotone(c.q2, c.d2, c.beta, c.p.y_size)),
        _first("1R", _c1r(c)),
    ]
    for name, direct, contra in (
        ("2R", _c2r, _c2r_contra),
        ("3R", _c3r, _c3r_contra),
    ):
        a, b = _first(name, direct(c)), _first(name, contra(c))
        if a != b:
            raise InternalConsistencyError(f"{name}: direct {a} vs contrapositive {b}")
        verdicts.append(a)
    verdicts.append(_first("1S", _c1s(c)))
    a, b = _first("2S", _c2s(c)), _first("2S", _c2s_contra(c))
    if a != b:
        raise InternalConsistencyError(f"2S: direct {a} vs contrapositive {b}")
    verdicts.append(a)
    verdicts.append(_first("1T", _c1t(c)))
    a, b = _first("2T", _c2t(c)), _first("2T", _c2t_contra(c))
    if a != b:
        raise InternalConsistencyError(f"2T: direct {a} vs contrapositive {b}")
    verdicts.append(a)
    return MorphismCertificate(tuple(verdicts))


def certify(src: OmegaPolarity, dst: OmegaPolarity, alpha, beta, strict: bool = True) -> BoundedMorphism:
    cert = verify(src, dst, alpha, beta)
    if strict and not cert.ok:
        raise ValidationError("not a bounded morphism: " + ", ".join(f"{v.condition} at {v.witness}" for v in cert.failed()))
    return BoundedMorphism(src, dst, tuple(alpha), tuple(beta), cert)


def identity(p: OmegaPolarity) -> BoundedMorphism:
    return certify(p, p, tuple(range(p.x_size)), tuple(range(p.y_size)))


def compose(phi: BoundedMorphism, psi: BoundedMorphism) -> BoundedMorphism:
    """``phi o psi``: apply ``psi`` first.

    Certified without re-checking since composites of bounded morphisms are
    bounded; set ``POLARITIES_DEBUG=1`` to re-verify.
    """
    if psi.target != phi.source:
        raise PreconditionError("codomain of the first map differs from the domain of the second")
    phi.require_certified()
    psi.require_certified()
    alpha = tuple(phi.alpha[a] for a in psi.alpha)
    beta = tuple(phi.beta[b] for b in psi.beta)
    cert = psi.certificate
    if _debug():
        cert = verify(psi.source, phi.target, alpha, beta)
        if not cert.ok:
            raise InternalConsistencyError("composite of bounded morphisms failed verification")
    else:
        cert = MorphismCertificate(tuple(Verdict(c, True) for c in CONDITIONS))
    return BoundedMorphism(psi.source, phi.target, alpha, beta, cert)


def compose_homs(outer: Homomorphism, inner: Homomorphism) -> Homomorphism:
    """``outer o inner`` for lattice homomorphisms."""
    return outer.compose_after(inner)


# duals

def preimage(table: Sequence[int], mask: int) -> int:
    return bits.from_iter(i for i, v in enumerate(table) if mask >> v & 1)


def dual_hom(phi: BoundedMorphism, cap: int = DEFAULT_CAP, check: bool = True) -> Homomorphism:
    """``(alpha, beta)+``: stable ``A`` of the target maps to ``alpha^{-1} A``."""
    phi.require_certified()
    src = plus_cached(phi.source, cap)
    dst = plus_cached(phi.target, cap)
    table = []
    for a in dst.lattice.elements:
        pre = preimage(phi.alpha, a)
        if pre not in src.lattice.index:
            raise InternalConsistencyError(f"preimage {bits.fmt(pre)} of a stable set is not stable")
        table.append(src.lattice.index[pre])
    h = Homomorphism(dst.nlo, src.nlo, tuple(table))
    if check:
        bad = is_homomorphism(h)
        if bad:
            raise InternalConsistencyError(f"dual of a bounded morphism is not a homomorphism: {bad[0]}")
        alpha_onto = len(set(phi.alpha)) == phi.target.x_size
        alpha_into = len(set(phi.alpha)) == phi.source.x_size
        if alpha_onto and not h.is_injective():
            raise InternalConsistencyError("alpha surjective but the dual is not injective")
        if alpha_into and not h.is_surjective():
            raise InternalConsistencyError("alpha injective but the dual is not surjective")
    return h


def equiv_conditions(src: OmegaPolarity, dst: OmegaPolarity, alpha, beta, cap: int = DEFAULT_CAP) -> tuple[bool, bool]:
    """Set-equation forms of (1R)+(2R) and (1R)+(3R), checked against the verdicts."""
    _check_shapes(src, dst, alpha, beta)
    p, q = src.base, dst.base
    stable_x = plus_cached(dst, cap).lattice.elements
    eq12 = all(preimage(beta, q.rho(a)) == p.rho(preimage(alpha, a)) for a in stable_x)
    stable_y = [q.rho(a) for a in stable_x]
    eq13 = all(preimage(alpha, q.lam(b)) == p.lam(preimage(beta, b)) for b in stable_y)
    cert = verify(src, dst, alpha, beta)
    c12 = cert["1R"].holds and cert["2R"].holds
    c13 = cert["1R"].holds and cert["3R"].holds
    if (eq12, eq13) != (c12, c13):
        raise InternalConsistencyError(
            f"set equations ({eq12},{eq13}) disagree with conditions ({c12},{c13})"
        )
    return eq12, eq13


# isomorphisms and preservation

def preserves(phi: BoundedMorphism) -> dict[str, bool]:
    """Converses of (1R), (1S), (1T)."""
    p, q = phi.source.base, phi.target.base
    a, b = phi.alpha, phi.beta
    r = all(q.related(a[x], b[y]) for x, y in p.pairs())
    s = all(
        phi.target.s.holds(tuple(a[x] for x in t[:-1]), b[t[-1]]) for t in phi.source.s.tuples()
    )
    t = all(
        phi.target.t.holds(a[tp[0]], tuple(b[y] for y in tp[1:])) for tp in phi.source.t.tuples()
    )
    return {"R": r, "S": s, "T": t}


def reflects_quasi_orders(phi: BoundedMorphism) -> tuple[bool, bool]:
    p, q = phi.source.base, phi.target.base
    out = []
    for side, fn in ((X_SIDE, phi.alpha), (Y_SIDE, phi.beta)):
        mine, theirs = p.quasi_order(side), q.quasi_order(side)
        k = p.size(side)
        out.append(all(mine.leq(u, v) for u in range(k) for v in range(k) if theirs.leq(fn[u], fn[v])))
    return out[0], out[1]


def polarity_preservation_statements(phi: BoundedMorphism) -> tuple[bool, bool, bool]:
    """(preserves R, alpha reflects, beta reflects); equal for bounded morphisms."""
    phi.require_certified()
    ra, rb = reflects_quasi_orders(phi)
    return preserves(phi)["R"], ra, rb


def _bijective(table, size) -> bool:
    return len(table) == size and len(set(table)) == size


def is_isomorphism(phi: BoundedMorphism) -> bool:
    phi.require_certified()
    if not (_bijective(phi.alpha, phi.target.x_size) and _bijective(phi.beta, phi.target.y_size)):
        return False
    return all(preserves(phi).values())


def invert(phi: BoundedMorphism) -> BoundedMorphism:
    if not is_isomorphism(phi):
        raise PreconditionError("only an isomorphism can be inverted")
    alpha = [0] * len(phi.alpha)
    beta = [0] * len(phi.beta)
    for x, v in enumerate(phi.alpha):
        alpha[v] = x
    for y, v in enumerate(phi.beta):
        beta[v] = y
    cert = verify(phi.target, phi.source, alpha, beta)
    if not cert.ok:
        raise InternalConsistencyError("inverse of an isomorphism is not a bounded morphism")
    return BoundedMorphism(phi.target, phi.source, tuple(alpha), tuple(beta), cert)


# substructures and images

def restrict(p: OmegaPolarity, xs: Sequence[int], ys: Sequence[int]) -> OmegaPolarity:
    """The substructure on carriers ``xs`` and ``ys`` (listed in the new index order)."""
    base = Polarity.from_predicate(len(xs), len(ys), lambda i, j: p.base.related(xs[i], ys[j]))
    rows = []
    for t in product(range(len(xs)), repeat=p.n):
        row = p.s.row_section(tuple(xs[i] for i in t))
        rows.append(bits.from_iter(j for j, y in enumerate(ys) if row >> y & 1))
    cols = []
    for t in product(range(len(ys)), repeat=p.m):
        col = p.t.column_section(tuple(ys[j] for j in t))
        cols.append(bits.from_iter(i for i, x in enumerate(xs) if col >> x & 1))
    return OmegaPolarity(
        base,
        RelS(p.n, len(xs), len(ys), tuple(rows)),
        RelT(p.m, len(xs), len(ys), tuple(cols)),
    )


def is_substructure(p: OmegaPolarity, big: OmegaPolarity, x_embed: Sequence[int], y_embed: Sequence[int]) -> bool:
    if len(set(x_embed)) != len(x_embed) or len(set(y_embed)) != len(y_embed):
        return False
    if len(x_embed) != p.x_size or len(y_embed) != p.y_size or (p.n, p.m) != (big.n, big.m):
        return False
    try:
        restricted = restrict(big, x_embed, y_embed)
    except (ValidationError, IndexError):
        return False
    return (restricted.base.rows, restricted.s.rows, restricted.t.cols) == (p.base.rows, p.s.rows, p.t.cols)


def is_inner_substructure(
    p: OmegaPolarity,
    big: OmegaPolarity,
    x_embed: Sequence[int] | None = None,
    y_embed: Sequence[int] | None = None,
) -> MorphismCertificate:
    """Certificate for the inclusion maps; raises if ``p`` is not a substructure at all."""
    x_embed = tuple(range(p.x_size)) if x_embed is None else tuple(x_embed)
    y_embed = tuple(range(p.y_size)) if y_embed is None else tuple(y_embed)
    if not is_substructure(p, big, x_embed, y_embed):
        raise ValidationError("not a substructure: relations are not restrictions along the embedding")
    return verify(p, big, x_embed, y_embed)


@dataclass(frozen=True)
class Image:
    structure: OmegaPolarity
    x_carrier: tuple[int, ...]
    y_carrier: tuple[int, ...]
    inclusion: BoundedMorphism
    corestriction: BoundedMorphism
    restriction_hom: Homomorphism
    isomorphic_to_source: bool


def image(phi: BoundedMorphism, cap: int = DEFAULT_CAP) -> Image:
    """``im(alpha, beta)`` with its inclusion certified as a bounded morphism."""
    phi.require_certified()
    xs = tuple(sorted(set(phi.alpha)))
    ys = tuple(sorted(set(phi.beta)))
    try:
        sub = restrict(phi.target, xs, ys)
    except ValidationError as exc:
        raise InternalConsistencyError(f"image has a non-stable section: {exc}") from exc
    cert = is_inner_substructure(sub, phi.target, xs, ys)
    if not cert.ok:
        raise InternalConsistencyError(f"image is not inner: {cert.failed()[0]}")
    inclusion = BoundedMorphism(sub, phi.target, xs, ys, cert)
    xi = {v: i for i, v in enumerate(xs)}
    yi = {v: i for i, v in enumerate(ys)}
    core = certify(phi.source, sub, [xi[v] for v in phi.alpha], [yi[v] for v in phi.beta], strict=False)
    if not core.certified:
        raise InternalConsistencyError("corestriction onto the image is not a bounded morphism")
    restriction = dual_hom(inclusion, cap)
    if not restriction.is_surjective():
        raise InternalConsistencyError("restriction to an inner substructure is not onto")
    injective = len(xs) == phi.source.x_size and len(ys) == phi.source.y_size
    iso = injective and all(preserves(phi).values())
    if iso and not is_isomorphism(core):
        raise InternalConsistencyError("injective relation-preserving map is not an isomorphism onto its image")
    return Image(sub, xs, ys, inclusion, core, restriction, iso)


# duals of lattice homomorphisms

def dual_of_hom(theta: Homomorphism) -> BoundedMorphism:
    """``theta+``: filters and ideals of the target pulled back along ``theta``."""
    L, M = theta.source, theta.target
    if not (isinstance(L, OmegaNLO) and isinstance(M, OmegaNLO)):
        raise PreconditionError("dual_of_hom needs a homomorphism between Omega-NLOs")
    bad = is_homomorphism(theta)
    if bad:
        raise ValidationError(f"not a homomorphism: {bad[0]}")
    src, dst = canonical_structure(M), canonical_structure(L)
    f_index = {mask: i for i, mask in enumerate(filters(L.lattice))}
    d_index = {mask: i for i, mask in enumerate(ideals(L.lattice))}
    alpha = tuple(f_index[preimage(theta.map, F)] for F in filters(M.lattice))
    beta = tuple(d_index[preimage(theta.map, D)] for D in ideals(M.lattice))
    phi = BoundedMorphism(src, dst, alpha, beta, verify(src, dst, alpha, beta))
    if not phi.certified:
        raise InternalConsistencyError(f"theta+ is not a bounded morphism: {phi.certificate.failed()[0]}")
    if theta.is_injective():
        if len(set(alpha)) != dst.x_size or len(set(beta)) != dst.y_size:
            raise InternalConsistencyError("theta injective but theta+ is not surjective")
    if theta.is_surjective():
        if len(set(alpha)) != len(alpha) or len(set(beta)) != len(beta):
            raise InternalConsistencyError("theta surjective but theta+ is not injective")
        if not image(phi).isomorphic_to_source:
            raise InternalConsistencyError("theta surjective but theta+ is not an isomorphism onto its image")
    return phi


# maximal covering

def _require_filter(l: FiniteLattice, F: int):
    if F not in filters(l):
        raise ValidationError(f"{bits.fmt(F)} is not a filter")


def _require_ideal(l: FiniteLattice, D: int):
    if D not in ideals(l):
        raise ValidationError(f"{bits.fmt(D)} is not an ideal")


def d_maximal(l: FiniteLattice, F: int, D: int) -> bool:
    """``F`` is maximal among filters disjoint from ``D``."""
    _require_filter(l, F)
    _require_ideal(l, D)
    if F & D:
        return False
    return not any(G != F and bits.is_subset(F, G) and not G & D for G in filters(l))


def i_maximal_filters(l: FiniteLattice) -> list[int]:
    """Indices (into ``filters(l)``) of filters that are D-maximal for some ideal D."""
    return [i for i, F in enumerate(filters(l)) if any(d_maximal(l, F, D) for D in ideals(l))]


def is_maximal_covering(phi: BoundedMorphism, A: OmegaNLO, cap: int = DEFAULT_CAP) -> bool:
    phi.require_certified()
    if phi.target != canonical_structure(A):
        raise PreconditionError("target is not the canonical structure of the given algebra")
    covering = set(i_maximal_filters(A.lattice)) <= set(phi.alpha)
    if covering and not dual_hom(phi, cap).is_injective():
        raise InternalConsistencyError("maximal covering morphism with non-injective dual")
    return covering


# exhaustive search (test utility)

SEARCH_LIMIT = 1 << 20


def search_morphisms(src: OmegaPolarity, dst: OmegaPolarity, limit: int = SEARCH_LIMIT) -> Iterator[BoundedMorphism]:
    """All bounded morphisms ``src -> dst`` by brute force over carrier maps."""
    space = dst.x_size ** src.x_size * dst.y_size ** src.y_size
    if space > limit:
        raise PreconditionError(f"search space of {space} maps exceeds {limit}")
    if (src.n, src.m) != (dst.n, dst.m):
        return
    q1, d1 = src.base.quasi_order(X_SIDE), dst.base.quasi_order(X_SIDE)
    q2, d2 = src.base.quasi_order(Y_SIDE), dst.base.quasi_order(Y_SIDE)
    alphas = [a for a in product(range(dst.x_size), repeat=src.x_size) if not any(_isotone(q1, d1, a, src.x_size))]
    betas = [b for b in product(range(dst.y_size), repeat=src.y_size) if not any(_isotone(q2, d2, b, src.y_size))]
    for a in alphas:
        for b in betas:
            cert = verify(src, dst, a, b)
            if cert.ok:
                yield BoundedMorphism(src, dst, a, b, cert)
