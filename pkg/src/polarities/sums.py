"""Direct sums of Omega-polarities and their universal properties."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Sequence

from . import bits
from .errors import ArityError, InternalConsistencyError, PreconditionError, RangeError
from .lattice import DEFAULT_CAP
from .morphisms import BoundedMorphism, certify, compose, image, search_morphisms
from .nlo import FiniteLattice, Homomorphism, OmegaNLO, is_homomorphism, plus_cached
from .omega import OmegaPolarity, RelS, RelT
from .polarity import Polarity


@dataclass(frozen=True)
class DirectSum:
    """Summands laid out contiguously: summand ``j`` owns X indices
    ``x_offsets[j] .. x_offsets[j+1]-1`` of the total (likewise for Y)."""

    summands: tuple[OmegaPolarity, ...]
    total: OmegaPolarity
    x_offsets: tuple[int, ...]
    y_offsets: tuple[int, ...]

    def tag_x(self, x: int, j: int) -> int:
        return self.x_offsets[j] + x

    def tag_y(self, y: int, j: int) -> int:
        return self.y_offsets[j] + y

    def untag_x(self, i: int) -> tuple[int, int]:
        return _untag(self.x_offsets, i)

    def untag_y(self, i: int) -> tuple[int, int]:
        return _untag(self.y_offsets, i)


def _untag(offsets, i):
    for j in range(len(offsets) - 1):
        if offsets[j] <= i < offsets[j + 1]:
            return i - offsets[j], j
    raise RangeError(f"index {i} outside the sum")


def _offsets(sizes):
    out = [0]
    for s in sizes:
        out.append(out[-1] + s)
    return tuple(out)


def direct_sum(summands: Sequence[OmegaPolarity], n: int | None = None, m: int | None = None) -> DirectSum:
    """Cross-summand pairs are always related; within a summand its own relations apply.

    Arities are taken from the summands; for an empty family pass ``n``/``m``.
    """
    summands = tuple(summands)
    if summands:
        n = summands[0].n if n is None else n
        m = summands[0].m if m is None else m
    elif n is None or m is None:
        raise ArityError("an empty sum needs explicit arities")
    for p in summands:
        if (p.n, p.m) != (n, m):
            raise ArityError(f"summand arities ({p.n},{p.m}) differ from ({n},{m})")
    xo = _offsets(p.x_size for p in summands)
    yo = _offsets(p.y_size for p in summands)
    nx, ny = xo[-1], yo[-1]
    x_tag = [_untag(xo, i) for i in range(nx)]
    y_tag = [_untag(yo, i) for i in range(ny)]

    def block(k):
        return bits.full(yo[k + 1]) & ~bits.full(yo[k])

    def xblock(k):
        return bits.full(xo[k + 1]) & ~bits.full(xo[k])

    rows = []
    for x, j in x_tag:
        own = summands[j].base.rows[x] << yo[j]
        rows.append((bits.full(ny) & ~block(j)) | own)
    base = Polarity(nx, ny, tuple(rows))

    s_rows = []
    for xs in product(range(nx), repeat=n):
        tags = [x_tag[i] for i in xs]
        row = 0
        for k in range(len(summands)):
            if any(j != k for _, j in tags):
                row |= block(k)
            else:
                row |= summands[k].s.row_section(tuple(x for x, _ in tags)) << yo[k]
        s_rows.append(row)
    t_cols = []
    for ys in product(range(ny), repeat=m):
        tags = [y_tag[i] for i in ys]
        col = 0
        for k in range(len(summands)):
            if any(j != k for _, j in tags):
                col |= xblock(k)
            else:
                col |= summands[k].t.column_section(tuple(y for y, _ in tags)) << xo[k]
        t_cols.append(col)
    total = OmegaPolarity(base, RelS(n, nx, ny, tuple(s_rows)), RelT(m, nx, ny, tuple(t_cols)))
    return DirectSum(summands, total, xo, yo)


def injection(ds: DirectSum, k: int) -> BoundedMorphism:
    """``x -> (x, k)``, ``y -> (y, k)``; its image is certified inner and isomorphic to the summand."""
    if not 0 <= k < len(ds.summands):
        raise RangeError(f"summand {k} out of range")
    p = ds.summands[k]
    phi = certify(
        p,
        ds.total,
        tuple(ds.tag_x(x, k) for x in range(p.x_size)),
        tuple(ds.tag_y(y, k) for y in range(p.y_size)),
        strict=False,
    )
    if not phi.certified:
        raise InternalConsistencyError(f"summand injection fails {phi.certificate.failed()[0]}")
    if not image(phi).isomorphic_to_source:
        raise InternalConsistencyError("injection image is not isomorphic to the summand")
    return phi


# product of the stable-set algebras

def product_nlo(factors: Sequence[OmegaNLO], n: int, m: int) -> tuple[OmegaNLO, list[tuple[int, ...]]]:
    """Componentwise product; elements are tuples listed in ``itertools.product`` order."""
    sizes = [a.size for a in factors]
    elems = list(product(*(range(s) for s in sizes)))
    index = {e: i for i, e in enumerate(elems)}
    k = len(elems)
    up = []
    for e in elems:
        up.append(bits.from_iter(i for i, o in enumerate(elems) if all(a.lattice.leq(u, v) for a, u, v in zip(factors, e, o))))
    join = tuple(
        tuple(index[tuple(a.lattice.join[u][v] for a, u, v in zip(factors, e, o))] for o in elems) for e in elems
    )
    meet = tuple(
        tuple(index[tuple(a.lattice.meet[u][v] for a, u, v in zip(factors, e, o))] for o in elems) for e in elems
    )
    bot = index[tuple(a.lattice.bot for a in factors)]
    top = index[tuple(a.lattice.top for a in factors)]
    lat = FiniteLattice(k, tuple(up), meet, join, bot, top)
    f = tuple(
        index[tuple(a.apply_f([elems[i][j] for i in args]) for j, a in enumerate(factors))]
        for args in product(range(k), repeat=n)
    )
    g = tuple(
        index[tuple(a.apply_g([elems[i][j] for i in args]) for j, a in enumerate(factors))]
        for args in product(range(k), repeat=m)
    )
    return OmegaNLO(lat, n, f, m, g), elems


@dataclass(frozen=True)
class ProductIsomorphism:
    theta: Homomorphism
    inverse: tuple[int, ...]
    elements: tuple[tuple[int, ...], ...]


def product_isomorphism(ds: DirectSum, cap: int = DEFAULT_CAP) -> ProductIsomorphism:
    """``A -> (alpha_k^{-1} A)_k`` from the sum's stable sets onto the product."""
    total = plus_cached(ds.total, cap)
    parts = [plus_cached(p, cap) for p in ds.summands]
    prod, elems = product_nlo([a.nlo for a in parts], ds.total.n, ds.total.m)
    index = {e: i for i, e in enumerate(elems)}
    table = []
    for a in total.lattice.elements:
        coords = []
        for k, part in enumerate(parts):
            width = ds.summands[k].x_size
            coords.append(part.lattice.index_of(a >> ds.x_offsets[k] & bits.full(width)))
        table.append(index[tuple(coords)])
    theta = Homomorphism(total.nlo, prod, tuple(table))
    bad = is_homomorphism(theta)
    if bad or not (theta.is_injective() and theta.is_surjective()):
        raise InternalConsistencyError(f"sum/product map is not an isomorphism: {bad[:1]}")
    inverse = []
    for e in elems:
        union = 0
        for k, part in enumerate(parts):
            union |= part.lattice.elements[e[k]] << ds.x_offsets[k]
        if union not in total.lattice.index:
            raise InternalConsistencyError(f"union {bits.fmt(union)} of summand stable sets is not stable")
        i = total.lattice.index[union]
        if table[i] != index[e]:
            raise InternalConsistencyError("inverse does not invert the product map")
        inverse.append(i)
    return ProductIsomorphism(theta, tuple(inverse), tuple(elems))


# coproduct

def coproduct_mediator(ds: DirectSum, family: Sequence[BoundedMorphism]) -> BoundedMorphism:
    """The unique map out of the sum with ``alpha(x, j) = alpha_j(x)``."""
    if len(family) != len(ds.summands):
        raise PreconditionError("need one morphism per summand")
    if not family:
        raise PreconditionError("an empty family does not determine a codomain")
    q = family[0].target
    for j, phi in enumerate(family):
        if phi.target != q:
            raise PreconditionError("family members have different codomains")
        if phi.source != ds.summands[j]:
            raise PreconditionError(f"morphism {j} does not start at summand {j}")
        phi.require_certified()
    alpha = tuple(family[j].alpha[x] for x, j in map(ds.untag_x, range(ds.total.x_size)))
    beta = tuple(family[j].beta[y] for y, j in map(ds.untag_y, range(ds.total.y_size)))
    med = certify(ds.total, q, alpha, beta, strict=False)
    if not med.certified:
        raise InternalConsistencyError(f"mediator fails {med.certificate.failed()[0]}")
    for k, phi in enumerate(family):
        via = compose(med, injection(ds, k))
        if (via.alpha, via.beta) != (phi.alpha, phi.beta):
            raise InternalConsistencyError(f"mediator does not factor morphism {k}")
    return med


def factoring_morphisms(ds: DirectSum, family: Sequence[BoundedMorphism]) -> list[BoundedMorphism]:
    """Every bounded morphism out of the sum that factors the family (exhaustive; tiny sizes)."""
    q = family[0].target
    injections = [injection(ds, k) for k in range(len(ds.summands))]
    out = []
    for med in search_morphisms(ds.total, q):
        if all(
            (compose(med, inj).alpha, compose(med, inj).beta) == (phi.alpha, phi.beta)
            for inj, phi in zip(injections, family)
        ):
            out.append(med)
    return out
